#include "wdvv/bellpoly.hpp"

#include <cmath>
#include <string>

namespace wdvv {

double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

double binom_neg(int k, int l)
{
    const double b = binomial(k + l - 1, l);
    return (l % 2 == 0) ? b : -b;
}

BellTable::BellTable(std::span<const cplx> xs, int nmax) : nmax_(nmax), t_((nmax + 1) * (nmax + 1), 0.0)
{
    if (nmax < 0) throw Error(ErrorCode::InvalidOrder, "negative Bell order");
    if (nmax >= 1 && int(xs.size()) < nmax)
        throw Error(ErrorCode::IndexOutOfRange,
                    "Bell table of order " + std::to_string(nmax) + " needs " + std::to_string(nmax) + " coefficients");
    auto at = [&](int n, int k) -> cplx& { return t_[n * (nmax_ + 1) + k]; };
    at(0, 0) = 1.0;
    for (int k = 0; k < nmax; ++k) {
        for (int n = k; n < nmax; ++n) {
            cplx s = 0.0;
            for (int j = k; j <= n; ++j) s += xs[n - j] * at(j, k);
            at(n + 1, k + 1) = s;
        }
    }
}

cplx BellTable::operator()(int n, int k) const
{
    if (n < 0 || k < 0 || n > nmax_) throw Error(ErrorCode::IndexOutOfRange, "Bell index outside table");
    if (k > n) return 0.0;
    return t_[n * (nmax_ + 1) + k];
}

cplx bell_partial(int n, int k, std::span<const cplx> xs)
{
    if (n < 0 || k < 0) throw Error(ErrorCode::InvalidOrder, "negative Bell index");
    if (k > n) throw Error(ErrorCode::InvalidOrder, "bell_partial requires k <= n");
    if (k == 0) return n == 0 ? cplx(1.0) : cplx(0.0);
    const int need = n - k + 1;
    if (int(xs.size()) < need)
        throw Error(ErrorCode::IndexOutOfRange, "bell_partial needs x_1..x_" + std::to_string(need));
    // B_{n,k} only touches x_1..x_{n-k+1}; pad the rest with zeros
    std::vector<cplx> pad(n, 0.0);
    for (int i = 0; i < need; ++i) pad[i] = xs[i];
    return BellTable(pad, n)(n, k);
}

cplx bell_complete(int n, std::span<const cplx> xs)
{
    if (n < 0) throw Error(ErrorCode::InvalidOrder, "negative Bell index");
    if (n == 0) return 1.0;
    if (int(xs.size()) < n) throw Error(ErrorCode::IndexOutOfRange, "bell_complete needs x_1..x_n");
    std::vector<cplx> scaled(n);
    for (int i = 0; i < n; ++i) scaled[i] = xs[i] / factorial(i + 1);
    const BellTable t(scaled, n);
    cplx s = 0.0;
    for (int k = 1; k <= n; ++k) s += factorial(n) / factorial(k) * t(n, k);
    return s;
}

cplx r_function(int mu, int k, std::span<const cplx> xs)
{
    if (mu < 1 || k < 1) throw Error(ErrorCode::InvalidOrder, "r_function needs mu, k >= 1");
    if (mu == k - 1) throw Error(ErrorCode::ForbiddenOrder, "r_function undefined for mu = k - 1");
    if (int(xs.size()) < mu + 1)
        throw Error(ErrorCode::IndexOutOfRange, "r_function needs x_1..x_" + std::to_string(mu + 1));
    const cplx x1 = xs[0];
    if (x1 == 0.0) throw Error(ErrorCode::ZeroLeadingCoefficient, "x_1 = 0");
    const BellTable shifted(xs.subspan(1, mu), mu);
    cplx s = 0.0;
    for (int l = 0; l <= mu - 1; ++l)
        s += binom_neg(k, l) / (l + 1.0) * std::pow(x1, -k - l) * shifted(mu, l + 1);
    return s;
}

cplx r_function_definition(int mu, int k, std::span<const cplx> xs)
{
    if (mu < 1 || k < 1) throw Error(ErrorCode::InvalidOrder, "r_function needs mu, k >= 1");
    if (mu == k - 1) throw Error(ErrorCode::ForbiddenOrder, "r_function undefined for mu = k - 1");
    if (int(xs.size()) < mu + 1) throw Error(ErrorCode::IndexOutOfRange, "r_function needs x_1..x_{mu+1}");
    const cplx x1 = xs[0];
    if (x1 == 0.0) throw Error(ErrorCode::ZeroLeadingCoefficient, "x_1 = 0");
    const BellTable shifted(xs.subspan(1, mu), mu);
    cplx s = 0.0;
    for (int n = 0; n <= mu; ++n) {
        cplx inner = 0.0;
        for (int l = 0; l <= n; ++l) inner += binom_neg(k, l) * std::pow(x1, -k - l) * shifted(n, l);
        s += (mu + 1.0 - n) * xs[mu - n] * inner;
    }
    return s / double(mu - k + 1);
}

cplx bell_operator(int alpha, std::span<const cplx> xs, std::span<const cplx> f_derivs)
{
    if (alpha < 1) throw Error(ErrorCode::InvalidOrder, "bell_operator needs alpha >= 1");
    if (int(xs.size()) < alpha || int(f_derivs.size()) < alpha)
        throw Error(ErrorCode::IndexOutOfRange, "bell_operator needs alpha coefficients and derivatives");
    const BellTable t(xs.first(alpha), alpha);
    cplx s = 0.0;
    for (int k = 1; k <= alpha; ++k) s += t(alpha, k) * f_derivs[k - 1] / factorial(k);
    return s;
}

}  // namespace wdvv
