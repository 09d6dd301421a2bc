#pragma once
// Independent reference computations used only by the test suites.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "wdvv/bellpoly.hpp"
#include "wdvv/contour.hpp"
#include "wdvv/hurwitz.hpp"

namespace oracle {

using wdvv::cplx;
using wdvv::pi;

// Row-by-row lattice sums: each row sum over m is done in closed form with
// pi cot / pi^2 csc^2, rows decay like exp(-2 pi |n| Im tau).
inline cplx csc2(cplx z)
{
    const cplx s = std::sin(pi * z);
    return pi * pi / (s * s);
}
inline cplx cotp(cplx z) { return pi * std::cos(pi * z) / std::sin(pi * z); }

inline int rows_for(cplx tau) { return int(40.0 / (2.0 * pi * tau.imag())) + 8; }

inline cplx g2_rowsum(cplx tau)
{
    cplx s = pi * pi / 3.0;
    for (int n = 1; n <= rows_for(tau); ++n) s += 2.0 * csc2(double(n) * tau);
    return s;
}

inline cplx wp_rowsum(cplx v, cplx tau)
{
    cplx s = 0.0;
    const int R = rows_for(tau) + int(std::abs(v.imag() / tau.imag()));
    for (int n = -R; n <= R; ++n) s += csc2(v + double(n) * tau);
    return s - g2_rowsum(tau);
}

inline cplx zeta_rowsum(cplx v, cplx tau)
{
    cplx s = cotp(v) + v * pi * pi / 3.0;
    const int R = rows_for(tau) + int(std::abs(v.imag() / tau.imag()));
    for (int n = 1; n <= R; ++n)
        for (int sg : {-1, 1}) {
            const cplx w = double(sg * n) * tau;
            s += cotp(v + w) - cotp(w) + v * csc2(w);
        }
    return s;
}

// G_k from the Laurent coefficient of v^{k-2} in wp, which is (k-1) G_k.
inline cplx eisenstein_from_wp(int k, cplx tau)
{
    const double r = 0.25 * std::min(1.0, tau.imag());
    const cplx c = wdvv::laurent_coefficient([&](cplx v) { return wp_rowsum(v, tau); }, 0.0, r, 96, k - 2);
    return c / double(k - 1);
}

// sum over compositions j_1 + ... + j_k = n of x_{j_1} ... x_{j_k}
inline cplx bell_by_compositions(int n, int k, const std::vector<cplx>& xs)
{
    if (k == 0) return n == 0 ? 1.0 : 0.0;
    cplx s = 0.0;
    for (int j = 1; j <= n - k + 1; ++j) s += xs[j - 1] * bell_by_compositions(n - j, k - 1, xs);
    return s;
}

// Exponential complete Bell polynomial by integer-partition enumeration:
// B_n = sum n! / prod (m_i! (i!)^{m_i}) prod x_i^{m_i}.
inline cplx complete_by_partitions(int n, const std::vector<cplx>& xs)
{
    cplx total = 0.0;
    std::vector<int> mult(n + 1, 0);
    std::function<void(int, int)> rec = [&](int remaining, int maxpart) {
        if (remaining == 0) {
            cplx term = wdvv::factorial(n);
            for (int i = 1; i <= n; ++i) {
                if (!mult[i]) continue;
                term /= wdvv::factorial(mult[i]) * std::pow(wdvv::factorial(i), mult[i]);
                term *= std::pow(xs[i - 1], mult[i]);
            }
            total += term;
            return;
        }
        for (int p = std::min(remaining, maxpart); p >= 1; --p) {
            ++mult[p];
            rec(remaining - p, p);
            --mult[p];
        }
    };
    rec(n, n);
    return total;
}

// Coefficients of (sum_j x_j t^j)^k up to t^nmax by repeated polynomial products.
inline std::vector<cplx> power_series_power(const std::vector<cplx>& xs, int k, int nmax)
{
    std::vector<cplx> acc(nmax + 1, 0.0);
    acc[0] = 1.0;
    for (int r = 0; r < k; ++r) {
        std::vector<cplx> next(nmax + 1, 0.0);
        for (int a = 0; a <= nmax; ++a)
            for (int b = 1; a + b <= nmax && b <= int(xs.size()); ++b) next[a + b] += acc[a] * xs[b - 1];
        acc = next;
    }
    return acc;
}

struct ContourSpec {
    int points = 256;
    double radius = 0.0;  // 0 selects the branch-safe default
};

// Samples of lambda^{r/(n_j+1)} g(z) around pole j. The branch is the one with
// lambda^{1/(n_j+1)} ~ x_1(j)/(z - pole) as z -> pole.
class LocalPower {
public:
    LocalPower(const wdvv::HurwitzPoint& p, int j, int points = 256) : p_(p), j_(j), n_(points)
    {
        const double d = wdvv::min_pole_distance(p);
        for (double f : {0.3, 0.2, 0.12, 0.07, 0.04}) {
            radius_ = f * d;
            if (build()) return;
        }
        throw wdvv::Error(wdvv::ErrorCode::NonConvergent, "no branch-safe contour around pole");
    }

    double radius() const { return radius_; }
    cplx point(int k) const { return p_.pole(j_) + w_[k]; }

    // res of lambda^{r/(n+1)} g dz
    cplx residue(int r, const std::function<cplx(cplx)>& g) const
    {
        const int np = p_.n(j_) + 1;
        const cplx x1 = p_.x(j_, 1);
        cplx s = 0.0;
        for (int k = 0; k < n_; ++k) {
            const cplx root = x1 / w_[k] * std::exp(L_[k] / double(np));
            s += std::pow(root, r) * g(point(k)) * w_[k];
        }
        return s / double(n_);
    }

private:
    bool build()
    {
        const int np = p_.n(j_) + 1;
        const cplx x1 = p_.x(j_, 1);
        w_.resize(n_);
        L_.resize(n_);
        double minr = 1e300;
        for (int k = 0; k < n_; ++k) {
            w_[k] = std::polar(radius_, 2.0 * pi * k / n_);
            const cplx ratio = wdvv::lambda_eval(p_, point(k)) * std::pow(w_[k] / x1, np);
            minr = std::min(minr, std::abs(ratio));
            L_[k] = std::log(ratio);
            if (k > 0) {
                double dphi = L_[k].imag() - L_[k - 1].imag();
                dphi -= 2.0 * pi * std::round(dphi / (2.0 * pi));
                L_[k] = {L_[k].real(), L_[k - 1].imag() + dphi};
            }
        }
        double closing = L_[0].imag() - L_[n_ - 1].imag();
        closing -= 2.0 * pi * std::round(closing / (2.0 * pi));
        const double wind = (L_[0].imag() - (L_[n_ - 1].imag() + closing)) / (2.0 * pi);
        if (std::abs(wind) > 0.5 || minr < 0.05) return false;
        cplx mean = 0.0;
        for (cplx l : L_) mean += l;
        mean /= double(n_);
        const double shift = 2.0 * pi * std::round(mean.imag() / (2.0 * pi));
        for (cplx& l : L_) l -= cplx(0.0, shift);
        return std::abs(mean.imag() - shift) < 0.5;
    }

    const wdvv::HurwitzPoint& p_;
    int j_;
    int n_;
    double radius_ = 0.0;
    std::vector<cplx> w_;
    std::vector<cplx> L_;
};

inline cplx x_coefficient(const wdvv::HurwitzPoint& p, int j, int r)
{
    LocalPower lp(p, j);
    return lp.residue(r, [](cplx) { return cplx(1.0); }) / double(r);
}

inline cplx I_omega(const wdvv::HurwitzPoint& p, int i, int j, int alpha)
{
    LocalPower lp(p, i);
    return lp.residue(alpha, [&](cplx z) { return wdvv::omega_third(p, j, z); });
}

inline cplx I_psi(const wdvv::HurwitzPoint& p, int i, int beta, int j, int alpha)
{
    LocalPower lp(p, i);
    return lp.residue(beta, [&](cplx z) { return wdvv::psi_second(p, j, alpha, z); });
}

// Coefficient of (z - pole_j)^k in the Laurent series of lambda.
inline cplx lambda_laurent(const wdvv::HurwitzPoint& p, int j, int k)
{
    const double r = 0.45 * wdvv::min_pole_distance(p);
    return wdvv::laurent_coefficient([&](cplx z) { return wdvv::lambda_eval(p, z); }, p.pole(j), r, 256, k);
}

// Height of a horizontal a-cycle with every pole strictly inside the strip above it.
inline double a_cycle_height(const wdvv::HurwitzPoint& p)
{
    double lo = 1e300, hi = -1e300;
    for (cplx z : p.poles()) {
        lo = std::min(lo, z.imag());
        hi = std::max(hi, z.imag());
    }
    return 0.5 * (lo + hi) - 0.5 * p.tau().imag();
}

// b-cycle start with every pole strictly inside the strip to its right.
inline cplx b_cycle_start(const wdvv::HurwitzPoint& p)
{
    double lo = 1e300, hi = -1e300;
    const cplx tau = p.tau();
    for (cplx z : p.poles()) {
        const double b = z.imag() / tau.imag();
        const double a = z.real() - b * tau.real();
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    return 0.5 * (lo + hi) - 0.5;
}

inline cplx a_period(const std::function<cplx(cplx)>& f, const wdvv::HurwitzPoint& p)
{
    static const auto rule = wdvv::gauss_legendre(24);
    const cplx a = cplx(0.13, a_cycle_height(p));
    return wdvv::segment_integral(f, a, a + 1.0, rule, 16);
}

inline cplx b_period(const std::function<cplx(cplx)>& f, const wdvv::HurwitzPoint& p)
{
    static const auto rule = wdvv::gauss_legendre(24);
    const cplx a = b_cycle_start(p);
    return wdvv::segment_integral(f, a, a + p.tau(), rule, 16);
}

}  // namespace oracle
