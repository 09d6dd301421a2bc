#include "wdvv/special_fn.hpp"

#include <cmath>
#include <vector>

namespace wdvv {

namespace {

// B_{2k} as numerator/denominator pairs, k = 1..15.
constexpr std::array<std::pair<double, double>, 16> bernoulli_even{{
    {1.0, 1.0},
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
    {8553103.0, 6.0},
    {-23749461029.0, 870.0},
    {8615841276005.0, 14322.0},
}};

double factorial(int n)
{
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

double binom(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

cplx fourier_eisenstein(int w, cplx tau, double tol)
{
    // G_w = 2 zeta(w) + 2 (2 i pi)^w / (w-1)! sum_n sigma_{w-1}(n) q^n, q = e^{2 i pi tau}
    const cplx q = std::exp(two_pi_i * tau);
    const double aq = std::abs(q);
    cplx sum = 0.0;
    cplx qn = 1.0;
    bool past_peak = false;
    double prev = 0.0;
    for (int n = 1; n < 100000; ++n) {
        qn *= q;
        double sig = 0.0;
        for (int d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                sig += std::pow(double(d), w - 1);
                int e = n / d;
                if (e != d) sig += std::pow(double(e), w - 1);
            }
        }
        const cplx term = sig * qn;
        sum += term;
        const double mag = std::abs(term);
        // the bound n^{w-1} |q|^n is unimodal; only stop on its decreasing side
        const double bound = std::pow(double(n), w - 1) * std::pow(aq, n) * 2.0;
        if (n > 1 && bound < prev) past_peak = true;
        prev = bound;
        if (past_peak && bound <= tol * std::abs(sum)) break;
        if (past_peak && mag == 0.0 && bound < 1e-300) break;
    }
    const cplx pref = 2.0 * std::pow(two_pi_i, w) / factorial(w - 1);
    return two_riemann_zeta_even(w) + pref * sum;
}

}  // namespace

double two_riemann_zeta_even(int two_k)
{
    if (two_k < 2 || two_k % 2 != 0 || two_k > max_eisenstein_weight + 2)
        throw Error(ErrorCode::OddWeight, "two_riemann_zeta_even needs an even weight in [2, 32]");
    const int k = two_k / 2;
    if (k >= int(bernoulli_even.size()))
        throw Error(ErrorCode::IndexOutOfRange, "Bernoulli table exhausted");
    const auto [num, den] = bernoulli_even[k];
    const double b = num / den;
    // zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!)
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    return sign * b * std::pow(2.0 * pi, two_k) / factorial(two_k);
}

Modulus::Modulus(cplx tau, double series_tol)
    : tau_(tau), nome_(std::exp(I * pi * tau)), tol_(series_tol), cache_(std::make_shared<Cache>())
{
    if (!(tau.imag() > 0.0))
        throw Error(ErrorCode::InvalidModulus, "Im(tau) must be positive");
}

cplx Modulus::G(int weight) const
{
    if (weight % 2 != 0) return 0.0;
    if (weight < 2 || weight > max_eisenstein_weight)
        throw Error(ErrorCode::IndexOutOfRange, "Eisenstein weight out of range [2, 30]");
    std::lock_guard lock(cache_->mu);
    auto& slot = cache_->g[weight / 2];
    if (!slot) slot = fourier_eisenstein(weight, tau_, tol_);
    return *slot;
}

cplx Modulus::theta1_prime0() const
{
    {
        std::lock_guard lock(cache_->mu);
        if (cache_->th1p0) return *cache_->th1p0;
    }
    const cplx v = theta1_series(0.0, *this, 1);
    std::lock_guard lock(cache_->mu);
    cache_->th1p0 = v;
    return v;
}

Reduced reduce_to_cell(cplx v, const Modulus& m)
{
    const cplx tau = m.tau();
    const double nb = std::round(v.imag() / tau.imag());
    const cplx w = v - nb * tau;
    const double na = std::round(w.real());
    return {w - na, long(na), long(nb)};
}

cplx eisenstein(int weight, const Modulus& m)
{
    if (weight % 2 != 0) throw Error(ErrorCode::OddWeight, "eisenstein requires an even weight");
    return m.G(weight);
}

cplx theta1_series(cplx v, const Modulus& m, int k)
{
    if (k < 0 || k > max_theta_deriv)
        throw Error(ErrorCode::DerivOrderTooHigh, "theta1 derivative order must be in [0, 8]");
    if (std::abs(m.nome()) >= 1.0 - 1e-12)
        throw Error(ErrorCode::NonConvergent, "nome too close to the unit circle");
    const cplx tau = m.tau();
    const double tol = m.series_tol();
    const double yv = std::abs(v.imag());
    cplx sum = 0.0;
    for (int n = 0; n < 400; ++n) {
        const double h = n + 0.5;
        const double freq = (2 * n + 1) * pi;
        const cplx gauss = std::exp(I * pi * tau * h * h);
        const double fk = std::pow(freq, k);
        const cplx arg = freq * v + 0.5 * pi * k;
        const cplx term = (n % 2 == 0 ? 2.0 : -2.0) * gauss * fk * std::sin(arg);
        sum += term;
        const double bound = 2.0 * std::abs(gauss) * fk * std::cosh(freq * yv);
        if (n >= 1 && bound <= tol * std::abs(sum)) return sum;
        if (n >= 1 && bound < 1e-300) return sum;
    }
    throw Error(ErrorCode::NonConvergent, "theta1 series did not converge");
}

cplx theta1(cplx v, const Modulus& m, int k)
{
    if (k < 0 || k > max_theta_deriv)
        throw Error(ErrorCode::DerivOrderTooHigh, "theta1 derivative order must be in [0, 8]");
    const Reduced r = reduce_to_cell(v, m);
    if (r.shift_m == 0 && r.shift_n == 0) return theta1_series(v, m, k);
    const double b = double(r.shift_n);
    const double sign = ((r.shift_m + r.shift_n) % 2 == 0) ? 1.0 : -1.0;
    const cplx tau = m.tau();
    const cplx E = sign * std::exp(-I * pi * b * b * tau - 2.0 * I * pi * b * r.v0);
    const cplx c = -2.0 * I * pi * b;
    cplx out = 0.0;
    for (int j = 0; j <= k; ++j)
        out += binom(k, j) * std::pow(c, k - j) * theta1_series(r.v0, m, j);
    return E * out;
}

void wp_derivs(cplx v, const Modulus& m, int kmax, cplx* out)
{
    if (kmax < 0 || kmax > max_wp_deriv)
        throw Error(ErrorCode::DerivOrderTooHigh, "wp derivative order out of range");
    const Reduced r = reduce_to_cell(v, m);
    if (std::abs(r.v0) < 1e-12) throw Error(ErrorCode::PoleArgument, "argument reduces to a lattice point");
    const cplx t0 = theta1_series(r.v0, m, 0);
    const cplx t1 = theta1_series(r.v0, m, 1);
    const cplx t2 = theta1_series(r.v0, m, 2);
    const cplx L1 = t1 / t0;
    const cplx L2 = t2 / t0;
    out[0] = -m.G2() - L2 + L1 * L1;
    if (kmax >= 1) {
        const cplx t3 = theta1_series(r.v0, m, 3);
        const cplx L3 = t3 / t0;
        out[1] = -(L3 - 3.0 * L2 * L1 + 2.0 * L1 * L1 * L1);
    }
    for (int k = 0; k + 2 <= kmax; ++k) {
        cplx s = 0.0;
        for (int j = 0; j <= k; ++j) s += binom(k, j) * out[j] * out[k - j];
        s *= 6.0;
        if (k == 0) s -= 30.0 * m.G(4);
        out[k + 2] = s;
    }
}

cplx wp(cplx v, const Modulus& m, int k)
{
    std::array<cplx, max_wp_deriv + 1> d{};
    wp_derivs(v, m, k, d.data());
    return d[k];
}

cplx wzeta(cplx v, const Modulus& m, int k)
{
    if (k > 0) return -wp(v, m, k - 1);
    const Reduced r = reduce_to_cell(v, m);
    if (std::abs(r.v0) < 1e-12) throw Error(ErrorCode::PoleArgument, "zeta at a lattice point");
    const cplx G2 = m.G2();
    const cplx z0 = G2 * r.v0 + theta1_series(r.v0, m, 1) / theta1_series(r.v0, m, 0);
    // 2 zeta(1/2) = G2, 2 zeta(tau/2) = tau G2 - 2 i pi
    return z0 + double(r.shift_m) * G2 + double(r.shift_n) * (m.tau() * G2 - two_pi_i);
}

cplx wsigma(cplx v, const Modulus& m)
{
    const Reduced r = reduce_to_cell(v, m);
    const cplx G2 = m.G2();
    const cplx s0 = std::exp(0.5 * G2 * r.v0 * r.v0) * theta1_series(r.v0, m, 0) / m.theta1_prime0();
    if (r.shift_m == 0 && r.shift_n == 0) return s0;
    const double a = double(r.shift_m), b = double(r.shift_n);
    const long parity = r.shift_m + r.shift_n + r.shift_m * r.shift_n;
    const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
    const cplx eta = a * G2 + b * (m.tau() * G2 - two_pi_i);
    return sign * std::exp(eta * (r.v0 + 0.5 * a + 0.5 * b * m.tau())) * s0;
}

cplx bigK(cplx v, const Modulus& m, int k)
{
    if (k == 0) {
        const cplx s = wsigma(v, m);
        if (std::abs(s) == 0.0) throw Error(ErrorCode::BranchPoint, "log of sigma at a zero");
        const Reduced r = reduce_to_cell(v, m);
        if (std::abs(r.v0) < 1e-12) throw Error(ErrorCode::BranchPoint, "log of sigma at a zero");
        return std::log(s);
    }
    if (k == 1) return wzeta(v, m);
    return -wp(v, m, k - 2);
}

cplx script_w_taylor(int two_n, const Modulus& m)
{
    if (two_n < 2 || two_n % 2 != 0) return 0.0;
    const int mm = two_n / 2;
    cplx c = (2.0 * mm + 3.0) * m.G(2 * mm + 2);
    for (int l = 0; l <= mm - 1; ++l) c -= m.G(2 * l + 2) * m.G(2 * mm - 2 * l);
    return c;
}

cplx script_w(cplx v, const Modulus& m, int k)
{
    if (k < 0 || k > max_wp_deriv - 2) throw Error(ErrorCode::DerivOrderTooHigh, "script_w order out of range");
    if (std::abs(v) < 0.05) {
        // even Taylor series around the removable point
        cplx s = 0.0;
        for (int n = 1; 2 * n + 2 <= max_eisenstein_weight; ++n) {
            const int p = 2 * n;
            if (p < k) continue;
            double fall = 1.0;
            for (int i = 0; i < k; ++i) fall *= (p - i);
            s += script_w_taylor(p, m) * fall * std::pow(v, p - k);
        }
        return s;
    }
    std::array<cplx, max_wp_deriv + 1> P{};
    wp_derivs(v, m, std::max(k, 1), P.data());
    const cplx G2 = m.G2();
    // h = zeta - G2 v
    std::vector<cplx> h(k + 1);
    h[0] = wzeta(v, m) - G2 * v;
    if (k >= 1) h[1] = -P[0] - G2;
    for (int j = 2; j <= k; ++j) h[j] = -P[j - 1];
    cplx hh = 0.0;
    for (int j = 0; j <= k; ++j) hh += binom(k, j) * h[j] * h[k - j];
    cplx out = P[k] - hh;
    if (k == 0) out -= 2.0 * G2;
    return out;
}

cplx psi_fn(cplx v, const Modulus& m, int k)
{
    const cplx G2 = m.G2();
    if (k == 0) {
        const cplx t = theta1(v, m, 0) / m.theta1_prime0();
        if (std::abs(t) == 0.0) throw Error(ErrorCode::BranchPoint, "psi at a zero of theta1");
        return std::log(t);
    }
    if (k == 1) return wzeta(v, m) - G2 * v;
    if (k == 2) return -wp(v, m, 0) - G2;
    return -wp(v, m, k - 2);
}

}  // namespace wdvv
