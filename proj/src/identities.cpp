#include "wdvv/identities.hpp"

#include <algorithm>
#include <cmath>

#include "wdvv/contour.hpp"

namespace wdvv {

namespace {

constexpr cplx ipi{0.0, pi};
constexpr int tau_points = 64;

double lattice_distance(cplx v, const Modulus& m)
{
    const cplx v0 = reduce_to_cell(v, m).v0;
    double d = 1e300;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) d = std::min(d, std::abs(v0 - double(a) - double(b) * m.tau()));
    return d;
}

// k-th derivative at c of g(w, lg), logs continued from c.
template <class G>
cplx continued_derivative(G&& g, cplx c, double r, int n, int k)
{
    std::vector<LogAnchor> anchors;
    {
        LogCursor rec = LogCursor::recorder(anchors);
        g(c, rec);
    }
    return cauchy_derivative(
        [&](cplx w) {
            LogCursor f = LogCursor::follower(anchors);
            return g(w, f);
        },
        c, r, n, k);
}

cplx ramanujan_rhs(int mm, const Modulus& m)
{
    cplx s = (2.0 * mm + 3.0) * m.G(2 * mm + 2);
    for (int l = 0; l <= mm - 1; ++l) s -= m.G(2 * l + 2) * m.G(2 * mm - 2 * l);
    return double(mm) / (2.0 * ipi) * s;
}

double v_radius(cplx v, const Modulus& m) { return std::min(0.2, 0.4 * lattice_distance(v, m)); }

}  // namespace

double tau_contour_radius(cplx v, const Modulus& m)
{
    const cplx tau = m.tau();
    double r = std::min(0.05, tau.imag() / 4.0);
    for (int b = 1; b <= 3; ++b)
        for (int a = -4; a <= 4; ++a) {
            r = std::min(r, 0.4 * std::abs((v - double(a)) / double(b) - tau));
            r = std::min(r, 0.4 * std::abs((v - double(a)) / double(-b) - tau));
        }
    return r;
}

cplx dtau(const std::function<cplx(const Modulus&)>& f, const Modulus& m, double radius, int points)
{
    return cauchy_derivative([&](cplx t) { return f(Modulus(t, m.series_tol())); }, m.tau(), radius, points, 1);
}

cplx dtau(const std::function<cplx(const Modulus&, LogCursor&)>& f, const Modulus& m, double radius, int points)
{
    return continued_derivative([&](cplx t, LogCursor& lg) { return f(Modulus(t, m.series_tol()), lg); }, m.tau(),
                                radius, points, 1);
}

cplx eisenstein_dtau(int weight, const Modulus& m)
{
    if (weight < 2 || weight % 2) throw Error(ErrorCode::OddWeight, "eisenstein_dtau needs an even weight >= 2");
    const int p = weight - 1;
    const cplx q2 = std::exp(2.0 * ipi * m.tau());
    cplx pref = 2.0 * std::pow(2.0 * ipi, weight + 1);
    for (int i = 2; i <= p; ++i) pref /= double(i);
    cplx sum = 0.0, qn = 1.0;
    int quiet = 0;
    for (int n = 1; n <= 20000; ++n) {
        qn *= q2;
        double sigma = 0.0;
        for (int d = 1; d * d <= n; ++d) {
            if (n % d) continue;
            sigma += std::pow(double(d), p);
            if (d * d != n) sigma += std::pow(double(n / d), p);
        }
        const cplx term = sigma * double(n) * qn;
        sum += term;
        quiet = std::abs(term) <= 1e-18 * std::abs(sum) ? quiet + 1 : 0;
        if (quiet >= 3 || qn == 0.0) break;
    }
    return pref * sum;
}

double ramanujan_residual(int mm, const Modulus& m)
{
    if (mm < 1 || mm > 6) throw Error(ErrorCode::InvalidOrder, "ramanujan_residual needs 1 <= mm <= 6");
    return std::abs(eisenstein_dtau(2 * mm, m) - ramanujan_rhs(mm, m));
}

double zeta_recursion_residual(int mm)
{
    if (mm < 1) throw Error(ErrorCode::InvalidOrder, "zeta recursion needs mm >= 1");
    auto z = [](int k) { return 0.5 * two_riemann_zeta_even(k); };
    double s = 0.0;
    for (int k = 1; k <= mm; ++k) s += z(2 * k) * z(2 * mm + 2 - 2 * k);
    return std::abs((2.0 * mm + 3.0) * z(2 * mm + 2) - 2.0 * s) / z(2 * mm + 2);
}

double w_ode_residual(cplx v, const Modulus& m)
{
    const cplx G2 = m.G2(), G4 = m.G(4);
    const cplx h = wzeta(v, m) - G2 * v;
    return std::abs(script_w(v, m, 2) - 2.0 * h * script_w(v, m, 1) - 4.0 * (wp(v, m) + G2) * script_w(v, m) +
                    6.0 * (5.0 * G4 - G2 * G2));
}

double w_heat_residual(cplx v, const Modulus& m, const EvalConfig& cfg)
{
    const int n = std::max(cfg.contour_points, tau_points);
    const cplx dW = dtau([v](const Modulus& t) { return script_w(v, t); }, m, tau_contour_radius(v, m), n);
    const cplx rhs = (script_w(v, m, 2) - 2.0 * (wp(v, m) + m.G2()) * script_w(v, m)) / (2.0 * ipi);
    return std::abs(dW - rhs);
}

ResidualReport dtau_formulas_check(cplx v, const Modulus& m, const EvalConfig& cfg, double tol)
{
    if (lattice_distance(v, m) < 1e-8) throw Error(ErrorCode::PoleArgument, "v on the lattice");
    const int n = std::max(cfg.contour_points, tau_points);
    const double r = tau_contour_radius(v, m);
    const cplx G2 = m.G2(), G4 = m.G(4), e = 5.0 * G4 - G2 * G2, four_ipi = 4.0 * ipi;
    const cplx W0 = script_w(v, m), W1 = script_w(v, m, 1), W2 = script_w(v, m, 2), W3 = script_w(v, m, 3);

    const cplx dK = dtau([v](const Modulus& t, LogCursor& lg) { return lg.K(v, t); }, m, r, n);
    const cplx dG2 = dtau([](const Modulus& t) { return t.G2(); }, m, r, n);
    const cplx dz = dtau([v](const Modulus& t) { return wzeta(v, t); }, m, r, n);
    const cplx dp = dtau([v](const Modulus& t) { return wp(v, t); }, m, r, n);
    const cplx dp1 = dtau([v](const Modulus& t) { return wp(v, t, 1); }, m, r, n);

    ResidualReport rep;
    rep.add("K_tau", std::abs(dK - 0.5 * v * v * dG2 + W0 / four_ipi), tol);
    rep.add("zeta_tau", std::abs(dz - v * dG2 + W1 / four_ipi), tol);
    rep.add("log_sigma_tau", std::abs(dK + (W0 - e * v * v) / four_ipi), tol);
    rep.add("zeta_tau_e", std::abs(dz + (W1 - 2.0 * e * v) / four_ipi), tol);
    rep.add("wp_tau", std::abs(dp - (W2 - 2.0 * e) / four_ipi), tol);
    rep.add("wp1_tau", std::abs(dp1 - W3 / four_ipi), tol);
    rep.add("w_heat", w_heat_residual(v, m, cfg), tol);
    return rep;
}

ResidualReport psi_pde_check(cplx v, const Modulus& m, const EvalConfig& cfg, double tol)
{
    if (lattice_distance(v, m) < 1e-8) throw Error(ErrorCode::BranchPoint, "v at a zero of theta_1");
    const int n = std::max(cfg.contour_points, tau_points);
    const cplx G2 = m.G2(), G4 = m.G(4);
    const cplx p1 = psi_fn(v, m, 1), p2 = psi_fn(v, m, 2), p4 = psi_fn(v, m, 4);
    const PsiFn psi = theta_psi(m.series_tol());
    const cplx dpsi = dtau([&](const Modulus& t, LogCursor& lg) { return psi(v, t.tau(), lg); }, m,
                           tau_contour_radius(v, m), n);

    ResidualReport rep;
    rep.add("psi_diff", std::abs(p4 + 6.0 * p2 * p2 + 12.0 * G2 * p2 + 6.0 * (G2 * G2 - 5.0 * G4)), tol);
    rep.add("psi_heat", std::abs(4.0 * ipi * dpsi - p2 - p1 * p1 - 3.0 * G2), tol);
    rep.add("psi_W_link", std::abs(p2 + p1 * p1 + 3.0 * G2 + script_w(v, m)), 1e-10);
    rep.add("psi_sigma", std::abs(std::exp(psi_fn(v, m) - bigK(v, m) + 0.5 * G2 * v * v) - 1.0), 1e-10);
    return rep;
}

PsiFn theta_psi(double series_tol)
{
    return [series_tol](cplx v, cplx tau, LogCursor& lg) {
        const Modulus m(tau, series_tol);
        return lg.log(theta1(v, m) / m.theta1_prime0());
    };
}

TauFn three_g2(double series_tol)
{
    return [series_tol](cplx tau) { return 3.0 * Modulus(tau, series_tol).G2(); };
}

Prepotential pde1_prepotential(PsiFn psi)
{
    return [psi = std::move(psi)](std::span<const cplx> t, LogCursor& lg) {
        const cplx t0 = t[0], t1 = t[1], t2 = t[2], t3 = t[3];
        const cplx lt2 = lg.log(t2);
        return 0.5 * t3 * t3 * t0 + t1 * t2 * t3 + t2 * t2 * lt2 - t2 * t2 * psi(t1, 2.0 * ipi * t0, lg);
    };
}

SingularDistance pde1_cap()
{
    const FlatChart chart(BranchProfile{{0, 0}});
    return [chart](std::span<const cplx> b, std::span<const cplx> v) {
        const std::array<cplx, 4> cb{b[3], 2.0 * ipi * b[0], b[1], b[2]};
        const std::array<cplx, 4> cv{v[3], 2.0 * ipi * v[0], v[1], v[2]};
        return chart.singular_distance(cb, cv);
    };
}

ResidualReport pde1_equivalence(const PsiFn& psi, const TauFn& f, const std::array<cplx, 4>& t,
                                const EvalConfig& cfg, double tol)
{
    const Jet jet(pde1_prepotential(psi), std::vector<cplx>(t.begin(), t.end()), cfg, pde1_cap());
    ResidualReport rep = wdvv_report(jet.third_tensor(), tol, 3);

    const cplx v = t[1], tau = 2.0 * ipi * t[0];
    const Modulus m(tau, cfg.series_tol);
    const int n = std::max(cfg.contour_points, tau_points);
    const double rv = v_radius(v, m), rt = tau_contour_radius(v, m);
    auto in_v = [&](cplx w, LogCursor& lg) { return psi(w, tau, lg); };
    const cplx p1 = continued_derivative(in_v, v, rv, n, 1);
    const cplx p2 = continued_derivative(in_v, v, rv, n, 2);
    const cplx p4 = continued_derivative(in_v, v, rv, n, 4);
    const cplx pt = continued_derivative([&](cplx s, LogCursor& lg) { return psi(v, s, lg); }, tau, rt, n, 1);
    const cplx f0 = f(tau);
    const cplx f1 = cauchy_derivative(f, tau, rt, n, 1);
    rep.add("pde_fourth", std::abs(p4 + 6.0 * p2 * p2 + 4.0 * f0 * p2 - 4.0 * ipi * f1), tol);
    rep.add("pde_heat", std::abs(4.0 * ipi * pt - p2 - p1 * p1 - f0), tol);
    return rep;
}

namespace {

// Vertical distance from w to the horizontal lines Im = h + k Im(tau).
double line_distance(cplx w, double h, const Modulus& m)
{
    const double T = m.tau().imag();
    const double d = std::remainder(w.imag() - h, T);
    return std::abs(d);
}

double cycle_height(const HurwitzPoint& p, cplx z)
{
    const double T = p.tau().imag();
    for (double frac : {0.43, 0.31, 0.55, 0.19, 0.67, 0.07, 0.79, 0.91}) {
        const double h = frac * T;
        bool ok = line_distance(z, h, p.modulus()) >= 0.05;
        for (cplx pole : p.poles()) ok = ok && line_distance(pole, h, p.modulus()) >= 0.05;
        if (ok) return h;
    }
    throw Error(ErrorCode::PoleArgument, "no a-cycle clear of the poles");
}

// w - k tau with h - Im(tau) < Im < h
cplx strip_rep(cplx w, double h, const Modulus& m)
{
    const double T = m.tau().imag();
    return w - std::floor((w.imag() - h + T) / T) * m.tau();
}

}  // namespace

cplx phi_u_quadrature(const HurwitzPoint& p, cplx z)
{
    if (p.profile() != BranchProfile{{0, 0}}) throw Error(ErrorCode::InvalidPoint, "phi_u needs profile (0,0)");
    static const GaussRule rule = gauss_legendre(24);
    const Modulus& md = p.modulus();
    const cplx x0(0.11, cycle_height(p, z));
    const cplx G2 = md.G2();
    return segment_integral([&](cplx w) { return lambda_eval(p, w) * (wp(z - w, md) + G2); }, x0, x0 + 1.0, rule,
                            16);
}

cplx phi_u_closed(const HurwitzPoint& p, cplx z)
{
    if (p.profile() != BranchProfile{{0, 0}}) throw Error(ErrorCode::InvalidPoint, "phi_u needs profile (0,0)");
    const Modulus& md = p.modulus();
    const double h = cycle_height(p, z);
    const cplx y = p.x(1, 1), zr = strip_rep(z, h, md);
    return -0.5 * y * (script_w(zr - strip_rep(p.pole(1), h, md), md, 1) - script_w(zr - strip_rep(p.pole(0), h, md), md, 1));
}

ResidualReport phi_u_formula_check(const HurwitzPoint& p, cplx z, double tol)
{
    ResidualReport rep;
    rep.add("phi_u", std::abs(phi_u_quadrature(p, z) - phi_u_closed(p, z)), tol);
    return rep;
}

}  // namespace wdvv
