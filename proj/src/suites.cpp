#include "wdvv/suites.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "wdvv/bellpoly.hpp"
#include "wdvv/contour.hpp"
#include "wdvv/flat.hpp"
#include "wdvv/identities.hpp"
#include "wdvv/prepotential.hpp"
#include "wdvv/qdeform.hpp"
#include "wdvv/reference/closed_forms.hpp"
#include "wdvv/reference/oracles.hpp"
#include "wdvv/special_fn.hpp"

namespace wdvv {

namespace {

constexpr cplx ipi{0.0, pi};

// Worst value per named check, in first-seen order.
class Worst {
public:
    void put(const std::string& name, double r)
    {
        for (auto& [n, v] : rows_)
            if (n == name) {
                if (!(r <= v)) v = r;
                return;
            }
        rows_.emplace_back(name, r);
    }
    void emit(ResidualReport& rep, const std::string& name, double tol) const
    {
        for (const auto& [n, v] : rows_)
            if (n == name) return rep.add(n, v, tol);
    }

private:
    std::vector<std::pair<std::string, double>> rows_;
};

double rel(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

double tensor_scale(const ThirdTensor& T)
{
    double s = 0.0;
    for (int a = 0; a < T.size(); ++a)
        for (int b = 0; b < T.size(); ++b)
            for (int c = 0; c < T.size(); ++c) s = std::max(s, std::abs(T(a, b, c)));
    return s;
}

double max_residual(const ResidualReport& r)
{
    double m = 0.0;
    for (const auto& e : r.entries())
        if (!(e.residual <= m)) m = e.residual;
    return m;
}

HurwitzPoint sample(const BranchProfile& pr, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> re(-0.3, 0.3), im(1.0, 1.4);
    SamplerOptions opt;
    opt.coeff_radius = 0.6;
    opt.min_abs_x1 = 0.8;
    const Modulus md(cplx(re(rng), im(rng)));
    return random_point(pr, md, rng, opt);
}

cplx random_q(std::mt19937_64& rng, double radius = 0.3)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    return radius * cplx(U(rng), U(rng)) / std::sqrt(2.0);
}

std::vector<BranchProfile> profiles_or(const SuiteOptions& opt, std::vector<BranchProfile> dflt)
{
    if (opt.profile) return {*opt.profile};
    return dflt;
}

ThirdTensor tensor(const Prepotential& F, const std::vector<cplx>& c, const SingularDistance& cap, int threads)
{
    return Jet(F, c, verification_config(), cap).third_tensor(threads);
}

// ---------------------------------------------------------------- special-fn

ResidualReport special_fn_suite(const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.8, 1.6), U(-0.5, 0.5);
    Worst w;
    for (int t = 0; t < 20; ++t) {
        const cplx tau(re(rng), im(rng));
        const Modulus m(tau);
        cplx v;
        do v = cplx(U(rng), 0.0) + U(rng) * tau;
        while (std::abs(reduce_to_cell(v, m).v0) < 0.15);

        const cplx G2 = m.G2();
        w.put("legendre", std::abs(tau * wzeta(0.5, m) - wzeta(0.5 * tau, m) - ipi));
        w.put("g2_half_period", std::abs(2.0 * wzeta(0.5, m) - G2));
        w.put("oracle:g2_half_period", rel(2.0 * oracle::zeta_rowsum(0.5, tau), G2));
        const cplx th = theta1(v, m);
        w.put("theta1_quasi_period",
              std::max(std::abs(theta1(v + 1.0, m) + th),
                       std::abs(theta1(v + tau, m) + std::exp(-ipi * tau - 2.0 * ipi * v) * th)) /
                  std::abs(th));
        w.put("zeta_quasi_period", std::max(std::abs(wzeta(v + 1.0, m) - wzeta(v, m) - G2),
                                            std::abs(wzeta(v + tau, m) - wzeta(v, m) - (tau * G2 - two_pi_i))));
        const cplx P = wp(v, m), dP = wp(v, m, 1);
        w.put("wp_ode", std::abs(dP * dP - 4.0 * P * P * P + 60.0 * m.G(4) * P + 140.0 * m.G(6)) /
                            std::max(1.0, std::abs(dP * dP)));
        for (int a = 0; a < 4; ++a) {
            const cplx z = std::polar(0.05, 0.3 + 1.4 * a);
            cplx s = 1.0 / (z * z);
            for (int l = 1; l <= 6; ++l) s += double(2 * l + 1) * m.G(2 * l + 2) * std::pow(z, 2 * l);
            w.put("laurent_vs_theta", std::abs(wp(z, m) - s));
        }
        w.put("oracle:wp_rowsum", rel(P, oracle::wp_rowsum(v, tau)));
        w.put("oracle:zeta_rowsum", rel(wzeta(v, m), oracle::zeta_rowsum(v, tau)));
        w.put("oracle:g2_rowsum", rel(G2, oracle::g2_rowsum(tau)));
        for (int k : {4, 6}) w.put("oracle:eisenstein_from_wp", rel(m.G(k), oracle::eisenstein_from_wp(k, tau)));
    }
    ResidualReport rep;
    for (const char* id : {"legendre", "g2_half_period", "theta1_quasi_period", "zeta_quasi_period", "wp_ode",
                           "laurent_vs_theta"})
        w.emit(rep, id, 1e-10);
    for (const char* id : {"oracle:wp_rowsum", "oracle:zeta_rowsum", "oracle:g2_rowsum", "oracle:g2_half_period",
                           "oracle:eisenstein_from_wp"})
        w.emit(rep, id, 1e-8);

    const cplx tau(0.1, 1.1), v(0.31, 0.17);
    rep.control("control:wp_rowsum_shifted_tau", rel(wp(v, Modulus(tau + 1e-3)), oracle::wp_rowsum(v, tau)));
    return rep;
}

// ---------------------------------------------------------------------- bell

std::vector<cplx> random_xs(std::mt19937_64& rng, int n)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cplx> xs(n);
    for (auto& x : xs) x = {U(rng), U(rng)};
    if (std::abs(xs[0]) < 0.5) xs[0] += 0.5;
    return xs;
}

double brel(cplx a, cplx b) { return std::abs(a - b) / (std::max(std::abs(a), std::abs(b)) + 1e-14); }

ResidualReport bell_suite(const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    Worst w;
    for (int trial = 0; trial < 3; ++trial) {
        const auto xs = random_xs(rng, 14);
        const std::vector<cplx> tail(xs.begin() + 1, xs.end());
        const cplx c(0.7, -1.3);
        std::vector<cplx> cx(xs);
        for (auto& v : cx) v *= c;
        for (int n = 0; n <= 10; ++n)
            for (int k = 0; k <= 10; ++k) {
                if (n + k <= 12) {
                    cplx s = 0.0;
                    for (int j = 0; j <= std::min(n, k); ++j)
                        s += binomial(k, j) * std::pow(xs[0], k - j) * bell_partial(n, j, tail);
                    w.put("rec0", brel(bell_partial(n + k, k, xs), s));
                }
                if (k <= n && n + 1 <= 11) {
                    cplx s1 = 0.0, s2 = 0.0, s3 = 0.0;
                    for (int j = k; j <= n; ++j) {
                        const cplx b = bell_partial(j, k, xs);
                        s1 += double(n + 1 - j) * xs[n - j] * b;
                        s2 += xs[n - j] * b;
                        s3 += double(n + 2 - j) * xs[n - j] * b;
                    }
                    const cplx lhs = bell_partial(n + 1, k + 1, xs);
                    w.put("rec1", brel(lhs, (k + 1.0) / (n + 1.0) * s1));
                    w.put("rec2", brel(lhs, s2));
                    w.put("rec3", brel(lhs, (k + 1.0) / (n + 2.0 + k) * s3));
                }
                if (k <= n) w.put("homogeneity", brel(bell_partial(n, k, cx), std::pow(c, k) * bell_partial(n, k, xs)));
            }
        for (int k = 0; k <= 10; ++k) {
            const auto series = oracle::power_series_power(xs, k, 10);
            for (int n = k; n <= 10; ++n) {
                w.put("generating_function", brel(bell_partial(n, k, xs), series[n]));
                w.put("oracle:compositions", brel(bell_partial(n, k, xs), oracle::bell_by_compositions(n, k, xs)));
            }
        }
        for (int n = 1; n <= 10; ++n)
            w.put("oracle:partitions", brel(bell_complete(n, xs), oracle::complete_by_partitions(n, xs)));
        for (int n = 1; n <= 8; ++n)
            for (int a = 1; a <= n; ++a) {
                cplx s = 0.0;
                for (int k = a + 1; k <= n + 1; ++k) s += bell_partial(n + 1, k, xs) * r_function(k - a, k + 1, xs);
                w.put("rec5", brel(bell_partial(n + 1, a, xs), double(a) * std::pow(xs[0], a) * s));
            }
        for (int mu = 1; mu <= 8; ++mu)
            for (int k = 1; k <= 8; ++k)
                if (mu != k - 1) w.put("r_definition", brel(r_function(mu, k, xs), r_function_definition(mu, k, xs)));
    }
    ResidualReport rep;
    for (const char* id : {"rec0", "rec1", "rec2", "rec3", "homogeneity", "generating_function", "oracle:compositions",
                           "oracle:partitions", "rec5", "r_definition"})
        w.emit(rep, id, 1e-10);

    auto xs = random_xs(rng, 8);
    auto bad = xs;
    bad[2] += 1e-3;
    cplx s = 0.0;
    for (int k = 3; k <= 6; ++k) s += bell_partial(6, k, xs) * r_function(k - 2, k + 1, bad);
    rep.control("control:rec5_perturbed_x3", std::abs(bell_partial(6, 2, xs) - 2.0 * std::pow(xs[0], 2) * s));
    return rep;
}

// ------------------------------------------------------------------- hurwitz

ResidualReport hurwitz_suite(const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> U(-0.5, 0.5);
    Worst w;
    ResidualReport flags;
    for (const auto& pr : profiles_or(opt, {{{1}}, {{2}}, {{1, 0}}, {{0, 0}}, {{1, 1}}})) {
        const std::string tag = "[" + to_string(pr) + "]";
        for (int t = 0; t < 2; ++t) {
            const HurwitzPoint p = sample(pr, rng);
            const Modulus& md = p.modulus();
            w.put("residue_closure", std::abs(residue_sum(p)));
            for (int k = 0; k < 8; ++k) {
                const cplx z(U(rng), U(rng));
                const cplx l = lambda_eval(p, z);
                w.put("ellipticity", std::max(rel(lambda_eval(p, z + 1.0), l), rel(lambda_eval(p, z + md.tau()), l)));
            }
            for (int j = 0; j <= p.m(); ++j) {
                const int N = p.n(j) + 1;
                for (int a = 1; a <= N; ++a) w.put("oracle:x_alpha", rel(p.x(j, a), oracle::x_coefficient(p, j, a)));
                for (int a = 1; a <= 3; ++a)
                    w.put("oracle:extended_x", rel(extended_x(p, j, a), oracle::x_coefficient(p, j, N + a)));
                for (int l = 0; l <= 3; ++l)
                    w.put("oracle:f_ell", rel(f_coeff(p, j, l), oracle::lambda_laurent(p, j, l)));
            }
            for (int i = 0; i <= p.m(); ++i) {
                for (int j = 1; j <= p.m(); ++j)
                    for (int a = 1; a <= p.n(i) + 2; ++a)
                        w.put("oracle:I_omega", rel(I_omega(p, i, j, a), oracle::I_omega(p, i, j, a)));
                for (int j = 0; j <= p.m(); ++j)
                    for (int b = 1; b <= p.n(i) + 1; ++b)
                        for (int a = 1; a <= p.n(j) + 1; ++a)
                            w.put("oracle:I_psi", rel(I_psi(p, i, b, j, a), oracle::I_psi(p, i, b, j, a)));
            }
            const ResidualReport v = validate_point(p);
            const ResidualEntry* rc = v.find("ramification_count");
            flags.flag("ramification_count" + tag + "#" + std::to_string(t), rc && rc->pass, rc ? rc->note : "");
        }
    }
    ResidualReport rep;
    for (const char* id : {"residue_closure", "ellipticity", "oracle:x_alpha", "oracle:extended_x", "oracle:f_ell",
                           "oracle:I_omega", "oracle:I_psi"})
        w.emit(rep, id, 1e-8);
    rep.merge(flags);

    const HurwitzPoint p = sample({{2}}, rng);
    const HurwitzPoint bad = p.with_u(p.u() + 1e-3);
    rep.control("control:x_oracle_shifted_u", std::abs(extended_x(bad, 0, 1) - oracle::x_coefficient(p, 0, 4)));
    return rep;
}

// ---------------------------------------------------------------------- wdvv

using AffineForm = std::function<cplx(cplx, cplx, std::vector<cplx>, cplx, const Modulus&, const reference::LogFn&)>;

Prepotential affine(int n, AffineForm f)
{
    return [n, f](std::span<const cplx> c, LogCursor& lg) {
        const Modulus m(c[1]);
        return f(c[0], c[2], std::vector<cplx>(c.begin() + 3, c.begin() + 3 + n), c[3 + n], m,
                 [&lg](cplx z) { return lg.log(z); });
    };
}

double closed_form_gap(const FlatChart& ch, const Prepotential& closed, const std::vector<cplx>& c, int threads)
{
    const ThirdTensor G = tensor(phi_prepotential(ch), c, chart_cap(ch), threads);
    const ThirdTensor T = tensor(closed, c, chart_cap(ch), threads);
    return G.max_abs_diff(T) / (1.0 + tensor_scale(G));
}

ResidualReport wdvv_suite(const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    ResidualReport rep;
    const int th = opt.threads;
    for (const auto& pr : profiles_or(opt, {{{1}}, {{2}}, {{3}}, {{0, 0}}, {{1, 0}}, {{1, 1}}})) {
        const std::string tag = "[" + to_string(pr) + "]";
        const FlatChart ch(pr);
        const HurwitzPoint p = sample(pr, rng);
        const auto c = ch.coords(p);
        const Prepotential F = phi_prepotential(ch);
        rep.add("wdvv" + tag, max_residual(wdvv_report(tensor(F, c, chart_cap(ch), th), 1e-7)), 1e-7);
        rep.add("gram" + tag, max_residual(gram_check(F, ch, c, verification_config())), 1e-8);
        const EulerResult e = euler_check(F, ch, c, verification_config());
        const double scale = 1.0 + std::abs(e.F);
        rep.add("euler_literal" + tag, e.residual / scale, 1e-8, "|E.F - 2F|/(1+|F|)");
        rep.add("euler_defect" + tag, std::abs(e.EF - 2.0 * e.F - euler_defect(p)) / scale, 1e-8,
                "E.F - 2F against the residue quadratic");
        if (pr.m() >= 1 || pr.n(0) >= 1) {
            const ResidualReport h = hessian_period_check(p, verification_config());
            if (!h.entries().empty()) rep.add("hessian_periods" + tag, max_residual(h), 1e-7);
        }
    }

    // closed forms against the general prepotential
    if (!opt.profile) {
        using V = std::vector<cplx>;
        using L = reference::LogFn;
        for (int n = 1; n <= 3; ++n) {
            const FlatChart ch(BranchProfile{{n}});
            const auto c = ch.coords(sample(ch.profile(), rng));
            const Prepotential closed = [n](std::span<const cplx> c, LogCursor&) {
                const Modulus m(c[1]);
                if (n == 1) return reference::A1(c[0], c[2], m);
                if (n == 2) return reference::A2(c[0], c[2], c[3], m);
                return reference::A3(c[0], c[2], c[3], c[4], m);
            };
            rep.add("closed_form:A" + std::to_string(n), closed_form_gap(ch, closed, c, th), 1e-8);
        }
        const std::vector<AffineForm> affine_forms{
            [](cplx u, cplx s, V, cplx y, const Modulus& m, const L& lg) { return reference::AA0(u, s, y, m, lg); },
            [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) {
                return reference::AA1(u, s, x[0], y, m, lg);
            },
            [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) {
                return reference::AA2(u, s, x[0], x[1], y, m, -1.5, lg);
            },
            [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) {
                return reference::AA3(u, s, x[0], x[1], x[2], y, m, -4.0, 4.0, lg);
            }};
        for (int n = 0; n <= 3; ++n) {
            const FlatChart ch(BranchProfile{{n, 0}});
            const auto c = ch.coords(sample(ch.profile(), rng));
            rep.add("closed_form:AA" + std::to_string(n), closed_form_gap(ch, affine(n, affine_forms[n]), c, th), 1e-8);
        }
        for (int m = 1; m <= 2; ++m) {
            const FlatChart ch(BranchProfile{std::vector<int>(m + 1, 0)});
            const auto c = ch.coords(sample(ch.profile(), rng));
            const Prepotential closed = [m](std::span<const cplx> c, LogCursor& lg) {
                return f_phi_case0(c[0], c.subspan(2, m), c.subspan(2 + m, m), Modulus(c[1]), lg);
            };
            rep.add("closed_form:case0[m=" + std::to_string(m) + "]", closed_form_gap(ch, closed, c, th), 1e-8);
        }
        {
            const FlatChart ch(BranchProfile{{1, 1}});
            const auto c = ch.coords(sample(ch.profile(), rng));
            const Prepotential closed = [ch](std::span<const cplx> c, LogCursor& lg) {
                return f_phi_case1(ch.point(c), lg);
            };
            rep.add("closed_form:case1[m=1]", closed_form_gap(ch, closed, c, th), 1e-8);
        }
    }

    const FlatChart ch({{2}});
    const auto c = ch.coords(sample(ch.profile(), rng));
    const Prepotential bent = [](std::span<const cplx> c, LogCursor&) {
        const Modulus m(c[1]);
        return reference::A2(c[0], c[2], c[3], m) + 1e-3 * 4.5 * c[2] * c[2] * c[3] * c[3] * m.G2();
    };
    rep.control("control:wdvv_bent_A2", max_residual(wdvv_report(tensor(bent, c, chart_cap(ch), th), 1e-7)));
    return rep;
}

// ------------------------------------------------------------------- qdeform

ResidualReport qdeform_suite(const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    Worst w;
    ResidualReport rep, assoc;
    const int th = opt.threads;
    const auto profiles = profiles_or(opt, {{{1}}, {{2}}, {{0, 0}}, {{1, 0}}, {{1, 1}}});
    for (const auto& pr : profiles) {
        const FlatChart ch(pr);
        const HurwitzPoint p = sample(pr, rng);
        const cplx z(0.31, 0.17);

        const QPoint q0 = t_q_map(p, 0.0);
        w.put("q0_reduction", rel(f_phi_q(q0), f_phi(p)));
        w.put("q0_reduction", rel(lambda_q_eval(q0, z), lambda_eval(p, z)));
        for (int j = 0; j <= p.m(); ++j)
            for (int a = 1; a <= 2; ++a) w.put("q0_reduction", rel(extended_x_q(q0, j, a), extended_x(p, j, a)));

        cplx q = random_q(rng, 1.0);
        while (std::abs(1.0 + q * p.tau()) < 0.5) q = random_q(rng, 1.0);
        const QPoint qr = t_q_map(p, q);
        const auto back = ch.coords(t_q_inverse(qr)), orig = ch.coords(p);
        double d = 0.0;
        for (std::size_t i = 0; i < orig.size(); ++i) d = std::max(d, std::abs(back[i] - orig[i]));
        w.put("round_trip", d);

        const QPoint qp = t_q_map(p, random_q(rng));
        for (int k = 0; k < 6; ++k) {
            const cplx zz(0.05 + 0.093 * k, -0.4 + 0.08 * k);
            w.put("lambda_q", rel(lambda_q_eval(qp, zz), lambda_eval(p, zz)));
        }
        for (int j = 0; j <= p.m(); ++j)
            for (int ell = 0; ell <= 3; ++ell) {
                const cplx fq = f_q_coeff(qp, j, ell);
                w.put("f_fq_link", rel(f_coeff(p, j, ell), std::pow(qp.scale(), ell) * fq));
                w.put("oracle:f_fq_laurent", rel(oracle::lambda_laurent(p, j, ell), std::pow(qp.scale(), ell) * fq));
            }
        const auto c = ch.coords(qp.deformed());
        assoc.add("wdvv_q[" + to_string(pr) + "]",
                max_residual(wdvv_report(tensor(q_prepotential(ch, qp.q()), c, q_chart_cap(ch, qp.q()), th), 1e-7)),
                1e-7);
    }
    w.emit(rep, "q0_reduction", 1e-12);
    w.emit(rep, "round_trip", 1e-13);
    w.emit(rep, "lambda_q", 1e-10);
    w.emit(rep, "f_fq_link", 1e-10);
    w.emit(rep, "oracle:f_fq_laurent", 1e-8);
    rep.merge(assoc);

    // closed q-forms for (0,0) and (1,0)
    if (!opt.profile) {
        using L = reference::LogFn;
        for (int n = 0; n <= 1; ++n) {
            const FlatChart ch({{n, 0}});
            const HurwitzPoint p = sample(ch.profile(), rng);
            const cplx q = random_q(rng);
            const auto c = ch.coords(t_q_map(p, q).deformed());
            const Prepotential closed = [n, q](std::span<const cplx> c, LogCursor& lg) {
                const L log = [&lg](cplx z) { return lg.log(z); };
                if (n == 0) return reference::AA0q(c[0], c[1], c[2], c[3], q, log);
                return reference::AA1q(c[0], c[1], c[2], c[3], c[4], q, log);
            };
            const SingularDistance cap = q_chart_cap(ch, q);
            const ThirdTensor G = tensor(q_prepotential(ch, q), c, cap, th);
            const ThirdTensor T = tensor(closed, c, cap, th);
            rep.add("closed_form:AA" + std::to_string(n) + "q", G.max_abs_diff(T) / (1.0 + tensor_scale(G)), 1e-7);
        }
    }

    // q-Ramanujan
    for (int t = 0; t < 3; ++t) {
        const Modulus md(cplx(0.2 * t - 0.2, 1.0 + 0.1 * t));
        const cplx q = random_q(rng);
        const cplx tq = md.tau() / (1.0 + q * md.tau());
        auto G = [q](int wt) { return [wt, q](cplx x) { return g_q(wt, x, q); }; };
        const cplx g2 = g_q(2, tq, q), g4 = g_q(4, tq, q), g6 = g_q(6, tq, q);
        w.put("q_ramanujan_m1", std::abs(cauchy_derivative(G(2), tq, 0.05, 64, 1) - (5.0 * g4 - g2 * g2) / (2.0 * ipi)));
        w.put("q_ramanujan_m2",
              std::abs(cauchy_derivative(G(4), tq, 0.05, 64, 1) - 2.0 / (2.0 * ipi) * (7.0 * g6 - 2.0 * g2 * g4)));
    }
    w.emit(rep, "q_ramanujan_m1", 1e-8);
    w.emit(rep, "q_ramanujan_m2", 1e-8);

    const FlatChart ch({{1, 0}});
    const HurwitzPoint p = sample(ch.profile(), rng);
    const cplx q(0.2, 0.1);
    const auto c = ch.coords(t_q_map(p, q).deformed());
    const Prepotential bent = [ch, q](std::span<const cplx> c, LogCursor& lg) {
        const QPoint qp = q_point(ch.flat(c), q);
        const cplx cq = qp.scale(), ct = 1.0 - q * qp.base().tau();
        return f_phi_q(qp, lg) + (cq * cq - ct * ct) * first_line(qp.base());
    };
    rep.control("control:wdvv_q_undeformed_scale",
                max_residual(wdvv_report(tensor(bent, c, q_chart_cap(ch, q), th), 1e-7)));
    return rep;
}

// ---------------------------------------------------------------- identities

ResidualReport identities_suite(const SuiteOptions& opt)
{
    std::mt19937_64 rng(opt.seed);
    const std::array<cplx, 5> taus{cplx(0, 1), cplx(0.3, 1.2), cplx(-0.4, 0.9), cplx(0.5, 1.5), cplx(0.1, 0.8)};
    const std::array<cplx, 5> vs{cplx(0.3, 0.2), cplx(-0.21, 0.35), cplx(0.17, -0.3), cplx(0.42, 0.11),
                                 cplx(0.05, 0.4)};
    Worst w;
    std::vector<std::string> order;
    auto absorb = [&](const ResidualReport& r) {
        for (const auto& e : r.entries()) {
            if (std::find(order.begin(), order.end(), e.identity) == order.end()) order.push_back(e.identity);
            w.put(e.identity, e.residual);
        }
    };
    for (cplx tau : taus)
        for (cplx v : vs) {
            const Modulus m(tau);
            absorb(dtau_formulas_check(v, m));
            absorb(psi_pde_check(v, m));
        }
    std::uniform_real_distribution<double> U(-0.45, 0.45), I(0.7, 1.5);
    for (int k = 0; k < 5; ++k) {
        const Modulus m(cplx(U(rng), I(rng)));
        absorb(psi_pde_check(cplx(U(rng), 0.6 * U(rng)), m));
    }
    ResidualReport rep;
    for (const auto& id : order) w.emit(rep, id, id == "psi_W_link" || id == "psi_sigma" ? 1e-10 : 1e-7);

    double ram = 0.0, zr = 0.0;
    for (cplx tau : taus)
        for (int mm = 1; mm <= 6; ++mm) {
            const Modulus m(tau);
            ram = std::max(ram, ramanujan_residual(mm, m) / (1.0 + std::abs(m.G(2 * mm + 2))));
        }
    for (int mm = 1; mm <= 6; ++mm) zr = std::max(zr, zeta_recursion_residual(mm));
    rep.add("ramanujan", ram, 1e-9);
    rep.add("zeta_recursion", zr, 1e-13);

    const std::vector<std::array<cplx, 4>> pts{
        {cplx(1.1 / (2 * pi), 0.02), cplx(0.3, 0.2), cplx(0.9, 0.1), cplx(0.4, -0.2)},
        {cplx(0.9 / (2 * pi), -0.05), cplx(-0.2, 0.3), cplx(0.7, -0.3), cplx(1.2, 0.5)},
        {cplx(1.3 / (2 * pi), 0.04), cplx(0.35, -0.1), cplx(-0.8, 0.4), cplx(-0.3, 0.1)}};
    double pw = 0.0, pp = 0.0;
    for (const auto& t : pts) {
        const ResidualReport r = pde1_equivalence(theta_psi(), three_g2(), t);
        for (const auto& e : r.entries()) {
            double& slot = e.identity.rfind("wdvv", 0) == 0 ? pw : pp;
            slot = std::max(slot, e.residual);
        }
    }
    rep.add("pde1_wdvv", pw, 1e-7);
    rep.add("pde1_cns", pp, 1e-7);

    double ju = 0.0;
    std::uniform_real_distribution<double> Z(-0.5, 0.5);
    for (int k = 0; k < 5; ++k) {
        const HurwitzPoint p = sample({{0, 0}}, rng);
        const cplx z(Z(rng), 0.8 * Z(rng) * p.tau().imag());
        ju = std::max(ju, max_residual(phi_u_formula_check(p, z)));
    }
    rep.add("phi_u_jump", ju, 1e-7);

    const PsiFn base = theta_psi();
    const PsiFn bad = [base](cplx v, cplx tau, LogCursor& lg) { return base(v, tau, lg) + 1e-3 * v * v * v * v; };
    const ResidualReport r = pde1_equivalence(bad, three_g2(), pts[0]);
    double bw = 0.0;
    for (const auto& e : r.entries())
        if (e.identity.rfind("wdvv", 0) == 0) bw = std::max(bw, e.residual);
    rep.control("control:pde1_wdvv_perturbed_psi", bw);
    rep.control("control:pde1_cns_perturbed_psi",
                std::max(r.find("pde_fourth")->residual, r.find("pde_heat")->residual));
    const Modulus m(cplx(0, 1));
    rep.control("control:ramanujan_without_quadratic",
                std::abs(eisenstein_dtau(2, m) - 5.0 * m.G(4) / (2.0 * ipi)));
    return rep;
}

}  // namespace

const std::vector<Suite>& all_suites()
{
    static const std::vector<Suite> s{Suite::SpecialFn, Suite::Bell,    Suite::Hurwitz,
                                      Suite::Wdvv,      Suite::QDeform, Suite::Identities};
    return s;
}

std::string to_string(Suite s)
{
    switch (s) {
    case Suite::SpecialFn: return "special-fn";
    case Suite::Bell: return "bell";
    case Suite::Hurwitz: return "hurwitz";
    case Suite::Wdvv: return "wdvv";
    case Suite::QDeform: return "qdeform";
    case Suite::Identities: return "identities";
    }
    return "unknown";
}

std::optional<Suite> parse_suite(std::string_view name)
{
    for (Suite s : all_suites())
        if (to_string(s) == name) return s;
    return std::nullopt;
}

ResidualReport run_suite(Suite s, const SuiteOptions& opt)
{
    ResidualReport rep;
    switch (s) {
    case Suite::SpecialFn: rep = special_fn_suite(opt); break;
    case Suite::Bell: rep = bell_suite(opt); break;
    case Suite::Hurwitz: rep = hurwitz_suite(opt); break;
    case Suite::Wdvv: rep = wdvv_suite(opt); break;
    case Suite::QDeform: rep = qdeform_suite(opt); break;
    case Suite::Identities: rep = identities_suite(opt); break;
    }
    if (opt.tol) rep.retolerance(*opt.tol);
    return rep;
}

}  // namespace wdvv
