#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "wdvv/reference/closed_forms.hpp"
#include "wdvv/reference/oracles.hpp"
#include "wdvv/flat.hpp"
#include "wdvv/prepotential.hpp"

using namespace wdvv;

namespace {

const cplx ipi{0.0, pi};

double rel(cplx a, cplx b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

Modulus random_modulus(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> re(-0.3, 0.3), im(1.0, 1.4);
    return Modulus(cplx(re(rng), im(rng)));
}

HurwitzPoint sample(const BranchProfile& pr, std::mt19937_64& rng)
{
    SamplerOptions opt;
    opt.coeff_radius = 0.6;
    opt.min_abs_x1 = 0.8;
    const Modulus md = random_modulus(rng);
    return random_point(pr, md, rng, opt);
}

cplx residue_total(const HurwitzPoint& p)
{
    cplx Y = 0.0;
    for (int j = 1; j <= p.m(); ++j) Y += double(p.n(j) + 1) * p.x(j, p.n(j) + 1);
    return Y;
}

// sums over the pairings that define the second, third and fourth lines
cplx sigma2_def(const HurwitzPoint& p)
{
    cplx s = 0.0;
    for (int i = 1; i <= p.m(); ++i)
        for (int j = 1; j <= p.m(); ++j) {
            const double Ni = p.n(i) + 1, Nj = p.n(j) + 1;
            s += 0.5 * Ni * Nj * p.x(i, p.n(i) + 1) * p.x(j, p.n(j) + 1) * s_pairing(p, i, j);
        }
    return s;
}

cplx sigma3_def(const HurwitzPoint& p)
{
    cplx s = 0.0;
    for (int j = 1; j <= p.m(); ++j)
        for (int i = 0; i <= p.m(); ++i) {
            const double Ni = p.n(i) + 1, Nj = p.n(j) + 1;
            for (int a = 1; a < Ni; ++a)
                s += 0.5 * ((Ni - a) / (Ni + a) + (Ni - a) / Ni) * Ni * Nj * p.x(i, int(Ni) - a) * p.x(j, int(Nj)) *
                     I_omega(p, i, j, a) / double(a);
        }
    return s;
}

cplx sigma4_def(const HurwitzPoint& p)
{
    cplx s = 0.0;
    for (int i = 0; i <= p.m(); ++i)
        for (int j = 0; j <= p.m(); ++j) {
            const double Ni = p.n(i) + 1, Nj = p.n(j) + 1;
            for (int a = 1; a < Ni; ++a)
                for (int b = 1; b < Nj; ++b)
                    s += 0.5 * (Ni - a) * (Nj - b) * Ni / (Ni + a) * p.x(i, int(Ni) - a) * p.x(j, int(Nj) - b) *
                         I_psi(p, i, a, j, b) / double(a * b);
        }
    return s;
}

ThirdTensor tensor(const Prepotential& F, const FlatChart& chart, const std::vector<cplx>& c)
{
    return Jet(F, c, verification_config(), chart_cap(chart)).third_tensor(default_threads());
}

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
    for (const auto& e : r.entries()) m = std::max(m, e.residual);
    return m;
}

// H_1(n,0) closed form in the chart (u, tau, s, x_1(0)..x_n(0), y)
using AffineForm = std::function<cplx(cplx, cplx, std::vector<cplx>, cplx, const Modulus&, const reference::LogFn&)>;

Prepotential affine(int n, AffineForm f)
{
    return [n, f](std::span<const cplx> c, LogCursor& lg) {
        const Modulus m(c[1]);
        return f(c[0], c[2], std::vector<cplx>(c.begin() + 3, c.begin() + 3 + n), c[3 + n], m,
                 [&lg](cplx z) { return lg.log(z); });
    };
}

const std::vector<BranchProfile> profiles{{{1}}, {{2}}, {{3}}, {{0, 0}}, {{1, 0}}, {{1, 1}}};

}  // namespace

TEST_CASE("log cursor follows one branch")
{
    std::vector<LogAnchor> anchors;
    const cplx z0(-1.0, 1e-3);
    LogCursor rec = LogCursor::recorder(anchors);
    const cplx l0 = rec.log(z0);
    CHECK(anchors.size() == 1);
    LogCursor fol = LogCursor::follower(anchors);
    const cplx z1(-1.0, -1e-3);
    const cplx l1 = fol.log(z1);
    CHECK(std::abs(l1 - l0) < 1e-2);
    LogCursor principal;
    CHECK(std::abs(principal.log(z1) - l0) > 6.0);
    CHECK_THROWS_AS(fol.log(z1), Error);
    CHECK_THROWS_AS(principal.log(0.0), Error);
}

TEST_CASE("flat chart layout, Gram matrix and Euler weights")
{
    const FlatChart ch({{2, 1, 0}});
    CHECK(ch.size() == 2 + 4 + 3);
    CHECK(ch.labels() == std::vector<std::string>{"u", "tau", "s1", "s2", "x1(0)", "x2(0)", "x1(1)", "x2(1)", "x1(2)"});
    CHECK(ch.index("x2(1)") == ch.x_index(1, 2));
    CHECK_THROWS_AS(ch.x_index(0, 3), Error);
    CHECK_THROWS_AS(ch.index("v"), Error);
    const GramMatrix g = ch.gram();
    CHECK(std::abs(g(0, 1) - 1.0 / (2.0 * ipi)) < 1e-15);
    CHECK(g(ch.x_index(0, 1), ch.x_index(0, 2)) == 3.0);
    CHECK(g(ch.x_index(1, 1), ch.x_index(1, 1)) == 2.0);
    CHECK(g(ch.x_index(1, 2), ch.s_index(1)) == 2.0);
    CHECK(g(ch.x_index(2, 1), ch.s_index(2)) == 1.0);
    int nonzero = 0;
    for (int a = 0; a < ch.size(); ++a)
        for (int b = 0; b < ch.size(); ++b) nonzero += g(a, b) != 0.0;
    CHECK(nonzero == ch.size());
    CHECK(std::abs(g.determinant()) > 1e-3);
    const auto w = ch.euler_weights();
    CHECK(w == std::vector<double>{1, 0, 0, 0, 1.0 / 3, 2.0 / 3, 0.5, 1, 1});

    std::mt19937_64 rng(1);
    const auto p = sample(ch.profile(), rng);
    const auto c = ch.coords(p);
    const auto q = ch.point(c);
    CHECK(std::abs(q.x(0, 3) - p.x(0, 3)) < 1e-14);
    CHECK(std::abs(residue_total(q) + 3.0 * q.x(0, 3)) < 1e-14);
}

TEST_CASE("A_n closed forms for n = 1, 2, 3")
{
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        const Modulus md = random_modulus(rng);
        const cplx u(U(rng), U(rng)), x1(0.9 + 0.3 * U(rng), U(rng)), x2(U(rng), U(rng)), x3(U(rng), U(rng));
        const std::vector<cplx> v1{x1}, v2{x1, x2}, v3{x1, x2, x3};
        CHECK(rel(f_phi_An(1, u, v1, md), reference::A1(u, x1, md)) < 1e-12);
        CHECK(rel(f_phi_An(2, u, v2, md), reference::A2(u, x1, x2, md)) < 1e-12);
        CHECK(rel(f_phi_An(3, u, v3, md), reference::A3(u, x1, x2, x3, md)) < 1e-12);
        for (int n = 1; n <= 3; ++n) {
            const std::span<const cplx> xs(v3.data(), n);
            CHECK(rel(f_phi(point_An(n, u, xs, md)), f_phi_An(n, u, xs, md)) < 1e-12);
        }
    }
    CHECK_THROWS_AS(f_phi_An(2, 0.0, std::vector<cplx>{0.0, 1.0}, Modulus(I)), Error);
    CHECK_THROWS_AS(f_phi_An(0, 0.0, std::vector<cplx>{}, Modulus(I)), Error);
}

TEST_CASE("line components against their residue definitions")
{
    std::mt19937_64 rng(3);
    for (const auto& pr : {BranchProfile{{1}}, BranchProfile{{3}}, BranchProfile{{0, 0}}, BranchProfile{{1, 0}},
                           BranchProfile{{0, 2}}, BranchProfile{{1, 1}}, BranchProfile{{2, 1}},
                           BranchProfile{{0, 0, 0}}, BranchProfile{{1, 2, 0}}})
        for (int t = 0; t < 2; ++t) {
            CAPTURE(to_string(pr));
            const auto p = sample(pr, rng);
            const cplx Y = residue_total(p);
            // the two sides differ only by the fixed branch constant i pi Y^2
            CHECK(std::abs(sigma2(p) - sigma2_def(p) - ipi * Y * Y) < 1e-11);
            CHECK(std::abs(sigma3(p) - sigma3_def(p) - ipi * Y * Y) < 1e-11);
            CHECK(rel(sigma4(p), sigma4_def(p)) < 1e-11);
            CHECK(rel(f_phi(p), f_phi_skeleton(p)) < 1e-13);
        }
}

TEST_CASE("affine A_n closed forms")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int t = 0; t < 4; ++t) {
        const Modulus md = random_modulus(rng);
        const cplx u(U(rng), U(rng)), s(0.3 + 0.1 * U(rng), 0.2 + 0.1 * U(rng)), y(0.7 + 0.2 * U(rng), 0.3 * U(rng));
        const std::vector<cplx> x{cplx(0.9 + 0.2 * U(rng), 0.3 * U(rng)), cplx(0.5 * U(rng), 0.5 * U(rng)),
                                  cplx(0.5 * U(rng), 0.5 * U(rng))};
        for (int n = 0; n <= 3; ++n) {
            const std::span<const cplx> xs(x.data(), n);
            // general formula against the profile-specific one: only a y^2 constant
            const cplx d = f_phi_An0(n, u, s, xs, y, md) - f_phi(point_An0(n, u, s, xs, y, md));
            CHECK(std::abs(d / (y * y) + ipi) < 1e-11);
        }
        const cplx g1 = f_phi_An0(1, u, s, std::span<const cplx>(x.data(), 1), y, md);
        const cplx g2 = f_phi_An0(2, u, s, std::span<const cplx>(x.data(), 2), y, md);
        const cplx g3 = f_phi_An0(3, u, s, std::span<const cplx>(x.data(), 3), y, md);
        const cplx c1 = (reference::AA1(u, s, x[0], y, md) - g1) / (y * y) + 1.0;
        CHECK(std::abs(c1 - std::round(c1.imag() / pi) * ipi) < 1e-11);
        const cplx c2 = (reference::AA2(u, s, x[0], x[1], y, md) - g2) / (y * y);
        const cplx c3 = (reference::AA3(u, s, x[0], x[1], x[2], y, md) - g3) / (y * y);
        CHECK(std::abs(c2 - std::round(c2.imag() / pi) * ipi) < 1e-10);
        CHECK(std::abs(c3 - std::round(c3.imag() / pi) * ipi) < 1e-10);
        // coefficients as displayed leave cubic remainders
        CHECK(rel(reference::AA2(u, s, x[0], x[1], y, md, 2.0) - reference::AA2(u, s, x[0], x[1], y, md),
                  3.5 * x[1] * x[1] * y / x[0]) < 1e-12);
    }
    CHECK_THROWS_AS(f_phi_An0(1, 0.0, 0.3, std::vector<cplx>{0.0}, 1.0, Modulus(I)), Error);
}

TEST_CASE("affine closed forms by third derivatives and WDVV")
{
    std::mt19937_64 rng(5);
    using V = std::vector<cplx>;
    using L = reference::LogFn;
    const std::vector<AffineForm> fixed{
        [](cplx u, cplx s, V, cplx y, const Modulus& m, const L& lg) { return reference::AA0(u, s, y, m, lg); },
        [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) { return reference::AA1(u, s, x[0], y, m, lg); },
        [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) {
            return reference::AA2(u, s, x[0], x[1], y, m, -1.5, lg);
        },
        [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) {
            return reference::AA3(u, s, x[0], x[1], x[2], y, m, -4.0, 4.0, lg);
        }};
    for (int n = 0; n <= 3; ++n) {
        CAPTURE(n);
        const FlatChart ch({{n, 0}});
        const auto c = ch.coords(sample(ch.profile(), rng));
        const ThirdTensor general = tensor(phi_prepotential(ch), ch, c);
        const ThirdTensor closed = tensor(affine(n, fixed[n]), ch, c);
        CHECK(general.max_abs_diff(closed) < 1e-9 * (1.0 + tensor_scale(general)));
        CHECK(max_residual(wdvv_report(closed, 1e-6)) < 1e-6);
    }
    // the displayed n = 2 coefficient breaks WDVV
    const FlatChart ch({{2, 0}});
    const auto c = ch.coords(sample(ch.profile(), rng));
    const auto shown = affine(2, [](cplx u, cplx s, V x, cplx y, const Modulus& m, const L& lg) {
        return reference::AA2(u, s, x[0], x[1], y, m, 2.0, lg);
    });
    CHECK(max_residual(wdvv_report(tensor(shown, ch, c), 1e-7)) > 1e-3);
}

TEST_CASE("limit y -> 0 of the affine solution")
{
    const Modulus md(cplx(0.1, 1.1));
    const cplx u(0.3, -0.2), s(0.27, 0.21);
    for (int n = 1; n <= 3; ++n) {
        const std::vector<cplx> x{cplx(0.9, 0.2), cplx(-0.3, 0.4), cplx(0.2, 0.1)};
        const std::span<const cplx> xs(x.data(), n);
        const cplx base = f_phi_An(n, u, xs, md);
        auto D = [&](double y) { return f_phi_An0(n, u, s, xs, cplx(y, 0.0), md) - base; };
        const cplx d3 = D(1e-3), d4 = D(1e-4), d6 = D(1e-6);
        // leading behaviour is linear in y; y^2 log y is subleading
        CHECK(std::abs(d4 - 0.1 * d3) < 1e-6);
        CHECK(std::abs(d6) < 1e-5);
        CHECK(std::abs(d4) < std::abs(d3));
    }
}

TEST_CASE("simple poles: closed form against the general prepotential")
{
    std::mt19937_64 rng(6);
    for (int m = 1; m <= 3; ++m) {
        CAPTURE(m);
        const FlatChart ch(BranchProfile{std::vector<int>(m + 1, 0)});
        const auto p = sample(ch.profile(), rng);
        const auto c = ch.coords(p);
        auto closed = [m](std::span<const cplx> c, LogCursor& lg) {
            const Modulus md(c[1]);
            return f_phi_case0(c[0], c.subspan(2, m), c.subspan(2 + m, m), md, lg);
        };
        const ThirdTensor general = tensor(phi_prepotential(ch), ch, c);
        const ThirdTensor T = tensor(closed, ch, c);
        CHECK(general.max_abs_diff(T) < 1e-9 * (1.0 + tensor_scale(general)));
        // value difference is a y-quadratic branch constant
        LogCursor lg;
        const cplx d = f_phi_case0(c[0], std::span<const cplx>(c).subspan(2, m),
                                   std::span<const cplx>(c).subspan(2 + m, m), p.modulus(), lg) -
                       f_phi(p);
        const cplx Y = residue_total(p);
        const cplx k = d / (Y * Y) / ipi;
        CHECK(std::abs(k - std::round(k.real())) < 1e-10);
        // (1/2) x log x in place of (1/2) x^2 log x changes third derivatives
        auto linear_log = [closed, m](std::span<const cplx> c, LogCursor& lg) {
            cplx f = closed(c, lg);
            for (int j = 0; j < m; ++j) {
                const cplx x = c[2 + m + j];
                f += 0.5 * (x - x * x) * std::log(x);
            }
            return f;
        };
        CHECK(tensor(linear_log, ch, c).max_abs_diff(T) > 1e-3);
    }
}

TEST_CASE("double poles: closed form against the general prepotential")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    const Modulus md(cplx(0.05, 1.15));
    const cplx u(0.4, 0.1), x0(0.9, -0.3);
    LogCursor lg;
    CHECK(rel(f_phi_case1(u, std::vector<cplx>{}, std::vector<cplx>{}, std::vector<cplx>{x0}, md, lg),
              reference::A1(u, x0, md)) < 1e-13);
    for (int m = 1; m <= 2; ++m) {
        CAPTURE(m);
        const FlatChart ch(BranchProfile{std::vector<int>(m + 1, 1)});
        const auto p = sample(ch.profile(), rng);
        const auto c = ch.coords(p);
        auto closed = [ch](std::span<const cplx> c, LogCursor& lg) { return f_phi_case1(ch.point(c), lg); };
        const ThirdTensor general = tensor(phi_prepotential(ch), ch, c);
        CHECK(general.max_abs_diff(tensor(closed, ch, c)) < 1e-9 * (1.0 + tensor_scale(general)));
        const auto e = euler_check(closed, ch, c, verification_config());
        // t^j-quadratic remainder, as for the general formula
        CHECK(std::abs(e.EF - 2.0 * e.F - euler_defect(p)) < 1e-8 * (1.0 + std::abs(e.F)));
    }
    CHECK_THROWS_AS(f_phi_case1(sample({{1, 0}}, rng), lg), Error);
}

TEST_CASE("Jacobi forms")
{
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int n = 1; n <= 4; ++n) {
        const Modulus md = random_modulus(rng);
        std::vector<cplx> xs(n);
        for (auto& x : xs) x = {U(rng), U(rng)};
        xs[0] += 0.8;
        const cplx u(U(rng), U(rng));
        const auto phi = jacobi_forms(n, u, xs, md);
        REQUIRE(phi.size() == std::size_t(n + 1));
        CHECK(rel(phi.back(), std::pow(xs[0], n + 1)) < 1e-13);
        const HurwitzPoint p = point_An(n, u, xs, md);
        for (int k = 0; k < 10; ++k) {
            const cplx z(0.05 + 0.09 * k, 0.3 - 0.05 * k);
            CHECK(rel(jacobi_lambda(phi, z, md), lambda_eval(p, z)) < 1e-11);
        }
        const cplx c(1.3, -0.4);
        std::vector<cplx> cx(xs);
        for (auto& x : cx) x *= c;
        const auto phic = jacobi_forms(n, u, cx, md);
        for (int k = 2; k <= n + 1; ++k) CHECK(rel(phic[k - 1], std::pow(c, k) * phi[k - 1]) < 1e-12);
    }
    CHECK_THROWS_AS(jacobi_forms(0, 0.0, std::vector<cplx>{}, Modulus(I)), Error);
}

TEST_CASE("WDVV for the general prepotential")
{
    std::mt19937_64 rng(9);
    for (const auto& pr : profiles) {
        CAPTURE(to_string(pr));
        const FlatChart ch(pr);
        for (int t = 0; t < 2; ++t) {
            const auto c = ch.coords(sample(pr, rng));
            const ResidualReport r = wdvv_report(tensor(phi_prepotential(ch), ch, c), 1e-7);
            CHECK(r.entries().size() == std::size_t(ch.size() * (ch.size() - 1) / 2));
            CHECK(max_residual(r) < 1e-7);
        }
    }
    const FlatChart ch({{1}});
    const auto c = ch.coords(sample(ch.profile(), rng));
    const double single = wdvv_residual(phi_prepotential(ch), ch, c, 1, 2, verification_config());
    CHECK(single < 1e-8);
}

TEST_CASE("parallel tensor matches serial tensor")
{
    std::mt19937_64 rng(10);
    const FlatChart ch({{1, 0}});
    const auto c = ch.coords(sample(ch.profile(), rng));
    const Jet jet(phi_prepotential(ch), c, verification_config(), chart_cap(ch));
    CHECK(jet.third_tensor(1).max_abs_diff(jet.third_tensor(4)) == 0.0);
}

TEST_CASE("Gram matrix from the unit derivative")
{
    std::mt19937_64 rng(11);
    for (const auto& pr : profiles) {
        CAPTURE(to_string(pr));
        const FlatChart ch(pr);
        const auto c = ch.coords(sample(pr, rng));
        const ResidualReport r = gram_check(phi_prepotential(ch), ch, c, verification_config());
        CHECK(r.all_pass());
        CHECK(r.find("gram constancy") != nullptr);
    }
    const FlatChart ch({{1}});
    const auto r = gram_check(phi_prepotential(ch), ch, ch.coords(sample(ch.profile(), rng)), verification_config());
    CHECK(r.find("gram[u,tau]")->residual < 1e-8);
    CHECK(r.find("gram[x1(0),x1(0)]")->residual < 1e-8);
}

TEST_CASE("Euler field")
{
    std::mt19937_64 rng(12);
    for (const auto& pr : profiles) {
        CAPTURE(to_string(pr));
        const FlatChart ch(pr);
        const auto p = sample(pr, rng);
        const auto e = euler_check(phi_prepotential(ch), ch, ch.coords(p), verification_config());
        const double scale = 1.0 + std::abs(e.F);
        CHECK(std::abs(e.EF - 2.0 * e.F - euler_defect(p)) < 1e-8 * scale);
        if (pr.m() == 0) {
            CHECK(e.residual < 1e-8 * scale);
        } else {
            // log terms leave a quadratic in the residues
            CHECK(std::abs(euler_defect(p)) > 1e-3);
            CHECK(e.residual > 1e-3 * scale);
        }
    }
}

TEST_CASE("a-period identities")
{
    std::mt19937_64 rng(13);
    for (const auto& pr : {BranchProfile{{0, 0}}, BranchProfile{{1}}, BranchProfile{{2}}, BranchProfile{{1, 0}},
                           BranchProfile{{1, 1}}}) {
        CAPTURE(to_string(pr));
        const auto p = sample(pr, rng);
        const ResidualReport r = hessian_period_check(p, verification_config());
        CHECK(!r.entries().empty());
        for (const auto& e : r.entries()) {
            CAPTURE(e.identity);
            CHECK(e.residual < 1e-7);
        }
    }
    // Omega_{j 0} = -Omega_{0 j}
    const auto p = sample({{0, 0}}, rng);
    const cplx lhs = a_cycle_integral(p, [&](cplx z) { return lambda_eval(p, z) * omega_third(p, 1, z); });
    const cplx rev = a_cycle_integral(p, [&](cplx z) { return -lambda_eval(p, z) * omega_third(p, 1, z); });
    const cplx osc = oracle::a_period([&](cplx z) { return lambda_eval(p, z) * omega_third(p, 1, z); }, p);
    CHECK(std::abs(lhs - osc) < 1e-12);
    CHECK(std::abs(lhs + rev) < 1e-14);
    CHECK(std::abs(lhs) > 1e-3);
}

TEST_CASE("negative controls")
{
    std::mt19937_64 rng(14);
    const FlatChart ch({{2}});
    const auto c = ch.coords(sample(ch.profile(), rng));
    auto bent = [](std::span<const cplx> c, LogCursor&) {
        const Modulus m(c[1]);
        return reference::A2(c[0], c[2], c[3], m) + 1e-3 * 4.5 * c[2] * c[2] * c[3] * c[3] * m.G2();
    };
    CHECK(max_residual(wdvv_report(tensor(bent, ch, c), 1e-7)) > 1e-5);
    const auto p = sample({{1, 1}}, rng);
    CHECK(std::abs(sigma4(p) - sigma4_def(p)) < 1e-10);
    auto q = p.x_table(1);
    q[0] += 1e-3;
    const HurwitzPoint bad(p.profile(), p.modulus(), p.poles(), {p.x_table(0), q}, p.u());
    CHECK(std::abs(sigma4(bad) - sigma4_def(p)) > 1e-5);
}
