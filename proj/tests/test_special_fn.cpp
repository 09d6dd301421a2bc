#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <thread>

#include "wdvv/reference/oracles.hpp"
#include "wdvv/special_fn.hpp"

using namespace wdvv;

namespace {

const cplx tau_i(0.0, 1.0);
const cplx tau_rho = std::exp(cplx(0.0, pi / 3.0));

cplx theta1_brute(cplx v, cplx tau, int k)
{
    cplx s = 0.0;
    for (int n = 0; n < 50; ++n) {
        const double a = (2 * n + 1) * pi;
        const cplx qpow = std::exp(I * pi * tau * std::pow(n + 0.5, 2));
        cplx d;
        switch (k % 4) {
        case 0: d = std::sin(a * v); break;
        case 1: d = std::cos(a * v); break;
        case 2: d = -std::sin(a * v); break;
        default: d = -std::cos(a * v); break;
        }
        s += (n % 2 ? -2.0 : 2.0) * qpow * std::pow(a, k) * d;
    }
    return s;
}

// sigma from the triple product for theta_1 and the row-sum G2.
cplx sigma_product(cplx v, cplx tau)
{
    const cplx q2 = std::exp(2.0 * I * pi * tau);
    cplx prod = std::sin(pi * v) / pi;
    cplx qn = q2;
    for (int n = 1; n < 200 && std::abs(qn) > 1e-18; ++n, qn *= q2) {
        prod *= (1.0 - 2.0 * qn * std::cos(2.0 * pi * v) + qn * qn) / ((1.0 - qn) * (1.0 - qn));
    }
    return std::exp(0.5 * oracle::g2_rowsum(tau) * v * v) * prod;
}

// Square-truncated double lattice sum of w^{-4}.
cplx g4_lattice(cplx tau, int cutoff)
{
    cplx s = 0.0;
    for (int n = -cutoff; n <= cutoff; ++n)
        for (int m = -cutoff; m <= cutoff; ++m) {
            if (m == 0 && n == 0) continue;
            s += std::pow(double(m) + double(n) * tau, -4);
        }
    return s;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

cplx random_tau(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> re(-0.5, 0.5), im(0.5, 3.0);
    return {re(rng), im(rng)};
}

cplx random_v(std::mt19937_64& rng, cplx tau)
{
    std::uniform_real_distribution<double> U(-0.45, 0.45);
    cplx v;
    do v = U(rng) + U(rng) * tau;
    while (std::abs(v) < 0.05);
    return v;
}

}  // namespace

TEST_CASE("modulus")
{
    const Modulus m(tau_i);
    CHECK(std::abs(m.nome() - std::exp(-pi)) < 1e-16);
    CHECK_THROWS_AS(Modulus(cplx(0.3, -0.1)), Error);
    CHECK_THROWS_AS(Modulus(cplx(0.3, 0.0)), Error);
    CHECK(m.G(3) == 0.0);
    CHECK(m.G(2) == m.G(2));
    const Modulus fresh(tau_i);
    for (int w = 2; w <= 30; w += 2) CHECK(rel(m.G(w), eisenstein(w, fresh)) < 1e-13);
}

TEST_CASE("theta1")
{
    std::mt19937_64 rng(11);
    CHECK(std::abs(theta1(0.0, Modulus(tau_i))) == 0.0);
    for (int t = 0; t < 6; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        const cplx v = random_v(rng, tau);
        CHECK(std::abs(theta1(-v, m) + theta1(v, m)) < 1e-14 * std::abs(theta1(v, m)));
        for (int k = 0; k <= 8; ++k) CHECK(rel(theta1_series(v, m, k), theta1_brute(v, tau, k)) < 1e-12);
    }
    const Modulus m(tau_i);
    CHECK(rel(theta1(0.3, m), theta1_brute(0.3, tau_i, 0)) < 1e-14);
    // reduction with quasi-periodicity factors
    const cplx v(0.21, 0.13);
    CHECK(rel(theta1(v + 2.0 + tau_i, m), theta1_series(v + 2.0 + tau_i, m)) < 1e-12);
    CHECK_THROWS_AS(theta1(0.3, m, 9), Error);
    try {
        theta1(0.3, m, 9);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DerivOrderTooHigh);
    }
    CHECK_THROWS_AS(theta1(0.3, Modulus(cplx(0.0, 1e-14))), Error);
}

TEST_CASE("reduce_to_cell")
{
    const Modulus m(tau_i);
    auto r = reduce_to_cell(cplx(0.2, 0.1), m);
    CHECK(std::abs(r.v0 - cplx(0.2, 0.1)) < 1e-15);
    CHECK(r.shift_m == 0);
    CHECK(r.shift_n == 0);
    r = reduce_to_cell(1.2, m);
    CHECK(std::abs(r.v0 - 0.2) < 1e-15);
    CHECK(r.shift_m == 1);
    CHECK(r.shift_n == 0);
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus md(tau);
        const cplx v = random_v(rng, tau);
        const auto rr = reduce_to_cell(v + 3.0 + 2.0 * tau, md);
        CHECK(std::abs(rr.v0 - v) < 1e-13);
        CHECK(rr.shift_m == 3);
        CHECK(rr.shift_n == 2);
        const double b = rr.v0.imag() / tau.imag();
        CHECK(std::abs(b) <= 0.5);
        CHECK(std::abs(rr.v0.real() - b * tau.real()) <= 0.5);
    }
}

TEST_CASE("Weierstrass functions against row-sum lattice oracles")
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        const cplx v = random_v(rng, tau);
        CHECK(rel(wp(v, m), oracle::wp_rowsum(v, tau)) < 1e-8);
        CHECK(rel(wzeta(v, m), oracle::zeta_rowsum(v, tau)) < 1e-8);
        CHECK(rel(wsigma(v, m), sigma_product(v, tau)) < 1e-8);
        CHECK(rel(eisenstein(2, m), oracle::g2_rowsum(tau)) < 1e-10);
    }
    const Modulus m(tau_i);
    const cplx v(0.31, 0.17);
    CHECK(rel(wp(v, m), oracle::wp_rowsum(v, tau_i)) < 1e-10);
}

TEST_CASE("symmetry and periodicity")
{
    std::mt19937_64 rng(14);
    for (int t = 0; t < 10; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        const cplx v = random_v(rng, tau);
        const double sc = std::abs(wp(v, m)) + 1.0;
        CHECK(std::abs(wp(v, m) - wp(-v, m)) < 1e-12 * sc);
        CHECK(std::abs(wp(v + 1.0, m) - wp(v, m)) < 1e-12 * sc);
        CHECK(std::abs(wp(v + tau, m) - wp(v, m)) < 1e-12 * sc);
        CHECK(std::abs(wzeta(v, m) + wzeta(-v, m)) < 1e-12 * std::abs(wzeta(v, m)));
        CHECK(std::abs(wsigma(v, m) + wsigma(-v, m)) < 1e-12 * std::abs(wsigma(v, m)));
        // quasi-periods: eta_1 = G2, eta_tau = tau G2 - 2 pi i
        const cplx G2 = m.G2();
        CHECK(std::abs(wzeta(v + 1.0, m) - wzeta(v, m) - G2) < 1e-11);
        CHECK(std::abs(wzeta(v + tau, m) - wzeta(v, m) - (tau * G2 - two_pi_i)) < 1e-11);
        CHECK(rel(wsigma(v + 1.0, m), -std::exp(G2 * (v + 0.5)) * wsigma(v, m)) < 1e-11);
    }
}

TEST_CASE("Legendre relation and G2 = 2 zeta(1/2)")
{
    std::mt19937_64 rng(15);
    for (int t = 0; t < 20; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        CHECK(std::abs(tau * wzeta(0.5, m) - wzeta(0.5 * tau, m) - I * pi) < 1e-10);
        CHECK(std::abs(2.0 * wzeta(0.5, m) - eisenstein(2, m)) < 1e-10);
    }
}

TEST_CASE("Eisenstein series")
{
    CHECK(std::abs(eisenstein(6, Modulus(tau_i))) < 1e-13);
    CHECK(std::abs(eisenstein(4, Modulus(tau_rho))) < 1e-13);
    CHECK(std::abs(two_riemann_zeta_even(2) - pi * pi / 3.0) < 1e-15);
    CHECK(std::abs(two_riemann_zeta_even(4) - std::pow(pi, 4) / 45.0) < 1e-14);
    const int cutoff = 200;
    // |tail| <= sum over |w| >= cutoff of |w|^{-4} < 2 pi / (2 cutoff^2) * (1 + 1/cutoff) for a square
    const double tail = pi / (cutoff * cutoff) * 1.01;
    const cplx g4 = eisenstein(4, Modulus(tau_i));
    CHECK(std::abs(g4 - g4_lattice(tau_i, cutoff)) < tail);
    std::mt19937_64 rng(16);
    for (int t = 0; t < 4; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        for (int k : {4, 6, 8}) CHECK(rel(eisenstein(k, m), oracle::eisenstein_from_wp(k, tau)) < 1e-9);
    }
    CHECK_THROWS_AS(eisenstein(5, Modulus(tau_i)), Error);
    CHECK_THROWS_AS(eisenstein(32, Modulus(tau_i)), Error);
}

TEST_CASE("Laurent expansion, derivative chain, differential equation")
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 5; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        for (int a = 0; a < 4; ++a) {
            const cplx v = std::polar(0.05, 0.3 + a * 1.4);
            cplx s = 1.0 / (v * v);
            for (int l = 1; l <= 6; ++l) s += double(2 * l + 1) * m.G(2 * l + 2) * std::pow(v, 2 * l);
            CHECK(std::abs(wp(v, m) - s) < 1e-10);
        }
        const cplx v = random_v(rng, tau);
        const double h = 1e-4 * std::min(1.0, std::abs(v));
        for (int k = 1; k <= 4; ++k) {
            const cplx fd = (wp(v + h, m, k - 1) - wp(v - h, m, k - 1)) / (2.0 * h);
            CHECK(rel(wp(v, m, k), fd) < 1e-6);
        }
        const cplx g2 = 60.0 * m.G(4), g3 = 140.0 * m.G(6);
        const cplx P = wp(v, m), dP = wp(v, m, 1);
        CHECK(std::abs(dP * dP - 4.0 * P * P * P + g2 * P + g3) < 1e-10 * std::max(1.0, std::abs(dP * dP)));
        std::vector<cplx> all(max_wp_deriv + 1);
        wp_derivs(v, m, max_wp_deriv, all.data());
        for (int k = 0; k <= 8; ++k) CHECK(rel(all[k], wp(v, m, k)) < 1e-12);
        // high orders by Cauchy integral of wp itself
        double r = 1e300;
        for (int a = -1; a <= 1; ++a)
            for (int b = -1; b <= 1; ++b) r = std::min(r, 0.5 * std::abs(v - double(a) - double(b) * tau));
        for (int k : {6, 10}) CHECK(rel(all[k], cauchy_derivative([&](cplx z) { return wp(z, m); }, v, r, 128, k)) < 1e-7);
    }
    const Modulus m(tau_i);
    CHECK_THROWS_AS(wp(0.0, m), Error);
    CHECK_THROWS_AS(wp(1.0 + tau_i, m), Error);
    CHECK_THROWS_AS(wzeta(2.0 * tau_i, m), Error);
    try {
        wp(1.0, m);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PoleArgument);
    }
}

TEST_CASE("K = log sigma")
{
    std::mt19937_64 rng(18);
    for (int t = 0; t < 10; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        const cplx v = random_v(rng, tau);
        CHECK(std::abs(bigK(v, m, 1) - wzeta(v, m)) < 1e-13 * std::abs(wzeta(v, m)));
        CHECK(std::abs(bigK(v, m, 2) + wp(v, m)) < 1e-13 * std::abs(wp(v, m)));
        CHECK(std::abs(bigK(v, m, 4) + wp(v, m, 2)) < 1e-12 * std::abs(wp(v, m, 2)));
        CHECK(std::abs(std::exp(bigK(v, m)) - wsigma(v, m)) < 1e-13 * std::abs(wsigma(v, m)));
        const cplx d = bigK(-v, m) - bigK(v, m) - I * pi;
        const double k = d.imag() / (2.0 * pi);
        CHECK(std::abs(d.real()) < 1e-12);
        CHECK(std::abs(k - std::round(k)) < 1e-12);
    }
    try {
        bigK(0.0, Modulus(tau_i));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BranchPoint);
    }
}

TEST_CASE("script W and psi")
{
    std::mt19937_64 rng(19);
    const Modulus m0(tau_i);
    CHECK(std::abs(script_w(0.0, m0)) < 1e-15);
    CHECK(std::abs(script_w(0.0, m0, 1)) < 1e-15);
    for (int t = 0; t < 8; ++t) {
        const cplx tau = random_tau(rng);
        const Modulus m(tau);
        const cplx G2 = m.G2();
        const cplx v = random_v(rng, tau);
        const cplx z = wzeta(v, m) - G2 * v;
        CHECK(std::abs(script_w(v, m) - (wp(v, m) - z * z - 2.0 * G2)) < 1e-11 * (1.0 + std::abs(z * z)));
        CHECK(std::abs(script_w(v + 1.0, m) - script_w(v, m)) < 1e-10);
        CHECK(std::abs(script_w(v + tau, m) - script_w(v, m) - (4.0 * I * pi * z - two_pi_i * two_pi_i)) < 1e-9);
        // W'' = 2 (zeta - G2 v) W' + 4 (wp + G2) W - 6 (5 G4 - G2^2)
        const cplx lhs = script_w(v, m, 2);
        const cplx rhs = 2.0 * z * script_w(v, m, 1) + 4.0 * (wp(v, m) + G2) * script_w(v, m) -
                         6.0 * (5.0 * m.G(4) - G2 * G2);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1.0 + std::abs(lhs)));
        // derivatives by differences and Taylor data against a contour oracle
        const double h = 1e-4;
        for (int k = 1; k <= 3; ++k) {
            const cplx fd = (script_w(v + h, m, k - 1) - script_w(v - h, m, k - 1)) / (2.0 * h);
            CHECK(std::abs(script_w(v, m, k) - fd) < 1e-6 * (1.0 + std::abs(fd)));
        }
        for (int n : {2, 4, 6}) {
            const cplx c = laurent_coefficient([&](cplx w) { return script_w(w, m); }, 0.0, 0.2, 64, n);
            CHECK(std::abs(script_w_taylor(n, m) - c) < 1e-10 * (1.0 + std::abs(c)));
        }
        // small-argument branch continuity
        const cplx a = std::polar(0.0499, 0.7), b = std::polar(0.0501, 0.7);
        CHECK(std::abs(script_w(a, m) - script_w(b, m)) < 1e-3);
        // psi = log(theta_1/theta_1'(0)) = K - G2 v^2/2
        const cplx ps = psi_fn(v, m) - std::log(theta1(v, m) / m.theta1_prime0());
        CHECK(std::abs(std::remainder(ps.imag(), 2.0 * pi)) < 1e-12);
        CHECK(std::abs(ps.real()) < 1e-12);
        CHECK(std::abs(psi_fn(v, m, 2) + wp(v, m) + G2) < 1e-12 * std::abs(wp(v, m)));
        // psi'' + psi'^2 + 3 G2 = -W
        const cplx p1 = psi_fn(v, m, 1);
        CHECK(std::abs(psi_fn(v, m, 2) + p1 * p1 + 3.0 * G2 + script_w(v, m)) < 1e-10 * (1.0 + std::abs(p1 * p1)));
    }
}

TEST_CASE("concurrent readers of the Eisenstein cache")
{
    const Modulus m(cplx(0.12, 0.93));
    std::vector<cplx> out(8 * 15);
    std::vector<std::thread> th;
    for (int t = 0; t < 8; ++t)
        th.emplace_back([&, t] {
            for (int w = 2; w <= 30; w += 2) out[t * 15 + w / 2 - 1] = m.G(w);
        });
    for (auto& x : th) x.join();
    const Modulus fresh(cplx(0.12, 0.93));
    for (int t = 0; t < 8; ++t)
        for (int w = 2; w <= 30; w += 2) CHECK(out[t * 15 + w / 2 - 1] == eisenstein(w, fresh));
}

TEST_CASE("negative control: oracle detects a perturbed modulus")
{
    const cplx tau(0.1, 1.2), v(0.23, 0.31);
    const Modulus bad(tau + 1e-3);
    CHECK(rel(wp(v, bad), oracle::wp_rowsum(v, tau)) > 1e-6);
}
