#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "wdvv/reference/oracles.hpp"
#include "wdvv/bellpoly.hpp"
#include "wdvv/special_fn.hpp"

using namespace wdvv;

namespace {

std::vector<cplx> random_xs(std::mt19937_64& rng, int n, double lo = 0.5)
{
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<cplx> xs(n);
    for (auto& x : xs) x = {U(rng), U(rng)};
    if (std::abs(xs[0]) < lo) xs[0] += lo;
    return xs;
}

double rel(cplx a, cplx b) { return std::abs(a - b) / (1e-300 + std::max(std::abs(a), std::abs(b)) + 1e-14); }

}  // namespace

TEST_CASE("special values")
{
    std::mt19937_64 rng(1);
    const auto xs = random_xs(rng, 12);
    for (int n = 1; n <= 10; ++n) {
        CHECK(bell_partial(n, 1, xs) == xs[n - 1]);
        CHECK(rel(bell_partial(n, n, xs), std::pow(xs[0], n)) < 1e-13);
        CHECK(bell_partial(n, 0, xs) == 0.0);
        cplx b2 = 0.0;
        for (int j = 1; j <= n - 1; ++j) b2 += xs[j - 1] * xs[n - j - 1];
        if (n >= 2) CHECK(rel(bell_partial(n, 2, xs), b2) < 1e-13);
    }
    CHECK(bell_partial(0, 0, xs) == 1.0);
    CHECK(rel(bell_partial(3, 2, std::vector<cplx>{xs[0], xs[1]}), 2.0 * xs[0] * xs[1]) < 1e-14);
    CHECK_THROWS_AS(bell_partial(2, 3, xs), Error);
    CHECK_THROWS_AS(bell_partial(6, 2, std::vector<cplx>{1.0, 2.0}), Error);
}

TEST_CASE("composition and generating function oracles")
{
    std::mt19937_64 rng(2);
    const auto xs = random_xs(rng, 10);
    const int N = 10;
    for (int k = 0; k <= N; ++k) {
        const auto series = oracle::power_series_power(xs, k, N);
        for (int n = k; n <= N; ++n) {
            const cplx b = bell_partial(n, k, xs);
            CHECK(rel(b, oracle::bell_by_compositions(n, k, xs)) < 1e-12);
            CHECK(rel(b, series[n]) < 1e-12);
        }
    }
    CHECK(rel(bell_partial(6, 3, xs), oracle::bell_by_compositions(6, 3, xs)) < 1e-13);
}

TEST_CASE("complete Bell polynomial by partitions")
{
    std::mt19937_64 rng(3);
    const auto xs = random_xs(rng, 10);
    CHECK(bell_complete(0, xs) == 1.0);
    CHECK(bell_complete(1, xs) == xs[0]);
    for (int n = 1; n <= 10; ++n) CHECK(rel(bell_complete(n, xs), oracle::complete_by_partitions(n, xs)) < 1e-12);
}

TEST_CASE("recurrences rec0, rec1, rec3 and homogeneity")
{
    std::mt19937_64 rng(4);
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
                    s += binomial(k, j) * std::pow(xs[0], k - j) * (j <= n ? bell_partial(n, j, tail) : 0.0);
                CHECK(rel(bell_partial(n + k, k, xs), s) < 1e-12);
            }
            if (k <= n && n + 1 <= 11) {
                cplx s1 = 0.0, s3 = 0.0;
                for (int j = k; j <= n; ++j) {
                    const cplx b = bell_partial(j, k, xs);
                    s1 += double(n + 1 - j) * xs[n - j] * b;
                    s3 += double(n + 2 - j) * xs[n - j] * b;
                }
                const cplx lhs = bell_partial(n + 1, k + 1, xs);
                CHECK(rel(lhs, (k + 1.0) / (n + 1.0) * s1) < 1e-12);
                CHECK(rel(lhs, (k + 1.0) / (n + 2.0 + k) * s3) < 1e-12);
            }
            if (k <= n) CHECK(rel(bell_partial(n, k, cx), std::pow(c, k) * bell_partial(n, k, xs)) < 1e-12);
        }
}

TEST_CASE("R function: examples, definitional form, homogeneity")
{
    std::mt19937_64 rng(5);
    const auto xs = random_xs(rng, 12);
    const cplx x1 = xs[0], x2 = xs[1], x3 = xs[2], x4 = xs[3];
    // R_{1,1}: both the defining sum and the Bell form give +x2/x1
    CHECK(rel(r_function(1, 1, xs), x2 / x1) < 1e-14);
    CHECK(rel(r_function(2, 1, xs), x3 / x1 - 0.5 * x2 * x2 / (x1 * x1)) < 1e-13);
    CHECK(rel(r_function(2, 2, xs), x3 / (x1 * x1) - x2 * x2 / std::pow(x1, 3)) < 1e-13);
    CHECK(rel(r_function(3, 1, xs), x4 / x1 - x2 * x3 / (x1 * x1) + x2 * x2 * x2 / (3.0 * std::pow(x1, 3))) < 1e-13);
    CHECK(rel(r_function(3, 2, xs), x4 / (x1 * x1) - 2.0 * x2 * x3 / std::pow(x1, 3) + std::pow(x2, 3) / std::pow(x1, 4)) < 1e-13);
    const cplx c(1.4, 0.6);
    std::vector<cplx> cx(xs);
    for (auto& v : cx) v *= c;
    for (int mu = 1; mu <= 9; ++mu)
        for (int k = 1; k <= 9; ++k) {
            if (mu == k - 1) {
                CHECK_THROWS_AS(r_function(mu, k, xs), Error);
                continue;
            }
            const cplx r = r_function(mu, k, xs);
            CHECK(rel(r, r_function_definition(mu, k, xs)) < 1e-11);
            CHECK(rel(r_function(mu, k, cx), std::pow(c, 1 - k) * r) < 1e-11);
        }
    std::vector<cplx> z(xs);
    z[0] = 0.0;
    try {
        r_function(2, 1, z);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroLeadingCoefficient);
    }
}

TEST_CASE("R function as a residue")
{
    // alpha R_{alpha+k-1,k} = res z^{-alpha} A(z)^{-k} A'(z) dz for A = sum x_r z^r
    std::mt19937_64 rng(6);
    const auto xs = random_xs(rng, 10, 0.8);
    auto A = [&](cplx z) {
        cplx s = 0.0, p = z;
        for (cplx x : xs) {
            s += x * p;
            p *= z;
        }
        return s;
    };
    auto dA = [&](cplx z) {
        cplx s = 0.0, p = 1.0;
        for (std::size_t r = 0; r < xs.size(); ++r) {
            s += double(r + 1) * xs[r] * p;
            p *= z;
        }
        return s;
    };
    for (int alpha = 1; alpha <= 4; ++alpha)
        for (int k = 1; k <= 4; ++k) {
            const cplx res = contour_residue([&](cplx z) { return std::pow(z, -alpha) * std::pow(A(z), -k) * dA(z); },
                                             0.0, 0.1, 256);
            CHECK(rel(double(alpha) * r_function(alpha + k - 1, k, xs), res) < 1e-9);
        }
}

TEST_CASE("new recurrence rec5")
{
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const auto xs = random_xs(rng, 12);
        for (int n = 1; n <= 8; ++n)
            for (int a = 1; a <= n; ++a) {
                cplx s = 0.0;
                for (int k = a + 1; k <= n + 1; ++k) s += bell_partial(n + 1, k, xs) * r_function(k - a, k + 1, xs);
                s *= double(a) * std::pow(xs[0], a);
                CHECK(rel(bell_partial(n + 1, a, xs), s) < 1e-10);
            }
    }
}

TEST_CASE("Bell operator")
{
    std::mt19937_64 rng(8);
    const auto xs = random_xs(rng, 6);
    const std::vector<cplx> d{0.3, -1.1, 2.0, 0.5, 0.25, -0.75};
    CHECK(bell_operator(1, xs, d) == xs[0] * d[0]);
    CHECK(rel(bell_operator(2, xs, d), xs[1] * d[0] + 0.5 * xs[0] * xs[0] * d[1]) < 1e-14);
    // applied to K at a point: direct summation with bigK
    const Modulus md(cplx(0.2, 1.1));
    const cplx v(0.31, 0.17);
    std::vector<cplx> K(5);
    for (int k = 1; k <= 5; ++k) K[k - 1] = bigK(v, md, k);
    cplx s = 0.0;
    for (int k = 1; k <= 5; ++k) s += oracle::bell_by_compositions(5, k, xs) * K[k - 1] / factorial(k);
    CHECK(rel(bell_operator(5, xs, K), s) < 1e-12);
    // exponential form: L = (1/alpha!) sum B^exp_{alpha,k}(1! x1, 2! x2, ...) d^k
    std::vector<cplx> fx(6);
    for (int i = 0; i < 6; ++i) fx[i] = factorial(i + 1) * xs[i];
    cplx e = 0.0;
    for (int k = 1; k <= 5; ++k) {
        std::vector<cplx> scaled(6);
        for (int i = 0; i < 6; ++i) scaled[i] = fx[i] / factorial(i + 1);
        e += factorial(5) / factorial(k) * bell_partial(5, k, scaled) * K[k - 1];
    }
    CHECK(rel(bell_operator(5, xs, K), e / factorial(5)) < 1e-12);
    CHECK_THROWS_AS(bell_operator(4, xs, std::vector<cplx>{1.0}), Error);
}

TEST_CASE("negative control: perturbed coefficient breaks rec5")
{
    std::mt19937_64 rng(9);
    auto xs = random_xs(rng, 8);
    const int n = 5, a = 2;
    auto bad = xs;
    bad[2] += 1e-3;
    cplx s = 0.0;
    for (int k = a + 1; k <= n + 1; ++k) s += bell_partial(n + 1, k, xs) * r_function(k - a, k + 1, bad);
    s *= double(a) * std::pow(xs[0], a);
    CHECK(std::abs(bell_partial(n + 1, a, xs) - s) > 1e-5);
}
