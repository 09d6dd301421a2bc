#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "wdvv/bellpoly.hpp"
#include "wdvv/report.hpp"
#include "wdvv/special_fn.hpp"
#include "wdvv/types.hpp"

namespace wdvv {

// Pole orders are n_j + 1 for the listed n_j.
struct BranchProfile {
    std::vector<int> orders;

    int m() const noexcept { return int(orders.size()) - 1; }
    int n(int j) const { return orders.at(j); }
    int degree() const noexcept;
    // N = 2 + 2m + sum n_j
    int dimension() const noexcept;
    void validate() const;

    bool operator==(const BranchProfile&) const = default;
};

std::string to_string(const BranchProfile& p);

// Flat-coordinate description of a covering: x(j, alpha) for alpha = 1..n_j+1,
// poles with the first one at 0, and the a-period u of lambda dz.
// Immutable; derived Laurent data is cached once and shared by copies.
class HurwitzPoint {
public:
    HurwitzPoint(BranchProfile profile, Modulus modulus, std::vector<cplx> poles,
                 std::vector<std::vector<cplx>> x, cplx u);

    const BranchProfile& profile() const noexcept { return profile_; }
    const Modulus& modulus() const noexcept { return modulus_; }
    cplx tau() const noexcept { return modulus_.tau(); }
    int m() const noexcept { return profile_.m(); }
    int n(int j) const { return profile_.n(j); }
    cplx u() const noexcept { return u_; }
    const std::vector<cplx>& poles() const noexcept { return poles_; }
    cplx pole(int j) const { return poles_.at(j); }
    // s^j = pole(j) - pole(0)
    cplx s(int j) const { return poles_.at(j) - poles_.at(0); }
    // x_alpha(j) for 1 <= alpha <= n_j + 1
    cplx x(int j, int alpha) const;
    const std::vector<cplx>& x_table(int j) const { return x_.at(j); }

    // x_r(j) for any r >= 1; r > n_j + 1 goes through the recursion.
    cplx coefficient(int j, int r) const;
    // x_1(j)..x_r(j) including extended values.
    std::vector<cplx> coefficients(int j, int r) const;
    // B_{n,k}(x_1(j), ...) with extended arguments when needed.
    cplx bell(int j, int n, int k) const;
    cplx f(int j, int ell) const;
    cplx c() const;

    // Copy with a different u / modulus; caches are not shared.
    HurwitzPoint with_u(cplx u) const;

private:
    struct Cache {
        std::mutex mu;
        std::vector<std::vector<cplx>> ext;
        std::vector<std::vector<cplx>> f;
    };
    cplx compute_f(int j, int ell) const;
    cplx next_extended(int j, std::span<const cplx> xs) const;

    BranchProfile profile_;
    Modulus modulus_;
    std::vector<cplx> poles_;
    std::vector<std::vector<cplx>> x_;
    cplx u_;
    std::shared_ptr<Cache> cache_;
};

struct LaurentData {
    int j = 0;
    // coefficient of (z - pole)^{-k}, stored at index k - 1
    std::vector<cplx> principal;
    // f_0, f_1, ...
    std::vector<cplx> regular;
};

LaurentData laurent_data(const HurwitzPoint& p, int j, int ell_max);

ResidualReport validate_point(const HurwitzPoint& p, const EvalConfig& cfg = {});

// Zeros of lambda' in the fundamental cell, reduced and de-duplicated.
std::vector<cplx> ramification_points(const HurwitzPoint& p);

cplx lambda_eval(const HurwitzPoint& p, cplx z);
cplx lambda_derivative(const HurwitzPoint& p, cplx z, int k = 1);
cplx c_from_u(const HurwitzPoint& p);

struct Periods {
    cplx u;
    cplx u_hat;
};
Periods periods(const HurwitzPoint& p);

cplx f_coeff(const HurwitzPoint& p, int j, int ell);
// x_{n_j+1+alpha}(j)
cplx extended_x(const HurwitzPoint& p, int j, int alpha);

cplx omega_third(const HurwitzPoint& p, int j, cplx z);
cplx psi_second(const HurwitzPoint& p, int j, int alpha, cplx z);

// res at pole i of lambda^{alpha/(n_i+1)} Omega_{0 j}
cplx I_omega(const HurwitzPoint& p, int i, int j, int alpha);
// res at pole i of lambda^{beta/(n_i+1)} Psi_{j, alpha}
cplx I_psi(const HurwitzPoint& p, int i, int beta, int j, int alpha);
cplx s_pairing(const HurwitzPoint& p, int i, int j);

// sum_{k=1}^{alpha} B_{alpha,k}(j) K^{(k)}(v) / k!
cplx bell_operator_K(const HurwitzPoint& p, int j, int alpha, cplx v);

// Sum of (n_j+1) x_{n_j+1}(j).
cplx residue_sum(const HurwitzPoint& p);
double min_pole_distance(const HurwitzPoint& p);

// Integral of f dz over the a-cycle Re z in [0.13, 1.13] at the height midway
// between the pole strip and its translate by -tau.
cplx a_cycle_integral(const HurwitzPoint& p, const std::function<cplx(cplx)>& f);

struct SamplerOptions {
    double coeff_radius = 1.0;
    double min_abs_x1 = 0.5;
    double min_pole_separation = 0.25;
    // keep arg x_1(0) in (0.4, 2.7) and Im sigma(s^j) > 0 so that the principal
    // logarithms in the closed forms shift by exactly i pi under sign flips
    bool branch_safe = true;
};

// Random point of the given profile: coefficients uniform in a disc, x_{n_0+1}(0)
// fixed by the residue closure, poles inside a strip of height Im(tau)/2.
HurwitzPoint random_point(const BranchProfile& profile, const Modulus& modulus, std::mt19937_64& rng,
                          const SamplerOptions& opt = {});

nlohmann::json to_json(const HurwitzPoint& p);
HurwitzPoint point_from_json(const nlohmann::json& j, double series_tol = 1e-16);

nlohmann::json complex_to_json(cplx z);
cplx complex_from_json(const nlohmann::json& j);

}  // namespace wdvv
