#pragma once

#include <array>
#include <memory>
#include <mutex>
#include <optional>

#include "wdvv/types.hpp"

namespace wdvv {

inline constexpr int max_theta_deriv = 8;
inline constexpr int max_wp_deriv = 24;
inline constexpr int max_eisenstein_weight = 30;

// Half-period ratio tau with Im(tau) > 0, the nome e^{i pi tau} and a
// populate-once Eisenstein cache shared by copies.
class Modulus {
public:
    explicit Modulus(cplx tau, double series_tol = 1e-16);

    cplx tau() const noexcept { return tau_; }
    cplx nome() const noexcept { return nome_; }
    double series_tol() const noexcept { return tol_; }

    // Non-normalized G_w; odd weights return 0 (the G_odd = 0 convention).
    cplx G(int weight) const;
    cplx G2() const { return G(2); }
    // theta_1'(0)
    cplx theta1_prime0() const;

private:
    struct Cache {
        std::mutex mu;
        std::array<std::optional<cplx>, max_eisenstein_weight / 2 + 1> g;
        std::optional<cplx> th1p0;
    };
    cplx tau_;
    cplx nome_;
    double tol_;
    std::shared_ptr<Cache> cache_;
};

struct Reduced {
    cplx v0;
    long shift_m;
    long shift_n;
};

// v = v0 + shift_m + shift_n*tau with v0 in the centred fundamental cell.
Reduced reduce_to_cell(cplx v, const Modulus& m);

// d^k/dv^k theta_1(v|tau) directly from the series, no reduction.
cplx theta1_series(cplx v, const Modulus& m, int k = 0);
cplx theta1(cplx v, const Modulus& m, int k = 0);

cplx eisenstein(int weight, const Modulus& m);
// 2 zeta(2k) from Bernoulli numbers.
double two_riemann_zeta_even(int two_k);

cplx wp(cplx v, const Modulus& m, int k = 0);
// k-th derivative of the Weierstrass zeta function; zeta^{(k)} = -wp^{(k-1)}.
cplx wzeta(cplx v, const Modulus& m, int k = 0);
cplx wsigma(cplx v, const Modulus& m);

// K = log sigma (principal branch) and its derivatives.
cplx bigK(cplx v, const Modulus& m, int k = 0);

// W(v) = wp - (zeta - G2 v)^2 - 2 G2 and its v-derivatives.
cplx script_w(cplx v, const Modulus& m, int k = 0);
// Taylor coefficient of v^{2n} of W at the origin.
cplx script_w_taylor(int two_n, const Modulus& m);

// psi = log(theta_1(v)/theta_1'(0)) = K - G2 v^2/2 and its v-derivatives.
cplx psi_fn(cplx v, const Modulus& m, int k = 0);

// All wp derivatives 0..kmax at once.
void wp_derivs(cplx v, const Modulus& m, int kmax, cplx* out);

}  // namespace wdvv
