#pragma once

#include <vector>

#include <json.hpp>

#include "wdvv/flat.hpp"
#include "wdvv/hurwitz.hpp"
#include "wdvv/logbranch.hpp"
#include "wdvv/special_fn.hpp"
#include "wdvv/types.hpp"

namespace wdvv {

// T_q on flat coordinates: everything but u scales by 1/(1+q tau), u becomes
// xi_q = u + (i pi q/(1+q tau)) (2 sum (n_j+1) x_{n_j+1}(j) s^j + sum (n_j+1) B_{n_j+1,2}(j)).
// T_q^{-1} = T_{-q}.
FlatPoint t_q(const FlatPoint& f, cplx q);

// The deformed modulus tau_q = tau/(1+q tau), with q-Eisenstein series and K_q.
class QModulus {
public:
    QModulus(cplx tau_q, cplx q, double series_tol = 1e-16);
    static QModulus from_base(const Modulus& m, cplx q);

    cplx q() const noexcept { return q_; }
    cplx tau_q() const noexcept { return tau_q_; }
    // 1 - q tau_q = 1/(1 + q tau)
    cplx scale() const noexcept { return c_; }
    const Modulus& base() const noexcept { return base_; }

    // G_{q,w}(tau_q); odd weights give 0.
    cplx G(int weight) const;
    // K_q^{(k)}(v|tau_q); k = 0 takes the principal logarithm.
    cplx K(cplx v, int k = 0) const;
    cplx K(cplx v, LogCursor& lg) const;

private:
    cplx q_, tau_q_, c_;
    Modulus base_;
};

cplx g_q(int weight, cplx tau_q, cplx q);
cplx k_q(cplx v, cplx tau_q, cplx q, int k = 0);

// A covering seen through the deformed chart (xi_q, tau_q, s_q^j, x_{q,alpha}(j)).
class QPoint {
public:
    QPoint(HurwitzPoint base, cplx q);

    cplx q() const noexcept { return q_; }
    const HurwitzPoint& base() const noexcept { return base_; }
    const FlatPoint& deformed() const noexcept { return def_; }
    const QModulus& modulus() const noexcept { return qm_; }
    const BranchProfile& profile() const noexcept { return base_.profile(); }
    int m() const noexcept { return base_.m(); }
    int n(int j) const { return base_.n(j); }

    cplx tau_q() const noexcept { return def_.tau; }
    cplx xi_q() const noexcept { return def_.u; }
    cplx scale() const noexcept { return qm_.scale(); }
    cplx s_q(int j) const { return def_.s.at(j - 1); }
    // x_{q,alpha}(j), 1 <= alpha <= n_j + 1
    cplx x_q(int j, int alpha) const { return def_.x.at(j).at(alpha - 1); }

private:
    cplx q_;
    HurwitzPoint base_;
    FlatPoint def_;
    QModulus qm_;
};

// Throws DegenerateModulus when |1 + q tau| < 1e-12.
QPoint t_q_map(const HurwitzPoint& p, cplx q);
// Rebuilds the base point from the deformed coordinates by T_{-q}.
HurwitzPoint t_q_inverse(const QPoint& qp);
QPoint q_point(const FlatPoint& deformed, cplx q, double series_tol = 1e-16);

// Periods of phi_q: (a, b) = (1/(1+q tau), tau_q).
struct QPeriods {
    cplx a;
    cplx b;
};
QPeriods q_periods(const QPoint& qp);

cplx f_phi_q(const QPoint& qp, LogCursor& lg);
cplx f_phi_q(const QPoint& qp);

// lambda in deformed variables; equal to lambda_eval(base, z).
cplx lambda_q_eval(const QPoint& qp, cplx z);
// Coefficient of (z - pole_j)^{-k} at index k - 1, from the deformed Laurent series.
std::vector<cplx> lambda_q_principal(const QPoint& qp, int j);
// f_{q,ell}(j): lambda = principal + sum_ell f_{q,ell} ((1 - q tau_q)(z - pole_j))^ell.
cplx f_q_coeff(const QPoint& qp, int j, int ell);
// x_{q,r}(j) for 1 <= r <= count, continued by the deformed recursion.
std::vector<cplx> x_q_coefficients(const QPoint& qp, int j, int count);
// x_{q, n_j+1+alpha}(j)
cplx extended_x_q(const QPoint& qp, int j, int alpha);

// Laurent data of the deformed third- and second-kind differentials.
cplx I_omega_q(const QPoint& qp, int i, int j, int alpha);
cplx I_psi_q(const QPoint& qp, int i, int beta, int j, int alpha);
// Density of W_q(P, Q)/(dz_P dz_Q).
cplx w_q_density(const QPoint& qp, cplx zp, cplx zq);
cplx omega_q_third(const QPoint& qp, int j, cplx z);
cplx psi_q_second(const QPoint& qp, int j, int alpha, cplx z);

// F_{phi_q} on the deformed chart, which shares the FlatChart layout with u -> xi_q.
Prepotential q_prepotential(const FlatChart& chart, cplx q, double series_tol = 1e-16);
// Singular distance of the deformed chart through the linearised T_{-q}.
SingularDistance q_chart_cap(const FlatChart& chart, cplx q);

nlohmann::json to_json(const QPoint& qp);
QPoint qpoint_from_json(const nlohmann::json& j, double series_tol = 1e-16);

}  // namespace wdvv
