#pragma once

#include <array>
#include <functional>

#include "wdvv/flat.hpp"
#include "wdvv/hurwitz.hpp"
#include "wdvv/logbranch.hpp"
#include "wdvv/report.hpp"
#include "wdvv/special_fn.hpp"
#include "wdvv/types.hpp"

namespace wdvv {

// d/dtau by a Cauchy contour of radius min(0.05, Im tau/4), also kept below
// 0.4 times the distance to the nearest tau' with v in Z + tau' Z.
double tau_contour_radius(cplx v, const Modulus& m);
cplx dtau(const std::function<cplx(const Modulus&)>& f, const Modulus& m, double radius, int points = 64);
// Same, for a function containing logarithms; the branch is continued from tau.
cplx dtau(const std::function<cplx(const Modulus&, LogCursor&)>& f, const Modulus& m, double radius,
          int points = 64);

// dG_w/dtau by termwise differentiation of the Fourier expansion.
cplx eisenstein_dtau(int weight, const Modulus& m);

ResidualReport dtau_formulas_check(cplx v, const Modulus& m, const EvalConfig& cfg = {}, double tol = 1e-7);
// |dtau W - (W'' - 2 (wp + G2) W)/(2 i pi)|
double w_heat_residual(cplx v, const Modulus& m, const EvalConfig& cfg = {});
// |W'' - 2 (zeta - G2 v) W' - 4 (wp + G2) W + 6 (5 G4 - G2^2)|
double w_ode_residual(cplx v, const Modulus& m);

// 1 <= mm <= 6
double ramanujan_residual(int mm, const Modulus& m);
// |(2 mm + 3) zeta(2 mm + 2) - 2 sum_{k=1}^{mm} zeta(2k) zeta(2 mm + 2 - 2k)| / zeta(2 mm + 2)
double zeta_recursion_residual(int mm);

ResidualReport psi_pde_check(cplx v, const Modulus& m, const EvalConfig& cfg = {}, double tol = 1e-7);

// psi(v|tau) and f(tau) candidates.
using PsiFn = std::function<cplx(cplx v, cplx tau, LogCursor&)>;
using TauFn = std::function<cplx(cplx tau)>;
// log(theta_1(v)/theta_1'(0))
PsiFn theta_psi(double series_tol = 1e-16);
TauFn three_g2(double series_tol = 1e-16);

// F = t3^2 t0/2 + t1 t2 t3 + t2^2 log t2 - t2^2 psi(t1 | 2 i pi t0), unit t3.
Prepotential pde1_prepotential(PsiFn psi);
SingularDistance pde1_cap();
// WDVV of the 4x4 system and the two scalar equations
// psi'''' + 6 psi''^2 + 4 f psi'' - 4 i pi f' = 0 and 4 i pi dtau psi = psi'' + psi'^2 + f.
ResidualReport pde1_equivalence(const PsiFn& psi, const TauFn& f, const std::array<cplx, 4>& t,
                                const EvalConfig& cfg = verification_config(), double tol = 1e-7);

// For profile (0,0): the a-cycle integral of lambda(Q)(wp(z - z_Q) + G2) dz_Q
// along [x0, x0 + 1], x0 = 0.11 + 0.43 i Im(tau) moved off the poles of lambda.
cplx phi_u_quadrature(const HurwitzPoint& p, cplx z);
// -(y/2)(W'(z - s) - W'(z)), with z, 0 and s replaced by their translates in
// the strip of height Im(tau) just below the cycle; this fixes the branch of W'.
cplx phi_u_closed(const HurwitzPoint& p, cplx z);
ResidualReport phi_u_formula_check(const HurwitzPoint& p, cplx z, double tol = 1e-7);

}  // namespace wdvv
