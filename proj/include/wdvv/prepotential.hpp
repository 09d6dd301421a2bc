#pragma once

#include <span>
#include <vector>

#include "wdvv/hurwitz.hpp"
#include "wdvv/logbranch.hpp"
#include "wdvv/types.hpp"

namespace wdvv {

// The prepotential of the phi-Frobenius structure at a Hurwitz point.
cplx f_phi(const HurwitzPoint& p, LogCursor& lg);
cplx f_phi(const HurwitzPoint& p);

// u^2 tau/(4 i pi) + u sum_j (n_j+1) x_{n_j+1}(j) s^j + (u/2) sum a_{i,alpha} x_alpha(i) x_{n_i+1-alpha}(i)
cplx first_line(const HurwitzPoint& p);

// Second, third and fourth line of the preliminary form, in closed form.
cplx sigma2(const HurwitzPoint& p, LogCursor& lg);
cplx sigma3(const HurwitzPoint& p, LogCursor& lg);
cplx sigma4(const HurwitzPoint& p);
cplx sigma2(const HurwitzPoint& p);
cplx sigma3(const HurwitzPoint& p);

// F = first line + sigma2 + sigma3 + sigma4 + the log(-1) and -3/4 tails.
cplx f_phi_skeleton(const HurwitzPoint& p);

// H_1(n): coordinates (u, x_1..x_n, tau), x_{n+1} = 0.
cplx f_phi_An(int n, cplx u, std::span<const cplx> xs, const Modulus& m);
HurwitzPoint point_An(int n, cplx u, std::span<const cplx> xs, const Modulus& m);

// H_1(n, 0): coordinates (u, s, x_1..x_n, y, tau) with y = -(n+1) x_{n+1}.
cplx f_phi_An0(int n, cplx u, cplx s, std::span<const cplx> xs, cplx y, const Modulus& m, LogCursor& lg);
cplx f_phi_An0(int n, cplx u, cplx s, std::span<const cplx> xs, cplx y, const Modulus& m);
HurwitzPoint point_An0(int n, cplx u, cplx s, std::span<const cplx> xs, cplx y, const Modulus& m);

// H_1(0,...,0): s^j, x^j = x_1(j) for j = 1..m.
cplx f_phi_case0(cplx u, std::span<const cplx> s, std::span<const cplx> x, const Modulus& m, LogCursor& lg);

// H_1(1,...,1): s^j, t^j = x_2(j) for j = 1..m and x^j = x_1(j) for j = 0..m.
cplx f_phi_case1(cplx u, std::span<const cplx> s, std::span<const cplx> t, std::span<const cplx> x,
                 const Modulus& m, LogCursor& lg);
cplx f_phi_case1(const HurwitzPoint& p, LogCursor& lg);

// (phi_0, phi_2, ..., phi_{n+1}).
std::vector<cplx> jacobi_forms(int n, cplx u, std::span<const cplx> xs, const Modulus& m);
// phi_0 + sum_k (-1)^k/(k-1)! phi_k wp^{(k-2)}(z)
cplx jacobi_lambda(std::span<const cplx> forms, cplx z, const Modulus& m);

}  // namespace wdvv
