#pragma once

#include <span>
#include <vector>

#include "wdvv/types.hpp"

namespace wdvv {

// x_1, x_2, ... stored with xs[0] = x_1.
using CoefficientVector = std::vector<cplx>;

// Triangular table of B_{n,k}(x) for 0 <= k <= n <= nmax, filled by the
// B_{n+1,k+1} = sum_{j=k}^{n} x_{n+1-j} B_{j,k} recurrence.
class BellTable {
public:
    BellTable(std::span<const cplx> xs, int nmax);
    cplx operator()(int n, int k) const;
    int nmax() const noexcept { return nmax_; }

private:
    int nmax_;
    std::vector<cplx> t_;
};

cplx bell_partial(int n, int k, std::span<const cplx> xs);
cplx bell_complete(int n, std::span<const cplx> xs);

// Generalized binomial C(-k, l) = (-1)^l C(k+l-1, l).
double binom_neg(int k, int l);
double binomial(int n, int k);
double factorial(int n);

// R_{mu,k}(x_1..x_{mu+1}) by the Bell sum form.
cplx r_function(int mu, int k, std::span<const cplx> xs);
// R_{mu,k} by its defining double sum; used as a cross-check.
cplx r_function_definition(int mu, int k, std::span<const cplx> xs);

// sum_{k=1}^{alpha} B_{alpha,k}(x) f^{(k)} / k!, with f_derivs[k-1] = f^{(k)}.
cplx bell_operator(int alpha, std::span<const cplx> xs, std::span<const cplx> f_derivs);

}  // namespace wdvv
