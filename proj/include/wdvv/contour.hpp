#pragma once

#include <cmath>
#include <vector>

#include "wdvv/types.hpp"

namespace wdvv {

// Trapezoidal samples of f on the circle |w - center| = radius, w_k = center + radius e^{2 pi i k/n}.
template <class F>
std::vector<cplx> circle_samples(F&& f, cplx center, double radius, int n)
{
    std::vector<cplx> out(n);
    for (int k = 0; k < n; ++k) out[k] = f(center + std::polar(radius, 2.0 * pi * k / n));
    return out;
}

// Laurent coefficient of (w - center)^k from circle samples; exponentially accurate
// for functions holomorphic on an annulus containing the circle.
inline cplx laurent_coefficient(const std::vector<cplx>& samples, double radius, int k)
{
    const int n = int(samples.size());
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += samples[j] * std::polar(std::pow(radius, -k), -2.0 * pi * double(k) * j / n);
    return s / double(n);
}

template <class F>
cplx laurent_coefficient(F&& f, cplx center, double radius, int n, int k)
{
    return laurent_coefficient(circle_samples(f, center, radius, n), radius, k);
}

// (1/2 pi i) closed integral of f dw around the circle.
template <class F>
cplx contour_residue(F&& f, cplx center, double radius, int n)
{
    return laurent_coefficient(f, center, radius, n, -1);
}

// k-th derivative at center by the Cauchy integral formula.
template <class F>
cplx cauchy_derivative(F&& f, cplx center, double radius, int n, int k)
{
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    return fact * laurent_coefficient(f, center, radius, n, k);
}

// Gauss-Legendre rule on [0, 1] with n nodes (Newton on P_n).
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

// Integral of f along the straight segment a -> b.
template <class F>
cplx segment_integral(F&& f, cplx a, cplx b, const GaussRule& rule, int panels = 8)
{
    cplx s = 0.0;
    const cplx h = (b - a) / double(panels);
    for (int p = 0; p < panels; ++p) {
        const cplx a0 = a + double(p) * h;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * f(a0 + rule.nodes[i] * h);
    }
    return s * h;
}

}  // namespace wdvv
