#pragma once

// Hand-expanded prepotentials for small profiles, written out term by term
// without the library's Bell/R machinery.

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "wdvv/special_fn.hpp"
#include "wdvv/types.hpp"

namespace reference {

using wdvv::cplx;
using wdvv::Modulus;

inline const cplx ipi{0.0, wdvv::pi};

inline cplx head(cplx u, const Modulus& m) { return u * u * m.tau() / (4.0 * ipi); }
using LogFn = std::function<cplx(cplx)>;
inline cplx principal(cplx z) { return std::log(z); }

inline cplx K(cplx v, const Modulus& m, int k = 0) { return wdvv::bigK(v, m, k); }
inline cplx K(cplx v, const Modulus& m, const LogFn& log) { return log(wdvv::wsigma(v, m)); }

inline cplx A1(cplx u, cplx x1, const Modulus& m) { return head(u, m) + u * x1 * x1 + std::pow(x1, 4) / 2.0 * m.G2(); }

inline cplx A2(cplx u, cplx x1, cplx x2, const Modulus& m)
{
    return head(u, m) + 3.0 * u * x1 * x2 - 0.75 * std::pow(x2, 4) / (x1 * x1) + 4.5 * x1 * x1 * x2 * x2 * m.G2() -
           0.75 * std::pow(x1, 6) * m.G(4);
}

inline cplx A3(cplx u, cplx x1, cplx x2, cplx x3, const Modulus& m)
{
    return head(u, m) + u * (4.0 * x1 * x3 + 2.0 * x2 * x2) + 8.0 / 3.0 * std::pow(x3, 3) / x1 -
           8.0 * x2 * x2 * x3 * x3 / (x1 * x1) + 4.0 * std::pow(x2, 4) * x3 / std::pow(x1, 3) -
           2.0 / 3.0 * std::pow(x2, 6) / std::pow(x1, 4) +
           (8.0 * x1 * x1 * x3 * x3 + 8.0 * x1 * x2 * x2 * x3 + 2.0 * std::pow(x2, 4)) * m.G2() +
           (4.0 * std::pow(x1, 5) * x3 - 10.0 * std::pow(x1, 4) * x2 * x2) * m.G(4) + 5.0 / 3.0 * std::pow(x1, 8) * m.G(6);
}

inline cplx AA0(cplx u, cplx s, cplx y, const Modulus& m, const LogFn& log = principal)
{
    return head(u, m) + u * y * s + y * y * log(y) + 0.5 * y * y * s * s * m.G2() - y * y * K(s, m, log) +
           (ipi - 1.5) * y * y;
}

inline cplx AA1(cplx u, cplx s, cplx x, cplx y, const Modulus& m, const LogFn& log = principal)
{
    return head(u, m) + u * (y * s + x * x) + 0.5 * y * y * (log(x) + log(y)) +
           0.5 * (y * y * s * s + 2.0 * x * x * y * s + std::pow(x, 4)) * m.G2() - y * y * K(s, m, log) -
           x * x * y * K(s, m, 1) + 0.5 * ipi * y * y - 1.75 * y * y;
}

// c_y multiplies x2^2 y / x1: 2 as displayed, -3/2 for the WDVV solution.
inline cplx AA2(cplx u, cplx s, cplx x1, cplx x2, cplx y, const Modulus& m, double c_y = -1.5,
                const LogFn& log = principal)
{
    return head(u, m) + u * (y * s + 3.0 * x1 * x2) + c_y * x2 * x2 * y / x1 - 0.75 * std::pow(x2, 4) / (x1 * x1) +
           0.5 * y * y * (log(x1) + log(y)) + 0.5 * (y * y * s * s + 6.0 * x1 * x2 * y * s + 9.0 * x1 * x1 * x2 * x2) * m.G2() -
           0.75 * std::pow(x1, 6) * m.G(4) - y * y * K(s, m, log) - 3.0 * x1 * x2 * y * K(s, m, 1) +
           0.5 * std::pow(x1, 3) * y * K(s, m, 2) + 0.5 * ipi * y * y - 0.75 * y * y;
}

// c_y multiplies x2 x3 y / x1 and c_4 multiplies x2^4 x3 / x1^3: (2, 8) as
// displayed, (-4, 4) for the WDVV solution.
inline cplx AA3(cplx u, cplx s, cplx x1, cplx x2, cplx x3, cplx y, const Modulus& m, double c_y = -4.0,
                double c_4 = 4.0, const LogFn& log = principal)
{
    return head(u, m) + u * y * s + 4.0 * u * x1 * x3 + 2.0 * u * x2 * x2 + c_y * x2 * x3 * y / x1 +
           2.0 / 3.0 * std::pow(x2, 3) * y / (x1 * x1) + 8.0 / 3.0 * std::pow(x3, 3) / x1 -
           8.0 * x2 * x2 * x3 * x3 / (x1 * x1) + c_4 * std::pow(x2, 4) * x3 / std::pow(x1, 3) -
           2.0 / 3.0 * std::pow(x2, 6) / std::pow(x1, 4) + 0.5 * y * y * (log(x1) + log(y)) +
           (0.5 * y * y * s * s + 4.0 * x1 * x3 * y * s + 2.0 * x2 * x2 * y * s + 8.0 * x1 * x1 * x3 * x3 +
            8.0 * x1 * x2 * x2 * x3 + 2.0 * std::pow(x2, 4)) *
               m.G2() +
           (4.0 * std::pow(x1, 5) * x3 - 10.0 * std::pow(x1, 4) * x2 * x2) * m.G(4) + 5.0 / 3.0 * std::pow(x1, 8) * m.G(6) -
           y * y * K(s, m) - (4.0 * x1 * x3 * y + 2.0 * x2 * x2 * y) * K(s, m, 1) + 2.0 * x1 * x1 * x2 * y * K(s, m, 2) -
           1.0 / 6.0 * std::pow(x1, 4) * y * K(s, m, 3) + 0.5 * ipi * y * y - 0.75 * y * y;
}

// Deformed special cases in (xi, tau_q, s, y[, x]) with c = 1 - q tau_q and
// G_{q,2}, K_q written out through the undeformed functions at tau = tau_q/c.
struct QScale {
    cplx q, tau_q, c;
    Modulus m;
    QScale(cplx q_, cplx tau_q_) : q(q_), tau_q(tau_q_), c(1.0 - q_ * tau_q_), m(tau_q_ / (1.0 - q_ * tau_q_)) {}
    cplx G2() const { return m.G2() / (c * c) - 2.0 * ipi * q / c; }
    cplx K(cplx v, const LogFn& log) const { return log(wdvv::wsigma(v / c, m)) + std::log(c); }
    cplx K1(cplx v) const { return wdvv::wzeta(v / c, m) / c; }
    cplx head(cplx xi) const { return xi * xi * tau_q / (4.0 * ipi); }
};

inline cplx AA0q(cplx xi, cplx tau_q, cplx s, cplx y, cplx q, const LogFn& log = principal)
{
    const QScale Q(q, tau_q);
    return Q.head(xi) + xi * y * s + y * y * log(y) + 0.5 * y * y * s * s * Q.G2() - y * y * Q.K(s, log) +
           (ipi - 1.5) * y * y;
}

inline cplx AA1q(cplx xi, cplx tau_q, cplx s, cplx x, cplx y, cplx q, const LogFn& log = principal)
{
    const QScale Q(q, tau_q);
    return Q.head(xi) + xi * (y * s + x * x) + 0.5 * y * y * (log(x) + log(y)) +
           0.5 * (y * y * s * s + 2.0 * x * x * y * s + std::pow(x, 4)) * Q.G2() - y * y * Q.K(s, log) -
           x * x * y * Q.K1(s) + 0.5 * ipi * y * y - 1.75 * y * y;
}

}  // namespace reference
