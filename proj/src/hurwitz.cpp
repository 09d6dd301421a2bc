#include "wdvv/hurwitz.hpp"

#include "wdvv/contour.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <sstream>

namespace wdvv {

namespace {

constexpr double pole_guard = 1e-10;

// Shortest representative of v modulo the lattice (checks neighbouring cells).
cplx lattice_shortest(cplx v, const Modulus& m)
{
    const cplx v0 = reduce_to_cell(v, m).v0;
    cplx best = v0;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            const cplx w = v0 + double(a) + double(b) * m.tau();
            if (std::abs(w) < std::abs(best)) best = w;
        }
    return best;
}

double lattice_min_norm(const Modulus& m)
{
    double best = 1.0;
    for (int a = -2; a <= 2; ++a)
        for (int b = -2; b <= 2; ++b) {
            if (a == 0 && b == 0) continue;
            best = std::min(best, std::abs(double(a) + double(b) * m.tau()));
        }
    return best;
}

// (lattice coordinates) z = a + b tau
std::pair<double, double> lattice_coords(cplx z, const Modulus& m)
{
    const double b = z.imag() / m.tau().imag();
    return {z.real() - b * m.tau().real(), b};
}

cplx to_cell(cplx z, const Modulus& m)
{
    auto [a, b] = lattice_coords(z, m);
    a -= std::floor(a);
    b -= std::floor(b);
    return a + b * m.tau();
}

}  // namespace

int BranchProfile::degree() const noexcept
{
    int d = 0;
    for (int n : orders) d += n + 1;
    return d;
}

int BranchProfile::dimension() const noexcept
{
    int s = 0;
    for (int n : orders) s += n;
    return 2 + 2 * m() + s;
}

void BranchProfile::validate() const
{
    if (orders.empty()) throw Error(ErrorCode::InvalidPoint, "branch profile is empty");
    for (int n : orders)
        if (n < 0) throw Error(ErrorCode::InvalidPoint, "branch profile orders must be >= 0");
    if (degree() < 2) throw Error(ErrorCode::InvalidPoint, "covering degree sum (n_j+1) must be >= 2");
}

std::string to_string(const BranchProfile& p)
{
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < p.orders.size(); ++i) os << (i ? "," : "") << p.orders[i];
    os << ')';
    return os.str();
}

HurwitzPoint::HurwitzPoint(BranchProfile profile, Modulus modulus, std::vector<cplx> poles,
                           std::vector<std::vector<cplx>> x, cplx u)
    : profile_(std::move(profile)), modulus_(modulus), poles_(std::move(poles)), x_(std::move(x)), u_(u),
      cache_(std::make_shared<Cache>())
{
    profile_.validate();
    const int mm = profile_.m();
    if (int(poles_.size()) != mm + 1)
        throw Error(ErrorCode::InvalidPoint, "expected " + std::to_string(mm + 1) + " poles");
    if (int(x_.size()) != mm + 1)
        throw Error(ErrorCode::InvalidPoint, "expected " + std::to_string(mm + 1) + " coefficient rows");
    for (int j = 0; j <= mm; ++j)
        if (int(x_[j].size()) != profile_.n(j) + 1)
            throw Error(ErrorCode::InvalidPoint, "coefficient row " + std::to_string(j) + " needs " +
                                                     std::to_string(profile_.n(j) + 1) + " entries");
    cache_->ext.resize(mm + 1);
    cache_->f.resize(mm + 1);
    for (int j = 0; j <= mm; ++j) cache_->ext[j] = x_[j];
}

HurwitzPoint HurwitzPoint::with_u(cplx u) const
{
    return HurwitzPoint(profile_, modulus_, poles_, x_, u);
}

cplx HurwitzPoint::x(int j, int alpha) const
{
    if (j < 0 || j > m() || alpha < 1 || alpha > n(j) + 1)
        throw Error(ErrorCode::IndexOutOfRange, "x(" + std::to_string(j) + "," + std::to_string(alpha) + ")");
    return x_[j][alpha - 1];
}

cplx HurwitzPoint::c() const
{
    const cplx G2 = modulus_.G2();
    cplx a = 0.0, b = 0.0;
    for (int j = 0; j <= m(); ++j) {
        const int np = n(j) + 1;
        a += double(np) * x_[j][np - 1] * s(j);
        if (np >= 2) b += double(np) * bell_partial(np, 2, x_[j]);
    }
    return u_ + G2 * a + 0.5 * G2 * b;
}

cplx HurwitzPoint::f(int j, int ell) const
{
    if (j < 0 || j > m() || ell < 0) throw Error(ErrorCode::IndexOutOfRange, "f index");
    {
        std::lock_guard lock(cache_->mu);
        auto& row = cache_->f[j];
        if (ell < int(row.size()) && !std::isnan(row[ell].real())) return row[ell];
    }
    const cplx v = compute_f(j, ell);
    std::lock_guard lock(cache_->mu);
    auto& row = cache_->f[j];
    if (ell >= int(row.size())) row.resize(ell + 1, cplx(std::nan(""), 0.0));
    row[ell] = v;
    return v;
}

cplx HurwitzPoint::compute_f(int j, int ell) const
{
    const Modulus& md = modulus_;
    cplx lam = ell == 0 ? c() : cplx(0.0);
    for (int i = 0; i <= m(); ++i) {
        if (i == j) continue;
        const int np = n(i) + 1;
        const BellTable B(x_[i], np);
        const cplx d = poles_[j] - poles_[i];
        std::array<cplx, max_wp_deriv + 1> P{};
        const int top = np + ell - 2;
        if (top >= 0) wp_derivs(d, md, top, P.data());
        cplx inner = 0.0;
        for (int k = 1; k <= np; ++k) {
            const int q = k + ell - 1;
            const cplx zq = q == 0 ? wzeta(d, md) : -P[q - 1];
            inner += ((k % 2 == 0) ? 1.0 : -1.0) / factorial(k) * B(np, k) * zq;
        }
        lam -= double(np) * inner;
    }
    cplx out = lam / factorial(ell);
    const int np = n(j) + 1;
    const BellTable B(x_[j], np);
    cplx g = 0.0;
    for (int k = 1; k <= np; ++k) {
        if (k + ell < 4 || (k + ell) % 2 != 0) continue;
        g += ((k % 2 == 0) ? 1.0 : -1.0) / double(k + ell) * binomial(k + ell, ell) * B(np, k) * md.G(k + ell);
    }
    return out + double(np) * g;
}

cplx HurwitzPoint::next_extended(int j, std::span<const cplx> xs) const
{
    const int nj = n(j);
    const int alpha = int(xs.size()) - nj;
    const cplx x1 = xs[0];
    if (x1 == 0.0) throw Error(ErrorCode::ZeroLeadingCoefficient, "x_1(" + std::to_string(j) + ") = 0");

    // B_{n+alpha, k+1}(x_2, ...) for k >= 1 never touches the padded tail
    std::vector<cplx> shifted(xs.begin() + 1, xs.end());
    shifted.resize(nj + alpha, 0.0);
    const BellTable Bs(shifted, nj + alpha);
    cplx t1 = 0.0;
    for (int k = 1; k <= nj + alpha - 1; ++k)
        t1 += binom_neg(nj + 1, k) / (k + 1.0) * std::pow(x1, -k) * Bs(nj + alpha, k + 1);
    t1 *= double(alpha) / (nj + 1.0);

    const BellTable B(xs, int(xs.size()));
    cplx t2 = 0.0;
    for (int k = 1; k <= nj; ++k) t2 += B(nj + 1, k) / double(k) * r_function(alpha + k - 1, k, xs);
    t2 *= double(alpha);

    cplx t3 = 0.0;
    for (int l = 0; l <= alpha - 1; ++l) t3 += f(j, l) * B(alpha, l + 1) / (l + 1.0);
    t3 *= double(alpha) / (nj + 1.0);

    return t1 + t2 + t3;
}

std::vector<cplx> HurwitzPoint::coefficients(int j, int r) const
{
    if (j < 0 || j > m()) throw Error(ErrorCode::IndexOutOfRange, "pole index");
    if (r < 0) throw Error(ErrorCode::IndexOutOfRange, "negative coefficient count");
    std::vector<cplx> xs;
    {
        std::lock_guard lock(cache_->mu);
        xs = cache_->ext[j];
    }
    if (int(xs.size()) >= r) return {xs.begin(), xs.begin() + r};
    while (int(xs.size()) < r) xs.push_back(next_extended(j, xs));
    std::lock_guard lock(cache_->mu);
    if (cache_->ext[j].size() < xs.size()) cache_->ext[j] = xs;
    return xs;
}

cplx HurwitzPoint::coefficient(int j, int r) const
{
    if (r < 1) throw Error(ErrorCode::IndexOutOfRange, "coefficient index must be >= 1");
    return coefficients(j, r)[r - 1];
}

cplx HurwitzPoint::bell(int j, int nn, int k) const
{
    if (k > nn) return 0.0;
    if (k == 0) return nn == 0 ? cplx(1.0) : cplx(0.0);
    return bell_partial(nn, k, coefficients(j, nn - k + 1));
}

cplx c_from_u(const HurwitzPoint& p) { return p.c(); }

cplx residue_sum(const HurwitzPoint& p)
{
    cplx s = 0.0;
    for (int j = 0; j <= p.m(); ++j) s += double(p.n(j) + 1) * p.x(j, p.n(j) + 1);
    return s;
}

double min_pole_distance(const HurwitzPoint& p)
{
    const Modulus& md = p.modulus();
    double d = lattice_min_norm(md);
    for (int i = 0; i <= p.m(); ++i)
        for (int j = i + 1; j <= p.m(); ++j) d = std::min(d, std::abs(lattice_shortest(p.pole(i) - p.pole(j), md)));
    return d;
}

cplx a_cycle_integral(const HurwitzPoint& p, const std::function<cplx(cplx)>& f)
{
    static const GaussRule rule = gauss_legendre(24);
    double lo = 1e300, hi = -1e300;
    for (cplx z : p.poles()) {
        lo = std::min(lo, z.imag());
        hi = std::max(hi, z.imag());
    }
    const cplx a(0.13, 0.5 * (lo + hi) - 0.5 * p.tau().imag());
    return segment_integral(f, a, a + 1.0, rule, 16);
}

cplx lambda_derivative(const HurwitzPoint& p, cplx z, int k)
{
    if (k < 0) throw Error(ErrorCode::InvalidOrder, "negative derivative order");
    const Modulus& md = p.modulus();
    for (int j = 0; j <= p.m(); ++j)
        if (std::abs(lattice_shortest(z - p.pole(j), md)) < pole_guard)
            throw Error(ErrorCode::PoleArgument, "lambda evaluated at pole " + std::to_string(j));
    if (k == 0) {
        cplx out = p.c();
        const cplx z0 = wzeta(z - p.pole(0), md);
        for (int j = 0; j <= p.m(); ++j) {
            const int np = p.n(j) + 1;
            const auto& xj = p.x_table(j);
            if (j != 0) out += double(np) * xj[np - 1] * (wzeta(z - p.pole(j), md) - z0);
            if (np >= 2) {
                std::array<cplx, max_wp_deriv + 1> P{};
                wp_derivs(z - p.pole(j), md, np - 2, P.data());
                const BellTable B(xj, np);
                cplx s = 0.0;
                for (int kk = 2; kk <= np; ++kk) s += ((kk % 2 == 0) ? 1.0 : -1.0) / factorial(kk) * B(np, kk) * P[kk - 2];
                out += double(np) * s;
            }
        }
        return out;
    }
    cplx out = 0.0;
    for (int j = 0; j <= p.m(); ++j) {
        const int np = p.n(j) + 1;
        const BellTable B(p.x_table(j), np);
        std::array<cplx, max_wp_deriv + 1> P{};
        wp_derivs(z - p.pole(j), md, np + k - 2, P.data());
        cplx s = 0.0;
        for (int kk = 1; kk <= np; ++kk) s += ((kk % 2 == 0) ? 1.0 : -1.0) / factorial(kk) * B(np, kk) * P[kk + k - 2];
        out += double(np) * s;
    }
    return out;
}

cplx lambda_eval(const HurwitzPoint& p, cplx z) { return lambda_derivative(p, z, 0); }

Periods periods(const HurwitzPoint& p)
{
    const Modulus& md = p.modulus();
    const cplx c = p.c();
    const cplx h = 0.5 * p.tau() * md.G2() - I * pi;
    cplx a = 0.0, b = 0.0;
    for (int j = 0; j <= p.m(); ++j) {
        const int np = p.n(j) + 1;
        a += double(np) * p.x(j, np) * p.s(j);
        if (np >= 2) b += double(np) * bell_partial(np, 2, p.x_table(j));
    }
    return {p.u(), c * p.tau() - 2.0 * h * a - h * b};
}

cplx f_coeff(const HurwitzPoint& p, int j, int ell) { return p.f(j, ell); }

cplx extended_x(const HurwitzPoint& p, int j, int alpha)
{
    if (alpha < 1) throw Error(ErrorCode::InvalidOrder, "extended_x needs alpha >= 1");
    return p.coefficient(j, p.n(j) + 1 + alpha);
}

LaurentData laurent_data(const HurwitzPoint& p, int j, int ell_max)
{
    LaurentData d;
    d.j = j;
    const int np = p.n(j) + 1;
    const BellTable B(p.x_table(j), np);
    for (int k = 1; k <= np; ++k) d.principal.push_back(double(np) * B(np, k) / double(k));
    for (int l = 0; l <= ell_max; ++l) d.regular.push_back(p.f(j, l));
    return d;
}

cplx omega_third(const HurwitzPoint& p, int j, cplx z)
{
    if (j < 1 || j > p.m()) throw Error(ErrorCode::IndexOutOfRange, "omega_third needs 1 <= j <= m");
    const Modulus& md = p.modulus();
    for (int i : {0, j})
        if (std::abs(lattice_shortest(z - p.pole(i), md)) < pole_guard)
            throw Error(ErrorCode::PoleArgument, "omega_third at a pole");
    return md.G2() * p.s(j) + wzeta(z - p.pole(j), md) - wzeta(z - p.pole(0), md);
}

cplx psi_second(const HurwitzPoint& p, int j, int alpha, cplx z)
{
    if (alpha < 1) throw Error(ErrorCode::InvalidOrder, "psi_second needs alpha >= 1");
    const Modulus& md = p.modulus();
    if (std::abs(lattice_shortest(z - p.pole(j), md)) < pole_guard)
        throw Error(ErrorCode::PoleArgument, "psi_second at its pole");
    const auto xs = p.coefficients(j, alpha);
    const BellTable B(xs, alpha);
    std::array<cplx, max_wp_deriv + 1> P{};
    wp_derivs(z - p.pole(j), md, alpha - 1, P.data());
    cplx s = 0.0;
    for (int k = 1; k <= alpha; ++k) s += ((k % 2 == 0) ? 1.0 : -1.0) / factorial(k) * B(alpha, k) * P[k - 1];
    return double(alpha) * (xs[alpha - 1] * md.G2() - s);
}

cplx bell_operator_K(const HurwitzPoint& p, int j, int alpha, cplx v)
{
    const auto xs = p.coefficients(j, alpha);
    std::vector<cplx> d(alpha);
    for (int k = 1; k <= alpha; ++k) d[k - 1] = bigK(v, p.modulus(), k);
    return bell_operator(alpha, xs, d);
}

namespace {

// sum_{l=4}^{alpha} B_{alpha,l} G_l / l
cplx eisenstein_tail(const HurwitzPoint& p, int i, int alpha)
{
    if (alpha < 4) return 0.0;
    const auto xs = p.coefficients(i, alpha);
    const BellTable B(xs, alpha);
    cplx s = 0.0;
    for (int l = 4; l <= alpha; l += 2) s += B(alpha, l) * p.modulus().G(l) / double(l);
    return s;
}

}  // namespace

cplx I_omega(const HurwitzPoint& p, int i, int j, int alpha)
{
    if (j < 1 || j > p.m() || i < 0 || i > p.m())
        throw Error(ErrorCode::IndexOutOfRange, "I_omega needs 0 <= i <= m, 1 <= j <= m");
    if (alpha < 1) throw Error(ErrorCode::InvalidOrder, "I_omega needs alpha >= 1");
    const double a = alpha;
    const cplx G2 = p.modulus().G2();
    const cplx lead = a * p.coefficient(i, alpha) * p.s(j) * G2;
    if (i != 0 && i != j)
        return lead + a * (bell_operator_K(p, i, alpha, p.pole(i) - p.pole(j)) -
                           bell_operator_K(p, i, alpha, p.pole(i) - p.pole(0)));
    const auto xs = p.coefficients(i, alpha + 1);
    const cplx R = r_function(alpha, 1, xs);
    const cplx tail = eisenstein_tail(p, i, alpha);
    if (i == j) return lead + a * R - a * tail - a * bell_operator_K(p, j, alpha, p.pole(j) - p.pole(0));
    return lead - a * R + a * tail + a * bell_operator_K(p, 0, alpha, p.pole(0) - p.pole(j));
}

cplx I_psi(const HurwitzPoint& p, int i, int beta, int j, int alpha)
{
    if (i < 0 || i > p.m() || j < 0 || j > p.m()) throw Error(ErrorCode::IndexOutOfRange, "I_psi pole index");
    if (alpha < 1 || beta < 1) throw Error(ErrorCode::InvalidOrder, "I_psi needs alpha, beta >= 1");
    const Modulus& md = p.modulus();
    const double ab = double(alpha) * beta;
    const auto xj = p.coefficients(j, alpha);
    const BellTable Bj(xj, alpha);
    if (i != j) {
        const auto xi = p.coefficients(i, beta);
        const BellTable Bi(xi, beta);
        std::array<cplx, max_wp_deriv + 1> P{};
        wp_derivs(p.pole(i) - p.pole(j), md, alpha + beta - 2, P.data());
        cplx s = 0.0;
        for (int k = 1; k <= alpha; ++k)
            for (int l = 1; l <= beta; ++l)
                s += ((k % 2 == 0) ? 1.0 : -1.0) / (factorial(k) * factorial(l)) * Bj(alpha, k) * Bi(beta, l) *
                     P[k + l - 2];
        return ab * (xj[alpha - 1] * xi[beta - 1] * md.G2() - s);
    }
    const auto xs = p.coefficients(j, std::max(alpha, beta) + alpha + 1);
    const BellTable B(xs, std::max(alpha, beta));
    cplx r = 0.0;
    for (int k = 1; k <= alpha; ++k) r += B(alpha, k) * r_function(beta + k, k + 1, xs);
    cplx g = 0.0;
    for (int k = 1; k <= alpha; ++k) {
        cplx inner = 0.0;
        for (int l = 1; l <= beta; ++l) {
            if (k + l < 4 || (k + l) % 2 != 0) continue;
            inner += binomial(k + l, l) / double(k + l) * B(beta, l) * md.G(k + l);
        }
        g += ((k % 2 == 0) ? 1.0 : -1.0) * B(alpha, k) * inner;
    }
    return ab * (xs[alpha - 1] * xs[beta - 1] * md.G2() + r - g);
}

cplx s_pairing(const HurwitzPoint& p, int i, int j)
{
    if (i < 1 || j < 1 || i > p.m() || j > p.m()) throw Error(ErrorCode::IndexOutOfRange, "s_pairing needs 1 <= i, j <= m");
    const Modulus& md = p.modulus();
    const cplx G2 = md.G2();
    const cplx x10 = p.x(0, 1);
    if (x10 == 0.0) throw Error(ErrorCode::BranchPoint, "log of x_1(0) = 0");
    const cplx lg0 = std::log(-x10);
    if (i != j)
        return bigK(p.s(i) - p.s(j), md) - bigK(p.s(i), md) - bigK(p.s(j), md) + G2 * p.s(i) * p.s(j) + lg0;
    const cplx x1 = p.x(j, 1);
    if (x1 == 0.0) throw Error(ErrorCode::BranchPoint, "log of x_1(j) = 0");
    return std::log(x1) + lg0 - 2.0 * bigK(p.s(j), md) + G2 * p.s(j) * p.s(j);
}

std::vector<cplx> ramification_points(const HurwitzPoint& p)
{
    const Modulus& md = p.modulus();
    const cplx tau = md.tau();
    const int grid = 40;
    std::vector<cplx> roots;
    double scale = 0.0;
    for (int j = 0; j <= p.m(); ++j)
        for (cplx v : p.x_table(j)) scale = std::max(scale, std::abs(v));
    scale = std::max(scale, 1.0);
    for (int a = 0; a < grid; ++a)
        for (int b = 0; b < grid; ++b) {
            cplx z = (a + 0.5) / grid + (b + 0.5) / grid * tau;
            bool ok = false;
            try {
                for (int it = 0; it < 60; ++it) {
                    const cplx d1 = lambda_derivative(p, z, 1);
                    const cplx d2 = lambda_derivative(p, z, 2);
                    if (d2 == 0.0) break;
                    cplx step = d1 / d2;
                    if (std::abs(step) > 0.1) step *= 0.1 / std::abs(step);
                    z -= step;
                    if (std::abs(step) < 1e-12 * (1.0 + std::abs(z))) {
                        ok = std::abs(lambda_derivative(p, z, 1)) < 1e-7 * scale * scale;
                        break;
                    }
                }
            } catch (const Error&) {
                ok = false;
            }
            if (!ok) continue;
            z = to_cell(z, md);
            bool dup = false;
            for (cplx r : roots)
                if (std::abs(lattice_shortest(z - r, md)) < 1e-8) dup = true;
            if (!dup) roots.push_back(z);
        }
    return roots;
}

ResidualReport validate_point(const HurwitzPoint& p, const EvalConfig& cfg)
{
    ResidualReport rep;
    const double tol = cfg.identity_tol;
    try {
        double mag = 1.0;
        for (int j = 0; j <= p.m(); ++j) mag += double(p.n(j) + 1) * std::abs(p.x(j, p.n(j) + 1));
        rep.add("residue_closure", std::abs(residue_sum(p)), tol * mag);
        for (int j = 0; j <= p.m(); ++j) rep.flag("x1_nonzero[" + std::to_string(j) + "]", p.x(j, 1) != 0.0);
        rep.flag("pole0_at_origin", p.pole(0) == 0.0);
        const double dmin = min_pole_distance(p);
        rep.flag("poles_distinct", dmin > 1e-8, "min distance " + std::to_string(dmin));
        bool any_zero = false;
        for (int j = 0; j <= p.m(); ++j) any_zero = any_zero || p.x(j, 1) == 0.0;
        if (any_zero || dmin <= 1e-8) {
            rep.flag("ramification_count", false, "skipped: degenerate point");
            return rep;
        }
        const auto roots = ramification_points(p);
        const int N = p.profile().dimension();
        rep.flag("ramification_count", int(roots.size()) == N,
                 "found " + std::to_string(roots.size()) + ", expected " + std::to_string(N));
        bool simple = true;
        std::vector<cplx> vals;
        for (cplx r : roots) {
            simple = simple && std::abs(lambda_derivative(p, r, 2)) > 1e-8;
            vals.push_back(lambda_eval(p, r));
        }
        rep.flag("ramification_simple", simple);
        bool distinct = true;
        for (std::size_t a = 0; a < vals.size(); ++a)
            for (std::size_t b = a + 1; b < vals.size(); ++b)
                distinct = distinct && std::abs(vals[a] - vals[b]) > 1e-8 * (1.0 + std::abs(vals[a]));
        rep.flag("critical_values_distinct", distinct);
    } catch (const std::exception& e) {
        rep.flag("evaluation", false, e.what());
    }
    return rep;
}

HurwitzPoint random_point(const BranchProfile& profile, const Modulus& modulus, std::mt19937_64& rng,
                          const SamplerOptions& opt)
{
    profile.validate();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto disc = [&](double r) {
        const double rad = r * std::sqrt(unit(rng));
        return std::polar(rad, 2.0 * pi * unit(rng));
    };
    auto leading = [&](bool base) {
        const double rad = opt.min_abs_x1 + (opt.coeff_radius + 0.2 - opt.min_abs_x1) * unit(rng);
        const double arg = (opt.branch_safe && base) ? 0.4 + 2.3 * unit(rng) : 2.0 * pi * unit(rng);
        return std::polar(rad, arg);
    };
    const int mm = profile.m();
    const cplx tau = modulus.tau();
    for (int attempt = 0; attempt < 20000; ++attempt) {
        std::vector<std::vector<cplx>> x(mm + 1);
        for (int j = 0; j <= mm; ++j) {
            x[j].resize(profile.n(j) + 1);
            x[j][0] = leading(j == 0);
            for (int a = 1; a <= profile.n(j); ++a) x[j][a] = disc(opt.coeff_radius);
        }
        cplx rest = 0.0;
        for (int j = 1; j <= mm; ++j) rest += double(profile.n(j) + 1) * x[j][profile.n(j)];
        const int n0 = profile.n(0);
        x[0][n0] = -rest / double(n0 + 1);
        bool ok = true;
        for (int j = 0; j <= mm; ++j) {
            const double r = std::abs(x[j][0]);
            ok = ok && r >= opt.min_abs_x1 && r <= 3.0;
            if (opt.branch_safe && j == 0) {
                const double a = std::arg(x[j][0]);
                ok = ok && a > 0.4 && a < 2.7;
            }
        }
        if (!ok) continue;
        std::vector<cplx> poles{0.0};
        for (int j = 1; j <= mm; ++j) poles.push_back((unit(rng) - 0.5) + (0.5 * unit(rng) - 0.25) * tau);
        const Modulus& md = modulus;
        double dmin = lattice_min_norm(md);
        for (int i = 0; i <= mm; ++i)
            for (int j = i + 1; j <= mm; ++j) dmin = std::min(dmin, std::abs(lattice_shortest(poles[i] - poles[j], md)));
        if (dmin < opt.min_pole_separation) continue;
        if (opt.branch_safe) {
            for (int j = 1; j <= mm && ok; ++j) ok = wsigma(poles[j], md).imag() > 0.0;
            if (!ok) continue;
        }
        return HurwitzPoint(profile, modulus, poles, x, disc(opt.coeff_radius));
    }
    throw Error(ErrorCode::InvalidPoint, "random_point: sampler could not satisfy constraints");
}

nlohmann::json complex_to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j)
{
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw Error(ErrorCode::ParseError, "complex value must be [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json to_json(const HurwitzPoint& p)
{
    nlohmann::json j;
    j["profile"] = p.profile().orders;
    j["tau"] = complex_to_json(p.tau());
    nlohmann::json poles = nlohmann::json::array();
    for (cplx z : p.poles()) poles.push_back(complex_to_json(z));
    j["poles"] = poles;
    nlohmann::json x = nlohmann::json::object();
    for (int jj = 0; jj <= p.m(); ++jj)
        for (int a = 1; a <= p.n(jj) + 1; ++a) x[std::to_string(jj) + "," + std::to_string(a)] = complex_to_json(p.x(jj, a));
    j["x"] = x;
    j["u"] = complex_to_json(p.u());
    return j;
}

HurwitzPoint point_from_json(const nlohmann::json& j, double series_tol)
{
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "point must be a JSON object");
    for (const char* key : {"profile", "tau", "poles", "x", "u"})
        if (!j.contains(key)) throw Error(ErrorCode::InvalidPoint, std::string("missing field '") + key + "'");
    BranchProfile prof;
    try {
        prof.orders = j.at("profile").get<std::vector<int>>();
    } catch (const nlohmann::json::exception&) {
        throw Error(ErrorCode::ParseError, "profile must be a list of integers");
    }
    const cplx tau = complex_from_json(j.at("tau"));
    if (!(tau.imag() > 0.0)) throw Error(ErrorCode::InvalidModulus, "Im(tau) must be positive");
    std::vector<cplx> poles;
    if (!j.at("poles").is_array()) throw Error(ErrorCode::ParseError, "poles must be a list");
    for (const auto& z : j.at("poles")) poles.push_back(complex_from_json(z));
    const auto& xj = j.at("x");
    if (!xj.is_object()) throw Error(ErrorCode::ParseError, "x must be an object keyed by \"j,alpha\"");
    prof.validate();
    std::vector<std::vector<cplx>> x(prof.orders.size());
    for (std::size_t jj = 0; jj < prof.orders.size(); ++jj)
        for (int a = 1; a <= prof.orders[jj] + 1; ++a) {
            const std::string key = std::to_string(jj) + "," + std::to_string(a);
            if (!xj.contains(key)) throw Error(ErrorCode::InvalidPoint, "missing x entry '" + key + "'");
            x[jj].push_back(complex_from_json(xj.at(key)));
        }
    return HurwitzPoint(prof, Modulus(tau, series_tol), poles, x, complex_from_json(j.at("u")));
}

}  // namespace wdvv
