#include "wdvv/qdeform.hpp"

#include <algorithm>

#include "wdvv/bellpoly.hpp"
#include "wdvv/prepotential.hpp"

namespace wdvv {

namespace {

constexpr cplx ipi{0.0, pi};
constexpr double degenerate_tol = 1e-12;

cplx checked_denominator(cplx d, const char* what)
{
    if (std::abs(d) < degenerate_tol) throw Error(ErrorCode::DegenerateModulus, what);
    return d;
}

double a_coef(int N, int a) { return double(N - a) * (2 * N + a) / double(N + a); }

// Sums of the deformed chart shared by F_{phi_q} and lambda.
struct QSums {
    cplx A = 0.0;    // sum_{j>=1} N_j x_{N_j}(j) s^j
    cplx B2 = 0.0;   // sum_j N_j B_{N_j,2}(j)
    cplx C = 0.0;    // sum_i sum_alpha a_{i,alpha} x_alpha(i) x_{N_i-alpha}(i)
    cplx D = 0.0;    // quartic
};

QSums q_sums(const FlatPoint& f)
{
    QSums r;
    cplx d1 = 0.0, d2 = 0.0;
    const int m = f.profile.m();
    for (int j = 0; j <= m; ++j) {
        const int N = f.profile.n(j) + 1;
        const auto& x = f.x.at(j);
        if (j > 0) r.A += double(N) * x[N - 1] * f.s[j - 1];
        if (N >= 2) r.B2 += double(N) * bell_partial(N, 2, x);
        for (int a = 1; a < N; ++a) {
            const cplx xx = x[a - 1] * x[N - a - 1];
            r.C += a_coef(N, a) * xx;
            d1 += double(N - a) * N / double(N + a) * xx;
            d2 += double(N - a) * xx;
        }
    }
    r.D = d1 * d2;
    return r;
}

}  // namespace

FlatPoint t_q(const FlatPoint& f, cplx q)
{
    const cplx d = checked_denominator(1.0 + q * f.tau, "1 + q tau vanishes");
    const QSums S = q_sums(f);
    FlatPoint out{f.profile, f.u + ipi * q / d * (2.0 * S.A + S.B2), f.tau / d, f.s, f.x};
    for (cplx& s : out.s) s /= d;
    for (auto& row : out.x)
        for (cplx& x : row) x /= d;
    return out;
}

QModulus::QModulus(cplx tau_q, cplx q, double series_tol)
    : q_(q), tau_q_(tau_q), c_(checked_denominator(1.0 - q * tau_q, "1 - q tau_q vanishes")),
      base_(tau_q / c_, series_tol)
{
}

QModulus QModulus::from_base(const Modulus& m, cplx q)
{
    const cplx d = checked_denominator(1.0 + q * m.tau(), "1 + q tau vanishes");
    QModulus r(m.tau() / d, q, m.series_tol());
    r.base_ = m;
    r.c_ = 1.0 / d;
    return r;
}

cplx QModulus::G(int weight) const
{
    if (weight < 2) throw Error(ErrorCode::InvalidOrder, "Eisenstein weight must be >= 2");
    if (weight % 2) return 0.0;
    cplx g = std::pow(c_, -weight) * base_.G(weight);
    if (weight == 2) g -= 2.0 * ipi * q_ / c_;
    return g;
}

cplx QModulus::K(cplx v, int k) const
{
    if (k == 0) return bigK(v / c_, base_) + std::log(c_);
    return std::pow(c_, -k) * bigK(v / c_, base_, k);
}

cplx QModulus::K(cplx v, LogCursor& lg) const { return lg.K(v / c_, base_) + std::log(c_); }

cplx g_q(int weight, cplx tau_q, cplx q)
{
    if (weight % 2) throw Error(ErrorCode::OddWeight, "q-Eisenstein series need even weight");
    return QModulus(tau_q, q).G(weight);
}

cplx k_q(cplx v, cplx tau_q, cplx q, int k)
{
    if (k < 0) throw Error(ErrorCode::InvalidOrder, "negative derivative order");
    return QModulus(tau_q, q).K(v, k);
}

QPoint::QPoint(HurwitzPoint base, cplx q)
    : q_(q), base_(std::move(base)), def_(t_q(flat_point(base_), q)), qm_(QModulus::from_base(base_.modulus(), q))
{
}

QPoint t_q_map(const HurwitzPoint& p, cplx q) { return QPoint(p, q); }

HurwitzPoint t_q_inverse(const QPoint& qp)
{
    return to_hurwitz(t_q(qp.deformed(), -qp.q()), qp.base().modulus().series_tol());
}

QPoint q_point(const FlatPoint& deformed, cplx q, double series_tol)
{
    return QPoint(to_hurwitz(t_q(deformed, -q), series_tol), q);
}

QPeriods q_periods(const QPoint& qp) { return {qp.scale(), qp.tau_q()}; }

cplx f_phi_q(const QPoint& qp, LogCursor& lg)
{
    const FlatPoint& d = qp.deformed();
    const QSums S = q_sums(d);
    const cplx c = qp.scale(), q = qp.q(), xi = d.u;
    const cplx lead = xi * xi * d.tau / (4.0 * ipi) + xi * S.A + 0.5 * xi * S.C;
    const cplx rest = f_phi(qp.base(), lg) - first_line(qp.base());
    return lead + c * c * rest - ipi * q / c * (S.A * S.A + S.A * S.C + S.D);
}

cplx f_phi_q(const QPoint& qp)
{
    LogCursor lg;
    return f_phi_q(qp, lg);
}

cplx lambda_q_eval(const QPoint& qp, cplx z)
{
    const FlatPoint& d = qp.deformed();
    const QModulus& qm = qp.modulus();
    const QSums S = q_sums(d);
    const cplx G2 = qm.G(2);
    cplx lam = d.u + G2 * S.A + 0.5 * G2 * S.B2;
    for (int j = 0; j <= qp.m(); ++j) {
        const int N = qp.n(j) + 1;
        const BellTable B(d.x[j], N);
        const cplx v = qm.scale() * (z - qp.base().pole(j));
        cplx inner = 0.0;
        for (int k = 1; k <= N; ++k) inner += ((k % 2) ? -1.0 : 1.0) / factorial(k) * B(N, k) * qm.K(v, k);
        lam -= double(N) * inner;
    }
    return lam;
}

std::vector<cplx> lambda_q_principal(const QPoint& qp, int j)
{
    const int N = qp.n(j) + 1;
    const BellTable B(qp.deformed().x.at(j), N);
    std::vector<cplx> out(N);
    for (int k = 1; k <= N; ++k) out[k - 1] = double(N) * B(N, k) / (double(k) * std::pow(qp.scale(), k));
    return out;
}

cplx f_q_coeff(const QPoint& qp, int j, int ell)
{
    if (j < 0 || j > qp.m()) throw Error(ErrorCode::IndexOutOfRange, "pole index");
    if (ell < 0) throw Error(ErrorCode::InvalidOrder, "negative Laurent index");
    const FlatPoint& d = qp.deformed();
    const QModulus& qm = qp.modulus();
    auto sq = [&](int i) { return i == 0 ? cplx(0.0) : d.s[i - 1]; };
    cplx out = 0.0;
    if (ell == 0) {
        const QSums S = q_sums(d);
        out = d.u + qm.G(2) * (S.A + 0.5 * S.B2);
    }
    cplx other = 0.0;
    for (int i = 0; i <= qp.m(); ++i) {
        if (i == j) continue;
        const int N = qp.n(i) + 1;
        const BellTable B(d.x[i], N);
        cplx inner = 0.0;
        for (int k = 1; k <= N; ++k)
            inner += ((k % 2) ? -1.0 : 1.0) / factorial(k) * B(N, k) * qm.K(sq(j) - sq(i), k + ell);
        other += double(N) * inner;
    }
    out -= other / factorial(ell);
    const int N = qp.n(j) + 1;
    const BellTable B(d.x[j], N);
    cplx g = 0.0;
    for (int k = 1; k <= N; ++k) {
        if (k + ell < 4) continue;
        g += ((k % 2) ? -1.0 : 1.0) / double(k + ell) * binomial(k + ell, ell) * B(N, k) * qm.G(k + ell);
    }
    return out + double(N) * g;
}

std::vector<cplx> x_q_coefficients(const QPoint& qp, int j, int count)
{
    if (j < 0 || j > qp.m()) throw Error(ErrorCode::IndexOutOfRange, "pole index");
    const int nj = qp.n(j);
    std::vector<cplx> xs = qp.deformed().x[j];
    const cplx x1 = xs[0];
    if (x1 == 0.0) throw Error(ErrorCode::ZeroLeadingCoefficient, "x_{q,1} = 0");
    std::vector<cplx> f;
    while (int(xs.size()) < count) {
        const int alpha = int(xs.size()) - nj;
        while (int(f.size()) < alpha) f.push_back(f_q_coeff(qp, j, int(f.size())));

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
        for (int l = 0; l < alpha; ++l) t3 += f[l] * B(alpha, l + 1) / (l + 1.0);
        t3 *= double(alpha) / (nj + 1.0);
        xs.push_back(t1 + t2 + t3);
    }
    xs.resize(std::max(count, 0));
    return xs;
}

cplx extended_x_q(const QPoint& qp, int j, int alpha)
{
    if (alpha < 1) throw Error(ErrorCode::InvalidOrder, "extended_x_q needs alpha >= 1");
    return x_q_coefficients(qp, j, qp.n(j) + 1 + alpha).back();
}

namespace {

cplx shift_factor(const QPoint& qp) { return 2.0 * ipi * qp.q() * qp.scale(); }

}  // namespace

cplx I_omega_q(const QPoint& qp, int i, int j, int alpha)
{
    const HurwitzPoint& p = qp.base();
    return I_omega(p, i, j, alpha) - shift_factor(qp) * double(alpha) * p.coefficient(i, alpha) * p.s(j);
}

cplx I_psi_q(const QPoint& qp, int i, int beta, int j, int alpha)
{
    const HurwitzPoint& p = qp.base();
    return I_psi(p, i, beta, j, alpha) -
           shift_factor(qp) * double(alpha * beta) * p.coefficient(j, alpha) * p.coefficient(i, beta);
}

cplx w_q_density(const QPoint& qp, cplx zp, cplx zq)
{
    const Modulus& md = qp.base().modulus();
    return wp(zp - zq, md) + md.G2() - shift_factor(qp);
}

cplx omega_q_third(const QPoint& qp, int j, cplx z)
{
    return omega_third(qp.base(), j, z) - shift_factor(qp) * qp.base().s(j);
}

cplx psi_q_second(const QPoint& qp, int j, int alpha, cplx z)
{
    return psi_second(qp.base(), j, alpha, z) - shift_factor(qp) * double(alpha) * qp.base().coefficient(j, alpha);
}

Prepotential q_prepotential(const FlatChart& chart, cplx q, double series_tol)
{
    return [chart, q, series_tol](std::span<const cplx> c, LogCursor& lg) {
        return f_phi_q(q_point(chart.flat(c), q, series_tol), lg);
    };
}

SingularDistance q_chart_cap(const FlatChart& chart, cplx q)
{
    return [chart, q](std::span<const cplx> b, std::span<const cplx> v) {
        auto to_base = [&](double h) {
            std::vector<cplx> c(b.begin(), b.end());
            for (std::size_t a = 0; a < c.size(); ++a) c[a] += h * v[a];
            return chart.coords(t_q(chart.flat(c), -q));
        };
        const double h = 1e-6;
        const auto base = to_base(0.0), plus = to_base(h), minus = to_base(-h);
        std::vector<cplx> dv(base.size());
        for (std::size_t a = 0; a < dv.size(); ++a) dv[a] = (plus[a] - minus[a]) / (2.0 * h);
        double d = chart.singular_distance(base, dv);
        const cplx vt = v[FlatChart::tau_index] * q;
        if (vt != 0.0) d = std::min(d, std::abs(1.0 - q * b[FlatChart::tau_index]) / std::abs(vt));
        return d;
    };
}

nlohmann::json to_json(const QPoint& qp)
{
    nlohmann::json j = to_json(qp.base());
    j["q"] = complex_to_json(qp.q());
    return j;
}

QPoint qpoint_from_json(const nlohmann::json& j, double series_tol)
{
    if (!j.is_object() || !j.contains("q")) throw Error(ErrorCode::ParseError, "missing field q");
    return QPoint(point_from_json(j, series_tol), complex_from_json(j.at("q")));
}

}  // namespace wdvv
