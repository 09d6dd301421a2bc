#include "wdvv/flat.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>

#include "wdvv/contour.hpp"
#include "wdvv/prepotential.hpp"

namespace wdvv {

FlatChart::FlatChart(BranchProfile profile) : profile_(std::move(profile))
{
    profile_.validate();
    const int m = profile_.m();
    labels_ = {"u", "tau"};
    for (int j = 1; j <= m; ++j) labels_.push_back("s" + std::to_string(j));
    x_offset_.assign(m + 1, 0);
    for (int j = 0; j <= m; ++j) {
        x_offset_[j] = int(labels_.size());
        const int top = (j == 0) ? profile_.n(0) : profile_.n(j) + 1;
        for (int a = 1; a <= top; ++a) labels_.push_back("x" + std::to_string(a) + "(" + std::to_string(j) + ")");
    }
}

int FlatChart::index(const std::string& label) const
{
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(ErrorCode::IndexOutOfRange, "unknown coordinate " + label);
    return int(it - labels_.begin());
}

int FlatChart::s_index(int j) const
{
    if (j < 1 || j > profile_.m()) throw Error(ErrorCode::IndexOutOfRange, "no coordinate s" + std::to_string(j));
    return 1 + j;
}

int FlatChart::x_index(int j, int alpha) const
{
    if (j < 0 || j > profile_.m()) throw Error(ErrorCode::IndexOutOfRange, "pole index out of range");
    const int top = (j == 0) ? profile_.n(0) : profile_.n(j) + 1;
    if (alpha < 1 || alpha > top) throw Error(ErrorCode::IndexOutOfRange, "x index is not a flat coordinate");
    return x_offset_[j] + alpha - 1;
}

std::vector<cplx> FlatChart::coords(const HurwitzPoint& p) const
{
    if (!(p.profile() == profile_)) throw Error(ErrorCode::InvalidPoint, "profile mismatch");
    std::vector<cplx> c(size());
    c[u_index] = p.u();
    c[tau_index] = p.tau();
    for (int j = 1; j <= profile_.m(); ++j) c[s_index(j)] = p.s(j);
    for (int j = 0; j <= profile_.m(); ++j) {
        const int top = (j == 0) ? profile_.n(0) : profile_.n(j) + 1;
        for (int a = 1; a <= top; ++a) c[x_index(j, a)] = p.x(j, a);
    }
    return c;
}

std::vector<cplx> FlatChart::coords(const FlatPoint& f) const
{
    if (!(f.profile == profile_)) throw Error(ErrorCode::InvalidPoint, "profile mismatch");
    std::vector<cplx> c(size());
    c[u_index] = f.u;
    c[tau_index] = f.tau;
    for (int j = 1; j <= profile_.m(); ++j) c[s_index(j)] = f.s.at(j - 1);
    for (int j = 0; j <= profile_.m(); ++j) {
        const int top = (j == 0) ? profile_.n(0) : profile_.n(j) + 1;
        for (int a = 1; a <= top; ++a) c[x_index(j, a)] = f.x.at(j).at(a - 1);
    }
    return c;
}

FlatPoint FlatChart::flat(std::span<const cplx> c) const
{
    if (int(c.size()) != size()) throw Error(ErrorCode::IndexOutOfRange, "coordinate vector has wrong length");
    const int m = profile_.m();
    FlatPoint f{profile_, c[u_index], c[tau_index], {}, std::vector<std::vector<cplx>>(m + 1)};
    cplx ysum = 0.0;
    for (int j = 1; j <= m; ++j) {
        f.s.push_back(c[s_index(j)]);
        for (int a = 1; a <= profile_.n(j) + 1; ++a) f.x[j].push_back(c[x_index(j, a)]);
        ysum += double(profile_.n(j) + 1) * f.x[j].back();
    }
    for (int a = 1; a <= profile_.n(0); ++a) f.x[0].push_back(c[x_index(0, a)]);
    f.x[0].push_back(-ysum / double(profile_.n(0) + 1));
    return f;
}

HurwitzPoint FlatChart::point(std::span<const cplx> c, double series_tol) const { return to_hurwitz(flat(c), series_tol); }

FlatPoint flat_point(const HurwitzPoint& p)
{
    FlatPoint f{p.profile(), p.u(), p.tau(), {}, {}};
    for (int j = 1; j <= p.m(); ++j) f.s.push_back(p.s(j));
    for (int j = 0; j <= p.m(); ++j) f.x.push_back(p.x_table(j));
    return f;
}

HurwitzPoint to_hurwitz(const FlatPoint& f, double series_tol)
{
    std::vector<cplx> poles{0.0};
    poles.insert(poles.end(), f.s.begin(), f.s.end());
    return HurwitzPoint(f.profile, Modulus(f.tau, series_tol), std::move(poles), f.x, f.u);
}

std::vector<double> FlatChart::euler_weights() const
{
    std::vector<double> w(size(), 0.0);
    w[u_index] = 1.0;
    for (int j = 0; j <= profile_.m(); ++j) {
        const int N = profile_.n(j) + 1;
        for (int a = 1; a < N; ++a) w[x_index(j, a)] = double(a) / N;
        if (j > 0) w[x_index(j, N)] = 1.0;
    }
    return w;
}

double FlatChart::singular_distance(std::span<const cplx> base, std::span<const cplx> v) const
{
    double best = 1e300;
    auto root = [&](cplx value, cplx slope) {
        if (slope != 0.0) best = std::min(best, std::abs(value / slope));
    };
    const int m = profile_.m();
    const cplx tau = base[tau_index], vt = v[tau_index];
    if (vt != 0.0) best = std::min(best, tau.imag() / std::abs(vt));
    auto lattice = [&](cplx d, cplx w) {
        for (int a = -3; a <= 3; ++a)
            for (int b = -3; b <= 3; ++b) root(d - double(a) - double(b) * tau, w - double(b) * vt);
    };
    for (int i = 1; i <= m; ++i) {
        lattice(base[s_index(i)], v[s_index(i)]);
        for (int j = i + 1; j <= m; ++j)
            lattice(base[s_index(i)] - base[s_index(j)], v[s_index(i)] - v[s_index(j)]);
    }
    for (int j = 0; j <= m; ++j) {
        if (j == 0 && profile_.n(0) == 0) continue;
        root(base[x_index(j, 1)], v[x_index(j, 1)]);
    }
    if (profile_.n(0) == 0 && m > 0) {
        cplx y = 0.0, w = 0.0;
        for (int j = 1; j <= m; ++j) {
            const int N = profile_.n(j) + 1;
            y += double(N) * base[x_index(j, N)];
            w += double(N) * v[x_index(j, N)];
        }
        root(y, w);
    }
    return best;
}

GramMatrix FlatChart::gram() const
{
    const int n = size();
    GramMatrix g = GramMatrix::Zero(n, n);
    g(u_index, tau_index) = g(tau_index, u_index) = 1.0 / two_pi_i;
    for (int j = 0; j <= profile_.m(); ++j) {
        const int N = profile_.n(j) + 1;
        for (int a = 1; a < N; ++a) g(x_index(j, a), x_index(j, N - a)) = double(N);
        if (j > 0) g(x_index(j, N), s_index(j)) = g(s_index(j), x_index(j, N)) = double(N);
    }
    return g;
}

Prepotential phi_prepotential(const FlatChart& chart, double series_tol)
{
    return [chart, series_tol](std::span<const cplx> c, LogCursor& lg) { return f_phi(chart.point(c, series_tol), lg); };
}

SingularDistance chart_cap(const FlatChart& chart)
{
    return [chart](std::span<const cplx> b, std::span<const cplx> v) { return chart.singular_distance(b, v); };
}

Eigen::MatrixXcd ThirdTensor::slice(int a) const
{
    Eigen::MatrixXcd s(n_, n_);
    for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c) s(b, c) = (*this)(a, b, c);
    return s;
}

double ThirdTensor::max_abs_diff(const ThirdTensor& o) const
{
    if (o.n_ != n_) throw Error(ErrorCode::IndexOutOfRange, "tensor size mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i) d = std::max(d, std::abs(data_[i] - o.data_[i]));
    return d;
}

Jet::Jet(Prepotential F, std::vector<cplx> base, const EvalConfig& cfg, SingularDistance cap)
    : F_(std::move(F)), base_(std::move(base)), cfg_(cfg), cap_(std::move(cap))
{
    LogCursor rec = LogCursor::recorder(anchors_);
    f0_ = F_(base_, rec);
}

cplx Jet::directional(std::span<const cplx> v, int k) const
{
    if (v.size() != base_.size()) throw Error(ErrorCode::IndexOutOfRange, "direction has wrong length");
    if (2 * k >= cfg_.contour_points) throw Error(ErrorCode::DerivOrderTooHigh, "too few contour points");
    double scale = 1.0, vmax = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0.0) {
            scale = std::max(scale, std::abs(base_[i]));
            vmax = std::max(vmax, std::abs(v[i]));
        }
    if (vmax == 0.0) return k == 0 ? f0_ : 0.0;
    double r = cfg_.contour_radius_scale * scale / vmax;
    if (cap_) r = std::min(r, 0.4 * cap_(base_, v));
    std::vector<cplx> pt(base_.size());
    auto g = [&](cplx t) {
        for (std::size_t i = 0; i < pt.size(); ++i) pt[i] = base_[i] + t * v[i];
        LogCursor lg = LogCursor::follower(anchors_);
        return F_(pt, lg);
    };
    return cauchy_derivative(g, 0.0, r, cfg_.contour_points, k);
}

namespace {
std::vector<cplx> unit(std::size_t n, int a, cplx c = 1.0)
{
    std::vector<cplx> v(n, 0.0);
    v[a] = c;
    return v;
}
}  // namespace

cplx Jet::first(int a) const { return directional(unit(base_.size(), a), 1); }

cplx Jet::second(int a, int b) const
{
    const std::size_t n = base_.size();
    if (a == b) return directional(unit(n, a), 2);
    auto p = unit(n, a), q = unit(n, a);
    p[b] = 1.0;
    q[b] = -1.0;
    return 0.25 * (directional(p, 2) - directional(q, 2));
}

cplx Jet::third(int a, int b, int c) const
{
    const std::size_t n = base_.size();
    if (a == b && b == c) return directional(unit(n, a), 3);
    cplx s = 0.0;
    for (int beta : {1, -1})
        for (int gamma : {1, -1}) {
            std::vector<cplx> v(n, 0.0);
            v[a] += 1.0;
            v[b] += double(beta);
            v[c] += double(gamma);
            s += double(beta * gamma) * directional(v, 3);
        }
    return s / 24.0;
}

std::vector<cplx> Jet::gradient() const
{
    std::vector<cplx> g(base_.size());
    for (std::size_t a = 0; a < g.size(); ++a) g[a] = first(int(a));
    return g;
}

ThirdTensor Jet::third_tensor(int threads) const
{
    const int n = int(base_.size());
    struct Triple {
        int a, b, c;
    };
    std::vector<Triple> work;
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            for (int c = b; c < n; ++c) work.push_back({a, b, c});
    std::vector<cplx> vals(work.size());
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t i = next++; i < work.size(); i = next++) vals[i] = third(work[i].a, work[i].b, work[i].c);
    };
    threads = std::max(1, std::min<int>(threads, int(work.size())));
    if (threads == 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(run);
    }
    ThirdTensor T(n);
    for (std::size_t i = 0; i < work.size(); ++i) {
        const auto [a, b, c] = work[i];
        const int idx[3] = {a, b, c};
        const int perm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
        for (const auto& pr : perm) T(idx[pr[0]], idx[pr[1]], idx[pr[2]]) = vals[i];
    }
    return T;
}

namespace {
Eigen::MatrixXcd checked_inverse(const Eigen::MatrixXcd& A)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    const double smax = sv(0), smin = sv(sv.size() - 1);
    if (!(smin > 0.0) || smax / smin > 1e8) throw Error(ErrorCode::SingularGram, "unit slice is ill-conditioned");
    return A.inverse();
}

double commutator(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Ui, const Eigen::MatrixXcd& B)
{
    return (A * Ui * B - B * Ui * A).cwiseAbs().maxCoeff();
}
}  // namespace

double wdvv_residual(const ThirdTensor& c, int alpha, int beta, int unit_idx)
{
    const Eigen::MatrixXcd Ui = checked_inverse(c.slice(unit_idx));
    return commutator(c.slice(alpha), Ui, c.slice(beta));
}

double wdvv_residual(const Prepotential& F, const FlatChart& chart, std::span<const cplx> point, int alpha, int beta,
                     const EvalConfig& cfg)
{
    const Jet jet(F, std::vector<cplx>(point.begin(), point.end()), cfg, chart_cap(chart));
    const int n = chart.size();
    auto slice = [&](int g) {
        Eigen::MatrixXcd S(n, n);
        for (int b = 0; b < n; ++b)
            for (int c = b; c < n; ++c) S(b, c) = S(c, b) = jet.third(g, b, c);
        return S;
    };
    const Eigen::MatrixXcd Ui = checked_inverse(slice(FlatChart::u_index));
    return commutator(slice(alpha), Ui, slice(beta));
}

ResidualReport wdvv_report(const ThirdTensor& c, double tol, int unit_idx)
{
    ResidualReport rep;
    const Eigen::MatrixXcd Ui = checked_inverse(c.slice(unit_idx));
    const int n = c.size();
    std::vector<Eigen::MatrixXcd> S;
    for (int a = 0; a < n; ++a) S.push_back(c.slice(a));
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            rep.add("wdvv[" + std::to_string(a) + "," + std::to_string(b) + "]", commutator(S[a], Ui, S[b]), tol);
    return rep;
}

ResidualReport gram_check(const Prepotential& F, const FlatChart& chart, std::span<const cplx> point,
                          const EvalConfig& cfg, double tol, SingularDistance cap)
{
    if (!cap) cap = chart_cap(chart);
    const int n = chart.size();
    const GramMatrix eta = chart.gram();
    auto unit_slice = [&](std::vector<cplx> base) {
        const Jet jet(F, std::move(base), cfg, cap);
        Eigen::MatrixXcd S(n, n);
        for (int b = 0; b < n; ++b)
            for (int c = b; c < n; ++c) S(b, c) = S(c, b) = jet.third(FlatChart::u_index, b, c);
        return S;
    };
    std::vector<cplx> base(point.begin(), point.end());
    const Eigen::MatrixXcd S = unit_slice(base);
    ResidualReport rep;
    const auto& L = chart.labels();
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            rep.add("gram[" + L[a] + "," + L[b] + "]", std::abs(S(a, b) - eta(a, b)), tol);
    std::vector<cplx> moved(base);
    for (int a = 0; a < n; ++a) moved[a] += (a == FlatChart::tau_index) ? cplx(0.0, 0.01) : cplx(0.02, 0.01);
    rep.add("gram constancy", (unit_slice(moved) - S).cwiseAbs().maxCoeff(), tol);
    return rep;
}

EulerResult euler_check(const Prepotential& F, const FlatChart& chart, std::span<const cplx> point,
                        const EvalConfig& cfg, SingularDistance cap)
{
    const Jet jet(F, std::vector<cplx>(point.begin(), point.end()), cfg, cap ? cap : chart_cap(chart));
    const auto w = chart.euler_weights();
    std::vector<cplx> v(point.size());
    for (std::size_t a = 0; a < v.size(); ++a) v[a] = w[a] * point[a];
    const cplx EF = jet.directional(v, 1);
    return {EF, jet.value(), std::abs(EF - 2.0 * jet.value())};
}

cplx euler_defect(const HurwitzPoint& p)
{
    cplx s = 0.0, Y = 0.0;
    for (int j = 1; j <= p.m(); ++j) {
        const double N = p.n(j) + 1;
        const cplx y = N * p.x(j, p.n(j) + 1);
        s += 0.5 * y * y / N;
        Y += y;
    }
    return s + 0.5 * Y * Y / double(p.n(0) + 1);
}

ResidualReport hessian_period_check(const HurwitzPoint& p, const EvalConfig& cfg, double tol)
{
    const FlatChart chart(p.profile());
    const Jet jet(phi_prepotential(chart, p.modulus().series_tol()), chart.coords(p), cfg, chart_cap(chart));
    ResidualReport rep;
    auto judge = [&](const std::string& id, cplx lhs, cplx rhs) {
        rep.add(id, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)), tol);
    };
    for (int j = 1; j <= p.m(); ++j) {
        const double N = p.n(j) + 1;
        const cplx lhs = a_cycle_integral(p, [&](cplx z) { return lambda_eval(p, z) * omega_third(p, j, z); });
        const cplx rhs = two_pi_i / N * jet.second(FlatChart::tau_index, chart.x_index(j, p.n(j) + 1));
        judge("a-period omega[" + std::to_string(j) + "]", lhs, rhs);
    }
    for (int j = 0; j <= p.m(); ++j) {
        const int N = p.n(j) + 1;
        for (int a = 1; a < N; ++a) {
            const cplx lhs = a_cycle_integral(p, [&](cplx z) { return lambda_eval(p, z) * psi_second(p, j, a, z); });
            const cplx rhs = two_pi_i * double(a) / double(N) * jet.second(FlatChart::tau_index, chart.x_index(j, N - a));
            judge("a-period psi[" + std::to_string(j) + "," + std::to_string(a) + "]", lhs, rhs);
        }
    }
    return rep;
}

EvalConfig verification_config()
{
    EvalConfig cfg;
    cfg.contour_radius_scale = 1.0;
    cfg.contour_points = 64;
    return cfg;
}

int default_threads()
{
    if (const char* env = std::getenv("WDVV_NUM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace wdvv
