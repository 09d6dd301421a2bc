#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wdvv/hurwitz.hpp"
#include "wdvv/logbranch.hpp"
#include "wdvv/report.hpp"
#include "wdvv/types.hpp"

namespace wdvv {

using GramMatrix = Eigen::MatrixXcd;

// Flat coordinates detached from the analytic data: tau may leave the upper
// half-plane (deformed charts). x[j] holds x_1(j)..x_{n_j+1}(j), s[j-1] = s^j.
struct FlatPoint {
    BranchProfile profile;
    cplx u;
    cplx tau;
    std::vector<cplx> s;
    std::vector<std::vector<cplx>> x;
};

FlatPoint flat_point(const HurwitzPoint& p);
HurwitzPoint to_hurwitz(const FlatPoint& f, double series_tol = 1e-16);

// Flat coordinates of the phi-structure in the order
// (u, tau, s^1..s^m, x_1(0)..x_{n_0}(0), x_1(j)..x_{n_j+1}(j) for j >= 1).
class FlatChart {
public:
    explicit FlatChart(BranchProfile profile);

    const BranchProfile& profile() const noexcept { return profile_; }
    int size() const noexcept { return int(labels_.size()); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    int index(const std::string& label) const;

    static constexpr int u_index = 0;
    static constexpr int tau_index = 1;
    int s_index(int j) const;
    int x_index(int j, int alpha) const;

    std::vector<cplx> coords(const HurwitzPoint& p) const;
    std::vector<cplx> coords(const FlatPoint& f) const;
    // x_{n_0+1}(0) is fixed by the residue closure.
    FlatPoint flat(std::span<const cplx> coords) const;
    // x_{n_0+1}(0) is fixed by the residue closure.
    HurwitzPoint point(std::span<const cplx> coords, double series_tol = 1e-16) const;

    // Euler weights d_a with E = sum d_a t^a d/dt^a.
    std::vector<double> euler_weights() const;
    // Distance |t| from base to the nearest singularity of F_phi on the complex
    // line base + t v: x_1(j) = 0, s^i - s^j or s^j on the lattice, Im tau = 0.
    double singular_distance(std::span<const cplx> base, std::span<const cplx> v) const;
    GramMatrix gram() const;

private:
    BranchProfile profile_;
    std::vector<std::string> labels_;
    std::vector<int> x_offset_;
};

using Prepotential = std::function<cplx(std::span<const cplx>, LogCursor&)>;
using SingularDistance = std::function<double(std::span<const cplx>, std::span<const cplx>)>;

SingularDistance chart_cap(const FlatChart& chart);

// F_phi as a function of flat coordinates.
Prepotential phi_prepotential(const FlatChart& chart, double series_tol = 1e-16);

// Symmetric third-derivative tensor c_{abc}.
class ThirdTensor {
public:
    explicit ThirdTensor(int n) : n_(n), data_(std::size_t(n) * n * n) {}
    int size() const noexcept { return n_; }
    cplx& operator()(int a, int b, int c) { return data_[(std::size_t(a) * n_ + b) * n_ + c]; }
    cplx operator()(int a, int b, int c) const { return data_[(std::size_t(a) * n_ + b) * n_ + c]; }
    Eigen::MatrixXcd slice(int a) const;
    double max_abs_diff(const ThirdTensor& o) const;

private:
    int n_;
    std::vector<cplx> data_;
};

// Derivatives of F at a fixed base point by Cauchy integrals along complex
// lines. Logarithms are continued from their values at the base point.
class Jet {
public:
    // The contour radius along v is contour_radius_scale * max(1, |t^a|) / |v|,
    // capped at 0.4 times the singular distance when one is supplied.
    Jet(Prepotential F, std::vector<cplx> base, const EvalConfig& cfg = {}, SingularDistance cap = {});

    cplx value() const noexcept { return f0_; }
    const std::vector<cplx>& base() const noexcept { return base_; }
    // d^k/dt^k F(base + t v) at t = 0
    cplx directional(std::span<const cplx> v, int k) const;
    cplx first(int a) const;
    cplx second(int a, int b) const;
    cplx third(int a, int b, int c) const;
    std::vector<cplx> gradient() const;
    ThirdTensor third_tensor(int threads = 1) const;

private:
    Prepotential F_;
    std::vector<cplx> base_;
    EvalConfig cfg_;
    SingularDistance cap_;
    std::vector<LogAnchor> anchors_;
    cplx f0_;
};

// max |F_a F_u^{-1} F_b - F_b F_u^{-1} F_a| with F_g the slice c(g, ., .).
double wdvv_residual(const ThirdTensor& c, int alpha, int beta, int unit = FlatChart::u_index);
double wdvv_residual(const Prepotential& F, const FlatChart& chart, std::span<const cplx> point, int alpha,
                     int beta, const EvalConfig& cfg = {});
// Every pair alpha < beta; the commutators use the precomputed tensor.
ResidualReport wdvv_report(const ThirdTensor& c, double tol, int unit = FlatChart::u_index);

// An empty cap falls back to chart_cap(chart).
ResidualReport gram_check(const Prepotential& F, const FlatChart& chart, std::span<const cplx> point,
                          const EvalConfig& cfg = {}, double tol = 1e-8, SingularDistance cap = {});

struct EulerResult {
    cplx EF;
    cplx F;
    double residual;    // |E.F - 2F|
};
EulerResult euler_check(const Prepotential& F, const FlatChart& chart, std::span<const cplx> point,
                        const EvalConfig& cfg = {}, SingularDistance cap = {});
// The quadratic that E.F - 2F reduces to for the phi-prepotential:
// (1/2) sum_{j>=1} y_j^2/(n_j+1) + (1/2) Y^2/(n_0+1), y_j = (n_j+1) x_{n_j+1}(j).
cplx euler_defect(const HurwitzPoint& p);

// a-period identities for lambda Omega and lambda Psi against tau-mixed
// second derivatives of F_phi.
ResidualReport hessian_period_check(const HurwitzPoint& p, const EvalConfig& cfg = {}, double tol = 1e-7);

// Contour settings for the WDVV, Gram and Euler checks: radius set by the
// singular distance, 64 nodes.
EvalConfig verification_config();

int default_threads();

}  // namespace wdvv
