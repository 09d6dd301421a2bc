#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wdvv {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx I{0.0, 1.0};
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

enum class ErrorCode {
    NonConvergent,
    DerivOrderTooHigh,
    PoleArgument,
    BranchPoint,
    OddWeight,
    InvalidModulus,
    IndexOutOfRange,
    InvalidOrder,
    ZeroLeadingCoefficient,
    ForbiddenOrder,
    InvalidPoint,
    SingularGram,
    DegenerateModulus,
    ParseError,
};

const char* to_string(ErrorCode c) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Truncation, tolerance and contour parameters shared by every numerical routine.
struct EvalConfig {
    double series_tol = 1e-16;
    double identity_tol = 1e-10;
    int contour_points = 32;
    double contour_radius_scale = 1e-2;
    int lattice_cutoff = 200;

    void validate() const;
};

}  // namespace wdvv
