#include "wdvv/types.hpp"

namespace wdvv {

const char* to_string(ErrorCode c) noexcept
{
    switch (c) {
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::DerivOrderTooHigh: return "DerivOrderTooHigh";
    case ErrorCode::PoleArgument: return "PoleArgument";
    case ErrorCode::BranchPoint: return "BranchPoint";
    case ErrorCode::OddWeight: return "OddWeight";
    case ErrorCode::InvalidModulus: return "InvalidModulus";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorCode::ForbiddenOrder: return "ForbiddenOrder";
    case ErrorCode::InvalidPoint: return "InvalidPoint";
    case ErrorCode::SingularGram: return "SingularGram";
    case ErrorCode::DegenerateModulus: return "DegenerateModulus";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

void EvalConfig::validate() const
{
    if (!(series_tol > 0) || !(identity_tol > 0) || !(contour_radius_scale > 0))
        throw Error(ErrorCode::InvalidOrder, "tolerances must be strictly positive");
    if (contour_points < 8 || contour_points % 2 != 0)
        throw Error(ErrorCode::InvalidOrder, "contour_points must be even and >= 8");
    if (lattice_cutoff < 1)
        throw Error(ErrorCode::InvalidOrder, "lattice_cutoff must be positive");
}

}  // namespace wdvv
