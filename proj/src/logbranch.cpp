#include "wdvv/logbranch.hpp"

namespace wdvv {

cplx LogCursor::log(cplx z)
{
    if (z == 0.0) throw Error(ErrorCode::BranchPoint, "logarithm of zero");
    if (!store_) return std::log(z);
    if (recording_) {
        const cplx v = std::log(z);
        store_->push_back({z, v});
        ++next_;
        return v;
    }
    if (next_ >= store_->size()) throw Error(ErrorCode::BranchPoint, "log call site without an anchor");
    const LogAnchor& a = (*store_)[next_++];
    return a.value + std::log(z / a.z);
}

}  // namespace wdvv
