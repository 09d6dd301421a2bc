#pragma once

#include <vector>

#include "wdvv/special_fn.hpp"
#include "wdvv/types.hpp"

namespace wdvv {

struct LogAnchor {
    cplx z;
    cplx value;
};

// Source of the logarithms inside a prepotential. The default cursor takes
// principal values. A recording cursor stores (argument, value) per call site
// in evaluation order; a following cursor continues each call site from its
// anchor, so nearby evaluations stay on one analytic branch.
class LogCursor {
public:
    LogCursor() = default;
    static LogCursor recorder(std::vector<LogAnchor>& store) { return LogCursor(&store, true); }
    static LogCursor follower(const std::vector<LogAnchor>& store)
    {
        return LogCursor(const_cast<std::vector<LogAnchor>*>(&store), false);
    }

    cplx log(cplx z);
    // K(v) = log sigma(v)
    cplx K(cplx v, const Modulus& m) { return log(wsigma(v, m)); }

private:
    LogCursor(std::vector<LogAnchor>* store, bool rec) : store_(store), recording_(rec) {}
    std::vector<LogAnchor>* store_ = nullptr;
    bool recording_ = false;
    std::size_t next_ = 0;
};

}  // namespace wdvv
