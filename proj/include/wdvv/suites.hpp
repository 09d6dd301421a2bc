#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wdvv/hurwitz.hpp"
#include "wdvv/report.hpp"

namespace wdvv {

enum class Suite { SpecialFn, Bell, Hurwitz, Wdvv, QDeform, Identities };

const std::vector<Suite>& all_suites();
std::string to_string(Suite s);
// "special-fn", "bell", "hurwitz", "wdvv", "qdeform", "identities"
std::optional<Suite> parse_suite(std::string_view name);

struct SuiteOptions {
    std::uint64_t seed = 7;
    // Restricts the profile-driven suites (hurwitz, wdvv, qdeform) to one profile.
    std::optional<BranchProfile> profile;
    // Overrides the tolerance of every plain residual entry.
    std::optional<double> tol;
    int threads = 1;
};

// Runs one invariant suite over its standard sample set. Entries are maxima
// over the samples; entries marked as controls must exceed 1e-5.
ResidualReport run_suite(Suite s, const SuiteOptions& opt = {});

}  // namespace wdvv
