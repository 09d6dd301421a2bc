#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace wdvv {

struct ResidualEntry {
    enum class Kind { Residual, Flag, Control };
    std::string identity;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
    Kind kind = Kind::Residual;
};

// Named identity -> residual magnitude, judged against its tolerance.
class ResidualReport {
public:
    void add(std::string identity, double residual, double tol, std::string note = {});
    // A boolean check with no numeric residual (residual 0 on success, 1 otherwise).
    void flag(std::string identity, bool ok, std::string note = {});
    // A deliberately corrupted input: passes when the residual exceeds the threshold.
    void control(std::string identity, double residual, double threshold = 1e-5, std::string note = {});
    // Re-judges every plain residual entry against a new tolerance.
    void retolerance(double tol);
    void merge(const ResidualReport& other);

    bool all_pass() const noexcept;
    const std::vector<ResidualEntry>& entries() const noexcept { return entries_; }
    const ResidualEntry* find(const std::string& identity) const noexcept;

    nlohmann::json to_json() const;

private:
    std::vector<ResidualEntry> entries_;
};

void to_json(nlohmann::json& j, const ResidualEntry& e);

}  // namespace wdvv
