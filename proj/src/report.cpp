#include "wdvv/report.hpp"

#include <algorithm>
#include <cmath>

namespace wdvv {

void ResidualReport::add(std::string identity, double residual, double tol, std::string note)
{
    const bool ok = std::isfinite(residual) && residual < tol;
    entries_.push_back({std::move(identity), residual, tol, ok, std::move(note)});
}

void ResidualReport::flag(std::string identity, bool ok, std::string note)
{
    entries_.push_back({std::move(identity), ok ? 0.0 : 1.0, 0.5, ok, std::move(note), ResidualEntry::Kind::Flag});
}

void ResidualReport::control(std::string identity, double residual, double threshold, std::string note)
{
    const bool ok = std::isfinite(residual) && residual > threshold;
    entries_.push_back(
        {std::move(identity), residual, threshold, ok, std::move(note), ResidualEntry::Kind::Control});
}

void ResidualReport::retolerance(double tol)
{
    for (auto& e : entries_) {
        if (e.kind != ResidualEntry::Kind::Residual) continue;
        e.tol = tol;
        e.pass = std::isfinite(e.residual) && e.residual < tol;
    }
}

void ResidualReport::merge(const ResidualReport& other)
{
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool ResidualReport::all_pass() const noexcept
{
    return std::all_of(entries_.begin(), entries_.end(), [](const ResidualEntry& e) { return e.pass; });
}

const ResidualEntry* ResidualReport::find(const std::string& identity) const noexcept
{
    for (const auto& e : entries_)
        if (e.identity == identity) return &e;
    return nullptr;
}

void to_json(nlohmann::json& j, const ResidualEntry& e)
{
    j = nlohmann::json{{"identity", e.identity}, {"residual", e.residual}, {"tol", e.tol}, {"pass", e.pass}};
    if (!std::isfinite(e.residual)) j["residual"] = nullptr;
    if (!e.note.empty()) j["note"] = e.note;
    if (e.kind == ResidualEntry::Kind::Control) j["control"] = true;
}

nlohmann::json ResidualReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries_) arr.push_back(e);
    return arr;
}

}  // namespace wdvv
