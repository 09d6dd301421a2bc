#include "cli_support.hpp"

#include <cctype>
#include <cstdlib>
#include <fmt/format.h>

#include <json.hpp>

namespace wdvv::cli {

namespace {

std::string strip(std::string_view s)
{
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
    return out;
}

double parse_real(const std::string& s, std::string_view whole)
{
    if (s.empty()) throw Error(ErrorCode::ParseError, "bad number in '" + std::string(whole) + "'");
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw Error(ErrorCode::ParseError, "bad number in '" + std::string(whole) + "'");
    return v;
}

}  // namespace

cplx parse_complex(std::string_view text)
{
    const std::string s = strip(text);
    if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex value");
    if (s.front() == '[') {
        try {
            return complex_from_json(nlohmann::json::parse(s));
        } catch (const nlohmann::json::exception&) {
            throw Error(ErrorCode::ParseError, "bad complex pair '" + s + "'");
        }
    }
    if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};

    const std::string body = s.substr(0, s.size() - 1);
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;)
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    const std::string re = split == std::string::npos ? "" : body.substr(0, split);
    std::string im = split == std::string::npos ? body : body.substr(split);
    if (im.empty() || im == "+") im = "1";
    else if (im == "-") im = "-1";
    else if (im.back() == '*') im.pop_back();
    return {re.empty() ? 0.0 : parse_real(re, text), parse_real(im, text)};
}

BranchProfile parse_profile(std::string_view text)
{
    std::string s = strip(text);
    if (s.size() >= 2 && ((s.front() == '(' && s.back() == ')') || (s.front() == '[' && s.back() == ']')))
        s = s.substr(1, s.size() - 2);
    BranchProfile p;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const std::size_t next = std::min(s.find(',', pos), s.size());
        const std::string item = s.substr(pos, next - pos);
        char* end = nullptr;
        const long v = std::strtol(item.c_str(), &end, 10);
        if (item.empty() || end != item.c_str() + item.size())
            throw Error(ErrorCode::ParseError, "bad profile '" + std::string(text) + "'");
        p.orders.push_back(int(v));
        pos = next + 1;
    }
    try {
        p.validate();
    } catch (const Error& e) {
        throw Error(ErrorCode::ParseError, "bad profile '" + std::string(text) + "': " + e.what());
    }
    return p;
}

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

std::string format_complex(cplx z)
{
    return fmt::format("{:.17g}{}{:.17g}i", z.real(), std::signbit(z.imag()) ? "-" : "+", std::abs(z.imag()));
}

std::string csv_field(std::string_view s)
{
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string csv_row(const std::vector<std::string>& fields)
{
    std::string out;
    for (std::size_t k = 0; k < fields.size(); ++k) {
        if (k) out.push_back(',');
        out += csv_field(fields[k]);
    }
    out += "\r\n";
    return out;
}

int exit_code(ErrorCode c) noexcept
{
    switch (c) {
    case ErrorCode::ParseError: return Parse;
    case ErrorCode::NonConvergent:
    case ErrorCode::SingularGram:
    case ErrorCode::DerivOrderTooHigh: return Numerical;
    default: return InvalidInput;
    }
}

}  // namespace wdvv::cli
