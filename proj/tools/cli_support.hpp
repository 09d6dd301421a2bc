#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wdvv/hurwitz.hpp"
#include "wdvv/types.hpp"

namespace wdvv::cli {

enum Exit : int { Ok = 0, Failed = 1, Parse = 2, InvalidInput = 3, Numerical = 4 };

// "a+bi", "a-bi", "bi", "i", "-i", "a", or a JSON pair "[a,b]".
cplx parse_complex(std::string_view text);
// "1", "1,0", "(1,0)" or "[1,0]".
BranchProfile parse_profile(std::string_view text);

// 17 significant digits.
std::string format_double(double x);
std::string format_complex(cplx z);

// RFC 4180 field quoting.
std::string csv_field(std::string_view s);
std::string csv_row(const std::vector<std::string>& fields);

int exit_code(ErrorCode c) noexcept;

}  // namespace wdvv::cli
