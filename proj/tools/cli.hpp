#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lkn::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kDomain = 2;
inline constexpr int kQuadrature = 3;
inline constexpr int kSharpnessFailed = 4;

// Runs one invocation; args excludes the program name. Results go to out,
// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "inf"/"infinity" (any case) or a finite number.
double parse_exponent(const std::string& text);

}  // namespace lkn::cli
