#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace xizeros::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerification = 4;

inline constexpr int kDefaultDigits = 30;
inline constexpr int kMinDigits = 15;
inline constexpr int kMaxDigits = 200;

/// Runs one subcommand. `args` excludes the program name. Data goes to `out`
/// (or the --out file), diagnostics to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xizeros::cli
