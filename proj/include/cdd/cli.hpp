#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cdd::cli {

// Exit statuses are a stable contract.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 2;  // validation, parse and cap errors
inline constexpr int kInfeasibleSeed = 3;
inline constexpr int kCertificateFailed = 4;
inline constexpr int kDisagreement = 5;

// args excludes the program name. Human and JSON output never share a run.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cdd::cli
