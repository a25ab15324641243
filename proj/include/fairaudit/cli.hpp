#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace fairaudit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;

/// Runs `evaluate-prob | evaluate-score | evaluate-bin` with the given
/// arguments (program name excluded). Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace fairaudit::cli
