#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stabilis/errors.hpp"

namespace stabilis {

/// Process exit codes of the `stabilis` tool.
namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verify_failed = 1;
inline constexpr int convergence = 2;  // NoConvergence, ArgumentCapExceeded
inline constexpr int hypothesis = 3;   // CriticalExponentError, DivergentSeries, RegimeError, ParityError
inline constexpr int input = 4;        // value, envelope, dimension, domain, schema and I/O errors
inline constexpr int usage = 64;
}  // namespace exit_code

int exit_code_for(const Error& e);

/// Runs one invocation. `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace stabilis
