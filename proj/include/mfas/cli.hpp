#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace mfas {

inline constexpr std::string_view kEngine = "mfas-cover-repair/0.1.0";

/// Runs one subcommand (validate, solve, exact, bound, repair, check, gen)
/// and returns the process exit code. Reports go to `out` as key=value
/// lines; errors and diagnostic dumps go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mfas
