#ifndef KEDLAB_CLI_HPP
#define KEDLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace kedlab::cli {

/// Exit codes: 0 all checks pass, 1 usage or domain error, 2 a
/// theory-agreement check failed.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDisagreement = 2;

/// Runs one subcommand (enumerate | check | probe | fit | validate).
/// Primary output goes to `out` (or the --out file), diagnostics to `err`.
/// Identical argument vectors produce byte-identical primary output.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace kedlab::cli

#endif
