#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cubadv::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitCheckFailed = 2;

inline constexpr const char* kThreadsEnv = "CUBATURE_ADVERSARY_THREADS";

/// Runs one subcommand (bound, attack, verify, gen, volume). `args` excludes
/// the program name. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Worker cap from CUBATURE_ADVERSARY_THREADS, or hardware concurrency when
/// unset. Throws InputError for a value that is not a positive integer.
unsigned thread_cap_from_env();

}  // namespace cubadv::cli
