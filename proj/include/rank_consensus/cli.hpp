// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rank_consensus {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInternal = 2;

/// Runs the command line `args` (without the program name) against the given streams.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cli_main(int argc, char** argv);

/// Thread count from RANK_CONSENSUS_THREADS (0 or unset means hardware concurrency).
unsigned threads_from_environment();

}  // namespace rank_consensus
