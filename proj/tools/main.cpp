// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/cli.hpp"

int main(int argc, char** argv) { return rank_consensus::cli_main(argc, argv); }
