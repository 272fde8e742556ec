// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rank_consensus/consensus.hpp"
#include "rank_consensus/correlation.hpp"
#include "rank_consensus/outliers.hpp"

namespace rank_consensus {

/**
 * `lines`: one ranking per line, comma-separated items, tie blocks in braces
 * (`a,{b,c},d`). `#` starts a comment, blank lines are skipped.
 *
 * `preflib`: `#` metadata lines, then `count: i1,i2,{i3,i4},...` rows, each
 * expanded into `count` identical rankings. `# ALTERNATIVE NAME i: name`
 * metadata renames item numeral i unless numerals are kept.
 */
enum class RankingFileFormat { lines, preflib };

enum class OutputFormat { json, csv };

[[nodiscard]] RankingFileFormat parse_file_format(std::string_view name);
[[nodiscard]] OutputFormat parse_output_format(std::string_view name);

struct ParseOptions {
    bool keep_numerals = false;  ///< preflib: do not map numerals to alternative names
};

/// Parses rankings from text. `source` names the input in error messages.
[[nodiscard]] RankingSet parse_rankings_text(std::string_view text, RankingFileFormat format,
                                             std::string_view source = "<input>", const ParseOptions& options = {});

[[nodiscard]] RankingSet parse_rankings(const std::filesystem::path& path, RankingFileFormat format,
                                        const ParseOptions& options = {});

/// Inverse of the `lines` parser.
[[nodiscard]] std::string render_lines(const RankingSet& set);
[[nodiscard]] std::string render_ranking(const Ranking& ranking);

/// q given either absolutely or as a fraction of N, mapped to ceil(fraction * N).
struct QSpec {
    std::optional<int> absolute;
    std::optional<double> fraction;

    [[nodiscard]] int resolve(std::size_t n) const;
};

/// Rounds to two decimals for display ("0.92").
[[nodiscard]] std::string display2(double value);

/// Shortest round-trip decimal form of a double.
[[nodiscard]] std::string full_precision(double value);

struct SweepPoint {
    int q = 1;
    double q_over_n = 0.0;
    double gamma = 1.0;
    double lambda = 1.0;
    double kappa1_bar = 0.0;
    double kappa2_bar = 0.0;
};

/// Scores every combination of the given q values and weights.
[[nodiscard]] std::vector<SweepPoint> sweep(const RankingSet& set, const std::vector<int>& qs,
                                            const std::vector<double>& gammas, const std::vector<double>& lambdas,
                                            const ExecutionOptions& exec = {});

struct ReportOptions {
    bool include_matrices = false;
    bool include_patterns = true;
};

[[nodiscard]] std::string emit_report(const ConsensusReport& report, OutputFormat format,
                                      const ReportOptions& options = {});
[[nodiscard]] std::string emit_patterns(const ConsensusReport& report, const RankingSet& set, OutputFormat format,
                                        bool include_matrices = false);
[[nodiscard]] std::string emit_outliers(const ConsensusReport& report, const OutlierReport& outliers,
                                        OutputFormat format, const ConsensusReport* rescored = nullptr);
[[nodiscard]] std::string emit_correlation(const PairwiseAverage& result, OutputFormat format,
                                           const std::optional<TopKParams>& params = std::nullopt);
[[nodiscard]] std::string emit_sweep(const std::vector<SweepPoint>& points, OutputFormat format);

}  // namespace rank_consensus
