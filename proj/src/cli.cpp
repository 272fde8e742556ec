// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "rank_consensus/consensus.hpp"
#include "rank_consensus/correlation.hpp"
#include "rank_consensus/errors.hpp"
#include "rank_consensus/io.hpp"
#include "rank_consensus/outliers.hpp"

namespace rank_consensus {

namespace {

struct InputOptions {
    std::string path;
    std::string format = "lines";
    bool keep_numerals = false;
    std::string output = "json";
};

struct ScoreOptions {
    std::optional<int> q;
    std::optional<double> q_frac;
    double gamma = 1.0;
    double lambda = 1.0;
};

void add_input_options(CLI::App& cmd, InputOptions& in)
{
    cmd.add_option("input", in.path, "Ranking file")->required();
    cmd.add_option("--format", in.format, "Input format: lines or preflib")
        ->check(CLI::IsMember({"lines", "preflib"}));
    cmd.add_flag("--keep-numerals", in.keep_numerals, "preflib: keep item numerals instead of alternative names");
    cmd.add_option("--output", in.output, "Output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
}

void add_score_options(CLI::App& cmd, ScoreOptions& s)
{
    auto* q = cmd.add_option("--q", s.q, "Absolute support threshold q");
    auto* frac = cmd.add_option("--q-frac", s.q_frac, "Support threshold as a fraction of N (default 0.5)");
    q->excludes(frac);
    cmd.add_option("--gamma", s.gamma, "Position deviation weight in (0, 1]");
    cmd.add_option("--lambda", s.lambda, "Gap deviation weight in (0, 1]");
}

RankingSet load(const InputOptions& in)
{
    return parse_rankings(in.path, parse_file_format(in.format), ParseOptions{in.keep_numerals});
}

ScoreParams resolve(const ScoreOptions& s, const RankingSet& set)
{
    ScoreParams params;
    params.q = QSpec{s.q, s.q_frac}.resolve(set.size());
    params.gamma = s.gamma;
    params.lambda = s.lambda;
    validate(params, set);
    return params;
}

double parse_double(std::string_view text)
{
    const auto t = std::string(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.size() || t.empty()) {
        throw ParameterError("not a number: '" + t + "'");
    }
    return v;
}

/// "0.5,0.7,1" or "start:stop:step".
std::vector<double> parse_grid(const std::string& spec)
{
    std::vector<double> values;
    if (spec.find(':') != std::string::npos) {
        std::vector<double> parts;
        std::stringstream in(spec);
        std::string piece;
        while (std::getline(in, piece, ':')) {
            parts.push_back(parse_double(piece));
        }
        if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
            throw ParameterError("range must be start:stop:step with step > 0 and stop >= start, got '" + spec + "'");
        }
        const auto steps = static_cast<long>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
        for (long i = 0; i <= steps; ++i) {
            values.push_back(std::min(parts[1], parts[0] + static_cast<double>(i) * parts[2]));
        }
        return values;
    }
    std::stringstream in(spec);
    std::string piece;
    while (std::getline(in, piece, ',')) {
        values.push_back(parse_double(piece));
    }
    if (values.empty()) {
        throw ParameterError("empty value list");
    }
    return values;
}

void emit(std::ostream& out, const std::string& text) { out << text; }

}  // namespace

unsigned threads_from_environment()
{
    const char* raw = std::getenv("RANK_CONSENSUS_THREADS");
    if (raw == nullptr || *raw == '\0') {
        return 0;
    }
    unsigned value = 0;
    const std::string_view text(raw);
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParameterError("RANK_CONSENSUS_THREADS must be a non-negative integer, got '" + std::string(text) + "'");
    }
    return value;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Consensus of rankings from q-support patterns", "rank-consensus"};
    app.require_subcommand(1);

    InputOptions in;
    ScoreOptions so;

    auto* score_cmd = app.add_subcommand("score", "Individual and overall consensus scores");
    add_input_options(*score_cmd, in);
    add_score_options(*score_cmd, so);
    bool with_matrices = false;
    score_cmd->add_flag("--matrices", with_matrices, "Include the support matrices");

    auto* patterns_cmd = app.add_subcommand("patterns", "Single and pairwise q-support patterns");
    add_input_options(*patterns_cmd, in);
    add_score_options(*patterns_cmd, so);
    patterns_cmd->add_flag("--matrices", with_matrices, "Include the support matrices");

    auto* outliers_cmd = app.add_subcommand("outliers", "Flag rankings far below the overall consensus");
    add_input_options(*outliers_cmd, in);
    add_score_options(*outliers_cmd, so);
    double eps1 = kDefaultEpsilon;
    double eps2 = kDefaultEpsilon;
    bool remove = false;
    std::string q_mode = "proportional";
    outliers_cmd->add_option("--eps1", eps1, "Threshold on v1 (flag when v1 < -eps1)");
    outliers_cmd->add_option("--eps2", eps2, "Threshold on v2 (flag when v2 < -eps2)");
    outliers_cmd->add_flag("--remove", remove, "Rescore without the flagged rankings");
    outliers_cmd->add_option("--q-mode", q_mode, "q after removal: proportional or absolute")
        ->check(CLI::IsMember({"proportional", "absolute"}));

    auto* sweep_cmd = app.add_subcommand("sweep", "Overall scores over a grid of q, gamma and lambda");
    add_input_options(*sweep_cmd, in);
    std::string sweep_q;
    std::string sweep_frac;
    std::string sweep_gamma = "1";
    std::string sweep_lambda = "1";
    auto* sq = sweep_cmd->add_option("--q", sweep_q, "Absolute q values: list or start:stop:step");
    auto* sf = sweep_cmd->add_option("--q-frac", sweep_frac, "q/N values: list or start:stop:step (default 0.5:1:0.05)");
    sq->excludes(sf);
    sweep_cmd->add_option("--gamma", sweep_gamma, "gamma values: list or start:stop:step");
    sweep_cmd->add_option("--lambda", sweep_lambda, "lambda values: list or start:stop:step");

    auto* corr_cmd = app.add_subcommand("correlate", "Pairwise-average Kendall / Spearman baselines");
    add_input_options(*corr_cmd, in);
    std::string measure = "kendall";
    std::optional<std::size_t> topk;
    double penalty = 0.0;
    std::optional<double> ell;
    corr_cmd->add_option("--measure", measure, "kendall, spearman, kendall-topk or spearman-topk")
        ->check(CLI::IsMember({"kendall", "spearman", "kendall-topk", "spearman-topk"}));
    corr_cmd->add_option("--topk", topk, "List length k for the top-k measures");
    corr_cmd->add_option("--penalty", penalty, "Top-k Kendall penalty p in [0, 1]");
    corr_cmd->add_option("--ell", ell, "Top-k Spearman position for missing items (default k+1)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const ExecutionOptions exec{threads_from_environment()};
        const auto format = parse_output_format(in.output);
        const RankingSet set = load(in);

        if (score_cmd->parsed() || patterns_cmd->parsed()) {
            const auto report = score(set, resolve(so, set), exec);
            check_invariants(report);
            if (score_cmd->parsed()) {
                emit(out, emit_report(report, format, ReportOptions{with_matrices, true}));
            } else {
                emit(out, emit_patterns(report, set, format, with_matrices));
            }
        } else if (outliers_cmd->parsed()) {
            const auto params = resolve(so, set);
            const auto report = score(set, params, exec);
            check_invariants(report);
            const auto outliers = detect_outliers(report, eps1, eps2);
            std::optional<ConsensusReport> rescored;
            if (remove) {
                rescored = remove_and_rescore(set, outliers, params,
                                              q_mode == "absolute" ? QRescale::absolute : QRescale::proportional, exec);
                check_invariants(*rescored);
            }
            emit(out, emit_outliers(report, outliers, format, rescored ? &*rescored : nullptr));
        } else if (sweep_cmd->parsed()) {
            std::set<int> qs;
            if (!sweep_q.empty()) {
                for (const double v : parse_grid(sweep_q)) {
                    if (v != std::floor(v)) {
                        throw ParameterError("q values must be integers");
                    }
                    qs.insert(static_cast<int>(v));
                }
            } else {
                for (const double f : parse_grid(sweep_frac.empty() ? "0.5:1:0.05" : sweep_frac)) {
                    qs.insert(QSpec{std::nullopt, f}.resolve(set.size()));
                }
            }
            const auto points = sweep(set, std::vector<int>(qs.begin(), qs.end()), parse_grid(sweep_gamma),
                                      parse_grid(sweep_lambda), exec);
            emit(out, emit_sweep(points, format));
        } else if (corr_cmd->parsed()) {
            const Measure m = parse_measure(measure);
            std::optional<TopKParams> params;
            if (m == Measure::kendall_topk || m == Measure::spearman_topk) {
                if (!topk) {
                    throw ParameterError("--topk is required for " + measure);
                }
                params = TopKParams{*topk, penalty, ell};
            }
            emit(out, emit_correlation(pairwise_average(set, m, params), format, params));
        }
        return kExitOk;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

int cli_main(int argc, char** argv)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
        args.emplace_back(argv[i]);
    }
    return run_cli(args, std::cout, std::cerr);
}

}  // namespace rank_consensus
