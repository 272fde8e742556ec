// SPDX-License-Identifier: Apache-2.0

#include "rank_consensus/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "rank_consensus/errors.hpp"

namespace rank_consensus {

using Json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

class LineError {
public:
    LineError(std::string_view source, std::size_t line) : source_(source), line_(line) {}

    [[noreturn]] void fail(const std::string& message) const
    {
        throw ParseError(std::string(source_) + ":" + std::to_string(line_) + ": " + message);
    }

private:
    std::string_view source_;
    std::size_t line_;
};

/// Parses `a,{b,c},d` into tie blocks.
std::vector<std::vector<std::string>> parse_blocks(std::string_view body, const LineError& where)
{
    std::vector<std::vector<std::string>> blocks;
    std::vector<std::string> open;
    bool in_block = false;
    bool expect_item = true;  // a separator was just consumed
    std::size_t i = 0;

    auto take_token = [&](std::size_t end) {
        const auto token = trim(body.substr(i, end - i));
        if (token.empty()) {
            where.fail("empty item in '" + std::string(body) + "'");
        }
        if (in_block) {
            open.emplace_back(token);
        } else {
            blocks.push_back({std::string(token)});
        }
        i = end;
    };

    while (i < body.size()) {
        const char c = body[i];
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
        } else if (c == '{') {
            if (in_block) {
                where.fail("nested '{'");
            }
            if (!expect_item) {
                where.fail("missing ',' before '{'");
            }
            in_block = true;
            expect_item = true;
            ++i;
        } else if (c == '}') {
            if (!in_block) {
                where.fail("unmatched '}'");
            }
            if (expect_item) {
                where.fail(open.empty() ? "empty tie block" : "trailing ',' in tie block");
            }
            blocks.push_back(std::move(open));
            open.clear();
            in_block = false;
            ++i;
        } else if (c == ',') {
            if (expect_item) {
                where.fail("empty item in '" + std::string(body) + "'");
            }
            expect_item = true;
            ++i;
        } else {
            if (!expect_item) {
                where.fail("missing ',' between items");
            }
            std::size_t end = i;
            while (end < body.size() && body[end] != ',' && body[end] != '{' && body[end] != '}') {
                ++end;
            }
            take_token(end);
            expect_item = false;
        }
    }
    if (in_block) {
        where.fail("unclosed '{'");
    }
    if (blocks.empty()) {
        where.fail("empty ranking");
    }
    if (expect_item) {
        where.fail("trailing ','");
    }
    return blocks;
}

Ranking make_ranking(const std::vector<std::vector<std::string>>& blocks, const LineError& where,
                     const std::map<std::string, std::string>* names = nullptr)
{
    std::vector<TieBlock> out;
    out.reserve(blocks.size());
    for (const auto& block : blocks) {
        TieBlock items;
        for (const auto& token : block) {
            if (names) {
                if (const auto it = names->find(token); it != names->end()) {
                    items.emplace_back(it->second);
                    continue;
                }
            }
            items.emplace_back(token);
        }
        out.push_back(std::move(items));
    }
    try {
        return Ranking(std::move(out));
    } catch (const ParseError& e) {
        where.fail(e.what());
    }
}

RankingSet parse_lines(std::string_view text, std::string_view source)
{
    std::vector<Ranking> rankings;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        std::string_view body = line;
        if (const auto hash = body.find('#'); hash != std::string_view::npos) {
            body = body.substr(0, hash);
        }
        body = trim(body);
        if (body.empty()) {
            continue;
        }
        const LineError where(source, number);
        rankings.push_back(make_ranking(parse_blocks(body, where), where));
    }
    if (rankings.empty()) {
        throw ParseError(std::string(source) + ": no rankings found");
    }
    return RankingSet(std::move(rankings));
}

RankingSet parse_preflib(std::string_view text, std::string_view source, const ParseOptions& options)
{
    struct Row {
        std::size_t line;
        std::size_t count;
        std::vector<std::vector<std::string>> blocks;
    };
    std::map<std::string, std::string> names;
    std::vector<Row> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    constexpr std::string_view kAlternative = "ALTERNATIVE NAME";
    while (std::getline(in, line)) {
        ++number;
        const auto body = trim(line);
        if (body.empty()) {
            continue;
        }
        const LineError where(source, number);
        if (body.front() == '#') {
            const auto meta = trim(body.substr(1));
            if (meta.starts_with(kAlternative)) {
                const auto rest = meta.substr(kAlternative.size());
                const auto colon = rest.find(':');
                if (colon == std::string_view::npos) {
                    where.fail("malformed ALTERNATIVE NAME line");
                }
                const auto numeral = trim(rest.substr(0, colon));
                const auto name = trim(rest.substr(colon + 1));
                if (numeral.empty() || name.empty()) {
                    where.fail("malformed ALTERNATIVE NAME line");
                }
                names[std::string(numeral)] = std::string(name);
            }
            continue;
        }
        const auto colon = body.find(':');
        if (colon == std::string_view::npos) {
            where.fail("expected 'count: ranking'");
        }
        const auto count_text = trim(body.substr(0, colon));
        std::size_t count = 0;
        const auto [ptr, ec] = std::from_chars(count_text.data(), count_text.data() + count_text.size(), count);
        if (ec != std::errc{} || ptr != count_text.data() + count_text.size()) {
            where.fail("invalid count '" + std::string(count_text) + "'");
        }
        if (count == 0) {
            where.fail("zero count row");
        }
        rows.push_back(Row{number, count, parse_blocks(trim(body.substr(colon + 1)), where)});
    }
    if (rows.empty()) {
        throw ParseError(std::string(source) + ": no rankings found");
    }
    const auto* mapping = options.keep_numerals || names.empty() ? nullptr : &names;
    std::vector<Ranking> rankings;
    for (const auto& row : rows) {
        const Ranking ranking = make_ranking(row.blocks, LineError(source, row.line), mapping);
        rankings.insert(rankings.end(), row.count, ranking);
    }
    return RankingSet(std::move(rankings));
}

Json display_pair(double k1, double k2) { return Json{{"kappa1", display2(k1)}, {"kappa2", display2(k2)}}; }

Json params_json(const ScoreParams& p)
{
    return Json{{"q", p.q}, {"gamma", p.gamma}, {"lambda", p.lambda}};
}

Json overall_json(const ConsensusReport& r)
{
    return Json{{"kappa1", r.kappa1_bar}, {"kappa2", r.kappa2_bar}, {"display", display_pair(r.kappa1_bar, r.kappa2_bar)}};
}

Json singles_json(const std::set<ItemId>& items)
{
    Json out = Json::array();
    for (const auto& item : items) {
        out.push_back(item.token());
    }
    return out;
}

Json pairs_json(const std::set<ItemPair>& pairs)
{
    Json out = Json::array();
    for (const auto& [x, y] : pairs) {
        out.push_back(Json::array({x.token(), y.token()}));
    }
    return out;
}

Json matrices_json(const ConsensusReport& report, const RankingSet* set)
{
    Json out = Json::array();
    for (const auto& a : report.matrices) {
        Json rows = Json::array();
        for (Eigen::Index j = 0; j < a.dim(); ++j) {
            Json row = Json::array();
            for (Eigen::Index i = 0; i < a.dim(); ++i) {
                row.push_back(a.entries(j, i));
            }
            rows.push_back(std::move(row));
        }
        Json entry{{"index", a.owner + 1}};
        if (set) {
            Json items = Json::array();
            for (const auto& item : set->at(a.owner).items()) {
                items.push_back(item.token());
            }
            entry["items"] = std::move(items);
        }
        entry["rows"] = std::move(rows);
        out.push_back(std::move(entry));
    }
    return out;
}

Json ranking_json(std::size_t l, const RankingScore& s)
{
    return Json{{"index", l + 1},      {"m", s.n1},
                {"kappa1", s.kappa1},  {"kappa2", s.kappa2},
                {"display", display_pair(s.kappa1, s.kappa2)}, {"singleton", s.singleton}};
}

Json report_json(const ConsensusReport& report, const ReportOptions& options)
{
    Json out{{"params", params_json(report.params)}, {"n_rankings", report.per_ranking.size()}};
    out["overall"] = overall_json(report);
    Json rankings = Json::array();
    for (std::size_t l = 0; l < report.per_ranking.size(); ++l) {
        rankings.push_back(ranking_json(l, report.per_ranking[l]));
    }
    out["rankings"] = std::move(rankings);
    if (options.include_patterns) {
        out["patterns"] = Json{{"singles", singles_json(report.sets.singles)}, {"pairs", pairs_json(report.sets.pairs)}};
    }
    if (options.include_matrices) {
        out["matrices"] = matrices_json(report, nullptr);
    }
    return out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    }
    return out + "\"";
}

}  // namespace

RankingFileFormat parse_file_format(std::string_view name)
{
    if (name == "lines") return RankingFileFormat::lines;
    if (name == "preflib") return RankingFileFormat::preflib;
    throw ParameterError("unknown input format '" + std::string(name) + "'");
}

OutputFormat parse_output_format(std::string_view name)
{
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw ParameterError("unknown output format '" + std::string(name) + "'");
}

RankingSet parse_rankings_text(std::string_view text, RankingFileFormat format, std::string_view source,
                               const ParseOptions& options)
{
    return format == RankingFileFormat::lines ? parse_lines(text, source) : parse_preflib(text, source, options);
}

RankingSet parse_rankings(const std::filesystem::path& path, RankingFileFormat format, const ParseOptions& options)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ParseError("cannot read '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_rankings_text(buffer.str(), format, path.string(), options);
}

std::string render_ranking(const Ranking& ranking)
{
    std::string out;
    for (const auto& block : ranking.blocks()) {
        if (!out.empty()) {
            out += ',';
        }
        if (block.size() == 1) {
            out += block.front().token();
            continue;
        }
        out += '{';
        for (std::size_t i = 0; i < block.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += block[i].token();
        }
        out += '}';
    }
    return out;
}

std::string render_lines(const RankingSet& set)
{
    std::string out;
    for (const auto& ranking : set.rankings()) {
        out += render_ranking(ranking);
        out += '\n';
    }
    return out;
}

int QSpec::resolve(std::size_t n) const
{
    if (absolute && fraction) {
        throw ParameterError("give either an absolute q or a fraction of N, not both");
    }
    if (absolute) {
        if (*absolute < 1 || static_cast<std::size_t>(*absolute) > n) {
            throw ParameterError("q must lie in [1, " + std::to_string(n) + "], got " + std::to_string(*absolute));
        }
        return *absolute;
    }
    const double f = fraction.value_or(0.5);
    if (!(f > 0.0 && f <= 1.0)) {
        throw ParameterError("q fraction must lie in (0, 1], got " + full_precision(f));
    }
    const auto q = static_cast<int>(std::ceil(f * static_cast<double>(n) - 1e-9));
    return std::clamp(q, 1, static_cast<int>(n));
}

std::string display2(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    std::string out = buf;
    if (out == "-0.00") {
        out = "0.00";
    }
    return out;
}

std::string full_precision(double value)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

std::vector<SweepPoint> sweep(const RankingSet& set, const std::vector<int>& qs, const std::vector<double>& gammas,
                              const std::vector<double>& lambdas, const ExecutionOptions& exec)
{
    std::vector<SweepPoint> points;
    for (const int q : qs) {
        for (const double gamma : gammas) {
            for (const double lambda : lambdas) {
                const auto report = score(set, ScoreParams{q, gamma, lambda}, exec);
                points.push_back(SweepPoint{q, static_cast<double>(q) / static_cast<double>(set.size()), gamma, lambda,
                                            report.kappa1_bar, report.kappa2_bar});
            }
        }
    }
    return points;
}

std::string emit_report(const ConsensusReport& report, OutputFormat format, const ReportOptions& options)
{
    if (format == OutputFormat::json) {
        return dump(report_json(report, options));
    }
    std::string out = "index,m,kappa1,kappa2,v1,v2,flagged\n";
    for (std::size_t l = 0; l < report.per_ranking.size(); ++l) {
        const auto& s = report.per_ranking[l];
        out += std::to_string(l + 1) + "," + std::to_string(s.n1) + "," + full_precision(s.kappa1) + "," +
               full_precision(s.kappa2) + ",,,\n";
    }
    return out;
}

std::string emit_patterns(const ConsensusReport& report, const RankingSet& set, OutputFormat format,
                          bool include_matrices)
{
    if (format == OutputFormat::json) {
        Json out{{"params", params_json(report.params)},
                 {"singles", singles_json(report.sets.singles)},
                 {"pairs", pairs_json(report.sets.pairs)}};
        Json rankings = Json::array();
        for (std::size_t l = 0; l < report.sets.per_ranking.size(); ++l) {
            const auto& mine = report.sets.per_ranking[l];
            Json singles = Json::array();
            for (const auto& item : mine.singles) {
                singles.push_back(item.token());
            }
            Json pairs = Json::array();
            for (const auto& [x, y] : mine.pairs) {
                pairs.push_back(Json::array({x.token(), y.token()}));
            }
            rankings.push_back(Json{{"index", l + 1}, {"singles", std::move(singles)}, {"pairs", std::move(pairs)}});
        }
        out["rankings"] = std::move(rankings);
        if (include_matrices) {
            out["matrices"] = matrices_json(report, &set);
        }
        return dump(out);
    }
    std::string out = "scope,index,kind,x,y\n";
    for (const auto& item : report.sets.singles) {
        out += "overall,,single," + csv_escape(item.token()) + ",\n";
    }
    for (const auto& [x, y] : report.sets.pairs) {
        out += "overall,,pair," + csv_escape(x.token()) + "," + csv_escape(y.token()) + "\n";
    }
    for (std::size_t l = 0; l < report.sets.per_ranking.size(); ++l) {
        const auto idx = std::to_string(l + 1);
        for (const auto& item : report.sets.per_ranking[l].singles) {
            out += "ranking," + idx + ",single," + csv_escape(item.token()) + ",\n";
        }
        for (const auto& [x, y] : report.sets.per_ranking[l].pairs) {
            out += "ranking," + idx + ",pair," + csv_escape(x.token()) + "," + csv_escape(y.token()) + "\n";
        }
    }
    return out;
}

std::string emit_outliers(const ConsensusReport& report, const OutlierReport& outliers, OutputFormat format,
                          const ConsensusReport* rescored)
{
    if (format == OutputFormat::csv) {
        std::string out = "index,m,kappa1,kappa2,v1,v2,flagged\n";
        for (std::size_t l = 0; l < report.per_ranking.size(); ++l) {
            const auto& s = report.per_ranking[l];
            out += std::to_string(l + 1) + "," + std::to_string(s.n1) + "," + full_precision(s.kappa1) + "," +
                   full_precision(s.kappa2) + "," + full_precision(outliers.v1[l]) + "," +
                   full_precision(outliers.v2[l]) + "," + (outliers.flags[l] ? "true" : "false") + "\n";
        }
        return out;
    }
    Json out{{"params", params_json(report.params)},
             {"thresholds", Json{{"eps1", outliers.eps1}, {"eps2", outliers.eps2}}},
             {"overall", overall_json(report)}};
    Json rankings = Json::array();
    Json flagged = Json::array();
    for (std::size_t l = 0; l < report.per_ranking.size(); ++l) {
        Json row = ranking_json(l, report.per_ranking[l]);
        row["v1"] = outliers.v1[l];
        row["v2"] = outliers.v2[l];
        row["display"]["v1"] = display2(outliers.v1[l]);
        row["display"]["v2"] = display2(outliers.v2[l]);
        row["flagged"] = static_cast<bool>(outliers.flags[l]);
        rankings.push_back(std::move(row));
        if (outliers.flags[l]) {
            flagged.push_back(l + 1);
        }
    }
    out["rankings"] = std::move(rankings);
    out["flagged"] = std::move(flagged);
    if (rescored) {
        out["rescored"] = report_json(*rescored, ReportOptions{false, false});
    }
    return dump(out);
}

std::string emit_correlation(const PairwiseAverage& result, OutputFormat format,
                             const std::optional<TopKParams>& params)
{
    if (format == OutputFormat::csv) {
        std::string out = "index,average\n";
        for (std::size_t l = 0; l < result.per_ranking.size(); ++l) {
            out += std::to_string(l + 1) + "," + full_precision(result.per_ranking[l]) + "\n";
        }
        out += "overall," + full_precision(result.overall) + "\n";
        return out;
    }
    Json out{{"measure", std::string(to_string(result.measure))}};
    if (params) {
        out["params"] = Json{{"k", params->k}, {"p", params->p}, {"ell", params->missing_position()}};
    }
    Json rankings = Json::array();
    for (std::size_t l = 0; l < result.per_ranking.size(); ++l) {
        rankings.push_back(Json{{"index", l + 1}, {"average", result.per_ranking[l]},
                                {"display", display2(result.per_ranking[l])}});
    }
    out["rankings"] = std::move(rankings);
    out["overall"] = Json{{"average", result.overall}, {"display", display2(result.overall)}};
    return dump(out);
}

std::string emit_sweep(const std::vector<SweepPoint>& points, OutputFormat format)
{
    if (format == OutputFormat::csv) {
        std::string out = "q,qOverN,gamma,lambda,kappa1bar,kappa2bar\n";
        for (const auto& p : points) {
            out += std::to_string(p.q) + "," + full_precision(p.q_over_n) + "," + full_precision(p.gamma) + "," +
                   full_precision(p.lambda) + "," + full_precision(p.kappa1_bar) + "," + full_precision(p.kappa2_bar) +
                   "\n";
        }
        return out;
    }
    Json arr = Json::array();
    for (const auto& p : points) {
        arr.push_back(Json{{"q", p.q},
                           {"qOverN", p.q_over_n},
                           {"gamma", p.gamma},
                           {"lambda", p.lambda},
                           {"kappa1bar", p.kappa1_bar},
                           {"kappa2bar", p.kappa2_bar}});
    }
    return dump(Json{{"points", std::move(arr)}});
}

}  // namespace rank_consensus
