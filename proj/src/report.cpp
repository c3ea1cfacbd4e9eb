#include "exes/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "exes/errors.hpp"

#ifndef EXES_LAB_VERSION
#define EXES_LAB_VERSION "0.0.0"
#endif

namespace exes {

using nlohmann::json;

std::string_view code_version() { return EXES_LAB_VERSION; }

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double round12(double v) { return std::stod(format_number(v)); }

namespace {

json summary_json(const Summary& s) {
    return {{"mean", round12(s.mean)}, {"se", round12(s.standard_error)}, {"n", s.n}};
}

json payoff_json(const PayoffScheme& p) {
    return {{"high_value", p.high_value}, {"low_value", p.low_value}, {"tie_value", p.tie_value}};
}

json config_without_scheduling(const ExperimentConfig& c) {
    json doc = to_json(c);
    doc.erase("parallelism");
    return doc;
}

json policy_json(const PolicyTable& p) {
    json counts = json::array();
    for (const auto& row : p.counts) {
        json r = json::array();
        for (double v : row) r.push_back(round12(v));
        counts.push_back(r);
    }
    json values = json::array();
    for (double v : p.value) values.push_back(round12(v));
    return {{"V", values}, {"C", counts}};
}

json condition_json(const ConditionRun& c) {
    json dyads = json::array();
    for (const DyadRun& d : c.dyads) {
        const DyadMetrics& m = d.metrics;
        dyads.push_back({
            {"dyad_id", d.index},
            {"seed", d.result.seed},
            {"efficiency", round12(m.efficiency)},
            {"fairness", round12(m.fairness)},
            {"stability", round12(m.stability_mean_surprisal)},
            {"tie_fraction", round12(m.tie_fraction)},
            {"reliance", round12(m.reliance)},
            {"none_counts", {d.result.none_counts[0], d.result.none_counts[1]}},
            {"final_policies", {policy_json(d.result.final_policies[0]), policy_json(d.result.final_policies[1])}},
        });
    }
    const ConditionSummary& s = c.summary;
    return {
        {"name", c.name},
        {"model", c.model},
        {"mode", to_string(c.config.mode)},
        {"variant", to_string(c.config.variant)},
        {"payoffs", payoff_json(c.config.payoffs)},
        {"rounds", c.config.effective_rounds()},
        {"config_fingerprint", config_fingerprint(c.config)},
        {"aggregates",
         {{"efficiency", summary_json(s.efficiency)},
          {"fairness", summary_json(s.fairness)},
          {"stability", summary_json(s.stability)},
          {"tie_fraction", summary_json(s.tie_fraction)},
          {"reliance", summary_json(s.reliance)},
          {"none_rate", round12(s.none_rate)}}},
        {"dyads", dyads},
    };
}

void open_for_write(std::ofstream& out, const std::filesystem::path& path) {
    out.open(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

template <typename Fn>
void write_file(const std::filesystem::path& dir, const std::string& name, std::vector<std::string>& artifacts,
                Fn&& fill) {
    std::ofstream out;
    open_for_write(out, dir / name);
    fill(out);
    out.flush();
    if (!out) {
        throw IoError("failed while writing " + (dir / name).string());
    }
    artifacts.push_back(name);
}

std::string utc_now(const char* format) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, format, &tm);
    return buf;
}

}  // namespace

json report_to_json(const ExperimentReport& report) {
    json doc;
    doc["kind"] = to_string(report.kind);
    doc["code_version"] = code_version();
    doc["config"] = config_without_scheduling(report.base);
    doc["config_fingerprint"] = config_fingerprint(report.base);
    doc["conditions"] = json::array();
    for (const ConditionRun& c : report.conditions) {
        doc["conditions"].push_back(condition_json(c));
    }
    doc["tests"] = json::array();
    for (const TestRecord& t : report.tests) {
        doc["tests"].push_back({
            {"family", t.family},
            {"metric", t.metric},
            {"groups", t.groups},
            {"method", t.result.method},
            {"statistic", round12(t.result.statistic)},
            {"p_value", round12(t.result.p_value)},
            {"n", t.result.n},
        });
    }
    if (report.kind == ExperimentKind::Benchmark) {
        json rows = json::array();
        for (const ComparisonRow& r : reference_comparison(report)) {
            rows.push_back({{"condition", r.condition},
                            {"model", r.model},
                            {"metric", r.metric},
                            {"simulated_mean", round12(r.simulated_mean)},
                            {"simulated_se", round12(r.simulated_se)},
                            {"reference_model", r.reference_model},
                            {"human", r.human},
                            {"delta", round12(r.delta)}});
        }
        doc["comparison"] = rows;
    }
    if (report.reliance_spearman) {
        doc["reliance_spearman"] = round12(*report.reliance_spearman);
    }
    return doc;
}

void write_dyads_csv(std::ostream& out, const ExperimentReport& report) {
    out << "dyad_id,condition,model,efficiency,fairness,stability,tie_fraction,reliance,none_1,none_2,seed\n";
    for (const ConditionRun& c : report.conditions) {
        for (const DyadRun& d : c.dyads) {
            const DyadMetrics& m = d.metrics;
            out << d.index << ',' << c.name << ',' << c.model << ',' << format_number(m.efficiency) << ','
                << format_number(m.fairness) << ',' << format_number(m.stability_mean_surprisal) << ','
                << format_number(m.tie_fraction) << ',' << format_number(m.reliance) << ','
                << d.result.none_counts[0] << ',' << d.result.none_counts[1] << ',' << d.result.seed << '\n';
        }
    }
}

void write_rounds_csv(std::ostream& out, const ExperimentReport& report) {
    out << "condition,dyad_id,round,mode,payoff_condition,action1,action2,category,r1,r2,duration,end\n";
    for (const ConditionRun& c : report.conditions) {
        const std::string mode(to_string(c.config.mode));
        const std::string payoff = c.config.payoffs.label();
        for (const DyadRun& d : c.dyads) {
            int round = 1;
            for (const RoundOutcome& o : d.result.outcomes) {
                out << c.name << ',' << d.index << ',' << round++ << ',' << mode << ',' << payoff << ','
                    << to_string(o.actions[0]) << ',' << to_string(o.actions[1]) << ',' << to_string(o.category)
                    << ',' << format_number(o.rewards[0]) << ',' << format_number(o.rewards[1]) << ','
                    << format_number(o.duration) << ',' << to_string(o.end) << '\n';
            }
        }
    }
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
    out << "condition,model,metric,simulated_mean,simulated_se,reference_model,human,delta\n";
    for (const ComparisonRow& r : rows) {
        out << r.condition << ',' << r.model << ',' << r.metric << ',' << format_number(r.simulated_mean) << ','
            << format_number(r.simulated_se) << ',' << format_number(r.reference_model) << ','
            << format_number(r.human) << ',' << format_number(r.delta) << '\n';
    }
}

void write_ablation_csv(std::ostream& out, const std::vector<AblationDelta>& rows) {
    out << "payoff_condition,variant,metric,full_crl_mean,ablated_mean,delta,p_value\n";
    for (const AblationDelta& r : rows) {
        out << r.payoff << ',' << r.variant << ',' << r.metric << ',' << format_number(r.full_mean) << ','
            << format_number(r.ablated_mean) << ',' << format_number(r.ablated_mean - r.full_mean) << ','
            << format_number(r.p_value) << '\n';
    }
}

void write_reliance_csv(std::ostream& out, const ExperimentReport& report) {
    out << "condition,high_value,low_value,mean_reliance,se,n\n";
    for (const ConditionRun& c : report.conditions) {
        const Summary& s = c.summary.reliance;
        out << c.name << ',' << format_number(c.config.payoffs.high_value) << ','
            << format_number(c.config.payoffs.low_value) << ',' << format_number(s.mean) << ','
            << format_number(s.standard_error) << ',' << s.n << '\n';
    }
}

std::string default_run_id(const std::string& config_hash) {
    return utc_now("%Y%m%dT%H%M%SZ") + "-" + config_hash.substr(0, 8);
}

RunManifest write_run(const ExperimentReport& report, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create run directory " + dir.string() + ": " + ec.message());
    }
    RunManifest manifest;
    manifest.run_id = dir.filename().string();
    manifest.config_hash = config_fingerprint(report.base);
    manifest.code_version = std::string(code_version());
    manifest.created_at = utc_now("%Y-%m-%dT%H:%M:%SZ");

    // Re-running into the same directory keeps the original timestamp so the
    // whole directory is rewritten byte for byte.
    const auto previous = dir / "manifest.json";
    if (std::filesystem::exists(previous)) {
        std::ifstream in(previous);
        const json old = json::parse(in, nullptr, /*allow_exceptions=*/false);
        if (old.is_object() && old.value("config_hash", "") == manifest.config_hash &&
            old.value("code_version", "") == manifest.code_version && old.value("created_at", "") != "") {
            manifest.created_at = old["created_at"].get<std::string>();
        }
    }

    auto& artifacts = manifest.artifacts;
    write_file(dir, "config.json", artifacts, [&](std::ostream& o) { o << to_json(report.base).dump(2) << '\n'; });
    write_file(dir, "report.json", artifacts, [&](std::ostream& o) { o << report_to_json(report).dump(2) << '\n'; });
    write_file(dir, "dyads.csv", artifacts, [&](std::ostream& o) { write_dyads_csv(o, report); });
    write_file(dir, "rounds.csv", artifacts, [&](std::ostream& o) { write_rounds_csv(o, report); });
    if (report.kind == ExperimentKind::Benchmark) {
        write_file(dir, "comparison.csv", artifacts,
                   [&](std::ostream& o) { write_comparison_csv(o, reference_comparison(report)); });
    }
    if (report.kind == ExperimentKind::Ablation) {
        write_file(dir, "ablation_deltas.csv", artifacts,
                   [&](std::ostream& o) { write_ablation_csv(o, ablation_deltas(report)); });
    }
    if (report.kind == ExperimentKind::Sweep) {
        write_file(dir, "reliance.csv", artifacts, [&](std::ostream& o) { write_reliance_csv(o, report); });
    }

    // The manifest goes last so its presence marks a complete run.
    const json doc{{"run_id", manifest.run_id},
                   {"config_hash", manifest.config_hash},
                   {"code_version", manifest.code_version},
                   {"created_at", manifest.created_at},
                   {"kind", to_string(report.kind)},
                   {"artifacts", manifest.artifacts}};
    std::vector<std::string> ignored;
    write_file(dir, "manifest.json", ignored, [&](std::ostream& o) { o << doc.dump(2) << '\n'; });
    return manifest;
}

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (doc.is_discarded()) {
        throw IoError(path.string() + " is not valid JSON");
    }
    return doc;
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    throw std::invalid_argument("CSV has no column '" + name + "'");
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        cells.push_back(cell);
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

}  // namespace

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read " + path.string());
    }
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) {
        throw IoError(path.string() + " is empty");
    }
    table.header = split_line(line);
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto cells = split_line(line);
        if (cells.size() != table.header.size()) {
            throw IoError(path.string() + ": row has " + std::to_string(cells.size()) + " cells, expected " +
                          std::to_string(table.header.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    return table;
}

std::vector<std::pair<std::string, std::vector<double>>> metric_by_condition(const CsvTable& dyads,
                                                                            const std::string& metric) {
    const std::size_t cond = dyads.column("condition");
    const std::size_t col = dyads.column(metric);
    std::vector<std::pair<std::string, std::vector<double>>> groups;
    for (const auto& row : dyads.rows) {
        auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) { return g.first == row[cond]; });
        if (it == groups.end()) {
            groups.emplace_back(row[cond], std::vector<double>{});
            it = groups.end() - 1;
        }
        it->second.push_back(std::stod(row[col]));
    }
    return groups;
}

}  // namespace exes
