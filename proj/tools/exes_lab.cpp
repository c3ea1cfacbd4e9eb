// exes_lab: command-line front end for the Battle of the Exes simulations.
//
// Exit codes: 0 ok, 2 configuration or usage error, 3 I/O error,
// 4 internal invariant violation.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "exes/config.hpp"
#include "exes/errors.hpp"
#include "exes/experiments.hpp"
#include "exes/metrics.hpp"
#include "exes/plot.hpp"
#include "exes/report.hpp"
#include "exes/stats.hpp"

namespace fs = std::filesystem;
using namespace exes;

namespace {

struct GlobalOptions {
    std::string config_path;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::optional<int> parallelism;
    std::vector<std::string> overrides;
};

// Precedence, lowest first: built-in defaults, config file, --set overrides,
// EXES_LAB_SEED, then the --seed and --parallelism flags.
ExperimentConfig load_config(const GlobalOptions& g) {
    nlohmann::json doc = nlohmann::json::object();
    if (!g.config_path.empty()) {
        std::ifstream in(g.config_path, std::ios::binary);
        if (!in) {
            throw IoError("cannot read " + g.config_path);
        }
        doc = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
        if (doc.is_discarded()) {
            throw ConfigError("--config", g.config_path + " is not valid JSON");
        }
    }
    for (const std::string& o : g.overrides) {
        apply_override(doc, o);
    }
    if (const char* env = std::getenv("EXES_LAB_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (*end != '\0' || env[0] == '-') {
            throw ConfigError("EXES_LAB_SEED", "expected a non-negative integer, got '" + std::string(env) + "'");
        }
        doc["master_seed"] = v;
    }
    if (g.seed) {
        doc["master_seed"] = *g.seed;
    }
    if (g.parallelism) {
        doc["parallelism"] = *g.parallelism;
    }
    return config_from_json(doc);
}

fs::path run_directory(const GlobalOptions& g, const ExperimentConfig& config) {
    if (!g.out.empty()) {
        return g.out;
    }
    return fs::path("runs") / default_run_id(config_fingerprint(config));
}

void print_summary(const ExperimentReport& report) {
    std::printf("%-34s %-14s %17s %17s %17s %8s\n", "condition", "model", "efficiency", "fairness", "stability",
                "ties");
    for (const ConditionRun& c : report.conditions) {
        const ConditionSummary& s = c.summary;
        std::printf("%-34s %-14s %8.3f +- %5.3f %8.3f +- %5.3f %8.3f +- %5.3f %8.3f\n", c.name.c_str(),
                    c.model.c_str(), s.efficiency.mean, s.efficiency.standard_error, s.fairness.mean,
                    s.fairness.standard_error, s.stability.mean, s.stability.standard_error, s.tie_fraction.mean);
    }
    if (report.kind == ExperimentKind::Benchmark) {
        std::printf("\n%-16s %-11s %10s %8s %8s %8s\n", "condition", "metric", "simulated", "reference", "human",
                    "delta");
        for (const ComparisonRow& r : reference_comparison(report)) {
            std::printf("%-16s %-11s %10.3f %8.2f %8.2f %+8.3f\n", r.condition.c_str(), r.metric.c_str(),
                        r.simulated_mean, r.reference_model, r.human, r.delta);
        }
    }
    if (report.kind == ExperimentKind::Ablation) {
        std::printf("\n%-5s %-14s %-13s %9s %9s %9s\n", "pay", "variant", "metric", "full", "ablated", "p");
        for (const AblationDelta& d : ablation_deltas(report)) {
            std::printf("%-5s %-14s %-13s %9.3f %9.3f %9.2g\n", d.payoff.c_str(), d.variant.c_str(),
                        d.metric.c_str(), d.full_mean, d.ablated_mean, d.p_value);
        }
    }
    if (report.reliance_spearman) {
        std::printf("\nreliance Spearman rho vs payoff ratio: %.3f\n", *report.reliance_spearman);
    }
}

int run_experiment(const GlobalOptions& g, ExperimentReport (*runner)(const ExperimentConfig&)) {
    const ExperimentConfig config = load_config(g);
    const ExperimentReport report = runner(config);
    const fs::path dir = run_directory(g, config);
    write_run(report, dir);
    print_summary(report);
    std::printf("\nwrote %s\n", dir.string().c_str());
    return 0;
}

fs::path dyads_csv_of(const fs::path& target) {
    return fs::is_directory(target) ? target / "dyads.csv" : target;
}

int run_stats(const std::string& target, const std::string& metric, const std::vector<std::string>& compare) {
    const CsvTable table = read_csv(dyads_csv_of(target));
    const auto groups = metric_by_condition(table, metric);
    if (groups.empty()) {
        throw ConfigError("stats", "no dyad rows in " + target);
    }
    for (const auto& [name, values] : groups) {
        const Summary s = describe(values);
        std::printf("%-34s n=%-4zu mean=%.6g se=%.6g\n", name.c_str(), s.n, s.mean, s.standard_error);
    }
    if (groups.size() >= 2) {
        std::vector<std::vector<double>> samples;
        for (const auto& g : groups) samples.push_back(g.second);
        const StatTestResult kw = kruskal_wallis(samples);
        std::printf("kruskal_wallis H(%zu)=%.6g p=%.6g\n", groups.size() - 1, kw.statistic, kw.p_value);
    }
    if (!compare.empty()) {
        auto find = [&](const std::string& name) -> const std::vector<double>& {
            for (const auto& g : groups) {
                if (g.first == name) return g.second;
            }
            throw ConfigError("--compare", "no condition named '" + name + "'");
        };
        const StatTestResult u = mann_whitney_u(find(compare[0]), find(compare[1]));
        std::printf("%s U=%.6g p=%.6g (%s vs %s)\n", u.method.c_str(), u.statistic, u.p_value, compare[0].c_str(),
                    compare[1].c_str());
    }
    return 0;
}

void write_text(const fs::path& path, const std::string& text) {
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) {
        throw IoError("cannot write " + path.string());
    }
}

int run_plot(const std::string& run_dir, const std::string& kind, std::optional<int> dyad,
             const std::string& condition_arg, const std::string& out) {
    if (!fs::is_directory(run_dir) || !fs::exists(fs::path(run_dir) / "report.json")) {
        throw IoError("'" + run_dir + "' is not a completed run directory");
    }
    const nlohmann::json report = read_json_file(fs::path(run_dir) / "report.json");
    std::string svg;
    std::string name = kind;
    if (kind == "bars") {
        svg = bars_svg(report);
    } else if (kind == "reliance") {
        svg = reliance_svg(report);
    } else if (kind == "conventions") {
        const auto& conditions = report.at("conditions");
        std::string condition = condition_arg;
        if (condition.empty()) {
            // Prefer the high-stakes dynamic condition, the published example.
            condition = conditions.front().at("name").get<std::string>();
            for (const auto& c : conditions) {
                if (c.at("name") == "dynamic-high") condition = "dynamic-high";
            }
        }
        int count = -1;
        for (const auto& c : conditions) {
            if (c.at("name") == condition) count = static_cast<int>(c.at("dyads").size());
        }
        if (count < 0) {
            throw ConfigError("--condition", "run has no condition '" + condition + "'");
        }
        const int id = dyad.value_or(0);
        if (id < 0 || id >= count) {
            throw ConfigError("--dyad", "dyad " + std::to_string(id) + " out of range; valid ids are 0.." +
                                            std::to_string(count - 1) + " for " + condition);
        }
        const CsvTable rounds = read_csv(fs::path(run_dir) / "rounds.csv");
        const std::size_t c_cond = rounds.column("condition");
        const std::size_t c_dyad = rounds.column("dyad_id");
        const std::size_t c_cat = rounds.column("category");
        std::vector<Category> outcomes;
        for (const auto& row : rounds.rows) {
            if (row[c_cond] != condition || std::stoi(row[c_dyad]) != id) continue;
            const std::string& cat = row[c_cat];
            outcomes.push_back(cat == "p1_high" ? Category::P1High : cat == "p2_high" ? Category::P2High : Category::Tie);
        }
        svg = conventions_svg(outcomes, condition + ", dyad " + std::to_string(id));
        name = "conventions-" + condition + "-" + std::to_string(id);
    } else {
        throw ConfigError("--kind", "unknown plot kind '" + kind + "' (bars | conventions | reliance)");
    }
    const fs::path path = out.empty() ? fs::path(run_dir) / "plots" / (name + ".svg") : fs::path(out);
    write_text(path, svg);
    std::printf("wrote %s\n", path.string().c_str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Battle of the Exes simulation lab"};
    app.require_subcommand(1);
    GlobalOptions g;
    app.add_option("--config", g.config_path, "JSON config file")->check(CLI::ExistingFile);
    app.add_option("--out", g.out, "output directory (or SVG path for plot)");
    app.add_option("--seed", g.seed, "master seed, overrides config and EXES_LAB_SEED");
    app.add_option("--parallelism", g.parallelism, "worker threads for dyads")->check(CLI::PositiveNumber);
    app.add_option("--set", g.overrides, "dotted key=value config override (repeatable)");

    auto* simulate = app.add_subcommand("simulate", "run the configured condition");
    auto* benchmark = app.add_subcommand("benchmark", "2x2 ballistic/dynamic x low/high benchmark");
    auto* ablation = app.add_subcommand("ablation", "reactive-only and adaptive-only ablations");
    auto* sweep = app.add_subcommand("sweep", "payoff sweep from 1-1 to 32-1");

    auto* stats = app.add_subcommand("stats", "tests on the per-dyad metrics of a saved run");
    std::string stats_target;
    std::string stats_metric = "efficiency";
    std::vector<std::string> compare;
    stats->add_option("run", stats_target, "run directory or dyads.csv")->required();
    stats->add_option("--metric", stats_metric, "efficiency | fairness | stability | tie_fraction | reliance");
    stats->add_option("--compare", compare, "two condition names for a Mann-Whitney U test")->expected(2);

    auto* plot = app.add_subcommand("plot", "SVG figures from a saved run");
    std::string plot_run;
    std::string plot_kind = "bars";
    std::optional<int> plot_dyad;
    std::string plot_condition;
    plot->add_option("run", plot_run, "run directory")->required();
    plot->add_option("--kind", plot_kind, "bars | conventions | reliance");
    plot->add_option("--dyad", plot_dyad, "dyad id for conventions");
    plot->add_option("--condition", plot_condition, "condition for conventions (default dynamic-high)");

    for (auto* sub : {simulate, benchmark, ablation, sweep, stats, plot}) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*simulate) return run_experiment(g, run_simulation);
        if (*benchmark) return run_experiment(g, run_benchmark);
        if (*ablation) return run_experiment(g, run_ablation);
        if (*sweep) return run_experiment(g, run_payoff_sweep);
        if (*stats) return run_stats(stats_target, stats_metric, compare);
        if (*plot) return run_plot(plot_run, plot_kind, plot_dyad, plot_condition, g.out);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "i/o error: %s\n", e.what());
        return 3;
    } catch (const InvariantError& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 4;
    }
    return 2;
}
