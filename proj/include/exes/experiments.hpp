#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exes/config.hpp"
#include "exes/game.hpp"
#include "exes/metrics.hpp"
#include "exes/stats.hpp"

namespace exes {

struct DyadRun {
    int index = 0;
    DyadResult result;
    DyadMetrics metrics;
};

struct ConditionSummary {
    Summary efficiency;
    Summary fairness;
    Summary stability;
    Summary tie_fraction;
    Summary reliance;
    double none_rate = 0.0;  // None actions over all agent-rounds
};

struct ConditionRun {
    std::string name;   // e.g. "dynamic-high", also the seed-derivation key
    std::string model;  // display label, e.g. "CRL" or "TD-learning"
    ExperimentConfig config;
    std::vector<DyadRun> dyads;
    ConditionSummary summary;

    /// Per-dyad values of one metric: efficiency, fairness, stability,
    /// tie_fraction or reliance.
    [[nodiscard]] std::vector<double> column(const std::string& metric) const;
};

struct TestRecord {
    std::string family;  // what question the test answers
    std::string metric;
    std::vector<std::string> groups;
    StatTestResult result;
};

enum class ExperimentKind { Simulate, Benchmark, Ablation, Sweep };
std::string_view to_string(ExperimentKind k);

struct ExperimentReport {
    ExperimentKind kind = ExperimentKind::Simulate;
    ExperimentConfig base;
    std::vector<ConditionRun> conditions;
    std::vector<TestRecord> tests;
    std::optional<double> reliance_spearman;  // sweep only

    [[nodiscard]] const ConditionRun& condition(const std::string& name) const;
};

/// Metric names accepted by ConditionRun::column.
const std::vector<std::string>& metric_names();

/// Seed key of a single condition: "<mode>-<payoff label>", with the variant
/// appended when it is not the usual one for the mode.
std::string condition_name(const ExperimentConfig& config);

/// One dyad of a condition; a pure function of (config, name, index).
DyadRun run_dyad(const ExperimentConfig& config, const std::string& name, int index);

/// All dyads of one condition, using up to config.parallelism threads.
/// The result is ordered by dyad index whatever the scheduling.
ConditionRun run_condition(const std::string& name, const std::string& model, const ExperimentConfig& config);

ConditionSummary summarize(const std::vector<DyadRun>& dyads);

ExperimentReport run_simulation(const ExperimentConfig& config);
ExperimentReport run_benchmark(const ExperimentConfig& base);
ExperimentReport run_ablation(const ExperimentConfig& base);
ExperimentReport run_payoff_sweep(const ExperimentConfig& base);

/// The sweep's payoff schedule, (1,1) through (32,1).
const std::vector<PayoffScheme>& sweep_schedule();

struct ReferenceValue {
    std::string condition;
    std::string metric;
    double model = 0.0;  // published model mean
    double human = 0.0;  // published human mean
};

/// Published means for the four benchmark conditions.
const std::vector<ReferenceValue>& reference_values();

struct ComparisonRow {
    std::string condition;
    std::string model;
    std::string metric;
    double simulated_mean = 0.0;
    double simulated_se = 0.0;
    double reference_model = 0.0;
    double human = 0.0;
    double delta = 0.0;  // simulated - reference model
};

/// Joins a benchmark report with the published means. Throws
/// std::invalid_argument for any other report shape.
std::vector<ComparisonRow> reference_comparison(const ExperimentReport& report);

struct AblationDelta {
    std::string payoff;
    std::string variant;
    std::string metric;
    double full_mean = 0.0;
    double ablated_mean = 0.0;
    double p_value = 1.0;
};

/// Full CRL against each ablated variant, per payoff condition and metric.
std::vector<AblationDelta> ablation_deltas(const ExperimentReport& report);

}  // namespace exes
