#include "exes/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "exes/errors.hpp"
#include "exes/rng.hpp"

namespace exes {

std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Simulate: return "simulate";
        case ExperimentKind::Benchmark: return "benchmark";
        case ExperimentKind::Ablation: return "ablation";
        case ExperimentKind::Sweep: return "sweep";
    }
    return "?";
}

const std::vector<std::string>& metric_names() {
    static const std::vector<std::string> names{"efficiency", "fairness", "stability", "tie_fraction", "reliance"};
    return names;
}

std::vector<double> ConditionRun::column(const std::string& metric) const {
    std::vector<double> out;
    out.reserve(dyads.size());
    for (const DyadRun& d : dyads) {
        const DyadMetrics& m = d.metrics;
        if (metric == "efficiency") out.push_back(m.efficiency);
        else if (metric == "fairness") out.push_back(m.fairness);
        else if (metric == "stability") out.push_back(m.stability_mean_surprisal);
        else if (metric == "tie_fraction") out.push_back(m.tie_fraction);
        else if (metric == "reliance") out.push_back(m.reliance);
        else throw std::invalid_argument("unknown metric '" + metric + "'");
    }
    return out;
}

const ConditionRun& ExperimentReport::condition(const std::string& name) const {
    for (const ConditionRun& c : conditions) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::invalid_argument("report has no condition '" + name + "'");
}

std::string condition_name(const ExperimentConfig& config) {
    std::string name = std::string(to_string(config.mode)) + "-" + config.payoffs.label();
    const AgentVariant usual = config.mode == Mode::Ballistic ? AgentVariant::AdaptiveOnly : AgentVariant::FullCRL;
    if (config.variant != usual) {
        name += "-" + std::string(to_string(config.variant));
    }
    return name;
}

DyadRun run_dyad(const ExperimentConfig& config, const std::string& name, int index) {
    DyadRun run;
    run.index = index;
    run.result = play_dyad(config, derive_dyad_seed(config.master_seed, name, static_cast<std::uint64_t>(index)));
    run.metrics = compute_metrics(run.result, config.payoffs, config.fairness);
    return run;
}

ConditionSummary summarize(const std::vector<DyadRun>& dyads) {
    std::vector<double> e, f, s, t, r;
    double nones = 0.0;
    double agent_rounds = 0.0;
    for (const DyadRun& d : dyads) {
        e.push_back(d.metrics.efficiency);
        f.push_back(d.metrics.fairness);
        s.push_back(d.metrics.stability_mean_surprisal);
        t.push_back(d.metrics.tie_fraction);
        r.push_back(d.metrics.reliance);
        nones += d.result.none_counts[0] + d.result.none_counts[1];
        agent_rounds += 2.0 * static_cast<double>(d.result.outcomes.size());
    }
    ConditionSummary out;
    out.efficiency = describe(e);
    out.fairness = describe(f);
    out.stability = describe(s);
    out.tie_fraction = describe(t);
    out.reliance = describe(r);
    out.none_rate = agent_rounds > 0.0 ? nones / agent_rounds : 0.0;
    return out;
}

ConditionRun run_condition(const std::string& name, const std::string& model, const ExperimentConfig& config) {
    config.validate();
    ConditionRun run;
    run.name = name;
    run.model = model;
    run.config = config;
    run.dyads.resize(static_cast<std::size_t>(config.dyads));

    const int workers = std::min(config.parallelism, config.dyads);
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (int i = next++; i < config.dyads; i = next++) {
            try {
                run.dyads[static_cast<std::size_t>(i)] = run_dyad(config, name, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    run.summary = summarize(run.dyads);
    return run;
}

namespace {

const std::vector<std::string> kScoreMetrics{"efficiency", "fairness", "stability"};

PayoffScheme payoff(double high, double low) {
    PayoffScheme p;
    p.high_value = high;
    p.low_value = low;
    return p;
}

ExperimentConfig variant_of(const ExperimentConfig& base, Mode mode, const PayoffScheme& pay, AgentVariant v) {
    ExperimentConfig c = base;
    c.mode = mode;
    c.payoffs = pay;
    c.variant = v;
    return c;
}

TestRecord kw_record(const ExperimentReport& r, const std::string& family, const std::string& metric,
                     const std::vector<std::string>& names) {
    std::vector<std::vector<double>> groups;
    for (const std::string& n : names) {
        groups.push_back(r.condition(n).column(metric));
    }
    return {family, metric, names, kruskal_wallis(groups)};
}

TestRecord mwu_record(const ExperimentReport& r, const std::string& family, const std::string& metric,
                      const std::string& a, const std::string& b) {
    const auto xa = r.condition(a).column(metric);
    const auto xb = r.condition(b).column(metric);
    return {family, metric, {a, b}, mann_whitney_u(xa, xb)};
}

}  // namespace

ExperimentReport run_simulation(const ExperimentConfig& config) {
    ExperimentReport report;
    report.kind = ExperimentKind::Simulate;
    report.base = config;
    const std::string model = config.mode == Mode::Ballistic ? "TD-learning" : std::string(to_string(config.variant));
    report.conditions.push_back(run_condition(condition_name(config), model, config));
    return report;
}

ExperimentReport run_benchmark(const ExperimentConfig& base) {
    ExperimentReport report;
    report.kind = ExperimentKind::Benchmark;
    report.base = base;
    for (const PayoffScheme& pay : {payoff(2, 1), payoff(4, 1)}) {
        const auto ballistic = variant_of(base, Mode::Ballistic, pay, AgentVariant::AdaptiveOnly);
        const auto dynamic = variant_of(base, Mode::Dynamic, pay, AgentVariant::FullCRL);
        report.conditions.push_back(run_condition(condition_name(ballistic), "TD-learning", ballistic));
        report.conditions.push_back(run_condition(condition_name(dynamic), "CRL", dynamic));
    }

    const std::vector<std::string> all{"ballistic-low", "dynamic-low", "ballistic-high", "dynamic-high"};
    for (const std::string& metric : kScoreMetrics) {
        report.tests.push_back(kw_record(report, "all_conditions", metric, all));
        for (const std::string p : {"low", "high"}) {
            report.tests.push_back(mwu_record(report, "ballistic_vs_dynamic", metric, "ballistic-" + p, "dynamic-" + p));
        }
        for (const std::string m : {"ballistic", "dynamic"}) {
            report.tests.push_back(mwu_record(report, "high_vs_low", metric, m + "-high", m + "-low"));
        }
    }
    return report;
}

ExperimentReport run_ablation(const ExperimentConfig& base) {
    ExperimentReport report;
    report.kind = ExperimentKind::Ablation;
    report.base = base;
    const std::vector<std::pair<AgentVariant, std::string>> arms{
        {AgentVariant::FullCRL, "CRL"},
        {AgentVariant::ReactiveOnly, "Reactive-only"},
        {AgentVariant::AdaptiveOnly, "Adaptive-only"},
    };
    for (const PayoffScheme& pay : {payoff(2, 1), payoff(4, 1)}) {
        for (const auto& [variant, model] : arms) {
            const auto c = variant_of(base, Mode::Dynamic, pay, variant);
            report.conditions.push_back(run_condition(condition_name(c), model, c));
        }
    }
    for (const std::string p : {"low", "high"}) {
        const std::string full = "dynamic-" + p;
        const std::vector<std::string> names{full, full + "-reactive_only", full + "-adaptive_only"};
        for (const std::string metric : {"efficiency", "fairness", "stability", "tie_fraction"}) {
            report.tests.push_back(kw_record(report, "variants", metric, names));
            report.tests.push_back(mwu_record(report, "full_vs_ablated", metric, names[0], names[1]));
            report.tests.push_back(mwu_record(report, "full_vs_ablated", metric, names[0], names[2]));
        }
    }
    return report;
}

const std::vector<PayoffScheme>& sweep_schedule() {
    static const std::vector<PayoffScheme> schedule{payoff(1, 1),  payoff(2, 1),  payoff(4, 1),
                                                    payoff(8, 1),  payoff(16, 1), payoff(32, 1)};
    return schedule;
}

ExperimentReport run_payoff_sweep(const ExperimentConfig& base) {
    ExperimentReport report;
    report.kind = ExperimentKind::Sweep;
    report.base = base;
    std::vector<std::string> names;
    std::vector<double> ratios;
    std::vector<double> means;
    for (const PayoffScheme& pay : sweep_schedule()) {
        const auto c = variant_of(base, Mode::Dynamic, pay, AgentVariant::FullCRL);
        // Named by the explicit scheme so (2,1) and (4,1) do not collide with
        // the benchmark's "low"/"high" seed streams.
        const std::string name = "sweep-" + std::to_string(static_cast<int>(pay.high_value)) + "-" +
                                 std::to_string(static_cast<int>(pay.low_value));
        report.conditions.push_back(run_condition(name, "CRL", c));
        names.push_back(name);
        ratios.push_back(pay.high_value / pay.low_value);
        means.push_back(report.conditions.back().summary.reliance.mean);
    }
    report.tests.push_back(kw_record(report, "sweep", "reliance", names));
    report.reliance_spearman = spearman(ratios, means);
    return report;
}

const std::vector<ReferenceValue>& reference_values() {
    static const std::vector<ReferenceValue> values{
        {"ballistic-low", "efficiency", 0.45, 0.70},  {"ballistic-high", "efficiency", 0.46, 0.69},
        {"dynamic-low", "efficiency", 0.86, 0.85},    {"dynamic-high", "efficiency", 0.88, 0.84},
        {"ballistic-low", "fairness", 0.61, 0.61},    {"ballistic-high", "fairness", 0.50, 0.50},
        {"dynamic-low", "fairness", 0.69, 0.69},      {"dynamic-high", "fairness", 0.68, 0.69},
        {"ballistic-low", "stability", 1.18, 0.61},   {"ballistic-high", "stability", 1.16, 0.61},
        {"dynamic-low", "stability", 1.17, 0.61},     {"dynamic-high", "stability", 1.09, 0.56},
    };
    return values;
}

std::vector<ComparisonRow> reference_comparison(const ExperimentReport& report) {
    if (report.kind != ExperimentKind::Benchmark) {
        throw std::invalid_argument("reference comparison needs a benchmark report");
    }
    std::vector<ComparisonRow> rows;
    for (const ReferenceValue& ref : reference_values()) {
        const ConditionRun& run = report.condition(ref.condition);
        const auto values = run.column(ref.metric);
        const Summary s = describe(values);
        rows.push_back({ref.condition, run.model, ref.metric, s.mean, s.standard_error, ref.model, ref.human,
                        s.mean - ref.model});
    }
    return rows;
}

std::vector<AblationDelta> ablation_deltas(const ExperimentReport& report) {
    if (report.kind != ExperimentKind::Ablation) {
        throw std::invalid_argument("ablation deltas need an ablation report");
    }
    std::vector<AblationDelta> rows;
    for (const std::string p : {"low", "high"}) {
        const ConditionRun& full = report.condition("dynamic-" + p);
        for (const std::string v : {"reactive_only", "adaptive_only"}) {
            const ConditionRun& ablated = report.condition("dynamic-" + p + "-" + v);
            for (const std::string metric : {"efficiency", "fairness", "stability", "tie_fraction"}) {
                const auto a = full.column(metric);
                const auto b = ablated.column(metric);
                rows.push_back({p, v, metric, describe(a).mean, describe(b).mean, mann_whitney_u(a, b).p_value});
            }
        }
    }
    return rows;
}

}  // namespace exes
