#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "exes/experiments.hpp"
#include "exes/report.hpp"
#include "exes/rng.hpp"

using namespace exes;

namespace {

ExperimentConfig small(int dyads = 6) {
    ExperimentConfig c;
    c.dyads = dyads;
    c.rounds = 20;
    c.master_seed = 1234;
    return c;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("dyad seeds depend only on master seed, condition and index") {
    const auto s = derive_dyad_seed(7, "dynamic-high", 3);
    CHECK(s == derive_dyad_seed(7, "dynamic-high", 3));
    CHECK(s != derive_dyad_seed(7, "dynamic-high", 4));
    CHECK(s != derive_dyad_seed(7, "dynamic-low", 3));
    CHECK(s != derive_dyad_seed(8, "dynamic-high", 3));
}

TEST_CASE("condition names") {
    ExperimentConfig c;
    c.payoffs = {4, 1, 0};
    CHECK(condition_name(c) == "dynamic-high");
    c.variant = AgentVariant::ReactiveOnly;
    CHECK(condition_name(c) == "dynamic-high-reactive_only");
    c.mode = Mode::Ballistic;
    c.variant = AgentVariant::AdaptiveOnly;
    c.payoffs = {2, 1, 0};
    CHECK(condition_name(c) == "ballistic-low");
}

TEST_CASE("scheduling does not change any dyad") {
    ExperimentConfig serial = small(8);
    ExperimentConfig threaded = serial;
    threaded.parallelism = 4;
    const ConditionRun a = run_condition("dynamic-high", "CRL", serial);
    const ConditionRun b = run_condition("dynamic-high", "CRL", threaded);
    REQUIRE(a.dyads.size() == b.dyads.size());
    for (std::size_t i = 0; i < a.dyads.size(); ++i) {
        CHECK(a.dyads[i].index == static_cast<int>(i));
        CHECK(a.dyads[i].metrics.efficiency == b.dyads[i].metrics.efficiency);
        CHECK(a.dyads[i].result.final_policies == b.dyads[i].result.final_policies);
    }

    // Running dyads one at a time in reverse order gives the same rows.
    for (int i = static_cast<int>(a.dyads.size()) - 1; i >= 0; --i) {
        const DyadRun d = run_dyad(serial, "dynamic-high", i);
        CHECK(d.result.seed == a.dyads[static_cast<std::size_t>(i)].result.seed);
        CHECK(d.metrics.stability_mean_surprisal ==
              a.dyads[static_cast<std::size_t>(i)].metrics.stability_mean_surprisal);
    }
}

TEST_CASE("aggregates are the mean of the per-dyad rows") {
    const ExperimentReport r = run_simulation(small());
    const ConditionRun& c = r.conditions.at(0);
    for (const std::string& m : metric_names()) {
        const auto col = c.column(m);
        double sum = 0.0;
        for (double x : col) sum += x;
        const Summary s = m == "efficiency"     ? c.summary.efficiency
                          : m == "fairness"     ? c.summary.fairness
                          : m == "stability"    ? c.summary.stability
                          : m == "tie_fraction" ? c.summary.tie_fraction
                                                : c.summary.reliance;
        CHECK(s.mean == doctest::Approx(sum / static_cast<double>(col.size())).epsilon(1e-12));
        CHECK(s.n == col.size());
    }
}

TEST_CASE("identical configs give byte-identical reports") {
    ExperimentConfig c = small(4);
    const std::string a = report_to_json(run_benchmark(c)).dump();
    c.parallelism = 3;
    const std::string b = report_to_json(run_benchmark(c)).dump();
    CHECK(a == b);
}

TEST_CASE("benchmark layout and reference join") {
    const ExperimentReport r = run_benchmark(small(4));
    REQUIRE(r.conditions.size() == 4);
    CHECK(r.condition("ballistic-low").model == "TD-learning");
    CHECK(r.condition("dynamic-high").model == "CRL");
    CHECK(r.condition("ballistic-high").config.variant == AgentVariant::AdaptiveOnly);
    CHECK(r.condition("dynamic-low").config.effective_rounds() == 20);
    CHECK_FALSE(r.tests.empty());
    CHECK(reference_comparison(r).size() == reference_values().size());
    CHECK_THROWS_AS(reference_comparison(run_simulation(small(2))), std::invalid_argument);
}

TEST_CASE("ablation and sweep shapes") {
    const ExperimentReport a = run_ablation(small(3));
    CHECK(a.conditions.size() == 6);
    CHECK_FALSE(ablation_deltas(a).empty());
    for (const auto& c : a.conditions) {
        if (c.config.variant == AgentVariant::ReactiveOnly) {
            for (const auto& d : c.dyads) CHECK(d.metrics.reliance == 0.0);
        }
    }
    const ExperimentReport s = run_payoff_sweep(small(2));
    CHECK(s.conditions.size() == sweep_schedule().size());
    CHECK(s.reliance_spearman.has_value());
}

TEST_CASE("run directory is complete and rewrites identically") {
    const auto dir = std::filesystem::temp_directory_path() / "exes_lab_test_run";
    std::filesystem::remove_all(dir);
    const ExperimentReport r = run_benchmark(small(3));
    const RunManifest m = write_run(r, dir);
    for (const char* f : {"config.json", "report.json", "dyads.csv", "rounds.csv", "comparison.csv"}) {
        CHECK(std::find(m.artifacts.begin(), m.artifacts.end(), f) != m.artifacts.end());
        CHECK(std::filesystem::exists(dir / f));
    }
    std::vector<std::string> first;
    for (const auto& f : m.artifacts) first.push_back(slurp(dir / f));
    const std::string manifest = slurp(dir / "manifest.json");

    write_run(run_benchmark(small(3)), dir);
    for (std::size_t i = 0; i < m.artifacts.size(); ++i) CHECK(slurp(dir / m.artifacts[i]) == first[i]);
    CHECK(slurp(dir / "manifest.json") == manifest);

    const CsvTable dyads = read_csv(dir / "dyads.csv");
    CHECK(dyads.rows.size() == 12);
    const auto eff = metric_by_condition(dyads, "efficiency");
    REQUIRE(eff.size() == 4);
    CHECK(eff[0].second.size() == 3);
    std::filesystem::remove_all(dir);
}

TEST_CASE("numbers are written with twelve significant digits") {
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(2.0) == "2");
    CHECK(round12(0.1 + 0.2) == 0.3);
}
