#pragma once

#include <span>
#include <vector>

#include "exes/config.hpp"
#include "exes/game.hpp"

namespace exes {

/// Coordination scores of one dyad: efficiency, fairness and stability
/// (mean surprisal, lower is more stable).
struct DyadMetrics {
    double efficiency = 0.0;
    double fairness = 0.0;
    double stability_mean_surprisal = 0.0;
    std::vector<double> surprisal_series;
    double tie_fraction = 0.0;
    double reliance = 0.0;  // mean over both agents of non-None action share
};

/// Collective reward over the maximum attainable, rounds * (high + low).
/// Throws std::invalid_argument on an empty dyad.
double efficiency(const DyadResult& dyad, const PayoffScheme& payoffs);

/// Balance of high-reward wins between the two players; 1 when neither won.
double fairness(const DyadResult& dyad, FairnessMethod method = FairnessMethod::L1);
double fairness_from_counts(int p1_high, int p2_high, FairnessMethod method = FairnessMethod::L1);

/// Per-round surprisal -ln p_t, with p_t the add-one smoothed frequency of
/// round t's outcome category over rounds 1..t-1.
std::vector<double> surprisal_series(std::span<const Category> categories);
std::vector<double> surprisal_series(const DyadResult& dyad);

double tie_fraction(const DyadResult& dyad);

/// Share of rounds in which the agent chose GoHigh or GoLow.
double adaptive_reliance(const DyadResult& dyad, int agent_index);

DyadMetrics compute_metrics(const DyadResult& dyad, const PayoffScheme& payoffs,
                            FairnessMethod method = FairnessMethod::L1);

std::vector<Category> categories_of(const DyadResult& dyad);

}  // namespace exes
