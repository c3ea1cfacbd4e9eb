#include "exes/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace exes {

double efficiency(const DyadResult& dyad, const PayoffScheme& payoffs) {
    if (dyad.outcomes.empty()) {
        throw std::invalid_argument("efficiency of an empty dyad");
    }
    double earned = 0.0;
    for (const RoundOutcome& o : dyad.outcomes) {
        earned += o.rewards[0] + o.rewards[1];
    }
    const double possible = static_cast<double>(dyad.outcomes.size()) * (payoffs.high_value + payoffs.low_value);
    return earned / possible;
}

double fairness_from_counts(int p1_high, int p2_high, FairnessMethod method) {
    const int total = p1_high + p2_high;
    if (total == 0) {
        return 1.0;
    }
    if (method == FairnessMethod::MinMax) {
        return static_cast<double>(std::min(p1_high, p2_high)) / static_cast<double>(std::max(p1_high, p2_high));
    }
    return 1.0 - static_cast<double>(std::abs(p1_high - p2_high)) / static_cast<double>(total);
}

double fairness(const DyadResult& dyad, FairnessMethod method) {
    int n1 = 0;
    int n2 = 0;
    for (const RoundOutcome& o : dyad.outcomes) {
        n1 += o.category == Category::P1High;
        n2 += o.category == Category::P2High;
    }
    return fairness_from_counts(n1, n2, method);
}

std::vector<double> surprisal_series(std::span<const Category> categories) {
    std::array<int, 3> seen{};
    std::vector<double> out;
    out.reserve(categories.size());
    for (std::size_t t = 0; t < categories.size(); ++t) {
        const auto c = static_cast<std::size_t>(categories[t]);
        const double p = (seen[c] + 1.0) / (static_cast<double>(t) + 3.0);
        out.push_back(-std::log(p));
        ++seen[c];
    }
    return out;
}

std::vector<Category> categories_of(const DyadResult& dyad) {
    std::vector<Category> cats;
    cats.reserve(dyad.outcomes.size());
    for (const RoundOutcome& o : dyad.outcomes) {
        cats.push_back(o.category);
    }
    return cats;
}

std::vector<double> surprisal_series(const DyadResult& dyad) { return surprisal_series(categories_of(dyad)); }

double tie_fraction(const DyadResult& dyad) {
    if (dyad.outcomes.empty()) {
        return 0.0;
    }
    const auto ties = std::count_if(dyad.outcomes.begin(), dyad.outcomes.end(),
                                    [](const RoundOutcome& o) { return o.category == Category::Tie; });
    return static_cast<double>(ties) / static_cast<double>(dyad.outcomes.size());
}

double adaptive_reliance(const DyadResult& dyad, int agent_index) {
    if (dyad.outcomes.empty()) {
        return 0.0;
    }
    const double rounds = static_cast<double>(dyad.outcomes.size());
    return (rounds - dyad.none_counts.at(static_cast<std::size_t>(agent_index))) / rounds;
}

DyadMetrics compute_metrics(const DyadResult& dyad, const PayoffScheme& payoffs, FairnessMethod method) {
    DyadMetrics m;
    m.efficiency = efficiency(dyad, payoffs);
    m.fairness = fairness(dyad, method);
    m.surprisal_series = surprisal_series(dyad);
    m.stability_mean_surprisal =
        std::accumulate(m.surprisal_series.begin(), m.surprisal_series.end(), 0.0) /
        static_cast<double>(m.surprisal_series.size());
    m.tie_fraction = tie_fraction(dyad);
    m.reliance = 0.5 * (adaptive_reliance(dyad, 0) + adaptive_reliance(dyad, 1));
    return m;
}

}  // namespace exes
