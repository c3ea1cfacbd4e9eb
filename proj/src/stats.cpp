#include "exes/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace exes {

namespace {

// Sum of t^3 - t over groups of tied values.
double tie_term(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double sum = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        const double t = static_cast<double>(j - i);
        sum += t * t * t - t;
        i = j;
    }
    return sum;
}

std::vector<double> pooled(std::span<const double> a, std::span<const double> b) {
    std::vector<double> all(a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    return all;
}

// Exact two-sided p for the rank sum of the first `n1` pooled values. Ranks
// are doubled so that mid-ranks stay integral, then a subset-sum count over
// all C(N, n1) splits gives the null distribution.
double exact_rank_sum_p(const std::vector<double>& ranks, std::size_t n1) {
    std::vector<long> doubled;
    doubled.reserve(ranks.size());
    for (double r : ranks) {
        doubled.push_back(std::lround(2.0 * r));
    }
    long observed = 0;
    for (std::size_t i = 0; i < n1; ++i) {
        observed += doubled[i];
    }
    const long max_sum = std::accumulate(doubled.begin(), doubled.end(), 0L);

    // ways[k][s]: number of k-subsets with doubled rank sum s.
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(static_cast<std::size_t>(max_sum) + 1, 0.0));
    ways[0][0] = 1.0;
    for (long r : doubled) {
        for (std::size_t k = n1; k >= 1; --k) {
            auto& dst = ways[k];
            const auto& src = ways[k - 1];
            for (long s = max_sum; s >= r; --s) {
                dst[static_cast<std::size_t>(s)] += src[static_cast<std::size_t>(s - r)];
            }
        }
    }
    const auto& dist = ways[n1];
    double total = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    for (long s = 0; s <= max_sum; ++s) {
        const double w = dist[static_cast<std::size_t>(s)];
        total += w;
        if (s <= observed) lower += w;
        if (s >= observed) upper += w;
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j < order.size() && values[order[j]] == values[order[i]]) {
            ++j;
        }
        const double rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of i+1 .. j
        for (std::size_t k = i; k < j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j;
    }
    return ranks;
}

StatTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups) {
    if (groups.size() < 2) {
        throw std::invalid_argument("kruskal_wallis needs at least two groups");
    }
    std::vector<double> all;
    StatTestResult result;
    result.method = "kruskal_wallis";
    for (const auto& g : groups) {
        if (g.empty()) {
            throw std::invalid_argument("kruskal_wallis: empty group");
        }
        all.insert(all.end(), g.begin(), g.end());
        result.n.push_back(g.size());
    }
    const double n = static_cast<double>(all.size());
    const double correction = 1.0 - tie_term(all) / (n * n * n - n);
    if (correction <= 0.0) {
        result.statistic = 0.0;
        result.p_value = 1.0;
        return result;
    }
    const std::vector<double> ranks = midranks(all);
    double sum_sq = 0.0;
    std::size_t offset = 0;
    for (const auto& g : groups) {
        const double r = std::accumulate(ranks.begin() + static_cast<std::ptrdiff_t>(offset),
                                         ranks.begin() + static_cast<std::ptrdiff_t>(offset + g.size()), 0.0);
        sum_sq += r * r / static_cast<double>(g.size());
        offset += g.size();
    }
    const double h = (12.0 / (n * (n + 1.0)) * sum_sq - 3.0 * (n + 1.0)) / correction;
    result.statistic = std::max(0.0, h);
    const double dof = static_cast<double>(groups.size() - 1);
    result.p_value = std::clamp(boost::math::gamma_q(dof / 2.0, result.statistic / 2.0), 0.0, 1.0);
    return result;
}

StatTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b, MwuMethod method) {
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("mann_whitney_u: empty sample");
    }
    const std::vector<double> all = pooled(a, b);
    const std::vector<double> ranks = midranks(all);
    const double n1 = static_cast<double>(a.size());
    const double n2 = static_cast<double>(b.size());
    const double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), 0.0);
    const double u1 = r1 - n1 * (n1 + 1.0) / 2.0;
    const double u2 = n1 * n2 - u1;

    StatTestResult result;
    result.statistic = std::min(u1, u2);
    result.n = {a.size(), b.size()};

    if (method == MwuMethod::Auto) {
        method = std::min(a.size(), b.size()) < 8 ? MwuMethod::Exact : MwuMethod::Normal;
    }
    if (method == MwuMethod::Exact) {
        result.method = "mann_whitney_exact";
        // The smaller group drives the subset enumeration; the p value is
        // symmetric in the two groups either way.
        if (a.size() <= b.size()) {
            result.p_value = exact_rank_sum_p(ranks, a.size());
        } else {
            std::vector<double> swapped(ranks.begin() + static_cast<std::ptrdiff_t>(a.size()), ranks.end());
            swapped.insert(swapped.end(), ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(a.size()));
            result.p_value = exact_rank_sum_p(swapped, b.size());
        }
        return result;
    }

    result.method = "mann_whitney_normal";
    const double n = n1 + n2;
    const double variance = n1 * n2 / 12.0 * ((n + 1.0) - tie_term(all) / (n * (n - 1.0)));
    if (variance <= 0.0) {
        result.p_value = 1.0;
        return result;
    }
    const double z = std::max(0.0, std::abs(u1 - n1 * n2 / 2.0) - 0.5) / std::sqrt(variance);
    result.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
    return result;
}

Summary describe(std::span<const double> sample) {
    if (sample.empty()) {
        throw std::invalid_argument("describe: empty sample");
    }
    Summary s;
    s.n = sample.size();
    const double n = static_cast<double>(sample.size());
    s.mean = std::accumulate(sample.begin(), sample.end(), 0.0) / n;
    if (sample.size() > 1) {
        double ss = 0.0;
        for (double v : sample) {
            ss += (v - s.mean) * (v - s.mean);
        }
        s.standard_error = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
    }
    return s;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman: need two equal-length samples of size >= 2");
    }
    const std::vector<double> rx = midranks(x);
    const std::vector<double> ry = midranks(y);
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
    const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx) * (rx[i] - mx);
        syy += (ry[i] - my) * (ry[i] - my);
    }
    if (sxx == 0.0 || syy == 0.0) {
        return 0.0;
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace exes
