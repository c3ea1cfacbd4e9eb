#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace exes {

struct StatTestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::string method;
    std::vector<std::size_t> n;  // group sizes, in argument order
};

/// Mid-ranks (1-based) of `values`; tied values share the mean of their ranks.
std::vector<double> midranks(std::span<const double> values);

/// Kruskal-Wallis H with tie correction and a chi-square upper-tail p value.
/// Needs at least two non-empty groups. When every value is identical the
/// statistic is 0 and p is 1.
StatTestResult kruskal_wallis(const std::vector<std::vector<double>>& groups);

enum class MwuMethod { Auto, Exact, Normal };

/// Two-sided Mann-Whitney U. The statistic is min(U1, U2). Auto picks the
/// exact null distribution when the smaller sample has fewer than 8 values and
/// the tie-corrected normal approximation with continuity correction
/// otherwise.
StatTestResult mann_whitney_u(std::span<const double> a, std::span<const double> b,
                              MwuMethod method = MwuMethod::Auto);

struct Summary {
    double mean = 0.0;
    double standard_error = 0.0;  // n-1 denominator; 0 for a single value
    std::size_t n = 0;
};

Summary describe(std::span<const double> sample);

/// Spearman rank correlation (Pearson on mid-ranks). Returns 0 when either
/// side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

}  // namespace exes
