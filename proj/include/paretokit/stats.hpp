#ifndef PARETOKIT_STATS_HPP
#define PARETOKIT_STATS_HPP

#include "paretokit/registry.hpp"

#include <span>
#include <string>

namespace paretokit {

enum class Sign { better, worse, similar, none };

// "+", "-", "≈" (and "" for none).
const char* to_string(Sign s);

enum class WilcoxonMethod { automatic, exact, normal };

struct WilcoxonResult {
    double p_value = 1.0;
    Sign sign = Sign::similar;
    double rank_sum = 0.0; // sum of the ranks of sample a in the pooled sample
    bool exact = false;
};

/// Two-sided Wilcoxon rank-sum test of `a` against `b`. The sign reports
/// whether `a` is significantly better than `b` given the direction of the
/// measured quantity. automatic takes the exact null distribution when
/// min(n, m) <= 8 and there are no ties, the tie-corrected normal
/// approximation with continuity correction otherwise.
WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b,
                                 Direction direction = Direction::minimize, double alpha = 0.05,
                                 WilcoxonMethod method = WilcoxonMethod::automatic);

// Average ranks (1-based) of the pooled values.
std::vector<double> average_ranks(std::span<const double> values);

} // namespace paretokit

#endif // PARETOKIT_STATS_HPP
