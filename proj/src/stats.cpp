#include "paretokit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace paretokit {

const char* to_string(Sign s) {
    switch (s) {
    case Sign::better:
        return "+";
    case Sign::worse:
        return "-";
    case Sign::similar:
        return "\xE2\x89\x88";
    case Sign::none:
        break;
    }
    return "";
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double r = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = r;
        }
        i = j + 1;
    }
    return ranks;
}

namespace {

// Two-sided exact p-value: counts of size-n subsets of {1..N} by rank sum.
double exact_p(std::size_t n, std::size_t m, double w) {
    const std::size_t total = n + m;
    const std::size_t max_sum = total * (total + 1) / 2;
    // counts[k][s], built over ranks 1..total; long double keeps C(N, n) exact well past the 8-sample range.
    std::vector<std::vector<long double>> counts(n + 1, std::vector<long double>(max_sum + 1, 0.0L));
    counts[0][0] = 1.0L;
    for (std::size_t r = 1; r <= total; ++r) {
        for (std::size_t k = std::min(r, n); k >= 1; --k) {
            for (std::size_t s = max_sum; s >= r; --s) {
                counts[k][s] += counts[k - 1][s - r];
            }
        }
    }
    long double all = 0.0L;
    long double lower = 0.0L;
    long double upper = 0.0L;
    const auto ws = static_cast<std::size_t>(std::llround(w));
    for (std::size_t s = 0; s <= max_sum; ++s) {
        all += counts[n][s];
        if (s <= ws) {
            lower += counts[n][s];
        }
        if (s >= ws) {
            upper += counts[n][s];
        }
    }
    return static_cast<double>(std::min(1.0L, 2.0L * std::min(lower, upper) / all));
}

} // namespace

WilcoxonResult wilcoxon_rank_sum(std::span<const double> a, std::span<const double> b, Direction direction,
                                 double alpha, WilcoxonMethod method) {
    if (a.empty() || b.empty()) {
        throw DomainError("wilcoxon_rank_sum: both samples must be non-empty");
    }
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    WilcoxonResult out;
    if (std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled.front(); })) {
        return out;
    }
    const auto ranks = average_ranks(pooled);
    out.rank_sum = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n), 0.0);

    auto sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    bool ties = false;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) {
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        if (t > 1) {
            ties = true;
            tie_term += t * t * t - t;
        }
        i = j;
    }

    const bool use_exact = method == WilcoxonMethod::exact ||
                           (method == WilcoxonMethod::automatic && std::min(n, m) <= 8 && !ties);
    const double nn = static_cast<double>(n);
    const double mm = static_cast<double>(m);
    const double total = nn + mm;
    const double mean = nn * (total + 1.0) / 2.0;
    if (use_exact) {
        if (ties) {
            throw DomainError("wilcoxon_rank_sum: the exact path requires tie-free samples");
        }
        out.p_value = exact_p(n, m, out.rank_sum);
        out.exact = true;
    } else {
        const double var = nn * mm / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
        const double z = std::max(0.0, std::abs(out.rank_sum - mean) - 0.5) / std::sqrt(var);
        out.p_value = std::min(1.0, std::erfc(z / std::sqrt(2.0)));
    }

    if (std::min(n, m) < 2 || !(out.p_value < alpha) || out.rank_sum == mean) {
        out.sign = Sign::similar;
        return out;
    }
    const bool a_smaller = out.rank_sum < mean;
    const bool a_better = direction == Direction::minimize ? a_smaller : !a_smaller;
    out.sign = a_better ? Sign::better : Sign::worse;
    return out;
}

} // namespace paretokit
