#include "doctest.h"

#include "oracles.hpp"
#include "paretokit/rng.hpp"
#include "paretokit/stats.hpp"

#include <cmath>

using namespace paretokit;

namespace {

std::vector<double> draw(Rng& rng, std::size_t n, double shift = 0.0) {
    std::vector<double> v(n);
    for (auto& x : v) {
        x = rng.uniform() + shift;
    }
    return v;
}

} // namespace

TEST_CASE("identical samples are similar") {
    const std::vector<double> a{0.3, 0.1, 0.7, 0.5};
    const auto r = wilcoxon_rank_sum(a, a);
    CHECK(r.sign == Sign::similar);
    CHECK(r.p_value == doctest::Approx(1.0));
    const std::vector<double> same(6, 2.0);
    const auto s = wilcoxon_rank_sum(same, same);
    CHECK(s.p_value == 1.0);
    CHECK(s.sign == Sign::similar);
    const std::vector<double> one{1.0};
    CHECK(wilcoxon_rank_sum(one, a).sign == Sign::similar);
}

TEST_CASE("complete separation") {
    const std::vector<double> a{1, 2, 3, 4, 5}, b{6, 7, 8, 9, 10};
    const auto r = wilcoxon_rank_sum(a, b);
    CHECK(r.exact);
    CHECK(r.rank_sum == 15.0);
    CHECK(std::abs(r.p_value - 2.0 / 252.0) < 1e-12);
    CHECK(r.sign == Sign::better);
    CHECK(wilcoxon_rank_sum(b, a).sign == Sign::worse);
    CHECK(wilcoxon_rank_sum(a, b, Direction::maximize).sign == Sign::worse);
    CHECK(std::string(to_string(Sign::better)) == "+");
    CHECK(std::string(to_string(Sign::similar)) == "≈");
}

TEST_CASE("exact p-values equal enumeration") {
    Rng rng(8);
    for (int t = 0; t < 300; ++t) {
        const auto n = 1 + static_cast<std::size_t>(rng.uniform_int(6));
        const auto m = 1 + static_cast<std::size_t>(rng.uniform_int(6));
        const auto a = draw(rng, n, 0.3 * rng.uniform()), b = draw(rng, m);
        const auto r = wilcoxon_rank_sum(a, b, Direction::minimize, 0.05, WilcoxonMethod::exact);
        CHECK(std::abs(r.p_value - oracle::rank_sum_p(a, b)) < 1e-12);
    }
}

TEST_CASE("antisymmetry") {
    Rng rng(9);
    for (int t = 0; t < 1000; ++t) {
        const auto a = draw(rng, 3 + static_cast<std::size_t>(rng.uniform_int(10)), 0.5 * rng.uniform());
        const auto b = draw(rng, 3 + static_cast<std::size_t>(rng.uniform_int(10)));
        const auto ab = wilcoxon_rank_sum(a, b), ba = wilcoxon_rank_sum(b, a);
        CHECK(ab.p_value == doctest::Approx(ba.p_value).epsilon(1e-12));
        if (ab.sign == Sign::better) {
            CHECK(ba.sign == Sign::worse);
        } else if (ab.sign == Sign::worse) {
            CHECK(ba.sign == Sign::better);
        } else {
            CHECK(ba.sign == Sign::similar);
        }
    }
}

TEST_CASE("normal approximation agrees with the exact test") {
    Rng rng(10);
    int agree = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        const auto a = draw(rng, 10, 0.4 * rng.uniform()), b = draw(rng, 10);
        const auto e = wilcoxon_rank_sum(a, b, Direction::minimize, 0.05, WilcoxonMethod::exact);
        const auto z = wilcoxon_rank_sum(a, b, Direction::minimize, 0.05, WilcoxonMethod::normal);
        CHECK_FALSE(z.exact);
        agree += e.sign == z.sign ? 1 : 0;
    }
    CHECK(agree >= trials * 99 / 100);
}

TEST_CASE("ties") {
    const std::vector<double> a{1, 1, 2, 2, 3}, b{2, 3, 3, 4, 4};
    const auto r = wilcoxon_rank_sum(a, b);
    CHECK_FALSE(r.exact);
    CHECK(r.p_value > 0.0);
    CHECK(r.p_value < 1.0);
    CHECK_THROWS_AS(wilcoxon_rank_sum(a, b, Direction::minimize, 0.05, WilcoxonMethod::exact), DomainError);
    const std::vector<double> v{3, 1, 3, 2};
    CHECK(average_ranks(v) == std::vector<double>{3.5, 1, 3.5, 2});
}
