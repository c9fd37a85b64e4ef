#ifndef PARETOKIT_RNG_HPP
#define PARETOKIT_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <vector>

namespace paretokit {

/// Philox4x32-10 counter-based generator.
///
/// The stream is a pure function of (seed, stream id, counter), so two runs
/// with the same seed draw the same numbers regardless of thread or platform.
/// All transforms to floating point and bounded integers are done here rather
/// than through <random> distributions, whose algorithms are unspecified.
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept { return next_u64(); }
    std::uint64_t next_u64() noexcept;

    // Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept;
    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
    // Uniform on {0, ..., n-1}; n must be positive.
    std::uint64_t uniform_int(std::uint64_t n) noexcept;
    bool bernoulli(double p) noexcept { return uniform() < p; }
    double normal() noexcept;

    std::vector<std::size_t> permutation(std::size_t n);

    // Independent stream derived from this generator's key.
    Rng split(std::uint64_t stream_id) const noexcept;

    std::uint64_t seed() const noexcept { return seed_; }

private:
    void refill() noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint32_t, 4> block_{};
    int used_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

// 64-bit finalizer (SplitMix64); used to derive seeds from structured keys.
std::uint64_t mix64(std::uint64_t x) noexcept;

} // namespace paretokit

#endif // PARETOKIT_RNG_HPP
