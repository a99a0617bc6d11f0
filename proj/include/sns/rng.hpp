#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace sns {

/**
 * SplitMix64 used as a counter-based generator: output i is
 * mix(key + (i + 1) * golden_gamma). The stream is a pure function of
 * (key, counter), so results are reproducible across platforms and
 * independent sub-streams are obtained by deriving new keys.
 *
 * Normal and uniform variates are produced by fixed formulas below rather
 * than <random> distributions, whose algorithms are implementation-defined.
 */
class CounterRng
{
public:
    using result_type = std::uint64_t;

    static constexpr std::string_view algorithm_id = "splitmix64-counter/v1";
    static constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

    explicit constexpr CounterRng(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Key of an independent sub-stream labelled by `stream`.
    static constexpr std::uint64_t derive(std::uint64_t key, std::uint64_t stream) noexcept
    {
        return mix(mix(key) ^ mix(stream + golden_gamma));
    }

    constexpr result_type operator()() noexcept
    {
        ++counter_;
        return mix(key_ + counter_ * golden_gamma);
    }

    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() noexcept
    {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) noexcept
    {
        return static_cast<std::uint64_t>(uniform() * static_cast<double>(bound)) % bound;
    }

    double rademacher() noexcept { return ((*this)() >> 63) != 0 ? 1.0 : -1.0; }

    /// Standard normal by Box-Muller; consumes two draws per variate.
    double normal() noexcept
    {
        const double u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    std::uint64_t counter() const noexcept { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

} // namespace sns
