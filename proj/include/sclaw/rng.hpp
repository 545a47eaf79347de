#pragma once

#include <array>
#include <cstdint>

namespace sclaw::rng {

/// Philox4x32-10 counter-based block cipher (Salmon, Moraes, Dror, Shaw 2011).
///
/// Stateless: output depends only on (counter, key). This is what makes Monte
/// Carlo paths reproducible independent of thread scheduling or how many
/// draws other components consume.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> ctr,
                                              std::array<std::uint32_t, 2> key) {
        constexpr std::uint32_t kMul0 = 0xD2511F53u;
        constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
        constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
        constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
        for (int round = 0; round < 10; ++round) {
            const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
            const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
            const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
            const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        return ctr;
    }
};

/// Indexed random values for a fixed (seed, stream) pair.
///
/// Each 64-bit counter value addresses an independent 128-bit block;
/// `bits`, `uniform01` and `normal` are pure functions of the index.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    /// Both 64-bit halves of block `index`.
    std::array<std::uint64_t, 2> bits128(std::uint64_t index) const {
        const auto x = Philox4x32::block(
            {static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
             static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)},
            {static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32)});
        return {static_cast<std::uint64_t>(x[0]) | (static_cast<std::uint64_t>(x[1]) << 32),
                static_cast<std::uint64_t>(x[2]) | (static_cast<std::uint64_t>(x[3]) << 32)};
    }

    std::uint64_t bits(std::uint64_t index) const { return bits128(index)[0]; }

    /// Uniform on (0,1]; safe as an argument of log().
    double uniform01(std::uint64_t index) const {
        return to_unit_positive(bits(index));
    }

    /// Standard normal draw for index: Box-Muller on the two halves of one block.
    double normal(std::uint64_t index) const;

    static double to_unit_positive(std::uint64_t v) {
        // (v+1) * 2^-64 in (0, 1]
        return (static_cast<double>(v >> 11) + 1.0) * 0x1p-53;
    }

    static double to_unit(std::uint64_t v) {
        // v * 2^-64 in [0, 1)
        return static_cast<double>(v >> 11) * 0x1p-53;
    }

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
};

/// Sequential adapter for algorithms whose draw count varies (e.g. Poisson
/// inversion). Consumes increasing counters of its own stream, so variable
/// consumption never shifts draws seen by other streams.
class SequentialRng {
public:
    explicit SequentialRng(CounterRng gen) : gen_(gen) {}
    SequentialRng(std::uint64_t seed, std::uint64_t stream) : gen_(seed, stream) {}

    double uniform01() { return gen_.uniform01(next_++); }
    double normal() { return gen_.normal(next_++); }
    std::uint64_t consumed() const { return next_; }

private:
    CounterRng gen_;
    std::uint64_t next_ = 0;
};

/// Poisson draw by inversion; exact for any finite mean (recursive halving
/// keeps the inversion in the numerically safe range).
std::uint64_t poisson(SequentialRng& rng, double mean);

}  // namespace sclaw::rng
