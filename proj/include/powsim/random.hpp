#pragma once

#include <cstdint>

namespace powsim {

// splitmix64. The state is the "natural number" a stream hides its chance in;
// mix() extracts the value used for remainders, advance() is the successor
// function. Both the engine streams and the determinized-world generators use
// this, so a world run and its determinization agree draw for draw.
namespace splitmix {

constexpr std::uint64_t kGammaPredictable = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kGammaUnpredictable = 0xBF58476D1CE4E5B9ull;  // odd, distinct channel
constexpr std::uint64_t kGammaNoise = 0x94D049BB133111EBull;

inline std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline std::uint64_t advance(std::uint64_t state, std::uint64_t gamma) { return state + gamma; }

}  // namespace splitmix

/// A seeded pseudo-random stream over natural numbers.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t gamma = splitmix::kGammaPredictable)
        : state_(seed), gamma_(gamma) {}

    /// Value of the current state, then advance.
    std::uint64_t next() {
        const std::uint64_t v = splitmix::mix(state_);
        state_ = splitmix::advance(state_, gamma_);
        return v;
    }

    /// Uniform cell index in [0, d). d must be > 0.
    std::uint64_t cell(std::uint64_t d) { return next() % d; }

    std::uint64_t state() const { return state_; }
    std::uint64_t gamma() const { return gamma_; }

private:
    std::uint64_t state_;
    std::uint64_t gamma_;
};

/// Derives independent sub-seeds (per episode, per channel) from one master seed.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix::mix(splitmix::mix(master ^ (a * 0x9E3779B97F4A7C15ull)) + b);
}

}  // namespace powsim
