#pragma once

#include <cstdint>
#include <random>

#include <gmp.h>

#include "nabla/bigint.hpp"

namespace nabla {

/// Source of uniform random naturals. Implementations differ only in
/// where the bits come from.
class EntropySource {
public:
    virtual ~EntropySource() = default;

    /// Uniform in [0, 2^nbits). nbits == 0 yields 0.
    virtual BigInt random_bits(std::uint64_t nbits) = 0;

    /// Uniform in [lo, hi] inclusive, by rejection. Requires lo <= hi.
    BigInt uniform(const BigInt& lo, const BigInt& hi);
};

/// Operating-system randomness, for real keys.
class SystemEntropy final : public EntropySource {
public:
    BigInt random_bits(std::uint64_t nbits) override;

private:
    std::random_device device_;
};

/// Deterministic stream for tests and seeded key generation. The stream
/// is stable for a given seed within this implementation only.
class SeededEntropy final : public EntropySource {
public:
    explicit SeededEntropy(std::uint64_t seed);
    ~SeededEntropy() override;
    SeededEntropy(const SeededEntropy&) = delete;
    SeededEntropy& operator=(const SeededEntropy&) = delete;

    BigInt random_bits(std::uint64_t nbits) override;

private:
    gmp_randstate_t state_;
};

}  // namespace nabla
