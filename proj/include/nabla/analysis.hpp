#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "nabla/cipher.hpp"

namespace nabla {

/// Finite restriction of the key sets, for exhaustive experiments:
/// nabla values from [2, nabla_max] (strictly decreasing, trailing 1
/// implicit), multipliers from [1, delta_max], p0 from [1, p0_max].
struct KeySpace {
    std::uint64_t k = 1;
    std::uint64_t nabla_max = 1;
    std::uint64_t delta_max = 1;
    std::uint64_t p0_max = 1;
};

/// Exact number of keys: C(nabla_max - 1, k - 1) * delta_max^(2k) * p0_max.
BigInt keyspace_size(const KeySpace& space);

/// Walks a KeySpace in a fixed order so counts and "first hit" reports
/// are reproducible: nabla tuples outermost in ascending lexicographic
/// order, then delta_q and delta_r row-major (last position fastest),
/// then p0 innermost. Construction at any start index is O(k * nabla_max);
/// stepping is amortized O(1) value updates.
class KeyEnumerator {
public:
    KeyEnumerator(const KeySpace& space, std::uint64_t start_index);

    bool done() const noexcept { return done_; }
    std::uint64_t index() const noexcept { return index_; }
    const NablaKey& key() const noexcept { return key_; }
    void advance();

private:
    void load_nabla_rank(std::uint64_t rank);
    bool next_nabla();

    KeySpace space_;
    NablaKey key_;
    std::vector<std::uint64_t> nabla_;  // mirrors key_.nabla without the trailing 1
    std::vector<std::uint64_t> dq_;
    std::vector<std::uint64_t> dr_;
    std::uint64_t p0_ = 1;
    std::uint64_t index_ = 0;
    bool done_ = false;
};

/// One key that survived a sweep.
struct Finding {
    std::uint64_t key_index = 0;
    NablaKey key;
    std::optional<BigInt> plaintext;  // recovered value, for ciphertext-only sweeps
};

/// Everything here except `elapsed` is deterministic: identical across
/// runs and across --jobs settings.
struct AttackReport {
    std::uint64_t candidates_tested = 0;
    std::uint64_t consistent_keys = 0;
    std::uint64_t distinct_plaintexts = 0;
    std::chrono::duration<double> elapsed{0};
    std::vector<Finding> findings;  // lowest key_index first, capped at max_findings
};

struct AnalysisOptions {
    std::uint64_t budget = 100'000'000;  // keys; BudgetExceeded beyond this
    unsigned jobs = 1;
    std::size_t max_findings = 10;
};

/// Counts keys with encrypt(p, key) == c by full enumeration. The true
/// key is always in the consistent set when it lies in the space.
/// BudgetExceeded if the space exceeds opt.budget; LengthMismatch if
/// c does not have space.k values.
AttackReport bruteforce_known_plaintext(const Plainvalue& p, const Ciphertext& c,
                                        const KeySpace& space, const AnalysisOptions& opt = {});

/// Counts keys under which decryption completes (all exact divisions and
/// the range check pass) and the distinct plaintexts they yield. This is
/// the finite-scale measurement of how ambiguous a bare ciphertext is.
AttackReport ciphertext_only_ambiguity(const Ciphertext& c, const KeySpace& space,
                                       const AnalysisOptions& opt = {});

struct LeakageEntry {
    std::size_t index = 0;   // 1-based ciphertext coordinate
    BigInt common_divisor;   // gcd of the two values at this coordinate
    bool flagged = false;    // gcd > 1: key material exposed
};

struct LeakageReport {
    std::vector<LeakageEntry> entries;
    std::size_t flagged_count = 0;
};

/// Per-coordinate gcds of two ciphertexts made with the same key. Each
/// coordinate is q_i * delta_q_i, so delta_q_i divides every gcd: reusing
/// a key hands the attacker multiples of the delta_q list.
/// LengthMismatch if the ciphertexts differ in length.
LeakageReport reuse_leakage(const Ciphertext& c1, const Ciphertext& c2);

struct CiphertextStats {
    std::optional<double> expansion_ratio;  // total value bits / plaintext bits; empty when bit_len == 0
    std::vector<std::uint64_t> value_bits;
    std::uint64_t total_value_bits = 0;
    std::uint64_t plaintext_bits = 0;
    double chi_square = 0.0;       // byte frequencies of the canonical serialization vs uniform
    std::uint64_t serialized_bytes = 0;
};

CiphertextStats ciphertext_stats(const Ciphertext& c, const Plainvalue& p);

}  // namespace nabla
