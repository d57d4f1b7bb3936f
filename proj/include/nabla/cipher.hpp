#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nabla/entropy.hpp"
#include "nabla/numeral.hpp"

namespace nabla {

/// One-time secret key: the radix schedule nabla plus per-position
/// quotient multipliers (delta_q), remainder multipliers (delta_r) and
/// the plaintext premultiplier p0. All three lists share nabla's length.
///
/// delta_r's last element multiplies a remainder that is always zero
/// (nabla ends in 1); it is generated and stored all the same so the key
/// is three full lists of k values.
struct NablaKey {
    Nabla nabla;
    std::vector<BigInt> delta_q;
    std::vector<BigInt> delta_r;
    BigInt p0;

    std::size_t size() const noexcept { return nabla.size(); }
    bool operator==(const NablaKey&) const = default;
};

/// Encrypted message: one value per key position plus the plaintext bit
/// length, which decryption needs to restore trailing zero bits.
struct Ciphertext {
    std::vector<BigInt> values;
    std::uint64_t bit_len = 0;

    bool operator==(const Ciphertext&) const = default;
};

/// All violated key invariants; empty means usable. encrypt, decrypt and
/// keygen refuse keys for which this is non-empty.
std::vector<std::string> validate_key(const NablaKey& key);

/// s = value * p0, then per position: emit (s div nabla_i) * delta_q_i
/// and carry (s mod nabla_i) * delta_r_i into the next position.
/// InvalidKey if the key fails validation, RangeError if p violates its
/// own invariant.
Ciphertext encrypt(const Plainvalue& p, const NablaKey& key);

enum class DecryptFailure : std::uint8_t { delta_q, delta_r, p0, range };

/// Outcome of a decryption attempt. On failure, `index` is the 1-based
/// ciphertext position for delta_q/delta_r and 0 for the p0/range stage.
struct DecryptResult {
    std::optional<Plainvalue> plain;
    DecryptFailure failure = DecryptFailure::delta_q;
    std::size_t index = 0;

    explicit operator bool() const noexcept { return plain.has_value(); }
};

/// Exact algebraic inverse of encrypt, without exceptions on integrity
/// failures (for candidate-key sweeps). Requires a valid key with
/// c.values.size() == key.size().
DecryptResult try_decrypt(const Ciphertext& c, const NablaKey& key);

/// Throwing wrapper around try_decrypt: IntegrityError when an exact
/// division fails, RangeError when the recovered value exceeds the
/// declared bit length. Either signals a wrong key or a corrupted
/// ciphertext.
Plainvalue decrypt(const Ciphertext& c, const NablaKey& key);

/// Fresh key: k-1 distinct nabla values drawn from [2, 2^magnitude_bits]
/// and sorted descending, a trailing 1, multipliers and p0 from
/// [1, 2^magnitude_bits]. ParameterError if the range cannot supply k-1
/// distinct values or magnitude_bits < 2 or k < 1.
NablaKey keygen(std::uint64_t k, std::uint64_t magnitude_bits, EntropySource& entropy);

/// Re-encrypt a ciphertext under a second key: the canonical text
/// serialization of c becomes the plaintext bytes for key2.
Ciphertext layer(const Ciphertext& c, const NablaKey& key2);

/// Inverse of layer. Propagates decrypt's errors; FormatError if the
/// recovered bytes do not parse as a ciphertext (wrong key2).
Ciphertext unlayer(const Ciphertext& layered, const NablaKey& key2);

}  // namespace nabla
