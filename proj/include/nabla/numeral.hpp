#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/bigint.hpp"

namespace nabla {

/// Ordered sequence of binary digits. Position 0 is the leftmost written
/// digit and carries exponent 0, so "101000001" reads as 2^0 + 2^2 + 2^8.
/// Trailing zeros are significant and preserved.
class BitSequence {
public:
    BitSequence() = default;
    explicit BitSequence(std::vector<std::uint8_t> bits);  // elements must be 0 or 1
    static BitSequence from_string(std::string_view text);  // '0'/'1' characters only

    std::size_t size() const noexcept { return bits_.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const noexcept { return bits_; }
    std::string to_string() const;

    bool operator==(const BitSequence&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

/// Natural number together with the bit length it was read from.
/// Valid when value < 2^bit_len; the explicit length is what lets
/// trailing zero bits survive the integer mapping.
struct Plainvalue {
    BigInt value;
    std::uint64_t bit_len = 0;

    bool operator==(const Plainvalue&) const = default;
};

/// The radix schedule of the decomposition: strictly decreasing positive
/// integers ending in 1. The final 1 is what makes measurement lossless.
struct Nabla {
    std::vector<BigInt> elems;

    std::size_t size() const noexcept { return elems.size(); }
    bool operator==(const Nabla&) const = default;
};

/// Quotients produced by measuring a value; same length as the Nabla.
struct Measure {
    std::vector<BigInt> quotients;

    std::size_t size() const noexcept { return quotients.size(); }
    bool operator==(const Measure&) const = default;
};

/// All violated Nabla invariants; empty means valid.
std::vector<std::string> nabla_violations(const Nabla& nabla);

/// Sum of 2^j over set positions j. Total: every bit sequence maps to a value.
Plainvalue int_from_bits(const BitSequence& seq);

/// Exact inverse of int_from_bits, including trailing zero bits.
/// RangeError if p.value >= 2^p.bit_len.
BitSequence bits_from_int(const Plainvalue& p);

/// Quotient sequence of repeated division with remainder carry:
/// q_i = s div nabla_i, then s <- s mod nabla_i. The trailing 1 drains the
/// remainder to zero, so no information is lost.
Measure measure(const BigInt& value, const Nabla& nabla);

/// Sum of q_i * nabla_i; inverse of measure. LengthMismatch if the
/// lengths differ.
BigInt recompose(const Measure& m, const Nabla& nabla);

/// File convention: byte i contributes b_i * 256^i (little-endian base
/// 256), bit_len = 8 * byte count. Bit b of byte i sits at position 8i+b.
Plainvalue plainvalue_from_bytes(std::span<const std::uint8_t> bytes);

/// Inverse of plainvalue_from_bytes. FormatError if bit_len is not a
/// multiple of 8, RangeError if the value does not fit.
std::vector<std::uint8_t> bytes_from_plainvalue(const Plainvalue& p);

}  // namespace nabla
