#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace nabla {

using BigInt = mpz_class;

/// Number of binary digits of v; 0 for v == 0.
inline std::uint64_t bit_length(const BigInt& v) {
    if (mpz_sgn(v.get_mpz_t()) == 0) return 0;
    return mpz_sizeinbase(v.get_mpz_t(), 2);
}

/// 2^bits.
inline BigInt pow2(std::uint64_t bits) {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, bits);
    return r;
}

/// value < 2^bits without materializing 2^bits.
inline bool fits_bits(const BigInt& v, std::uint64_t bits) {
    return mpz_sgn(v.get_mpz_t()) >= 0 && bit_length(v) <= bits;
}

}  // namespace nabla
