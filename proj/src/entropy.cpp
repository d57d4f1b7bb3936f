#include "nabla/entropy.hpp"

#include <stdexcept>
#include <vector>

namespace nabla {

BigInt EntropySource::uniform(const BigInt& lo, const BigInt& hi) {
    if (lo > hi) throw std::invalid_argument("uniform: lo > hi");
    BigInt range = hi - lo + 1;
    std::uint64_t nbits = bit_length(range);
    // rejection keeps the draw exactly uniform; expected < 2 attempts
    for (;;) {
        BigInt x = random_bits(nbits);
        if (x < range) return lo + x;
    }
}

BigInt SystemEntropy::random_bits(std::uint64_t nbits) {
    if (nbits == 0) return 0;
    std::uint64_t nbytes = (nbits + 7) / 8;
    std::vector<std::uint8_t> buf(nbytes);
    for (std::uint64_t i = 0; i < nbytes; i += 4) {
        std::uint32_t word = device_();
        for (std::uint64_t j = i; j < nbytes && j < i + 4; ++j) {
            buf[j] = static_cast<std::uint8_t>(word);
            word >>= 8;
        }
    }
    if (nbits % 8) buf[nbytes - 1] &= static_cast<std::uint8_t>((1u << (nbits % 8)) - 1);
    BigInt out;
    mpz_import(out.get_mpz_t(), nbytes, -1, 1, 0, 0, buf.data());
    return out;
}

SeededEntropy::SeededEntropy(std::uint64_t seed) {
    gmp_randinit_mt(state_);
    gmp_randseed_ui(state_, seed);
}

SeededEntropy::~SeededEntropy() { gmp_randclear(state_); }

BigInt SeededEntropy::random_bits(std::uint64_t nbits) {
    if (nbits == 0) return 0;
    BigInt out;
    mpz_urandomb(out.get_mpz_t(), state_, nbits);
    return out;
}

}  // namespace nabla
