#include "nabla/numeral.hpp"

#include <stdexcept>

#include "nabla/errors.hpp"

namespace nabla {

BitSequence::BitSequence(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_) {
        if (b > 1) throw std::invalid_argument("bit sequence elements must be 0 or 1");
    }
}

BitSequence BitSequence::from_string(std::string_view text) {
    std::vector<std::uint8_t> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1') throw std::invalid_argument("bit string may contain only '0' and '1'");
        bits.push_back(static_cast<std::uint8_t>(ch - '0'));
    }
    return BitSequence(std::move(bits));
}

std::string BitSequence::to_string() const {
    std::string out;
    out.reserve(bits_.size());
    for (auto b : bits_) out.push_back(static_cast<char>('0' + b));
    return out;
}

std::vector<std::string> nabla_violations(const Nabla& nabla) {
    std::vector<std::string> out;
    if (nabla.elems.empty()) {
        out.emplace_back("nabla is empty");
        return out;
    }
    for (std::size_t i = 0; i + 1 < nabla.elems.size(); ++i) {
        if (nabla.elems[i] <= nabla.elems[i + 1]) {
            out.emplace_back("nabla not strictly decreasing");
            break;
        }
    }
    if (nabla.elems.back() != 1) out.emplace_back("nabla does not end in 1");
    return out;
}

static void require_valid_nabla(const Nabla& nabla) {
    auto violations = nabla_violations(nabla);
    if (violations.empty()) return;
    std::string msg = "invalid nabla:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw std::invalid_argument(msg);
}

Plainvalue int_from_bits(const BitSequence& seq) {
    BigInt value = 0;
    for (std::size_t j = 0; j < seq.size(); ++j) {
        if (seq[j]) mpz_setbit(value.get_mpz_t(), j);
    }
    return Plainvalue{std::move(value), seq.size()};
}

BitSequence bits_from_int(const Plainvalue& p) {
    if (!fits_bits(p.value, p.bit_len)) {
        throw RangeError("value does not fit the declared bit length");
    }
    std::vector<std::uint8_t> bits(p.bit_len, 0);
    for (std::uint64_t j = 0; j < p.bit_len; ++j) {
        bits[j] = static_cast<std::uint8_t>(mpz_tstbit(p.value.get_mpz_t(), j));
    }
    return BitSequence(std::move(bits));
}

Measure measure(const BigInt& value, const Nabla& nabla) {
    require_valid_nabla(nabla);
    if (value < 0) throw std::invalid_argument("measured value must be a natural number");

    Measure m;
    m.quotients.resize(nabla.size());
    BigInt s = value;
    BigInt r;
    for (std::size_t i = 0; i < nabla.size(); ++i) {
        // s = q * nabla_i + r, 0 <= r < nabla_i; the remainder carries on
        mpz_fdiv_qr(m.quotients[i].get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(),
                    nabla.elems[i].get_mpz_t());
        mpz_swap(s.get_mpz_t(), r.get_mpz_t());
    }
    // nabla ends in 1, so the final remainder is 0 and nothing is lost
    return m;
}

BigInt recompose(const Measure& m, const Nabla& nabla) {
    if (m.size() != nabla.size()) {
        throw LengthMismatch("measure and nabla lengths differ");
    }
    BigInt total = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        total += m.quotients[i] * nabla.elems[i];
    }
    return total;
}

Plainvalue plainvalue_from_bytes(std::span<const std::uint8_t> bytes) {
    BigInt value = 0;
    if (!bytes.empty()) {
        mpz_import(value.get_mpz_t(), bytes.size(), -1 /* LSB first */, 1, 0, 0, bytes.data());
    }
    return Plainvalue{std::move(value), 8 * static_cast<std::uint64_t>(bytes.size())};
}

std::vector<std::uint8_t> bytes_from_plainvalue(const Plainvalue& p) {
    if (p.bit_len % 8 != 0) {
        throw FormatError("bit length is not a multiple of 8");
    }
    if (!fits_bits(p.value, p.bit_len)) {
        throw RangeError("value does not fit the declared bit length");
    }
    std::vector<std::uint8_t> out(p.bit_len / 8, 0);
    if (mpz_sgn(p.value.get_mpz_t()) != 0) {
        std::size_t count = 0;
        mpz_export(out.data(), &count, -1, 1, 0, 0, p.value.get_mpz_t());
    }
    return out;
}

}  // namespace nabla
