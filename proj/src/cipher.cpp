#include "nabla/cipher.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "nabla/errors.hpp"
#include "nabla/io.hpp"

namespace nabla {

std::vector<std::string> validate_key(const NablaKey& key) {
    std::vector<std::string> out = nabla_violations(key.nabla);
    const std::size_t k = key.nabla.size();
    if (key.delta_q.size() != k) out.emplace_back("deltaQ length mismatch");
    if (key.delta_r.size() != k) out.emplace_back("deltaR length mismatch");
    for (std::size_t i = 0; i < key.delta_q.size(); ++i) {
        if (key.delta_q[i] < 1) {
            out.emplace_back("deltaQ element < 1 at index " + std::to_string(i + 1));
        }
    }
    for (std::size_t i = 0; i < key.delta_r.size(); ++i) {
        if (key.delta_r[i] < 1) {
            out.emplace_back("deltaR element < 1 at index " + std::to_string(i + 1));
        }
    }
    if (key.p0 < 1) out.emplace_back("p0 < 1");
    return out;
}

static void require_valid_key(const NablaKey& key) {
    auto violations = validate_key(key);
    if (violations.empty()) return;
    std::string msg = "invalid key:";
    for (const auto& v : violations) msg += " " + v + ";";
    throw InvalidKey(msg);
}

Ciphertext encrypt(const Plainvalue& p, const NablaKey& key) {
    require_valid_key(key);
    if (!fits_bits(p.value, p.bit_len)) {
        throw RangeError("plaintext value does not fit its declared bit length");
    }

    const std::size_t k = key.size();
    Ciphertext c;
    c.bit_len = p.bit_len;
    c.values.resize(k);

    BigInt s = p.value * key.p0;
    BigInt q, r;
    for (std::size_t i = 0; i < k; ++i) {
        mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(), key.nabla.elems[i].get_mpz_t());
        c.values[i] = q * key.delta_q[i];
        // the scaled remainder is what the next position measures
        s = r * key.delta_r[i];
    }
    return c;
}

DecryptResult try_decrypt(const Ciphertext& c, const NablaKey& key) {
    const std::size_t k = key.size();
    DecryptResult res;

    // peel the quotient multipliers; every coordinate must divide exactly
    std::vector<BigInt> q(k);
    BigInt r;
    for (std::size_t i = 0; i < k; ++i) {
        mpz_fdiv_qr(q[i].get_mpz_t(), r.get_mpz_t(), c.values[i].get_mpz_t(),
                    key.delta_q[i].get_mpz_t());
        if (r != 0) {
            res.failure = DecryptFailure::delta_q;
            res.index = i + 1;
            return res;
        }
    }

    // rebuild the division ladder back to front; the carried remainder
    // entering position i was scaled by delta_r_i on the way down
    BigInt s = 0, rem = 0;
    for (std::size_t i = k; i-- > 0;) {
        s = q[i] * key.nabla.elems[i] + rem;
        if (i > 0) {
            mpz_fdiv_qr(rem.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(),
                        key.delta_r[i - 1].get_mpz_t());
            if (r != 0) {
                res.failure = DecryptFailure::delta_r;
                res.index = i;  // 1-based delta_r position
                return res;
            }
        }
    }

    BigInt value;
    mpz_fdiv_qr(value.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t(), key.p0.get_mpz_t());
    if (r != 0) {
        res.failure = DecryptFailure::p0;
        res.index = 0;
        return res;
    }
    if (!fits_bits(value, c.bit_len)) {
        res.failure = DecryptFailure::range;
        res.index = 0;
        return res;
    }
    res.plain = Plainvalue{std::move(value), c.bit_len};
    return res;
}

Plainvalue decrypt(const Ciphertext& c, const NablaKey& key) {
    require_valid_key(key);
    if (c.values.size() != key.size()) {
        throw LengthMismatch("ciphertext length does not match key length");
    }
    DecryptResult res = try_decrypt(c, key);
    if (res.plain) return *std::move(res.plain);
    switch (res.failure) {
        case DecryptFailure::delta_q:
            throw IntegrityError(res.index, "deltaQ");
        case DecryptFailure::delta_r:
            throw IntegrityError(res.index, "deltaR");
        case DecryptFailure::p0:
            throw IntegrityError(0, "p0");
        case DecryptFailure::range:
        default:
            throw RangeError("recovered value exceeds the declared bit length");
    }
}

NablaKey keygen(std::uint64_t k, std::uint64_t magnitude_bits, EntropySource& entropy) {
    if (k < 1) throw ParameterError("k must be >= 1");
    if (magnitude_bits < 2) throw ParameterError("magnitude_bits must be >= 2");

    const BigInt top = pow2(magnitude_bits);  // inclusive bound
    BigInt candidates = top - 1;              // values 2..top
    if (candidates < BigInt(k - 1)) {
        throw ParameterError("range [2, 2^magnitude_bits] has fewer than k-1 values");
    }

    NablaKey key;
    std::vector<BigInt> picked;
    if (k > 1) {
        if (magnitude_bits <= 20) {
            // small range: partial Fisher-Yates over the explicit candidates,
            // safe even when k-1 is close to the range size
            std::uint64_t n = top.get_ui() - 1;
            std::vector<std::uint64_t> pool(n);
            for (std::uint64_t i = 0; i < n; ++i) pool[i] = i + 2;
            for (std::uint64_t i = 0; i < k - 1; ++i) {
                std::uint64_t j = entropy.uniform(i, n - 1).get_ui();
                std::swap(pool[i], pool[j]);
                picked.emplace_back(pool[i]);
            }
        } else {
            std::set<BigInt> seen;
            while (seen.size() < k - 1) seen.insert(entropy.uniform(2, top));
            picked.assign(seen.begin(), seen.end());
        }
        std::sort(picked.begin(), picked.end(), std::greater<>());
    }
    picked.emplace_back(1);
    key.nabla.elems = std::move(picked);

    key.delta_q.reserve(k);
    key.delta_r.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) key.delta_q.push_back(entropy.uniform(1, top));
    for (std::uint64_t i = 0; i < k; ++i) key.delta_r.push_back(entropy.uniform(1, top));
    key.p0 = entropy.uniform(1, top);
    return key;
}

Ciphertext layer(const Ciphertext& c, const NablaKey& key2) {
    std::string text = serialize_ciphertext(c);
    auto bytes = std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size());
    return encrypt(plainvalue_from_bytes(bytes), key2);
}

Ciphertext unlayer(const Ciphertext& layered, const NablaKey& key2) {
    Plainvalue p = decrypt(layered, key2);
    std::vector<std::uint8_t> bytes = bytes_from_plainvalue(p);
    return parse_ciphertext(std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

}  // namespace nabla
