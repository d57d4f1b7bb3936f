#include "nabla/analysis.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <thread>

#include "nabla/errors.hpp"
#include "nabla/io.hpp"

namespace nabla {

namespace {

void check_bounds(const KeySpace& space) {
    if (space.k < 1 || space.nabla_max < 1 || space.delta_max < 1 || space.p0_max < 1) {
        throw ParameterError("key space bounds must all be >= 1");
    }
}

BigInt binom(std::uint64_t n, std::uint64_t k) {
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

BigInt keyspace_size(const KeySpace& space) {
    check_bounds(space);
    BigInt combos = binom(space.nabla_max - 1, space.k - 1);
    BigInt deltas;
    mpz_ui_pow_ui(deltas.get_mpz_t(), space.delta_max, 2 * space.k);
    return combos * deltas * space.p0_max;
}

KeyEnumerator::KeyEnumerator(const KeySpace& space, std::uint64_t start_index)
    : space_(space), index_(start_index) {
    check_bounds(space);
    BigInt total = keyspace_size(space);
    if (!total.fits_ulong_p()) {
        throw ParameterError("key space too large to enumerate");
    }
    if (start_index >= total.get_ui()) {
        done_ = true;
        return;
    }

    const std::uint64_t k = space_.k;
    nabla_.assign(k - 1, 0);
    dq_.assign(k, 1);
    dr_.assign(k, 1);
    key_.nabla.elems.assign(k, BigInt(1));
    key_.delta_q.assign(k, BigInt(1));
    key_.delta_r.assign(k, BigInt(1));

    // index = ((nabla_rank * D^k + dq_rank) * D^k + dr_rank) * p0_max + p0_rank
    BigInt dk;
    mpz_ui_pow_ui(dk.get_mpz_t(), space_.delta_max, k);
    const std::uint64_t delta_block = dk.get_ui();
    const std::uint64_t p0_block = space_.p0_max;

    std::uint64_t rest = start_index;
    const std::uint64_t per_nabla = delta_block * delta_block * p0_block;
    load_nabla_rank(rest / per_nabla);
    rest %= per_nabla;
    std::uint64_t dq_rank = rest / (delta_block * p0_block);
    rest %= delta_block * p0_block;
    std::uint64_t dr_rank = rest / p0_block;
    std::uint64_t p0_rank = rest % p0_block;

    // row-major digits: position 0 is the slowest
    for (std::size_t i = k; i-- > 0;) {
        dq_[i] = dq_rank % space_.delta_max + 1;
        dq_rank /= space_.delta_max;
        dr_[i] = dr_rank % space_.delta_max + 1;
        dr_rank /= space_.delta_max;
    }
    p0_ = p0_rank + 1;

    for (std::size_t i = 0; i < k; ++i) {
        key_.delta_q[i] = dq_[i];
        key_.delta_r[i] = dr_[i];
    }
    key_.p0 = p0_;
}

void KeyEnumerator::load_nabla_rank(std::uint64_t rank) {
    const std::size_t m = nabla_.size();
    BigInt n(rank);
    for (std::size_t i = 0; i < m; ++i) {
        std::uint64_t bound = (i == 0) ? space_.nabla_max : nabla_[i - 1] - 1;
        std::uint64_t remaining = m - 1 - i;
        for (std::uint64_t v = 2 + remaining; v <= bound; ++v) {
            BigInt cnt = binom(v - 2, remaining);
            if (n < cnt) {
                nabla_[i] = v;
                break;
            }
            n -= cnt;
        }
    }
    for (std::size_t i = 0; i < m; ++i) key_.nabla.elems[i] = nabla_[i];
    key_.nabla.elems[m] = 1;
}

bool KeyEnumerator::next_nabla() {
    const std::size_t m = nabla_.size();
    for (std::size_t i = m; i-- > 0;) {
        std::uint64_t bound = (i == 0) ? space_.nabla_max : nabla_[i - 1] - 1;
        if (nabla_[i] + 1 <= bound) {
            ++nabla_[i];
            key_.nabla.elems[i] = nabla_[i];
            for (std::size_t j = i + 1; j < m; ++j) {
                nabla_[j] = 2 + (m - 1 - j);  // smallest tail that still decreases to 2
                key_.nabla.elems[j] = nabla_[j];
            }
            return true;
        }
    }
    return false;
}

void KeyEnumerator::advance() {
    if (done_) return;
    ++index_;

    if (p0_ < space_.p0_max) {
        ++p0_;
        key_.p0 = p0_;
        return;
    }
    p0_ = 1;
    key_.p0 = 1;

    for (std::size_t i = dr_.size(); i-- > 0;) {
        if (dr_[i] < space_.delta_max) {
            ++dr_[i];
            key_.delta_r[i] = dr_[i];
            return;
        }
        dr_[i] = 1;
        key_.delta_r[i] = 1;
    }
    for (std::size_t i = dq_.size(); i-- > 0;) {
        if (dq_[i] < space_.delta_max) {
            ++dq_[i];
            key_.delta_q[i] = dq_[i];
            return;
        }
        dq_[i] = 1;
        key_.delta_q[i] = 1;
    }
    if (!next_nabla()) done_ = true;
}

namespace {

struct WorkerOut {
    std::uint64_t tested = 0;
    std::uint64_t consistent = 0;
    std::vector<Finding> findings;  // ascending key_index by construction
    std::set<BigInt> plaintexts;
};

// TestFn: bool(const NablaKey&, std::optional<BigInt>& recovered)
template <typename TestFn>
AttackReport run_sweep(const KeySpace& space, const AnalysisOptions& opt, bool track_plaintexts,
                       TestFn test) {
    const auto t0 = std::chrono::steady_clock::now();

    BigInt size = keyspace_size(space);
    if (size > BigInt(opt.budget)) {
        throw BudgetExceeded("key space holds " + size.get_str() + " keys, budget is " +
                             std::to_string(opt.budget));
    }
    const std::uint64_t total = size.get_ui();

    std::uint64_t jobs = std::max<unsigned>(opt.jobs, 1);
    if (total > 0) jobs = std::min<std::uint64_t>(jobs, total);

    std::vector<WorkerOut> outs(total > 0 ? jobs : 0);
    std::vector<std::thread> threads;
    const std::uint64_t base = total > 0 ? total / jobs : 0;
    const std::uint64_t rem = total > 0 ? total % jobs : 0;

    auto work = [&](std::uint64_t lo, std::uint64_t hi, WorkerOut& out) {
        std::optional<BigInt> recovered;
        for (KeyEnumerator e(space, lo); !e.done() && e.index() < hi; e.advance()) {
            ++out.tested;
            recovered.reset();
            if (!test(e.key(), recovered)) continue;
            ++out.consistent;
            if (out.findings.size() < opt.max_findings) {
                out.findings.push_back(Finding{e.index(), e.key(), recovered});
            }
            if (track_plaintexts && recovered) out.plaintexts.insert(*recovered);
        }
    };

    if (total > 0) {
        for (std::uint64_t i = 0; i < jobs; ++i) {
            std::uint64_t lo = i * base + std::min(i, rem);
            std::uint64_t hi = lo + base + (i < rem ? 1 : 0);
            threads.emplace_back(work, lo, hi, std::ref(outs[i]));
        }
        for (auto& t : threads) t.join();
    }

    AttackReport report;
    std::set<BigInt> plains;
    for (auto& out : outs) {
        report.candidates_tested += out.tested;
        report.consistent_keys += out.consistent;
        // ranges are contiguous and in order, so appending keeps findings sorted
        for (auto& f : out.findings) {
            if (report.findings.size() < opt.max_findings) {
                report.findings.push_back(std::move(f));
            }
        }
        plains.merge(out.plaintexts);
    }
    if (track_plaintexts) {
        report.distinct_plaintexts = plains.size();
    } else {
        report.distinct_plaintexts = report.consistent_keys > 0 ? 1 : 0;
    }
    report.elapsed = std::chrono::steady_clock::now() - t0;
    return report;
}

}  // namespace

AttackReport bruteforce_known_plaintext(const Plainvalue& p, const Ciphertext& c,
                                        const KeySpace& space, const AnalysisOptions& opt) {
    if (c.values.size() != space.k) {
        throw LengthMismatch("ciphertext length does not match the key space's k");
    }
    return run_sweep(space, opt, /*track_plaintexts=*/false,
                     [&](const NablaKey& key, std::optional<BigInt>&) {
                         return encrypt(p, key) == c;
                     });
}

AttackReport ciphertext_only_ambiguity(const Ciphertext& c, const KeySpace& space,
                                       const AnalysisOptions& opt) {
    if (c.values.size() != space.k) {
        throw LengthMismatch("ciphertext length does not match the key space's k");
    }
    return run_sweep(space, opt, /*track_plaintexts=*/true,
                     [&](const NablaKey& key, std::optional<BigInt>& recovered) {
                         DecryptResult res = try_decrypt(c, key);
                         if (!res) return false;
                         recovered = std::move(res.plain->value);
                         return true;
                     });
}

LeakageReport reuse_leakage(const Ciphertext& c1, const Ciphertext& c2) {
    if (c1.values.size() != c2.values.size()) {
        throw LengthMismatch("ciphertexts have different lengths");
    }
    LeakageReport report;
    report.entries.reserve(c1.values.size());
    for (std::size_t i = 0; i < c1.values.size(); ++i) {
        LeakageEntry e;
        e.index = i + 1;
        mpz_gcd(e.common_divisor.get_mpz_t(), c1.values[i].get_mpz_t(), c2.values[i].get_mpz_t());
        e.flagged = e.common_divisor > 1;
        if (e.flagged) ++report.flagged_count;
        report.entries.push_back(std::move(e));
    }
    return report;
}

CiphertextStats ciphertext_stats(const Ciphertext& c, const Plainvalue& p) {
    CiphertextStats stats;
    stats.plaintext_bits = p.bit_len;
    stats.value_bits.reserve(c.values.size());
    for (const auto& v : c.values) {
        std::uint64_t bits = bit_length(v);
        stats.value_bits.push_back(bits);
        stats.total_value_bits += bits;
    }
    if (p.bit_len > 0) {
        stats.expansion_ratio = static_cast<double>(stats.total_value_bits) /
                                static_cast<double>(p.bit_len);
    }

    std::string text = serialize_ciphertext(c);
    stats.serialized_bytes = text.size();
    std::array<std::uint64_t, 256> counts{};
    for (unsigned char byte : text) ++counts[byte];
    const double expected = static_cast<double>(text.size()) / 256.0;
    double chi = 0.0;
    for (std::uint64_t n : counts) {
        const double d = static_cast<double>(n) - expected;
        chi += d * d / expected;
    }
    stats.chi_square = chi;
    return stats;
}

}  // namespace nabla
