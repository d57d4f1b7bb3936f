#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nabla/analysis.hpp"
#include "nabla/cipher.hpp"
#include "nabla/errors.hpp"
#include "nabla/io.hpp"

namespace {

using namespace nabla;

// exit codes: 0 ok, 1 usage/io, 2 integrity or validation failure, 3 budget
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIntegrity = 2;
constexpr int kExitBudget = 3;

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string join_u64(const std::vector<std::uint64_t>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += std::to_string(xs[i]);
    }
    return out;
}

std::string join_big(const std::vector<BigInt>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ' ';
        out += xs[i].get_str();
    }
    return out;
}

std::string describe_key(const NablaKey& key) {
    return "nabla=[" + join_big(key.nabla.elems) + "] dq=[" + join_big(key.delta_q) +
           "] dr=[" + join_big(key.delta_r) + "] p0=" + key.p0.get_str();
}

void emit_report_file(const std::string& path, const std::string& body) {
    if (!path.empty()) write_file_atomic(path, body);
}

void print_attack_report(const std::string& op, const KeySpace& space, const AttackReport& r,
                         const std::string& report_path) {
    std::cout << "op: " << op << "\n"
              << "space: k=" << space.k << " nabla_max=" << space.nabla_max
              << " delta_max=" << space.delta_max << " p0_max=" << space.p0_max << " ("
              << keyspace_size(space).get_str() << " keys)\n"
              << "candidates tested:   " << r.candidates_tested << "\n"
              << "consistent keys:     " << r.consistent_keys << "\n"
              << "distinct plaintexts: " << r.distinct_plaintexts << "\n";
    for (std::size_t i = 0; i < r.findings.size(); ++i) {
        const auto& f = r.findings[i];
        std::cout << "finding " << i << ": index=" << f.key_index << " " << describe_key(f.key);
        if (f.plaintext) std::cout << " plaintext=" << f.plaintext->get_str();
        std::cout << "\n";
    }
    std::cout << "elapsed: " << format_double(r.elapsed.count()) << " s\n";

    std::string body;
    body += "op=" + op + "\n";
    body += "k=" + std::to_string(space.k) + "\n";
    body += "nabla_max=" + std::to_string(space.nabla_max) + "\n";
    body += "delta_max=" + std::to_string(space.delta_max) + "\n";
    body += "p0_max=" + std::to_string(space.p0_max) + "\n";
    body += "candidates_tested=" + std::to_string(r.candidates_tested) + "\n";
    body += "consistent_keys=" + std::to_string(r.consistent_keys) + "\n";
    body += "distinct_plaintexts=" + std::to_string(r.distinct_plaintexts) + "\n";
    for (std::size_t i = 0; i < r.findings.size(); ++i) {
        const auto& f = r.findings[i];
        const std::string p = "finding." + std::to_string(i) + ".";
        body += p + "index=" + std::to_string(f.key_index) + "\n";
        body += p + "nabla=" + join_big(f.key.nabla.elems) + "\n";
        body += p + "dq=" + join_big(f.key.delta_q) + "\n";
        body += p + "dr=" + join_big(f.key.delta_r) + "\n";
        body += p + "p0=" + f.key.p0.get_str() + "\n";
        if (f.plaintext) body += p + "plaintext=" + f.plaintext->get_str() + "\n";
    }
    body += "elapsed_seconds=" + format_double(r.elapsed.count()) + "\n";
    emit_report_file(report_path, body);
}

struct SpaceFlags {
    std::uint64_t k = 1, nabla_max = 1, delta_max = 1, p0_max = 1;
    std::uint64_t budget = 100'000'000;
    unsigned jobs = 1;

    void attach(CLI::App* cmd) {
        cmd->add_option("--k", k, "key length")->required()->check(CLI::PositiveNumber);
        cmd->add_option("--nabla-max", nabla_max, "largest candidate nabla value")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--delta-max", delta_max, "largest candidate multiplier")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--p0-max", p0_max, "largest candidate p0")
            ->required()
            ->check(CLI::PositiveNumber);
        cmd->add_option("--budget", budget, "largest key space this run may enumerate");
        cmd->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
    }

    KeySpace space() const { return KeySpace{k, nabla_max, delta_max, p0_max}; }
    AnalysisOptions options() const { return AnalysisOptions{budget, jobs, 10}; }
};

int run(int argc, char** argv) {
    CLI::App app{"measurement-by-nabla cipher tool"};
    app.require_subcommand(1);

    // keygen
    auto* keygen_cmd = app.add_subcommand("keygen", "generate a key file");
    std::uint64_t kg_k = 0, kg_bits = 0;
    std::string kg_out;
    std::optional<std::uint64_t> kg_seed;
    keygen_cmd->add_option("--k", kg_k, "number of nabla elements")
        ->required()
        ->check(CLI::PositiveNumber);
    keygen_cmd->add_option("--bits", kg_bits, "draw values up to 2^bits")->required();
    keygen_cmd->add_option("--out", kg_out, "key file to write")->required();
    keygen_cmd->add_option("--seed", kg_seed, "deterministic stream (testing only)");

    // encrypt / decrypt
    auto* encrypt_cmd = app.add_subcommand("encrypt", "encrypt a file");
    std::string enc_key, enc_in, enc_out;
    encrypt_cmd->add_option("--key", enc_key, "key file")->required();
    encrypt_cmd->add_option("--in", enc_in, "plaintext file")->required();
    encrypt_cmd->add_option("--out", enc_out, "ciphertext file to write")->required();

    auto* decrypt_cmd = app.add_subcommand("decrypt", "decrypt a file");
    std::string dec_key, dec_in, dec_out;
    decrypt_cmd->add_option("--key", dec_key, "key file")->required();
    decrypt_cmd->add_option("--in", dec_in, "ciphertext file")->required();
    decrypt_cmd->add_option("--out", dec_out, "plaintext file to write")->required();

    // analyze
    auto* analyze_cmd = app.add_subcommand("analyze", "empirical attacks and statistics");
    analyze_cmd->require_subcommand(1);

    auto* bf_cmd = analyze_cmd->add_subcommand(
        "bruteforce", "enumerate a key space against a known plaintext/ciphertext pair");
    std::string bf_plain, bf_ct, bf_report;
    SpaceFlags bf_flags;
    bf_cmd->add_option("--plain", bf_plain, "known plaintext file")->required();
    bf_cmd->add_option("--ct", bf_ct, "ciphertext file")->required();
    bf_flags.attach(bf_cmd);
    bf_cmd->add_option("--report", bf_report, "write a machine-readable report here");

    auto* amb_cmd = analyze_cmd->add_subcommand(
        "ambiguity", "count keys under which a bare ciphertext decrypts");
    std::string amb_ct, amb_report;
    SpaceFlags amb_flags;
    amb_cmd->add_option("--ct", amb_ct, "ciphertext file")->required();
    amb_flags.attach(amb_cmd);
    amb_cmd->add_option("--report", amb_report, "write a machine-readable report here");

    auto* reuse_cmd = analyze_cmd->add_subcommand(
        "reuse", "per-coordinate gcds of two same-key ciphertexts");
    std::string reuse_ct1, reuse_ct2, reuse_report;
    reuse_cmd->add_option("--ct1", reuse_ct1, "first ciphertext")->required();
    reuse_cmd->add_option("--ct2", reuse_ct2, "second ciphertext")->required();
    reuse_cmd->add_option("--report", reuse_report, "write a machine-readable report here");

    auto* stats_cmd = analyze_cmd->add_subcommand("stats", "expansion and byte statistics");
    std::string stats_ct, stats_plain, stats_report;
    stats_cmd->add_option("--ct", stats_ct, "ciphertext file")->required();
    stats_cmd->add_option("--plain", stats_plain, "plaintext file")->required();
    stats_cmd->add_option("--report", stats_report, "write a machine-readable report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (keygen_cmd->parsed()) {
        NablaKey key;
        if (kg_seed) {
            SeededEntropy entropy(*kg_seed);
            key = keygen(kg_k, kg_bits, entropy);
        } else {
            SystemEntropy entropy;
            key = keygen(kg_k, kg_bits, entropy);
        }
        write_file_atomic(kg_out, serialize_key(key));
        std::cerr << "wrote key (k=" << kg_k << ", bits=" << kg_bits << ") to " << kg_out << "\n";
        return kExitOk;
    }

    if (encrypt_cmd->parsed()) {
        NablaKey key = parse_key(read_text_file(enc_key));
        Plainvalue p = plainvalue_from_bytes(read_binary_file(enc_in));
        Ciphertext c = encrypt(p, key);
        write_file_atomic(enc_out, serialize_ciphertext(c));
        return kExitOk;
    }

    if (decrypt_cmd->parsed()) {
        NablaKey key = parse_key(read_text_file(dec_key));
        Ciphertext c = parse_ciphertext(read_text_file(dec_in));
        Plainvalue p = decrypt(c, key);
        auto bytes = bytes_from_plainvalue(p);
        write_file_atomic(dec_out, std::span<const std::uint8_t>(bytes));
        return kExitOk;
    }

    if (bf_cmd->parsed()) {
        Plainvalue p = plainvalue_from_bytes(read_binary_file(bf_plain));
        Ciphertext c = parse_ciphertext(read_text_file(bf_ct));
        AttackReport r = bruteforce_known_plaintext(p, c, bf_flags.space(), bf_flags.options());
        print_attack_report("bruteforce", bf_flags.space(), r, bf_report);
        return kExitOk;
    }

    if (amb_cmd->parsed()) {
        Ciphertext c = parse_ciphertext(read_text_file(amb_ct));
        AttackReport r = ciphertext_only_ambiguity(c, amb_flags.space(), amb_flags.options());
        print_attack_report("ambiguity", amb_flags.space(), r, amb_report);
        return kExitOk;
    }

    if (reuse_cmd->parsed()) {
        Ciphertext c1 = parse_ciphertext(read_text_file(reuse_ct1));
        Ciphertext c2 = parse_ciphertext(read_text_file(reuse_ct2));
        LeakageReport r = reuse_leakage(c1, c2);
        std::cout << "op: reuse\nk: " << r.entries.size() << "\n";
        std::string body = "op=reuse\nk=" + std::to_string(r.entries.size()) + "\n";
        for (const auto& e : r.entries) {
            std::cout << "index " << e.index << ": gcd=" << e.common_divisor.get_str()
                      << (e.flagged ? " LEAK" : "") << "\n";
            body += "gcd." + std::to_string(e.index) + "=" + e.common_divisor.get_str() + "\n";
            body += "flagged." + std::to_string(e.index) + "=" + (e.flagged ? "1" : "0") + "\n";
        }
        std::cout << "flagged: " << r.flagged_count << " of " << r.entries.size() << "\n";
        body += "flagged_count=" + std::to_string(r.flagged_count) + "\n";
        emit_report_file(reuse_report, body);
        return kExitOk;
    }

    if (stats_cmd->parsed()) {
        Ciphertext c = parse_ciphertext(read_text_file(stats_ct));
        Plainvalue p = plainvalue_from_bytes(read_binary_file(stats_plain));
        CiphertextStats s = ciphertext_stats(c, p);
        std::cout << "op: stats\n"
                  << "plaintext bits: " << s.plaintext_bits << "\n"
                  << "value bits: " << join_u64(s.value_bits) << " (total "
                  << s.total_value_bits << ")\n"
                  << "expansion ratio: "
                  << (s.expansion_ratio ? format_double(*s.expansion_ratio) : "undefined") << "\n"
                  << "serialized bytes: " << s.serialized_bytes << "\n"
                  << "chi-square over serialized bytes: " << format_double(s.chi_square) << "\n";
        std::string body = "op=stats\n";
        body += "plaintext_bits=" + std::to_string(s.plaintext_bits) + "\n";
        body += "value_bits=" + join_u64(s.value_bits) + "\n";
        body += "total_value_bits=" + std::to_string(s.total_value_bits) + "\n";
        body += "expansion_ratio=" +
                (s.expansion_ratio ? format_double(*s.expansion_ratio) : std::string("undefined")) +
                "\n";
        body += "serialized_bytes=" + std::to_string(s.serialized_bytes) + "\n";
        body += "chi_square=" + format_double(s.chi_square) + "\n";
        emit_report_file(stats_report, body);
        return kExitOk;
    }

    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const BudgetExceeded& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitBudget;
    } catch (const IntegrityError& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const InvalidKey& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const RangeError& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const LengthMismatch& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const FormatError& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitIntegrity;
    } catch (const std::exception& e) {
        std::cerr << "nabla: " << e.what() << "\n";
        return kExitUsage;
    }
}
