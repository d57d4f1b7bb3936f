#include "nabla/io.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include "nabla/errors.hpp"

namespace nabla {

namespace {

constexpr std::string_view kKeyMagic = "NABLAKEY";
constexpr std::string_view kCiphertextMagic = "NABLACT";

// Strict line splitter: LF endings only, final newline required.
std::vector<std::string_view> split_lines(std::string_view text) {
    if (text.find('\r') != std::string_view::npos) {
        throw FormatError("CR line endings are not allowed");
    }
    if (text.empty() || text.back() != '\n') {
        throw FormatError("file must end with a newline");
    }
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\n') {
            lines.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    return lines;
}

// Decimal natural, no sign, no leading zeros (except "0" itself).
BigInt parse_nat(std::string_view tok) {
    if (tok.empty()) throw FormatError("empty integer");
    for (char ch : tok) {
        if (ch < '0' || ch > '9') throw FormatError("malformed integer");
    }
    if (tok.size() > 1 && tok.front() == '0') throw FormatError("leading zeros are not allowed");
    BigInt v;
    if (mpz_set_str(v.get_mpz_t(), std::string(tok).c_str(), 10) != 0) {
        throw FormatError("malformed integer");
    }
    return v;
}

std::uint64_t parse_u64(std::string_view tok) {
    BigInt v = parse_nat(tok);
    if (!v.fits_ulong_p()) throw FormatError("integer out of range");
    return v.get_ui();
}

std::vector<BigInt> parse_nat_list(std::string_view s, std::size_t expected) {
    std::vector<BigInt> out;
    out.reserve(expected);
    std::size_t start = 0;
    while (true) {
        std::size_t sp = s.find(' ', start);
        std::string_view tok = (sp == std::string_view::npos) ? s.substr(start)
                                                              : s.substr(start, sp - start);
        out.push_back(parse_nat(tok));  // rejects the empty token a double space makes
        if (sp == std::string_view::npos) break;
        start = sp + 1;
    }
    if (out.size() != expected) throw FormatError("element count does not match k");
    return out;
}

// The line must read "<field>=<payload>"; returns the payload.
std::string_view expect_field(std::string_view line, std::string_view field, std::size_t lineno) {
    std::string prefix = std::string(field) + "=";
    if (line.substr(0, prefix.size()) != prefix) {
        throw FormatError("expected '" + std::string(field) + "=' at line " + std::to_string(lineno));
    }
    return line.substr(prefix.size());
}

void check_version_line(std::string_view line, std::string_view magic, std::string_view what) {
    std::string expected = std::string(magic) + " 1";
    if (line == expected) return;
    if (line.substr(0, magic.size() + 1) == std::string(magic) + " ") {
        throw FormatError(std::string("unsupported ") + std::string(what) + " version");
    }
    throw FormatError(std::string("not a ") + std::string(what));
}

std::string join_list(const std::vector<BigInt>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ' ';
        out += values[i].get_str();
    }
    return out;
}

}  // namespace

std::string serialize_key(const NablaKey& key) {
    std::string out;
    out += "NABLAKEY 1\n";
    out += "k=" + std::to_string(key.size()) + "\n";
    out += "p0=" + key.p0.get_str() + "\n";
    out += "nabla=" + join_list(key.nabla.elems) + "\n";
    out += "dq=" + join_list(key.delta_q) + "\n";
    out += "dr=" + join_list(key.delta_r) + "\n";
    return out;
}

NablaKey parse_key(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw FormatError("empty key file");
    check_version_line(lines[0], kKeyMagic, "key file");
    if (lines.size() < 6) throw FormatError("truncated key file");
    if (lines.size() > 6) throw FormatError("trailing data after key");

    std::uint64_t k = parse_u64(expect_field(lines[1], "k", 2));
    if (k < 1) throw FormatError("k must be >= 1");

    NablaKey key;
    key.p0 = parse_nat(expect_field(lines[2], "p0", 3));
    key.nabla.elems = parse_nat_list(expect_field(lines[3], "nabla", 4), k);
    key.delta_q = parse_nat_list(expect_field(lines[4], "dq", 5), k);
    key.delta_r = parse_nat_list(expect_field(lines[5], "dr", 6), k);
    return key;
}

std::string serialize_ciphertext(const Ciphertext& c) {
    std::string out;
    out += "NABLACT 1\n";
    out += "bits=" + std::to_string(c.bit_len) + "\n";
    out += "k=" + std::to_string(c.values.size()) + "\n";
    for (const auto& v : c.values) {
        out += v.get_str();
        out += '\n';
    }
    return out;
}

Ciphertext parse_ciphertext(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw FormatError("empty ciphertext file");
    check_version_line(lines[0], kCiphertextMagic, "ciphertext file");
    if (lines.size() < 3) throw FormatError("truncated ciphertext file");

    Ciphertext c;
    c.bit_len = parse_u64(expect_field(lines[1], "bits", 2));
    std::uint64_t k = parse_u64(expect_field(lines[2], "k", 3));
    if (k < 1) throw FormatError("k must be >= 1");
    if (lines.size() < 3 + k) throw FormatError("truncated ciphertext file");
    if (lines.size() > 3 + k) throw FormatError("trailing data after ciphertext");

    c.values.reserve(k);
    for (std::uint64_t i = 0; i < k; ++i) {
        c.values.push_back(parse_nat(lines[3 + i]));
    }
    return c;
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path.string());
    const std::string& s = buf.str();
    return std::vector<std::uint8_t>(s.begin(), s.end());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read failed: " + path.string());
    return buf.str();
}

static void write_atomic_impl(const std::filesystem::path& path, const char* data,
                              std::size_t size) {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(rd()) + "." + std::to_string(counter.fetch_add(1));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        if (size > 0) out.write(data, static_cast<std::streamsize>(size));
        out.flush();
        if (!out.good()) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw IoError("rename failed: " + path.string() + ": " + ec.message());
    }
}

void write_file_atomic(const std::filesystem::path& path, std::string_view data) {
    write_atomic_impl(path, data.data(), data.size());
}

void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data) {
    write_atomic_impl(path, reinterpret_cast<const char*>(data.data()), data.size());
}

}  // namespace nabla
