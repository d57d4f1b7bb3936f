#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "nabla/cipher.hpp"

namespace nabla {

// Key and ciphertext files are UTF-8 text with LF line endings, decimal
// integers without leading zeros, fields in fixed order, single spaces
// between list elements. Parsers reject anything else: unknown versions,
// reordered or duplicated fields, malformed integers, CR bytes, trailing
// data.

std::string serialize_key(const NablaKey& key);
NablaKey parse_key(std::string_view text);  // FormatError

std::string serialize_ciphertext(const Ciphertext& c);
Ciphertext parse_ciphertext(std::string_view text);  // FormatError

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);  // IoError
std::string read_text_file(const std::filesystem::path& path);                  // IoError

/// Temp file in the target directory + rename, so a failed run never
/// leaves a partial file at `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view data);
void write_file_atomic(const std::filesystem::path& path, std::span<const std::uint8_t> data);

}  // namespace nabla
