#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace logometre {

/// True when `s` is well-formed UTF-8.
bool is_valid_utf8(std::string_view s);

/// Canonical lemma key: Unicode NFC followed by root-locale lowercasing.
/// The input must be valid UTF-8.
std::string normalize_lemma(std::string_view s);

/// 64-bit FNV-1a, used for content hashes of corpora and lexicons.
std::uint64_t fnv1a64(std::string_view data, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// Lowercase 16-digit hex rendering of a 64-bit hash.
std::string hex64(std::uint64_t value);

std::vector<std::string> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace logometre
