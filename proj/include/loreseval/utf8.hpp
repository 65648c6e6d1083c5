#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace loreseval::utf8 {

// Byte offset of the first malformed sequence, or nullopt when `text` is
// well-formed UTF-8 (overlong forms and surrogates count as malformed).
std::optional<std::size_t> find_invalid(std::string_view text);

inline bool is_valid(std::string_view text) { return !find_invalid(text); }

// Throws Error{EncodingError} on malformed input.
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);
void append(std::string& out, char32_t cp);

bool is_space(char32_t cp);

// Simple (1:1) lowercase mapping for Latin, Greek, Cyrillic, Armenian and
// fullwidth Latin. Scripts without case (Devanagari, CJK, ...) pass through.
char32_t to_lower(char32_t cp);
std::string lowercase(std::string_view text);

}  // namespace loreseval::utf8
