#include "loreseval/tokenizer.hpp"

#include "loreseval/utf8.hpp"

namespace loreseval::metrics {

namespace {

bool is_digit(char32_t cp) { return cp >= '0' && cp <= '9'; }

bool is_split_symbol(char32_t cp) {
  switch (cp) {
    case '!': case '"': case '#': case '$': case '%': case '&':
    case '(': case ')': case '*': case '+': case '/':
    case ':': case ';': case '<': case '=': case '>': case '?': case '@':
    case '[': case '\\': case ']': case '^': case '_': case '`':
    case '{': case '|': case '}': case '~':
    case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
    case 0x2013: case 0x2014: case 0x201C: case 0x201D: case 0x201E:
    case 0x2026: case 0x2039: case 0x203A: case 0x0964: case 0x0965:
      return true;
    default:
      return false;
  }
}

}  // namespace

std::string_view to_string(TokenScheme scheme) {
  return scheme == TokenScheme::SplitPunctuation ? "split-punctuation" : "whitespace-only";
}

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::u32string chars = utf8::decode(text);
  if (config.lowercase) {
    for (char32_t& cp : chars) cp = utf8::to_lower(cp);
  }

  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };

  const bool split = config.scheme == TokenScheme::SplitPunctuation;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const char32_t cp = chars[i];
    if (utf8::is_space(cp)) {
      flush();
      continue;
    }
    if (split) {
      const bool prev_digit = i > 0 && is_digit(chars[i - 1]);
      const bool next_digit = i + 1 < chars.size() && is_digit(chars[i + 1]);
      bool standalone = is_split_symbol(cp);
      if (cp == '.' || cp == ',') standalone = !(prev_digit && next_digit);
      if (cp == '-') standalone = prev_digit;
      if (standalone) {
        flush();
        utf8::append(current, cp);
        flush();
        continue;
      }
    }
    utf8::append(current, cp);
  }
  flush();
  return tokens;
}

}  // namespace loreseval::metrics
