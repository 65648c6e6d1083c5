#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace loreseval::metrics {

enum class TokenScheme {
  // Approximates the common "13a" scorer tokenization: ASCII symbols and a
  // few Unicode quotes/dashes/dandas become standalone tokens; '.' and ','
  // stay attached between digits; '-' splits only after a digit.
  SplitPunctuation,
  WhitespaceOnly,
};

struct TokenizerConfig {
  TokenScheme scheme = TokenScheme::SplitPunctuation;
  bool lowercase = false;

  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config);

std::string_view to_string(TokenScheme scheme);

}  // namespace loreseval::metrics
