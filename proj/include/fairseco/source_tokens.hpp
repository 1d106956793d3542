// Lexers for Python and brace-delimited (C-family) languages. Comments,
// whitespace and preprocessor lines are dropped.

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fairseco {

enum class TokenKind { Identifier, Keyword, Number, String, Operator };

struct Token {
  TokenKind kind = TokenKind::Operator;
  std::string text;
  int line = 1;      // first line
  int end_line = 1;  // last line (multi-line strings)
  std::size_t begin = 0;
  std::size_t end = 0;  // one past the last byte
  int column = 0;       // 0-based column of `begin`
  bool line_start = false;  // first token of a logical line (Python only)
};

bool is_supported_language(std::string_view language);
bool is_python(std::string_view language);

/// Throws ParseError on an unterminated string or block comment, or an
/// unsupported language tag.
std::vector<Token> tokenize(std::string_view source, std::string_view language);

}  // namespace fairseco
