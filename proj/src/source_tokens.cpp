#include "fairseco/source_tokens.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

#include "fairseco/model.hpp"

namespace fairseco {

namespace {

using KeywordSet = std::set<std::string, std::less<>>;

const KeywordSet& keywords_for(std::string_view language) {
  static const KeywordSet python{
      "False", "None",   "True",    "and",      "as",     "assert", "async", "await",
      "break", "class",  "continue", "def",     "del",    "elif",   "else",  "except",
      "finally", "for",  "from",    "global",   "if",     "import", "in",    "is",
      "lambda", "nonlocal", "not",  "or",       "pass",   "raise",  "return", "try",
      "while", "with",   "yield"};
  static const KeywordSet c{
      "auto",   "break",  "case",    "char",   "const",    "continue", "default", "do",
      "double", "else",   "enum",    "extern", "float",    "for",      "goto",    "if",
      "inline", "int",    "long",    "register", "restrict", "return",  "short",   "signed",
      "sizeof", "static", "struct",  "switch", "typedef",  "union",    "unsigned", "void",
      "volatile", "while", "_Bool",  "bool",   "true",     "false",    "NULL"};
  static const KeywordSet cpp = [] {
    KeywordSet k = c;
    for (const char* w :
         {"alignas", "alignof", "catch", "class", "concept", "consteval", "constexpr",
          "constinit", "const_cast", "co_await", "co_return", "co_yield", "decltype", "delete",
          "dynamic_cast", "explicit", "export", "friend", "mutable", "namespace", "new",
          "noexcept", "nullptr", "operator", "private", "protected", "public",
          "reinterpret_cast", "requires", "static_assert", "static_cast", "template", "this",
          "thread_local", "throw", "try", "typeid", "typename", "using", "virtual", "wchar_t",
          "char8_t", "char16_t", "char32_t"})
      k.insert(w);
    return k;
  }();
  static const KeywordSet java{
      "abstract", "assert",   "boolean",  "break",     "byte",      "case",       "catch",
      "char",     "class",    "const",    "continue",  "default",   "do",         "double",
      "else",     "enum",     "extends",  "final",     "finally",   "float",      "for",
      "goto",     "if",       "implements", "import",  "instanceof", "int",       "interface",
      "long",     "native",   "new",      "package",   "private",   "protected",  "public",
      "return",   "short",    "static",   "strictfp",  "super",     "switch",     "synchronized",
      "this",     "throw",    "throws",   "transient", "try",       "void",       "volatile",
      "while",    "true",     "false",    "null",      "var",       "record"};
  static const KeywordSet javascript{
      "break",  "case",   "catch",  "class",  "const",     "continue", "debugger", "default",
      "delete", "do",     "else",   "export", "extends",   "finally",  "for",      "function",
      "if",     "import", "in",     "instanceof", "new",   "return",   "super",    "switch",
      "this",   "throw",  "try",    "typeof", "var",       "void",     "while",    "with",
      "yield",  "let",    "static", "async",  "await",     "true",     "false",    "null",
      "undefined"};
  static const KeywordSet typescript = [] {
    KeywordSet k = javascript;
    for (const char* w : {"interface", "type", "enum", "implements", "private", "protected",
                          "public", "readonly", "abstract", "declare", "namespace", "module",
                          "any", "number", "string", "boolean", "never", "unknown", "keyof"})
      k.insert(w);
    return k;
  }();
  static const KeywordSet csharp{
      "abstract", "as",       "base",     "bool",     "break",    "byte",     "case",
      "catch",    "char",     "checked",  "class",    "const",    "continue", "decimal",
      "default",  "delegate", "do",       "double",   "else",     "enum",     "event",
      "explicit", "extern",   "false",    "finally",  "fixed",    "float",    "for",
      "foreach",  "goto",     "if",       "implicit", "in",       "int",      "interface",
      "internal", "is",       "lock",     "long",     "namespace", "new",     "null",
      "object",   "operator", "out",      "override", "params",   "private",  "protected",
      "public",   "readonly", "ref",      "return",   "sbyte",    "sealed",   "short",
      "sizeof",   "static",   "string",   "struct",   "switch",   "this",     "throw",
      "true",     "try",      "typeof",   "uint",     "ulong",    "unsafe",   "ushort",
      "using",    "virtual",  "void",     "volatile", "while",    "var",      "async",
      "await"};
  static const KeywordSet go{
      "break",  "case",   "chan",   "const", "continue", "default", "defer",  "else",
      "fallthrough", "for", "func", "go",    "goto",     "if",      "import", "interface",
      "map",    "package", "range", "return", "select",  "struct",  "switch", "type",
      "var",    "true",   "false",  "nil"};
  static const KeywordSet rust{
      "as",    "async", "await", "break",  "const", "continue", "crate", "dyn",   "else",
      "enum",  "extern", "false", "fn",    "for",   "if",       "impl",  "in",    "let",
      "loop",  "match", "mod",   "move",   "mut",   "pub",      "ref",   "return", "self",
      "Self",  "static", "struct", "super", "trait", "true",    "type",  "unsafe", "use",
      "where", "while"};
  static const KeywordSet kotlin{
      "as",    "break", "class", "continue", "do",     "else",  "false", "for",    "fun",
      "if",    "in",    "interface", "is",   "null",   "object", "package", "return", "super",
      "this",  "throw", "true",  "try",     "typealias", "val", "var",   "when",   "while",
      "override", "private", "public", "protected", "internal", "open", "data"};

  static const std::unordered_map<std::string_view, const KeywordSet*> table{
      {"python", &python}, {"c", &c},           {"cpp", &cpp},       {"java", &java},
      {"javascript", &javascript}, {"typescript", &typescript}, {"csharp", &csharp},
      {"go", &go},         {"rust", &rust},     {"kotlin", &kotlin}};
  auto it = table.find(language);
  if (it == table.end())
    throw ParseError(fmt::format("unsupported language '{}'", language));
  return *it->second;
}

constexpr std::array<std::string_view, 44> kOperators{
    ">>>=", "<<=", ">>=", "...", "->*", "===", "!==", "**=", "//=", ">>>", "<=>",
    "->",   "=>",  "::",  "==",  "!=",  "<=",  ">=",  "&&",  "||",  "++",  "--",
    "+=",   "-=",  "*=",  "/=",  "%=",  "&=",  "|=",  "^=",  "<<",  ">>",  "**",
    ":=",   "?.",  "??",  "@=",  ".*",  "//",  "..",  "#",   "$",   "\\",  "`"};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
         static_cast<unsigned char>(c) >= 0x80;
}
bool ident_char(char c) {
  return ident_start(c) || std::isdigit(static_cast<unsigned char>(c));
}

class Lexer {
public:
  Lexer(std::string_view src, std::string_view language)
      : s_(src), lang_(language), python_(language == "python"), keywords_(keywords_for(language)) {}

  std::vector<Token> run() {
    bool at_line_start = true;  // Python logical-line tracking
    std::size_t line_begin = 0;
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      if (c == '\n') {
        advance();
        line_begin = pos_;
        if (python_ && depth_ == 0 && !continuation_) at_line_start = true;
        continuation_ = false;
        bol_ = true;
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
        advance();
        continue;
      }
      if (python_ && c == '\\' && peek(1) == '\n') {
        continuation_ = true;
        advance();
        continue;
      }
      if (python_ && c == '#') {
        skip_to_eol();
        continue;
      }
      if (!python_ && c == '/' && peek(1) == '/') {
        skip_to_eol();
        continue;
      }
      if (!python_ && c == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      if (!python_ && c == '#' && bol_ && (lang_ == "c" || lang_ == "cpp" || lang_ == "csharp")) {
        skip_preprocessor();
        continue;
      }

      Token t;
      t.begin = pos_;
      t.line = line_;
      t.column = static_cast<int>(pos_ - line_begin);
      lex_token(t);
      t.end = pos_;
      t.end_line = line_;
      if (python_) {
        t.line_start = at_line_start;
        at_line_start = false;
        if (t.kind == TokenKind::Operator) {
          if (t.text == "(" || t.text == "[" || t.text == "{") ++depth_;
          if ((t.text == ")" || t.text == "]" || t.text == "}") && depth_ > 0) --depth_;
        }
      }
      bol_ = false;
      out_.push_back(std::move(t));
    }
    return std::move(out_);
  }

private:
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }
  void advance() {
    if (s_[pos_] == '\n') ++line_;
    ++pos_;
  }
  [[noreturn]] void fail(const char* what) const {
    throw ParseError(fmt::format("tokenization failure at line {}: {}", line_, what));
  }

  void skip_to_eol() {
    while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
  }
  void skip_block_comment() {
    pos_ += 2;
    while (pos_ < s_.size() && !(s_[pos_] == '*' && peek(1) == '/')) advance();
    if (pos_ >= s_.size()) fail("unterminated block comment");
    pos_ += 2;
  }
  void skip_preprocessor() {
    while (pos_ < s_.size() && s_[pos_] != '\n') {
      if (s_[pos_] == '\\' && peek(1) == '\n') {
        advance();
        advance();
        continue;
      }
      if (s_[pos_] == '/' && peek(1) == '*') {
        skip_block_comment();
        continue;
      }
      ++pos_;
    }
  }

  void lex_quoted(char quote, bool escapes = true) {
    advance();
    while (true) {
      if (pos_ >= s_.size()) fail("unterminated string literal");
      const char c = s_[pos_];
      if (c == '\n' && quote != '`') fail("unterminated string literal");
      if (escapes && c == '\\') {
        advance();
        if (pos_ < s_.size()) advance();
        continue;
      }
      advance();
      if (c == quote) return;
    }
  }

  void lex_python_string(std::size_t prefix_len) {
    pos_ += prefix_len;
    const char q = s_[pos_];
    const bool raw = std::any_of(s_.begin() + static_cast<std::ptrdiff_t>(pos_ - prefix_len),
                                 s_.begin() + static_cast<std::ptrdiff_t>(pos_),
                                 [](char ch) { return ch == 'r' || ch == 'R'; });
    if (peek(1) == q && peek(2) == q) {
      pos_ += 3;
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated triple-quoted string");
        if (s_[pos_] == '\\' && !raw) {
          advance();
          if (pos_ < s_.size()) advance();
          continue;
        }
        if (s_[pos_] == q && peek(1) == q && peek(2) == q) {
          pos_ += 3;
          return;
        }
        advance();
      }
    }
    advance();
    while (true) {
      if (pos_ >= s_.size() || s_[pos_] == '\n') fail("unterminated string literal");
      if (s_[pos_] == '\\') {
        advance();
        if (pos_ < s_.size()) advance();
        continue;
      }
      if (s_[pos_] == q) {
        advance();
        return;
      }
      advance();
    }
  }

  // C++ R"delim(...)delim" and Rust r#"..."# raw strings. Returns false if not one.
  bool try_raw_string() {
    if (lang_ == "cpp" && s_[pos_] == 'R' && peek(1) == '"') {
      const auto open = s_.find('(', pos_ + 2);
      if (open == std::string_view::npos) fail("malformed raw string");
      const std::string close = ")" + std::string(s_.substr(pos_ + 2, open - pos_ - 2)) + "\"";
      const auto end = s_.find(close, open + 1);
      if (end == std::string_view::npos) fail("unterminated raw string");
      while (pos_ < end + close.size()) advance();
      return true;
    }
    if (lang_ == "rust" && s_[pos_] == 'r' && (peek(1) == '"' || peek(1) == '#')) {
      std::size_t hashes = 0;
      while (peek(1 + hashes) == '#') ++hashes;
      if (peek(1 + hashes) != '"') return false;
      const std::string close = "\"" + std::string(hashes, '#');
      const auto end = s_.find(close, pos_ + 2 + hashes);
      if (end == std::string_view::npos) fail("unterminated raw string");
      while (pos_ < end + close.size()) advance();
      return true;
    }
    return false;
  }

  void lex_number() {
    if (s_[pos_] == '0' && (peek(1) == 'x' || peek(1) == 'X' || peek(1) == 'b' || peek(1) == 'B' ||
                            peek(1) == 'o' || peek(1) == 'O')) {
      pos_ += 2;
    }
    while (pos_ < s_.size()) {
      const char c = s_[pos_];
      const bool digit_separator =
          c == '\'' && lang_ == "cpp" && std::isalnum(static_cast<unsigned char>(peek(1)));
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || digit_separator) {
        if ((c == 'e' || c == 'E' || c == 'p' || c == 'P') && (peek(1) == '+' || peek(1) == '-'))
          ++pos_;
        ++pos_;
      } else if (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        ++pos_;
      } else if (c == '.' && !python_ && !std::isalpha(static_cast<unsigned char>(peek(1))) &&
                 peek(1) != '.') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  void lex_token(Token& t) {
    const char c = s_[pos_];
    if (python_ && ident_start(c)) {
      // String prefixes: r, b, u, f and two-letter combinations.
      std::size_t n = 0;
      while (n < 2 && std::string_view("rRbBuUfF").find(peek(n)) != std::string_view::npos) ++n;
      if (n > 0 && (peek(n) == '"' || peek(n) == '\'')) {
        lex_python_string(n);
        t.kind = TokenKind::String;
        t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
        return;
      }
    }
    if (!python_ && (c == 'R' || c == 'r') && try_raw_string()) {
      t.kind = TokenKind::String;
      t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
      return;
    }
    if (ident_start(c)) {
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
      // C/C++ string prefixes such as L"", u8"".
      if (!python_ && (peek() == '"') && (t.text == "L" || t.text == "u" || t.text == "U" || t.text == "u8")) {
        lex_quoted('"');
        t.kind = TokenKind::String;
        t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
        return;
      }
      t.kind = keywords_.contains(t.text) ? TokenKind::Keyword : TokenKind::Identifier;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      lex_number();
      t.kind = TokenKind::Number;
      t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
      return;
    }
    if (python_ && (c == '"' || c == '\'')) {
      lex_python_string(0);
      t.kind = TokenKind::String;
      t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
      return;
    }
    if (!python_ && (c == '"' || c == '`' || (c == '\'' && lang_ != "rust"))) {
      lex_quoted(c, !(c == '`' && lang_ == "go"));
      t.kind = TokenKind::String;
      t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
      return;
    }
    if (c == '\'' && lang_ == "rust") {
      // char literal 'x' / '\n' versus lifetime 'a
      if (peek(1) == '\\' || (peek(2) == '\'')) {
        lex_quoted('\'');
        t.kind = TokenKind::String;
      } else {
        ++pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
        t.kind = TokenKind::Identifier;
      }
      t.text = std::string(s_.substr(t.begin, pos_ - t.begin));
      return;
    }
    for (auto op : kOperators) {
      if (s_.substr(pos_, op.size()) == op) {
        if (op == "//" && !python_) continue;
        pos_ += op.size();
        t.kind = TokenKind::Operator;
        t.text = std::string(op);
        return;
      }
    }
    ++pos_;
    t.kind = TokenKind::Operator;
    t.text = std::string(1, c);
  }

  std::string_view s_;
  std::string_view lang_;
  bool python_;
  const KeywordSet& keywords_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int depth_ = 0;
  bool continuation_ = false;
  bool bol_ = true;
  std::vector<Token> out_;
};

}  // namespace

bool is_supported_language(std::string_view language) {
  static const std::array<std::string_view, 10> kLangs{
      "python", "c", "cpp", "java", "javascript", "typescript", "csharp", "go", "rust", "kotlin"};
  return std::find(kLangs.begin(), kLangs.end(), language) != kLangs.end();
}

bool is_python(std::string_view language) {
  return language == "python";
}

std::vector<Token> tokenize(std::string_view source, std::string_view language) {
  return Lexer(source, language).run();
}

}  // namespace fairseco
