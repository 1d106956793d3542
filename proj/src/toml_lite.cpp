#include "fairseco/toml_lite.hpp"

#include <cctype>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "fairseco/model.hpp"

namespace fairseco {

using nlohmann::json;

namespace {

class TomlParser {
public:
  explicit TomlParser(std::string_view text) : s_(text) {}

  json parse() {
    json root = json::object();
    json* current = &root;
    while (true) {
      skip_ws_comments_newlines();
      if (eof()) break;
      if (peek() == '[') {
        const bool array_table = peek(1) == '[';
        pos_ += array_table ? 2 : 1;
        skip_inline_ws();
        auto path = parse_key_path();
        skip_inline_ws();
        expect(']');
        if (array_table) expect(']');
        current = array_table ? &open_array_table(root, path) : &open_table(root, path);
      } else {
        auto path = parse_key_path();
        skip_inline_ws();
        expect('=');
        skip_inline_ws();
        json value = parse_value();
        assign(*current, path, std::move(value));
      }
      skip_inline_ws();
      if (!eof() && peek() == '#') skip_comment();
      if (!eof() && peek() != '\n' && peek() != '\r') fail("expected end of line");
    }
    return root;
  }

private:
  bool eof() const { return pos_ >= s_.size(); }
  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < s_.size() ? s_[pos_ + ahead] : '\0';
  }
  char get() {
    const char c = s_[pos_++];
    if (c == '\n') ++line_;
    return c;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(fmt::format("TOML line {}: {}", line_, msg));
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(fmt::format("expected '{}'", c));
    get();
  }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }
  void skip_comment() {
    while (!eof() && peek() != '\n') get();
  }
  void skip_ws_comments_newlines() {
    while (!eof()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        get();
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path;
    while (true) {
      skip_inline_ws();
      if (peek() == '"') {
        path.push_back(parse_basic_string());
      } else if (peek() == '\'') {
        path.push_back(parse_literal_string());
      } else {
        std::string key;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                          peek() == '-'))
          key.push_back(get());
        if (key.empty()) fail("expected key");
        path.push_back(std::move(key));
      }
      skip_inline_ws();
      if (peek() != '.') break;
      get();
    }
    return path;
  }

  json& open_table(json& root, const std::vector<std::string>& path) {
    json* node = &root;
    for (const auto& k : path) {
      json& child = (*node)[k];
      if (child.is_null()) child = json::object();
      node = child.is_array() ? &child.back() : &child;
      if (!node->is_object()) fail("key '" + k + "' is not a table");
    }
    return *node;
  }

  json& open_array_table(json& root, const std::vector<std::string>& path) {
    json* node = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json& child = (*node)[path[i]];
      if (child.is_null()) child = json::object();
      node = child.is_array() ? &child.back() : &child;
    }
    json& arr = (*node)[path.back()];
    if (arr.is_null()) arr = json::array();
    if (!arr.is_array()) fail("key '" + path.back() + "' is not an array of tables");
    arr.push_back(json::object());
    return arr.back();
  }

  void assign(json& table, const std::vector<std::string>& path, json value) {
    json* node = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json& child = (*node)[path[i]];
      if (child.is_null()) child = json::object();
      if (!child.is_object()) fail("key '" + path[i] + "' is not a table");
      node = &child;
    }
    if (node->contains(path.back())) fail("duplicate key '" + path.back() + "'");
    (*node)[path.back()] = std::move(value);
  }

  json parse_value() {
    const char c = peek();
    if (c == '"') return s_.substr(pos_, 3) == "\"\"\"" ? json(parse_multiline_basic())
                                                       : json(parse_basic_string());
    if (c == '\'') return s_.substr(pos_, 3) == "'''" ? json(parse_multiline_literal())
                                                      : json(parse_literal_string());
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    return parse_bare_scalar();
  }

  void append_escape(std::string& out) {
    const char e = get();
    switch (e) {
      case 'n': out.push_back('\n'); break;
      case 't': out.push_back('\t'); break;
      case 'r': out.push_back('\r'); break;
      case 'b': out.push_back('\b'); break;
      case 'f': out.push_back('\f'); break;
      case '"': out.push_back('"'); break;
      case '\\': out.push_back('\\'); break;
      case 'u':
      case 'U': {
        const int n = e == 'u' ? 4 : 8;
        if (pos_ + n > s_.size()) fail("truncated unicode escape");
        const auto cp = std::stoul(std::string(s_.substr(pos_, n)), nullptr, 16);
        pos_ += n;
        encode_utf8(out, cp);
        break;
      }
      default: fail(fmt::format("bad escape '\\{}'", e));
    }
  }

  static void encode_utf8(std::string& out, unsigned long cp) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = get();
      if (c == '"') break;
      if (c == '\\') {
        append_escape(out);
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  std::string parse_literal_string() {
    expect('\'');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = get();
      if (c == '\'') break;
      out.push_back(c);
    }
    return out;
  }

  std::string parse_multiline_basic() {
    pos_ += 3;
    if (peek() == '\r') get();
    if (peek() == '\n') get();
    std::string out;
    while (true) {
      if (eof()) fail("unterminated multi-line string");
      if (s_.substr(pos_, 3) == "\"\"\"") {
        pos_ += 3;
        break;
      }
      const char c = get();
      if (c == '\\') {
        if (peek() == '\n' || peek() == '\r' || peek() == ' ' || peek() == '\t') {
          while (!eof() && std::isspace(static_cast<unsigned char>(peek()))) get();
        } else {
          append_escape(out);
        }
      } else {
        out.push_back(c);
      }
    }
    return out;
  }

  std::string parse_multiline_literal() {
    pos_ += 3;
    if (peek() == '\r') get();
    if (peek() == '\n') get();
    std::string out;
    while (true) {
      if (eof()) fail("unterminated multi-line string");
      if (s_.substr(pos_, 3) == "'''") {
        pos_ += 3;
        break;
      }
      out.push_back(get());
    }
    return out;
  }

  json parse_array() {
    expect('[');
    json arr = json::array();
    while (true) {
      skip_ws_comments_newlines();
      if (peek() == ']') {
        get();
        break;
      }
      arr.push_back(parse_value());
      skip_ws_comments_newlines();
      if (peek() == ',') {
        get();
      } else if (peek() == ']') {
        get();
        break;
      } else {
        fail("expected ',' or ']' in array");
      }
    }
    return arr;
  }

  json parse_inline_table() {
    expect('{');
    json table = json::object();
    skip_inline_ws();
    if (peek() == '}') {
      get();
      return table;
    }
    while (true) {
      auto path = parse_key_path();
      skip_inline_ws();
      expect('=');
      skip_inline_ws();
      assign(table, path, parse_value());
      skip_inline_ws();
      if (peek() == ',') {
        get();
        skip_inline_ws();
      } else if (peek() == '}') {
        get();
        break;
      } else {
        fail("expected ',' or '}' in inline table");
      }
    }
    return table;
  }

  json parse_bare_scalar() {
    std::string tok;
    while (!eof() && peek() != ',' && peek() != ']' && peek() != '}' && peek() != '\n' &&
           peek() != '\r' && peek() != '#') {
      tok.push_back(get());
    }
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t')) tok.pop_back();
    if (tok.empty()) fail("expected value");
    if (tok == "true") return true;
    if (tok == "false") return false;
    std::string digits;
    for (char c : tok)
      if (c != '_') digits.push_back(c);
    try {
      std::size_t used = 0;
      if (digits.find_first_of(".eE") == std::string::npos) {
        const long long v = std::stoll(digits, &used, 0);
        if (used == digits.size()) return v;
      } else {
        const double v = std::stod(digits, &used);
        if (used == digits.size()) return v;
      }
    } catch (const std::exception&) {
    }
    // Dates, times and anything exotic are preserved verbatim.
    if (std::isdigit(static_cast<unsigned char>(tok[0]))) return tok;
    fail("unrecognized value '" + tok + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

}  // namespace

json parse_toml(std::string_view text) {
  return TomlParser(text).parse();
}

}  // namespace fairseco
