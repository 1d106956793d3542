#include "fairseco/methods.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "fairseco/model.hpp"
#include "fairseco/source_tokens.hpp"

namespace fairseco {

namespace {

MethodSpan make_span(std::string_view source, const std::filesystem::path& file,
                     std::string_view language, std::string name, const Token& first,
                     const Token& last) {
  MethodSpan span;
  span.file = file;
  span.language = std::string(language);
  span.name = std::move(name);
  span.start_line = first.line;
  span.end_line = last.end_line;
  span.body_text = std::string(source.substr(first.begin, last.end - first.begin));
  return span;
}

// ---- Python: indentation scopes over logical lines ---------------------------

std::vector<MethodSpan> python_methods(std::string_view source, const std::filesystem::path& file,
                                       const std::vector<Token>& toks) {
  struct Scope {
    int indent;
    bool is_def;
    std::optional<std::size_t> span_start;  // token index of a tracked top-level def
    std::string name;
  };
  std::vector<MethodSpan> out;
  std::vector<Scope> stack;

  const auto close = [&](const Scope& s, std::size_t last) {
    if (s.span_start) out.push_back(make_span(source, file, "python", s.name, toks[*s.span_start], toks[last]));
  };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (!t.line_start) continue;
    while (!stack.empty() && stack.back().indent >= t.column) {
      close(stack.back(), i - 1);
      stack.pop_back();
    }
    std::size_t def_at = i;
    if (t.text == "async" && i + 1 < toks.size() && toks[i + 1].text == "def") def_at = i + 1;
    if (toks[def_at].kind == TokenKind::Keyword && toks[def_at].text == "def") {
      const bool top = std::none_of(stack.begin(), stack.end(), [](const Scope& s) { return s.is_def; });
      std::string name = def_at + 1 < toks.size() ? toks[def_at + 1].text : "";
      stack.push_back({t.column, true, top ? std::optional<std::size_t>(i) : std::nullopt, std::move(name)});
    } else if (t.kind == TokenKind::Keyword && t.text == "class") {
      stack.push_back({t.column, false, std::nullopt, {}});
    }
  }
  while (!stack.empty()) {
    close(stack.back(), toks.size() - 1);
    stack.pop_back();
  }
  std::sort(out.begin(), out.end(),
            [](const MethodSpan& a, const MethodSpan& b) { return a.start_line < b.start_line; });
  return out;
}

// ---- C-family: brace scopes classified by their opening statement ------------

enum class ScopeKind { Container, Function, Block, MemberInit };

struct BraceScope {
  ScopeKind kind;
  std::optional<std::size_t> span_start;
  std::string name;
  int saved_depth = 0;
  bool inline_expr = false;  // opened inside parentheses; statement continues after it
};

struct Classification {
  ScopeKind kind = ScopeKind::Block;
  std::string name;
};

bool is_open(const Token& t) { return t.kind == TokenKind::Operator && (t.text == "(" || t.text == "["); }
bool is_close(const Token& t) { return t.kind == TokenKind::Operator && (t.text == ")" || t.text == "]"); }

std::size_t matching_close(const std::vector<Token>& toks, std::size_t open, std::size_t limit) {
  int depth = 0;
  for (std::size_t k = open; k < limit; ++k) {
    if (is_open(toks[k])) ++depth;
    if (is_close(toks[k]) && --depth == 0) return k;
  }
  return limit;
}

Classification classify(const std::vector<Token>& toks, std::size_t s, std::size_t brace,
                        std::string_view language) {
  // Skip leading template parameter lists.
  while (s + 1 < brace && toks[s].text == "template" && toks[s + 1].text == "<") {
    int angle = 0;
    std::size_t k = s + 1;
    for (; k < brace; ++k) {
      if (toks[k].text == "<") ++angle;
      if (toks[k].text == ">") --angle;
      if (toks[k].text == ">>") angle -= 2;
      if (angle <= 0) break;
    }
    s = k + 1;
  }
  if (s >= brace) return {};

  // Top-level parenthesis groups of the statement.
  std::vector<std::size_t> groups;
  bool assignment = false;
  for (std::size_t k = s, depth = 0; k < brace; ++k) {
    if (is_open(toks[k])) {
      if (depth == 0 && toks[k].text == "(") groups.push_back(k);
      ++depth;
    } else if (is_close(toks[k])) {
      if (depth > 0) --depth;
    } else if (depth == 0 && toks[k].text == "=" && !(k > s && toks[k - 1].text == "operator")) {
      assignment = true;
    }
  }

  static constexpr std::string_view kContainers[] = {
      "class", "struct", "union", "namespace", "interface", "enum", "impl",
      "trait", "mod",    "object", "record",   "module"};
  const std::size_t first_group = groups.empty() ? brace : groups.front();
  for (std::size_t k = s; k < first_group; ++k) {
    const Token& t = toks[k];
    if (t.kind != TokenKind::Keyword) continue;
    if (k > s && (toks[k - 1].text == "." || toks[k - 1].text == "::")) continue;
    if (std::find(std::begin(kContainers), std::end(kContainers), t.text) != std::end(kContainers)) {
      // "struct point make(...)" is a function returning a struct.
      if (groups.empty() || (k + 2 < brace && toks[k + 2].text == "(")) return {ScopeKind::Container, {}};
    }
    if (t.text == "extern" && k + 1 < brace && toks[k + 1].kind == TokenKind::String)
      return {ScopeKind::Container, {}};
  }
  if (assignment) return {};

  static constexpr std::string_view kFnKeywords[] = {"fn", "fun", "func", "function", "def"};
  for (std::size_t k = s; k < brace; ++k) {
    if (toks[k].kind != TokenKind::Keyword ||
        std::find(std::begin(kFnKeywords), std::end(kFnKeywords), toks[k].text) == std::end(kFnKeywords))
      continue;
    std::size_t j = k + 1;
    if (j < brace && toks[j].text == "(") j = matching_close(toks, j, brace) + 1;  // Go receiver
    if (j < brace && toks[j].kind == TokenKind::Identifier) return {ScopeKind::Function, toks[j].text};
    return {};
  }

  for (std::size_t idx = 0; idx < groups.size(); ++idx) {
    std::size_t p = groups[idx];
    if (p == s) continue;
    std::string name;
    std::size_t pre = p - 1;
    if (toks[pre].text == "operator" && idx + 1 < groups.size()) {
      // operator()(...)
      name = "operator()";
      p = groups[idx + 1];
    } else if (pre > s && toks[pre - 1].text == "operator") {
      name = "operator" + toks[pre].text;
    } else if (std::any_of(toks.begin() + static_cast<std::ptrdiff_t>(s),
                           toks.begin() + static_cast<std::ptrdiff_t>(p),
                           [](const Token& t) { return t.text == "operator"; })) {
      name = "operator";
      for (std::size_t k = s; k < p; ++k)
        if (toks[k].text == "operator")
          for (std::size_t m = k + 1; m < p; ++m) name += toks[m].text;
    } else if (toks[pre].kind == TokenKind::Identifier &&
               !(pre > s && toks[pre - 1].text == "@")) {
      name = toks[pre].text;
      std::size_t q = pre;
      while (q >= s + 2 && toks[q - 1].text == "::" && toks[q - 2].kind == TokenKind::Identifier) {
        name = toks[q - 2].text + "::" + name;
        q -= 2;
      }
      if (q > s && toks[q - 1].text == "~") name = "~" + name;
    } else {
      continue;
    }
    // Constructor initializer list member braces: ") : x_{a}, y_{b} {"
    if (language == "cpp") {
      const std::size_t close = matching_close(toks, p, brace);
      const bool has_init_list =
          std::any_of(toks.begin() + static_cast<std::ptrdiff_t>(std::min(close + 1, brace)),
                      toks.begin() + static_cast<std::ptrdiff_t>(brace),
                      [](const Token& t) { return t.text == ":"; });
      const Token& before = toks[brace - 1];
      if (has_init_list && (before.kind == TokenKind::Identifier || before.text == ">"))
        return {ScopeKind::MemberInit, {}};
    }
    return {ScopeKind::Function, std::move(name)};
  }
  return {};
}

std::vector<MethodSpan> brace_methods(std::string_view source, const std::filesystem::path& file,
                                      std::string_view language, const std::vector<Token>& toks) {
  std::vector<MethodSpan> out;
  std::vector<BraceScope> stack;
  std::size_t stmt_start = 0;
  int depth = 0;  // () and [] nesting within the current brace scope

  const auto in_function = [&] {
    return std::any_of(stack.begin(), stack.end(),
                       [](const BraceScope& b) { return b.kind == ScopeKind::Function; });
  };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.kind != TokenKind::Operator) continue;
    if (is_open(t)) {
      ++depth;
    } else if (is_close(t)) {
      if (depth > 0) --depth;
    } else if (t.text == ";") {
      if (depth == 0) stmt_start = i + 1;
    } else if (t.text == ":" && depth == 0 && i == stmt_start + 1 &&
               (toks[stmt_start].text == "public" || toks[stmt_start].text == "private" ||
                toks[stmt_start].text == "protected")) {
      stmt_start = i + 1;  // C++ access specifier
    } else if (t.text == "{") {
      BraceScope scope{ScopeKind::Block, std::nullopt, {}, depth, depth > 0};
      if (!in_function() && depth == 0) {
        auto c = classify(toks, stmt_start, i, language);
        scope.kind = c.kind;
        if (c.kind == ScopeKind::Function && stmt_start < i) {
          scope.span_start = stmt_start;
          scope.name = std::move(c.name);
        }
      }
      if (scope.kind == ScopeKind::MemberInit) scope.inline_expr = true;
      stack.push_back(std::move(scope));
      depth = 0;
      if (!stack.back().inline_expr) stmt_start = i + 1;
    } else if (t.text == "}") {
      if (stack.empty()) {
        stmt_start = i + 1;
        continue;
      }
      BraceScope scope = std::move(stack.back());
      stack.pop_back();
      depth = scope.saved_depth;
      if (scope.span_start)
        out.push_back(make_span(source, file, language, scope.name, toks[*scope.span_start], t));
      if (!scope.inline_expr) stmt_start = i + 1;
    }
  }
  // Unterminated definitions run to end of file.
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    if (it->span_start)
      out.push_back(make_span(source, file, language, it->name, toks[*it->span_start], toks.back()));
  }
  std::sort(out.begin(), out.end(),
            [](const MethodSpan& a, const MethodSpan& b) { return a.start_line < b.start_line; });
  return out;
}

}  // namespace

std::vector<MethodSpan> extract_methods_from_source(std::string_view source,
                                                    const std::filesystem::path& file,
                                                    std::string_view language) {
  if (!is_supported_language(language))
    throw ParseError(fmt::format("unsupported language '{}'", language));
  const auto toks = tokenize(source, language);
  if (toks.empty()) return {};
  return is_python(language) ? python_methods(source, file, toks)
                             : brace_methods(source, file, language, toks);
}

MethodExtraction extract_methods(const std::filesystem::path& file, std::string_view language,
                                 const std::filesystem::path& display_path) {
  const auto shown = display_path.empty() ? file : display_path;
  MethodExtraction result;
  if (!is_supported_language(language)) {
    result.warnings.push_back(
        fmt::format("{}: unsupported language '{}', skipped", shown.generic_string(), language));
    return result;
  }
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    result.warnings.push_back(fmt::format("{}: unreadable, skipped", shown.generic_string()));
    return result;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    result.methods = extract_methods_from_source(ss.str(), shown, language);
  } catch (const ParseError& e) {
    result.warnings.push_back(fmt::format("{}: {}, skipped", shown.generic_string(), e.what()));
  }
  return result;
}

}  // namespace fairseco
