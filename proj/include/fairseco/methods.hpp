// Method-level segmentation of source files.

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace fairseco {

struct MethodSpan {
  std::filesystem::path file;
  std::string language;
  std::string name;
  int start_line = 1;
  int end_line = 1;
  std::string body_text;  // exact source bytes of the definition

  bool operator==(const MethodSpan&) const = default;
};

/// One span per top-level function or method (functions at file/namespace
/// scope and methods of classes, structs, impls); nested definitions stay
/// inside their enclosing span. Throws ParseError on tokenization failure.
std::vector<MethodSpan> extract_methods_from_source(std::string_view source,
                                                    const std::filesystem::path& file,
                                                    std::string_view language);

struct MethodExtraction {
  std::vector<MethodSpan> methods;
  std::vector<std::string> warnings;
};

/// Reads `file`; unsupported languages and unparsable files produce an empty
/// list plus a warning instead of an error.
MethodExtraction extract_methods(const std::filesystem::path& file, std::string_view language,
                                 const std::filesystem::path& display_path = {});

}  // namespace fairseco
