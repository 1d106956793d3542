#include "fairseco/history.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "fairseco/report.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

namespace {

using nlohmann::ordered_json;

// Holds flock(LOCK_EX) on the directory that contains the history file.
class DirectoryLock {
public:
  explicit DirectoryLock(const std::filesystem::path& dir) {
    fd_ = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY | O_CLOEXEC);
    if (fd_ < 0) throw Error(fmt::format("cannot open {} for locking", dir.string()));
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw Error(fmt::format("cannot lock {}", dir.string()));
    }
  }
  ~DirectoryLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  DirectoryLock(const DirectoryLock&) = delete;
  DirectoryLock& operator=(const DirectoryLock&) = delete;

private:
  int fd_ = -1;
};

}  // namespace

ImpactHistory make_history(std::vector<HistoryEntry> entries) {
  ImpactHistory h;
  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto& a = entries[i - 1];
    const auto& b = entries[i];
    if (!(a.timestamp < b.timestamp))
      throw ValidationError(fmt::format("history timestamps out of order: {} then {}", format_utc(a.timestamp),
                                        format_utc(b.timestamp)));
    h.deltas.push_back({a.timestamp, b.timestamp, b.s_quality - a.s_quality, b.s_fair - a.s_fair,
                        static_cast<std::int64_t>(b.n_citations) - static_cast<std::int64_t>(a.n_citations),
                        static_cast<std::int64_t>(b.n_reuse) - static_cast<std::int64_t>(a.n_reuse)});
  }
  h.entries = std::move(entries);
  return h;
}

HistoryEntry history_entry_for(const ReportDocument& report) {
  return {report.generated_at, report.scorecard.s_quality, report.scorecard.s_fair,
          report.scorecard.n_citations, report.scorecard.n_reuse_projects};
}

std::string history_to_json(const ImpactHistory& history) {
  ordered_json j;
  j["schema_version"] = "1";
  j["entries"] = ordered_json::array();
  for (const auto& e : history.entries) {
    ordered_json x;
    x["timestamp"] = format_utc(e.timestamp);
    x["s_quality"] = e.s_quality;
    x["s_fair"] = e.s_fair;
    x["n_citations"] = e.n_citations;
    x["n_reuse"] = e.n_reuse;
    j["entries"].push_back(x);
  }
  j["deltas"] = ordered_json::array();
  for (const auto& d : history.deltas) {
    ordered_json x;
    x["from"] = format_utc(d.from);
    x["to"] = format_utc(d.to);
    x["s_quality"] = d.s_quality;
    x["s_fair"] = d.s_fair;
    x["n_citations"] = d.n_citations;
    x["n_reuse"] = d.n_reuse;
    j["deltas"].push_back(x);
  }
  return j.dump(2) + "\n";
}

ImpactHistory parse_history(std::string_view text) {
  std::vector<HistoryEntry> entries;
  try {
    const auto j = nlohmann::json::parse(text);
    if (j.at("schema_version").get<std::string>() != "1") throw ParseError("unsupported history schema_version");
    for (const auto& x : j.at("entries")) {
      HistoryEntry e;
      auto when = parse_utc(x.at("timestamp").get<std::string>());
      if (!when) throw ParseError("history entry has a malformed timestamp");
      e.timestamp = *when;
      e.s_quality = x.at("s_quality").get<double>();
      e.s_fair = x.at("s_fair").get<double>();
      if (!x.at("n_citations").is_number_unsigned() || !x.at("n_reuse").is_number_unsigned())
        throw ParseError("history counts must be non-negative integers");
      e.n_citations = x.at("n_citations").get<std::uint64_t>();
      e.n_reuse = x.at("n_reuse").get<std::uint64_t>();
      entries.push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(fmt::format("corrupt history file: {}", e.what()));
  }
  try {
    return make_history(std::move(entries));
  } catch (const ValidationError& e) {
    throw ParseError(fmt::format("corrupt history file: {}", e.what()));
  }
}

ImpactHistory load_history(const std::filesystem::path& file) {
  std::error_code ec;
  if (!std::filesystem::exists(file, ec)) return {};
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(fmt::format("cannot read history file {}", file.string()));
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_history(ss.str());
  } catch (const ParseError& e) {
    throw ParseError(fmt::format("{}: {}", file.string(), e.what()));
  }
}

ImpactHistory preview_history(const ReportDocument& report, const std::filesystem::path& file) {
  auto entries = load_history(file).entries;
  entries.push_back(history_entry_for(report));
  return make_history(std::move(entries));
}

ImpactHistory append_history(const ReportDocument& report, const std::filesystem::path& file) {
  auto dir = file.parent_path();
  if (dir.empty()) dir = ".";
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  DirectoryLock lock(dir);
  auto next = preview_history(report, file);
  write_file_atomic(file, history_to_json(next));
  return next;
}

std::string format_history_table(const ImpactHistory& history) {
  if (history.entries.empty()) return "no history entries\n";
  std::string out;
  const auto& last = history.entries.back();
  out += fmt::format("latest run   {}\n", format_utc(last.timestamp));
  out += fmt::format("{:<28}{:>10}{:>10}{:>11}{:>8}\n", "", "quality", "fairness", "citations", "reuse");
  out += fmt::format("{:<28}{:>10.2f}{:>10.2f}{:>11}{:>8}\n", "current", last.s_quality, last.s_fair,
                     last.n_citations, last.n_reuse);
  if (history.deltas.empty()) {
    out += "first run: no earlier entry to compare against\n";
    return out;
  }
  for (const auto& d : history.deltas)
    out += fmt::format("{:<28}{:>+10.2f}{:>+10.2f}{:>+11}{:>+8}\n", "delta " + format_utc(d.to), d.s_quality,
                       d.s_fair, d.n_citations, d.n_reuse);
  return out;
}

}  // namespace fairseco
