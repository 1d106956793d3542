#include "fairseco/timeutil.hpp"

#include <cstdio>
#include <cstdlib>
#include <ctime>

#include <fmt/format.h>

namespace fairseco {

using namespace std::chrono;

Clock default_clock() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    char* end = nullptr;
    long long secs = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0') return fixed_clock(Timestamp{seconds{secs}});
  }
  return [] { return time_point_cast<seconds>(system_clock::now()); };
}

Clock fixed_clock(Timestamp at) {
  return [at] { return at; };
}

std::string format_utc(Timestamp t) {
  const auto day = floor<days>(t);
  const year_month_day ymd{day};
  const hh_mm_ss hms{t - day};
  return fmt::format("{:04d}-{:02d}-{:02d}T{:02d}:{:02d}:{:02d}Z", int(ymd.year()),
                     unsigned(ymd.month()), unsigned(ymd.day()), hms.hours().count(),
                     hms.minutes().count(), hms.seconds().count());
}

namespace {

std::optional<sys_days> parse_date_part(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (text[i] < '0' || text[i] > '9') return std::nullopt;
  }
  if (std::sscanf(std::string(text).c_str(), "%4d-%2u-%2u", &y, &m, &d) != 3) return std::nullopt;
  const year_month_day ymd{year{y}, month{m}, day{d}};
  if (!ymd.ok()) return std::nullopt;
  return sys_days{ymd};
}

}  // namespace

bool is_iso_date(std::string_view text) {
  return parse_date_part(text).has_value();
}

std::optional<Timestamp> parse_utc(std::string_view text) {
  if (text.size() == 10) {
    auto d = parse_date_part(text);
    if (!d) return std::nullopt;
    return Timestamp{*d};
  }
  if (text.size() != 20 || text[10] != 'T' || text[13] != ':' || text[16] != ':' ||
      text[19] != 'Z')
    return std::nullopt;
  auto d = parse_date_part(text.substr(0, 10));
  if (!d) return std::nullopt;
  unsigned h = 0, mi = 0, s = 0;
  if (std::sscanf(std::string(text.substr(11, 8)).c_str(), "%2u:%2u:%2u", &h, &mi, &s) != 3)
    return std::nullopt;
  if (h > 23 || mi > 59 || s > 60) return std::nullopt;
  return Timestamp{*d} + hours{h} + minutes{mi} + seconds{s};
}

}  // namespace fairseco
