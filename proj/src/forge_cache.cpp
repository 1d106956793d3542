#include "fairseco/forge_cache.hpp"

#include <fstream>
#include <sstream>
#include <system_error>
#include <thread>

#include <json.hpp>

#include "fairseco/digest.hpp"

namespace fairseco {

namespace fs = std::filesystem;
using nlohmann::json;

ResponseCache::ResponseCache(fs::path directory) : directory_(std::move(directory)) {}

std::string ResponseCache::file_name_for(const std::string& key) {
  return sha256_hex(key) + ".http";
}

std::optional<CachedResponse> ResponseCache::lookup(const std::string& key) const {
  const fs::path file = directory_ / file_name_for(key);
  std::ifstream in(file, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header_line;
  if (!std::getline(in, header_line))
    throw ParseError("cache entry has no header record: " + file.string());
  std::ostringstream body;
  body << in.rdbuf();

  json header;
  try {
    header = json::parse(header_line);
  } catch (const json::exception& e) {
    throw ParseError("corrupt cache header in " + file.string() + ": " + e.what());
  }
  CachedResponse out;
  out.url = header.value("url", "");
  out.status = header.value("status", 0);
  if (auto ts = parse_utc(header.value("fetched_at", ""))) out.fetched_at = *ts;
  out.body = body.str();
  if (out.url != key) throw ParseError("cache entry key mismatch in " + file.string());
  return out;
}

void ResponseCache::store(const std::string& key, const CachedResponse& response) {
  std::lock_guard lock(write_mutex_);
  fs::create_directories(directory_);
  const fs::path target = directory_ / file_name_for(key);
  std::ostringstream tmp_name;
  tmp_name << target.filename().string() << ".tmp." << std::this_thread::get_id();
  const fs::path tmp = directory_ / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write cache entry " + tmp.string());
    const json header = {
        {"url", key}, {"status", response.status}, {"fetched_at", format_utc(response.fetched_at)}};
    out << header.dump() << '\n' << response.body;
    if (!out) throw Error("cannot write cache entry " + tmp.string());
  }
  fs::rename(tmp, target);
}

CachingTransport::CachingTransport(ResponseCache& cache, HttpTransport* upstream, Clock clock)
    : cache_(cache), upstream_(upstream), clock_(std::move(clock)) {}

HttpResponse CachingTransport::get(const std::string& url, const HeaderList& headers) {
  if (auto hit = cache_.lookup(url)) {
    HttpResponse r;
    r.status = hit->status;
    r.body = std::move(hit->body);
    return r;
  }
  if (!upstream_) throw FetchError(FetchErrorKind::CacheMiss, "offline cache miss: " + url);
  HttpResponse r = upstream_->get(url, headers);
  if (r.status == 200 || r.status == 404) {
    cache_.store(url, CachedResponse{url, r.status, clock_(), r.body});
  }
  return r;
}

}  // namespace fairseco
