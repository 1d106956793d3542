// On-disk record/replay cache for HTTP GET responses.
//
// One file per request key (the full URL). The file is a one-line JSON header
// record {"fetched_at","status","url"} followed by the response body verbatim.
// File name: sha256(key) in hex plus ".http".

#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "fairseco/http.hpp"
#include "fairseco/timeutil.hpp"

namespace fairseco {

struct CachedResponse {
  std::string url;
  int status = 0;
  Timestamp fetched_at{};
  std::string body;
};

class ResponseCache {
public:
  explicit ResponseCache(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }

  std::optional<CachedResponse> lookup(const std::string& key) const;
  void store(const std::string& key, const CachedResponse& response);

  static std::string file_name_for(const std::string& key);

private:
  std::filesystem::path directory_;
  std::mutex write_mutex_;
};

/// Serves requests from the cache; on a miss, forwards to `upstream` and
/// records 200/404 answers. With no upstream (offline) a miss throws
/// FetchError(CacheMiss) and no connection is ever attempted.
class CachingTransport final : public HttpTransport {
public:
  CachingTransport(ResponseCache& cache, HttpTransport* upstream, Clock clock);

  HttpResponse get(const std::string& url, const HeaderList& headers) override;

private:
  ResponseCache& cache_;
  HttpTransport* upstream_;
  Clock clock_;
};

}  // namespace fairseco
