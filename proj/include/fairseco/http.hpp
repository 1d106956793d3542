// Minimal HTTP GET abstraction used by the forge and catalog clients.

#pragma once

#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fairseco/model.hpp"

namespace fairseco {

using HeaderList = std::vector<std::pair<std::string, std::string>>;

struct HttpResponse {
  int status = 0;
  std::string body;
  std::map<std::string, std::string> headers;  // lowercase names
};

enum class FetchErrorKind { NotFound, RateLimited, Transport, CacheMiss };

class FetchError : public Error {
public:
  FetchError(FetchErrorKind kind, const std::string& what,
             std::optional<std::chrono::seconds> retry_after = std::nullopt)
      : Error(what), kind_(kind), retry_after_(retry_after) {}

  FetchErrorKind kind() const { return kind_; }
  std::optional<std::chrono::seconds> retry_after() const { return retry_after_; }

private:
  FetchErrorKind kind_;
  std::optional<std::chrono::seconds> retry_after_;
};

class HttpTransport {
public:
  virtual ~HttpTransport() = default;
  /// Throws FetchError(Transport) when no response could be obtained.
  /// Non-2xx statuses are returned, not thrown.
  virtual HttpResponse get(const std::string& url, const HeaderList& headers) = 0;
};

/// HTTPS-capable transport backed by cpp-httplib.
std::unique_ptr<HttpTransport> make_live_transport(
    std::chrono::seconds timeout = std::chrono::seconds{30});

/// Maps 403/429 rate-limit responses to FetchError(RateLimited), reading
/// retry-after or x-ratelimit-reset. No-op for other statuses.
void throw_if_rate_limited(const HttpResponse& response, const std::string& url, Timestamp now);

/// Percent-encodes everything outside the RFC 3986 unreserved set.
std::string url_encode(std::string_view text);

}  // namespace fairseco
