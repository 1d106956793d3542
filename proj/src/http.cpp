#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "fairseco/http.hpp"

#include <cctype>
#include <cstdlib>

#include <fmt/format.h>
#include <httplib.h>

namespace fairseco {

namespace {

class LiveTransport final : public HttpTransport {
public:
  explicit LiveTransport(std::chrono::seconds timeout) : timeout_(timeout) {}

  HttpResponse get(const std::string& url, const HeaderList& headers) override {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos)
      throw FetchError(FetchErrorKind::Transport, "malformed URL: " + url);
    const auto path_start = url.find('/', scheme_end + 3);
    const std::string origin = url.substr(0, path_start);
    const std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

    httplib::Client client(origin);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);
    client.set_follow_location(true);
    httplib::Headers request_headers;
    for (const auto& [k, v] : headers) request_headers.emplace(k, v);
    request_headers.emplace("User-Agent", "fairseco/" FAIRSECO_VERSION);

    auto result = client.Get(path, request_headers);
    if (!result)
      throw FetchError(FetchErrorKind::Transport,
                       fmt::format("GET {} failed: {}", url, httplib::to_string(result.error())));
    HttpResponse response;
    response.status = result->status;
    response.body = result->body;
    for (const auto& [k, v] : result->headers) {
      std::string key = k;
      for (auto& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      response.headers[key] = v;
    }
    return response;
  }

private:
  std::chrono::seconds timeout_;
};

}  // namespace

std::unique_ptr<HttpTransport> make_live_transport(std::chrono::seconds timeout) {
  return std::make_unique<LiveTransport>(timeout);
}

void throw_if_rate_limited(const HttpResponse& response, const std::string& url, Timestamp now) {
  const auto header = [&](const char* name) -> const std::string* {
    auto it = response.headers.find(name);
    return it == response.headers.end() ? nullptr : &it->second;
  };
  const auto* remaining = header("x-ratelimit-remaining");
  const bool limited =
      response.status == 429 || (response.status == 403 && remaining && *remaining == "0");
  if (!limited) return;

  std::optional<std::chrono::seconds> retry;
  if (const auto* ra = header("retry-after")) {
    retry = std::chrono::seconds{std::strtoll(ra->c_str(), nullptr, 10)};
  } else if (const auto* reset = header("x-ratelimit-reset")) {
    const auto at = std::strtoll(reset->c_str(), nullptr, 10);
    const auto delta = at - now.time_since_epoch().count();
    retry = std::chrono::seconds{delta > 0 ? delta : 0};
  }
  throw FetchError(FetchErrorKind::RateLimited,
                   fmt::format("rate limited by {} (retry after {}s)", url,
                               retry ? retry->count() : -1),
                   retry);
}

std::string url_encode(std::string_view text) {
  std::string out;
  for (unsigned char c : text) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out += fmt::format("%{:02X}", c);
    }
  }
  return out;
}

}  // namespace fairseco
