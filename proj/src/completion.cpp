#include "coach/completion.hpp"

#include <chrono>
#include <cmath>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "coach/error.hpp"

namespace coach {
namespace verbal {

std::string StubCompletion::complete(const CoachingPrompt& prompt) {
  std::string out = "Summary: ";
  for (std::size_t i = 0; i < prompt.input_lines.size() && i < 2; ++i) {
    if (i > 0) out += "; ";
    out += prompt.input_lines[i];
  }
  return out;
}

HttpCompletion::HttpCompletion(HttpCompletionConfig config)
    : config_(std::move(config)) {
  if (config_.endpoint.empty()) {
    throw Error(ErrorKind::Configuration,
                "completion endpoint is not configured");
  }
  if (config_.credential.empty()) {
    throw Error(ErrorKind::Configuration,
                "completion credential is not configured");
  }
}

namespace {

struct ParsedUrl {
  std::string base; // scheme://host[:port]
  std::string path;
};

ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw Error(ErrorKind::Configuration, "endpoint URL needs a scheme: " + url);
  }
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {url, "/v1/chat/completions"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

} // namespace

std::string HttpCompletion::complete(const CoachingPrompt& prompt) {
  const ParsedUrl url = split_url(config_.endpoint);

  std::string user_text;
  for (std::size_t i = 0; i < prompt.input_lines.size(); ++i) {
    if (i > 0) user_text += '\n';
    user_text += prompt.input_lines[i];
  }

  nlohmann::json payload = {
      {"model", config_.model},
      {"messages",
       {{{"role", "system"}, {"content", prompt.system_text}},
        {{"role", "user"}, {"content", user_text}}}},
  };

  httplib::Client client(url.base);
  const auto timeout_ms =
      static_cast<int>(std::lround(config_.timeout_seconds * 1000.0));
  client.set_connection_timeout(std::chrono::milliseconds(timeout_ms));
  client.set_read_timeout(std::chrono::milliseconds(timeout_ms));
  client.set_write_timeout(std::chrono::milliseconds(timeout_ms));
  client.set_bearer_token_auth(config_.credential);

  httplib::Result res =
      client.Post(url.path, payload.dump(), "application/json");
  if (!res) {
    throw Error(ErrorKind::Service,
                "completion request failed: " + httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorKind::Service,
                "completion service returned status " +
                    std::to_string(res->status));
  }
  try {
    const nlohmann::json body = nlohmann::json::parse(res->body);
    return body.at("choices").at(0).at("message").at("content")
        .get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Service,
                std::string("malformed completion response: ") + e.what());
  }
}

std::string summarize(const CoachingPrompt& prompt,
                      CompletionService& service) {
  return service.complete(prompt);
}

} // namespace verbal
} // namespace coach
