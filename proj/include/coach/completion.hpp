#pragma once

#include <memory>
#include <string>

#include "coach/prompt.hpp"

namespace coach {
namespace verbal {

/// Contract for the summarization backend. Implementations must tolerate
/// concurrent in-flight requests; retries are the caller's business.
class CompletionService {
public:
  virtual ~CompletionService() = default;
  virtual std::string complete(const CoachingPrompt& prompt) = 0;
};

/// Deterministic offline backend: "Summary: " plus the first two input
/// lines joined by "; ". Part of the interface contract, not a test shim.
class StubCompletion : public CompletionService {
public:
  std::string complete(const CoachingPrompt& prompt) override;
};

struct HttpCompletionConfig {
  std::string endpoint;   // e.g. http://host:port/v1/chat/completions
  std::string credential; // bearer token; required
  std::string model = "gpt-4";
  double timeout_seconds = 10.0;
};

/// Minimal chat-completion client: system message carries the prompt's
/// system text, the user message its input lines; the first completion
/// text is returned verbatim.
class HttpCompletion : public CompletionService {
public:
  explicit HttpCompletion(HttpCompletionConfig config);
  std::string complete(const CoachingPrompt& prompt) override;

private:
  HttpCompletionConfig config_;
};

/// Runs the prompt through the configured backend.
std::string summarize(const CoachingPrompt& prompt, CompletionService& service);

} // namespace verbal
} // namespace coach
