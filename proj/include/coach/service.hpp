#pragma once

#include <memory>
#include <string>

#include "coach/pipeline.hpp"

namespace coach {
namespace pipeline {

/// HTTP facade over the pipeline: POST /align, /score, /posematch,
/// /feedback and GET /health. Requests carry motion file text inline so
/// every request is self-contained; responses are the same records the
/// CLI prints. Stateless across requests.
class PipelineServer {
public:
  PipelineServer(PipelineConfig config,
                 std::shared_ptr<const forest::ForestModel> model);
  ~PipelineServer();

  PipelineServer(const PipelineServer&) = delete;
  PipelineServer& operator=(const PipelineServer&) = delete;

  /// Blocks until stop() is called from another thread.
  void listen(const std::string& host, int port);

  /// Binds to an OS-assigned port and serves from a background thread;
  /// returns the port. Used by tests and embedders.
  int start_async(const std::string& host);

  void stop();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

} // namespace pipeline
} // namespace coach
