#include "coach/service.hpp"

#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "coach/error.hpp"
#include "coach/forest_io.hpp"
#include "coach/motion_io.hpp"
#include "coach/version.hpp"

namespace coach {
namespace pipeline {

namespace {

int status_for(ErrorKind kind) {
  switch (kind) {
  case ErrorKind::Parse:
  case ErrorKind::InvalidInput:
  case ErrorKind::InvalidConfig:
  case ErrorKind::MissingData:
  case ErrorKind::LearnerTooShort:
  case ErrorKind::InsufficientFrames:
  case ErrorKind::SkippedAxis:
  case ErrorKind::Configuration:
    return 400;
  case ErrorKind::Service:
    return 502;
  }
  return 500;
}

void respond_error(httplib::Response& res, int status,
                   const std::string& kind, const std::string& message,
                   const std::string& stage) {
  nlohmann::ordered_json j{
      {"error", {{"stage", stage}, {"kind", kind}, {"message", message}}}};
  res.status = status;
  res.set_content(j.dump(2) + "\n", "application/json");
}

nlohmann::json parse_body(const httplib::Request& req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::Parse,
                std::string("request body is not valid JSON: ") + e.what());
  }
}

std::string require_string(const nlohmann::json& body, const char* field) {
  if (!body.contains(field) || !body[field].is_string()) {
    throw Error(ErrorKind::InvalidInput,
                std::string("missing string field '") + field + "'");
  }
  return body[field].get<std::string>();
}

} // namespace

struct PipelineServer::Impl {
  PipelineConfig config;
  std::shared_ptr<const forest::ForestModel> model;
  httplib::Server server;
  std::thread worker;

  Impl(PipelineConfig cfg, std::shared_ptr<const forest::ForestModel> m)
      : config(std::move(cfg)), model(std::move(m)) {
    register_routes();
  }

  ~Impl() {
    server.stop();
    if (worker.joinable()) worker.join();
  }

  template <typename Fn>
  void handle(const httplib::Request& req, httplib::Response& res,
              const std::string& stage, Fn&& fn) {
    try {
      const std::string record = fn(req);
      res.set_content(record, "application/json");
    } catch (const Error& e) {
      respond_error(res, status_for(e.kind()), error_kind_name(e.kind()),
                    e.what(), stage);
    } catch (const std::exception& e) {
      respond_error(res, 500, "internal", e.what(), stage);
    }
  }

  void register_routes() {
    server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
      nlohmann::ordered_json j{{"status", "ok"}, {"version", kVersion}};
      res.set_content(j.dump(2) + "\n", "application/json");
    });

    server.Post("/align", [this](const httplib::Request& req,
                                 httplib::Response& res) {
      handle(req, res, "dtw_alignment", [this](const httplib::Request& r) {
        const auto body = parse_body(r);
        const auto user = prepare_sequence(
            read_motion(require_string(body, "user"), "user"));
        const auto ref = prepare_sequence(
            read_motion(require_string(body, "ref"), "ref"));
        align::AlignOptions opts;
        opts.fast = config.use_fast_dtw;
        opts.fast_radius = config.fast_radius;
        if (body.contains("fast_radius")) {
          opts.fast = true;
          opts.fast_radius = body["fast_radius"].get<int>();
        }
        return render_alignment_record(align::align(user, ref, opts));
      });
    });

    server.Post("/score", [this](const httplib::Request& req,
                                 httplib::Response& res) {
      handle(req, res, "analysis", [this](const httplib::Request& r) {
        const auto body = parse_body(r);
        const auto user = prepare_sequence(
            read_motion(require_string(body, "user"), "user"));
        const auto ref = prepare_sequence(
            read_motion(require_string(body, "ref"), "ref"));
        std::size_t segments = config.segments;
        if (body.contains("segments")) {
          segments = body["segments"].get<std::size_t>();
        }
        const auto alignment = align::align(user, ref);
        const auto boundaries =
            score::segment_boundaries(ref.frames.size(), segments);
        const auto scores =
            score::score_segments(alignment, boundaries, user.fps, ref.fps);
        std::vector<score::JointDeviation> deviations;
        if (user.has_positions() && ref.has_positions()) {
          deviations = score::spatial_diff(alignment, user, ref,
                                           config.position_tolerance_m);
        }
        return render_score_record(scores, deviations);
      });
    });

    server.Post("/posematch", [this](const httplib::Request& req,
                                     httplib::Response& res) {
      handle(req, res, "posematch", [this](const httplib::Request& r) {
        const auto body = parse_body(r);
        const auto user = prepare_sequence(
            read_motion(require_string(body, "user"), "user"));
        const auto ref = prepare_sequence(
            read_motion(require_string(body, "ref"), "ref"));
        std::size_t segment = 0;
        if (body.contains("segment")) {
          segment = body["segment"].get<std::size_t>();
        }
        const auto boundaries =
            score::segment_boundaries(ref.frames.size(), config.segments);
        if (segment >= boundaries.size()) {
          throw Error(ErrorKind::InvalidInput,
                      "segment index out of range");
        }
        const std::size_t frame = boundaries[segment].end - 1;
        if (frame >= user.frames.size()) {
          throw Error(ErrorKind::InvalidInput,
                      "learner has no frame for segment end");
        }
        const auto verdict = score::pose_match_step(
            user, frame, ref, frame, config.angular_tolerance_deg,
            config.position_tolerance_m, config.advance_fraction);
        return render_posematch_record(verdict, segment, frame);
      });
    });

    server.Post("/feedback", [this](const httplib::Request& req,
                                    httplib::Response& res) {
      try {
        const auto body = parse_body(req);
        const auto user = prepare_sequence(
            read_motion(require_string(body, "user"), "user"));
        const auto ref = prepare_sequence(
            read_motion(require_string(body, "ref"), "ref"));
        std::string method = "naive";
        if (body.contains("method")) {
          method = body["method"].get<std::string>();
        }

        const forest::ForestModel* m = model.get();
        forest::ForestModel inline_model;
        if (body.contains("model")) {
          inline_model =
              forest::read_model(body["model"].get<std::string>(), "model");
          m = &inline_model;
        }

        verbal::StubCompletion stub;
        std::unique_ptr<verbal::HttpCompletion> live;
        verbal::CompletionService* svc = &stub;
        PipelineConfig cfg = config;
        if (body.contains("live") && body["live"].get<bool>()) {
          cfg.stub = false;
          live = std::make_unique<verbal::HttpCompletion>(cfg.completion);
          svc = live.get();
        }

        const PipelineResult result =
            run_pipeline(user, ref, cfg, method, m, *svc);
        if (result.failure) {
          // Partial record plus the stage error; completion failures map
          // to 502, everything else to 500.
          res.status = result.failure->stage == "completion_call" ? 502 : 500;
          res.set_content(render_feedback_record(result, cfg),
                          "application/json");
          return;
        }
        res.set_content(render_feedback_record(result, cfg),
                        "application/json");
      } catch (const Error& e) {
        respond_error(res, status_for(e.kind()), error_kind_name(e.kind()),
                      e.what(), "pipeline");
      } catch (const std::exception& e) {
        respond_error(res, 500, "internal", e.what(), "pipeline");
      }
    });
  }
};

PipelineServer::PipelineServer(PipelineConfig config,
                               std::shared_ptr<const forest::ForestModel> model)
    : impl_(std::make_unique<Impl>(std::move(config), std::move(model))) {}

PipelineServer::~PipelineServer() = default;

void PipelineServer::listen(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw Error(ErrorKind::Service,
                "cannot bind " + host + ":" + std::to_string(port));
  }
}

int PipelineServer::start_async(const std::string& host) {
  const int port = impl_->server.bind_to_any_port(host);
  if (port < 0) {
    throw Error(ErrorKind::Service, "cannot bind " + host);
  }
  impl_->worker = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return port;
}

void PipelineServer::stop() { impl_->server.stop(); }

} // namespace pipeline
} // namespace coach
