#include "coach/pipeline.hpp"

#include <chrono>

#include <nlohmann/json.hpp>

#include "coach/error.hpp"
#include "coach/joints.hpp"
#include "coach/motion_io.hpp"
#include "coach/prompt.hpp"

namespace coach {
namespace pipeline {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

[[noreturn]] void stage_error(const std::string& stage, const Error& e) {
  throw Error(e.kind(), "stage " + stage + ": " + e.what());
}

} // namespace

MotionSequence prepare_sequence(const MotionSequence& seq) {
  if (seq.has_positions() && seq.subject_height) {
    return normalize_by_height(seq, *seq.subject_height);
  }
  return seq;
}

PipelineResult run_pipeline(const MotionSequence& user,
                            const MotionSequence& ref,
                            const PipelineConfig& config,
                            const std::string& method,
                            const forest::ForestModel* model,
                            verbal::CompletionService& service) {
  if (method != "naive" && method != "forest") {
    throw Error(ErrorKind::InvalidConfig,
                "method must be 'naive' or 'forest', got '" + method + "'");
  }
  if (method == "forest" && model == nullptr) {
    throw Error(ErrorKind::InvalidConfig,
                "method 'forest' needs a trained model");
  }

  PipelineResult result;
  result.report.method = method;

  auto record_failure = [&](const std::string& stage, const Error& e) {
    result.failure = StageFailure{stage, error_kind_name(e.kind()), e.what()};
  };

  // Alignment.
  {
    const auto t0 = Clock::now();
    try {
      align::AlignOptions opts;
      opts.fast = config.use_fast_dtw;
      opts.fast_radius = config.fast_radius;
      result.alignment = align::align(user, ref, opts);
    } catch (const Error& e) {
      record_failure("dtw_alignment", e);
      return result;
    }
    result.report.timing.dtw_alignment_ms = ms_since(t0);
  }

  // Timing scores and spatial deviations.
  {
    const auto t0 = Clock::now();
    try {
      const auto boundaries =
          score::segment_boundaries(ref.frames.size(), config.segments);
      result.segments = score::score_segments(result.alignment, boundaries,
                                              user.fps, ref.fps);
      if (user.has_positions() && ref.has_positions()) {
        result.deviations = score::spatial_diff(result.alignment, user, ref,
                                                config.position_tolerance_m);
      }
    } catch (const Error& e) {
      record_failure("analysis", e);
      return result;
    }
    result.report.timing.ingest_analysis_ms += ms_since(t0);
  }

  // Descriptors and prompt.
  {
    const auto t0 = Clock::now();
    try {
      if (method == "naive") {
        result.report.descriptors = verbal::naive_descriptors(
            result.alignment, user, ref, config.naive_threshold_deg);
      } else {
        const auto x =
            verbal::path_mean_difference(result.alignment, user, ref);
        const auto explanation = forest::explain(*model, x);
        result.report.descriptors =
            verbal::rf_descriptors(explanation, x, config.descriptor_cap);
      }
      result.report.prompt =
          verbal::assemble_prompt(result.report.descriptors);
    } catch (const Error& e) {
      record_failure("forest_summary", e);
      return result;
    }
    result.report.timing.forest_summary_ms = ms_since(t0);
  }

  // Summarization.
  {
    const auto t0 = Clock::now();
    try {
      result.report.summary = service.complete(result.report.prompt);
    } catch (const Error& e) {
      record_failure("completion_call", e);
      return result;
    }
    if (!config.stub) {
      result.report.timing.completion_call_ms = ms_since(t0);
    }
  }

  return result;
}

PipelineResult run_pipeline_files(const std::string& user_path,
                                  const std::string& ref_path,
                                  const PipelineConfig& config,
                                  const std::string& method,
                                  const forest::ForestModel* model,
                                  verbal::CompletionService& service) {
  const auto t0 = Clock::now();
  MotionSequence user, ref;
  try {
    user = prepare_sequence(read_motion_file(user_path));
    ref = prepare_sequence(read_motion_file(ref_path));
  } catch (const Error& e) {
    stage_error("ingest", e);
  }
  const double ingest_ms = ms_since(t0);

  PipelineResult result =
      run_pipeline(user, ref, config, method, model, service);
  result.report.timing.ingest_analysis_ms += ingest_ms;
  return result;
}

namespace {

nlohmann::ordered_json segments_json(
    const std::vector<score::SegmentScore>& segments) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& s : segments) {
    arr.push_back({{"segment", s.segment_index},
                   {"t_ideal", s.t_ideal},
                   {"t_actual", s.t_actual},
                   {"score", s.score},
                   {"label", score::hit_label_name(s.label)}});
  }
  return arr;
}

nlohmann::ordered_json flagged_json(
    const std::vector<score::JointDeviation>& deviations) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : deviations) {
    if (!d.flagged) continue;
    arr.push_back({{"frame", d.frame},
                   {"joint", kJoints[static_cast<std::size_t>(d.joint)].name},
                   {"positional_error_m", d.positional_error},
                   {"angular_error_deg", d.angular_error}});
  }
  return arr;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

} // namespace

std::string render_alignment_record(const align::AlignmentResult& alignment) {
  nlohmann::ordered_json path = nlohmann::ordered_json::array();
  for (const auto& [u, e] : alignment.path) {
    path.push_back(nlohmann::ordered_json::array({u, e}));
  }
  nlohmann::ordered_json j{
      {"record", "alignment/1"},
      {"start_index", alignment.start_index},
      {"window_length", alignment.window_length},
      {"distance", alignment.distance},
      {"path", std::move(path)},
  };
  return dump(j);
}

std::string render_score_record(
    const std::vector<score::SegmentScore>& segments,
    const std::vector<score::JointDeviation>& deviations) {
  nlohmann::ordered_json j{
      {"record", "score/1"},
      {"segments", segments_json(segments)},
      {"flagged", flagged_json(deviations)},
  };
  return dump(j);
}

std::string render_posematch_record(const score::PoseMatchVerdict& verdict,
                                    std::size_t segment, std::size_t frame) {
  nlohmann::ordered_json joints = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < kJointCount; ++k) {
    joints.push_back({{"joint", kJoints[k].name},
                      {"aligned", verdict.per_joint_aligned[k]}});
  }
  nlohmann::ordered_json j{
      {"record", "posematch/1"},
      {"segment", segment},
      {"frame", frame},
      {"aligned_fraction", verdict.aligned_fraction},
      {"advance", verdict.advance},
      {"joints", std::move(joints)},
  };
  return dump(j);
}

std::string render_feedback_record(const PipelineResult& result,
                                   const PipelineConfig& config) {
  nlohmann::ordered_json convention = nlohmann::ordered_json::object();
  for (const auto& [axis, word] : verbal::direction_convention()) {
    convention[axis] = word;
  }

  nlohmann::ordered_json descriptors = nlohmann::ordered_json::array();
  for (const auto& d : result.report.descriptors) {
    descriptors.push_back(
        {{"joint", kJoints[static_cast<std::size_t>(d.joint)].name},
         {"direction", verbal::direction_word(d.direction)},
         {"sentence", d.sentence}});
  }

  nlohmann::ordered_json j{
      {"record", "feedback/1"},
      {"method", result.report.method},
      {"config",
       {{"segments", config.segments},
        {"angular_tolerance_deg", config.angular_tolerance_deg},
        {"position_tolerance_m", config.position_tolerance_m},
        {"advance_fraction", config.advance_fraction},
        {"naive_threshold_deg", config.naive_threshold_deg},
        {"descriptor_cap", config.descriptor_cap},
        {"direction_convention", std::move(convention)}}},
      {"alignment",
       {{"start_index", result.alignment.start_index},
        {"window_length", result.alignment.window_length},
        {"distance", result.alignment.distance}}},
      {"segments", segments_json(result.segments)},
      {"flagged", flagged_json(result.deviations)},
      {"descriptors", std::move(descriptors)},
      {"prompt",
       {{"system_text", result.report.prompt.system_text},
        {"input_lines", result.report.prompt.input_lines}}},
      {"summary", result.report.summary},
  };
  if (result.failure) {
    j["error"] = {{"stage", result.failure->stage},
                  {"kind", result.failure->kind},
                  {"message", result.failure->message}};
  }
  return dump(j);
}

std::string render_timing_record(const StageTiming& timing) {
  nlohmann::ordered_json j{
      {"record", "timing/1"},
      {"ingest_analysis_ms", timing.ingest_analysis_ms},
      {"dtw_alignment_ms", timing.dtw_alignment_ms},
      {"forest_summary_ms", timing.forest_summary_ms},
      {"completion_call_ms", timing.completion_call_ms},
  };
  return dump(j);
}

} // namespace pipeline
} // namespace coach
