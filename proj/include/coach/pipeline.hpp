#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coach/align.hpp"
#include "coach/config.hpp"
#include "coach/forest.hpp"
#include "coach/scoring.hpp"

namespace coach {
namespace pipeline {

/// Wall-clock milliseconds per stage. completion_call stays 0 in stub
/// mode. Timing lives outside the deterministic report record.
struct StageTiming {
  double ingest_analysis_ms = 0.0;
  double dtw_alignment_ms = 0.0;
  double forest_summary_ms = 0.0;
  double completion_call_ms = 0.0;
};

struct FeedbackReport {
  std::string method; // "naive" or "forest"
  std::vector<verbal::Descriptor> descriptors;
  verbal::CoachingPrompt prompt;
  std::string summary;
  StageTiming timing;
};

struct StageFailure {
  std::string stage;
  std::string kind;
  std::string message;
};

/// Everything one run produces. On a stage failure, the facets computed
/// before the failing stage are kept and `failure` is set.
struct PipelineResult {
  align::AlignmentResult alignment;
  std::vector<score::SegmentScore> segments;
  std::vector<score::JointDeviation> deviations; // empty without positions
  FeedbackReport report;
  std::optional<StageFailure> failure;
};

/// align -> score/spatial -> descriptors -> prompt -> summarize over
/// already-parsed sequences. `model` is required for method "forest".
PipelineResult run_pipeline(const MotionSequence& user,
                            const MotionSequence& ref,
                            const PipelineConfig& config,
                            const std::string& method,
                            const forest::ForestModel* model,
                            verbal::CompletionService& service);

/// File-based entry: parses and height-normalizes both inputs (counted
/// as ingest time), then delegates.
PipelineResult run_pipeline_files(const std::string& user_path,
                                  const std::string& ref_path,
                                  const PipelineConfig& config,
                                  const std::string& method,
                                  const forest::ForestModel* model,
                                  verbal::CompletionService& service);

/// Deterministic machine-readable records (stable field order, trailing
/// newline). The CLI prints these; the service returns the same bytes.
std::string render_alignment_record(const align::AlignmentResult& alignment);

std::string render_score_record(
    const std::vector<score::SegmentScore>& segments,
    const std::vector<score::JointDeviation>& deviations);

std::string render_posematch_record(const score::PoseMatchVerdict& verdict,
                                    std::size_t segment,
                                    std::size_t frame);

std::string render_feedback_record(const PipelineResult& result,
                                   const PipelineConfig& config);

std::string render_timing_record(const StageTiming& timing);

/// Height-normalizes when positions and a subject height are present.
MotionSequence prepare_sequence(const MotionSequence& seq);

} // namespace pipeline
} // namespace coach
