#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "coach/config.hpp"
#include "coach/dataset_io.hpp"
#include "coach/divergence.hpp"
#include "coach/error.hpp"
#include "coach/forest_io.hpp"
#include "coach/motion_io.hpp"
#include "coach/pipeline.hpp"
#include "coach/scoring.hpp"
#include "coach/service.hpp"
#include "coach/synth.hpp"
#include "coach/version.hpp"

namespace {

using namespace coach;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Parse, path + ":1: cannot open file");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<MotionSequence> read_corpus_dir(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".motion") {
      files.push_back(entry.path().string());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    throw Error(ErrorKind::InvalidInput,
                "no .motion files found under " + dir);
  }
  std::vector<MotionSequence> out;
  out.reserve(files.size());
  for (const auto& f : files) out.push_back(read_motion_file(f));
  return out;
}

std::vector<std::string> corpus_names(const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> names;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".motion") {
      names.push_back(entry.path().stem().string());
    }
  }
  std::sort(names.begin(), names.end());
  return names;
}

pipeline::PipelineConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  return pipeline::read_config_file(path);
}

std::vector<std::pair<int, int>> parse_grid(const std::string& spec) {
  // "5:none,10:none,5:3" -> [(5,0),(10,0),(5,3)]
  std::vector<std::pair<int, int>> grid;
  std::istringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw Error(ErrorKind::InvalidConfig,
                  "grid entries must look like N:D or N:none, got '" + item +
                      "'");
    }
    const int n = std::stoi(item.substr(0, colon));
    const std::string d = item.substr(colon + 1);
    grid.emplace_back(n, d == "none" ? 0 : std::stoi(d));
  }
  return grid;
}

void print_ablation_table(const std::vector<forest::AblationRow>& rows) {
  std::printf("%-14s %-10s %-10s %-11s %-8s %-8s\n", "n_estimators",
              "max_depth", "accuracy", "precision", "recall", "f1");
  for (const auto& r : rows) {
    std::printf("%-14d %-10s %-10.4f %-11.4f %-8.4f %-8.4f%s\n",
                r.n_estimators,
                r.max_depth == 0 ? "none" : std::to_string(r.max_depth).c_str(),
                r.metrics.subset_accuracy, r.metrics.precision,
                r.metrics.recall, r.metrics.f1,
                r.adopted ? "  (adopted)" : "");
  }
}

int run(int argc, char** argv) {
  CLI::App app{"Motion analysis and coaching feedback engine"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "Pipeline config file");

  // convert
  auto* convert = app.add_subcommand(
      "convert", "Round-trip a motion file through the canonical writer");
  std::string conv_in, conv_out;
  bool conv_check = false;
  convert->add_option("--in", conv_in, "Input motion file")->required();
  convert->add_option("--out", conv_out, "Output motion file");
  convert->add_flag("--check", conv_check,
                    "Verify the file is byte-identical to its canonical form");

  // align
  auto* align_cmd = app.add_subcommand("align", "Align learner to reference");
  std::string a_user, a_ref;
  int a_fast_radius = -1;
  align_cmd->add_option("--user", a_user, "Learner motion file")->required();
  align_cmd->add_option("--ref", a_ref, "Expert motion file")->required();
  align_cmd->add_option("--fast-radius", a_fast_radius,
                        "Use the radius-constrained approximation");

  // score
  auto* score_cmd =
      app.add_subcommand("score", "Segment timing scores and spatial flags");
  std::string s_user, s_ref;
  std::size_t s_segments = 4;
  score_cmd->add_option("--user", s_user)->required();
  score_cmd->add_option("--ref", s_ref)->required();
  score_cmd->add_option("--segments", s_segments, "4 or 8");

  // posematch
  auto* pose_cmd =
      app.add_subcommand("posematch", "Segment-gated pose matching check");
  std::string p_user, p_ref;
  std::size_t p_segment = 0;
  pose_cmd->add_option("--user", p_user)->required();
  pose_cmd->add_option("--ref", p_ref)->required();
  pose_cmd->add_option("--segment", p_segment)->required();

  // simulate
  auto* sim_cmd = app.add_subcommand(
      "simulate", "Build a labeled dataset from an expert corpus");
  std::string sim_corpus, sim_out;
  std::uint64_t sim_seed = 7;
  double sim_fraction = sim::kDefaultJointFraction;
  double sim_sigma = sim::kDefaultSigmaScale;
  sim_cmd->add_option("--corpus", sim_corpus, "Directory of .motion files")
      ->required();
  sim_cmd->add_option("--seed", sim_seed);
  sim_cmd->add_option("--joint-fraction", sim_fraction);
  sim_cmd->add_option("--sigma-scale", sim_sigma);
  sim_cmd->add_option("--out", sim_out, "Dataset file")->required();

  // eval-dist
  auto* dist_cmd = app.add_subcommand(
      "eval-dist", "KL/JS divergence between two motion sets");
  std::string dist_real, dist_sim;
  std::size_t dist_bins = sim::kDefaultHistogramBins;
  dist_cmd->add_option("--real", dist_real, "Directory of .motion files")
      ->required();
  dist_cmd->add_option("--sim", dist_sim, "Directory of .motion files")
      ->required();
  dist_cmd->add_option("--bins", dist_bins);

  // train
  auto* train_cmd = app.add_subcommand("train", "Train the forest model");
  std::string t_dataset, t_out, t_depth = "none";
  int t_estimators = 5;
  std::uint64_t t_seed = 7;
  train_cmd->add_option("--dataset", t_dataset)->required();
  train_cmd->add_option("--n-estimators", t_estimators);
  train_cmd->add_option("--max-depth", t_depth, "Positive depth or 'none'");
  train_cmd->add_option("--seed", t_seed);
  train_cmd->add_option("--out", t_out, "Model file")->required();

  // ablate
  auto* ablate_cmd =
      app.add_subcommand("ablate", "Hyperparameter ablation table");
  std::string ab_dataset;
  std::string ab_grid = "5:none,10:none,20:none,5:1,5:3,5:5";
  std::uint64_t ab_seed = 7;
  ablate_cmd->add_option("--dataset", ab_dataset)->required();
  ablate_cmd->add_option("--grid", ab_grid,
                         "Comma list of n_estimators:max_depth");
  ablate_cmd->add_option("--seed", ab_seed);

  // feedback
  auto* fb_cmd =
      app.add_subcommand("feedback", "End-to-end coaching feedback report");
  std::string f_user, f_ref, f_model, f_method = "naive";
  bool f_live = false, f_timing = false;
  fb_cmd->add_option("--user", f_user)->required();
  fb_cmd->add_option("--ref", f_ref)->required();
  fb_cmd->add_option("--model", f_model, "Model file (forest method)");
  fb_cmd->add_option("--method", f_method, "naive or forest");
  fb_cmd->add_flag("--live", f_live, "Call the configured live service");
  fb_cmd->add_flag("--timing", f_timing, "Also print the timing record");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  std::string sv_host = "127.0.0.1", sv_model;
  int sv_port = 8080;
  serve_cmd->add_option("--host", sv_host);
  serve_cmd->add_option("--port", sv_port);
  serve_cmd->add_option("--model", sv_model, "Model file for /feedback");

  // gen-fixtures
  auto* gen_cmd = app.add_subcommand(
      "gen-fixtures", "Write the benchmark fixture pair and expert corpus");
  std::string g_out = "fixtures";
  std::uint64_t g_seed = 7;
  std::size_t g_count = 20;
  gen_cmd->add_option("--out", g_out, "Output directory");
  gen_cmd->add_option("--seed", g_seed);
  gen_cmd->add_option("--count", g_count, "Corpus size");

  CLI11_PARSE(app, argc, argv);

  pipeline::PipelineConfig config = load_config(config_path);

  if (*convert) {
    const MotionSequence seq = read_motion_file(conv_in);
    const std::string canonical = write_motion(seq);
    if (conv_check) {
      if (read_file(conv_in) != canonical) {
        std::cerr << conv_in << ": not in canonical form\n";
        return 1;
      }
      std::cout << conv_in << ": canonical\n";
    }
    if (!conv_out.empty()) write_motion_file(seq, conv_out);
    return 0;
  }

  if (*align_cmd) {
    const auto user = pipeline::prepare_sequence(read_motion_file(a_user));
    const auto ref = pipeline::prepare_sequence(read_motion_file(a_ref));
    align::AlignOptions opts;
    if (a_fast_radius >= 0) {
      opts.fast = true;
      opts.fast_radius = a_fast_radius;
    }
    std::cout << pipeline::render_alignment_record(
        align::align(user, ref, opts));
    return 0;
  }

  if (*score_cmd) {
    const auto user = pipeline::prepare_sequence(read_motion_file(s_user));
    const auto ref = pipeline::prepare_sequence(read_motion_file(s_ref));
    const auto alignment = align::align(user, ref);
    const auto boundaries =
        score::segment_boundaries(ref.frames.size(), s_segments);
    const auto scores =
        score::score_segments(alignment, boundaries, user.fps, ref.fps);
    std::vector<score::JointDeviation> deviations;
    if (user.has_positions() && ref.has_positions()) {
      deviations = score::spatial_diff(alignment, user, ref,
                                       config.position_tolerance_m);
    }
    std::cout << pipeline::render_score_record(scores, deviations);
    return 0;
  }

  if (*pose_cmd) {
    const auto user = pipeline::prepare_sequence(read_motion_file(p_user));
    const auto ref = pipeline::prepare_sequence(read_motion_file(p_ref));
    const auto boundaries =
        score::segment_boundaries(ref.frames.size(), config.segments);
    if (p_segment >= boundaries.size()) {
      throw Error(ErrorKind::InvalidInput, "segment index out of range");
    }
    const std::size_t frame = boundaries[p_segment].end - 1;
    if (frame >= user.frames.size()) {
      throw Error(ErrorKind::InvalidInput,
                  "learner has no frame for segment end");
    }
    const auto verdict = score::pose_match_step(
        user, frame, ref, frame, config.angular_tolerance_deg,
        config.position_tolerance_m, config.advance_fraction);
    std::cout << pipeline::render_posematch_record(verdict, p_segment, frame);
    return 0;
  }

  if (*sim_cmd) {
    const auto motions = read_corpus_dir(sim_corpus);
    sim::SimulateConfig sc;
    sc.joint_fraction = sim_fraction;
    sc.sigma_scale = sim_sigma;
    const auto ds =
        sim::build_dataset(motions, sc, sim_seed, corpus_names(sim_corpus));
    sim::write_dataset_file(ds, sim_out);
    std::cout << "wrote " << ds.train.size() << " train and "
              << ds.test.size() << " test frames to " << sim_out << "\n";
    return 0;
  }

  if (*dist_cmd) {
    const auto real = read_corpus_dir(dist_real);
    const auto simulated = read_corpus_dir(dist_sim);
    const auto report =
        sim::distribution_divergence(real, simulated, dist_bins);
    std::printf("%-10s %-12s %-12s\n", "axis", "kl", "js");
    const char* axis_names[] = {"X", "Y", "Z"};
    for (std::size_t a = 0; a < kAxisCount; ++a) {
      std::printf("%-10s %-12.6f %-12.6f\n", axis_names[a],
                  report.per_axis[a].kl, report.per_axis[a].js);
    }
    std::printf("%-10s %-12.6f %-12.6f\n", "All(XYZ)", report.combined.kl,
                report.combined.js);
    return 0;
  }

  if (*train_cmd) {
    const auto ds = sim::read_dataset_file(t_dataset);
    const int depth = t_depth == "none" ? 0 : std::stoi(t_depth);
    const auto model = forest::train_forest(ds, t_estimators, depth, t_seed);
    forest::write_model_file(model, t_out);
    const auto metrics = forest::evaluate(model, ds.test);
    std::printf(
        "trained %d trees per joint; test subset_accuracy %.4f precision "
        "%.4f recall %.4f f1 %.4f\n",
        t_estimators, metrics.subset_accuracy, metrics.precision,
        metrics.recall, metrics.f1);
    return 0;
  }

  if (*ablate_cmd) {
    const auto ds = sim::read_dataset_file(ab_dataset);
    const auto rows = forest::ablation(ds, parse_grid(ab_grid), ab_seed);
    print_ablation_table(rows);
    return 0;
  }

  if (*fb_cmd) {
    std::unique_ptr<forest::ForestModel> model;
    if (!f_model.empty()) {
      model = std::make_unique<forest::ForestModel>(
          forest::read_model_file(f_model));
    }
    config.stub = !f_live;
    verbal::StubCompletion stub;
    std::unique_ptr<verbal::HttpCompletion> live;
    verbal::CompletionService* svc = &stub;
    if (f_live) {
      pipeline::apply_env_overrides(config);
      live = std::make_unique<verbal::HttpCompletion>(config.completion);
      svc = live.get();
    }
    const auto result = pipeline::run_pipeline_files(
        f_user, f_ref, config, f_method, model.get(), *svc);
    std::cout << pipeline::render_feedback_record(result, config);
    if (f_timing) {
      std::cout << pipeline::render_timing_record(result.report.timing);
    }
    return result.failure ? 1 : 0;
  }

  if (*serve_cmd) {
    std::shared_ptr<const forest::ForestModel> model;
    if (!sv_model.empty()) {
      model = std::make_shared<const forest::ForestModel>(
          forest::read_model_file(sv_model));
    }
    pipeline::apply_env_overrides(config);
    pipeline::PipelineServer server(config, model);
    std::cerr << "listening on " << sv_host << ":" << sv_port << "\n";
    server.listen(sv_host, sv_port);
    return 0;
  }

  if (*gen_cmd) {
    namespace fs = std::filesystem;
    fs::create_directories(g_out);
    fs::create_directories(g_out + "/corpus");
    const auto pair = synth::make_fixture_pair(g_seed);
    write_motion_file(pair.reference, g_out + "/reference.motion");
    write_motion_file(pair.learner, g_out + "/learner.motion");
    const auto corpus = synth::make_corpus(g_seed, g_count);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof(name), "%s/corpus/expert%02zu.motion",
                    g_out.c_str(), i);
      write_motion_file(corpus[i], name);
    }
    std::cout << "wrote fixture pair and " << corpus.size()
              << " expert motions under " << g_out << "\n";
    return 0;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const coach::Error& e) {
    std::cerr << "error (" << coach::error_kind_name(e.kind())
              << "): " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
