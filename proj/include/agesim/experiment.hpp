// Config-driven experiment harness: runs each configured policy over
// independent replications of the delay process, evaluates the running
// average age measured from the most recent true change point,
//
//     a_hat(t) = integral of A over [tau_i, t] / (t - tau_i),
//
// and aggregates across replications into CSV outputs.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "agesim/aoi.hpp"
#include "agesim/change_detect.hpp"
#include "agesim/controller.hpp"
#include "agesim/delay_model.hpp"
#include "agesim/policies.hpp"
#include "agesim/threshold_solver.hpp"

namespace agesim {

struct RunOptions {
  bool keep_frames = false;
  std::int64_t max_frames = 0;  // 0: run until the horizon only
  // Called once per completed frame with the previous frame, the new frame
  // (wait already chosen), and the new frame's AoI contribution X_k.
  std::function<void(const FrameRecord&, const FrameRecord&, double)> on_frame;
};

struct RunResult {
  AoiTrajectory trajectory{0.0, 0.0};
  std::vector<FrameRecord> frames;  // populated when keep_frames is set
  std::int64_t frame_count = 0;
  double frame_area_sum = 0.0;     // sum of X_k over k = 1..K
  double final_sample_time = 0.0;  // S_{K+1}
  // First frame index sampled inside each segment of the process; -1 when
  // the run ended before reaching it.
  std::vector<std::int64_t> first_frame_in_segment;
};

/// Drives one replication: samples, FCFS receptions, policy waits, exact
/// age curve. Frames are sampled strictly before the horizon; the curve is
/// extended to cover max(horizon, S_{K+1}).
RunResult simulate_run(DelayProcess& process, SamplingPolicy& policy, double horizon,
                       const RunOptions& options = {});

struct PolicySpec {
  enum class Kind { zero_wait, fixed_threshold, oracle, online, online_ks };
  Kind kind = Kind::zero_wait;
  double fixed_gamma = 0.0;  // fixed_threshold only
  std::string label() const;
};

struct MetricConfig {
  int grid_points = 600;  // evaluation times j * horizon / grid_points
};

struct OutputConfig {
  std::string directory = "out";
  std::string metrics_file = "metrics.csv";
  std::string summary_file = "summary.csv";
  std::string detections_file = "detections.csv";
  bool write_trace = false;  // per-frame trace CSV per (policy, replication)
};

struct ExperimentConfig {
  double horizon = 0.0;
  std::vector<DelaySegment> segments;
  std::vector<PolicySpec> policies;
  int replications = 1;
  std::uint64_t base_seed = 1;
  double d_lb = 0.1;
  DetectorConfig detector{};   // used by online-ks policies
  int detection_stride = 1;
  MetricConfig metric{};
  OutputConfig output{};
  int threads = 0;  // 0: hardware concurrency

  void validate() const;
};

/// Deterministic per-replication streams. The channel seed is shared by all
/// policies of a replication so policy trajectories are comparable; the
/// detector stream is separate so detection randomness never perturbs the
/// simulated channel.
std::uint64_t replication_seed(std::uint64_t base_seed, int replication);
std::uint64_t detector_stream_seed(std::uint64_t base_seed, int replication);

ExperimentConfig parse_config_text(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

/// The three-segment lognormal switching benchmark used by the acceptance
/// suite and shipped in configs/three_segment.json.
ExperimentConfig three_segment_benchmark_config();

/// Per-segment optimal threshold solutions, for reference lines and the
/// oracle policy.
std::vector<ThresholdSolution> oracle_reference(const std::vector<DelaySegment>& segments);

struct MetricPoint {
  double t = 0.0;
  double mean = 0.0;
  double stderr_ = 0.0;
};

struct SegmentSummary {
  int segment = 0;              // 1-based
  double terminal_a_hat = 0.0;  // mean a_hat at the segment's end time
  double gamma_star = 0.0;
  double aoi_star = 0.0;
};

struct PolicyResult {
  PolicySpec spec;
  std::vector<MetricPoint> series;
  std::vector<SegmentSummary> segments;
};

struct DetectionRow {
  int replication = 0;
  double true_change_time = 0.0;  // latest true change at or before the detection
  double detected_time = 0.0;     // sampling time of the detecting frame
  double delay = 0.0;             // detected_time - true_change_time
};

struct ChangeDetectionStats {
  double change_time = 0.0;
  double mean_delay_frames = 0.0;
  double median_delay_frames = 0.0;
  double p90_delay_frames = 0.0;
  double mean_delay_time = 0.0;
  int missed = 0;  // replications with no detection before the next change
};

struct ExperimentResult {
  std::vector<PolicyResult> policies;
  std::vector<ThresholdSolution> oracle_per_segment;
  std::vector<DetectionRow> detections;             // all online-ks events
  std::vector<ChangeDetectionStats> detection_stats;  // first online-ks policy
  int spurious_detections = 0;  // events beyond the first one per true change
};

ExperimentResult run_experiment(const ExperimentConfig& config);

/// Writes metrics.csv, summary.csv and detections.csv (fixed column order,
/// dot-decimal numbers) into the configured output directory.
void write_outputs(const ExperimentResult& result, const ExperimentConfig& config);

/// Human-readable run report (per-segment terminal averages, oracle
/// references, detection-delay statistics).
std::string summarize(const ExperimentResult& result, const ExperimentConfig& config);

}  // namespace agesim
