// Sliding two-window Kolmogorov-Smirnov change detector. The statistic is
// the maximum absolute difference between the two window ECDFs evaluated on
// a fixed grid of cut points over [0, D_max]; the decision threshold comes
// either from a bootstrap of the pooled windows or from a fixed value.
#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace agesim {

enum class ThresholdMode { bootstrap, fixed };

// Bootstrap resampling source. `pooled` draws both resamples from the union
// of the two windows, which enforces the no-change null and calibrates the
// false-alarm rate; `per_dataset` resamples each window from itself (the
// literal reading of the procedure, kept for comparison).
enum class ResamplingScheme { pooled, per_dataset };

struct DetectorConfig {
  int window = 50;                // n: samples per window
  int bootstrap_replicates = 500; // R
  double alpha = 0.05;            // tail rank fraction: threshold is the
                                  // floor(alpha*R)-th largest bootstrap stat
  int grid_size = 100;            // N: number of ECDF cut points
  ThresholdMode mode = ThresholdMode::bootstrap;
  double fixed_threshold = 0.5;   // used when mode == fixed
  ResamplingScheme resampling = ResamplingScheme::pooled;

  // Throws std::invalid_argument; in bootstrap mode requires
  // floor(alpha * R) >= 1, otherwise the threshold rank is undefined.
  void validate() const;
};

struct KsOutcome {
  double delta_stat = 0.0;  // Delta, in [0, 1]
  double threshold = 0.0;   // delta, in [0, 1]
  bool changed = false;     // Delta > threshold (strict)
};

struct WindowPair {
  std::vector<double> recent;  // D_k, ..., D_{k-n+1}
  std::vector<double> older;   // D_{k-n}, ..., D_{k-2n+1}
};

/// history[i] is the delay of frame i+1; k is the 1-based index of the most
/// recent frame. Throws std::invalid_argument when fewer than 2n delays are
/// available up to k.
WindowPair build_windows(std::span<const double> history, std::int64_t k, int n);

/// grid_size equally spaced cut points spanning [0, d_max].
std::vector<double> make_grid(double d_max, int grid_size);

/// Empirical CDF of `data` at each cut point: F(x) = |{d <= x}| / n.
/// The grid must be nonempty and ascending; data order is irrelevant.
std::vector<double> ecdf_on_grid(std::span<const double> data,
                                 std::span<const double> grid);

/// max_x |F1(x) - F2(x)| over the common grid. Throws on length mismatch.
double ks_statistic(std::span<const double> f1, std::span<const double> f2);

/// Draws `replicates` pairs of n-sample resamples (with replacement),
/// computes the KS statistic of each pair on `grid`, and returns the
/// floor(alpha * replicates)-th largest. Requires that rank to be >= 1.
double bootstrap_threshold(std::span<const double> d1, std::span<const double> d2,
                           int replicates, double alpha,
                           std::span<const double> grid, std::mt19937_64& rng,
                           ResamplingScheme scheme = ResamplingScheme::pooled);

/// Full test at frame k: windows, grid over [0, max of both windows],
/// statistic, threshold per config, strict-inequality verdict.
KsOutcome detect(std::span<const double> history, std::int64_t k,
                 const DetectorConfig& config, std::mt19937_64& rng);

}  // namespace agesim
