#include "agesim/change_detect.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agesim {

namespace {

std::vector<double> ecdf_sorted(const std::vector<double>& sorted_data,
                                std::span<const double> grid) {
  std::vector<double> out(grid.size());
  const double n = static_cast<double>(sorted_data.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto count =
        std::upper_bound(sorted_data.begin(), sorted_data.end(), grid[i]) -
        sorted_data.begin();
    out[i] = static_cast<double>(count) / n;
  }
  return out;
}

int threshold_rank(double alpha, int replicates) {
  const int rank = static_cast<int>(std::floor(alpha * replicates));
  if (rank < 1 || rank > replicates) {
    throw std::invalid_argument(
        "floor(alpha * replicates) must lie in [1, replicates]");
  }
  return rank;
}

}  // namespace

void DetectorConfig::validate() const {
  if (window < 2) {
    throw std::invalid_argument("detector window must be >= 2");
  }
  if (grid_size < 2) {
    throw std::invalid_argument("grid size must be >= 2");
  }
  if (mode == ThresholdMode::bootstrap) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw std::invalid_argument("alpha must lie in (0, 1)");
    }
    if (bootstrap_replicates < 1) {
      throw std::invalid_argument("bootstrap replicates must be >= 1");
    }
    threshold_rank(alpha, bootstrap_replicates);
  } else {
    if (!(fixed_threshold >= 0.0 && fixed_threshold <= 1.0)) {
      throw std::invalid_argument("fixed threshold must lie in [0, 1]");
    }
  }
}

WindowPair build_windows(std::span<const double> history, std::int64_t k, int n) {
  if (n < 1) {
    throw std::invalid_argument("window size must be >= 1");
  }
  if (k < 2 * static_cast<std::int64_t>(n) ||
      k > static_cast<std::int64_t>(history.size())) {
    throw std::invalid_argument("insufficient history for the requested windows");
  }
  WindowPair w;
  w.recent.reserve(n);
  w.older.reserve(n);
  // history is 0-based; frame i lives at history[i-1].
  for (std::int64_t i = k; i > k - n; --i) {
    w.recent.push_back(history[static_cast<std::size_t>(i - 1)]);
  }
  for (std::int64_t i = k - n; i > k - 2 * n; --i) {
    w.older.push_back(history[static_cast<std::size_t>(i - 1)]);
  }
  return w;
}

std::vector<double> make_grid(double d_max, int grid_size) {
  if (grid_size < 2) {
    throw std::invalid_argument("grid size must be >= 2");
  }
  if (!(d_max > 0.0)) {
    throw std::invalid_argument("d_max must be > 0");
  }
  std::vector<double> grid(static_cast<std::size_t>(grid_size));
  for (int i = 0; i < grid_size; ++i) {
    grid[static_cast<std::size_t>(i)] =
        d_max * static_cast<double>(i) / static_cast<double>(grid_size - 1);
  }
  return grid;
}

std::vector<double> ecdf_on_grid(std::span<const double> data,
                                 std::span<const double> grid) {
  if (grid.empty()) {
    throw std::invalid_argument("grid must be nonempty");
  }
  if (!std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("grid must be ascending");
  }
  if (data.empty()) {
    throw std::invalid_argument("data must be nonempty");
  }
  std::vector<double> sorted(data.begin(), data.end());
  std::sort(sorted.begin(), sorted.end());
  return ecdf_sorted(sorted, grid);
}

double ks_statistic(std::span<const double> f1, std::span<const double> f2) {
  if (f1.size() != f2.size() || f1.empty()) {
    throw std::invalid_argument("ECDF vectors must have the same nonzero length");
  }
  double best = 0.0;
  for (std::size_t i = 0; i < f1.size(); ++i) {
    best = std::max(best, std::abs(f1[i] - f2[i]));
  }
  return best;
}

double bootstrap_threshold(std::span<const double> d1, std::span<const double> d2,
                           int replicates, double alpha,
                           std::span<const double> grid, std::mt19937_64& rng,
                           ResamplingScheme scheme) {
  const std::size_t n = d1.size();
  if (n == 0 || d2.size() != n) {
    throw std::invalid_argument("windows must be nonempty and equally sized");
  }
  if (replicates < 1) {
    throw std::invalid_argument("replicates must be >= 1");
  }
  const int rank = threshold_rank(alpha, replicates);

  std::vector<double> pool;
  pool.reserve(2 * n);
  pool.insert(pool.end(), d1.begin(), d1.end());
  pool.insert(pool.end(), d2.begin(), d2.end());

  std::uniform_int_distribution<std::size_t> pick_pool(0, pool.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_window(0, n - 1);

  std::vector<double> stats(static_cast<std::size_t>(replicates));
  std::vector<double> a(n);
  std::vector<double> b(n);
  for (int r = 0; r < replicates; ++r) {
    if (scheme == ResamplingScheme::pooled) {
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = pool[pick_pool(rng)];
      }
      for (std::size_t i = 0; i < n; ++i) {
        b[i] = pool[pick_pool(rng)];
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = d1[pick_window(rng)];
      }
      for (std::size_t i = 0; i < n; ++i) {
        b[i] = d2[pick_window(rng)];
      }
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    stats[static_cast<std::size_t>(r)] =
        ks_statistic(ecdf_sorted(a, grid), ecdf_sorted(b, grid));
  }
  // rank-th largest: selection by rank, so replicate order cannot matter.
  std::nth_element(stats.begin(), stats.begin() + (rank - 1), stats.end(),
                   std::greater<>());
  return stats[static_cast<std::size_t>(rank - 1)];
}

KsOutcome detect(std::span<const double> history, std::int64_t k,
                 const DetectorConfig& config, std::mt19937_64& rng) {
  config.validate();
  WindowPair w = build_windows(history, k, config.window);
  const double d_max = std::max(*std::max_element(w.recent.begin(), w.recent.end()),
                                *std::max_element(w.older.begin(), w.older.end()));
  const std::vector<double> grid = make_grid(d_max, config.grid_size);
  const double delta = ks_statistic(ecdf_on_grid(w.recent, grid),
                                    ecdf_on_grid(w.older, grid));
  double threshold = config.fixed_threshold;
  if (config.mode == ThresholdMode::bootstrap) {
    threshold = bootstrap_threshold(w.recent, w.older, config.bootstrap_replicates,
                                    config.alpha, grid, rng, config.resampling);
  }
  return {delta, threshold, delta > threshold};
}

}  // namespace agesim
