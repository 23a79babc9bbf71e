#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "agesim/change_detect.hpp"

using namespace agesim;

namespace {

std::vector<double> lognormal_window(std::mt19937_64& rng, double mu, double sigma,
                                     int n) {
  std::lognormal_distribution<double> dist(mu, sigma);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (double& d : out) {
    d = dist(rng);
  }
  return out;
}

}  // namespace

TEST_CASE("build_windows splits the last 2n delays") {
  const std::vector<double> history = {1.0, 2.0, 3.0, 4.0};
  const WindowPair w = build_windows(history, 4, 2);
  CHECK(w.recent == std::vector<double>{4.0, 3.0});
  CHECK(w.older == std::vector<double>{2.0, 1.0});

  CHECK_THROWS_AS(build_windows(history, 4, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_windows(history, 3, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_windows(history, 5, 2), std::invalid_argument);
}

TEST_CASE("config validation") {
  DetectorConfig cfg;
  cfg.window = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.window = 50;
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.alpha = 0.05;
  cfg.bootstrap_replicates = 10;  // floor(0.05 * 10) = 0
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.bootstrap_replicates = 500;
  CHECK_NOTHROW(cfg.validate());
  cfg.mode = ThresholdMode::fixed;
  cfg.fixed_threshold = 1.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg.fixed_threshold = 0.3;
  CHECK_NOTHROW(cfg.validate());
  cfg.grid_size = 1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("ecdf_on_grid") {
  const std::vector<double> data = {1.0, 2.0};
  const std::vector<double> grid = {1.0, 2.0, 3.0};
  CHECK(ecdf_on_grid(data, grid) == std::vector<double>{0.5, 1.0, 1.0});

  // all data above the largest cut point
  const std::vector<double> high = {5.0, 6.0};
  CHECK(ecdf_on_grid(high, grid) == std::vector<double>{0.0, 0.0, 0.0});

  CHECK_THROWS_AS(ecdf_on_grid(data, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(ecdf_on_grid(data, std::vector<double>{2.0, 1.0}),
                  std::invalid_argument);
}

TEST_CASE("ecdf values are monotone and bounded") {
  std::mt19937_64 rng(4);
  const auto data = lognormal_window(rng, 0.0, 1.0, 40);
  const auto grid = make_grid(*std::max_element(data.begin(), data.end()), 64);
  const auto f = ecdf_on_grid(data, grid);
  for (std::size_t i = 0; i + 1 < f.size(); ++i) {
    CHECK(f[i] <= f[i + 1]);
    CHECK(f[i] >= 0.0);
    CHECK(f[i] <= 1.0);
  }
  // last grid point is max(data), so the ECDF closes at 1
  CHECK(f.back() == 1.0);
}

TEST_CASE("ks_statistic") {
  CHECK(ks_statistic(std::vector<double>{0.1, 0.5, 1.0},
                     std::vector<double>{0.1, 0.5, 1.0}) == 0.0);

  // {1,1,1} vs {5,5,5} with a cut point in [1, 5)
  const std::vector<double> grid = {0.0, 2.5, 5.0};
  const auto f1 = ecdf_on_grid(std::vector<double>{1.0, 1.0, 1.0}, grid);
  const auto f2 = ecdf_on_grid(std::vector<double>{5.0, 5.0, 5.0}, grid);
  CHECK(ks_statistic(f1, f2) == 1.0);

  const std::vector<double> g123 = {1.0, 2.0, 3.0};
  const auto fa = ecdf_on_grid(std::vector<double>{1.0, 2.0}, g123);
  const auto fb = ecdf_on_grid(std::vector<double>{1.0, 3.0}, g123);
  CHECK(ks_statistic(fa, fb) == 0.5);

  CHECK_THROWS_AS(ks_statistic(std::vector<double>{0.1}, std::vector<double>{0.1, 0.2}),
                  std::invalid_argument);
}

TEST_CASE("statistic is a multiset function of each window") {
  std::mt19937_64 rng(9);
  auto d1 = lognormal_window(rng, 0.3, 1.25, 30);
  auto d2 = lognormal_window(rng, -1.0, 1.0, 30);
  const auto grid = make_grid(10.0, 100);
  const double base = ks_statistic(ecdf_on_grid(d1, grid), ecdf_on_grid(d2, grid));
  for (int i = 0; i < 10; ++i) {
    std::shuffle(d1.begin(), d1.end(), rng);
    std::shuffle(d2.begin(), d2.end(), rng);
    CHECK(ks_statistic(ecdf_on_grid(d1, grid), ecdf_on_grid(d2, grid)) == base);
  }
}

TEST_CASE("make_grid spans [0, d_max]") {
  const auto grid = make_grid(5.0, 11);
  CHECK(grid.size() == 11);
  CHECK(grid.front() == 0.0);
  CHECK(grid.back() == 5.0);
  CHECK(grid[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(make_grid(0.0, 11), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(5.0, 1), std::invalid_argument);
}

TEST_CASE("bootstrap_threshold degenerate cases") {
  std::mt19937_64 rng(10);
  const std::vector<double> same(20, 3.0);
  const auto grid = make_grid(3.0, 50);
  CHECK(bootstrap_threshold(same, same, 100, 0.05, grid, rng) == 0.0);

  // single replicate with floor(alpha * R) = 1 returns that replicate
  std::mt19937_64 rng_a(42);
  std::mt19937_64 rng_b(42);
  const auto d1 = lognormal_window(rng, 0.0, 1.0, 10);
  const auto d2 = lognormal_window(rng, 0.0, 1.0, 10);
  const double single = bootstrap_threshold(d1, d2, 1, 1.0, grid, rng_a);
  const double repeat = bootstrap_threshold(d1, d2, 1, 1.0, grid, rng_b);
  CHECK(single == repeat);
  CHECK(single >= 0.0);
  CHECK(single <= 1.0);

  // floor(alpha * R) < 1 is rejected at the operation level
  CHECK_THROWS_AS(bootstrap_threshold(d1, d2, 1, 0.5, grid, rng),
                  std::invalid_argument);
}

TEST_CASE("threshold is the rank-selected bootstrap quantile") {
  std::mt19937_64 rng(11);
  const auto d1 = lognormal_window(rng, 0.0, 1.0, 25);
  const auto d2 = lognormal_window(rng, 0.0, 1.0, 25);
  const auto grid = make_grid(8.0, 100);

  // With alpha * R = 25 the threshold must match a manual sort of the same
  // replicate stream.
  std::mt19937_64 rng_sel(77);
  const double selected = bootstrap_threshold(d1, d2, 500, 0.05, grid, rng_sel);

  std::mt19937_64 rng_manual(77);
  std::vector<double> stats;
  std::vector<double> a(d1.size());
  std::vector<double> b(d1.size());
  std::vector<double> pool(d1);
  pool.insert(pool.end(), d2.begin(), d2.end());
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int r = 0; r < 500; ++r) {
    for (auto& v : a) {
      v = pool[pick(rng_manual)];
    }
    for (auto& v : b) {
      v = pool[pick(rng_manual)];
    }
    stats.push_back(ks_statistic(ecdf_on_grid(a, grid), ecdf_on_grid(b, grid)));
  }
  std::sort(stats.begin(), stats.end(), std::greater<>());
  CHECK(selected == stats[24]);
}

TEST_CASE("detect: identical windows and ceiling threshold") {
  std::vector<double> history(100, 2.0);
  DetectorConfig cfg;
  cfg.window = 50;
  std::mt19937_64 rng(1);
  const KsOutcome same = detect(history, 100, cfg, rng);
  CHECK(same.delta_stat == 0.0);
  CHECK_FALSE(same.changed);

  DetectorConfig fixed;
  fixed.window = 5;
  fixed.mode = ThresholdMode::fixed;
  fixed.fixed_threshold = 1.0;
  std::mt19937_64 rng2(2);
  std::vector<double> split = {1.0, 1.0, 1.0, 1.0, 1.0, 9.0, 9.0, 9.0, 9.0, 9.0};
  const KsOutcome capped = detect(split, 10, fixed, rng2);
  CHECK(capped.delta_stat == 1.0);
  CHECK_FALSE(capped.changed);  // strict inequality at the ceiling

  CHECK_THROWS_AS(detect(std::vector<double>(9, 1.0), 9, fixed, rng2),
                  std::invalid_argument);
}

TEST_CASE("false-alarm rate on a stationary stream tracks alpha") {
  DetectorConfig cfg;
  cfg.window = 50;
  cfg.bootstrap_replicates = 500;
  cfg.alpha = 0.05;
  std::mt19937_64 data_rng(20);
  std::mt19937_64 boot_rng(21);
  int alarms = 0;
  const int trials = 400;
  for (int t = 0; t < trials; ++t) {
    const auto history = lognormal_window(data_rng, -1.0, 1.0, 100);
    alarms += detect(history, 100, cfg, boot_rng).changed ? 1 : 0;
  }
  const double rate = static_cast<double>(alarms) / trials;
  CHECK(rate >= 0.015);
  CHECK(rate <= 0.09);
}

TEST_CASE("power: the benchmark's first change is caught in one test") {
  DetectorConfig cfg;
  cfg.window = 50;
  cfg.bootstrap_replicates = 500;
  cfg.alpha = 0.05;
  std::mt19937_64 data_rng(30);
  std::mt19937_64 boot_rng(31);
  int detected = 0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    auto history = lognormal_window(data_rng, 0.3, 1.25, 50);   // older
    auto recent = lognormal_window(data_rng, -1.0, 1.0, 50);    // after the change
    history.insert(history.end(), recent.begin(), recent.end());
    detected += detect(history, 100, cfg, boot_rng).changed ? 1 : 0;
  }
  CHECK(static_cast<double>(detected) / trials > 0.9);
}

TEST_CASE("per-dataset resampling is available behind the config") {
  std::mt19937_64 rng(40);
  const auto d1 = lognormal_window(rng, 0.0, 1.0, 30);
  const auto d2 = lognormal_window(rng, 0.0, 1.0, 30);
  const auto grid = make_grid(10.0, 100);
  std::mt19937_64 ra(5);
  std::mt19937_64 rb(5);
  const double pooled =
      bootstrap_threshold(d1, d2, 200, 0.05, grid, ra, ResamplingScheme::pooled);
  const double per_ds =
      bootstrap_threshold(d1, d2, 200, 0.05, grid, rb, ResamplingScheme::per_dataset);
  CHECK(pooled >= 0.0);
  CHECK(per_ds >= 0.0);  // same machinery, different null enforcement
}
