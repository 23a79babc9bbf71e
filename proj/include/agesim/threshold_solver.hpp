// Offline solver for the optimal waiting threshold. The average AoI of the
// threshold policy with parameter g is
//
//     a(g) = E[max(D, g)^2] / (2 E[max(D, g)]) + E[D],
//
// and the optimum g* is the unique root of
//
//     h(g) = E[max(D, g)^2] / 2 - g * E[max(D, g)],
//
// which is strictly decreasing with h(0) = E[D^2]/2 > 0. The minimum average
// AoI then satisfies a* = g* + E[D]. For lognormal delays the truncated
// moments have closed forms in the standard normal CDF; an empirical route
// over Monte Carlo samples provides an independent cross-check.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "agesim/delay_model.hpp"

namespace agesim {

struct ThresholdSolution {
  double gamma_star = 0.0;
  double aoi_star = 0.0;    // = gamma_star + mean_delay
  double mean_delay = 0.0;
};

double normal_cdf(double x);

/// E[max(D, gamma)] in closed form.
double truncated_mean(const DelaySpec& spec, double gamma);
/// E[max(D, gamma)^2] in closed form.
double truncated_second_moment(const DelaySpec& spec, double gamma);

/// Average AoI of the fixed-threshold policy under the spec; gamma = 0 gives
/// the zero-wait policy.
double threshold_policy_aoi(const DelaySpec& spec, double gamma);
double zero_wait_aoi(const DelaySpec& spec);

/// Bisection on h over [0, U], with U doubled from 10 * mean_delay until
/// h(U) < 0; absolute tolerance 1e-9 on gamma. Throws std::runtime_error on
/// bracket failure (h's monotonicity makes that a bug, not a data case) and
/// std::invalid_argument on non-finite moments.
ThresholdSolution solve_from_moments(
    double mean_delay, const std::function<double(double)>& trunc_mean,
    const std::function<double(double)>& trunc_second);

ThresholdSolution solve_optimal_threshold(const DelaySpec& spec);

// Empirical truncated moments of a sample set, via sorted prefix sums.
// When anchored on exact full moments, E[max(D,g)] is evaluated as
// g*F(g) + (E[D] - E^[D 1{D<=g}]) so the Monte Carlo error comes only from
// the bounded region below g; without an anchor the tail term is empirical
// too.
class EmpiricalDelayMoments {
 public:
  explicit EmpiricalDelayMoments(std::vector<double> samples);
  EmpiricalDelayMoments(std::vector<double> samples, SpecMoments anchor);

  double mean() const { return mean_; }
  double truncated_mean(double gamma) const;
  double truncated_second_moment(double gamma) const;
  std::size_t size() const { return sorted_.size(); }

 private:
  void build();

  std::vector<double> sorted_;
  std::vector<double> prefix_;     // prefix sums of x
  std::vector<double> prefix_sq_;  // prefix sums of x^2
  double mean_ = 0.0;
  double second_ = 0.0;
  bool anchored_ = false;
};

ThresholdSolution solve_optimal_threshold_empirical(const EmpiricalDelayMoments& emp);

/// Monte Carlo route: draw num_samples delays from the spec and solve on the
/// empirical distribution. `anchored` enables the exact-full-moment control
/// variate (kept off to exercise the raw sampling route).
ThresholdSolution solve_optimal_threshold_monte_carlo(const DelaySpec& spec,
                                                      std::size_t num_samples,
                                                      std::uint64_t seed,
                                                      bool anchored = true);

}  // namespace agesim
