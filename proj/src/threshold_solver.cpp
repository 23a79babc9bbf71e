#include "agesim/threshold_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agesim {

namespace {

constexpr double kGammaTolerance = 1e-9;

double lognormal_truncated_mean(const LognormalSpec& s, double gamma) {
  if (gamma <= 0.0) {
    return std::exp(s.mu + 0.5 * s.sigma * s.sigma);
  }
  const double z = (std::log(gamma) - s.mu) / s.sigma;
  return gamma * normal_cdf(z) +
         std::exp(s.mu + 0.5 * s.sigma * s.sigma) * normal_cdf(s.sigma - z);
}

double lognormal_truncated_second(const LognormalSpec& s, double gamma) {
  if (gamma <= 0.0) {
    return std::exp(2.0 * s.mu + 2.0 * s.sigma * s.sigma);
  }
  const double z = (std::log(gamma) - s.mu) / s.sigma;
  return gamma * gamma * normal_cdf(z) +
         std::exp(2.0 * s.mu + 2.0 * s.sigma * s.sigma) * normal_cdf(2.0 * s.sigma - z);
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double truncated_mean(const DelaySpec& spec, double gamma) {
  return std::visit(
      [gamma](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSpec>) {
          return lognormal_truncated_mean(s, gamma);
        } else {
          return std::max(s.value, gamma);
        }
      },
      spec);
}

double truncated_second_moment(const DelaySpec& spec, double gamma) {
  return std::visit(
      [gamma](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSpec>) {
          return lognormal_truncated_second(s, gamma);
        } else {
          const double m = std::max(s.value, gamma);
          return m * m;
        }
      },
      spec);
}

double threshold_policy_aoi(const DelaySpec& spec, double gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("threshold must be >= 0");
  }
  const SpecMoments m = true_moments(spec);
  return 0.5 * truncated_second_moment(spec, gamma) / truncated_mean(spec, gamma) +
         m.mean;
}

double zero_wait_aoi(const DelaySpec& spec) { return threshold_policy_aoi(spec, 0.0); }

ThresholdSolution solve_from_moments(
    double mean_delay, const std::function<double(double)>& trunc_mean,
    const std::function<double(double)>& trunc_second) {
  if (!std::isfinite(mean_delay) || !(mean_delay > 0.0) ||
      !std::isfinite(trunc_second(0.0))) {
    throw std::invalid_argument("solver requires finite positive moments");
  }
  const auto h = [&](double g) { return 0.5 * trunc_second(g) - g * trunc_mean(g); };
  if (!(h(0.0) > 0.0)) {
    throw std::runtime_error("h(0) = E[D^2]/2 must be positive");
  }
  double lo = 0.0;
  double hi = 10.0 * mean_delay;
  int doublings = 0;
  while (h(hi) >= 0.0) {
    hi *= 2.0;
    if (++doublings > 200) {
      throw std::runtime_error("failed to bracket the threshold root");
    }
  }
  while (hi - lo > kGammaTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (h(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double gamma = 0.5 * (lo + hi);
  return {gamma, gamma + mean_delay, mean_delay};
}

ThresholdSolution solve_optimal_threshold(const DelaySpec& spec) {
  validate_spec(spec);
  const SpecMoments m = true_moments(spec);
  return solve_from_moments(
      m.mean, [&spec](double g) { return truncated_mean(spec, g); },
      [&spec](double g) { return truncated_second_moment(spec, g); });
}

EmpiricalDelayMoments::EmpiricalDelayMoments(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  build();
  mean_ = prefix_.back() / static_cast<double>(sorted_.size());
  second_ = prefix_sq_.back() / static_cast<double>(sorted_.size());
}

EmpiricalDelayMoments::EmpiricalDelayMoments(std::vector<double> samples,
                                             SpecMoments anchor)
    : sorted_(std::move(samples)), anchored_(true) {
  build();
  mean_ = anchor.mean;
  second_ = anchor.second;
}

void EmpiricalDelayMoments::build() {
  if (sorted_.empty()) {
    throw std::invalid_argument("empirical moments need at least one sample");
  }
  if (!std::is_sorted(sorted_.begin(), sorted_.end())) {
    std::sort(sorted_.begin(), sorted_.end());
  }
  if (!(sorted_.front() > 0.0)) {
    throw std::invalid_argument("delays must be positive");
  }
  prefix_.resize(sorted_.size() + 1);
  prefix_sq_.resize(sorted_.size() + 1);
  prefix_[0] = prefix_sq_[0] = 0.0;
  for (std::size_t i = 0; i < sorted_.size(); ++i) {
    prefix_[i + 1] = prefix_[i] + sorted_[i];
    prefix_sq_[i + 1] = prefix_sq_[i] + sorted_[i] * sorted_[i];
  }
}

double EmpiricalDelayMoments::truncated_mean(double gamma) const {
  const double n = static_cast<double>(sorted_.size());
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(sorted_.begin(), sorted_.end(), gamma) - sorted_.begin());
  const double below = static_cast<double>(idx);
  // E[max(D,g)] = g F(g) + E[D] - E[D 1{D<=g}]; with an anchor E[D] is exact.
  return gamma * below / n + (mean_ - prefix_[idx] / n);
}

double EmpiricalDelayMoments::truncated_second_moment(double gamma) const {
  const double n = static_cast<double>(sorted_.size());
  const auto idx = static_cast<std::size_t>(
      std::upper_bound(sorted_.begin(), sorted_.end(), gamma) - sorted_.begin());
  const double below = static_cast<double>(idx);
  return gamma * gamma * below / n + (second_ - prefix_sq_[idx] / n);
}

ThresholdSolution solve_optimal_threshold_empirical(const EmpiricalDelayMoments& emp) {
  return solve_from_moments(
      emp.mean(), [&emp](double g) { return emp.truncated_mean(g); },
      [&emp](double g) { return emp.truncated_second_moment(g); });
}

ThresholdSolution solve_optimal_threshold_monte_carlo(const DelaySpec& spec,
                                                      std::size_t num_samples,
                                                      std::uint64_t seed,
                                                      bool anchored) {
  validate_spec(spec);
  if (num_samples == 0) {
    throw std::invalid_argument("need at least one sample");
  }
  std::vector<double> draws(num_samples);
  std::mt19937_64 rng(seed);
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSpec>) {
          std::lognormal_distribution<double> dist(s.mu, s.sigma);
          for (double& d : draws) {
            d = dist(rng);
          }
        } else {
          std::fill(draws.begin(), draws.end(), s.value);
        }
      },
      spec);
  if (anchored) {
    return solve_optimal_threshold_empirical(
        EmpiricalDelayMoments(std::move(draws), true_moments(spec)));
  }
  return solve_optimal_threshold_empirical(EmpiricalDelayMoments(std::move(draws)));
}

}  // namespace agesim
