#include "agesim/delay_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agesim {

SpecMoments true_moments(const DelaySpec& spec) {
  return std::visit(
      [](const auto& s) -> SpecMoments {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSpec>) {
          return {std::exp(s.mu + 0.5 * s.sigma * s.sigma),
                  std::exp(2.0 * s.mu + 2.0 * s.sigma * s.sigma)};
        } else {
          return {s.value, s.value * s.value};
        }
      },
      spec);
}

void validate_spec(const DelaySpec& spec) {
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSpec>) {
          if (!(s.sigma > 0.0) || !std::isfinite(s.sigma) || !std::isfinite(s.mu)) {
            throw std::invalid_argument("lognormal spec requires finite mu and sigma > 0");
          }
        } else {
          if (!(s.value > 0.0) || !std::isfinite(s.value)) {
            throw std::invalid_argument("point mass spec requires a finite value > 0");
          }
        }
      },
      spec);
  const SpecMoments m = true_moments(spec);
  if (!std::isfinite(m.mean) || !std::isfinite(m.second)) {
    throw std::invalid_argument("delay spec moments are not finite");
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

DelayProcess::DelayProcess(std::vector<DelaySegment> segments, std::uint64_t seed,
                           double d_lb)
    : segments_(std::move(segments)), rng_(seed), d_lb_(d_lb), seed_(seed) {
  if (segments_.empty()) {
    throw std::invalid_argument("delay process needs at least one segment");
  }
  if (segments_.front().start_time != 0.0) {
    throw std::invalid_argument("first segment must start at time 0");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    validate_spec(segments_[i].spec);
    if (i > 0 && !(segments_[i].start_time > segments_[i - 1].start_time)) {
      throw std::invalid_argument("segment start times must be strictly increasing");
    }
  }
  if (!(d_lb_ > 0.0)) {
    throw std::invalid_argument("d_lb must be > 0");
  }
}

std::size_t DelayProcess::segment_index_at(double t) const {
  if (!(t >= 0.0)) {
    throw std::invalid_argument("segment lookup requires t >= 0");
  }
  auto it = std::upper_bound(
      segments_.begin(), segments_.end(), t,
      [](double value, const DelaySegment& seg) { return value < seg.start_time; });
  return static_cast<std::size_t>(std::distance(segments_.begin(), it)) - 1;
}

const DelaySegment& DelayProcess::segment_at(double t) const {
  return segments_[segment_index_at(t)];
}

double DelayProcess::sample(double sample_time) {
  const DelaySpec& spec = segment_at(sample_time).spec;
  return std::visit(
      [this](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, LognormalSpec>) {
          std::lognormal_distribution<double> dist(s.mu, s.sigma);
          return dist(rng_);
        } else {
          return s.value;
        }
      },
      spec);
}

}  // namespace agesim
