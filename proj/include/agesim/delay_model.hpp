// Piecewise-stationary transmission delay model: an ordered list of
// stationary segments, each carrying its own delay distribution, plus a
// per-process RNG stream so every replication owns its randomness.
#pragma once

#include <cstdint>
#include <random>
#include <variant>
#include <vector>

namespace agesim {

// ln D ~ N(mu, sigma^2), sigma > 0.
struct LognormalSpec {
  double mu = 0.0;
  double sigma = 1.0;
};

// Degenerate delay fixed at value > 0. Covers the sigma -> 0 limit and gives
// analytically solvable cases.
struct PointMassSpec {
  double value = 1.0;
};

using DelaySpec = std::variant<LognormalSpec, PointMassSpec>;

struct SpecMoments {
  double mean = 0.0;
  double second = 0.0;  // E[D^2]
};

/// Closed-form first and second moments of a delay spec.
SpecMoments true_moments(const DelaySpec& spec);

/// Throws std::invalid_argument if the spec parameters are out of range or
/// the implied moments are not finite.
void validate_spec(const DelaySpec& spec);

struct DelaySegment {
  double start_time = 0.0;
  DelaySpec spec;
};

/// Cheap stateless seed mixer for deriving independent per-replication and
/// per-component streams from one base seed.
std::uint64_t splitmix64(std::uint64_t x);

class DelayProcess {
 public:
  // Segments must start at 0 and have strictly increasing start times; they
  // cover [0, inf). d_lb is the delay lower bound assumed by the learner's
  // step sizes, a configuration input (the lognormal itself has infimum 0).
  DelayProcess(std::vector<DelaySegment> segments, std::uint64_t seed,
               double d_lb = 0.1);

  // Draws the transmission delay of a packet sampled at sample_time. The
  // segment is selected by the sampling instant, never by reception time.
  double sample(double sample_time);

  // Segment with start_time <= t < next start_time (left-closed).
  const DelaySegment& segment_at(double t) const;
  std::size_t segment_index_at(double t) const;

  const std::vector<DelaySegment>& segments() const { return segments_; }
  double d_lb() const { return d_lb_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::vector<DelaySegment> segments_;
  std::mt19937_64 rng_;
  double d_lb_ = 0.1;
  std::uint64_t seed_ = 0;
};

}  // namespace agesim
