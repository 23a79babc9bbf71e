// Waiting-time policies: zero-wait, fixed threshold, the clairvoyant
// per-segment oracle, and the online Robbins-Monro threshold learner.
#pragma once

#include <cstdint>
#include <vector>

namespace agesim {

double wait_zero(double delay);

/// Threshold waiting rule w(d) = max(gamma - d, 0).
double wait_threshold(double gamma, double delay);

/// Step size of the stochastic-approximation update: 1/(2*d_lb) for the
/// first frame after a (re)start, then 1/((k+2)*d_lb). k is 1-based.
double rm_step_size(std::int64_t k, double d_lb);

struct LearnerState {
  double gamma = 0.0;               // current threshold estimate, >= 0
  std::int64_t frames_since_reset = 0;
  double d_lb = 0.1;
};

/// One Robbins-Monro step driven by the frame reward q = l^2/2 and frame
/// length l. The threshold is projected back to [0, inf).
LearnerState rm_update(const LearnerState& state, double q, double l);

// A policy is queried once per ACK and returns the waiting time before the
// next sample. Policies are replication-local and stateful where needed.
class SamplingPolicy {
 public:
  virtual ~SamplingPolicy() = default;
  // k is the 1-based frame index, delay the observed D_k, ack_time = R_k.
  virtual double on_ack(std::int64_t k, double delay, double ack_time) = 0;
};

class ZeroWaitPolicy final : public SamplingPolicy {
 public:
  double on_ack(std::int64_t, double, double) override { return 0.0; }
};

class FixedThresholdPolicy final : public SamplingPolicy {
 public:
  explicit FixedThresholdPolicy(double gamma);
  double on_ack(std::int64_t, double delay, double) override;
  double gamma() const { return gamma_; }

 private:
  double gamma_ = 0.0;
};

// Clairvoyant baseline: knows the true change points and the per-segment
// optimal thresholds, and switches threshold as soon as the ACK time crosses
// a segment boundary.
class OraclePolicy final : public SamplingPolicy {
 public:
  // boundaries[i] is the start time of segment i (boundaries[0] == 0);
  // gammas[i] the optimal threshold inside that segment.
  OraclePolicy(std::vector<double> boundaries, std::vector<double> gammas);
  double on_ack(std::int64_t, double delay, double ack_time) override;

 private:
  std::vector<double> boundaries_;
  std::vector<double> gammas_;
};

// Online threshold learner: waits (gamma_k - D_k)^+ using the pre-update
// estimate, then applies the Robbins-Monro step.
class OnlineRmPolicy final : public SamplingPolicy {
 public:
  explicit OnlineRmPolicy(double d_lb);
  double on_ack(std::int64_t k, double delay, double ack_time) override;
  const LearnerState& state() const { return state_; }

 private:
  LearnerState state_;
};

}  // namespace agesim
