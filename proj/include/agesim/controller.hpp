// Joint online sampling and change-point detection: the Robbins-Monro
// threshold learner plus the KS detector, with a learner reset whenever a
// change is declared. Within one ACK the order is: choose the wait with the
// pre-update threshold, run the detector if eligible, then either reset (on
// a positive verdict) or apply the learner update with the step size indexed
// by frames since the last declared change.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "agesim/change_detect.hpp"
#include "agesim/policies.hpp"

namespace agesim {

struct DetectionEvent {
  std::int64_t frame = 0;   // k at which the change was declared
  double sample_time = 0.0; // S_k of that frame
  double ack_time = 0.0;    // R_k
  double delta = 0.0;
  double threshold = 0.0;
};

struct ControllerConfig {
  double d_lb = 0.1;
  // Disabled detector makes the controller the plain online learner.
  std::optional<DetectorConfig> detector;
  // Run the detector every `detection_stride`-th eligible frame; the first
  // eligible frame after a (re)start is always tested.
  int detection_stride = 1;
};

class JointController final : public SamplingPolicy {
 public:
  JointController(ControllerConfig config, std::uint64_t detector_seed);

  // Frames must arrive in order (k = 1, 2, ...); throws otherwise.
  double on_ack(std::int64_t k, double delay, double ack_time) override;

  // Clears the learner and records the change at frame k; the delay history
  // is kept, stale samples age out of the windows on their own.
  void reset(std::int64_t k);

  const LearnerState& learner() const { return learner_; }
  std::int64_t last_change_frame() const { return tau_; }
  const std::vector<double>& delay_history() const { return history_; }
  const std::vector<DetectionEvent>& detections() const { return events_; }

 private:
  bool detection_due(std::int64_t k) const;

  ControllerConfig config_;
  LearnerState learner_;
  std::int64_t tau_ = 0;
  std::vector<double> history_;
  std::vector<DetectionEvent> events_;
  std::mt19937_64 detector_rng_;
};

}  // namespace agesim
