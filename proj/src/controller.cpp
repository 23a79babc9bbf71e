#include "agesim/controller.hpp"

#include <stdexcept>

namespace agesim {

JointController::JointController(ControllerConfig config, std::uint64_t detector_seed)
    : config_(std::move(config)), detector_rng_(detector_seed) {
  if (!(config_.d_lb > 0.0)) {
    throw std::invalid_argument("d_lb must be > 0");
  }
  if (config_.detection_stride < 1) {
    throw std::invalid_argument("detection stride must be >= 1");
  }
  if (config_.detector) {
    config_.detector->validate();
  }
  learner_.d_lb = config_.d_lb;
}

bool JointController::detection_due(std::int64_t k) const {
  if (!config_.detector) {
    return false;
  }
  const std::int64_t since_change = k - tau_;
  const std::int64_t two_windows = 2 * static_cast<std::int64_t>(config_.detector->window);
  if (since_change <= two_windows) {
    return false;  // strict: exactly 2n frames since the change is not enough
  }
  return (since_change - two_windows - 1) % config_.detection_stride == 0;
}

void JointController::reset(std::int64_t k) {
  tau_ = k;
  learner_.gamma = 0.0;
  learner_.frames_since_reset = 0;
}

double JointController::on_ack(std::int64_t k, double delay, double ack_time) {
  if (k != static_cast<std::int64_t>(history_.size()) + 1) {
    throw std::invalid_argument("frames must be processed in order");
  }
  if (!(delay > 0.0)) {
    throw std::invalid_argument("delay must be > 0");
  }
  history_.push_back(delay);

  const double wait = wait_threshold(learner_.gamma, delay);
  const double l = delay + wait;
  const double q = 0.5 * l * l;

  if (detection_due(k)) {
    const KsOutcome outcome = detect(history_, k, *config_.detector, detector_rng_);
    if (outcome.changed) {
      events_.push_back({k, ack_time - delay, ack_time, outcome.delta_stat,
                         outcome.threshold});
      reset(k);
      // The step-size index k - tau would be 0 here; the update restarts on
      // the next frame with the first-step size.
      return wait;
    }
  }
  learner_ = rm_update(learner_, q, l);
  return wait;
}

}  // namespace agesim
