#include "agesim/policies.hpp"

#include <algorithm>
#include <stdexcept>

namespace agesim {

double wait_zero(double /*delay*/) { return 0.0; }

double wait_threshold(double gamma, double delay) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("threshold must be >= 0");
  }
  return std::max(gamma - delay, 0.0);
}

double rm_step_size(std::int64_t k, double d_lb) {
  if (k < 1) {
    throw std::invalid_argument("step index starts at 1");
  }
  if (!(d_lb > 0.0)) {
    throw std::invalid_argument("d_lb must be > 0");
  }
  if (k == 1) {
    return 1.0 / (2.0 * d_lb);
  }
  return 1.0 / (static_cast<double>(k + 2) * d_lb);
}

LearnerState rm_update(const LearnerState& state, double q, double l) {
  const double eta = rm_step_size(state.frames_since_reset + 1, state.d_lb);
  LearnerState next = state;
  next.gamma = std::max(state.gamma + eta * (q - state.gamma * l), 0.0);
  next.frames_since_reset = state.frames_since_reset + 1;
  return next;
}

FixedThresholdPolicy::FixedThresholdPolicy(double gamma) : gamma_(gamma) {
  if (!(gamma >= 0.0)) {
    throw std::invalid_argument("threshold must be >= 0");
  }
}

double FixedThresholdPolicy::on_ack(std::int64_t, double delay, double) {
  return wait_threshold(gamma_, delay);
}

OraclePolicy::OraclePolicy(std::vector<double> boundaries, std::vector<double> gammas)
    : boundaries_(std::move(boundaries)), gammas_(std::move(gammas)) {
  if (boundaries_.empty() || boundaries_.size() != gammas_.size()) {
    throw std::invalid_argument("oracle needs one threshold per segment");
  }
  if (boundaries_.front() != 0.0) {
    throw std::invalid_argument("first segment must start at 0");
  }
  if (!std::is_sorted(boundaries_.begin(), boundaries_.end())) {
    throw std::invalid_argument("segment boundaries must be sorted");
  }
}

double OraclePolicy::on_ack(std::int64_t, double delay, double ack_time) {
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), ack_time);
  const std::size_t i = static_cast<std::size_t>(std::distance(boundaries_.begin(), it)) - 1;
  return wait_threshold(gammas_[i], delay);
}

OnlineRmPolicy::OnlineRmPolicy(double d_lb) {
  if (!(d_lb > 0.0)) {
    throw std::invalid_argument("d_lb must be > 0");
  }
  state_.d_lb = d_lb;
}

double OnlineRmPolicy::on_ack(std::int64_t, double delay, double) {
  const double w = wait_threshold(state_.gamma, delay);
  const double l = delay + w;
  state_ = rm_update(state_, 0.5 * l * l, l);
  return w;
}

}  // namespace agesim
