#include "agesim/aoi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agesim {

FrameRecord initial_frame() { return FrameRecord{}; }

double reception_time(double prev_reception, double sample_time, double delay) {
  return std::max(prev_reception, sample_time) + delay;
}

FrameRecord step_frame(const FrameRecord& prev, double wait, double delay) {
  if (!(wait >= 0.0)) {
    throw std::invalid_argument("wait must be >= 0");
  }
  if (!(delay > 0.0)) {
    throw std::invalid_argument("delay must be > 0");
  }
  FrameRecord next;
  next.index = prev.index + 1;
  next.sample_time = prev.reception_time + wait;
  next.wait = 0.0;
  next.delay = delay;
  next.reception_time = reception_time(prev.reception_time, next.sample_time, delay);
  return next;
}

double frame_area(double prev_delay, double prev_wait, double delay, double wait) {
  if (!(prev_delay >= 0.0) || !(prev_wait >= 0.0) || !(wait >= 0.0)) {
    throw std::invalid_argument("frame_area: negative wait or delay");
  }
  if (!(delay > 0.0)) {
    throw std::invalid_argument("frame_area: delay must be > 0");
  }
  const double l = delay + wait;
  return (prev_delay + prev_wait) * delay + 0.5 * l * l;
}

AoiTrajectory::AoiTrajectory(double start_time, double start_age) {
  if (!(start_age >= 0.0)) {
    throw std::invalid_argument("start age must be >= 0");
  }
  verts_.emplace_back(start_time, start_age);
  prefix_area_.push_back(0.0);
}

void AoiTrajectory::record_reception(double time, double age_after) {
  const auto [t_prev, a_prev] = verts_.back();
  if (!(time >= t_prev)) {
    throw std::invalid_argument("reception times must be nondecreasing");
  }
  if (!(age_after >= 0.0)) {
    throw std::invalid_argument("age cannot be negative");
  }
  const double dt = time - t_prev;
  const double age_before = a_prev + dt;
  // A reception never raises the age (tolerate float rounding only).
  if (age_after > age_before + 1e-9 * std::max(1.0, age_before)) {
    throw std::invalid_argument("reception must not increase the age");
  }
  prefix_area_.push_back(prefix_area_.back() + dt * a_prev + 0.5 * dt * dt);
  verts_.emplace_back(time, age_after);
}

void AoiTrajectory::advance_to(double time) {
  const auto [t_prev, a_prev] = verts_.back();
  if (!(time >= t_prev)) {
    throw std::invalid_argument("cannot advance backwards");
  }
  if (time == t_prev) {
    return;
  }
  const double dt = time - t_prev;
  prefix_area_.push_back(prefix_area_.back() + dt * a_prev + 0.5 * dt * dt);
  verts_.emplace_back(time, a_prev + dt);
}

std::size_t AoiTrajectory::piece_index(double t) const {
  // Last vertex with time <= t; ties at a drop resolve to the post-drop vertex.
  auto it = std::upper_bound(
      verts_.begin(), verts_.end(), t,
      [](double value, const std::pair<double, double>& v) { return value < v.first; });
  return static_cast<std::size_t>(std::distance(verts_.begin(), it)) - 1;
}

double AoiTrajectory::age_at(double t) const {
  if (!(t >= start_time()) || !(t <= end_time())) {
    throw std::out_of_range("age query outside the recorded horizon");
  }
  const std::size_t i = piece_index(t);
  return verts_[i].second + (t - verts_[i].first);
}

double AoiTrajectory::integrate_age(double from, double to) const {
  if (!(from <= to)) {
    throw std::out_of_range("integrate_age requires from <= to");
  }
  if (!(from >= start_time()) || !(to <= end_time())) {
    throw std::out_of_range("integration interval outside the recorded horizon");
  }
  // Integral from start to an arbitrary t: prefix at the piece head plus the
  // closed form of the linear piece.
  const auto upto = [this](double t) {
    const std::size_t i = piece_index(t);
    const double dt = t - verts_[i].first;
    return prefix_area_[i] + dt * verts_[i].second + 0.5 * dt * dt;
  };
  return upto(to) - upto(from);
}

}  // namespace agesim
