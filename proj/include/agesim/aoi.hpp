// Sampling/reception timeline bookkeeping and the exact piecewise-linear
// age-of-information curve. Age grows with slope 1 between receptions and
// drops to (reception time - sample time) when an update lands.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace agesim {

// One sampling frame. `wait` is the waiting time the policy picks when this
// frame's ACK arrives; it schedules the next sample at reception_time + wait,
// so it belongs to this frame's reward terms L and Q.
struct FrameRecord {
  std::int64_t index = 0;
  double sample_time = 0.0;     // S_k
  double wait = 0.0;            // W_k
  double delay = 0.0;           // D_k
  double reception_time = 0.0;  // R_k

  double length() const { return delay + wait; }  // L_k
  double reward() const {                          // Q_k = L_k^2 / 2
    const double l = length();
    return 0.5 * l * l;
  }
};

/// Virtual frame 0: a zero-cost update at time zero, so the age starts at 0.
FrameRecord initial_frame();

/// FCFS reception recursion R_k = max(R_{k-1}, S_k) + D_k. The policies in
/// this library always sample after the ACK (S_k >= R_{k-1}); the queued
/// branch exists for completeness.
double reception_time(double prev_reception, double sample_time, double delay);

/// Builds frame k+1 from frame k and the wait chosen at frame k's ACK:
/// S_{k+1} = R_k + wait. The returned frame's own wait is 0 until its ACK.
/// Throws std::invalid_argument for wait < 0 or delay <= 0.
FrameRecord step_frame(const FrameRecord& prev, double wait, double delay);

/// Cumulative AoI over [S_k, S_{k+1}) in closed form:
/// (D_{k-1} + W_{k-1}) * D_k + (D_k + W_k)^2 / 2.
/// prev_delay/prev_wait may be 0 for the virtual first frame.
double frame_area(double prev_delay, double prev_wait, double delay, double wait);

// Exact sawtooth: vertices store (time, age just after the event at that
// time); between vertices the age rises with slope exactly 1. Integration is
// trapezoid sums over the vertices, exact up to floating-point rounding.
class AoiTrajectory {
 public:
  explicit AoiTrajectory(double start_time = 0.0, double start_age = 0.0);

  // Extends the curve to `time` and drops the age to age_after (the age can
  // only shrink at a reception). Times must be nondecreasing.
  void record_reception(double time, double age_after);

  // Extends the curve to `time` with no drop.
  void advance_to(double time);

  double start_time() const { return verts_.front().first; }
  double end_time() const { return verts_.back().first; }

  // Age at t, right-continuous at drop instants. t must lie in
  // [start_time, end_time].
  double age_at(double t) const;

  // Exact integral of the age over [from, to]; throws std::out_of_range when
  // the interval leaves the recorded horizon or from > to.
  double integrate_age(double from, double to) const;

  double total_area() const { return prefix_area_.back(); }

  const std::vector<std::pair<double, double>>& vertices() const { return verts_; }

 private:
  std::size_t piece_index(double t) const;

  std::vector<std::pair<double, double>> verts_;
  std::vector<double> prefix_area_;  // integral from start to verts_[i]
};

}  // namespace agesim
