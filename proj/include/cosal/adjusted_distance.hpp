#pragma once

#include "cosal/salience.hpp"

#include <cstdint>

namespace cosal {

/// Law of cosines with the two CoSal magnitudes as legs (a, b) and the
/// Mahalanobis distance between the points as the opposite side (c).
struct AdjustedCosine {
  double cosine = 1.0;
  double distance = 0.0;  // 1 - cosine
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  bool clamped = false;
};

/// Throws Error when either point sits at the context mean.
AdjustedCosine adjusted_cosine_detail(const ContextModel& model, const Vector& v1, const Vector& v2);
double adjusted_cosine(const ContextModel& model, const Vector& v1, const Vector& v2);
double adjusted_distance(const ContextModel& model, const Vector& v1, const Vector& v2);

/// Same formula from precomputed legs. Shared with the summarizer's cached scans.
AdjustedCosine law_of_cosines(double a, double b, double c);

/// Process-wide count of results clamped into [-1, 1].
std::uint64_t clamp_events() noexcept;
void reset_clamp_events() noexcept;

}  // namespace cosal
