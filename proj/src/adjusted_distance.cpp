#include "cosal/adjusted_distance.hpp"

#include <algorithm>
#include <atomic>

namespace cosal {

namespace {
std::atomic<std::uint64_t> g_clamps{0};
}

AdjustedCosine law_of_cosines(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0)) throw Error("word at context mean has no direction");
  AdjustedCosine out;
  out.a = a;
  out.b = b;
  out.c = c;
  const double raw = (a * a + b * b - c * c) / (2.0 * a * b);
  out.cosine = std::clamp(raw, -1.0, 1.0);
  out.clamped = out.cosine != raw;
  if (out.clamped) g_clamps.fetch_add(1, std::memory_order_relaxed);
  out.distance = 1.0 - out.cosine;
  return out;
}

AdjustedCosine adjusted_cosine_detail(const ContextModel& model, const Vector& v1, const Vector& v2) {
  return law_of_cosines(cosal(model, v1), cosal(model, v2), m_distance(model.metric, v1, v2));
}

double adjusted_cosine(const ContextModel& model, const Vector& v1, const Vector& v2) {
  return adjusted_cosine_detail(model, v1, v2).cosine;
}

double adjusted_distance(const ContextModel& model, const Vector& v1, const Vector& v2) {
  return adjusted_cosine_detail(model, v1, v2).distance;
}

std::uint64_t clamp_events() noexcept { return g_clamps.load(std::memory_order_relaxed); }
void reset_clamp_events() noexcept { g_clamps.store(0, std::memory_order_relaxed); }

}  // namespace cosal
