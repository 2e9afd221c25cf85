#pragma once

#include <cstdint>
#include <vector>

#include "nlexp/errors.hpp"

namespace nlexp {

// Path events about the running mean S_n/n, interpreted against the moving
// frontiers (mu_bar, mu_under):
//   UpperExceed: S_n/n >= mu_bar + eps
//   LowerExceed: S_n/n <= mu_under - eps
//   Band:        mu_under - eps < S_n/n < mu_bar + eps
//   OutsideBand: the exact complement of Band
enum class EventKind { kUpperExceed, kLowerExceed, kBand, kOutsideBand };

struct PathEvent {
  EventKind kind = EventKind::kUpperExceed;
  double epsilon = 0.0;
};

inline PathEvent upper_exceed(double eps) { return {EventKind::kUpperExceed, eps}; }
inline PathEvent lower_exceed(double eps) { return {EventKind::kLowerExceed, eps}; }
inline PathEvent band(double eps) { return {EventKind::kBand, eps}; }

// The event resolved to concrete mean thresholds.
struct EventWindow {
  EventKind kind = EventKind::kUpperExceed;
  double lo_edge = 0.0;  // mu_under - eps
  double hi_edge = 0.0;  // mu_bar + eps

  bool hit(double mean) const {
    switch (kind) {
      case EventKind::kUpperExceed: return mean >= hi_edge;
      case EventKind::kLowerExceed: return mean <= lo_edge;
      case EventKind::kBand: return mean > lo_edge && mean < hi_edge;
      case EventKind::kOutsideBand: return mean >= hi_edge || mean <= lo_edge;
    }
    return false;
  }
};

inline EventWindow make_window(const PathEvent& event, double mu_bar,
                               double mu_under) {
  if (!(event.epsilon > 0.0))
    throw ValidationError("epsilon", "must be positive");
  return {event.kind, mu_under - event.epsilon, mu_bar + event.epsilon};
}

inline EventWindow complement_window(const EventWindow& w) {
  EventWindow c = w;
  switch (w.kind) {
    case EventKind::kBand: c.kind = EventKind::kOutsideBand; break;
    case EventKind::kOutsideBand: c.kind = EventKind::kBand; break;
    default:
      throw ValidationError("event", "complement is only wired for band events");
  }
  return c;
}

// Per-coordinate member choices (theta_1, ..., theta_n).
struct ScenarioSelection {
  std::vector<std::uint32_t> member;
};

}  // namespace nlexp
