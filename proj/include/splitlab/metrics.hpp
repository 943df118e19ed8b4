#pragma once

#include <optional>

#include "splitlab/error.hpp"
#include "splitlab/geometry.hpp"

namespace splitlab {

/// Derived per-painting measures. Ratios are kept in [0,1]; rendering as a
/// percentage is left to the caller.
struct Metrics {
  std::optional<double> splittingness;
  double complexity = 0.0;
  long special_effects = 0;

  friend bool operator==(const Metrics&, const Metrics&) = default;
};

/// Fraction of regular Tees that are not part of a strange coincidence.
/// Undefined when there are no regular Tees.
inline std::optional<double> splittingness(const TallySheet& t) {
  if (t.rt < 2 * t.sc) {
    throw InvalidArgumentError("tally violates rt >= 2*sc");
  }
  if (t.rt == 0) return std::nullopt;
  return static_cast<double>(t.rt - 2 * t.sc) / static_cast<double>(t.rt);
}

/// Total normal line length over the canvas half-perimeter.
inline double complexity(const TallySheet& t) {
  if (t.sw + t.sh <= 0) {
    throw InvalidArgumentError("complexity needs sw + sh > 0");
  }
  return (t.thl + t.tvl) / static_cast<double>(t.sw + t.sh);
}

inline long special_effects(const TallySheet& t) { return t.hh + t.hv; }

inline Metrics compute_metrics(const TallySheet& t) {
  return {splittingness(t), complexity(t), special_effects(t)};
}

}  // namespace splitlab
