#pragma once

// Axis-aligned marking lines under splitting semantics: every normal line is
// extended in both directions until it meets an earlier perpendicular line or
// the canvas border. Hidden lines keep a fixed length and only act as stops.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitlab/error.hpp"

namespace splitlab {

inline constexpr double kDefaultHiddenLength = 20.0;

struct Canvas {
  int width_px = 0;
  int height_px = 0;

  Canvas() = default;
  Canvas(int width, int height) : width_px(width), height_px(height) {
    if (width <= 0 || height <= 0) {
      throw InvalidArgumentError("canvas dimensions must be positive, got " +
                                 std::to_string(width) + "x" +
                                 std::to_string(height));
    }
  }

  friend bool operator==(const Canvas&, const Canvas&) = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

enum class Orientation { horizontal, vertical };

inline Orientation perpendicular(Orientation o) {
  return o == Orientation::horizontal ? Orientation::vertical
                                      : Orientation::horizontal;
}

inline const char* to_string(Orientation o) {
  return o == Orientation::horizontal ? "horizontal" : "vertical";
}

/// Closed interval along the direction a line runs in.
struct Span {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double v, double eps) const {
    return v >= lo - eps && v <= hi + eps;
  }

  friend bool operator==(const Span&, const Span&) = default;
};

/// One green marking segment. `axis` is y for horizontals and x for
/// verticals; `span` runs along the other coordinate.
struct MarkLine {
  std::size_t ordinal = 0;
  Orientation orientation = Orientation::horizontal;
  double axis = 0.0;
  Span span;
  bool hidden = false;
  Point seed;

  Point start() const { return at(span.lo); }
  Point end() const { return at(span.hi); }
  Point at(double along) const {
    return orientation == Orientation::horizontal ? Point{along, axis}
                                                  : Point{axis, along};
  }

  friend bool operator==(const MarkLine&, const MarkLine&) = default;
};

/// Which side of the transversal the abutting line lies on: `negative` means
/// towards smaller coordinates (above a horizontal, left of a vertical).
enum class Side { negative, positive };

struct Tee {
  std::size_t later = 0;
  std::size_t earlier = 0;
  Point point;
  Side side = Side::negative;
  bool regular = true;

  friend bool operator==(const Tee&, const Tee&) = default;
};

struct StrangeCoincidence {
  std::size_t transversal = 0;
  Point point;
  std::size_t first = 0;   // abutting line placed first
  std::size_t second = 0;  // abutting line placed second

  friend bool operator==(const StrangeCoincidence&,
                         const StrangeCoincidence&) = default;
};

/// The ten raw variables recorded per painting.
struct TallySheet {
  long sw = 0;
  long sh = 0;
  double thl = 0.0;
  double tvl = 0.0;
  long nh = 0;
  long nv = 0;
  long hh = 0;  // hidden horizontals
  long hv = 0;  // hidden verticals
  long rt = 0;
  long sc = 0;

  /// Empty string when valid, otherwise a description of the violation.
  std::string violation() const {
    if (sw < 0 || sh < 0 || nh < 0 || nv < 0 || hh < 0 || hv < 0 || rt < 0 ||
        sc < 0 || thl < 0.0 || tvl < 0.0) {
      return "negative tally field";
    }
    if (rt < 2 * sc) return "rt must be at least 2*sc";
    return {};
  }

  friend bool operator==(const TallySheet&, const TallySheet&) = default;
};

/// Coincidence and blocking tolerance for a snapping grid step.
inline double tolerance_for_grid(int grid) { return grid / 2.0; }

inline Point snap(Point p, int grid, const Canvas& canvas) {
  if (grid < 1) throw InvalidArgumentError("grid step must be >= 1");
  auto round_to = [grid](double v) {
    return std::round(v / grid) * static_cast<double>(grid);
  };
  return {std::clamp(round_to(p.x), 0.0, static_cast<double>(canvas.width_px)),
          std::clamp(round_to(p.y), 0.0,
                     static_cast<double>(canvas.height_px))};
}

namespace detail {

inline double extent_along(Orientation o, const Canvas& c) {
  return o == Orientation::horizontal ? c.width_px : c.height_px;
}

inline double extent_across(Orientation o, const Canvas& c) {
  return o == Orientation::horizontal ? c.height_px : c.width_px;
}

inline double along(Orientation o, Point p) {
  return o == Orientation::horizontal ? p.x : p.y;
}

inline double across(Orientation o, Point p) {
  return o == Orientation::horizontal ? p.y : p.x;
}

inline bool overlaps(const Span& a, const Span& b, double eps) {
  return std::min(a.hi, b.hi) - std::max(a.lo, b.lo) > eps;
}

}  // namespace detail

/// Builds the next marking line from a (snapped) seed, given every line
/// placed before it.
inline MarkLine extend(Point seed, Orientation orientation, bool hidden,
                       std::span<const MarkLine> earlier,
                       const Canvas& canvas, double eps,
                       double hidden_length = kDefaultHiddenLength) {
  const double limit = detail::extent_along(orientation, canvas);
  const double axis = detail::across(orientation, seed);
  const double pos = detail::along(orientation, seed);

  if (axis < -eps || axis > detail::extent_across(orientation, canvas) + eps ||
      pos < -eps || pos > limit + eps) {
    throw InvalidArgumentError("seed lies outside the canvas");
  }
  if (axis <= eps || axis >= detail::extent_across(orientation, canvas) - eps) {
    throw DegenerateLineError(std::string("a ") + to_string(orientation) +
                              " line cannot lie on the canvas border");
  }

  Span span;
  if (hidden) {
    span = {std::max(0.0, pos - hidden_length / 2.0),
            std::min(limit, pos + hidden_length / 2.0)};
  } else {
    span = {0.0, limit};
    const Orientation across = perpendicular(orientation);
    for (const MarkLine& other : earlier) {
      if (other.orientation != across) continue;
      if (!other.span.contains(axis, eps)) continue;
      if (std::abs(other.axis - pos) <= eps) {
        throw DegenerateLineError(
            "seed lies on an earlier perpendicular line (ordinal " +
            std::to_string(other.ordinal) + ")");
      }
      if (other.axis < pos) {
        span.lo = std::max(span.lo, other.axis);
      } else {
        span.hi = std::min(span.hi, other.axis);
      }
    }
  }
  if (span.length() <= eps) {
    throw DegenerateLineError("line would have zero length");
  }

  for (const MarkLine& other : earlier) {
    if (other.orientation == orientation &&
        std::abs(other.axis - axis) <= eps &&
        detail::overlaps(other.span, span, eps)) {
      throw OverlapError("overlaps earlier " +
                         std::string(to_string(orientation)) +
                         " line (ordinal " + std::to_string(other.ordinal) +
                         ")");
    }
  }

  MarkLine line;
  line.ordinal = earlier.empty() ? 0 : earlier.back().ordinal + 1;
  line.orientation = orientation;
  line.axis = axis;
  line.span = span;
  line.hidden = hidden;
  line.seed = seed;
  return line;
}

/// One Tee per line end that abuts an earlier perpendicular line. Ends on
/// the canvas border produce none.
inline std::vector<Tee> find_tees(std::span<const MarkLine> lines,
                                  const Canvas& canvas, double eps) {
  std::vector<Tee> tees;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const MarkLine& line = lines[i];
    const double limit = detail::extent_along(line.orientation, canvas);
    const Orientation across = perpendicular(line.orientation);

    for (const double end : {line.span.lo, line.span.hi}) {
      if (end <= eps || end >= limit - eps) continue;
      for (std::size_t j = 0; j < i; ++j) {
        const MarkLine& other = lines[j];
        if (other.orientation != across) continue;
        if (std::abs(other.axis - end) > eps) continue;
        if (!other.span.contains(line.axis, eps)) continue;
        Tee tee;
        tee.later = line.ordinal;
        tee.earlier = other.ordinal;
        tee.point = line.at(other.axis);
        // The low end abuts with the line running towards larger coordinates.
        tee.side = end == line.span.lo ? Side::positive : Side::negative;
        tee.regular = !line.hidden && !other.hidden;
        tees.push_back(tee);
        break;
      }
    }
  }
  return tees;
}

/// Pairs regular Tees on the same transversal at the same point whose
/// abutting lines are collinear and come from opposite sides. Pairing is
/// greedy in placement order; each Tee is used at most once.
inline std::vector<StrangeCoincidence> find_strange_coincidences(
    std::span<const Tee> tees, std::span<const MarkLine> lines, double eps) {
  auto line_by_ordinal = [&](std::size_t ordinal) -> const MarkLine* {
    for (const MarkLine& l : lines) {
      if (l.ordinal == ordinal) return &l;
    }
    return nullptr;
  };

  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < tees.size(); ++i) {
    if (tees[i].regular) order.push_back(i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return tees[a].later < tees[b].later;
                   });

  std::vector<bool> used(tees.size(), false);
  std::vector<StrangeCoincidence> out;
  for (std::size_t a_pos = 0; a_pos < order.size(); ++a_pos) {
    const Tee& a = tees[order[a_pos]];
    if (used[order[a_pos]]) continue;
    const MarkLine* la = line_by_ordinal(a.later);
    for (std::size_t b_pos = a_pos + 1; b_pos < order.size(); ++b_pos) {
      const Tee& b = tees[order[b_pos]];
      if (used[order[b_pos]]) continue;
      if (b.earlier != a.earlier || b.side == a.side) continue;
      if (std::abs(a.point.x - b.point.x) > eps ||
          std::abs(a.point.y - b.point.y) > eps) {
        continue;
      }
      const MarkLine* lb = line_by_ordinal(b.later);
      if (la == nullptr || lb == nullptr ||
          la->orientation != lb->orientation ||
          std::abs(la->axis - lb->axis) > eps) {
        continue;
      }
      used[order[a_pos]] = used[order[b_pos]] = true;
      out.push_back({a.earlier, a.point, a.later, b.later});
      break;
    }
  }
  return out;
}

inline TallySheet tally(std::span<const MarkLine> lines, const Canvas& canvas,
                        double eps) {
  TallySheet t;
  t.sw = canvas.width_px;
  t.sh = canvas.height_px;
  for (const MarkLine& line : lines) {
    const bool horizontal = line.orientation == Orientation::horizontal;
    if (line.hidden) {
      ++(horizontal ? t.hh : t.hv);
    } else {
      ++(horizontal ? t.nh : t.nv);
      (horizontal ? t.thl : t.tvl) += line.span.length();
    }
  }
  const std::vector<Tee> tees = find_tees(lines, canvas, eps);
  t.rt = std::count_if(tees.begin(), tees.end(),
                       [](const Tee& tee) { return tee.regular; });
  t.sc = static_cast<long>(find_strange_coincidences(tees, lines, eps).size());
  return t;
}

}  // namespace splitlab
