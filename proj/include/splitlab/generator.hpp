#pragma once

// Compositions by recursive binary splitting of a white rectangle. Each split
// becomes a black line; leaves are filled with white, gray or a primary.
// Optionally a split's two children are split at the same perpendicular
// coordinate, which the analyzer sees as a crossing.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "splitlab/error.hpp"
#include "splitlab/geometry.hpp"
#include "splitlab/record.hpp"
#include "splitlab/session.hpp"

namespace splitlab {

enum class Color { white, gray, red, yellow, blue };

inline constexpr std::array<Color, 5> kColors = {
    Color::white, Color::gray, Color::red, Color::yellow, Color::blue};

inline const char* to_string(Color c) {
  switch (c) {
    case Color::white: return "white";
    case Color::gray: return "gray";
    case Color::red: return "red";
    case Color::yellow: return "yellow";
    case Color::blue: return "blue";
  }
  return "?";
}

inline const char* svg_fill(Color c) {
  switch (c) {
    case Color::white: return "#f4f1ea";
    case Color::gray: return "#bdbdb8";
    case Color::red: return "#c8202a";
    case Color::yellow: return "#f3d22c";
    case Color::blue: return "#1f4e9c";
  }
  return "#000000";
}

struct Rect {
  int x0 = 0;
  int y0 = 0;
  int x1 = 0;
  int y1 = 0;

  int width() const { return x1 - x0; }
  int height() const { return y1 - y0; }
  long area() const { return static_cast<long>(width()) * height(); }

  friend bool operator==(const Rect&, const Rect&) = default;
};

struct SplitNode;

struct Leaf {
  Rect rect;
  Color color = Color::white;
};

struct Split {
  Rect rect;
  Orientation orientation = Orientation::vertical;  // orientation of the line
  int position = 0;  // x for a vertical line, y for a horizontal one
  std::unique_ptr<SplitNode> first;   // left / top
  std::unique_ptr<SplitNode> second;  // right / bottom
};

struct SplitNode {
  std::variant<Leaf, Split> node;

  const Rect& rect() const {
    return std::visit([](const auto& n) -> const Rect& { return n.rect; }, node);
  }
  bool is_leaf() const { return std::holds_alternative<Leaf>(node); }
};

struct GenParams {
  std::uint64_t seed = 1;
  Canvas canvas{600, 600};
  int max_depth = 4;
  int min_cell = 40;
  /// Probability of splitting a node at depth d; the last entry applies to
  /// every deeper level.
  std::vector<double> split_prob = {1.0, 0.9, 0.7, 0.5};
  /// white, gray, red, yellow, blue
  std::array<double, 5> color_weights = {0.6, 0.1, 0.1, 0.1, 0.1};
  int line_width = 10;
  double crossing_prob = 0.0;
  int grid = kDefaultGrid;

  double split_probability(int depth) const {
    if (split_prob.empty()) return 0.0;
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(depth),
                                         split_prob.size() - 1);
    return split_prob[i];
  }

  /// Throws InvalidArgumentError for malformed parameters and InfeasibleError
  /// when no leaf of min_cell fits on the canvas.
  void validate() const {
    auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (max_depth < 0) throw InvalidArgumentError("max_depth must be >= 0");
    if (grid < 1) throw InvalidArgumentError("grid must be >= 1");
    if (line_width < 0) throw InvalidArgumentError("line_width must be >= 0");
    if (min_cell < 1) throw InvalidArgumentError("min_cell must be >= 1");
    if (min_cell < 2 * line_width) {
      throw InvalidArgumentError("min_cell must be at least 2*line_width");
    }
    if (!prob_ok(crossing_prob)) {
      throw InvalidArgumentError("crossing_prob must lie in [0,1]");
    }
    if (split_prob.empty()) {
      throw InvalidArgumentError("split_prob needs at least one value");
    }
    for (double p : split_prob) {
      if (!prob_ok(p)) throw InvalidArgumentError("split_prob must lie in [0,1]");
    }
    double total = 0.0;
    for (double w : color_weights) {
      if (!(w >= 0.0)) throw InvalidArgumentError("color weights must be >= 0");
      total += w;
    }
    if (!(total > 0.0)) {
      throw InvalidArgumentError("at least one color weight must be positive");
    }
    if (min_cell > canvas.width_px || min_cell > canvas.height_px) {
      throw InfeasibleError("min_cell " + std::to_string(min_cell) +
                            " exceeds the " + std::to_string(canvas.width_px) +
                            "x" + std::to_string(canvas.height_px) + " canvas");
    }
  }
};

namespace detail {

class TreeBuilder {
 public:
  explicit TreeBuilder(const GenParams& p)
      : params_(p),
        rng_(p.seed),
        colors_(p.color_weights.begin(), p.color_weights.end()) {}

  std::unique_ptr<SplitNode> build() {
    const Rect root{0, 0, params_.canvas.width_px, params_.canvas.height_px};
    return node(root, 0, std::nullopt);
  }

 private:
  struct Forced {
    Orientation orientation;
    int position;
  };

  struct Segment {
    Orientation orientation;
    int axis;
    int lo;
    int hi;
  };

  // Grid-aligned split coordinates in (lo, hi) leaving min_cell on both sides.
  std::vector<int> candidates(int lo, int hi, Orientation o,
                              const Rect& r) const {
    std::vector<int> out;
    const int g = params_.grid;
    const int first = ((lo + params_.min_cell + g - 1) / g) * g;
    for (int v = first; v <= hi - params_.min_cell; v += g) {
      if (!touches_collinear(o, v, r)) out.push_back(v);
    }
    return out;
  }

  // True when an existing line with the same orientation and axis ends on
  // the boundary of `r`, so a new line at `v` would meet it head-on.
  bool touches_collinear(Orientation o, int v, const Rect& r) const {
    const int lo = o == Orientation::vertical ? r.y0 : r.x0;
    const int hi = o == Orientation::vertical ? r.y1 : r.x1;
    for (const Segment& s : segments_) {
      if (s.orientation == o && s.axis == v && (s.hi == lo || s.lo == hi)) {
        return true;
      }
    }
    return false;
  }

  std::vector<int> positions(const Rect& r, Orientation o) const {
    return o == Orientation::vertical ? candidates(r.x0, r.x1, o, r)
                                      : candidates(r.y0, r.y1, o, r);
  }

  std::unique_ptr<SplitNode> leaf(const Rect& r) {
    auto n = std::make_unique<SplitNode>();
    n->node = Leaf{r, kColors[colors_(rng_)]};
    return n;
  }

  std::unique_ptr<SplitNode> node(const Rect& r, int depth,
                                  std::optional<Forced> forced) {
    if (depth >= params_.max_depth) return leaf(r);

    Orientation o{};
    int pos = 0;
    if (forced) {
      o = forced->orientation;
      pos = forced->position;
    } else {
      if (uniform_(rng_) >= params_.split_probability(depth)) return leaf(r);
      std::vector<int> vs = positions(r, Orientation::vertical);
      std::vector<int> hs = positions(r, Orientation::horizontal);
      if (vs.empty() && hs.empty()) return leaf(r);
      if (hs.empty() || (!vs.empty() && uniform_(rng_) < 0.5)) {
        o = Orientation::vertical;
        pos = vs[pick(vs.size())];
      } else {
        o = Orientation::horizontal;
        pos = hs[pick(hs.size())];
      }
    }

    Split s;
    s.rect = r;
    s.orientation = o;
    s.position = pos;
    Rect a = r;
    Rect b = r;
    if (o == Orientation::vertical) {
      a.x1 = pos;
      b.x0 = pos;
      segments_.push_back({o, pos, r.y0, r.y1});
    } else {
      a.y1 = pos;
      b.y0 = pos;
      segments_.push_back({o, pos, r.x0, r.x1});
    }

    // Crossing: both children split along the perpendicular at one
    // coordinate. The children share their extent across the parent line,
    // so a coordinate valid for one is valid for the other.
    std::optional<Forced> child_forced;
    if (params_.crossing_prob > 0.0 && depth + 1 < params_.max_depth &&
        uniform_(rng_) < params_.crossing_prob) {
      const Orientation q = perpendicular(o);
      std::vector<int> ca = positions(a, q);
      std::vector<int> cb = positions(b, q);
      std::vector<int> common;
      std::set_intersection(ca.begin(), ca.end(), cb.begin(), cb.end(),
                            std::back_inserter(common));
      if (!common.empty()) child_forced = Forced{q, common[pick(common.size())]};
    }

    s.first = node(a, depth + 1, child_forced);
    s.second = node(b, depth + 1, child_forced);
    auto n = std::make_unique<SplitNode>();
    n->node = std::move(s);
    return n;
  }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  const GenParams& params_;
  std::mt19937_64 rng_;
  std::discrete_distribution<std::size_t> colors_;
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
  std::vector<Segment> segments_;
};

}  // namespace detail

/// Deterministic in `params.seed`. With crossing_prob 0 no two collinear
/// lines ever meet end to end, so the analyzer finds no strange
/// coincidence.
inline std::unique_ptr<SplitNode> generate(const GenParams& params) {
  params.validate();
  return detail::TreeBuilder(params).build();
}

template <class Visit>
void walk_preorder(const SplitNode& n, Visit&& visit) {
  visit(n);
  if (const auto* s = std::get_if<Split>(&n.node)) {
    walk_preorder(*s->first, visit);
    walk_preorder(*s->second, visit);
  }
}

struct TreeCounts {
  std::size_t leaves = 0;
  std::size_t splits = 0;
  int depth = 0;
};

inline TreeCounts count_nodes(const SplitNode& root) {
  TreeCounts c;
  auto rec = [&c](auto&& self, const SplitNode& n, int d) -> void {
    c.depth = std::max(c.depth, d);
    if (const auto* s = std::get_if<Split>(&n.node)) {
      ++c.splits;
      self(self, *s->first, d + 1);
      self(self, *s->second, d + 1);
    } else {
      ++c.leaves;
    }
  };
  rec(rec, root, 0);
  return c;
}

inline std::vector<Leaf> leaves(const SplitNode& root) {
  std::vector<Leaf> out;
  walk_preorder(root, [&out](const SplitNode& n) {
    if (const auto* l = std::get_if<Leaf>(&n.node)) out.push_back(*l);
  });
  return out;
}

/// Pre-order emission: every split becomes one normal line spanning its
/// parent rectangle. Aligned siblings stay separate lines.
inline std::vector<MarkLine> to_marklines(const SplitNode& root) {
  std::vector<MarkLine> lines;
  walk_preorder(root, [&lines](const SplitNode& n) {
    const auto* s = std::get_if<Split>(&n.node);
    if (s == nullptr) return;
    MarkLine l;
    l.ordinal = lines.size();
    l.orientation = s->orientation;
    l.axis = s->position;
    l.hidden = false;
    if (s->orientation == Orientation::vertical) {
      l.span = {static_cast<double>(s->rect.y0), static_cast<double>(s->rect.y1)};
      l.seed = {static_cast<double>(s->position),
                (s->rect.y0 + s->rect.y1) / 2.0};
    } else {
      l.span = {static_cast<double>(s->rect.x0), static_cast<double>(s->rect.x1)};
      l.seed = {(s->rect.x0 + s->rect.x1) / 2.0,
                static_cast<double>(s->position)};
    }
    lines.push_back(l);
  });
  return lines;
}

/// Session events that re-create the tree's lines by clicking each line's
/// seed in pre-order.
inline std::vector<SessionEvent> to_events(const SplitNode& root) {
  std::vector<SessionEvent> events;
  for (const MarkLine& l : to_marklines(root)) {
    events.push_back(l.orientation == Orientation::horizontal
                         ? SessionEvent::place_h(l.seed.x, l.seed.y)
                         : SessionEvent::place_v(l.seed.x, l.seed.y));
  }
  return events;
}

/// SVG document: one <rect> per leaf fill, then one black <rect> bar of
/// line_width per split, drawn in pre-order. Byte-identical for identical
/// inputs.
inline std::string render_svg(const SplitNode& root, const GenParams& params) {
  std::ostringstream os;
  const int w = params.canvas.width_px;
  const int h = params.canvas.height_px;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
     << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
     << "\">\n";
  os << "<g id=\"planes\">\n";
  for (const Leaf& l : leaves(root)) {
    os << "<rect x=\"" << l.rect.x0 << "\" y=\"" << l.rect.y0 << "\" width=\""
       << l.rect.width() << "\" height=\"" << l.rect.height() << "\" fill=\""
       << svg_fill(l.color) << "\"/>\n";
  }
  os << "</g>\n<g id=\"lines\" fill=\"#111111\">\n";
  const double half = params.line_width / 2.0;
  walk_preorder(root, [&](const SplitNode& n) {
    const auto* s = std::get_if<Split>(&n.node);
    if (s == nullptr) return;
    if (s->orientation == Orientation::vertical) {
      os << "<rect x=\"" << s->position - half << "\" y=\"" << s->rect.y0
         << "\" width=\"" << params.line_width << "\" height=\""
         << s->rect.height() << "\"/>\n";
    } else {
      os << "<rect x=\"" << s->rect.x0 << "\" y=\"" << s->position - half
         << "\" width=\"" << s->rect.width() << "\" height=\""
         << params.line_width << "\"/>\n";
    }
  });
  os << "</g>\n</svg>\n";
  return os.str();
}

/// Plain-text parameter document, one `field = value` per line using the
/// GenParams field names. `canvas` takes two integers, `split_prob` one or
/// more probabilities and `color_weights` exactly five weights. Unlisted
/// fields keep their defaults.
inline GenParams parse_gen_params(std::string_view text) {
  GenParams p;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    const std::string line = detail::trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "", "expected 'field = value'");
    }
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    std::istringstream vs(detail::trim(std::string_view(line).substr(eq + 1)));
    std::vector<std::string> words;
    for (std::string w; vs >> w;) words.push_back(w);
    auto one = [&]() -> const std::string& {
      if (words.size() != 1) throw ParseError(line_no, key, "expected one value");
      return words.front();
    };
    if (key == "seed") {
      const long v = detail::parse_long(one(), line_no, key);
      if (v < 0) throw ParseError(line_no, key, "must be non-negative");
      p.seed = static_cast<std::uint64_t>(v);
    } else if (key == "canvas") {
      if (words.size() != 2) throw ParseError(line_no, key, "expected width height");
      try {
        p.canvas = Canvas(static_cast<int>(detail::parse_long(words[0], line_no, key)),
                          static_cast<int>(detail::parse_long(words[1], line_no, key)));
      } catch (const InvalidArgumentError& e) {
        throw ParseError(line_no, key, e.what());
      }
    } else if (key == "max_depth") {
      p.max_depth = static_cast<int>(detail::parse_long(one(), line_no, key));
    } else if (key == "min_cell") {
      p.min_cell = static_cast<int>(detail::parse_long(one(), line_no, key));
    } else if (key == "split_prob") {
      if (words.empty()) throw ParseError(line_no, key, "expected values");
      p.split_prob.clear();
      for (const auto& w : words) {
        p.split_prob.push_back(detail::parse_double(w, line_no, key));
      }
    } else if (key == "color_weights") {
      if (words.size() != 5) {
        throw ParseError(line_no, key,
                         "expected 5 weights (white gray red yellow blue)");
      }
      for (std::size_t i = 0; i < 5; ++i) {
        p.color_weights[i] = detail::parse_double(words[i], line_no, key);
      }
    } else if (key == "line_width") {
      p.line_width = static_cast<int>(detail::parse_long(one(), line_no, key));
    } else if (key == "crossing_prob") {
      p.crossing_prob = detail::parse_double(one(), line_no, key);
    } else if (key == "grid") {
      p.grid = static_cast<int>(detail::parse_long(one(), line_no, key));
    } else {
      throw ParseError(line_no, key, "unknown field");
    }
  }
  return p;
}

inline std::string format_gen_params(const GenParams& p) {
  std::ostringstream os;
  os << "seed = " << p.seed << '\n'
     << "canvas = " << p.canvas.width_px << ' ' << p.canvas.height_px << '\n'
     << "max_depth = " << p.max_depth << '\n'
     << "min_cell = " << p.min_cell << '\n'
     << "split_prob =";
  for (double v : p.split_prob) os << ' ' << detail::format_number(v);
  os << "\ncolor_weights =";
  for (double v : p.color_weights) os << ' ' << detail::format_number(v);
  os << "\nline_width = " << p.line_width << '\n'
     << "crossing_prob = " << detail::format_number(p.crossing_prob) << '\n'
     << "grid = " << p.grid << '\n';
  return os.str();
}

/// Analysis of a generated composition: its lines tallied by the same
/// geometry the marking session uses.
inline TallySheet analyze_tree(const SplitNode& root, const GenParams& params) {
  const std::vector<MarkLine> lines = to_marklines(root);
  return tally(lines, params.canvas, tolerance_for_grid(params.grid));
}

}  // namespace splitlab
