#pragma once

// Event-sourced marking session. The state is a pure function of the
// canvas, grid, hidden length and the accepted event log; rejected events
// leave no trace.

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "splitlab/error.hpp"
#include "splitlab/geometry.hpp"
#include "splitlab/metrics.hpp"

namespace splitlab {

inline constexpr int kDefaultGrid = 5;

enum class EventKind { place_h, place_v, undo, arm_hidden, save };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::place_h: return "place_h";
    case EventKind::place_v: return "place_v";
    case EventKind::undo: return "undo";
    case EventKind::arm_hidden: return "arm_hidden";
    case EventKind::save: return "save";
  }
  return "?";
}

inline std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (EventKind k : {EventKind::place_h, EventKind::place_v, EventKind::undo,
                      EventKind::arm_hidden, EventKind::save}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

struct SessionEvent {
  EventKind kind = EventKind::undo;
  std::optional<Point> seed;  // placements only

  static SessionEvent place_h(double x, double y) {
    return {EventKind::place_h, Point{x, y}};
  }
  static SessionEvent place_v(double x, double y) {
    return {EventKind::place_v, Point{x, y}};
  }
  static SessionEvent undo() { return {EventKind::undo, std::nullopt}; }
  static SessionEvent arm_hidden() {
    return {EventKind::arm_hidden, std::nullopt};
  }
  static SessionEvent save() { return {EventKind::save, std::nullopt}; }

  bool is_placement() const {
    return kind == EventKind::place_h || kind == EventKind::place_v;
  }

  friend bool operator==(const SessionEvent&, const SessionEvent&) = default;
};

/// Text form: "place_h <x> <y>", "place_v <x> <y>", "undo", "arm_hidden",
/// "save". Coordinates are printed with round-trip precision.
inline std::string format_event(const SessionEvent& e) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(e.kind);
  if (e.seed) os << ' ' << e.seed->x << ' ' << e.seed->y;
  return os.str();
}

inline SessionEvent parse_event(std::string_view text, int line_no = 0) {
  std::istringstream is{std::string(text)};
  std::string word;
  is >> word;
  const auto kind = parse_event_kind(word);
  if (!kind) {
    throw ParseError(line_no, "event", "unknown event kind '" + word + "'");
  }
  SessionEvent e{*kind, std::nullopt};
  if (e.is_placement()) {
    Point p;
    if (!(is >> p.x >> p.y)) {
      throw ParseError(line_no, "event", "placement needs two coordinates");
    }
    e.seed = p;
  }
  std::string rest;
  if (is >> rest) {
    throw ParseError(line_no, "event", "trailing text '" + rest + "'");
  }
  return e;
}

struct SessionConfig {
  Canvas canvas{1, 1};
  int grid = kDefaultGrid;
  double hidden_length = kDefaultHiddenLength;
  std::string catalogue_id;
  int year = 0;
  std::string image_ref;
};

class Session {
 public:
  explicit Session(SessionConfig config) : config_(std::move(config)) {
    if (config_.grid < 1) throw InvalidArgumentError("grid step must be >= 1");
    if (!(config_.hidden_length > 0.0)) {
      throw InvalidArgumentError("hidden length must be positive");
    }
    tally_ = splitlab::tally(lines_, config_.canvas, eps());
  }

  /// Applies one event and returns the tally afterwards. On error the
  /// session is unchanged.
  const TallySheet& apply(const SessionEvent& event) {
    switch (event.kind) {
      case EventKind::place_h:
      case EventKind::place_v: {
        if (!event.seed) {
          throw InvalidArgumentError("placement event without a seed");
        }
        const Point seed = snap(*event.seed, config_.grid, config_.canvas);
        const Orientation o = event.kind == EventKind::place_h
                                  ? Orientation::horizontal
                                  : Orientation::vertical;
        MarkLine line = extend(seed, o, hidden_armed_, lines_,
                               config_.canvas, eps(), config_.hidden_length);
        undo_stack_.push_back({event.kind, hidden_armed_});
        lines_.push_back(line);
        hidden_armed_ = false;
        break;
      }
      case EventKind::arm_hidden:
        undo_stack_.push_back({event.kind, hidden_armed_});
        hidden_armed_ = true;
        break;
      case EventKind::undo: {
        if (undo_stack_.empty()) throw EmptyUndoError();
        const UndoEntry top = undo_stack_.back();
        undo_stack_.pop_back();
        if (top.kind != EventKind::arm_hidden) lines_.pop_back();
        hidden_armed_ = top.armed_before;
        break;
      }
      case EventKind::save:
        return tally_;  // state is untouched; persistence is the caller's job
    }
    log_.push_back(event);
    tally_ = splitlab::tally(lines_, config_.canvas, eps());
    return tally_;
  }

  /// Rebuilds a session from its configuration and accepted event log.
  static Session replay(SessionConfig config,
                        const std::vector<SessionEvent>& events) {
    Session s(std::move(config));
    for (const SessionEvent& e : events) s.apply(e);
    return s;
  }

  const SessionConfig& config() const { return config_; }
  const Canvas& canvas() const { return config_.canvas; }
  int grid() const { return config_.grid; }
  double eps() const { return tolerance_for_grid(config_.grid); }
  const std::vector<MarkLine>& lines() const { return lines_; }
  const std::vector<SessionEvent>& events() const { return log_; }
  bool hidden_armed() const { return hidden_armed_; }
  const TallySheet& tally() const { return tally_; }
  Metrics metrics() const { return compute_metrics(tally_); }
  std::vector<Tee> tees() const {
    return find_tees(lines_, config_.canvas, eps());
  }
  std::size_t undo_depth() const { return undo_stack_.size(); }

 private:
  struct UndoEntry {
    EventKind kind;
    bool armed_before;
  };

  SessionConfig config_;
  std::vector<MarkLine> lines_;
  std::vector<SessionEvent> log_;
  std::vector<UndoEntry> undo_stack_;
  bool hidden_armed_ = false;
  TallySheet tally_;
};

}  // namespace splitlab
