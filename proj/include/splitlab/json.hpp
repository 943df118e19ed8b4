#pragma once

// JSON shapes shared by the HTTP API and the CLI's --json output.

#include <json.hpp>

#include "splitlab/corpus.hpp"
#include "splitlab/generator.hpp"
#include "splitlab/metrics.hpp"
#include "splitlab/session.hpp"
#include "splitlab/stats.hpp"

namespace splitlab {

using nlohmann::json;

inline json to_json(Point p) { return {{"x", p.x}, {"y", p.y}}; }

inline json to_json(const MarkLine& l) {
  return {{"ordinal", l.ordinal},
          {"orientation", to_string(l.orientation)},
          {"axis", l.axis},
          {"lo", l.span.lo},
          {"hi", l.span.hi},
          {"hidden", l.hidden},
          {"seed", to_json(l.seed)}};
}

inline json to_json(const Tee& t) {
  return {{"later", t.later},
          {"earlier", t.earlier},
          {"point", to_json(t.point)},
          {"side", t.side == Side::negative ? "negative" : "positive"},
          {"regular", t.regular}};
}

inline json to_json(const TallySheet& t) {
  return {{"sw", t.sw}, {"sh", t.sh}, {"thl", t.thl}, {"tvl", t.tvl},
          {"nh", t.nh}, {"nv", t.nv}, {"hh", t.hh},   {"hv", t.hv},
          {"rt", t.rt}, {"sc", t.sc}};
}

inline json to_json(const Metrics& m) {
  return {{"splittingness",
           m.splittingness ? json(*m.splittingness) : json(nullptr)},
          {"complexity", m.complexity},
          {"special_effects", m.special_effects}};
}

inline json to_json(const stats::TestReport& r) {
  return {{"test", stats::to_string(r.test)},
          {"n_effective", r.n_effective},
          {"statistic", r.statistic},
          {"p_value", r.p_value},
          {"alpha", r.alpha},
          {"reject", r.reject},
          {"method", stats::to_string(r.method)}};
}

inline json to_json(const SessionEvent& e) {
  json j = {{"kind", to_string(e.kind)}};
  if (e.seed) {
    j["x"] = e.seed->x;
    j["y"] = e.seed->y;
  }
  return j;
}

inline json session_state(const Session& s) {
  json lines = json::array();
  for (const auto& l : s.lines()) lines.push_back(to_json(l));
  json tees = json::array();
  for (const auto& t : s.tees()) tees.push_back(to_json(t));
  return {{"canvas",
           {{"width", s.canvas().width_px}, {"height", s.canvas().height_px}}},
          {"grid", s.grid()},
          {"hidden_length", s.config().hidden_length},
          {"catalogue_id", s.config().catalogue_id},
          {"year", s.config().year},
          {"image_ref", s.config().image_ref},
          {"event_index", s.events().size()},
          {"hidden_armed", s.hidden_armed()},
          {"lines", lines},
          {"tees", tees},
          {"tally", to_json(s.tally())},
          {"metrics", to_json(s.metrics())}};
}

inline json record_summary(const PaintingRecord& r) {
  return {{"catalogue_id", r.catalogue_id},
          {"year", r.year},
          {"tally", to_json(r.tally)},
          {"metrics", to_json(r.metrics)},
          {"has_events", r.log.has_value()}};
}

/// Parses an event body: {"kind": "place_h", "x": 30, "y": 40}.
inline SessionEvent event_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw InvalidArgumentError("event needs a string 'kind'");
  }
  const auto kind = parse_event_kind(j["kind"].get<std::string>());
  if (!kind) {
    throw InvalidArgumentError("unknown event kind '" +
                               j["kind"].get<std::string>() + "'");
  }
  SessionEvent e{*kind, std::nullopt};
  const bool has_x = j.contains("x");
  const bool has_y = j.contains("y");
  if (e.is_placement()) {
    if (!has_x || !has_y || !j["x"].is_number() || !j["y"].is_number()) {
      throw InvalidArgumentError("placement events need numeric 'x' and 'y'");
    }
    e.seed = Point{j["x"].get<double>(), j["y"].get<double>()};
  } else if (has_x || has_y) {
    throw InvalidArgumentError(std::string(to_string(e.kind)) +
                               " events carry no coordinates");
  }
  return e;
}

/// GenParams from JSON using the same field names as the text config.
/// Missing fields keep their defaults.
inline GenParams gen_params_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgumentError("generator parameters must be an object");
  GenParams p;
  try {
    if (j.contains("seed")) p.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("canvas")) {
      const auto& c = j["canvas"];
      if (c.is_array() && c.size() == 2) {
        p.canvas = Canvas(c[0].get<int>(), c[1].get<int>());
      } else {
        p.canvas = Canvas(c.at("width").get<int>(), c.at("height").get<int>());
      }
    }
    if (j.contains("max_depth")) p.max_depth = j["max_depth"].get<int>();
    if (j.contains("min_cell")) p.min_cell = j["min_cell"].get<int>();
    if (j.contains("split_prob")) {
      const auto& s = j["split_prob"];
      p.split_prob = s.is_array() ? s.get<std::vector<double>>()
                                  : std::vector<double>{s.get<double>()};
    }
    if (j.contains("color_weights")) {
      const auto w = j["color_weights"].get<std::vector<double>>();
      if (w.size() != 5) throw InvalidArgumentError("color_weights needs 5 values");
      std::copy(w.begin(), w.end(), p.color_weights.begin());
    }
    if (j.contains("line_width")) p.line_width = j["line_width"].get<int>();
    if (j.contains("crossing_prob")) p.crossing_prob = j["crossing_prob"].get<double>();
    if (j.contains("grid")) p.grid = j["grid"].get<int>();
  } catch (const json::exception& e) {
    throw InvalidArgumentError(std::string("bad generator parameters: ") + e.what());
  }
  return p;
}

}  // namespace splitlab
