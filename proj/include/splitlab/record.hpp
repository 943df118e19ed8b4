#pragma once

// Per-painting record files. One UTF-8 text document per painting holding
// `key = value` lines: identification, the ten raw variables, the derived
// metrics and, optionally, the replayable marking event log.
//
//   # splitlab painting record
//   catalogue_id = B131
//   year = 1921
//   sw = 500
//   ...
//   splittingness = 0.5          (or "undefined")
//   complexity = 4.25
//   special_effects = 1
//   grid = 10                    (event log section, optional)
//   hidden_length = 20
//   image_ref = B131.jpg
//   events = 2
//   event = place_h 30 40
//   event = arm_hidden
//
// Loading recomputes the metrics from the tally and replays the event log;
// any disagreement is a ParseError.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "splitlab/error.hpp"
#include "splitlab/geometry.hpp"
#include "splitlab/metrics.hpp"
#include "splitlab/session.hpp"

namespace splitlab {

struct EventLog {
  int grid = kDefaultGrid;
  double hidden_length = kDefaultHiddenLength;
  std::string image_ref;
  std::vector<SessionEvent> events;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

struct PaintingRecord {
  std::string catalogue_id;
  int year = 0;
  TallySheet tally;
  Metrics metrics;
  std::optional<EventLog> log;

  friend bool operator==(const PaintingRecord&, const PaintingRecord&) = default;
};

inline constexpr double kMetricTolerance = 1e-9;

/// Builds a record from a finished session, carrying its full event log.
inline PaintingRecord make_record(const Session& session) {
  PaintingRecord r;
  r.catalogue_id = session.config().catalogue_id;
  r.year = session.config().year;
  r.tally = session.tally();
  r.metrics = session.metrics();
  r.log = EventLog{session.grid(), session.config().hidden_length,
                   session.config().image_ref, session.events()};
  return r;
}

inline PaintingRecord make_record(std::string catalogue_id, int year,
                                  const TallySheet& tally) {
  return {std::move(catalogue_id), year, tally, compute_metrics(tally),
          std::nullopt};
}

namespace detail {

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline long parse_long(const std::string& text, int line,
                       const std::string& field) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw ParseError(line, field, "expected an integer, got '" + text + "'");
  }
  return v;
}

inline double parse_double(const std::string& text, int line,
                           const std::string& field) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || !std::isfinite(v)) {
    throw ParseError(line, field, "expected a number, got '" + text + "'");
  }
  return v;
}

}  // namespace detail

inline std::string format_record(const PaintingRecord& r) {
  std::ostringstream os;
  auto put = [&os](const char* key, const std::string& value) {
    os << key << " = " << value << '\n';
  };
  os << "# splitlab painting record\n";
  put("catalogue_id", r.catalogue_id);
  put("year", std::to_string(r.year));
  put("sw", std::to_string(r.tally.sw));
  put("sh", std::to_string(r.tally.sh));
  put("thl", detail::format_number(r.tally.thl));
  put("tvl", detail::format_number(r.tally.tvl));
  put("nh", std::to_string(r.tally.nh));
  put("nv", std::to_string(r.tally.nv));
  put("hh", std::to_string(r.tally.hh));
  put("hv", std::to_string(r.tally.hv));
  put("rt", std::to_string(r.tally.rt));
  put("sc", std::to_string(r.tally.sc));
  put("splittingness", r.metrics.splittingness
                           ? detail::format_number(*r.metrics.splittingness)
                           : std::string("undefined"));
  put("complexity", detail::format_number(r.metrics.complexity));
  put("special_effects", std::to_string(r.metrics.special_effects));
  if (r.log) {
    put("grid", std::to_string(r.log->grid));
    put("hidden_length", detail::format_number(r.log->hidden_length));
    put("image_ref", r.log->image_ref);
    put("events", std::to_string(r.log->events.size()));
    for (const SessionEvent& e : r.log->events) put("event", format_event(e));
  }
  return os.str();
}

/// Checks the record's internal consistency; throws ParseError on the first
/// violation.
inline void validate_record(const PaintingRecord& r) {
  if (r.catalogue_id.empty()) {
    throw ParseError(0, "catalogue_id", "must not be empty");
  }
  if (const std::string v = r.tally.violation(); !v.empty()) {
    throw ParseError(0, "rt", v);
  }
  if (r.tally.sw <= 0 || r.tally.sh <= 0) {
    throw ParseError(0, "sw", "canvas dimensions must be positive");
  }
  const Metrics expected = compute_metrics(r.tally);
  if (expected.splittingness.has_value() !=
          r.metrics.splittingness.has_value() ||
      (expected.splittingness &&
       std::abs(*expected.splittingness - *r.metrics.splittingness) >
           kMetricTolerance)) {
    throw ParseError(0, "splittingness",
                     "does not match (rt - 2*sc)/rt for the recorded tally");
  }
  if (std::abs(expected.complexity - r.metrics.complexity) > kMetricTolerance) {
    throw ParseError(0, "complexity",
                     "does not match (thl + tvl)/(sw + sh) for the recorded "
                     "tally");
  }
  if (expected.special_effects != r.metrics.special_effects) {
    throw ParseError(0, "special_effects", "does not match hh + hv");
  }
  if (r.log) {
    SessionConfig cfg;
    cfg.canvas = Canvas(static_cast<int>(r.tally.sw),
                        static_cast<int>(r.tally.sh));
    cfg.grid = r.log->grid;
    cfg.hidden_length = r.log->hidden_length;
    TallySheet replayed;
    try {
      replayed = Session::replay(cfg, r.log->events).tally();
    } catch (const Error& e) {
      throw ParseError(0, "event", std::string("event log does not replay: ") +
                                       e.what());
    }
    if (!(replayed == r.tally)) {
      throw ParseError(0, "event",
                       "replaying the event log gives a different tally");
    }
  }
}

inline PaintingRecord parse_record(std::string_view text) {
  std::map<std::string, std::pair<std::string, int>> fields;
  std::vector<std::pair<std::string, int>> event_lines;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    const std::string line = detail::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(line_no, "", "expected 'key = value'");
    }
    const std::string key = detail::trim(std::string_view(line).substr(0, eq));
    const std::string value =
        detail::trim(std::string_view(line).substr(eq + 1));
    if (key == "event") {
      event_lines.emplace_back(value, line_no);
      continue;
    }
    if (!fields.emplace(key, std::make_pair(value, line_no)).second) {
      throw ParseError(line_no, key, "duplicate field");
    }
  }

  auto take = [&](const std::string& key) -> std::pair<std::string, int> {
    auto it = fields.find(key);
    if (it == fields.end()) throw ParseError(0, key, "missing field");
    auto v = it->second;
    fields.erase(it);
    return v;
  };
  auto take_long = [&](const std::string& key) {
    auto [v, ln] = take(key);
    return detail::parse_long(v, ln, key);
  };
  auto take_double = [&](const std::string& key) {
    auto [v, ln] = take(key);
    return detail::parse_double(v, ln, key);
  };

  PaintingRecord r;
  r.catalogue_id = take("catalogue_id").first;
  r.year = static_cast<int>(take_long("year"));
  r.tally.sw = take_long("sw");
  r.tally.sh = take_long("sh");
  r.tally.thl = take_double("thl");
  r.tally.tvl = take_double("tvl");
  r.tally.nh = take_long("nh");
  r.tally.nv = take_long("nv");
  r.tally.hh = take_long("hh");
  r.tally.hv = take_long("hv");
  r.tally.rt = take_long("rt");
  r.tally.sc = take_long("sc");
  {
    auto [v, ln] = take("splittingness");
    if (v != "undefined") {
      r.metrics.splittingness = detail::parse_double(v, ln, "splittingness");
    }
  }
  r.metrics.complexity = take_double("complexity");
  r.metrics.special_effects = take_long("special_effects");

  if (fields.count("events") != 0) {
    EventLog log;
    log.grid = static_cast<int>(take_long("grid"));
    log.hidden_length = take_double("hidden_length");
    log.image_ref = take("image_ref").first;
    auto [count_text, count_line] = take("events");
    const long count = detail::parse_long(count_text, count_line, "events");
    if (count != static_cast<long>(event_lines.size())) {
      throw ParseError(count_line, "events",
                       "declares " + count_text + " events but " +
                           std::to_string(event_lines.size()) + " follow");
    }
    for (const auto& [value, ln] : event_lines) {
      log.events.push_back(parse_event(value, ln));
    }
    r.log = std::move(log);
  } else if (!event_lines.empty()) {
    throw ParseError(event_lines.front().second, "event",
                     "event lines without an 'events' count");
  }

  if (!fields.empty()) {
    const auto& [key, where] = *fields.begin();
    throw ParseError(where.second, key, "unknown field");
  }

  validate_record(r);
  return r;
}

inline std::filesystem::path record_path(const std::filesystem::path& dir,
                                         const std::string& catalogue_id) {
  return dir / (catalogue_id + ".txt");
}

/// Writes `<dir>/<catalogue_id>.txt` via a temporary file and rename, so
/// readers never observe a partial record.
inline std::filesystem::path save_record(const PaintingRecord& r,
                                         const std::filesystem::path& dir) {
  validate_record(r);
  if (r.catalogue_id.find_first_of("/\\") != std::string::npos ||
      r.catalogue_id == "." || r.catalogue_id == "..") {
    throw InvalidArgumentError("catalogue id is not a valid file name: " +
                               r.catalogue_id);
  }
  std::filesystem::create_directories(dir);
  const auto target = record_path(dir, r.catalogue_id);
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("IoError", "cannot write " + tmp.string());
    out << format_record(r);
    if (!out) throw Error("IoError", "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
  return target;
}

inline PaintingRecord load_record(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("IoError", "cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_record(buf.str());
  } catch (const ParseError& e) {
    throw e.in(file.string());
  }
}

}  // namespace splitlab
