#pragma once

// Catalogue metadata, corpus tables and trend series.

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <span>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "splitlab/error.hpp"
#include "splitlab/record.hpp"

namespace splitlab {

enum class ExclusionReason {
  none,
  lozenge,
  skewed_photo,
  sketch,
  non_painting,
  near_copy,
  color_lines,
};

inline const char* to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::none: return "none";
    case ExclusionReason::lozenge: return "lozenge";
    case ExclusionReason::skewed_photo: return "skewed_photo";
    case ExclusionReason::sketch: return "sketch";
    case ExclusionReason::non_painting: return "non_painting";
    case ExclusionReason::near_copy: return "near_copy";
    case ExclusionReason::color_lines: return "color_lines";
  }
  return "?";
}

inline std::optional<ExclusionReason> parse_exclusion_reason(std::string_view s) {
  for (auto r : {ExclusionReason::none, ExclusionReason::lozenge,
                 ExclusionReason::skewed_photo, ExclusionReason::sketch,
                 ExclusionReason::non_painting, ExclusionReason::near_copy,
                 ExclusionReason::color_lines}) {
    if (s == to_string(r)) return r;
  }
  return std::nullopt;
}

struct CatalogueEntry {
  std::string catalogue_id;
  int year = 0;  // 0 when unknown
  ExclusionReason exclusion = ExclusionReason::none;

  bool included() const { return exclusion == ExclusionReason::none; }

  friend bool operator==(const CatalogueEntry&, const CatalogueEntry&) = default;
};

/// Numeric suffix of a catalogue id ("B131" -> 131); -1 when there is none.
inline long catalogue_number(std::string_view id) {
  std::size_t i = id.size();
  while (i > 0 && std::isdigit(static_cast<unsigned char>(id[i - 1]))) --i;
  if (i == id.size()) return -1;
  return std::stol(std::string(id.substr(i)));
}

/// Catalogue order: by numeric suffix, then by the full id.
inline bool catalogue_less(std::string_view a, std::string_view b) {
  const long na = catalogue_number(a);
  const long nb = catalogue_number(b);
  if (na != nb) return na < nb;
  return a < b;
}

class Catalogue {
 public:
  Catalogue() = default;
  explicit Catalogue(std::vector<CatalogueEntry> entries) {
    for (auto& e : entries) add(std::move(e));
  }

  void add(CatalogueEntry e) {
    if (e.catalogue_id.empty()) {
      throw InvalidArgumentError("catalogue entry without an id");
    }
    const std::string id = e.catalogue_id;
    if (!entries_.emplace(id, std::move(e)).second) {
      throw InvalidArgumentError("duplicate catalogue entry " + id);
    }
  }

  const CatalogueEntry* find(const std::string& id) const {
    auto it = entries_.find(id);
    return it == entries_.end() ? nullptr : &it->second;
  }

  /// Entries in catalogue order.
  std::vector<CatalogueEntry> entries() const {
    std::vector<CatalogueEntry> out;
    for (const auto& [_, e] : entries_) out.push_back(e);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      return catalogue_less(a.catalogue_id, b.catalogue_id);
    });
    return out;
  }

  std::size_t size() const { return entries_.size(); }
  std::size_t included_count() const {
    return static_cast<std::size_t>(
        std::count_if(entries_.begin(), entries_.end(),
                      [](const auto& kv) { return kv.second.included(); }));
  }

 private:
  std::map<std::string, CatalogueEntry> entries_;
};

/// B104..B298 with the named exclusions. Late works made mostly of color
/// lines are not enumerated here; mark them `color_lines` in the catalogue
/// file.
inline Catalogue default_catalogue() {
  const std::map<int, ExclusionReason> excluded = {
      {127, ExclusionReason::lozenge},      {151, ExclusionReason::lozenge},
      {152, ExclusionReason::lozenge},      {156, ExclusionReason::lozenge},
      {165, ExclusionReason::lozenge},      {169, ExclusionReason::lozenge},
      {173, ExclusionReason::lozenge},      {176, ExclusionReason::lozenge},
      {210, ExclusionReason::lozenge},      {218, ExclusionReason::lozenge},
      {229, ExclusionReason::lozenge},      {241, ExclusionReason::lozenge},
      {282, ExclusionReason::lozenge},      {280, ExclusionReason::skewed_photo},
      {111, ExclusionReason::sketch},       {158, ExclusionReason::sketch},
      {164, ExclusionReason::sketch},       {290, ExclusionReason::sketch},
      {291, ExclusionReason::sketch},       {297, ExclusionReason::sketch},
      {298, ExclusionReason::sketch},       {205, ExclusionReason::non_painting},
      {224, ExclusionReason::near_copy},
  };
  // Years known for individual paintings; the rest stay unknown.
  const std::map<int, int> years = {{108, 1920}, {116, 1921}, {125, 1921},
                                    {131, 1921}, {160, 1926}, {189, 1927},
                                    {198, 1927}, {258, 1935}, {288, 1938}};
  Catalogue c;
  for (int n = 104; n <= 298; ++n) {
    CatalogueEntry e;
    e.catalogue_id = "B" + std::to_string(n);
    if (auto y = years.find(n); y != years.end()) e.year = y->second;
    if (auto x = excluded.find(n); x != excluded.end()) e.exclusion = x->second;
    c.add(std::move(e));
  }
  return c;
}

/// Catalogue config: one entry per line, `<id> <year|-> <reason>`, where
/// reason is `none` for included paintings. `#` starts a comment.
inline std::string format_catalogue(const Catalogue& c) {
  std::ostringstream os;
  os << "# id year reason   (year '-' when unknown; reason 'none' = included)\n";
  for (const auto& e : c.entries()) {
    os << e.catalogue_id << ' '
       << (e.year > 0 ? std::to_string(e.year) : std::string("-")) << ' '
       << to_string(e.exclusion) << '\n';
  }
  return os.str();
}

inline Catalogue parse_catalogue(std::string_view text) {
  Catalogue c;
  std::istringstream is{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(is, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string id;
    std::string year;
    std::string reason;
    if (!(ls >> id)) continue;
    if (!(ls >> year >> reason)) {
      throw ParseError(line_no, "", "expected '<id> <year|-> <reason>'");
    }
    std::string extra;
    if (ls >> extra) throw ParseError(line_no, "", "trailing text '" + extra + "'");
    CatalogueEntry e;
    e.catalogue_id = id;
    if (year != "-") e.year = static_cast<int>(detail::parse_long(year, line_no, "year"));
    const auto r = parse_exclusion_reason(reason);
    if (!r) throw ParseError(line_no, "reason", "unknown reason '" + reason + "'");
    e.exclusion = *r;
    try {
      c.add(std::move(e));
    } catch (const InvalidArgumentError& err) {
      throw ParseError(line_no, "id", err.what());
    }
  }
  return c;
}

struct CorpusTable {
  std::vector<PaintingRecord> rows;  // catalogue order
  std::vector<std::string> warnings;

  /// Defined splittingness values in row order; undefined ones are skipped.
  std::vector<double> splittingness_values() const {
    std::vector<double> out;
    for (const auto& r : rows) {
      if (r.metrics.splittingness) out.push_back(*r.metrics.splittingness);
    }
    return out;
  }
  std::vector<double> complexity_values() const {
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.metrics.complexity);
    return out;
  }
};

/// Keeps records of included catalogue entries, in catalogue order. Records
/// for excluded or unknown ids are dropped with a warning.
inline CorpusTable aggregate(std::vector<PaintingRecord> records,
                             const Catalogue& catalogue) {
  std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return catalogue_less(a.catalogue_id, b.catalogue_id);
  });
  CorpusTable table;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const PaintingRecord& r = records[i];
    if (i > 0 && records[i - 1].catalogue_id == r.catalogue_id) {
      throw InvalidArgumentError("duplicate record for " + r.catalogue_id);
    }
    const CatalogueEntry* e = catalogue.find(r.catalogue_id);
    if (e == nullptr) {
      table.warnings.push_back(r.catalogue_id +
                               ": not in the catalogue; omitted");
    } else if (!e->included()) {
      table.warnings.push_back(r.catalogue_id + ": excluded (" +
                               to_string(e->exclusion) + "); omitted");
    } else {
      table.rows.push_back(r);
    }
  }
  return table;
}

namespace detail {

inline std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace detail

inline constexpr std::string_view kCorpusCsvHeader =
    "catalogue_id,year,sw,sh,thl,tvl,nh,nv,hh,hv,rt,sc,splittingness,"
    "complexity,special_effects";

/// Corpus table as CSV: header row, comma separated, '.' decimals, LF line
/// endings. Undefined splittingness is written as `undefined`.
inline std::string corpus_csv(const CorpusTable& table) {
  std::ostringstream os;
  os << kCorpusCsvHeader << '\n';
  for (const auto& r : table.rows) {
    const auto& t = r.tally;
    os << r.catalogue_id << ',' << r.year << ',' << t.sw << ',' << t.sh << ','
       << detail::csv_number(t.thl) << ',' << detail::csv_number(t.tvl) << ','
       << t.nh << ',' << t.nv << ',' << t.hh << ',' << t.hv << ',' << t.rt
       << ',' << t.sc << ','
       << (r.metrics.splittingness ? detail::csv_number(*r.metrics.splittingness)
                                   : std::string("undefined"))
       << ',' << detail::csv_number(r.metrics.complexity) << ','
       << r.metrics.special_effects << '\n';
  }
  return os.str();
}

struct TrendPoint {
  std::string catalogue_id;
  int year = 0;
  std::optional<double> splittingness;  // nullopt rows are flagged, not zeroed
  double complexity = 0.0;

  friend bool operator==(const TrendPoint&, const TrendPoint&) = default;
};

struct TrendSeries {
  std::vector<TrendPoint> points;  // catalogue order

  std::vector<std::pair<std::string, std::optional<double>>> splittingness()
      const {
    std::vector<std::pair<std::string, std::optional<double>>> out;
    for (const auto& p : points) out.emplace_back(p.catalogue_id, p.splittingness);
    return out;
  }
  std::vector<std::pair<std::string, double>> complexity() const {
    std::vector<std::pair<std::string, double>> out;
    for (const auto& p : points) out.emplace_back(p.catalogue_id, p.complexity);
    return out;
  }

  friend bool operator==(const TrendSeries&, const TrendSeries&) = default;
};

inline TrendSeries trend_series(std::span<const PaintingRecord> records) {
  TrendSeries s;
  for (const auto& r : records) {
    s.points.push_back({r.catalogue_id, r.year, r.metrics.splittingness,
                        r.metrics.complexity});
  }
  std::stable_sort(s.points.begin(), s.points.end(),
                   [](const auto& a, const auto& b) {
                     return catalogue_less(a.catalogue_id, b.catalogue_id);
                   });
  return s;
}

/// Points whose catalogue number lies in [first, last] inclusive.
inline TrendSeries select_range(const TrendSeries& s, std::string_view first,
                                std::string_view last) {
  const long lo = catalogue_number(first);
  const long hi = catalogue_number(last);
  TrendSeries out;
  for (const auto& p : s.points) {
    const long n = catalogue_number(p.catalogue_id);
    if (n >= lo && n <= hi) out.points.push_back(p);
  }
  return out;
}

inline constexpr std::string_view kTrendCsvHeader =
    "catalogue_id,year,splittingness,complexity";

inline std::string trend_csv(const TrendSeries& s) {
  std::ostringstream os;
  os << kTrendCsvHeader << '\n';
  for (const auto& p : s.points) {
    os << p.catalogue_id << ',' << p.year << ','
       << (p.splittingness ? detail::format_number(*p.splittingness)
                           : std::string("undefined"))
       << ',' << detail::format_number(p.complexity) << '\n';
  }
  return os.str();
}

inline TrendSeries parse_trend_csv(std::string_view text) {
  std::istringstream is{std::string(text)};
  std::string line;
  int line_no = 1;
  if (!std::getline(is, line) || detail::trim(line) != kTrendCsvHeader) {
    throw ParseError(1, "", "expected header '" + std::string(kTrendCsvHeader) + "'");
  }
  TrendSeries s;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const auto cells = detail::split_csv_line(detail::trim(line));
    if (cells.size() != 4) throw ParseError(line_no, "", "expected 4 columns");
    TrendPoint p;
    p.catalogue_id = cells[0];
    p.year = static_cast<int>(detail::parse_long(cells[1], line_no, "year"));
    if (cells[2] != "undefined") {
      p.splittingness = detail::parse_double(cells[2], line_no, "splittingness");
    }
    p.complexity = detail::parse_double(cells[3], line_no, "complexity");
    s.points.push_back(std::move(p));
  }
  return s;
}

}  // namespace splitlab
