#pragma once

// Corpus-level questions answered from a table of painting records.

#include <algorithm>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "splitlab/corpus.hpp"
#include "splitlab/stats.hpp"

namespace splitlab {

struct CatalogueRange {
  std::string first;
  std::string last;
};

/// Rows whose catalogue number lies in the inclusive range.
inline std::vector<PaintingRecord> rows_in_range(
    const CorpusTable& table, const std::optional<CatalogueRange>& range) {
  if (!range) return table.rows;
  const long lo = catalogue_number(range->first);
  const long hi = catalogue_number(range->last);
  std::vector<PaintingRecord> out;
  for (const auto& r : table.rows) {
    const long n = catalogue_number(r.catalogue_id);
    if (n >= lo && n <= hi) out.push_back(r);
  }
  return out;
}

/// Wilcoxon test of the median splittingness over included rows with a
/// defined value, optionally restricted to a catalogue range.
inline stats::TestReport median_splittingness_test(
    const CorpusTable& table, double hypothesized_median, double alpha,
    const std::optional<CatalogueRange>& range = std::nullopt) {
  std::vector<double> values;
  for (const auto& r : rows_in_range(table, range)) {
    if (r.metrics.splittingness) values.push_back(*r.metrics.splittingness);
  }
  if (values.empty()) {
    throw EmptyInputError("no defined splittingness values to test" +
                          std::string(range ? " in the selected range" : ""));
  }
  return stats::wilcoxon_one_sample(values, hypothesized_median, alpha);
}

struct SpecialEffectsSummary {
  std::size_t paintings = 0;
  std::size_t nonzero = 0;
  long max = 0;

  double nonzero_fraction() const {
    return paintings == 0 ? 0.0
                          : static_cast<double>(nonzero) /
                                static_cast<double>(paintings);
  }
};

inline SpecialEffectsSummary special_effects_summary(const CorpusTable& table) {
  SpecialEffectsSummary s;
  s.paintings = table.rows.size();
  for (const auto& r : table.rows) {
    if (r.metrics.special_effects > 0) ++s.nonzero;
    s.max = std::max(s.max, r.metrics.special_effects);
  }
  return s;
}

/// Every `*.txt` record in `dir`, in file-name order.
inline std::vector<PaintingRecord> load_records(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (std::filesystem::exists(dir)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt") {
        files.push_back(entry.path());
      }
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<PaintingRecord> out;
  for (const auto& f : files) out.push_back(load_record(f));
  return out;
}

}  // namespace splitlab
