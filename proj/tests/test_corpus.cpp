#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "splitlab/analysis.hpp"
#include "splitlab/corpus.hpp"

namespace splitlab {
namespace {

using testing::published_fixtures;
using testing::tally_of;

std::vector<std::string> ids(const CorpusTable& t) {
  std::vector<std::string> out;
  for (const auto& r : t.rows) out.push_back(r.catalogue_id);
  return out;
}

TEST(Catalogue, DefaultListsTheStudiedRange) {
  const Catalogue c = default_catalogue();
  EXPECT_EQ(c.size(), 195U);
  EXPECT_EQ(c.included_count(), 172U);
  EXPECT_EQ(c.find("B127")->exclusion, ExclusionReason::lozenge);
  EXPECT_EQ(c.find("B280")->exclusion, ExclusionReason::skewed_photo);
  EXPECT_EQ(c.find("B205")->exclusion, ExclusionReason::non_painting);
  EXPECT_EQ(c.find("B224")->exclusion, ExclusionReason::near_copy);
  EXPECT_TRUE(c.find("B131")->included());
  EXPECT_EQ(c.find("B288")->year, 1938);
  EXPECT_EQ(c.find("B103"), nullptr);
  EXPECT_EQ(c.entries().front().catalogue_id, "B104");
  EXPECT_EQ(c.entries().back().catalogue_id, "B298");
}

TEST(Catalogue, TextRoundTrip) {
  const Catalogue c = default_catalogue();
  const Catalogue back = parse_catalogue(format_catalogue(c));
  EXPECT_EQ(back.entries(), c.entries());
}

TEST(Catalogue, ParseRejectsMalformedLines) {
  EXPECT_THROW(parse_catalogue("B104 1920\n"), ParseError);
  EXPECT_THROW(parse_catalogue("B104 1920 painted\n"), ParseError);
  EXPECT_THROW(parse_catalogue("B104 - none\nB104 - none\n"), ParseError);
  EXPECT_THROW(parse_catalogue("B104 - none extra\n"), ParseError);
  const Catalogue c = parse_catalogue("# header\n\nB299 1942 color_lines\n");
  EXPECT_EQ(c.find("B299")->exclusion, ExclusionReason::color_lines);
}

TEST(Catalogue, OrderUsesTheNumericSuffix) {
  EXPECT_TRUE(catalogue_less("B99", "B104"));
  EXPECT_FALSE(catalogue_less("B104", "B99"));
  EXPECT_TRUE(catalogue_less("A131", "B131"));
  EXPECT_EQ(catalogue_number("B131"), 131);
  EXPECT_EQ(catalogue_number("B"), -1);
}

TEST(Aggregate, MeanOfThreeFixtures) {
  const auto all = published_fixtures();
  const std::vector<PaintingRecord> three = {all[2], all[1], all[0]};
  const CorpusTable t = aggregate(three, default_catalogue());
  EXPECT_EQ(ids(t), (std::vector<std::string>{"B125", "B131", "B198"}));
  const auto d = stats::descriptives(t.splittingness_values());
  EXPECT_DOUBLE_EQ(d.mean, 0.5);
  EXPECT_EQ(d.count_at_0, 1U);
  EXPECT_EQ(d.count_at_1, 1U);
  EXPECT_TRUE(t.warnings.empty());
}

TEST(Aggregate, EmptyInputGivesEmptyTable) {
  const CorpusTable t = aggregate({}, default_catalogue());
  EXPECT_TRUE(t.rows.empty());
  EXPECT_THROW(stats::descriptives(t.splittingness_values()), EmptyInputError);
  EXPECT_THROW(median_splittingness_test(t, 1.0, 0.05), EmptyInputError);
}

TEST(Aggregate, ExcludedAndUnknownRecordsAreDroppedWithWarnings) {
  std::vector<PaintingRecord> rs = published_fixtures();
  rs.push_back(make_record("B127", 1921, tally_of(4, 1, 900, 0, 0)));
  rs.push_back(make_record("X1", 1930, tally_of(4, 1, 900, 0, 0)));
  const CorpusTable t = aggregate(rs, default_catalogue());
  EXPECT_EQ(t.rows.size(), 6U);
  ASSERT_EQ(t.warnings.size(), 2U);
  EXPECT_NE(t.warnings[0].find("X1"), std::string::npos);
  EXPECT_NE(t.warnings[1].find("B127"), std::string::npos);
  EXPECT_NE(t.warnings[1].find("lozenge"), std::string::npos);
}

TEST(Aggregate, DuplicateIdsAreAnError) {
  std::vector<PaintingRecord> rs = published_fixtures();
  rs.push_back(rs.front());
  EXPECT_THROW(aggregate(rs, default_catalogue()), InvalidArgumentError);
}

TEST(Aggregate, UndefinedValuesAreSkippedNotZeroed) {
  std::vector<PaintingRecord> rs = {published_fixtures()[0],
                                    make_record("B140", 1923, tally_of(0, 0, 900, 0, 0))};
  const CorpusTable t = aggregate(rs, default_catalogue());
  EXPECT_EQ(t.rows.size(), 2U);
  EXPECT_EQ(t.splittingness_values(), std::vector<double>{0.5});
  EXPECT_EQ(t.complexity_values().size(), 2U);
  EXPECT_NE(corpus_csv(t).find(",undefined,"), std::string::npos);
}

// Property: shuffling the input records never changes the table.
TEST(Aggregate, PermutationInvariant) {
  const std::vector<PaintingRecord> base = published_fixtures();
  const CorpusTable expected = aggregate(base, default_catalogue());
  const std::string csv = corpus_csv(expected);
  std::mt19937 rng(8);
  for (int i = 0; i < 100; ++i) {
    std::vector<PaintingRecord> shuffled = base;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    EXPECT_EQ(corpus_csv(aggregate(shuffled, default_catalogue())), csv);
  }
}

TEST(CorpusCsv, HeaderAndRows) {
  const CorpusTable t = aggregate(published_fixtures(), default_catalogue());
  const std::string csv = corpus_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kCorpusCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
  EXPECT_NE(csv.find("\nB131,1921,500,400,"), std::string::npos);
  EXPECT_NE(csv.find(",12,3,0.5,"), std::string::npos);
}

TEST(Trend, CsvRoundTrip) {
  const auto rs = published_fixtures();
  std::vector<PaintingRecord> with_undefined = rs;
  with_undefined.push_back(make_record("B140", 1923, tally_of(0, 0, 900, 0, 0)));
  const TrendSeries s = trend_series(with_undefined);
  const std::string csv = trend_csv(s);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), kTrendCsvHeader);
  const TrendSeries back = parse_trend_csv(csv);
  ASSERT_EQ(back.points.size(), s.points.size());
  for (std::size_t i = 0; i < s.points.size(); ++i) {
    EXPECT_EQ(back.points[i].catalogue_id, s.points[i].catalogue_id);
    EXPECT_EQ(back.points[i].year, s.points[i].year);
    EXPECT_EQ(back.points[i].splittingness.has_value(),
              s.points[i].splittingness.has_value());
    if (s.points[i].splittingness) {
      EXPECT_NEAR(*back.points[i].splittingness, *s.points[i].splittingness, 1e-9);
    }
    EXPECT_NEAR(back.points[i].complexity, s.points[i].complexity, 1e-9);
  }
  EXPECT_THROW(parse_trend_csv("id,year\n"), ParseError);
}

TEST(Trend, SeriesInCatalogueOrderAndRange) {
  const TrendSeries s = trend_series(published_fixtures());
  std::vector<std::string> order;
  for (const auto& p : s.points) order.push_back(p.catalogue_id);
  EXPECT_EQ(order, (std::vector<std::string>{"B108", "B116", "B125", "B131",
                                             "B198", "B288"}));
  const TrendSeries early = select_range(s, "B125", "B148");
  ASSERT_EQ(early.points.size(), 2U);
  EXPECT_EQ(early.points[0].catalogue_id, "B125");
  EXPECT_EQ(early.points[1].catalogue_id, "B131");
  EXPECT_EQ(early.splittingness()[1].second, 0.5);
}

TEST(Analysis, RangeRestrictedTest) {
  const CorpusTable t = aggregate(published_fixtures(), default_catalogue());
  const auto in_range = rows_in_range(t, CatalogueRange{"B125", "B148"});
  EXPECT_EQ(in_range.size(), 2U);
  const auto r = median_splittingness_test(t, 1.0, 0.05, CatalogueRange{"B125", "B148"});
  EXPECT_EQ(r.n_effective, 1U);  // B125 equals the median and drops out
  EXPECT_THROW(median_splittingness_test(t, 1.0, 0.05, CatalogueRange{"B290", "B298"}),
               EmptyInputError);
}

TEST(Analysis, SpecialEffectsSummary) {
  const CorpusTable t = aggregate(published_fixtures(), default_catalogue());
  const SpecialEffectsSummary s = special_effects_summary(t);
  EXPECT_EQ(s.paintings, 6U);
  EXPECT_EQ(s.nonzero, 4U);  // B131, B125, B116, B108
  EXPECT_EQ(s.max, 3);
  EXPECT_DOUBLE_EQ(s.nonzero_fraction(), 4.0 / 6.0);
}

}  // namespace
}  // namespace splitlab
