// splitlab: batch analysis, hypothesis tests, composition generation and the
// marking HTTP service.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "splitlab/http.hpp"
#include "splitlab/json.hpp"
#include "splitlab/splitlab.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

using splitlab::CorpusTable;
using splitlab::PaintingRecord;

std::string percent(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", ratio * 100.0);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw splitlab::Error("IoError", "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw splitlab::Error("IoError", "cannot write " + path);
  out << text;
}

splitlab::Catalogue load_catalogue(const std::string& path) {
  if (path.empty()) return splitlab::default_catalogue();
  try {
    return splitlab::parse_catalogue(read_file(path));
  } catch (const splitlab::ParseError& e) {
    throw e.in(path);
  }
}

// Loads every file, reporting each failure; returns false if any failed.
bool load_all(const std::vector<std::string>& files,
              std::vector<PaintingRecord>& out) {
  bool ok = true;
  for (const auto& f : files) {
    try {
      out.push_back(splitlab::load_record(f));
    } catch (const splitlab::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      ok = false;
    }
  }
  return ok;
}

void print_table(const CorpusTable& table) {
  std::printf("%-8s %5s %4s %4s %14s %11s %16s\n", "id", "year", "rt", "sc",
              "splittingness", "complexity", "special_effects");
  for (const auto& r : table.rows) {
    const std::string s = r.metrics.splittingness
                              ? percent(*r.metrics.splittingness)
                              : std::string("undefined");
    std::printf("%-8s %5d %4ld %4ld %14s %11s %16ld\n", r.catalogue_id.c_str(),
                r.year, r.tally.rt, r.tally.sc, s.c_str(),
                fixed(r.metrics.complexity, 2).c_str(),
                r.metrics.special_effects);
  }
}

void print_summary(const CorpusTable& table) {
  const std::size_t n = table.rows.size();
  const std::vector<double> split = table.splittingness_values();
  std::printf("\npaintings: %zu (splittingness defined: %zu)\n", n,
              split.size());
  if (!split.empty()) {
    const auto d = splitlab::stats::descriptives(split);
    std::printf("splittingness: mean %s, sd %s, min %s, max %s\n",
                percent(d.mean).c_str(),
                d.n > 1 ? percent(d.sd).c_str() : "n/a",
                percent(d.min).c_str(), percent(d.max).c_str());
    const double dn = static_cast<double>(d.n);
    std::printf("  at 0%%: %zu (%s)  at 100%%: %zu (%s)\n", d.count_at_0,
                percent(static_cast<double>(d.count_at_0) / dn).c_str(),
                d.count_at_1,
                percent(static_cast<double>(d.count_at_1) / dn).c_str());
  }
  if (n > 0) {
    const auto c = splitlab::stats::descriptives(table.complexity_values());
    std::printf("complexity: mean %s, min %s, max %s\n",
                fixed(c.mean, 2).c_str(), fixed(c.min, 2).c_str(),
                fixed(c.max, 2).c_str());
    const auto se = splitlab::special_effects_summary(table);
    std::printf("special effects: nonzero %zu of %zu (%s), max %ld\n",
                se.nonzero, se.paintings, percent(se.nonzero_fraction()).c_str(),
                se.max);
  }
}

void print_report(const splitlab::stats::TestReport& r) {
  std::printf("test: %s\n", splitlab::stats::to_string(r.test));
  std::printf("n_effective: %zu\n", r.n_effective);
  std::printf("statistic: %.6g\n", r.statistic);
  std::printf("p_value: %.6g\n", r.p_value);
  std::printf("method: %s\n", splitlab::stats::to_string(r.method));
  std::printf("alpha: %.6g\n", r.alpha);
  std::printf("decision: %s\n", r.reject ? "reject" : "not rejected");
}

int run_analyze(const std::vector<std::string>& files,
                const std::string& catalogue_path, const std::string& csv_out,
                const std::string& trend_out, bool ks, std::uint64_t seed) {
  std::vector<PaintingRecord> records;
  const bool ok = load_all(files, records);
  if (!ok) return kExitData;
  const CorpusTable table =
      splitlab::aggregate(records, load_catalogue(catalogue_path));
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
  print_table(table);
  print_summary(table);
  if (ks) {
    const auto values = table.splittingness_values();
    std::mt19937_64 rng(seed);
    for (auto mode : {splitlab::stats::KsMode::asymptotic,
                      splitlab::stats::KsMode::monte_carlo}) {
      try {
        const auto r = splitlab::stats::ks_normality(
            values, 0.05, {mode, 10000}, rng);
        std::printf("normality (KS, %s): D %.4f, p %.4g, %s\n",
                    splitlab::stats::to_string(r.method), r.statistic,
                    r.p_value, r.reject ? "not normal" : "normality not rejected");
      } catch (const splitlab::DegenerateSampleError& e) {
        std::printf("normality (KS): %s\n", e.what());
      }
    }
  }
  if (!csv_out.empty()) write_file(csv_out, splitlab::corpus_csv(table));
  if (!trend_out.empty()) {
    write_file(trend_out,
               splitlab::trend_csv(splitlab::trend_series(table.rows)));
  }
  return kExitOk;
}

int run_test(const std::vector<std::string>& files,
             const std::string& catalogue_path, double median, double alpha,
             const std::vector<std::string>& range) {
  std::vector<PaintingRecord> records;
  if (!load_all(files, records)) return kExitData;
  const CorpusTable table =
      splitlab::aggregate(records, load_catalogue(catalogue_path));
  for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
  std::optional<splitlab::CatalogueRange> r;
  if (range.size() == 2) r = splitlab::CatalogueRange{range[0], range[1]};
  try {
    const auto report =
        splitlab::median_splittingness_test(table, median, alpha, r);
    std::printf("hypothesis: median splittingness = %s\n",
                fixed(median, 3).c_str());
    if (r) std::printf("range: %s..%s\n", r->first.c_str(), r->last.c_str());
    print_report(report);
  } catch (const splitlab::DegenerateSampleError& e) {
    std::cerr << "error: degenerate sample: " << e.what()
              << " (every splittingness value equals the hypothesized median, "
                 "so the signed-rank statistic is undefined)\n";
    return kExitData;
  } catch (const splitlab::EmptyInputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitOk;
}

struct GenerateOptions {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> depth;
  std::optional<int> min_cell;
  std::optional<double> crossing_prob;
  std::optional<int> width;
  std::optional<int> height;
  std::optional<int> line_width;
  std::optional<int> grid;
  std::vector<double> split_prob;
};

int run_generate(const GenerateOptions& o) {
  splitlab::GenParams p =
      o.config.empty() ? splitlab::GenParams{}
                       : splitlab::parse_gen_params(read_file(o.config));
  if (o.seed) p.seed = *o.seed;
  if (o.depth) p.max_depth = *o.depth;
  if (o.min_cell) p.min_cell = *o.min_cell;
  if (o.crossing_prob) p.crossing_prob = *o.crossing_prob;
  if (o.width || o.height) {
    p.canvas = splitlab::Canvas(o.width.value_or(p.canvas.width_px),
                                o.height.value_or(p.canvas.height_px));
  }
  if (o.line_width) p.line_width = *o.line_width;
  if (o.grid) p.grid = *o.grid;
  if (!o.split_prob.empty()) p.split_prob = o.split_prob;

  const auto tree = splitlab::generate(p);
  const std::string svg = splitlab::render_svg(*tree, p);
  if (!o.out.empty()) write_file(o.out, svg);
  const auto counts = splitlab::count_nodes(*tree);
  const auto t = splitlab::analyze_tree(*tree, p);
  const auto m = splitlab::compute_metrics(t);
  std::printf("seed: %llu\n", static_cast<unsigned long long>(p.seed));
  std::printf("splits: %zu leaves: %zu depth: %d\n", counts.splits,
              counts.leaves, counts.depth);
  std::printf("tally: sw=%ld sh=%ld thl=%s tvl=%s nh=%ld nv=%ld hh=%ld hv=%ld "
              "rt=%ld sc=%ld\n",
              t.sw, t.sh, fixed(t.thl, 0).c_str(), fixed(t.tvl, 0).c_str(),
              t.nh, t.nv, t.hh, t.hv, t.rt, t.sc);
  std::printf("splittingness: %s\n",
              m.splittingness ? percent(*m.splittingness).c_str() : "undefined");
  std::printf("complexity: %s\n", fixed(m.complexity, 2).c_str());
  if (!o.out.empty()) std::printf("wrote: %s\n", o.out.c_str());
  return kExitOk;
}

int run_serve(const std::string& host, int port, const std::string& records,
              const std::string& catalogue_path, const std::string& static_dir) {
  splitlab::SessionService service(records, load_catalogue(catalogue_path));
  httplib::Server server;
  splitlab::mount_api(server, service);
  if (!static_dir.empty()) server.set_mount_point("/", static_dir);
  std::printf("listening on http://%s:%d (records in %s)\n", host.c_str(), port,
              records.c_str());
  std::fflush(stdout);
  if (!server.listen(host, port)) {
    std::cerr << "error: cannot listen on " << host << ':' << port << '\n';
    return kExitData;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splitlab: splitting-decomposition analysis of grid compositions"};
  app.require_subcommand(1);

  std::vector<std::string> files;
  std::string catalogue_path;
  std::string csv_out;
  std::string trend_out;
  bool ks = false;
  std::uint64_t ks_seed = 1;
  auto* analyze = app.add_subcommand("analyze", "per-painting metrics and corpus descriptives");
  analyze->add_option("records", files, "painting record files")->required();
  analyze->add_option("--catalogue", catalogue_path, "catalogue file (default: built-in)");
  analyze->add_option("--csv", csv_out, "write the corpus table as CSV");
  analyze->add_option("--trend", trend_out, "write the trend series as CSV");
  analyze->add_flag("--ks", ks, "run the KS normality test on splittingness");
  analyze->add_option("--seed", ks_seed, "seed for the Monte-Carlo KS p-value");

  double median = 1.0;
  double alpha = 0.05;
  std::vector<std::string> range;
  auto* test = app.add_subcommand("test", "Wilcoxon signed-rank test of the median splittingness");
  test->add_option("records", files, "painting record files")->required();
  test->add_option("--median", median, "hypothesized median in [0,1]")
      ->check(CLI::Range(0.0, 1.0));
  test->add_option("--alpha", alpha, "significance level")->check(CLI::Range(0.0, 1.0));
  test->add_option("--range", range, "catalogue range FROM TO, e.g. B125 B148")
      ->expected(2);
  test->add_option("--catalogue", catalogue_path, "catalogue file (default: built-in)");

  GenerateOptions gen;
  auto* generate = app.add_subcommand("generate", "recursive-splitting composition");
  generate->add_option("--config", gen.config, "generator parameter file");
  generate->add_option("--seed", gen.seed, "random seed");
  generate->add_option("--depth", gen.depth, "maximum split depth");
  generate->add_option("--min-cell", gen.min_cell, "minimum cell size in px");
  generate->add_option("--crossing-prob", gen.crossing_prob,
                       "probability of a synthesized crossing")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--split-prob", gen.split_prob, "per-depth split probabilities");
  generate->add_option("--width", gen.width, "canvas width in px");
  generate->add_option("--height", gen.height, "canvas height in px");
  generate->add_option("--line-width", gen.line_width, "black line width in px");
  generate->add_option("--grid", gen.grid, "snapping grid in px");
  generate->add_option("--out", gen.out, "SVG output file");

  std::string host = "127.0.0.1";
  int port = 8080;
  std::string records_dir = "records";
  std::string static_dir;
  auto* serve = app.add_subcommand("serve", "HTTP API for marking sessions");
  serve->add_option("--host", host, "bind address");
  serve->add_option("--port", port, "port");
  serve->add_option("--records", records_dir, "directory for saved records");
  serve->add_option("--catalogue", catalogue_path, "catalogue file (default: built-in)");
  serve->add_option("--static", static_dir, "directory served at / (marking UI)");

  auto* catalogue = app.add_subcommand("catalogue", "print the built-in catalogue");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*analyze) return run_analyze(files, catalogue_path, csv_out, trend_out, ks, ks_seed);
    if (*test) return run_test(files, catalogue_path, median, alpha, range);
    if (*generate) return run_generate(gen);
    if (*serve) return run_serve(host, port, records_dir, catalogue_path, static_dir);
    if (*catalogue) {
      std::fputs(splitlab::format_catalogue(splitlab::default_catalogue()).c_str(), stdout);
      return kExitOk;
    }
  } catch (const splitlab::InvalidArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const splitlab::Error& e) {
    std::cerr << "error: " << e.code() << ": " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
