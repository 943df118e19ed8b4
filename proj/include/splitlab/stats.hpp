#pragma once

// Corpus-level statistics: descriptives, the one-sample Wilcoxon signed-rank
// test and a Kolmogorov-Smirnov normality test with estimated parameters.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "splitlab/error.hpp"

namespace splitlab::stats {

struct Descriptives {
  std::size_t n = 0;
  double mean = 0.0;
  double sd = 0.0;  // n-1 denominator; NaN when n == 1
  double min = 0.0;
  double max = 0.0;
  std::size_t count_at_0 = 0;
  std::size_t count_at_1 = 0;
};

inline constexpr double kExactValueTolerance = 1e-12;

inline Descriptives descriptives(std::span<const double> values) {
  if (values.empty()) throw EmptyInputError("descriptives of an empty list");
  Descriptives d;
  d.n = values.size();
  d.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(d.n);
  double ss = 0.0;
  for (double v : values) ss += (v - d.mean) * (v - d.mean);
  d.sd = d.n > 1 ? std::sqrt(ss / static_cast<double>(d.n - 1))
                 : std::nan("");
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  d.min = *lo;
  d.max = *hi;
  for (double v : values) {
    if (std::abs(v) <= kExactValueTolerance) ++d.count_at_0;
    if (std::abs(v - 1.0) <= kExactValueTolerance) ++d.count_at_1;
  }
  return d;
}

enum class TestKind { wilcoxon_one_sample, ks_normality };
enum class Method { exact, normal_approx, asymptotic, monte_carlo };

inline const char* to_string(TestKind t) {
  return t == TestKind::wilcoxon_one_sample ? "wilcoxon_one_sample"
                                            : "ks_normality";
}

inline const char* to_string(Method m) {
  switch (m) {
    case Method::exact: return "exact";
    case Method::normal_approx: return "normal_approx";
    case Method::asymptotic: return "asymptotic";
    case Method::monte_carlo: return "monte_carlo";
  }
  return "?";
}

struct TestReport {
  TestKind test = TestKind::wilcoxon_one_sample;
  std::size_t n_effective = 0;
  double statistic = 0.0;
  double p_value = 1.0;
  double alpha = 0.05;
  bool reject = false;
  Method method = Method::exact;
};

inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

/// Midranks (1-based) of `values`; ties share the average rank.
inline std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
    const double avg = (static_cast<double>(i + j) / 2.0) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

inline constexpr std::size_t kWilcoxonExactMaxN = 20;
inline constexpr double kZeroDifference = 1e-12;

/// `automatic` picks exact up to kWilcoxonExactMaxN nonzero differences.
enum class WilcoxonMode { automatic, exact, normal_approx };

/// Two-sided one-sample Wilcoxon signed-rank test of the median against
/// `hypothesized_median`. Zero differences are dropped. Up to
/// kWilcoxonExactMaxN remaining values the null distribution of W+ is
/// computed exactly (counting all 2^n sign assignments via a subset-sum
/// recurrence over doubled midranks); above that a tie-corrected normal
/// approximation with continuity correction is used.
inline TestReport wilcoxon_one_sample(
    std::span<const double> values, double hypothesized_median,
    double alpha = 0.05, WilcoxonMode mode = WilcoxonMode::automatic) {
  if (values.empty()) throw EmptyInputError("Wilcoxon test of an empty list");
  std::vector<double> diffs;
  for (double v : values) {
    const double d = v - hypothesized_median;
    if (std::abs(d) > kZeroDifference) diffs.push_back(d);
  }
  if (diffs.empty()) {
    throw DegenerateSampleError(
        "every value equals the hypothesized median; nothing to rank");
  }

  const std::size_t n = diffs.size();
  std::vector<double> abs_diffs(n);
  std::transform(diffs.begin(), diffs.end(), abs_diffs.begin(),
                 [](double d) { return std::abs(d); });
  const std::vector<double> ranks = average_ranks(abs_diffs);

  double w_plus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (diffs[i] > 0) w_plus += ranks[i];
  }

  TestReport r;
  r.test = TestKind::wilcoxon_one_sample;
  r.n_effective = n;
  r.statistic = w_plus;
  r.alpha = alpha;

  const bool exact = mode == WilcoxonMode::exact ||
                     (mode == WilcoxonMode::automatic && n <= kWilcoxonExactMaxN);
  if (exact) {
    if (n > 1000) throw InvalidArgumentError("exact Wilcoxon limited to n <= 1000");
    // Midranks are multiples of 1/2, so doubled ranks are integers.
    std::vector<int> doubled(n);
    for (std::size_t i = 0; i < n; ++i) {
      doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
    }
    const int total = std::accumulate(doubled.begin(), doubled.end(), 0);
    std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
    ways[0] = 1.0;
    int reach = 0;
    for (int rank : doubled) {
      reach += rank;
      for (int s = reach; s >= rank; --s) ways[s] += ways[s - rank];
    }
    const double patterns = std::ldexp(1.0, static_cast<int>(n));
    const int observed = static_cast<int>(std::lround(2.0 * w_plus));
    double lower = 0.0;
    double upper = 0.0;
    for (int s = 0; s <= total; ++s) {
      if (s <= observed) lower += ways[s];
      if (s >= observed) upper += ways[s];
    }
    r.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / patterns);
    r.method = Method::exact;
  } else {
    const double nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    double tie_term = 0.0;
    std::vector<double> sorted = abs_diffs;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && sorted[j + 1] == sorted[i]) ++j;
      const double t = static_cast<double>(j - i + 1);
      tie_term += t * t * t - t;
      i = j + 1;
    }
    const double var =
        nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term / 48.0;
    if (var <= 0.0) {
      r.p_value = 1.0;
    } else {
      const double z =
          std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(var);
      r.p_value = std::min(1.0, 2.0 * (1.0 - normal_cdf(z)));
    }
    r.method = Method::normal_approx;
  }
  r.reject = r.p_value < alpha;
  return r;
}

/// Survival function of the limiting Kolmogorov distribution, P(K > lambda).
inline double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // Small-argument theta series for the CDF.
    const double pi = 3.14159265358979323846;
    const double f = -pi * pi / (8.0 * lambda * lambda);
    double cdf = 0.0;
    for (int k = 1; k <= 9; k += 2) cdf += std::exp(f * k * k);
    cdf *= std::sqrt(2.0 * pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1 ? term : -term);
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

/// sup |F_n(x) - Phi((x - mean)/sd)| with mean and sd (n-1) estimated from
/// the sample itself.
inline double ks_normal_statistic(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double mean =
      std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : sorted) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / static_cast<double>(n - 1));
  const double nd = static_cast<double>(n);
  double d = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = normal_cdf((sorted[i] - mean) / sd);
    d = std::max({d, static_cast<double>(i + 1) / nd - f,
                  f - static_cast<double>(i) / nd});
  }
  return d;
}

enum class KsMode { asymptotic, monte_carlo };

struct KsOptions {
  KsMode mode = KsMode::asymptotic;
  std::size_t replicates = 2000;
};

/// Kolmogorov-Smirnov test of normality with parameters estimated from the
/// sample. The asymptotic p-value ignores the estimation (it is the
/// classical, conservative one); the Monte-Carlo p-value re-estimates mean
/// and sd on every simulated normal sample and is therefore Lilliefors-exact
/// up to simulation error.
template <class Rng>
TestReport ks_normality(std::span<const double> values, double alpha,
                        KsOptions options, Rng& rng) {
  const std::size_t n = values.size();
  if (n < 3) {
    throw DegenerateSampleError("KS normality test needs at least 3 values");
  }
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  if (!(ss > 0.0)) {
    throw DegenerateSampleError("KS normality test of a constant sample");
  }

  TestReport r;
  r.test = TestKind::ks_normality;
  r.n_effective = n;
  r.statistic = ks_normal_statistic(values);
  r.alpha = alpha;
  if (options.mode == KsMode::asymptotic) {
    r.method = Method::asymptotic;
    r.p_value = kolmogorov_survival(std::sqrt(static_cast<double>(n)) *
                                    r.statistic);
  } else {
    if (options.replicates == 0) {
      throw InvalidArgumentError("Monte-Carlo KS needs at least one replicate");
    }
    r.method = Method::monte_carlo;
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> sample(n);
    std::size_t at_least = 0;
    for (std::size_t rep = 0; rep < options.replicates; ++rep) {
      for (double& v : sample) v = normal(rng);
      if (ks_normal_statistic(sample) >= r.statistic) ++at_least;
    }
    r.p_value = static_cast<double>(at_least + 1) /
                static_cast<double>(options.replicates + 1);
  }
  r.reject = r.p_value < alpha;
  return r;
}

/// Convenience overload for the asymptotic mode, which needs no generator.
inline TestReport ks_normality(std::span<const double> values, double alpha) {
  std::mt19937_64 unused(0);
  return ks_normality(values, alpha, KsOptions{KsMode::asymptotic, 0}, unused);
}

}  // namespace splitlab::stats
