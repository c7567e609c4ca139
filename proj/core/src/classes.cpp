#include "fsum/classes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "fsum/error.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

std::string_view to_string(SeqClass cls) noexcept {
  switch (cls) {
    case SeqClass::rbvs: return "RBVS";
    case SeqClass::hbvs: return "HBVS";
    case SeqClass::mrbvs: return "MRBVS";
    case SeqClass::mhbvs: return "MHBVS";
  }
  return "?";
}

std::optional<SeqClass> parse_seq_class(std::string_view text) noexcept {
  std::string lower(text);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "rbvs") return SeqClass::rbvs;
  if (lower == "hbvs") return SeqClass::hbvs;
  if (lower == "mrbvs") return SeqClass::mrbvs;
  if (lower == "mhbvs") return SeqClass::mhbvs;
  return std::nullopt;
}

namespace {

bool is_rest(SeqClass cls) { return cls == SeqClass::rbvs || cls == SeqClass::mrbvs; }
bool is_mean(SeqClass cls) { return cls == SeqClass::mrbvs || cls == SeqClass::mhbvs; }

std::size_t window_start(std::size_t m, MeanWindow window) {
  return window == MeanWindow::ceil_half ? (m + 1) / 2 : m / 2;
}

// Index range [lo, hi] of the right-hand side for admissible m.
std::pair<std::size_t, std::size_t> rhs_range(SeqClass cls, std::size_t n, std::size_t m,
                                              MeanWindow window) {
  switch (cls) {
    case SeqClass::rbvs: return {m, m};
    case SeqClass::hbvs: return {n - m, n - m};
    case SeqClass::mrbvs: return {window_start(m, window), m};
    case SeqClass::mhbvs: return {n - m, n};
  }
  return {0, 0};
}

}  // namespace

ClassReport classify(std::span<const double> row, SeqClass cls, MeanWindow window) {
  if (row.empty()) throw Error(ErrorKind::EmptyRow, "cannot classify an empty row");
  ClassReport report;
  report.label = cls;
  if (row.size() == 1) return report;

  const std::size_t n = row.size() - 1;
  std::vector<double> diff(n);
  for (std::size_t k = 0; k < n; ++k) diff[k] = std::abs(row[k] - row[k + 1]);

  // rest[m] = sum_{k=m}^{n-1} diff, head[j] = sum_{k=0}^{j-1} diff.
  std::vector<double> rest(n + 1, 0.0);
  {
    CompensatedSum s;
    for (std::size_t m = n; m-- > 0;) {
      s.add(diff[m]);
      rest[m] = s.value();
    }
  }
  std::vector<double> head(n + 1, 0.0);
  {
    CompensatedSum s;
    for (std::size_t j = 1; j <= n; ++j) {
      s.add(diff[j - 1]);
      head[j] = s.value();
    }
  }

  double best = -1.0;
  for (std::size_t m = 0; m < n; ++m) {
    const double lhs = is_rest(cls) ? rest[m] : head[n - m];
    const auto [lo, hi] = rhs_range(cls, n, m, window);
    CompensatedSum window_sum;
    for (std::size_t k = lo; k <= hi; ++k) window_sum.add(row[k]);
    double rhs = window_sum.value();
    if (is_mean(cls)) rhs /= static_cast<double>(m + 1);

    double ratio = 0.0;
    if (rhs > 0.0) {
      ratio = lhs / rhs;
    } else if (lhs > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    if (ratio > best) {
      best = ratio;
      report.witness_m = m;
    }
  }
  report.constant = best;
  report.in_class = std::isfinite(best);
  return report;
}

std::vector<ClassReport> classify_rows(const SummabilityMatrix& a, SeqClass cls, MeanWindow window) {
  std::vector<ClassReport> out;
  out.reserve(a.n_max());
  for (std::size_t n = 1; n <= a.n_max(); ++n) out.push_back(classify(a.row(n), cls, window));
  return out;
}

double ExactClassReport::constant() const noexcept {
  if (denominator == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(numerator) / static_cast<double>(denominator);
}

ExactClassReport classify_exact(std::span<const std::uint64_t> weights, SeqClass cls,
                                MeanWindow window) {
  if (weights.empty()) throw Error(ErrorKind::EmptyRow, "cannot classify an empty row");
  ExactClassReport report;
  report.label = cls;
  if (weights.size() == 1) return report;

  __extension__ typedef __int128 Wide;
  const std::size_t n = weights.size() - 1;
  auto diff = [&](std::size_t k) -> Wide {
    const auto a = static_cast<Wide>(weights[k]);
    const auto b = static_cast<Wide>(weights[k + 1]);
    return a > b ? a - b : b - a;
  };

  // Current best as a fraction best_num / best_den; best_den == 0 means +inf.
  Wide best_num = -1;
  Wide best_den = 1;
  bool have_best = false;
  for (std::size_t m = 0; m < n; ++m) {
    Wide lhs = 0;
    if (is_rest(cls)) {
      for (std::size_t k = m; k < n; ++k) lhs += diff(k);
    } else {
      for (std::size_t k = 0; k + 1 <= n - m; ++k) lhs += diff(k);
    }
    const auto [lo, hi] = rhs_range(cls, n, m, window);
    Wide rhs = 0;
    for (std::size_t k = lo; k <= hi; ++k) rhs += static_cast<Wide>(weights[k]);

    // ratio = lhs * (m+1) / rhs for mean classes, lhs / rhs otherwise.
    Wide num = is_mean(cls) ? lhs * static_cast<Wide>(m + 1) : lhs;
    Wide den = rhs;
    if (den == 0) {
      if (num == 0) {
        den = 1;
      }  // else +inf, den stays 0
    }

    bool better = false;
    if (!have_best) {
      better = true;
    } else if (best_den == 0) {
      better = false;
    } else if (den == 0) {
      better = true;
    } else {
      better = num * best_den > best_num * den;
    }
    if (better) {
      best_num = num;
      best_den = den;
      report.witness_m = m;
      have_best = true;
    }
  }

  report.in_class = best_den != 0;
  if (best_den != 0) {
    Wide g = std::gcd(static_cast<std::int64_t>(best_num), static_cast<std::int64_t>(best_den));
    if (g == 0) g = 1;
    report.numerator = static_cast<std::int64_t>(best_num / g);
    report.denominator = static_cast<std::int64_t>(best_den / g);
  } else {
    report.numerator = 1;
    report.denominator = 0;
  }
  return report;
}

std::optional<SeparatingWitness> find_separating_witness(SeqClass inside, SeqClass outside,
                                                         std::size_t length, std::size_t trials,
                                                         std::uint64_t seed) {
  const bool valid = (inside == SeqClass::mrbvs && outside == SeqClass::rbvs) ||
                     (inside == SeqClass::mhbvs && outside == SeqClass::hbvs);
  if (!valid) {
    throw Error(ErrorKind::InvalidClassPair,
                std::string(to_string(inside)) + " \\ " + std::string(to_string(outside)) +
                    " is not a separating pair; use MRBVS\\RBVS or MHBVS\\HBVS");
  }
  if (length < 3) throw Error(ErrorKind::InvalidParams, "witness rows need length >= 3");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> value(1, 15);
  std::uniform_int_distribution<std::size_t> interior(1, length - 2);
  std::bernoulli_distribution sparse(0.3);

  std::vector<std::uint64_t> weights(length);
  std::vector<double> row(length);
  for (std::size_t trial = 0; trial < trials; ++trial) {
    if (trial % 2 == 0) {
      for (auto& w : weights) w = sparse(rng) ? 0 : value(rng);
    } else {
      for (auto& w : weights) w = value(rng);
      weights[interior(rng)] = 0;
      if (length > 4 && sparse(rng)) weights[interior(rng)] = 0;
    }
    const std::uint64_t total = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    if (total == 0) continue;
    for (std::size_t k = 0; k < length; ++k) {
      row[k] = static_cast<double>(weights[k]) / static_cast<double>(total);
    }

    const auto in_report = classify(row, inside);
    if (!in_report.in_class) continue;
    const auto out_report = classify(row, outside);
    if (out_report.in_class) continue;

    const auto exact_in = classify_exact(weights, inside);
    const auto exact_out = classify_exact(weights, outside);
    if (!exact_in.in_class || exact_out.in_class) continue;

    return SeparatingWitness{row, weights, in_report, out_report, exact_in, exact_out, trial};
  }
  return std::nullopt;
}

TailGrowthReport tail_growth_constant(const SummabilityMatrix& a, TailMode mode) {
  TailGrowthReport report;
  for (std::size_t n = 1; n <= a.n_max(); ++n) {
    const auto tails = tail_sums(a, n);
    for (std::size_t k = 1; k <= n; ++k) {
      const double partial = mode == TailMode::forward ? tails.forward[k] : tails.backward[n - k];
      const double ratio = partial * static_cast<double>(n + 1) / static_cast<double>(k);
      if (ratio > report.constant) {
        report.constant = ratio;
        report.witness_n = n;
        report.witness_k = k;
      }
    }
  }
  report.holds = std::isfinite(report.constant);
  return report;
}

double norlund_tail_condition(const NorlundWeights& weights, std::size_t n) {
  if (weights.size() < n + 1) {
    throw Error(ErrorKind::InvalidParams, "weight sequence shorter than n + 1");
  }
  const auto cumulative = weights.cumulative();
  for (std::size_t v = 0; v <= n; ++v) {
    if (!(cumulative[v] > 0.0)) {
      throw Error(ErrorKind::ZeroCumulativeWeight, "P_" + std::to_string(v) + " = 0");
    }
  }
  double best = 0.0;
  CompensatedSum inverse_tail;
  for (std::size_t tau = n; tau >= 1; --tau) {
    inverse_tail.add(1.0 / cumulative[tau]);
    best = std::max(best, cumulative[tau] * inverse_tail.value() / static_cast<double>(tau));
  }
  return best;
}

}  // namespace fsum
