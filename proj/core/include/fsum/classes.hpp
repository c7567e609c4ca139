#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fsum/matrix.hpp"

namespace fsum {

/// Bounded-variation sequence classes for a finite row c_0..c_n.
///
/// With D(a, b) = sum_{k=a}^{b} |c_k - c_{k+1}| and 0 <= m < n:
///
///   rbvs   D(m, n-1)     <= K c_m
///   hbvs   D(0, n-m-1)   <= K c_{n-m}
///   mrbvs  D(m, n-1)     <= K/(m+1) sum_{k=ceil(m/2)}^{m} c_k
///   mhbvs  D(0, n-m-1)   <= K/(m+1) sum_{k=n-m}^{n} c_k
enum class SeqClass { rbvs, hbvs, mrbvs, mhbvs };

std::string_view to_string(SeqClass cls) noexcept;
std::optional<SeqClass> parse_seq_class(std::string_view text) noexcept;

/// Lower bound of the mean window in the mrbvs inequality. `ceil_half` reads
/// "k >= m/2" as k >= ceil(m/2); `floor_half` widens the window to floor(m/2).
enum class MeanWindow { ceil_half, floor_half };

struct ClassReport {
  SeqClass label = SeqClass::mrbvs;
  bool in_class = true;
  /// Smallest K for which every inequality holds; +inf when some right-hand
  /// side vanishes under a positive left-hand side.
  double constant = 0.0;
  std::size_t witness_m = 0;
};

/// Ratio convention: 0/0 = 0, x/0 = +inf for x > 0. Ties go to the smallest m.
/// Throws EmptyRow for an empty row. A single-entry row has no admissible m
/// and is reported in class with constant 0.
ClassReport classify(std::span<const double> row, SeqClass cls,
                     MeanWindow window = MeanWindow::ceil_half);

/// Classifies rows 1..n_max of a matrix (row 0 has no admissible m).
std::vector<ClassReport> classify_rows(const SummabilityMatrix& a, SeqClass cls,
                                       MeanWindow window = MeanWindow::ceil_half);

/// Exact verdict for rows given as integer weights (the normalised row is
/// weights / sum(weights); every ratio is scale invariant). The constant is the
/// reduced fraction numerator / denominator, or denominator == 0 for +inf.
struct ExactClassReport {
  SeqClass label = SeqClass::mrbvs;
  bool in_class = true;
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  std::size_t witness_m = 0;

  double constant() const noexcept;
};

ExactClassReport classify_exact(std::span<const std::uint64_t> weights, SeqClass cls,
                                MeanWindow window = MeanWindow::ceil_half);

struct SeparatingWitness {
  std::vector<double> row;
  std::vector<std::uint64_t> weights;
  ClassReport inside;
  ClassReport outside;
  ExactClassReport exact_inside;
  ExactClassReport exact_outside;
  std::size_t trial = 0;
};

/// Randomised search for a row in `inside` but not in `outside`. Only the pairs
/// (mrbvs, rbvs) and (mhbvs, hbvs) are accepted (InvalidClassPair otherwise);
/// length must be >= 3. Rows are small integer weight vectors, half of them
/// with forced interior zeros, and every hit is confirmed by classify_exact.
std::optional<SeparatingWitness> find_separating_witness(SeqClass inside, SeqClass outside,
                                                         std::size_t length, std::size_t trials,
                                                         std::uint64_t seed);

enum class TailMode { forward, backward };

struct TailGrowthReport {
  bool holds = true;
  double constant = 0.0;
  std::size_t witness_n = 0;
  std::size_t witness_k = 0;
};

/// max over n <= n_max, 1 <= k <= n of A_{n,k} (n+1)/k (forward) or
/// Abar_{n,n-k} (n+1)/k (backward). Measures how far the partial sums are
/// from growing like k/(n+1).
TailGrowthReport tail_growth_constant(const SummabilityMatrix& a, TailMode mode);

/// max over 1 <= tau <= n of P_tau * sum_{v=tau}^{n} (1/P_v) / tau.
/// Throws ZeroCumulativeWeight if some P_v vanishes for v <= n.
double norlund_tail_condition(const NorlundWeights& weights, std::size_t n);

}  // namespace fsum
