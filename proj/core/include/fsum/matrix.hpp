#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace fsum {

/// Row-sum tolerance enforced on every matrix the library hands out.
inline constexpr double kRowSumTolerance = 1e-12;

/// Lower-triangular, row-stochastic weight table a[n][k], 0 <= k <= n <= n_max.
///
/// Entries above the diagonal are not stored; operator() returns 0 for them.
/// Instances are immutable and validated at construction.
class SummabilityMatrix {
 public:
  /// Takes ragged rows where rows[n].size() == n + 1. Throws InvalidMatrix when
  /// the shape is wrong, an entry is negative or non-finite, or a row does not
  /// sum to 1 within kRowSumTolerance.
  static SummabilityMatrix from_rows(const std::vector<std::vector<double>>& rows, std::string name);

  std::size_t n_max() const noexcept { return n_max_; }
  const std::string& name() const noexcept { return name_; }

  /// Row n as a span of length n + 1. Throws RowOutOfRange.
  std::span<const double> row(std::size_t n) const;

  /// a[n][k], zero for k > n. Throws RowOutOfRange for n > n_max.
  double operator()(std::size_t n, std::size_t k) const;

 private:
  SummabilityMatrix(std::vector<double> packed, std::size_t n_max, std::string name);

  static std::size_t offset(std::size_t n) noexcept { return n * (n + 1) / 2; }

  std::vector<double> packed_;
  std::size_t n_max_ = 0;
  std::string name_;
};

/// Weight sequence p_0, p_1, ... together with its partial sums P_v.
class NorlundWeights {
 public:
  /// Throws InvalidParams on negative or non-finite entries or an empty sequence.
  NorlundWeights(std::vector<double> p, std::string name);

  static NorlundWeights ones(std::size_t length);
  /// p_v = 1 / (v + 1)
  static NorlundWeights harmonic(std::size_t length);
  /// p_v = ratio^v
  static NorlundWeights geometric(std::size_t length, double ratio = 0.5);
  /// p_v = v + 1
  static NorlundWeights linear(std::size_t length);

  std::size_t size() const noexcept { return p_.size(); }
  std::span<const double> p() const noexcept { return p_; }
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  const std::string& name() const noexcept { return name_; }

  bool nonincreasing() const noexcept;

 private:
  std::vector<double> p_;
  std::vector<double> cumulative_;
  std::string name_;
};

SummabilityMatrix fejer_matrix(std::size_t n_max);

/// a[n][k] = (1/(n+1)) * sum_{v=k}^{n} p_{v-k} / P_v.
/// Throws ZeroCumulativeWeight if some P_v = 0 for v <= n_max and InvalidParams
/// if the weights are shorter than n_max + 1.
SummabilityMatrix lal_matrix(const NorlundWeights& weights, std::size_t n_max);

/// Classical Norlund mean a[n][k] = p_{n-k} / P_n.
SummabilityMatrix norlund_matrix(const NorlundWeights& weights, std::size_t n_max);

struct TailSums {
  std::vector<double> forward;   // A_{n,m} = sum_{k<=m} a[n][k]
  std::vector<double> backward;  // Abar_{n,m} = sum_{k>=m} a[n][k]
};

/// Both are compensated cumulative sums of length n + 1. Throws RowOutOfRange.
TailSums tail_sums(const SummabilityMatrix& a, std::size_t n);

// CSV interchange: matrices as `n,k,a` triples, weights as `nu,p`.
void write_matrix_csv(const SummabilityMatrix& a, const std::filesystem::path& path);
SummabilityMatrix read_matrix_csv(const std::filesystem::path& path);
void write_weights_csv(const NorlundWeights& w, const std::filesystem::path& path);
NorlundWeights read_weights_csv(const std::filesystem::path& path);

}  // namespace fsum
