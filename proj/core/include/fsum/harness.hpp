#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fsum/classes.hpp"
#include "fsum/fourier.hpp"
#include "fsum/matrix.hpp"
#include "fsum/moduli.hpp"

namespace fsum {

/// Which bound expression an experiment is measured against. With
/// S = sum_k a_{n,k} w(pi/(k+1)):
///   thm1            (n+1)^{beta+1/p} S
///   thm2            (n+1)^{beta} S
///   thm3_pos_beta   (n+1)^{beta} S
///   thm3_zero_beta  (n+1)^{1/p} S
///   remark1         the thm3 factor for this beta times w(pi/(n+1))
enum class BoundVariant { thm1, thm2, thm3_pos_beta, thm3_zero_beta, remark1 };

std::string_view to_string(BoundVariant v) noexcept;
std::optional<BoundVariant> parse_bound_variant(std::string_view text) noexcept;

/// forward pairs a_{n,k} with w(pi/(k+1)) (mean-rest rows); reversed pairs
/// a_{n,n-k} with it (mean-head rows).
enum class Orientation { forward, reversed };

std::string_view to_string(Orientation o) noexcept;
std::optional<Orientation> parse_orientation(std::string_view text) noexcept;

/// Throws RowOutOfRange for n > n_max.
double bound_value(const SummabilityMatrix& a, std::size_t n, const ModulusSpec& omega,
                   const ExperimentParams& params, BoundVariant variant, Orientation orientation);

/// Abscissa for the log-log fit.
enum class SlopeAxis { log_n, log_n_plus_1 };

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  std::size_t points = 0;
  /// Fewer than two usable points: slope and stderr are NaN.
  bool degenerate = false;
};

inline constexpr double kErrorFloor = 1e-13;

/// Ordinary least squares of log(error) on log(n) or log(n+1), skipping
/// errors below `floor` and n = 0 on the log_n axis.
SlopeFit fit_loglog_slope(std::span<const std::size_t> ns, std::span<const double> errors,
                          SlopeAxis axis = SlopeAxis::log_n_plus_1, double floor = kErrorFloor);

struct RateRow {
  std::size_t n = 0;
  double error = 0.0;
  double bound = 0.0;
  /// error / bound, or 0 when the bound vanishes.
  double ratio = 0.0;
};

/// Row-class verdict for the rows an experiment touched.
struct ClassCheck {
  SeqClass label = SeqClass::mrbvs;
  bool in_class = true;
  double worst_constant = 0.0;
  std::vector<std::size_t> failing_rows;
};

struct RateReport {
  std::string matrix_name;
  std::string function_name;
  std::string modulus_label;
  ExperimentParams params;
  BoundVariant variant = BoundVariant::thm3_pos_beta;
  Orientation orientation = Orientation::forward;
  /// Set for pointwise experiments.
  std::optional<double> x;
  std::vector<RateRow> rows;
  SlopeFit fit;
  ClassCheck class_check;
  /// Half-range proxy (factor 2) on the ratio column; rows with error below
  /// kErrorFloor enter it as 0.
  bool ratio_bounded = false;
  /// Pointwise runs only: the integral conditions matching the variant.
  std::vector<ConditionReport> conditions;

  bool degenerate() const noexcept { return fit.degenerate; }
  std::vector<double> ratios() const;
};

struct ExperimentOptions {
  /// Coefficient quadrature uses quad_factor * max(n_list) nodes.
  std::size_t quad_factor = 16;
  /// The L^p error is measured on error_grid_factor times as many nodes.
  std::size_t error_grid_factor = 2;
  /// Cap on the Fourier degree; max(n_list) above it is DegreeExceeded.
  std::optional<std::size_t> degree;
  SlopeAxis axis = SlopeAxis::log_n_plus_1;
  unsigned threads = 1;
  QuadratureOptions quadrature;
};

/// ||T_{n,A} f - f||_p for each n in n_list against bound_value. Row-class
/// failures are reported in class_check, not thrown.
RateReport run_rate_experiment(const PeriodicFunction& f, const SummabilityMatrix& a, const ModulusSpec& omega,
                               const ExperimentParams& params, std::span<const std::size_t> n_list,
                               BoundVariant variant, Orientation orientation,
                               const ExperimentOptions& options = {});

/// |T_{n,A} f(x) - f(x)| at x = params.x. thm1 attaches the cell_sum and
/// near_origin conditions, thm2 attaches cell_sum_strong and near_origin.
RateReport run_pointwise_experiment(const PeriodicFunction& f, const SummabilityMatrix& a,
                                    const ModulusSpec& omega, const ExperimentParams& params,
                                    std::span<const std::size_t> n_list, BoundVariant variant,
                                    Orientation orientation, const ExperimentOptions& options = {});

/// T_{n,A} f(x) - f(x) = (1/pi) int_0^pi phi_x(t) K_n(t) dt split at 2pi/n,
/// K_n = sum_k a_{n,k} D_k. `direct` is the same quantity from Fourier
/// coefficients.
struct ErrorSplit {
  double near = 0.0;
  double far = 0.0;
  double direct = 0.0;

  double total() const noexcept { return near + far; }
};

/// Requires 2 <= n <= n_max.
ErrorSplit split_pointwise_error(const PeriodicFunction& f, const SummabilityMatrix& a, std::size_t n, double x,
                                 std::size_t quad_points = 0);

/// Default beta for power-rate runs: min(0.25, (1 - 1/p) / 2).
double corollary_beta(double p) noexcept;

struct CorollaryRow {
  double alpha = 0.0;
  double p = 0.0;
  double beta = 0.0;
  double slope = 0.0;
  double stderr_slope = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  bool pass = false;
  RateReport report;
};

struct CorollaryOptions {
  /// "weierstrass" (default) or "absx".
  std::string family = "weierstrass";
  double slope_tolerance = 0.1;
  std::optional<double> beta;
  ExperimentOptions experiment;
};

/// Fejer means of the chosen Lip alpha family with w = d^{alpha+beta}; each
/// row passes when the fitted slope lies within slope_tolerance of -alpha.
/// Throws InvalidParams for alpha outside (0, 1), p outside (1, inf) or
/// alpha + beta > 1.
std::vector<CorollaryRow> corollary_suite(std::span<const double> alphas, std::span<const double> ps,
                                          std::span<const std::size_t> n_list,
                                          const CorollaryOptions& options = {});

/// Fejer, Lal(ones), Lal(harmonic) and Norlund(linear), in that order.
std::vector<SummabilityMatrix> shipped_matrices(std::size_t n_max);

struct SuiteEntry {
  RateReport report;
  /// Matrix rows verified mean-rest bounded over n_list.
  bool matrix_verified = false;
};

/// Every shipped matrix against every corpus member with a known exponent a,
/// using beta = min(corollary_beta(p), 1 - a) and w = d^{a+beta}.
std::vector<SuiteEntry> shipped_rate_suite(std::span<const std::size_t> n_list, double p = 2.0,
                                           const ExperimentOptions& options = {});

/// n0, 2 n0, 4 n0, ... up to and including n1 when it lies on the progression.
std::vector<std::size_t> geometric_range(std::size_t n0, std::size_t n1);

}  // namespace fsum
