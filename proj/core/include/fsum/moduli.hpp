#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fsum/fourier.hpp"

namespace fsum {

enum class ModulusFamily { power, power_log, table };

/// A function of modulus-of-continuity type on [0, 2pi]:
///   power      w(d) = d^a
///   power_log  w(d) = d^a (1/a + log(2pi/d)), concave and nondecreasing on [0, 2pi]
///   table      piecewise-linear through user (d, w) pairs, constant past the last node
class ModulusSpec {
 public:
  static ModulusSpec power(double alpha);
  static ModulusSpec power_log(double alpha);
  static ModulusSpec from_table(std::vector<std::pair<double, double>> table);

  double operator()(double delta) const;

  ModulusFamily family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }
  const std::vector<std::pair<double, double>>& table() const noexcept { return table_; }
  /// "power:0.5", "powerlog:0.5" or "table".
  std::string label() const;

 private:
  ModulusFamily family_ = ModulusFamily::power;
  double alpha_ = 1.0;
  std::vector<std::pair<double, double>> table_;
};

/// Parses "power:a" or "powerlog:a".
ModulusSpec parse_modulus(std::string_view spec);
/// `delta,omega` CSV.
ModulusSpec read_modulus_csv(const std::filesystem::path& path);

struct ModulusCheck {
  bool zero_at_origin = false;
  bool nondecreasing = false;
  bool subadditive = false;

  bool ok() const noexcept { return zero_at_origin && nondecreasing && subadditive; }
};

/// Checks w(0) = 0, monotonicity on a `grid`-point mesh of [0, 2pi], and
/// w(d1 + d2) <= w(d1) + w(d2) + tol on the triangle d1 <= d2, d1 + d2 <= 2pi.
ModulusCheck check_modulus(const ModulusSpec& omega, std::size_t grid = 64, double tol = 1e-10);

/// Which x-range the generalized modulus integrates over.
enum class Domain { half, full };

std::string_view to_string(Domain d) noexcept;
std::optional<Domain> parse_domain(std::string_view text) noexcept;

struct ExperimentParams {
  double p = 2.0;
  double beta = 0.0;
  std::optional<double> x;
  /// Accept beta >= 1 - 1/p (and p = 1) provided t^{-beta} w(t) is
  /// nondecreasing for the modulus in use.
  bool allow_large_beta = false;

  /// Conjugate exponent p/(p-1); +inf for p = 1.
  double q() const noexcept;
};

/// Throws InvalidParams unless 1 < p < inf and 0 <= beta < 1 - 1/p. With
/// allow_large_beta, p >= 1 and any beta >= 0 are accepted once t^{-beta} w(t)
/// is confirmed nondecreasing on a grid of (0, 2pi] (requires `omega`).
void validate(const ExperimentParams& params, const ModulusSpec* omega = nullptr);

/// f(x + t) + f(x - t) - 2 f(x).
double phi(const PeriodicFunction& f, double x, double t);

struct SmoothnessOptions {
  std::size_t t_grid = 2048;
  std::size_t x_quad = 2048;
  Domain domain = Domain::full;
  unsigned threads = 1;
};

/// Caches I(t)^{1/p}, I(t) = int |phi_x(t)|^p dx, on a fixed t-set so that the
/// generalized modulus
///   w_beta f(d) = sup_{0 <= t <= d} |sin(t/2)|^beta I(t)^{1/p}
/// can be read off for many (beta, d). The t-set is a uniform mesh of
/// [0, t_max] joined with the points pi/m and any caller-supplied points, so
/// the result is nondecreasing in d and nonincreasing in beta by construction.
class SmoothnessProfile {
 public:
  SmoothnessProfile(const PeriodicFunction& f, double p, double t_max, std::span<const double> extra_points,
                    const SmoothnessOptions& options);

  double omega(double beta, double delta) const;

  std::span<const double> t_points() const noexcept { return t_; }
  std::span<const double> root_integrals() const noexcept { return root_integral_; }
  Domain domain() const noexcept { return domain_; }

 private:
  std::vector<double> t_;
  std::vector<double> root_integral_;
  Domain domain_;
};

/// w_beta f(d)_{L^p}. Throws InvalidDelta outside [0, 2pi]; returns 0 at d = 0.
double omega_beta(const PeriodicFunction& f, double delta, const ExperimentParams& params,
                  const SmoothnessOptions& options = {});

struct MembershipRow {
  double delta = 0.0;
  double omega_beta = 0.0;
  double omega = 0.0;
  double ratio = 0.0;
};

struct MembershipReport {
  double constant = 0.0;
  double witness_delta = 0.0;
  Domain domain = Domain::full;
  std::vector<MembershipRow> rows;
};

/// max over a log-spaced grid of `delta_points` deltas in [delta_min, delta_max]
/// of w_beta f(d) / w(d). Throws ZeroModulus if w vanishes at a grid delta.
MembershipReport membership_constant(const PeriodicFunction& f, const ModulusSpec& omega,
                                     const ExperimentParams& params, std::size_t delta_points,
                                     const SmoothnessOptions& options = {}, double delta_min = 1e-3,
                                     double delta_max = 3.141592653589793);

/// Integral conditions on f at a point x, each measured as lhs(n) / rhs_scale(n):
///   cell_sum        (2.6)  sum_{m<=n} (m+1)^{beta+1-2/q} J_m^{1/p}    vs (n+1)^{beta+1/p}
///   near_origin     (2.7)  (int_0^{2pi/n} g)^{1/p}                     vs (n+1)^{-1/p}
///   cell_sum_strong (2.8)  same sum as cell_sum                        vs (n+1)^{beta}
///   weighted_tail   (Q)    (int_{pi/(n+1)}^{pi} g / t^{gamma p})^{1/p} vs (n+1)^{gamma}
/// with g(t) = (|phi_x(t)| / w(t))^p sin^{beta p}(t/2) and J_m the integral of
/// g over [pi/(m+1), pi/m].
enum class ConditionId { cell_sum, near_origin, cell_sum_strong, weighted_tail };

/// External labels "2.6", "2.7", "2.8", "Q".
std::string_view to_string(ConditionId id) noexcept;
std::optional<ConditionId> parse_condition(std::string_view text) noexcept;

struct ConditionRow {
  std::size_t n = 0;
  double lhs = 0.0;
  double rhs_scale = 0.0;
  double ratio = 0.0;
};

struct ConditionReport {
  ConditionId id = ConditionId::cell_sum;
  double x = 0.0;
  std::optional<double> gamma;
  std::vector<ConditionRow> per_n;
  double implied_constant = 0.0;

  std::vector<double> ratios() const;
};

struct QuadratureOptions {
  /// Absolute tolerance per unit length of integration interval.
  double tolerance_per_width = 1e-10;
  double relative_tolerance = 1e-9;
  std::size_t max_depth = 30;
};

/// beta + 1/(2p), the midpoint of the admissible gamma range.
double default_gamma(const ExperimentParams& params) noexcept;

/// Requires params.x. For weighted_tail, gamma defaults to default_gamma and
/// must satisfy 0 <= gamma < beta + 1/p (InvalidGamma). Throws
/// QuadratureFailure on a non-finite integrand and ZeroModulus if w(t) = 0 for
/// some t > 0 that is visited.
ConditionReport evaluate_condition(const PeriodicFunction& f, const ModulusSpec& omega,
                                   const ExperimentParams& params, ConditionId id,
                                   std::optional<double> gamma, std::span<const std::size_t> n_list,
                                   const QuadratureOptions& quad = {});

/// Pairs weighted_tail with cell_sum on identical inputs. The implication
/// holds when a bounded weighted_tail (half-range proxy, factor 2) comes with
/// a bounded cell_sum.
struct TailImplication {
  ConditionReport weighted_tail;
  ConditionReport cell_sum;
  bool tail_bounded = false;
  bool cell_sum_bounded = false;

  bool holds() const noexcept { return !tail_bounded || cell_sum_bounded; }
};

TailImplication check_tail_implication(const PeriodicFunction& f, const ModulusSpec& omega,
                                       const ExperimentParams& params, std::optional<double> gamma,
                                       std::span<const std::size_t> n_list, const QuadratureOptions& quad = {});

}  // namespace fsum
