#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fsum/matrix.hpp"

namespace fsum {

/// Values of a function on the uniform grid x0 + j * 2pi / size, j < size.
struct SampleGrid {
  double x0 = 0.0;
  std::vector<double> values;

  double spacing() const noexcept;
};

/// A 2pi-periodic real function given either by a closure on [-pi, pi) or by
/// samples on a uniform grid (linearly interpolated between nodes).
class PeriodicFunction {
 public:
  using Evaluator = std::function<double(double)>;

  /// `eval` only ever sees arguments reduced into [-pi, pi).
  PeriodicFunction(std::string name, Evaluator eval, std::optional<double> lipschitz_alpha = std::nullopt,
                   std::string description = {});

  static PeriodicFunction from_samples(std::string name, SampleGrid grid);

  double operator()(double x) const;

  const std::string& name() const noexcept { return name_; }
  const std::string& description() const noexcept { return description_; }
  /// Known Lipschitz exponent (sup-norm sense), if any.
  std::optional<double> lipschitz_alpha() const noexcept { return alpha_; }
  const std::optional<SampleGrid>& samples() const noexcept { return samples_; }

 private:
  std::string name_;
  std::string description_;
  Evaluator eval_;
  std::optional<double> alpha_;
  std::optional<SampleGrid> samples_;
};

/// Reads a `x,f` CSV covering one period on a uniform grid (spacing tolerance
/// 1e-9). A trailing node at x0 + 2pi duplicating the first is dropped.
/// Throws InvalidGrid on non-uniform or non-periodic grids.
PeriodicFunction load_function_csv(const std::filesystem::path& path);
void write_function_csv(const PeriodicFunction& f, std::size_t points, const std::filesystem::path& path);

struct FourierCoefficients {
  double a0 = 0.0;
  std::vector<double> cosine;  // a_1..a_N
  std::vector<double> sine;    // b_1..b_N

  std::size_t degree() const noexcept { return cosine.size(); }
  double a(std::size_t v) const { return v == 0 ? a0 : cosine.at(v - 1); }
  double b(std::size_t v) const { return v == 0 ? 0.0 : sine.at(v - 1); }
};

/// Periodic trapezoid rule on quad_points nodes over [-pi, pi). Sampled
/// functions use their own nodes instead and need at least 4N samples.
/// Throws InsufficientResolution if the node count is below 4N.
FourierCoefficients coefficients(const PeriodicFunction& f, std::size_t degree, std::size_t quad_points);

/// S_k f(x). Throws DegreeExceeded when k > degree.
double partial_sum(const FourierCoefficients& c, std::size_t k, double x);

/// T_{n,A} f(x) in multiplier form: a0/2 + sum_{v=1}^{n} Abar_{n,v} (a_v cos vx + b_v sin vx).
double a_transform(const FourierCoefficients& c, const SummabilityMatrix& a, std::size_t n, double x);

/// T_{n,A} f(x) as the explicit weighted sum of partial sums; O(n^2), used as
/// an oracle for a_transform.
double a_transform_direct(const FourierCoefficients& c, const SummabilityMatrix& a, std::size_t n, double x);

/// Multipliers Abar_{n,v}, v = 0..n (Abar_{n,0} = 1).
std::vector<double> transform_multipliers(const SummabilityMatrix& a, std::size_t n);

/// a0/2 + sum_{v=1}^{L} w_v (a_v cos v x_j + b_v sin v x_j) on x_j = -pi + 2pi j / points,
/// where L = weights.size() - 1 (weights[0] is ignored). Throws DegreeExceeded.
std::vector<double> synthesize_on_grid(const FourierCoefficients& c, std::span<const double> weights,
                                       std::size_t points);

/// Samples f on x_j = -pi + 2pi j / points.
std::vector<double> sample_on_grid(const PeriodicFunction& f, std::size_t points);

/// (int_{-pi}^{pi} |g|^p)^{1/p} by the periodic trapezoid rule. Throws
/// InvalidExponent if p < 1 or p is not finite.
double lp_norm(const PeriodicFunction& g, double p, std::size_t quad_points);
/// Same for values already sampled on a uniform grid over one period.
double lp_norm(std::span<const double> values, double p);

/// Named test functions: periodised |x|^a, Weierstrass-type sums, cos x,
/// sin 3x, a constant, and a piecewise-linear hat.
std::vector<PeriodicFunction> corpus();

/// |x|^alpha on [-pi, pi), extended periodically.
PeriodicFunction make_abs_power(double alpha);
/// sum_{j=0}^{terms-1} 2^{-j alpha} cos(2^j x).
PeriodicFunction make_weierstrass(double alpha, std::size_t terms = 13);
PeriodicFunction make_constant(double value);
PeriodicFunction make_hat();

/// Looks up a corpus member by name, accepting parametrised forms such as
/// `absx:0.5` or `weierstrass:0.3`. Throws ParseError on unknown names.
PeriodicFunction function_by_name(const std::string& spec);

}  // namespace fsum
