#include "fsum/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fsum/error.hpp"
#include "fsum/kernels.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

std::string_view to_string(BoundVariant v) noexcept {
  switch (v) {
    case BoundVariant::thm1: return "thm1";
    case BoundVariant::thm2: return "thm2";
    case BoundVariant::thm3_pos_beta: return "thm3-pos-beta";
    case BoundVariant::thm3_zero_beta: return "thm3-zero-beta";
    case BoundVariant::remark1: return "remark1";
  }
  return "?";
}

std::optional<BoundVariant> parse_bound_variant(std::string_view text) noexcept {
  for (auto v : {BoundVariant::thm1, BoundVariant::thm2, BoundVariant::thm3_pos_beta, BoundVariant::thm3_zero_beta,
                 BoundVariant::remark1}) {
    if (text == to_string(v)) return v;
  }
  return std::nullopt;
}

std::string_view to_string(Orientation o) noexcept { return o == Orientation::forward ? "forward" : "reversed"; }

std::optional<Orientation> parse_orientation(std::string_view text) noexcept {
  if (text == "forward") return Orientation::forward;
  if (text == "reversed") return Orientation::reversed;
  return std::nullopt;
}

double bound_value(const SummabilityMatrix& a, std::size_t n, const ModulusSpec& omega,
                   const ExperimentParams& params, BoundVariant variant, Orientation orientation) {
  const auto row = a.row(n);
  const double np1 = static_cast<double>(n + 1);
  const double p = params.p;
  const double beta = params.beta;

  double factor = 1.0;
  switch (variant) {
    case BoundVariant::thm1: factor = std::pow(np1, beta + 1.0 / p); break;
    case BoundVariant::thm2:
    case BoundVariant::thm3_pos_beta: factor = std::pow(np1, beta); break;
    case BoundVariant::thm3_zero_beta: factor = std::pow(np1, 1.0 / p); break;
    case BoundVariant::remark1: factor = beta > 0.0 ? std::pow(np1, beta) : std::pow(np1, 1.0 / p); break;
  }
  if (variant == BoundVariant::remark1) return factor * omega(kPi / np1);

  CompensatedSum s;
  for (std::size_t k = 0; k <= n; ++k) {
    const double weight = orientation == Orientation::forward ? row[k] : row[n - k];
    if (weight != 0.0) s.add(weight * omega(kPi / static_cast<double>(k + 1)));
  }
  return factor * s.value();
}

SlopeFit fit_loglog_slope(std::span<const std::size_t> ns, std::span<const double> errors, SlopeAxis axis,
                          double floor) {
  if (ns.size() != errors.size()) throw Error(ErrorKind::InvalidParams, "n and error columns differ in length");
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(errors[i] >= floor) || !std::isfinite(errors[i])) continue;
    if (axis == SlopeAxis::log_n && ns[i] == 0) continue;
    const double n = static_cast<double>(ns[i]);
    xs.push_back(std::log(axis == SlopeAxis::log_n ? n : n + 1.0));
    ys.push_back(std::log(errors[i]));
  }
  SlopeFit fit;
  fit.points = xs.size();
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  const double count = static_cast<double>(xs.size());
  double mean_x = 0.0;
  double mean_y = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mean_x += xs[i];
    mean_y += ys[i];
  }
  if (xs.size() >= 2) {
    mean_x /= count;
    mean_y /= count;
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mean_x) * (xs[i] - mean_x);
    sxy += (xs[i] - mean_x) * (ys[i] - mean_y);
  }
  if (xs.size() < 2 || !(sxx > 0.0)) {
    fit.degenerate = true;
    fit.slope = kNaN;
    fit.intercept = kNaN;
    fit.stderr_slope = kNaN;
    return fit;
  }
  fit.slope = sxy / sxx;
  fit.intercept = mean_y - fit.slope * mean_x;
  if (xs.size() > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - fit.intercept - fit.slope * xs[i];
      ssr += r * r;
    }
    fit.stderr_slope = std::sqrt(ssr / (count - 2.0) / sxx);
  }
  return fit;
}

std::vector<double> RateReport::ratios() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.ratio);
  return out;
}

namespace {

std::vector<std::size_t> normalized_n_list(std::span<const std::size_t> n_list, const SummabilityMatrix& a,
                                           const ExperimentOptions& options) {
  if (n_list.empty()) throw Error(ErrorKind::InvalidParams, "n_list must not be empty");
  std::vector<std::size_t> ns(n_list.begin(), n_list.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  const std::size_t top = ns.back();
  if (top > a.n_max()) {
    throw Error(ErrorKind::RowOutOfRange,
                "n = " + std::to_string(top) + " exceeds matrix n_max " + std::to_string(a.n_max()));
  }
  if (options.degree && top > *options.degree) {
    throw Error(ErrorKind::DegreeExceeded,
                "n = " + std::to_string(top) + " exceeds Fourier degree " + std::to_string(*options.degree));
  }
  return ns;
}

ClassCheck check_rows(const SummabilityMatrix& a, std::span<const std::size_t> ns, Orientation orientation) {
  ClassCheck check;
  check.label = orientation == Orientation::forward ? SeqClass::mrbvs : SeqClass::mhbvs;
  for (std::size_t n : ns) {
    const auto report = classify(a.row(n), check.label);
    check.worst_constant = std::max(check.worst_constant, report.constant);
    if (!report.in_class) {
      check.in_class = false;
      check.failing_rows.push_back(n);
    }
  }
  return check;
}

RateReport start_report(const PeriodicFunction& f, const SummabilityMatrix& a, const ModulusSpec& omega,
                        const ExperimentParams& params, BoundVariant variant, Orientation orientation) {
  RateReport report;
  report.matrix_name = a.name();
  report.function_name = f.name();
  report.modulus_label = omega.label();
  report.params = params;
  report.variant = variant;
  report.orientation = orientation;
  return report;
}

void finish_report(RateReport& report, const ExperimentOptions& options) {
  std::vector<std::size_t> ns;
  std::vector<double> errors;
  for (auto& row : report.rows) {
    row.ratio = row.bound > 0.0 ? row.error / row.bound : 0.0;
    ns.push_back(row.n);
    errors.push_back(row.error);
  }
  report.fit = fit_loglog_slope(ns, errors, options.axis);
  // Rows at the error floor are rounding noise and count as ratio 0.
  auto proxy = report.ratios();
  for (std::size_t i = 0; i < proxy.size(); ++i) {
    if (report.rows[i].error < kErrorFloor) proxy[i] = 0.0;
  }
  report.ratio_bounded = half_range_bounded(proxy, 2.0);
}

FourierCoefficients coefficients_for(const PeriodicFunction& f, std::size_t top, const ExperimentOptions& options) {
  const std::size_t degree = std::max<std::size_t>(top, 1);
  const std::size_t quad = std::max(options.quad_factor, std::size_t{4}) * degree;
  return coefficients(f, degree, quad);
}

}  // namespace

RateReport run_rate_experiment(const PeriodicFunction& f, const SummabilityMatrix& a, const ModulusSpec& omega,
                               const ExperimentParams& params, std::span<const std::size_t> n_list,
                               BoundVariant variant, Orientation orientation, const ExperimentOptions& options) {
  validate(params, &omega);
  const auto ns = normalized_n_list(n_list, a, options);
  RateReport report = start_report(f, a, omega, params, variant, orientation);
  report.class_check = check_rows(a, ns, orientation);

  const auto c = coefficients_for(f, ns.back(), options);
  const std::size_t quad = std::max(options.quad_factor, std::size_t{4}) * std::max<std::size_t>(ns.back(), 1);
  const std::size_t grid = std::max<std::size_t>(options.error_grid_factor, 1) * quad;
  const auto target = sample_on_grid(f, grid);

  report.rows.resize(ns.size());
  parallel_for(ns.size(), options.threads, [&](std::size_t i) {
    const std::size_t n = ns[i];
    auto approx = synthesize_on_grid(c, transform_multipliers(a, n), grid);
    for (std::size_t j = 0; j < grid; ++j) approx[j] -= target[j];
    RateRow& row = report.rows[i];
    row.n = n;
    row.error = lp_norm(approx, params.p);
    row.bound = bound_value(a, n, omega, params, variant, orientation);
  });
  finish_report(report, options);
  return report;
}

RateReport run_pointwise_experiment(const PeriodicFunction& f, const SummabilityMatrix& a,
                                    const ModulusSpec& omega, const ExperimentParams& params,
                                    std::span<const std::size_t> n_list, BoundVariant variant,
                                    Orientation orientation, const ExperimentOptions& options) {
  validate(params, &omega);
  if (!params.x) throw Error(ErrorKind::InvalidParams, "pointwise experiments need an evaluation point x");
  const double x = *params.x;
  const auto ns = normalized_n_list(n_list, a, options);
  RateReport report = start_report(f, a, omega, params, variant, orientation);
  report.x = x;
  report.class_check = check_rows(a, ns, orientation);

  const auto c = coefficients_for(f, ns.back(), options);
  const double fx = f(x);
  report.rows.resize(ns.size());
  parallel_for(ns.size(), options.threads, [&](std::size_t i) {
    const std::size_t n = ns[i];
    RateRow& row = report.rows[i];
    row.n = n;
    row.error = std::abs(a_transform(c, a, n, x) - fx);
    row.bound = bound_value(a, n, omega, params, variant, orientation);
  });
  finish_report(report, options);

  std::vector<ConditionId> ids;
  if (variant == BoundVariant::thm1) ids = {ConditionId::cell_sum, ConditionId::near_origin};
  if (variant == BoundVariant::thm2) ids = {ConditionId::cell_sum_strong, ConditionId::near_origin};
  std::vector<std::size_t> positive;
  for (std::size_t n : ns) {
    if (n > 0) positive.push_back(n);
  }
  if (!positive.empty()) {
    for (auto id : ids) {
      report.conditions.push_back(
          evaluate_condition(f, omega, params, id, std::nullopt, positive, options.quadrature));
    }
  }
  return report;
}

namespace {

// Composite Simpson on [lo, hi] with an even panel count.
template <typename Fn>
double simpson(Fn&& g, double lo, double hi, std::size_t panels) {
  panels += panels % 2;
  const double h = (hi - lo) / static_cast<double>(panels);
  CompensatedSum s;
  s.add(g(lo));
  s.add(g(hi));
  for (std::size_t i = 1; i < panels; ++i) {
    s.add((i % 2 == 1 ? 4.0 : 2.0) * g(lo + h * static_cast<double>(i)));
  }
  return s.value() * h / 3.0;
}

}  // namespace

ErrorSplit split_pointwise_error(const PeriodicFunction& f, const SummabilityMatrix& a, std::size_t n, double x,
                                 std::size_t quad_points) {
  if (n < 2) throw Error(ErrorKind::InvalidParams, "the near/far split needs n >= 2");
  if (n > a.n_max()) {
    throw Error(ErrorKind::RowOutOfRange,
                "row " + std::to_string(n) + " exceeds n_max " + std::to_string(a.n_max()));
  }
  const std::size_t panels = quad_points > 0 ? quad_points : std::max<std::size_t>(4096, 64 * n);
  const auto row = a.row(n);
  const double fx = f(x);
  auto integrand = [&](double t) {
    const double difference = f(x + t) + f(x - t) - 2.0 * fx;
    return difference == 0.0 ? 0.0 : difference * kernel_sum(row, t);
  };
  const double cut = kTwoPi / static_cast<double>(n);

  ErrorSplit split;
  split.near = simpson(integrand, 0.0, cut, panels) / kPi;
  split.far = simpson(integrand, cut, kPi, panels) / kPi;
  const auto c = coefficients(f, n, std::max<std::size_t>(16 * n, std::size_t{1} << 15));
  split.direct = a_transform(c, a, n, x) - fx;
  return split;
}

double corollary_beta(double p) noexcept { return std::min(0.25, 0.5 * (1.0 - 1.0 / p)); }

std::vector<CorollaryRow> corollary_suite(std::span<const double> alphas, std::span<const double> ps,
                                          std::span<const std::size_t> n_list, const CorollaryOptions& options) {
  if (options.family != "weierstrass" && options.family != "absx") {
    throw Error(ErrorKind::InvalidParams, "corollary family must be weierstrass or absx");
  }
  if (n_list.empty()) throw Error(ErrorKind::InvalidParams, "n_list must not be empty");
  // Reject the whole request before running anything.
  for (double alpha : alphas) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
      throw Error(ErrorKind::InvalidParams, "alpha must lie in (0, 1), got " + std::to_string(alpha));
    }
    for (double p : ps) {
      if (!(p > 1.0) || !std::isfinite(p)) {
        throw Error(ErrorKind::InvalidParams, "p must lie in (1, inf), got " + std::to_string(p));
      }
      const double beta = options.beta.value_or(corollary_beta(p));
      if (!(beta > 0.0 && beta < 1.0 - 1.0 / p)) {
        throw Error(ErrorKind::InvalidParams, "beta must lie in (0, 1 - 1/p)");
      }
      if (alpha + beta > 1.0) {
        throw Error(ErrorKind::InvalidParams, "require alpha + beta <= 1 (got alpha=" + std::to_string(alpha) +
                                                  ", beta=" + std::to_string(beta) + ")");
      }
    }
  }

  const std::size_t top = *std::max_element(n_list.begin(), n_list.end());
  const auto fejer = fejer_matrix(top);
  std::vector<CorollaryRow> rows;
  for (double alpha : alphas) {
    const auto f = options.family == "absx" ? make_abs_power(alpha) : make_weierstrass(alpha);
    for (double p : ps) {
      CorollaryRow row;
      row.alpha = alpha;
      row.p = p;
      row.beta = options.beta.value_or(corollary_beta(p));
      ExperimentParams params;
      params.p = p;
      params.beta = row.beta;
      const auto omega = ModulusSpec::power(alpha + row.beta);
      row.report = run_rate_experiment(f, fejer, omega, params, n_list, BoundVariant::thm3_pos_beta,
                                       Orientation::forward, options.experiment);
      row.slope = row.report.fit.slope;
      row.stderr_slope = row.report.fit.stderr_slope;
      row.lower = -alpha - options.slope_tolerance;
      row.upper = -alpha + options.slope_tolerance;
      row.pass = !row.report.fit.degenerate && row.slope >= row.lower && row.slope <= row.upper;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<SummabilityMatrix> shipped_matrices(std::size_t n_max) {
  std::vector<SummabilityMatrix> out;
  out.push_back(fejer_matrix(n_max));
  out.push_back(lal_matrix(NorlundWeights::ones(n_max + 1), n_max));
  out.push_back(lal_matrix(NorlundWeights::harmonic(n_max + 1), n_max));
  out.push_back(norlund_matrix(NorlundWeights::linear(n_max + 1), n_max));
  return out;
}

std::vector<SuiteEntry> shipped_rate_suite(std::span<const std::size_t> n_list, double p,
                                           const ExperimentOptions& options) {
  if (n_list.empty()) throw Error(ErrorKind::InvalidParams, "n_list must not be empty");
  const std::size_t top = *std::max_element(n_list.begin(), n_list.end());
  const auto matrices = shipped_matrices(top);
  const auto members = corpus();
  std::vector<SuiteEntry> out;
  for (const auto& a : matrices) {
    for (const auto& f : members) {
      const auto alpha = f.lipschitz_alpha();
      if (!alpha) continue;
      ExperimentParams params;
      params.p = p;
      params.beta = std::min(corollary_beta(p), 1.0 - *alpha);
      const auto variant = params.beta > 0.0 ? BoundVariant::thm3_pos_beta : BoundVariant::thm3_zero_beta;
      const auto omega = ModulusSpec::power(*alpha + params.beta);
      SuiteEntry entry;
      entry.report = run_rate_experiment(f, a, omega, params, n_list, variant, Orientation::forward, options);
      entry.matrix_verified = entry.report.class_check.in_class;
      out.push_back(std::move(entry));
    }
  }
  return out;
}

std::vector<std::size_t> geometric_range(std::size_t n0, std::size_t n1) {
  if (n0 == 0 || n1 < n0) throw Error(ErrorKind::InvalidParams, "geometric range needs 0 < n0 <= n1");
  std::vector<std::size_t> out;
  for (std::size_t n = n0; n <= n1; n *= 2) out.push_back(n);
  return out;
}

}  // namespace fsum
