#include "fsum/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "csv.hpp"
#include "fsum/error.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

// ---------------------------------------------------------------------------
// Modulus-type functions

ModulusSpec ModulusSpec::power(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidModulus, "power modulus needs a positive exponent");
  }
  ModulusSpec w;
  w.family_ = ModulusFamily::power;
  w.alpha_ = alpha;
  return w;
}

ModulusSpec ModulusSpec::power_log(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidModulus, "power-log modulus needs an exponent in (0, 1]");
  }
  ModulusSpec w;
  w.family_ = ModulusFamily::power_log;
  w.alpha_ = alpha;
  return w;
}

ModulusSpec ModulusSpec::from_table(std::vector<std::pair<double, double>> table) {
  std::sort(table.begin(), table.end());
  if (table.empty() || table.front().first > 0.0) table.insert(table.begin(), {0.0, 0.0});
  for (const auto& [d, v] : table) {
    if (!std::isfinite(d) || !std::isfinite(v) || d < 0.0 || v < 0.0) {
      throw Error(ErrorKind::InvalidModulus, "modulus table entries must be finite and nonnegative");
    }
  }
  for (std::size_t i = 1; i < table.size(); ++i) {
    if (table[i].first == table[i - 1].first) {
      throw Error(ErrorKind::InvalidModulus, "duplicate delta in modulus table");
    }
  }
  ModulusSpec w;
  w.family_ = ModulusFamily::table;
  w.alpha_ = 0.0;
  w.table_ = std::move(table);
  return w;
}

double ModulusSpec::operator()(double delta) const {
  if (delta <= 0.0) {
    if (family_ == ModulusFamily::table) return table_.front().second;
    return 0.0;
  }
  switch (family_) {
    case ModulusFamily::power:
      return std::pow(delta, alpha_);
    case ModulusFamily::power_log:
      return std::pow(delta, alpha_) * (1.0 / alpha_ + std::log(kTwoPi / delta));
    case ModulusFamily::table: {
      const auto it = std::upper_bound(table_.begin(), table_.end(), delta,
                                       [](double d, const auto& entry) { return d < entry.first; });
      if (it == table_.end()) return table_.back().second;
      const auto& hi = *it;
      const auto& lo = *(it - 1);
      const double s = (delta - lo.first) / (hi.first - lo.first);
      return lo.second + s * (hi.second - lo.second);
    }
  }
  return 0.0;
}

std::string ModulusSpec::label() const {
  char buf[48];
  switch (family_) {
    case ModulusFamily::power:
      std::snprintf(buf, sizeof buf, "power:%g", alpha_);
      return buf;
    case ModulusFamily::power_log:
      std::snprintf(buf, sizeof buf, "powerlog:%g", alpha_);
      return buf;
    case ModulusFamily::table:
      return "table";
  }
  return "?";
}

ModulusSpec parse_modulus(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw Error(ErrorKind::ParseError, "modulus spec must look like power:a or powerlog:a");
  }
  const std::string_view head = spec.substr(0, colon);
  const double alpha = detail::parse_double(spec.substr(colon + 1), "modulus '" + std::string(spec) + "'");
  if (head == "power") return ModulusSpec::power(alpha);
  if (head == "powerlog") return ModulusSpec::power_log(alpha);
  throw Error(ErrorKind::ParseError, "unknown modulus family '" + std::string(head) + "'");
}

ModulusSpec read_modulus_csv(const std::filesystem::path& path) {
  const auto rows = detail::read_numeric_csv(path, "delta,omega");
  std::vector<std::pair<double, double>> table;
  table.reserve(rows.size());
  for (const auto& r : rows) table.emplace_back(r[0], r[1]);
  return ModulusSpec::from_table(std::move(table));
}

ModulusCheck check_modulus(const ModulusSpec& omega, std::size_t grid, double tol) {
  ModulusCheck check;
  check.zero_at_origin = omega(0.0) == 0.0;
  const auto mesh = linspace(0.0, kTwoPi, std::max<std::size_t>(grid, 2));
  check.nondecreasing = true;
  for (std::size_t i = 1; i < mesh.size(); ++i) {
    if (omega(mesh[i]) + tol < omega(mesh[i - 1])) check.nondecreasing = false;
  }
  check.subadditive = true;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (std::size_t j = i; i + j < mesh.size(); ++j) {
      const double d1 = mesh[i];
      const double d2 = mesh[j];
      if (omega(d1 + d2) > omega(d1) + omega(d2) + tol) check.subadditive = false;
    }
  }
  return check;
}

std::string_view to_string(Domain d) noexcept { return d == Domain::half ? "half" : "full"; }

std::optional<Domain> parse_domain(std::string_view text) noexcept {
  if (text == "half") return Domain::half;
  if (text == "full") return Domain::full;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Parameters

double ExperimentParams::q() const noexcept {
  if (p == 1.0) return std::numeric_limits<double>::infinity();
  return p / (p - 1.0);
}

void validate(const ExperimentParams& params, const ModulusSpec* omega) {
  const double p = params.p;
  const double beta = params.beta;
  auto fail = [&](const std::string& why) {
    char buf[96];
    std::snprintf(buf, sizeof buf, " (got p=%g, beta=%g)", p, beta);
    throw Error(ErrorKind::InvalidParams, why + buf);
  };
  if (!std::isfinite(p) || !std::isfinite(beta)) fail("p and beta must be finite");
  if (params.x && !std::isfinite(*params.x)) fail("x must be finite");
  if (beta < 0.0) fail("beta must be nonnegative");
  if (!params.allow_large_beta) {
    if (!(p > 1.0)) fail("require 1 < p < inf");
    if (!(beta < 1.0 - 1.0 / p)) fail("require 0 <= beta < 1 - 1/p with q = p/(p-1)");
    return;
  }
  if (!(p >= 1.0)) fail("require 1 <= p < inf");
  if (omega == nullptr) fail("allow_large_beta needs a modulus to check t^{-beta} w(t)");
  const auto mesh = linspace(kTwoPi / 64.0, kTwoPi, 64);
  double previous = -std::numeric_limits<double>::infinity();
  for (double t : mesh) {
    const double v = std::pow(t, -beta) * (*omega)(t);
    if (v + 1e-12 * std::abs(v) < previous) fail("t^{-beta} w(t) is not nondecreasing for this modulus");
    previous = v;
  }
}

double phi(const PeriodicFunction& f, double x, double t) { return f(x + t) + f(x - t) - 2.0 * f(x); }

// ---------------------------------------------------------------------------
// Generalized modulus

SmoothnessProfile::SmoothnessProfile(const PeriodicFunction& f, double p, double t_max,
                                     std::span<const double> extra_points, const SmoothnessOptions& options)
    : domain_(options.domain) {
  if (!std::isfinite(p) || p < 1.0) throw Error(ErrorKind::InvalidExponent, "need 1 <= p < inf");
  if (!(t_max >= 0.0) || t_max > kTwoPi + 1e-12) {
    throw Error(ErrorKind::InvalidDelta, "t_max must lie in [0, 2pi]");
  }
  if (options.t_grid < 2 || options.x_quad < 2) {
    throw Error(ErrorKind::InvalidGrid, "t_grid and x_quad must be >= 2");
  }

  t_ = linspace(0.0, t_max, options.t_grid);
  for (std::size_t m = 1; m <= options.t_grid; ++m) {
    const double t = kPi / static_cast<double>(m);
    if (t <= t_max) t_.push_back(t);
  }
  for (double t : extra_points) {
    if (t >= 0.0 && t <= t_max) t_.push_back(t);
  }
  std::sort(t_.begin(), t_.end());
  t_.erase(std::unique(t_.begin(), t_.end()), t_.end());

  // Quadrature nodes and weights for the x-integral.
  std::vector<double> nodes;
  std::vector<double> weights;
  if (domain_ == Domain::full) {
    const double h = kTwoPi / static_cast<double>(options.x_quad);
    for (std::size_t j = 0; j < options.x_quad; ++j) {
      nodes.push_back(-kPi + h * static_cast<double>(j));
      weights.push_back(h);
    }
  } else {
    const double h = kPi / static_cast<double>(options.x_quad);
    for (std::size_t j = 0; j <= options.x_quad; ++j) {
      nodes.push_back(h * static_cast<double>(j));
      weights.push_back((j == 0 || j == options.x_quad) ? 0.5 * h : h);
    }
  }
  std::vector<double> base(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) base[j] = f(nodes[j]);

  root_integral_.assign(t_.size(), 0.0);
  parallel_for(t_.size(), options.threads, [&](std::size_t i) {
    const double t = t_[i];
    CompensatedSum s;
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      const double value = f(nodes[j] + t) + f(nodes[j] - t) - 2.0 * base[j];
      s.add(weights[j] * std::pow(std::abs(value), p));
    }
    root_integral_[i] = std::pow(std::max(s.value(), 0.0), 1.0 / p);
  });
}

double SmoothnessProfile::omega(double beta, double delta) const {
  double best = 0.0;
  for (std::size_t i = 0; i < t_.size() && t_[i] <= delta; ++i) {
    const double weight = beta == 0.0 ? 1.0 : std::pow(std::abs(std::sin(0.5 * t_[i])), beta);
    best = std::max(best, weight * root_integral_[i]);
  }
  return best;
}

double omega_beta(const PeriodicFunction& f, double delta, const ExperimentParams& params,
                  const SmoothnessOptions& options) {
  if (!std::isfinite(delta) || delta < 0.0 || delta > kTwoPi) {
    throw Error(ErrorKind::InvalidDelta, "delta must lie in [0, 2pi]");
  }
  if (delta == 0.0) return 0.0;
  const double extra[] = {delta};
  const SmoothnessProfile profile(f, params.p, delta, extra, options);
  return profile.omega(params.beta, delta);
}

MembershipReport membership_constant(const PeriodicFunction& f, const ModulusSpec& omega,
                                     const ExperimentParams& params, std::size_t delta_points,
                                     const SmoothnessOptions& options, double delta_min, double delta_max) {
  if (delta_points < 2 || !(delta_min > 0.0) || !(delta_max > delta_min) || delta_max > kTwoPi) {
    throw Error(ErrorKind::InvalidDelta, "membership grid needs 0 < delta_min < delta_max <= 2pi");
  }
  const auto deltas = logspace(delta_min, delta_max, delta_points);
  for (double d : deltas) {
    if (!(omega(d) > 0.0)) throw Error(ErrorKind::ZeroModulus, "modulus vanishes at a positive delta");
  }
  const SmoothnessProfile profile(f, params.p, delta_max, deltas, options);
  MembershipReport report;
  report.domain = options.domain;
  for (double d : deltas) {
    MembershipRow row;
    row.delta = d;
    row.omega_beta = profile.omega(params.beta, d);
    row.omega = omega(d);
    row.ratio = row.omega_beta / row.omega;
    if (row.ratio > report.constant) {
      report.constant = row.ratio;
      report.witness_delta = d;
    }
    report.rows.push_back(row);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Integral conditions

std::string_view to_string(ConditionId id) noexcept {
  switch (id) {
    case ConditionId::cell_sum: return "2.6";
    case ConditionId::near_origin: return "2.7";
    case ConditionId::cell_sum_strong: return "2.8";
    case ConditionId::weighted_tail: return "Q";
  }
  return "?";
}

std::optional<ConditionId> parse_condition(std::string_view text) noexcept {
  if (text == "2.6") return ConditionId::cell_sum;
  if (text == "2.7") return ConditionId::near_origin;
  if (text == "2.8") return ConditionId::cell_sum_strong;
  if (text == "Q" || text == "q") return ConditionId::weighted_tail;
  return std::nullopt;
}

std::vector<double> ConditionReport::ratios() const {
  std::vector<double> out;
  out.reserve(per_n.size());
  for (const auto& r : per_n) out.push_back(r.ratio);
  return out;
}

double default_gamma(const ExperimentParams& params) noexcept { return params.beta + 0.5 / params.p; }

namespace {

using Integrand = std::function<double(double)>;

// Panels no wider than this before adaptive refinement starts; resolves the
// highest corpus frequency (2^12) with a few nodes per period.
constexpr double kMaxInitialPanel = 3.141592653589793 / 4096.0;

// Gauss-Kronrod 7/15 abscissae on [-1, 1] (nonnegative half) and weights.
constexpr double kKronrodNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kKronrodWeights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kKronrodNodes[1], [3], [5], [7].
constexpr double kGaussWeights[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                     0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0.0;
  double error = 0.0;
};

PanelEstimate kronrod15(const Integrand& g, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double kronrod = 0.0;
  double gauss = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double sum = i == 7 ? g(center) : g(center - dx) + g(center + dx);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  return {kronrod * half, std::abs(kronrod - gauss) * half};
}

double refine(const Integrand& g, double a, double b, const PanelEstimate& estimate, std::size_t depth,
              const QuadratureOptions& quad) {
  const double allowed = std::max(quad.tolerance_per_width * (b - a), quad.relative_tolerance * std::abs(estimate.value));
  if (estimate.error <= allowed || depth >= quad.max_depth) return estimate.value;
  const double mid = 0.5 * (a + b);
  return refine(g, a, mid, kronrod15(g, a, mid), depth + 1, quad) +
         refine(g, mid, b, kronrod15(g, mid, b), depth + 1, quad);
}

double adaptive_integral(const Integrand& g, double a, double b, const QuadratureOptions& quad) {
  if (!(b > a)) return 0.0;
  const auto panels = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil((b - a) / kMaxInitialPanel)));
  const double width = (b - a) / static_cast<double>(panels);
  CompensatedSum total;
  for (std::size_t i = 0; i < panels; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == panels ? b : a + width * static_cast<double>(i + 1);
    total.add(refine(g, lo, hi, kronrod15(g, lo, hi), 0, quad));
  }
  return total.value();
}

class ConditionIntegrand {
 public:
  ConditionIntegrand(const PeriodicFunction& f, const ModulusSpec& omega, double x, double p, double beta,
                     double gamma)
      : f_(f), omega_(omega), x_(x), fx_(f(x)), p_(p), beta_(beta), gamma_(gamma) {}

  double operator()(double t) const {
    if (t <= 0.0) throw Error(ErrorKind::QuadratureFailure, "integrand sampled at t <= 0");
    const double w = omega_(t);
    if (!(w > 0.0)) throw Error(ErrorKind::ZeroModulus, "modulus vanishes at a positive t");
    const double difference = f_(x_ + t) + f_(x_ - t) - 2.0 * fx_;
    double value = std::abs(difference) / w;
    if (gamma_ != 0.0) value /= std::pow(t, gamma_);
    value = std::pow(value, p_);
    if (beta_ != 0.0) value *= std::pow(std::abs(std::sin(0.5 * t)), beta_ * p_);
    if (!std::isfinite(value)) {
      throw Error(ErrorKind::QuadratureFailure, "non-finite integrand at t = " + detail::format_double(t));
    }
    return value;
  }

 private:
  const PeriodicFunction& f_;
  const ModulusSpec& omega_;
  double x_;
  double fx_;
  double p_;
  double beta_;
  double gamma_;
};

}  // namespace

ConditionReport evaluate_condition(const PeriodicFunction& f, const ModulusSpec& omega,
                                   const ExperimentParams& params, ConditionId id,
                                   std::optional<double> gamma, std::span<const std::size_t> n_list,
                                   const QuadratureOptions& quad) {
  validate(params, &omega);
  if (!params.x) throw Error(ErrorKind::InvalidParams, "integral conditions need an evaluation point x");
  if (n_list.empty()) throw Error(ErrorKind::InvalidParams, "n_list must not be empty");
  for (std::size_t n : n_list) {
    if (n == 0) throw Error(ErrorKind::InvalidParams, "n_list entries must be positive");
  }
  const double p = params.p;
  const double beta = params.beta;
  const double x = *params.x;

  ConditionReport report;
  report.id = id;
  report.x = x;

  double gamma_used = 0.0;
  if (id == ConditionId::weighted_tail) {
    gamma_used = gamma.value_or(default_gamma(params));
    if (!std::isfinite(gamma_used) || gamma_used < 0.0 || !(gamma_used < beta + 1.0 / p)) {
      throw Error(ErrorKind::InvalidGamma, "gamma must satisfy 0 <= gamma < beta + 1/p (got " +
                                               detail::format_double(gamma_used) + ")");
    }
    report.gamma = gamma_used;
  }

  const ConditionIntegrand g(f, omega, x, p, beta, gamma_used);
  const Integrand integrand = [&g](double t) { return g(t); };
  const std::size_t n_top = *std::max_element(n_list.begin(), n_list.end());

  // Cell integrals over [pi/(m+1), pi/m], m = 1..n_top, shared by every n.
  std::vector<double> cells;
  if (id != ConditionId::near_origin) {
    cells.resize(n_top + 1, 0.0);
    for (std::size_t m = 1; m <= n_top; ++m) {
      const double lo = kPi / static_cast<double>(m + 1);
      const double hi = kPi / static_cast<double>(m);
      cells[m] = adaptive_integral(integrand, lo, hi, quad);
    }
  }

  // Integrals over [0, 2pi/n], built outward from the largest n.
  std::map<std::size_t, double> near;
  if (id == ConditionId::near_origin) {
    std::vector<std::size_t> ns(n_list.begin(), n_list.end());
    std::sort(ns.begin(), ns.end(), std::greater<>());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    CompensatedSum acc;
    double edge = 0.0;
    for (std::size_t n : ns) {
      const double hi = kTwoPi / static_cast<double>(n);
      acc.add(adaptive_integral(integrand, edge, hi, quad));
      edge = hi;
      near[n] = acc.value();
    }
  }

  const double q = params.q();
  const double cell_exponent = beta + 1.0 - (std::isinf(q) ? 0.0 : 2.0 / q);

  for (std::size_t n : n_list) {
    ConditionRow row;
    row.n = n;
    const double np1 = static_cast<double>(n + 1);
    switch (id) {
      case ConditionId::cell_sum:
      case ConditionId::cell_sum_strong: {
        CompensatedSum s;
        for (std::size_t m = 1; m <= n; ++m) {
          s.add(std::pow(static_cast<double>(m + 1), cell_exponent) * std::pow(cells[m], 1.0 / p));
        }
        row.lhs = s.value();
        row.rhs_scale = id == ConditionId::cell_sum ? std::pow(np1, beta + 1.0 / p) : std::pow(np1, beta);
        break;
      }
      case ConditionId::near_origin: {
        row.lhs = std::pow(near.at(n), 1.0 / p);
        row.rhs_scale = std::pow(np1, -1.0 / p);
        break;
      }
      case ConditionId::weighted_tail: {
        CompensatedSum s;
        for (std::size_t m = 1; m <= n; ++m) s.add(cells[m]);
        row.lhs = std::pow(s.value(), 1.0 / p);
        row.rhs_scale = std::pow(np1, gamma_used);
        break;
      }
    }
    row.ratio = row.lhs / row.rhs_scale;
    if (!std::isfinite(row.ratio)) {
      throw Error(ErrorKind::QuadratureFailure, "non-finite condition ratio at n = " + std::to_string(n));
    }
    report.implied_constant = std::max(report.implied_constant, row.ratio);
    report.per_n.push_back(row);
  }
  return report;
}

TailImplication check_tail_implication(const PeriodicFunction& f, const ModulusSpec& omega,
                                       const ExperimentParams& params, std::optional<double> gamma,
                                       std::span<const std::size_t> n_list, const QuadratureOptions& quad) {
  TailImplication out;
  out.weighted_tail = evaluate_condition(f, omega, params, ConditionId::weighted_tail, gamma, n_list, quad);
  out.cell_sum = evaluate_condition(f, omega, params, ConditionId::cell_sum, std::nullopt, n_list, quad);
  constexpr double kFactor = 2.0;
  out.tail_bounded = half_range_bounded(out.weighted_tail.ratios(), kFactor);
  out.cell_sum_bounded = half_range_bounded(out.cell_sum.ratios(), kFactor);
  return out;
}

}  // namespace fsum
