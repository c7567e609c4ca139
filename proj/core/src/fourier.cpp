#include "fsum/fourier.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "csv.hpp"
#include "fsum/error.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

double SampleGrid::spacing() const noexcept {
  return values.empty() ? 0.0 : kTwoPi / static_cast<double>(values.size());
}

PeriodicFunction::PeriodicFunction(std::string name, Evaluator eval, std::optional<double> lipschitz_alpha,
                                   std::string description)
    : name_(std::move(name)),
      description_(std::move(description)),
      eval_(std::move(eval)),
      alpha_(lipschitz_alpha) {}

PeriodicFunction PeriodicFunction::from_samples(std::string name, SampleGrid grid) {
  if (grid.values.size() < 2) throw Error(ErrorKind::InvalidGrid, "need at least two samples");
  auto shared = std::make_shared<const SampleGrid>(grid);
  Evaluator eval = [shared](double x) {
    const auto& g = *shared;
    const std::size_t m = g.values.size();
    const double s = (x - g.x0) / g.spacing();
    const double base = std::floor(s);
    const double frac = s - base;
    const double mm = static_cast<double>(m);
    auto i = static_cast<std::size_t>(base - mm * std::floor(base / mm)) % m;
    return g.values[i] * (1.0 - frac) + g.values[(i + 1) % m] * frac;
  };
  PeriodicFunction f(std::move(name), std::move(eval), std::nullopt, "sampled");
  f.samples_ = std::move(grid);
  return f;
}

double PeriodicFunction::operator()(double x) const {
  if (samples_) return eval_(x);
  return eval_(wrap_angle(x));
}

PeriodicFunction load_function_csv(const std::filesystem::path& path) {
  const auto table = detail::read_numeric_csv(path, "x,f");
  if (table.size() < 3) throw Error(ErrorKind::InvalidGrid, path.string() + ": need at least 3 samples");
  constexpr double kSpacingTolerance = 1e-9;
  const double h = table[1][0] - table[0][0];
  if (!(h > 0.0)) throw Error(ErrorKind::InvalidGrid, path.string() + ": x must be increasing");
  for (std::size_t j = 1; j < table.size(); ++j) {
    if (std::abs(table[j][0] - table[j - 1][0] - h) > kSpacingTolerance) {
      throw Error(ErrorKind::InvalidGrid,
                  path.string() + ": non-uniform spacing at row " + std::to_string(j + 1));
    }
  }
  std::size_t count = table.size();
  const double span = table.back()[0] - table.front()[0];
  if (std::abs(span - kTwoPi) <= kSpacingTolerance * static_cast<double>(count)) --count;
  if (std::abs(static_cast<double>(count) * h - kTwoPi) > kSpacingTolerance * static_cast<double>(count)) {
    throw Error(ErrorKind::InvalidGrid, path.string() + ": samples must cover exactly one period");
  }
  SampleGrid grid;
  grid.x0 = table.front()[0];
  grid.values.reserve(count);
  for (std::size_t j = 0; j < count; ++j) grid.values.push_back(table[j][1]);
  return PeriodicFunction::from_samples(path.stem().string(), std::move(grid));
}

void write_function_csv(const PeriodicFunction& f, std::size_t points, const std::filesystem::path& path) {
  auto out = detail::open_output(path);
  out << "x,f\n";
  for (std::size_t j = 0; j < points; ++j) {
    const double x = -kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(points);
    out << detail::format_double(x) << ',' << detail::format_double(f(x)) << '\n';
  }
}

namespace {

struct TrigTable {
  std::vector<double> cos;
  std::vector<double> sin;

  explicit TrigTable(std::size_t points) : cos(points), sin(points) {
    for (std::size_t i = 0; i < points; ++i) {
      const double angle = kTwoPi * static_cast<double>(i) / static_cast<double>(points);
      cos[i] = std::cos(angle);
      sin[i] = std::sin(angle);
    }
  }
};

FourierCoefficients coefficients_from_grid(std::span<const double> values, double x0, std::size_t degree) {
  const std::size_t m = values.size();
  const TrigTable table(m);
  const double scale = 2.0 / static_cast<double>(m);
  FourierCoefficients c;
  c.a0 = scale * compensated_sum(values);
  c.cosine.resize(degree);
  c.sine.resize(degree);
  for (std::size_t v = 1; v <= degree; ++v) {
    double sum_c = 0.0;
    double sum_s = 0.0;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < m; ++j) {
      sum_c += values[j] * table.cos[idx];
      sum_s += values[j] * table.sin[idx];
      idx += v;
      if (idx >= m) idx %= m;
    }
    // cos(v x_j) = cos(v x0) C_j - sin(v x0) S_j and sin(v x_j) = sin(v x0) C_j + cos(v x0) S_j.
    const double shift = static_cast<double>(v) * x0;
    const double cs = std::cos(shift);
    const double sn = std::sin(shift);
    c.cosine[v - 1] = scale * (cs * sum_c - sn * sum_s);
    c.sine[v - 1] = scale * (sn * sum_c + cs * sum_s);
  }
  return c;
}

}  // namespace

FourierCoefficients coefficients(const PeriodicFunction& f, std::size_t degree, std::size_t quad_points) {
  if (const auto& grid = f.samples()) {
    if (grid->values.size() < 4 * degree) {
      throw Error(ErrorKind::InsufficientResolution,
                  f.name() + ": " + std::to_string(grid->values.size()) + " samples cannot resolve degree " +
                      std::to_string(degree) + " (need 4N)");
    }
    return coefficients_from_grid(grid->values, grid->x0, degree);
  }
  if (quad_points < 4 * degree || quad_points == 0) {
    throw Error(ErrorKind::InsufficientResolution,
                std::to_string(quad_points) + " quadrature points cannot resolve degree " +
                    std::to_string(degree) + " (need 4N)");
  }
  const auto values = sample_on_grid(f, quad_points);
  return coefficients_from_grid(values, -kPi, degree);
}

double partial_sum(const FourierCoefficients& c, std::size_t k, double x) {
  if (k > c.degree()) {
    throw Error(ErrorKind::DegreeExceeded,
                "partial sum of order " + std::to_string(k) + " exceeds degree " + std::to_string(c.degree()));
  }
  CompensatedSum s;
  s.add(0.5 * c.a0);
  for (std::size_t v = 1; v <= k; ++v) {
    const double angle = static_cast<double>(v) * x;
    s.add(c.cosine[v - 1] * std::cos(angle) + c.sine[v - 1] * std::sin(angle));
  }
  return s.value();
}

std::vector<double> transform_multipliers(const SummabilityMatrix& a, std::size_t n) {
  return tail_sums(a, n).backward;
}

namespace {

void check_transform_range(const FourierCoefficients& c, const SummabilityMatrix& a, std::size_t n) {
  if (n > a.n_max()) {
    throw Error(ErrorKind::RowOutOfRange,
                "row " + std::to_string(n) + " exceeds n_max " + std::to_string(a.n_max()));
  }
  if (n > c.degree()) {
    throw Error(ErrorKind::DegreeExceeded,
                "transform of order " + std::to_string(n) + " exceeds degree " + std::to_string(c.degree()));
  }
}

}  // namespace

double a_transform(const FourierCoefficients& c, const SummabilityMatrix& a, std::size_t n, double x) {
  check_transform_range(c, a, n);
  const auto multipliers = transform_multipliers(a, n);
  CompensatedSum s;
  s.add(0.5 * c.a0);
  for (std::size_t v = 1; v <= n; ++v) {
    const double angle = static_cast<double>(v) * x;
    s.add(multipliers[v] * (c.cosine[v - 1] * std::cos(angle) + c.sine[v - 1] * std::sin(angle)));
  }
  return s.value();
}

double a_transform_direct(const FourierCoefficients& c, const SummabilityMatrix& a, std::size_t n, double x) {
  check_transform_range(c, a, n);
  const auto row = a.row(n);
  CompensatedSum s;
  for (std::size_t k = 0; k <= n; ++k) {
    if (row[k] == 0.0) continue;
    s.add(row[k] * partial_sum(c, k, x));
  }
  return s.value();
}

std::vector<double> synthesize_on_grid(const FourierCoefficients& c, std::span<const double> weights,
                                       std::size_t points) {
  const std::size_t order = weights.empty() ? 0 : weights.size() - 1;
  if (order > c.degree()) {
    throw Error(ErrorKind::DegreeExceeded,
                "synthesis of order " + std::to_string(order) + " exceeds degree " + std::to_string(c.degree()));
  }
  const TrigTable table(points);
  std::vector<double> out(points, 0.5 * c.a0);
  for (std::size_t v = 1; v <= order; ++v) {
    // x_j = -pi + 2 pi j / points, so cos(v x_j) = (-1)^v cos(2 pi v j / points).
    const double sign = (v % 2 == 0) ? 1.0 : -1.0;
    const double ca = sign * weights[v] * c.cosine[v - 1];
    const double sb = sign * weights[v] * c.sine[v - 1];
    if (ca == 0.0 && sb == 0.0) continue;
    std::size_t idx = 0;
    for (std::size_t j = 0; j < points; ++j) {
      out[j] += ca * table.cos[idx] + sb * table.sin[idx];
      idx += v;
      if (idx >= points) idx %= points;
    }
  }
  return out;
}

std::vector<double> sample_on_grid(const PeriodicFunction& f, std::size_t points) {
  std::vector<double> out(points);
  for (std::size_t j = 0; j < points; ++j) {
    out[j] = f(-kPi + kTwoPi * static_cast<double>(j) / static_cast<double>(points));
  }
  return out;
}

double lp_norm(std::span<const double> values, double p) {
  if (!std::isfinite(p) || p < 1.0) {
    throw Error(ErrorKind::InvalidExponent, "L^p norm needs 1 <= p < inf");
  }
  if (values.empty()) return 0.0;
  CompensatedSum s;
  for (double v : values) s.add(std::pow(std::abs(v), p));
  const double h = kTwoPi / static_cast<double>(values.size());
  return std::pow(h * s.value(), 1.0 / p);
}

double lp_norm(const PeriodicFunction& g, double p, std::size_t quad_points) {
  if (!std::isfinite(p) || p < 1.0) {
    throw Error(ErrorKind::InvalidExponent, "L^p norm needs 1 <= p < inf");
  }
  if (quad_points == 0) throw Error(ErrorKind::InsufficientResolution, "quad_points must be positive");
  return lp_norm(sample_on_grid(g, quad_points), p);
}

}  // namespace fsum
