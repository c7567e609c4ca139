#include "fsum/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "fsum/error.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

double dirichlet_cosine_sum(std::size_t k, double t) {
  const double r = wrap_angle(t);
  CompensatedSum s;
  s.add(0.5);
  for (std::size_t v = 1; v <= k; ++v) s.add(std::cos(static_cast<double>(v) * r));
  return s.value();
}

double dirichlet(std::size_t k, double t) {
  const double half_sine = std::sin(0.5 * t);
  if (std::abs(half_sine) < kSineSwitch) return dirichlet_cosine_sum(k, t);
  return std::sin((static_cast<double>(k) + 0.5) * t) / (2.0 * half_sine);
}

double kernel_sum(std::span<const double> row, double t) {
  CompensatedSum s;
  const double half_sine = std::sin(0.5 * t);
  if (std::abs(half_sine) < kSineSwitch) {
    // Running cosine sum keeps the near-singular branch O(n).
    const double r = wrap_angle(t);
    double running = 0.5;
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k > 0) running += std::cos(static_cast<double>(k) * r);
      s.add(row[k] * running);
    }
    return s.value();
  }
  const double inv = 1.0 / (2.0 * half_sine);
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 0.0) continue;
    s.add(row[k] * std::sin((static_cast<double>(k) + 0.5) * t) * inv);
  }
  return s.value();
}

double kernel_sum(const SummabilityMatrix& a, std::size_t n, double t) {
  return kernel_sum(a.row(n), t);
}

namespace {

void track(KernelBoundReport& report, double ratio, double t) {
  if (ratio > report.max_ratio) {
    report.max_ratio = ratio;
    report.attained_t = t;
  }
}

}  // namespace

DirichletBoundReport check_dirichlet_bounds(std::size_t k, std::size_t grid_size) {
  if (grid_size < 2) throw Error(ErrorKind::InvalidGrid, "grid_size must be >= 2");
  DirichletBoundReport report;
  report.decay.n = report.uniform.n = k;
  report.decay.grid_size = report.uniform.grid_size = grid_size;

  auto visit = [&](double t) {
    const double d = std::abs(dirichlet(k, t));
    track(report.decay, d * t / kPi, t);
    track(report.uniform, d / static_cast<double>(k + 1), t);
  };
  for (std::size_t i = 1; i <= grid_size; ++i) {
    visit(kPi * static_cast<double>(i) / static_cast<double>(grid_size));
  }
  for (std::size_t m = 1; m <= k + 1; ++m) visit(kPi / static_cast<double>(m));

  report.passes = report.decay.max_ratio <= 1.0 + kDirichletBoundSlack &&
                  report.uniform.max_ratio <= 1.0 + kDirichletBoundSlack;
  return report;
}

namespace {

// floor(pi/t), snapping to the integer when pi/t is integral up to rounding.
std::size_t partition_index(double t) {
  const double r = kPi / t;
  const double nearest = std::round(r);
  if (std::abs(r - nearest) <= 1e-12 * r) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::floor(r));
}

}  // namespace

KernelBoundReport check_kernel_sum_bound(const SummabilityMatrix& a, std::size_t n, SeqClass cls,
                                         std::size_t grid_size) {
  if (cls != SeqClass::mrbvs && cls != SeqClass::mhbvs) {
    throw Error(ErrorKind::InvalidParams, "kernel-sum bound is stated for MRBVS or MHBVS rows");
  }
  if (n < 2) throw Error(ErrorKind::InvalidParams, "kernel-sum bound needs n >= 2");
  if (grid_size < 1) throw Error(ErrorKind::InvalidGrid, "grid_size must be >= 1");
  const auto row = a.row(n);
  const auto verdict = classify(row, cls);
  if (!verdict.in_class) {
    throw Error(ErrorKind::NotInClass, "row " + std::to_string(n) + " of " + a.name() + " is not in " +
                                           std::string(to_string(cls)));
  }
  const auto tails = tail_sums(a, n);

  const double lo = kTwoPi / static_cast<double>(n);
  std::vector<std::pair<double, std::size_t>> grid;
  grid.reserve(grid_size + n / 2);
  const auto uniform = linspace(lo, kPi, grid_size);
  for (double t : uniform) grid.emplace_back(t, partition_index(t));
  for (std::size_t m = 1; 2 * m <= n; ++m) grid.emplace_back(kPi / static_cast<double>(m), m);

  KernelBoundReport report;
  report.n = n;
  report.grid_size = grid.size();
  for (const auto& [t, tau] : grid) {
    const double denom = cls == SeqClass::mrbvs ? tails.forward[std::min(tau, n)]
                                                : tails.backward[n - std::min(2 * tau, n)];
    if (!(denom > 0.0)) {
      ++report.skipped_points;
      continue;
    }
    track(report, std::abs(kernel_sum(row, t)) * t / denom, t);
  }
  return report;
}

}  // namespace fsum
