#pragma once

#include <cstddef>
#include <span>

#include "fsum/classes.hpp"
#include "fsum/matrix.hpp"

namespace fsum {

/// Below this |sin(t/2)| the closed form is replaced by the cosine sum.
inline constexpr double kSineSwitch = 1e-8;

/// Dirichlet kernel D_k(t) = 1/2 + sum_{v=1}^{k} cos(v t). Uses the closed form
/// sin((2k+1)t/2) / (2 sin(t/2)) away from multiples of 2 pi and the cosine
/// sum (after reducing t into [-pi, pi)) near them; exactly k + 1/2 at t = 2 l pi.
double dirichlet(std::size_t k, double t);

/// The cosine-sum form on its own, O(k).
double dirichlet_cosine_sum(std::size_t k, double t);

/// sum_k row[k] D_k(t) with compensated summation.
double kernel_sum(std::span<const double> row, double t);
double kernel_sum(const SummabilityMatrix& a, std::size_t n, double t);

struct KernelBoundReport {
  std::size_t n = 0;
  std::size_t grid_size = 0;
  double max_ratio = 0.0;
  double attained_t = 0.0;
  std::size_t skipped_points = 0;
};

/// Both classical Dirichlet bounds on (0, pi]: `decay` tracks |D_k(t)| t / pi
/// and `uniform` tracks |D_k(t)| / (k+1).
struct DirichletBoundReport {
  KernelBoundReport decay;
  KernelBoundReport uniform;
  bool passes = false;
};

inline constexpr double kDirichletBoundSlack = 1e-12;

/// Scans t_i = pi i / grid_size, i = 1..grid_size, plus t = pi/m for
/// m = 1..k+1. Passes iff both ratios stay <= 1 + kDirichletBoundSlack.
DirichletBoundReport check_dirichlet_bounds(std::size_t k, std::size_t grid_size);

/// Observed constant in |sum_k a[n][k] D_k(t)| <= C A_{n,tau} / t (mrbvs) or
/// <= C Abar_{n,n-2tau} / t (mhbvs) with tau = floor(pi/t), over a uniform grid
/// on [2pi/n, pi] joined with the partition points pi/m. Grid points with a
/// vanishing denominator are skipped and counted. Row n must be in `cls`
/// (NotInClass otherwise); cls must be mrbvs or mhbvs and n >= 2.
KernelBoundReport check_kernel_sum_bound(const SummabilityMatrix& a, std::size_t n, SeqClass cls,
                                         std::size_t grid_size);

}  // namespace fsum
