#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fsum/error.hpp"
#include "fsum/kernels.hpp"
#include "fsum/numeric.hpp"

using namespace fsum;

TEST_CASE("dirichlet values") {
  CHECK(dirichlet(3, 0.0) == 3.5);
  CHECK(dirichlet(3, 4.0 * kPi) == 3.5);
  CHECK(dirichlet(1, kPi) == doctest::Approx(-0.5).epsilon(1e-14));
  for (double t : {0.1, 1.0, 2.5, -3.0}) CHECK(dirichlet(0, t) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("closed form and cosine sum agree") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-kPi, kPi);
  for (int i = 0; i < 500; ++i) {
    const double t = u(rng);
    const std::size_t k = static_cast<std::size_t>(i % 200);
    CHECK(dirichlet(k, t) == doctest::Approx(dirichlet_cosine_sum(k, t)).epsilon(1e-9).scale(k + 1.0));
  }
  // Overlap band just above the switch.
  for (double s = kSineSwitch; s <= 10 * kSineSwitch; s += kSineSwitch) {
    const double t = 2.0 * std::asin(s);
    const double closed = std::sin((2.0 * 50 + 1.0) * t / 2.0) / (2.0 * std::sin(t / 2.0));
    CHECK(std::abs(closed - dirichlet_cosine_sum(50, t)) <= 1e-9);
    CHECK(std::abs(dirichlet(50, t) - dirichlet_cosine_sum(50, t)) <= 1e-9);
  }
}

TEST_CASE("kernel sum on fejer rows") {
  const auto a = fejer_matrix(64);
  CHECK(std::abs(kernel_sum(a, 1, kPi)) <= 1e-15);
  CHECK(kernel_sum(a, 3, 0.0) == doctest::Approx(2.0).epsilon(1e-15));
  for (std::size_t n : {1u, 5u, 17u, 64u}) {
    for (int i = 1; i <= 400; ++i) {
      const double t = kPi * i / 400.0;
      const double s = std::sin((n + 1) * t / 2.0) / std::sin(t / 2.0);
      const double closed = s * s / (2.0 * (n + 1));
      const double got = kernel_sum(a, n, t);
      CHECK(std::abs(got - closed) <= 1e-10);
      CHECK(got >= -1e-12);
    }
  }
}

TEST_CASE("kernel sum is linear in the row") {
  const auto l = lal_matrix(NorlundWeights::harmonic(33), 32);
  const auto f = fejer_matrix(32);
  std::vector<double> mix(33);
  for (std::size_t k = 0; k <= 32; ++k) mix[k] = 0.3 * l(32, k) + 0.7 * f(32, k);
  for (int i = 0; i <= 50; ++i) {
    const double t = kPi * i / 50.0;
    CHECK(std::abs(kernel_sum(mix, t) - (0.3 * kernel_sum(l, 32, t) + 0.7 * kernel_sum(f, 32, t))) <= 1e-12);
  }
}

TEST_CASE("classical dirichlet bounds") {
  const auto zero = check_dirichlet_bounds(0, 1000);
  CHECK(zero.uniform.max_ratio == doctest::Approx(0.5));
  const auto r = check_dirichlet_bounds(128, 10000);
  CHECK(r.passes);
  CHECK(r.decay.max_ratio <= 1.0);
  CHECK(r.uniform.max_ratio <= 1.0);
  CHECK(r.decay.attained_t > 0.0);
  CHECK(r.decay.attained_t <= kPi);
}

TEST_CASE("kernel sum bound") {
  const auto a = fejer_matrix(512);
  const auto r64 = check_kernel_sum_bound(a, 64, SeqClass::mrbvs, 2048);
  CHECK(std::isfinite(r64.max_ratio));
  CHECK(r64.max_ratio > 0.0);
  const auto r512 = check_kernel_sum_bound(a, 512, SeqClass::mrbvs, 2048);
  CHECK(r512.max_ratio <= 1.5 * r64.max_ratio);
  const auto edge = check_kernel_sum_bound(a, 2, SeqClass::mrbvs, 16);
  CHECK(edge.attained_t == doctest::Approx(kPi));
  const auto head = check_kernel_sum_bound(a, 64, SeqClass::mhbvs, 512);
  CHECK(std::isfinite(head.max_ratio));

  auto gap = SummabilityMatrix::from_rows({{1.0}, {0.5, 0.5}, {0.5, 0.0, 0.5}, {0.25, 0.25, 0.25, 0.25}}, "gap");
  CHECK_THROWS_AS(check_kernel_sum_bound(gap, 2, SeqClass::mrbvs, 16), Error);
}
