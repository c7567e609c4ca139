#include <cmath>
#include <vector>

#include "doctest.h"
#include "fsum/error.hpp"
#include "fsum/moduli.hpp"
#include "fsum/numeric.hpp"

using namespace fsum;

namespace {

PeriodicFunction cosine() {
  return PeriodicFunction("cos", [](double x) { return std::cos(x); });
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::ParseError;
}

}  // namespace

TEST_CASE("phi") {
  const auto c = make_constant(3.0);
  CHECK(phi(c, 0.4, 1.2) == 0.0);
  for (double x : {-1.0, 0.0, 2.0})
    for (double t : {0.0, 0.5, 3.0})
      CHECK(phi(cosine(), x, t) == doctest::Approx(2.0 * std::cos(x) * (std::cos(t) - 1.0)).epsilon(1e-12));
  CHECK(phi(make_abs_power(0.5), 1.3, 0.0) == 0.0);
}

TEST_CASE("modulus specs") {
  const auto p = ModulusSpec::power(0.5);
  CHECK(p(0.0) == 0.0);
  CHECK(p(4.0) == doctest::Approx(2.0));
  CHECK(check_modulus(p).ok());
  CHECK(check_modulus(ModulusSpec::power_log(0.5)).ok());
  CHECK(parse_modulus("power:0.3").alpha() == doctest::Approx(0.3));
  CHECK(parse_modulus("powerlog:0.3").family() == ModulusFamily::power_log);
  CHECK_THROWS_AS(parse_modulus("cubic:2"), Error);

  const auto t = ModulusSpec::from_table({{1.0, 1.0}, {2.0, 1.5}});
  CHECK(t(0.5) == doctest::Approx(0.5));
  CHECK(t(1.5) == doctest::Approx(1.25));
  CHECK(t(3.0) == doctest::Approx(1.5));
  CHECK(check_modulus(t).ok());
  CHECK_FALSE(check_modulus(ModulusSpec::from_table({{1.0, 1.0}, {2.0, 0.5}})).nondecreasing);

  // d^{-1} w(d) nonincreasing for power moduli with exponent <= 1.
  for (double a : {0.2, 0.5, 1.0}) {
    const auto w = ModulusSpec::power(a);
    double prev = INFINITY;
    for (double d : linspace(0.01, kTwoPi, 200)) {
      CHECK(w(d) / d <= prev + 1e-12);
      prev = w(d) / d;
    }
  }
}

TEST_CASE("parameter validation") {
  ExperimentParams ok{2.0, 0.25, std::nullopt, false};
  CHECK_NOTHROW(validate(ok));
  CHECK(ok.q() == doctest::Approx(2.0));
  CHECK(std::abs(1.0 / ok.p + 1.0 / ok.q() - 1.0) <= 1e-14);
  CHECK(kind_of([] { validate({0.5, 0.0, std::nullopt, false}); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { validate({2.0, 0.5, std::nullopt, false}); }) == ErrorKind::InvalidParams);
  CHECK(kind_of([] { validate({2.0, -0.1, std::nullopt, false}); }) == ErrorKind::InvalidParams);

  const auto w = ModulusSpec::power(0.9);
  ExperimentParams big{2.0, 0.6, std::nullopt, true};
  CHECK_NOTHROW(validate(big, &w));
  const auto small = ModulusSpec::power(0.3);
  CHECK_THROWS_AS(validate(big, &small), Error);
}

TEST_CASE("generalized modulus of cos on the half domain") {
  SmoothnessOptions opt;
  opt.domain = Domain::half;
  const ExperimentParams params{2.0, 0.0, std::nullopt, false};
  CHECK(omega_beta(cosine(), kPi, params, opt) == doctest::Approx(4.0 * std::sqrt(kPi / 2.0)).epsilon(1e-9));
  CHECK(omega_beta(cosine(), 0.0, params, opt) == 0.0);
  CHECK(omega_beta(make_constant(1.0), 1.0, params) == 0.0);
  CHECK(kind_of([&] { omega_beta(cosine(), 7.0, params); }) == ErrorKind::InvalidDelta);

  // Full domain doubles the x-integral.
  opt.domain = Domain::full;
  CHECK(omega_beta(cosine(), kPi, params, opt) == doctest::Approx(4.0 * std::sqrt(kPi)).epsilon(1e-9));
}

TEST_CASE("generalized modulus monotonicity") {
  const std::vector<double> deltas = linspace(kPi / 64.0, kPi, 64);
  SmoothnessOptions opt;
  opt.t_grid = 512;
  opt.x_quad = 512;
  for (const auto& f : corpus()) {
    const SmoothnessProfile profile(f, 2.0, kPi, deltas, opt);
    double prev = 0.0;
    for (double d : deltas) {
      const double w0 = profile.omega(0.0, d);
      const double w1 = profile.omega(0.25, d);
      CHECK(w1 <= w0 + 1e-10);
      CHECK(w0 >= prev - 1e-10);
      prev = w0;
    }
  }
}

TEST_CASE("membership constants") {
  const ExperimentParams params{2.0, 0.0, std::nullopt, false};
  SmoothnessOptions opt;
  opt.t_grid = 512;
  opt.x_quad = 1024;
  const auto r = membership_constant(make_abs_power(0.5), ModulusSpec::power(0.5), params, 32, opt);
  CHECK(std::isfinite(r.constant));
  CHECK(r.constant > 0.0);
  CHECK(r.rows.size() == 32);
  CHECK(membership_constant(make_constant(1.0), ModulusSpec::power(0.5), params, 16, opt).constant == 0.0);

  const ExperimentParams corollary{2.0, 0.25, std::nullopt, false};
  const auto c = membership_constant(make_weierstrass(0.5), ModulusSpec::power(0.75), corollary, 32, opt);
  CHECK(std::isfinite(c.constant));

  const auto zero = ModulusSpec::from_table({{1.0, 0.0}, {2.0, 1.0}});
  CHECK(kind_of([&] { membership_constant(cosine(), zero, params, 8, opt); }) == ErrorKind::ZeroModulus);
}

TEST_CASE("integral conditions") {
  const std::vector<std::size_t> ns{8, 16, 32, 64, 128, 256, 512};
  ExperimentParams params{2.0, 0.0, 1.0, false};
  const auto w = ModulusSpec::power(0.5);

  for (auto id : {ConditionId::cell_sum, ConditionId::near_origin, ConditionId::cell_sum_strong,
                  ConditionId::weighted_tail}) {
    const auto r = evaluate_condition(make_constant(1.0), w, params, id, std::nullopt, ns);
    CHECK(r.implied_constant == 0.0);
    CHECK(r.per_n.size() == ns.size());
  }

  const auto near = evaluate_condition(make_abs_power(0.5), w, params, ConditionId::near_origin, std::nullopt, ns);
  CHECK(half_range_bounded(near.ratios(), 2.0));
  double worst = 0.0;
  for (const auto& row : near.per_n) worst = std::max(worst, row.ratio);
  CHECK(near.implied_constant == worst);

  CHECK(kind_of([&] {
          evaluate_condition(cosine(), w, params, ConditionId::weighted_tail, 0.6, ns);
        }) == ErrorKind::InvalidGamma);
  CHECK(kind_of([&] {
          evaluate_condition(cosine(), w, params, ConditionId::weighted_tail, -0.1, ns);
        }) == ErrorKind::InvalidGamma);
  CHECK(default_gamma(params) == doctest::Approx(0.25));
  CHECK(to_string(ConditionId::weighted_tail) == "Q");
  CHECK(parse_condition("2.7") == ConditionId::near_origin);
}

TEST_CASE("cell sum against a direct quadrature") {
  // cos at x = 0 with w = d and beta = 0: g(t) = (2 (1 - cos t) / t)^2, so
  // J_m has a smooth integrand and a fine midpoint rule is an independent oracle.
  ExperimentParams params{2.0, 0.0, 0.0, false};
  const auto w = ModulusSpec::power(1.0);
  const std::vector<std::size_t> ns{4};
  const auto r = evaluate_condition(cosine(), w, params, ConditionId::cell_sum, std::nullopt, ns);
  double lhs = 0.0;
  for (std::size_t m = 1; m <= 4; ++m) {
    const double lo = kPi / (m + 1), hi = kPi / m;
    const int steps = 20000;
    double j = 0.0;
    for (int i = 0; i < steps; ++i) {
      const double t = lo + (hi - lo) * (i + 0.5) / steps;
      const double g = 2.0 * (1.0 - std::cos(t)) / t;
      j += g * g;
    }
    j *= (hi - lo) / steps;
    lhs += std::pow(m + 1.0, 0.0 + 1.0 - 2.0 / 2.0) * std::sqrt(j);
  }
  CHECK(r.per_n[0].lhs == doctest::Approx(lhs).epsilon(1e-7));
  CHECK(r.per_n[0].rhs_scale == doctest::Approx(std::pow(5.0, 0.5)));
}

TEST_CASE("tail implication on the corpus") {
  const std::vector<std::size_t> ns{8, 16, 32, 64, 128};
  for (const auto& f : corpus()) {
    const double a = f.lipschitz_alpha().value_or(0.5);
    ExperimentParams params{2.0, 0.0, 1.0, false};
    const auto imp = check_tail_implication(f, ModulusSpec::power(std::min(1.0, a)), params, std::nullopt, ns);
    CHECK(imp.holds());
  }
}
