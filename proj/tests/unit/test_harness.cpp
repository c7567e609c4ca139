#include <cmath>
#include <vector>

#include "doctest.h"
#include "fsum/error.hpp"
#include "fsum/harness.hpp"
#include "fsum/numeric.hpp"
#include "fsum/serialize.hpp"

using namespace fsum;

namespace {

PeriodicFunction cosine() {
  return PeriodicFunction("cos", [](double x) { return std::cos(x); }, 1.0);
}

}  // namespace

TEST_CASE("bound values") {
  const auto a = fejer_matrix(16);
  const auto w = ModulusSpec::power(0.5);
  const ExperimentParams params{2.0, 0.0, std::nullopt, false};
  const double expect =
      0.25 * std::sqrt(kPi) * (1.0 + std::pow(2.0, -0.5) + std::pow(3.0, -0.5) + std::pow(4.0, -0.5));
  CHECK(bound_value(a, 3, w, params, BoundVariant::thm2, Orientation::forward) ==
        doctest::Approx(expect).epsilon(1e-14));
  CHECK(expect == doctest::Approx(1.2339).epsilon(1e-4));
  CHECK(bound_value(a, 0, w, params, BoundVariant::thm2, Orientation::forward) == doctest::Approx(std::sqrt(kPi)));

  const auto l = lal_matrix(NorlundWeights::harmonic(17), 16);
  for (std::size_t n = 0; n <= 16; ++n) {
    for (auto v : {BoundVariant::thm1, BoundVariant::thm2, BoundVariant::thm3_pos_beta, BoundVariant::thm3_zero_beta,
                   BoundVariant::remark1}) {
      CHECK(bound_value(a, n, w, params, v, Orientation::forward) ==
            bound_value(a, n, w, params, v, Orientation::reversed));
      // power_log(a) >= power(a) pointwise on [0, 2pi], so the bound cannot drop.
      CHECK(bound_value(l, n, ModulusSpec::power_log(0.5), params, v, Orientation::forward) >=
            bound_value(l, n, w, params, v, Orientation::forward));
    }
  }
  CHECK(bound_value(a, 3, w, params, BoundVariant::thm1, Orientation::forward) ==
        doctest::Approx(expect * 2.0).epsilon(1e-14));
  CHECK(bound_value(a, 3, w, params, BoundVariant::remark1, Orientation::forward) ==
        doctest::Approx(2.0 * std::sqrt(kPi / 4.0)).epsilon(1e-14));
  CHECK_THROWS_AS(bound_value(a, 17, w, params, BoundVariant::thm2, Orientation::forward), Error);
}

TEST_CASE("slope fit recovers synthetic exponents") {
  std::vector<std::size_t> ns;
  std::vector<double> e;
  for (std::size_t n = 16; n <= 1024; n *= 2) {
    ns.push_back(n);
    e.push_back(3.7 * std::pow(static_cast<double>(n), -0.62));
  }
  const auto fit = fit_loglog_slope(ns, e, SlopeAxis::log_n);
  CHECK(std::abs(fit.slope + 0.62) <= 1e-6);
  CHECK(fit.stderr_slope <= 1e-6);
  CHECK(fit.points == ns.size());

  std::vector<double> tiny(ns.size(), 1e-15);
  tiny[0] = 1e-3;
  const auto degenerate = fit_loglog_slope(ns, tiny);
  CHECK(degenerate.degenerate);
  CHECK(std::isnan(degenerate.slope));
}

TEST_CASE("fejer on cos reproduces the analytic error") {
  const auto ns = geometric_range(16, 1024);
  CHECK(ns.size() == 7);
  const auto r = run_rate_experiment(cosine(), fejer_matrix(1024), ModulusSpec::power(1.0),
                                     {2.0, 0.0, std::nullopt, false}, ns, BoundVariant::thm3_zero_beta,
                                     Orientation::forward);
  for (const auto& row : r.rows) {
    const double expect = std::sqrt(kPi) / (row.n + 1.0);
    CHECK(std::abs(row.error - expect) <= 1e-6 * expect);
  }
  CHECK(std::abs(r.fit.slope + 1.0) <= 0.01);
  CHECK(r.class_check.in_class);
  CHECK(r.ratio_bounded);
}

TEST_CASE("constant function is degenerate") {
  const std::vector<std::size_t> ns{16, 32, 64};
  const auto r = run_rate_experiment(make_constant(2.0), fejer_matrix(64), ModulusSpec::power(0.5),
                                     {2.0, 0.0, std::nullopt, false}, ns, BoundVariant::thm3_zero_beta,
                                     Orientation::forward);
  CHECK(r.degenerate());
  for (const auto& row : r.rows) CHECK(row.error <= 1e-12);

  ExperimentParams at{2.0, 0.0, 0.5, false};
  const auto p = run_pointwise_experiment(make_constant(2.0), fejer_matrix(64), ModulusSpec::power(0.5), at, ns,
                                          BoundVariant::thm2, Orientation::forward);
  for (const auto& row : p.rows) CHECK(row.error <= 1e-13);
}

TEST_CASE("pointwise fejer on cos at zero") {
  const std::vector<std::size_t> ns{8, 16, 32, 64, 128};
  ExperimentParams at{2.0, 0.0, 0.0, false};
  const auto r = run_pointwise_experiment(cosine(), fejer_matrix(128), ModulusSpec::power(1.0), at, ns,
                                          BoundVariant::thm2, Orientation::forward);
  for (const auto& row : r.rows) CHECK(row.error == doctest::Approx(1.0 / (row.n + 1.0)).epsilon(1e-9));
  CHECK(r.ratio_bounded);
  REQUIRE(r.conditions.size() == 2);
  CHECK(r.conditions[0].id == ConditionId::cell_sum_strong);
  CHECK(r.conditions[1].id == ConditionId::near_origin);
}

TEST_CASE("error split adds up") {
  const auto f = make_abs_power(0.5);
  const auto a = lal_matrix(NorlundWeights::ones(65), 64);
  for (std::size_t n : {4u, 32u, 64u}) {
    const auto s = split_pointwise_error(f, a, n, 1.0);
    CHECK(s.total() == doctest::Approx(s.direct).epsilon(1e-4).scale(1e-3));
  }
  CHECK_THROWS_AS(split_pointwise_error(f, a, 1, 1.0), Error);
}

TEST_CASE("experiment preconditions") {
  const std::vector<std::size_t> ns{16, 128};
  CHECK_THROWS_AS(run_rate_experiment(cosine(), fejer_matrix(64), ModulusSpec::power(1.0),
                                      {2.0, 0.0, std::nullopt, false}, ns, BoundVariant::thm2,
                                      Orientation::forward),
                  Error);
  ExperimentOptions capped;
  capped.degree = 32;
  const std::vector<std::size_t> small{16, 64};
  CHECK_THROWS_AS(run_rate_experiment(cosine(), fejer_matrix(64), ModulusSpec::power(1.0),
                                      {2.0, 0.0, std::nullopt, false}, small, BoundVariant::thm2,
                                      Orientation::forward, capped),
                  Error);
  CHECK_THROWS_AS(run_rate_experiment(cosine(), fejer_matrix(64), ModulusSpec::power(1.0),
                                      {0.9, 0.0, std::nullopt, false}, small, BoundVariant::thm2,
                                      Orientation::forward),
                  Error);
}

TEST_CASE("corollary on the weierstrass family") {
  const std::vector<double> alphas{0.5};
  const std::vector<double> ps{2.0};
  const auto ns = geometric_range(16, 1024);
  const auto rows = corollary_suite(alphas, ps, ns);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].beta == doctest::Approx(0.25));
  CHECK(rows[0].pass);
  CHECK(std::abs(rows[0].slope + 0.5) <= 0.1);

  const std::vector<double> bad{0.9};
  CorollaryOptions opt;
  opt.beta = 0.25;
  CHECK_THROWS_AS(corollary_suite(bad, ps, ns, opt), Error);
  CHECK(corollary_beta(2.0) == doctest::Approx(0.25));
  CHECK(corollary_beta(1.5) == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("reports serialize") {
  const std::vector<std::size_t> ns{8, 16};
  const auto r = run_rate_experiment(cosine(), fejer_matrix(16), ModulusSpec::power(1.0),
                                     {2.0, 0.0, std::nullopt, false}, ns, BoundVariant::thm3_zero_beta,
                                     Orientation::forward);
  const auto json = to_json(r);
  CHECK(json.find("\"rows\"") != std::string::npos);
  CHECK(json.find("thm3-zero-beta") != std::string::npos);
  const std::vector<RateReport> one{r};
  CHECK(markdown_table(one).find("| fejer") != std::string::npos);
}
