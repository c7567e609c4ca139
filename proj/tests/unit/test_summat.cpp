#include <cmath>
#include <filesystem>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"
#include "fsum/classes.hpp"
#include "fsum/error.hpp"
#include "fsum/matrix.hpp"

using namespace fsum;

namespace {

// Straight transcription of the double sum, no shared code with the library.
double lal_entry(const std::vector<double>& p, std::size_t n, std::size_t k) {
  double total = 0.0;
  for (std::size_t v = k; v <= n; ++v) {
    double P = 0.0;
    for (std::size_t i = 0; i <= v; ++i) P += p[i];
    total += p[v - k] / P;
  }
  return total / static_cast<double>(n + 1);
}

double mean_rest_constant(const std::vector<double>& c) {
  const std::size_t n = c.size() - 1;
  double worst = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    double lhs = 0.0;
    for (std::size_t k = m; k < n; ++k) lhs += std::abs(c[k] - c[k + 1]);
    double rhs = 0.0;
    for (std::size_t k = (m + 1) / 2; k <= m; ++k) rhs += c[k];
    rhs /= static_cast<double>(m + 1);
    const double r = lhs == 0.0 ? 0.0 : (rhs == 0.0 ? std::numeric_limits<double>::infinity() : lhs / rhs);
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace

TEST_CASE("fejer rows are uniform") {
  const auto a = fejer_matrix(3);
  CHECK(a(1, 0) == 0.5);
  CHECK(a(1, 1) == 0.5);
  double s = 0.0;
  for (double v : a.row(3)) s += v;
  CHECK(std::abs(s - 1.0) <= 1e-15);
  CHECK(a(2, 3) == 0.0);
  CHECK_THROWS_AS(a.row(4), Error);
}

TEST_CASE("lal matrix matches the double sum") {
  const auto ones = lal_matrix(NorlundWeights::ones(2), 1);
  CHECK(ones(1, 0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(ones(1, 1) == doctest::Approx(0.25).epsilon(1e-15));

  std::vector<double> p(17);
  for (std::size_t v = 0; v < p.size(); ++v) p[v] = 1.0 / static_cast<double>(v + 1);
  const auto h = lal_matrix(NorlundWeights::harmonic(17), 16);
  for (std::size_t n = 0; n <= 16; ++n) {
    double s = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
      CHECK(h(n, k) == doctest::Approx(lal_entry(p, n, k)).epsilon(1e-13));
      s += h(n, k);
    }
    CHECK(std::abs(s - 1.0) <= 1e-12);
  }

  std::vector<double> delta(9, 0.0);
  delta[0] = 1.0;
  const auto f = lal_matrix(NorlundWeights(delta, "delta"), 8);
  for (std::size_t n = 0; n <= 8; ++n)
    for (std::size_t k = 0; k <= n; ++k) CHECK(f(n, k) == doctest::Approx(1.0 / (n + 1)).epsilon(1e-15));
}

TEST_CASE("lal matrix rejects a vanishing cumulative weight") {
  const NorlundWeights w({0.0, 0.0, 1.0}, "late");
  try {
    (void)lal_matrix(w, 2);
    FAIL("expected ZeroCumulativeWeight");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroCumulativeWeight);
  }
}

TEST_CASE("norlund rows reverse the weights") {
  const auto a = norlund_matrix(NorlundWeights::linear(3), 2);
  CHECK(a(2, 0) == doctest::Approx(3.0 / 6.0));
  CHECK(a(2, 1) == doctest::Approx(2.0 / 6.0));
  CHECK(a(2, 2) == doctest::Approx(1.0 / 6.0));
  const auto u = norlund_matrix(NorlundWeights::ones(5), 4);
  for (std::size_t k = 0; k <= 4; ++k) CHECK(u(4, k) == doctest::Approx(0.2));
}

TEST_CASE("generated matrices stay row-stochastic up to 1024") {
  for (const auto& a : {fejer_matrix(1024), lal_matrix(NorlundWeights::harmonic(1025), 1024),
                        norlund_matrix(NorlundWeights::linear(1025), 1024)}) {
    for (std::size_t n = 0; n <= 1024; n += 97) {
      double s = 0.0;
      for (double v : a.row(n)) {
        CHECK(v >= 0.0);
        s += v;
      }
      CHECK(std::abs(s - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("from_rows validates shape and sums") {
  CHECK_THROWS_AS(SummabilityMatrix::from_rows({{1.0}, {0.5}}, "bad"), Error);
  CHECK_THROWS_AS(SummabilityMatrix::from_rows({{1.0}, {0.7, 0.7}}, "bad"), Error);
  CHECK_THROWS_AS(SummabilityMatrix::from_rows({{1.0}, {1.5, -0.5}}, "bad"), Error);
}

TEST_CASE("tail sums") {
  const auto a = fejer_matrix(3);
  const auto t = tail_sums(a, 3);
  const std::vector<double> expect{0.25, 0.5, 0.75, 1.0};
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(t.forward[m] == doctest::Approx(expect[m]).epsilon(1e-15));
    CHECK(t.backward[m] == doctest::Approx((3.0 - m + 1) / 4.0).epsilon(1e-15));
  }
  const auto l = lal_matrix(NorlundWeights::harmonic(40), 39);
  const auto s = tail_sums(l, 39);
  for (std::size_t m = 0; m < 39; ++m) CHECK(std::abs(s.forward[m] + s.backward[m + 1] - 1.0) <= 1e-12);
  CHECK(std::abs(s.forward[39] - 1.0) <= 1e-12);
  CHECK(std::abs(s.backward[0] - 1.0) <= 1e-12);
}

TEST_CASE("classify on the documented rows") {
  const std::vector<double> flat{0.25, 0.25, 0.25, 0.25};
  auto r = classify(flat, SeqClass::mrbvs);
  CHECK(r.in_class);
  CHECK(r.constant == 0.0);

  const std::vector<double> dec{0.4, 0.3, 0.2, 0.1};
  r = classify(dec, SeqClass::mrbvs);
  CHECK(r.in_class);
  CHECK(r.constant == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(r.witness_m == 1);

  const std::vector<double> gap{0.5, 0.0, 0.5};
  r = classify(gap, SeqClass::rbvs);
  CHECK_FALSE(r.in_class);
  CHECK(std::isinf(r.constant));

  CHECK_THROWS_AS(classify(std::vector<double>{}, SeqClass::rbvs), Error);
  const std::vector<double> one{1.0};
  CHECK(classify(one, SeqClass::mhbvs).constant == 0.0);
}

TEST_CASE("classify agrees with an exhaustive oracle on random rows") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> row(2 + trial % 12);
    for (double& v : row) v = u(rng) < 0.2 ? 0.0 : u(rng);
    const double expect = mean_rest_constant(row);
    const double got = classify(row, SeqClass::mrbvs).constant;
    if (std::isinf(expect)) {
      CHECK(std::isinf(got));
    } else {
      CHECK(got == doctest::Approx(expect).epsilon(1e-12));
    }
  }
}

TEST_CASE("class inclusions hold row by row") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> w(0, 9);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> row(3 + trial % 8);
    for (double& v : row) v = w(rng);
    if (classify(row, SeqClass::rbvs).in_class) CHECK(classify(row, SeqClass::mrbvs).in_class);
    if (classify(row, SeqClass::hbvs).in_class) CHECK(classify(row, SeqClass::mhbvs).in_class);
  }
}

TEST_CASE("nonincreasing positive rows are rest bounded") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> row(2 + trial % 20);
    for (double& v : row) v = u(rng);
    std::sort(row.rbegin(), row.rend());
    const auto r = classify(row, SeqClass::rbvs);
    CHECK(r.in_class);
    CHECK(r.constant <= 1.0 + 1e-12);
  }
}

TEST_CASE("exact classification matches floating point") {
  const std::vector<std::uint64_t> w{4, 3, 2, 1};
  const auto e = classify_exact(w, SeqClass::mrbvs);
  CHECK(e.numerator == 4);
  CHECK(e.denominator == 3);
  const std::vector<std::uint64_t> gap{1, 0, 1};
  CHECK(classify_exact(gap, SeqClass::rbvs).denominator == 0);
}

TEST_CASE("separating witnesses") {
  for (auto [in, out] : {std::pair{SeqClass::mrbvs, SeqClass::rbvs}, std::pair{SeqClass::mhbvs, SeqClass::hbvs}}) {
    const auto w = find_separating_witness(in, out, 8, 100000, 1);
    REQUIRE(w.has_value());
    CHECK(classify(w->row, in).in_class);
    CHECK_FALSE(classify(w->row, out).in_class);
    CHECK(w->exact_inside.in_class);
    CHECK_FALSE(w->exact_outside.in_class);
  }
  CHECK_THROWS_AS(find_separating_witness(SeqClass::rbvs, SeqClass::mrbvs, 8, 10, 1), Error);
  CHECK_THROWS_AS(find_separating_witness(SeqClass::mrbvs, SeqClass::rbvs, 2, 10, 1), Error);
}

TEST_CASE("lal rows with nonincreasing weights keep bounded constants") {
  for (const auto& w : {NorlundWeights::ones(513), NorlundWeights::harmonic(513), NorlundWeights::geometric(513)}) {
    const auto a = lal_matrix(w, 512);
    double low = 0.0, high = 0.0;
    for (std::size_t n = 8; n <= 64; ++n) low = std::max(low, classify(a.row(n), SeqClass::mrbvs).constant);
    for (std::size_t n = 64; n <= 512; n += 8) high = std::max(high, classify(a.row(n), SeqClass::mrbvs).constant);
    CHECK(std::isfinite(low));
    CHECK(high <= 2.0 * low);
  }
}

TEST_CASE("tail growth constant") {
  const auto f = tail_growth_constant(fejer_matrix(64), TailMode::forward);
  CHECK(f.holds);
  CHECK(f.constant <= 2.0 + 1e-12);
  CHECK(f.constant == doctest::Approx(2.0));
  CHECK(tail_growth_constant(fejer_matrix(0), TailMode::forward).constant == 0.0);
  const auto n = tail_growth_constant(norlund_matrix(NorlundWeights::linear(33), 32), TailMode::backward);
  CHECK(std::isfinite(n.constant));
}

TEST_CASE("norlund tail condition") {
  CHECK(norlund_tail_condition(NorlundWeights::ones(2), 1) >= 1.0);
  const double ones64 = norlund_tail_condition(NorlundWeights::ones(65), 64);
  const double ones512 = norlund_tail_condition(NorlundWeights::ones(513), 512);
  CHECK(ones512 > ones64);  // grows like log n at tau = 1
  // Summable weights: P_v tends to 2, so the tau = 1 term grows like n.
  const auto geometric = NorlundWeights::geometric(513);
  double oracle = 0.0;
  for (std::size_t tau = 1; tau <= 512; ++tau) {
    double P = 0.0, inv = 0.0;
    for (std::size_t v = 0; v <= 512; ++v) {
      P += std::pow(0.5, static_cast<double>(v));
      if (v >= tau) inv += 1.0 / P;
    }
    double Ptau = 0.0;
    for (std::size_t v = 0; v <= tau; ++v) Ptau += std::pow(0.5, static_cast<double>(v));
    oracle = std::max(oracle, Ptau * inv / static_cast<double>(tau));
  }
  CHECK(norlund_tail_condition(geometric, 512) == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(norlund_tail_condition(geometric, 512) > 3.5 * norlund_tail_condition(geometric, 128));
  CHECK_THROWS_AS(norlund_tail_condition(NorlundWeights({0.0, 1.0}, "z"), 1), Error);
}

TEST_CASE("matrix and weight csv round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "fsum_summat_test";
  std::filesystem::create_directories(dir);
  const auto a = lal_matrix(NorlundWeights::harmonic(9), 8);
  write_matrix_csv(a, dir / "m.csv");
  const auto b = read_matrix_csv(dir / "m.csv");
  REQUIRE(b.n_max() == 8);
  for (std::size_t n = 0; n <= 8; ++n)
    for (std::size_t k = 0; k <= n; ++k) CHECK(a(n, k) == b(n, k));
  write_weights_csv(NorlundWeights::linear(5), dir / "w.csv");
  const auto w = read_weights_csv(dir / "w.csv");
  CHECK(w.size() == 5);
  CHECK(w.p()[4] == 5.0);
  std::filesystem::remove_all(dir);
}
