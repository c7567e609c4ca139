#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "fsum/error.hpp"
#include "fsum/fourier.hpp"
#include "fsum/numeric.hpp"

namespace fsum {

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

PeriodicFunction make_abs_power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidParams, "absx exponent must lie in (0, 1]");
  }
  return PeriodicFunction(
      "absx:" + short_number(alpha), [alpha](double x) { return std::pow(std::abs(x), alpha); }, alpha,
      "|x|^" + short_number(alpha) + " on [-pi, pi), periodised");
}

PeriodicFunction make_weierstrass(double alpha, std::size_t terms) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::InvalidParams, "weierstrass exponent must lie in (0, 1]");
  }
  if (terms == 0) throw Error(ErrorKind::InvalidParams, "weierstrass needs at least one term");
  return PeriodicFunction(
      "weierstrass:" + short_number(alpha),
      [alpha, terms](double x) {
        double sum = 0.0;
        double frequency = 1.0;
        for (std::size_t j = 0; j < terms; ++j) {
          sum += std::pow(2.0, -static_cast<double>(j) * alpha) * std::cos(frequency * x);
          frequency *= 2.0;
        }
        return sum;
      },
      alpha, "sum_{j<" + std::to_string(terms) + "} 2^{-j a} cos(2^j x), a = " + short_number(alpha));
}

PeriodicFunction make_constant(double value) {
  return PeriodicFunction(
      "constant", [value](double) { return value; }, 1.0, "constant " + short_number(value));
}

PeriodicFunction make_hat() {
  return PeriodicFunction(
      "hat", [](double x) { return std::max(0.0, 1.0 - 2.0 * std::abs(x) / kPi); }, 1.0,
      "max(0, 1 - 2|x|/pi)");
}

std::vector<PeriodicFunction> corpus() {
  std::vector<PeriodicFunction> out;
  for (double alpha : {0.3, 0.5, 0.7}) out.push_back(make_abs_power(alpha));
  for (double alpha : {0.3, 0.5, 0.7}) out.push_back(make_weierstrass(alpha));
  out.emplace_back("cos", [](double x) { return std::cos(x); }, 1.0, "cos x");
  out.emplace_back("sin3", [](double x) { return std::sin(3.0 * x); }, 1.0, "sin 3x");
  out.push_back(make_constant(1.0));
  out.push_back(make_hat());
  return out;
}

PeriodicFunction function_by_name(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const bool has_arg = colon != std::string::npos;
  auto arg = [&]() -> double {
    if (!has_arg) throw Error(ErrorKind::ParseError, "function '" + head + "' needs a parameter, e.g. " + head + ":0.5");
    try {
      std::size_t used = 0;
      const std::string text = spec.substr(colon + 1);
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    } catch (const std::exception&) {
      throw Error(ErrorKind::ParseError, "bad function parameter in '" + spec + "'");
    }
  };
  if (head == "absx") return make_abs_power(arg());
  if (head == "weierstrass") return make_weierstrass(arg());
  if (head == "constant") return make_constant(has_arg ? arg() : 1.0);
  if (head == "hat" && !has_arg) return make_hat();
  if ((head == "cos" || head == "sin3") && !has_arg) {
    for (auto& f : corpus()) {
      if (f.name() == head) return f;
    }
  }
  throw Error(ErrorKind::ParseError, "unknown function '" + spec +
                                         "' (known: absx:a, weierstrass:a, cos, sin3, constant[:c], hat)");
}

}  // namespace fsum
