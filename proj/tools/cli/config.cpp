#include "config.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "fsum/classes.hpp"
#include "fsum/error.hpp"
#include "fsum/harness.hpp"

namespace fsum::cli {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::ParseError, "config '" + key + "': " + what);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_real(const std::string& key, const std::string& text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) bad(key, "expected a number, got '" + text + "'");
  return v;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& text) {
  std::uint64_t v = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) bad(key, "expected a nonnegative integer, got '" + text + "'");
  return v;
}

double as_real(const std::string& key, const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_real(key, v.get<std::string>());
  bad(key, "expected a number");
}

std::uint64_t as_unsigned(const std::string& key, const Json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) bad(key, "must be nonnegative");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  if (v.is_string()) return parse_unsigned(key, v.get<std::string>());
  bad(key, "expected a nonnegative integer");
}

bool as_bool(const std::string& key, const Json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  bad(key, "expected true or false");
}

std::string as_string(const std::string& key, const Json& v) {
  if (!v.is_string()) bad(key, "expected a string");
  return v.get<std::string>();
}

std::optional<double> as_optional_real(const std::string& key, const Json& v) {
  if (v.is_null()) return std::nullopt;
  return as_real(key, v);
}

using Setter = std::function<void(RunConfig&, const std::string&, const Json&)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table = {
      {"matrix", [](RunConfig& c, const std::string& k, const Json& v) { c.matrix = as_string(k, v); }},
      {"p_weights", [](RunConfig& c, const std::string& k, const Json& v) { c.p_weights = as_string(k, v); }},
      {"function", [](RunConfig& c, const std::string& k, const Json& v) { c.function = as_string(k, v); }},
      {"modulus", [](RunConfig& c, const std::string& k, const Json& v) { c.modulus = as_string(k, v); }},
      {"p", [](RunConfig& c, const std::string& k, const Json& v) { c.p = as_real(k, v); }},
      {"beta", [](RunConfig& c, const std::string& k, const Json& v) { c.beta = as_real(k, v); }},
      {"x", [](RunConfig& c, const std::string& k, const Json& v) { c.x = as_optional_real(k, v); }},
      {"gamma", [](RunConfig& c, const std::string& k, const Json& v) { c.gamma = as_optional_real(k, v); }},
      {"allow_large_beta",
       [](RunConfig& c, const std::string& k, const Json& v) { c.allow_large_beta = as_bool(k, v); }},
      {"n",
       [](RunConfig& c, const std::string& k, const Json& v) {
         if (v.is_string()) {
           c.n = parse_n_spec(v.get<std::string>());
         } else if (v.is_array()) {
           c.n.clear();
           for (const auto& e : v) c.n.push_back(as_unsigned(k, e));
         } else if (v.is_number()) {
           c.n = {as_unsigned(k, v)};
         } else {
           bad(k, "expected a list, a range or a number");
         }
       }},
      {"out", [](RunConfig& c, const std::string& k, const Json& v) { c.out = as_string(k, v); }},
      {"threads",
       [](RunConfig& c, const std::string& k, const Json& v) {
         c.threads = static_cast<unsigned>(as_unsigned(k, v));
       }},
      {"seed", [](RunConfig& c, const std::string& k, const Json& v) { c.seed = as_unsigned(k, v); }},
      {"domain",
       [](RunConfig& c, const std::string& k, const Json& v) {
         const auto d = parse_domain(as_string(k, v));
         if (!d) bad(k, "expected half or full");
         c.domain = *d;
       }},
      {"class", [](RunConfig& c, const std::string& k, const Json& v) { c.cls = as_string(k, v); }},
      {"witness", [](RunConfig& c, const std::string& k, const Json& v) { c.witness = as_string(k, v); }},
      {"len", [](RunConfig& c, const std::string& k, const Json& v) { c.len = as_unsigned(k, v); }},
      {"trials", [](RunConfig& c, const std::string& k, const Json& v) { c.trials = as_unsigned(k, v); }},
      {"lemma",
       [](RunConfig& c, const std::string& k, const Json& v) { c.lemma = static_cast<int>(as_unsigned(k, v)); }},
      {"kmax", [](RunConfig& c, const std::string& k, const Json& v) { c.kmax = as_unsigned(k, v); }},
      {"grid", [](RunConfig& c, const std::string& k, const Json& v) { c.grid = as_unsigned(k, v); }},
      {"growth_factor",
       [](RunConfig& c, const std::string& k, const Json& v) { c.growth_factor = as_real(k, v); }},
      {"variant", [](RunConfig& c, const std::string& k, const Json& v) { c.variant = as_string(k, v); }},
      {"orientation",
       [](RunConfig& c, const std::string& k, const Json& v) { c.orientation = as_string(k, v); }},
      {"corollary", [](RunConfig& c, const std::string& k, const Json& v) { c.corollary = as_bool(k, v); }},
      {"suite", [](RunConfig& c, const std::string& k, const Json& v) { c.suite = as_bool(k, v); }},
      {"alpha",
       [](RunConfig& c, const std::string& k, const Json& v) {
         c.alpha.clear();
         if (v.is_array()) {
           for (const auto& e : v) c.alpha.push_back(as_real(k, e));
         } else if (v.is_string()) {
           for (const auto& part : split(v.get<std::string>(), ',')) c.alpha.push_back(parse_real(k, part));
         } else {
           c.alpha.push_back(as_real(k, v));
         }
       }},
      {"family", [](RunConfig& c, const std::string& k, const Json& v) { c.family = as_string(k, v); }},
      {"expect_slope",
       [](RunConfig& c, const std::string& k, const Json& v) { c.expect_slope = as_optional_real(k, v); }},
      {"slope_tolerance",
       [](RunConfig& c, const std::string& k, const Json& v) { c.slope_tolerance = as_real(k, v); }},
      {"conditions",
       [](RunConfig& c, const std::string& k, const Json& v) {
         c.conditions.clear();
         if (v.is_array()) {
           for (const auto& e : v) c.conditions.push_back(as_string(k, e));
         } else {
           const auto text = as_string(k, v);
           if (text == "all") {
             c.conditions = {"2.6", "2.7", "2.8", "Q"};
           } else {
             c.conditions = split(text, ',');
           }
         }
       }},
      {"implication",
       [](RunConfig& c, const std::string& k, const Json& v) { c.implication = as_bool(k, v); }},
      {"export", [](RunConfig& c, const std::string& k, const Json& v) { c.export_path = as_string(k, v); }},
      {"points", [](RunConfig& c, const std::string& k, const Json& v) { c.points = as_unsigned(k, v); }},
      {"resolution",
       [](RunConfig& c, const std::string& k, const Json& v) { c.resolution = as_unsigned(k, v); }},
      {"delta_points",
       [](RunConfig& c, const std::string& k, const Json& v) { c.delta_points = as_unsigned(k, v); }},
  };
  return table;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos || (s.size() > 4 && s.compare(s.size() - 4, 4, ".csv") == 0);
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [key, setter] : setters()) out.push_back(key);
    return out;
  }();
  return keys;
}

void set_field(RunConfig& config, const std::string& key, const Json& value) {
  for (const auto& [name, setter] : setters()) {
    if (name == key) {
      setter(config, key, value);
      return;
    }
  }
  throw Error(ErrorKind::ParseError, "unknown config key '" + key + "'");
}

RunConfig config_from_json(const Json& doc, RunConfig base) {
  if (!doc.is_object()) throw Error(ErrorKind::ParseError, "config must be a JSON object");
  for (const auto& [key, value] : doc.items()) set_field(base, key, value);
  return base;
}

Json RunConfig::normalized(bool runtime) const {
  Json j;
  j["matrix"] = matrix;
  j["p_weights"] = p_weights;
  j["function"] = function;
  j["modulus"] = modulus;
  j["p"] = p;
  j["beta"] = beta;
  j["x"] = optional_json(x);
  j["gamma"] = optional_json(gamma);
  j["allow_large_beta"] = allow_large_beta;
  j["n"] = n;
  if (runtime) {
    j["out"] = out;
    j["threads"] = threads;
  }
  j["seed"] = seed;
  j["domain"] = std::string(to_string(domain));
  j["class"] = cls;
  j["witness"] = witness;
  j["len"] = len;
  j["trials"] = trials;
  j["lemma"] = lemma;
  j["kmax"] = kmax;
  j["grid"] = grid;
  j["growth_factor"] = growth_factor;
  j["variant"] = variant;
  j["orientation"] = orientation;
  j["corollary"] = corollary;
  j["suite"] = suite;
  j["alpha"] = alpha;
  j["family"] = family;
  j["expect_slope"] = optional_json(expect_slope);
  j["slope_tolerance"] = slope_tolerance;
  j["conditions"] = conditions;
  j["implication"] = implication;
  j["export"] = export_path;
  j["points"] = points;
  j["resolution"] = resolution;
  j["delta_points"] = delta_points;
  return j;
}

std::vector<std::size_t> parse_n_spec(const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto lo = parse_unsigned("n", text.substr(0, dots));
    const auto hi = parse_unsigned("n", text.substr(dots + 2));
    if (lo == 0 || hi < lo) bad("n", "range must satisfy 0 < lo <= hi");
    return geometric_range(lo, hi);
  }
  std::vector<std::size_t> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_unsigned("n", part));
  return out;
}

void validate_config(const RunConfig& c) {
  if (c.n.empty()) bad("n", "must not be empty");
  if (c.matrix != "fejer" && c.matrix != "lal" && c.matrix != "norlund" && !looks_like_path(c.matrix)) {
    bad("matrix", "expected fejer, lal, norlund or a CSV path");
  }
  if (c.p_weights != "ones" && c.p_weights != "harmonic" && c.p_weights != "geometric" &&
      c.p_weights != "linear" && !looks_like_path(c.p_weights)) {
    bad("p_weights", "expected ones, harmonic, geometric, linear or a CSV path");
  }
  std::optional<ModulusSpec> omega;
  if (c.modulus != "auto" && !looks_like_path(c.modulus)) omega = parse_modulus(c.modulus);
  if (c.variant != "auto" && !parse_bound_variant(c.variant)) bad("variant", "unknown bound variant");
  if (!parse_orientation(c.orientation)) bad("orientation", "expected forward or reversed");
  if (!parse_seq_class(c.cls)) bad("class", "expected rbvs, hbvs, mrbvs or mhbvs");
  if (!c.witness.empty() && c.witness != "mrbvs-not-rbvs" && c.witness != "mhbvs-not-hbvs") {
    bad("witness", "expected mrbvs-not-rbvs or mhbvs-not-hbvs");
  }
  if (c.lemma != 1 && c.lemma != 2) bad("lemma", "expected 1 or 2");
  if (c.family != "weierstrass" && c.family != "absx") bad("family", "expected weierstrass or absx");
  for (const auto& id : c.conditions) {
    if (!parse_condition(id)) bad("conditions", "unknown condition '" + id + "'");
  }
  if (c.grid < 2 || c.resolution < 2 || c.points < 2 || c.delta_points < 2) {
    bad("grid", "grid, resolution, points and delta_points must be >= 2");
  }
  if (!(c.growth_factor > 0.0) || !(c.slope_tolerance > 0.0)) bad("growth_factor", "factors must be positive");

  ExperimentParams params;
  params.p = c.p;
  params.beta = c.beta;
  params.x = c.x;
  params.allow_large_beta = c.allow_large_beta;
  if (!c.allow_large_beta || omega) validate(params, omega ? &*omega : nullptr);
}

}  // namespace fsum::cli
