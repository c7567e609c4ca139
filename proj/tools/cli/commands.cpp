#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "fsum/classes.hpp"
#include "fsum/error.hpp"
#include "fsum/fourier.hpp"
#include "fsum/harness.hpp"
#include "fsum/kernels.hpp"
#include "fsum/matrix.hpp"
#include "fsum/moduli.hpp"
#include "fsum/numeric.hpp"
#include "fsum/serialize.hpp"
#include "svg.hpp"

namespace fsum::cli {

namespace fs = std::filesystem;

namespace {

constexpr const char* kVersion = "0.1.0";

bool looks_like_path(const std::string& s) {
  return s.find('/') != std::string::npos || (s.size() > 4 && s.compare(s.size() - 4, 4, ".csv") == 0);
}

Json parse(const std::string& text) { return Json::parse(text); }

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

struct Outcome {
  bool pass = true;
  std::string anchor;
  Json result;
};

class Run {
 public:
  Run(const RunConfig& config, std::string command, std::ostream& out, std::ostream& err)
      : config_(config), command_(std::move(command)), out_(out), err_(err) {
    fs::create_directories(config_.out);
  }

  const RunConfig& config() const { return config_; }
  std::ostream& out() { return out_; }
  std::ostream& err() { return err_; }
  unsigned threads() const { return resolve_threads(config_.threads); }
  fs::path file(const char* name) const { return fs::path(config_.out) / name; }

  void write_report(const Outcome& outcome) const {
    Json doc;
    doc["tool"] = "fsum";
    doc["version"] = kVersion;
    doc["command"] = command_;
    doc["anchor"] = outcome.anchor;
    doc["status"] = outcome.pass ? "pass" : "fail";
    doc["config"] = config_.normalized(false);
    doc["result"] = outcome.result;
    std::ofstream f(file("report.json"));
    if (!f) throw Error(ErrorKind::IoError, "cannot write " + file("report.json").string());
    f << doc.dump(2) << '\n';
  }

 private:
  RunConfig config_;
  std::string command_;
  std::ostream& out_;
  std::ostream& err_;
};

NorlundWeights make_weights(const std::string& spec, std::size_t length) {
  if (spec == "ones") return NorlundWeights::ones(length);
  if (spec == "harmonic") return NorlundWeights::harmonic(length);
  if (spec == "geometric") return NorlundWeights::geometric(length);
  if (spec == "linear") return NorlundWeights::linear(length);
  return read_weights_csv(spec);
}

SummabilityMatrix make_matrix(const RunConfig& c, std::size_t n_max) {
  if (c.matrix == "fejer") return fejer_matrix(n_max);
  if (c.matrix == "lal") return lal_matrix(make_weights(c.p_weights, n_max + 1), n_max);
  if (c.matrix == "norlund") return norlund_matrix(make_weights(c.p_weights, n_max + 1), n_max);
  return read_matrix_csv(c.matrix);
}

PeriodicFunction make_function(const std::string& spec) {
  if (looks_like_path(spec)) return load_function_csv(spec);
  return function_by_name(spec);
}

std::vector<PeriodicFunction> make_functions(const std::string& spec) {
  if (spec == "corpus") return corpus();
  return {make_function(spec)};
}

ModulusSpec make_modulus(const std::string& spec, const PeriodicFunction& f, double beta) {
  if (spec == "auto") {
    if (const auto alpha = f.lipschitz_alpha()) return ModulusSpec::power(std::min(1.0, *alpha + beta));
    return ModulusSpec::power(0.5);
  }
  if (looks_like_path(spec)) return read_modulus_csv(spec);
  return parse_modulus(spec);
}

ExperimentParams make_params(const RunConfig& c) {
  ExperimentParams p;
  p.p = c.p;
  p.beta = c.beta;
  p.x = c.x;
  p.allow_large_beta = c.allow_large_beta;
  return p;
}

std::size_t n_top(const RunConfig& c) { return *std::max_element(c.n.begin(), c.n.end()); }

// ---------------------------------------------------------------------------

Outcome classify_witness(Run& run) {
  const auto& c = run.config();
  const bool rest = c.witness == "mrbvs-not-rbvs";
  const auto inside = rest ? SeqClass::mrbvs : SeqClass::mhbvs;
  const auto outside = rest ? SeqClass::rbvs : SeqClass::hbvs;
  const auto witness = find_separating_witness(inside, outside, c.len, c.trials, c.seed);

  Outcome o;
  o.anchor = rest ? "mrbvs-not-rbvs" : "mhbvs-not-hbvs";
  o.pass = witness.has_value();
  o.result["pair"] = c.witness;
  o.result["found"] = o.pass;
  o.result["witness"] = witness ? parse(to_json(*witness)) : Json(nullptr);

  std::vector<std::vector<double>> rows;
  if (witness) {
    run.out() << "witness (trial " << witness->trial << "):";
    for (auto w : witness->weights) run.out() << ' ' << w;
    run.out() << "\n" << to_string(inside) << " constant " << witness->exact_inside.numerator << '/'
              << witness->exact_inside.denominator << ", " << to_string(outside) << " constant inf\n";
    for (std::size_t k = 0; k < witness->row.size(); ++k) {
      rows.push_back({static_cast<double>(k), static_cast<double>(witness->weights[k]), witness->row[k]});
    }
  } else {
    run.out() << "no witness in " << c.trials << " trials\n";
  }
  const std::string columns[] = {"k", "weight", "value"};
  write_table_csv(run.file("table.csv"), columns, rows);
  return o;
}

Outcome cmd_classify(Run& run) {
  const auto& c = run.config();
  if (!c.witness.empty()) return classify_witness(run);

  const auto cls = *parse_seq_class(c.cls);
  const auto a = make_matrix(c, n_top(c));
  const auto reports = classify_rows(a, cls);

  Outcome o;
  o.anchor = "class-" + c.cls;
  Json rows = Json::array();
  std::vector<std::vector<double>> table;
  double worst = 0.0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const std::size_t n = i + 1;
    Json r = parse(to_json(reports[i]));
    r["n"] = n;
    rows.push_back(std::move(r));
    table.push_back({static_cast<double>(n), reports[i].in_class ? 1.0 : 0.0, reports[i].constant,
                     static_cast<double>(reports[i].witness_m)});
    o.pass = o.pass && reports[i].in_class;
    worst = std::max(worst, reports[i].constant);
  }
  o.result["matrix"] = a.name();
  o.result["class"] = std::string(to_string(cls));
  o.result["n_max"] = a.n_max();
  o.result["all_in_class"] = o.pass;
  o.result["max_constant"] = number(worst);
  o.result["rows"] = std::move(rows);
  const std::string columns[] = {"n", "in_class", "constant", "witness_m"};
  write_table_csv(run.file("table.csv"), columns, table);
  run.out() << a.name() << ' ' << to_string(cls) << ": rows 1.." << a.n_max() << (o.pass ? " all in class" : " not all in class")
            << ", max constant " << worst << '\n';
  return o;
}

Outcome cmd_kernel(Run& run) {
  const auto& c = run.config();
  Outcome o;
  std::vector<std::vector<double>> table;
  if (c.lemma == 1) {
    o.anchor = "lemma1";
    std::vector<DirichletBoundReport> reports(c.kmax + 1);
    parallel_for(reports.size(), run.threads(), [&](std::size_t k) { reports[k] = check_dirichlet_bounds(k, c.grid); });
    Json per_k = Json::array();
    double worst_decay = 0.0;
    double worst_uniform = 0.0;
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& r = reports[k];
      o.pass = o.pass && r.passes;
      worst_decay = std::max(worst_decay, r.decay.max_ratio);
      worst_uniform = std::max(worst_uniform, r.uniform.max_ratio);
      Json e = parse(to_json(r));
      e["k"] = k;
      per_k.push_back(std::move(e));
      table.push_back({static_cast<double>(k), r.decay.max_ratio, r.decay.attained_t, r.uniform.max_ratio,
                       r.uniform.attained_t});
    }
    o.result["kmax"] = c.kmax;
    o.result["grid"] = c.grid;
    o.result["passes"] = o.pass;
    o.result["max_decay_ratio"] = number(worst_decay);
    o.result["max_uniform_ratio"] = number(worst_uniform);
    o.result["per_k"] = std::move(per_k);
    const std::string columns[] = {"k", "decay_ratio", "decay_t", "uniform_ratio", "uniform_t"};
    write_table_csv(run.file("table.csv"), columns, table);
    run.out() << "dirichlet bounds k <= " << c.kmax << ": max |D_k| t/pi = " << worst_decay
              << ", max |D_k|/(k+1) = " << worst_uniform << (o.pass ? " (hold)" : " (VIOLATED)") << '\n';
    return o;
  }

  o.anchor = "lemma2";
  const auto cls = *parse_seq_class(c.cls);
  const auto a = make_matrix(c, n_top(c));
  std::vector<std::size_t> ns;
  for (auto n : c.n) {
    if (n >= 2) ns.push_back(n);
  }
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  if (ns.empty()) throw Error(ErrorKind::InvalidParams, "kernel sum bound needs some n >= 2");
  std::vector<KernelBoundReport> reports(ns.size());
  parallel_for(ns.size(), run.threads(),
               [&](std::size_t i) { reports[i] = check_kernel_sum_bound(a, ns[i], cls, c.grid); });
  Json per_n = Json::array();
  std::vector<double> ratios;
  for (const auto& r : reports) {
    per_n.push_back(parse(to_json(r)));
    ratios.push_back(r.max_ratio);
    table.push_back({static_cast<double>(r.n), static_cast<double>(r.grid_size), r.max_ratio, r.attained_t,
                     static_cast<double>(r.skipped_points)});
    run.out() << "n=" << r.n << " max ratio " << r.max_ratio << " at t=" << r.attained_t << '\n';
  }
  o.pass = half_range_bounded(ratios, c.growth_factor);
  o.result["matrix"] = a.name();
  o.result["class"] = std::string(to_string(cls));
  o.result["growth_factor"] = c.growth_factor;
  o.result["bounded"] = o.pass;
  o.result["per_n"] = std::move(per_n);
  const std::string columns[] = {"n", "grid_size", "max_ratio", "attained_t", "skipped_points"};
  write_table_csv(run.file("table.csv"), columns, table);
  run.out() << (o.pass ? "ratios do not grow" : "ratios GROW") << " (factor " << c.growth_factor << ")\n";
  return o;
}

void write_rate_outputs(Run& run, const std::vector<const RateReport*>& reports, const std::string& title) {
  std::vector<PlotSeries> series;
  if (reports.size() == 1) {
    write_rate_csv(*reports.front(), run.file("table.csv"));
    PlotSeries error{"error", {}, false};
    PlotSeries bound{"bound", {}, true};
    for (const auto& row : reports.front()->rows) {
      error.points.emplace_back(static_cast<double>(row.n), row.error);
      bound.points.emplace_back(static_cast<double>(row.n), row.bound);
    }
    series = {error, bound};
  } else {
    std::vector<std::vector<double>> table;
    for (std::size_t i = 0; i < reports.size(); ++i) {
      PlotSeries s{reports[i]->matrix_name + " / " + reports[i]->function_name, {}, false};
      for (const auto& row : reports[i]->rows) {
        table.push_back({static_cast<double>(i), static_cast<double>(row.n), row.error, row.bound, row.ratio});
        s.points.emplace_back(static_cast<double>(row.n), row.error);
      }
      series.push_back(std::move(s));
    }
    const std::string columns[] = {"series", "n", "error", "bound", "ratio"};
    write_table_csv(run.file("table.csv"), columns, table);
  }
  std::ofstream svg(run.file("plot.svg"));
  if (!svg) throw Error(ErrorKind::IoError, "cannot write " + run.file("plot.svg").string());
  svg << loglog_svg(title, "n", "error", series);
}

Outcome cmd_rates(Run& run) {
  const auto& c = run.config();
  ExperimentOptions options;
  options.threads = run.threads();
  Outcome o;

  if (c.corollary) {
    o.anchor = "corollary";
    CorollaryOptions co;
    co.family = c.family;
    co.slope_tolerance = c.slope_tolerance;
    if (c.beta > 0.0) co.beta = c.beta;
    co.experiment = options;
    const double ps[] = {c.p};
    const auto rows = corollary_suite(c.alpha, ps, c.n, co);
    Json items = Json::array();
    std::vector<const RateReport*> reports;
    for (const auto& r : rows) {
      items.push_back(parse(to_json(r)));
      reports.push_back(&r.report);
      o.pass = o.pass && r.pass;
    }
    o.result["family"] = c.family;
    o.result["rows"] = std::move(items);
    write_rate_outputs(run, reports, "corollary: Fejer means, " + c.family);
    run.out() << markdown_table(std::span<const CorollaryRow>(rows));
    return o;
  }

  if (c.suite) {
    o.anchor = "thm3-suite";
    const auto entries = shipped_rate_suite(c.n, c.p, options);
    Json items = Json::array();
    std::vector<const RateReport*> reports;
    std::vector<RateReport> copies;
    for (const auto& e : entries) {
      Json j = parse(to_json(e.report));
      j["matrix_verified"] = e.matrix_verified;
      items.push_back(std::move(j));
      reports.push_back(&e.report);
      copies.push_back(e.report);
      if (e.matrix_verified) o.pass = o.pass && e.report.ratio_bounded;
    }
    o.result["reports"] = std::move(items);
    write_rate_outputs(run, reports, "thm3-suite: shipped matrices x corpus");
    run.out() << markdown_table(std::span<const RateReport>(copies));
    return o;
  }

  const auto f = make_function(c.function);
  const auto omega = make_modulus(c.modulus, f, c.beta);
  const auto params = make_params(c);
  const auto a = make_matrix(c, n_top(c));
  const auto orientation = *parse_orientation(c.orientation);
  BoundVariant variant;
  if (c.variant != "auto") {
    variant = *parse_bound_variant(c.variant);
  } else if (c.x) {
    variant = BoundVariant::thm2;
  } else {
    variant = c.beta > 0.0 ? BoundVariant::thm3_pos_beta : BoundVariant::thm3_zero_beta;
  }

  const auto report = c.x ? run_pointwise_experiment(f, a, omega, params, c.n, variant, orientation, options)
                          : run_rate_experiment(f, a, omega, params, c.n, variant, orientation, options);
  o.anchor = std::string(to_string(variant));
  o.result = parse(to_json(report));
  o.pass = report.degenerate() || report.ratio_bounded;
  if (c.expect_slope && !report.degenerate()) {
    const bool slope_ok = std::abs(report.fit.slope - *c.expect_slope) <= c.slope_tolerance;
    o.result["slope_check"] = {{"expected", *c.expect_slope}, {"tolerance", c.slope_tolerance}, {"pass", slope_ok}};
    o.pass = o.pass && slope_ok;
  }
  if (!report.class_check.in_class) {
    run.err() << "warning: " << report.matrix_name << " rows not in " << to_string(report.class_check.label)
              << "; the bound is not guaranteed\n";
  }
  write_rate_outputs(run, {&report}, o.anchor + ": " + report.matrix_name + " on " + report.function_name);
  run.out() << markdown_table(std::span<const RateReport>(&report, 1));
  if (report.degenerate()) run.out() << "degenerate: errors at the floor, no slope\n";
  return o;
}

Outcome cmd_conditions(Run& run) {
  const auto& c = run.config();
  Outcome o;
  o.anchor = c.implication ? "lemma3" : "conditions";
  const auto functions = make_functions(c.function);
  auto params = make_params(c);
  params.x = c.x.value_or(1.0);

  Json series = Json::array();
  Json implications = Json::array();
  std::vector<std::vector<double>> table;
  for (const auto& f : functions) {
    const auto omega = make_modulus(c.modulus, f, c.beta);
    for (const auto& text : c.conditions) {
      const auto id = *parse_condition(text);
      const auto gamma = id == ConditionId::weighted_tail ? c.gamma : std::nullopt;
      const auto report = evaluate_condition(f, omega, params, id, gamma, c.n);
      Json j = parse(to_json(report));
      j["function"] = f.name();
      j["modulus"] = omega.label();
      j["bounded"] = half_range_bounded(report.ratios(), 2.0);
      const double index = static_cast<double>(series.size());
      for (const auto& row : report.per_n) {
        table.push_back({index, static_cast<double>(row.n), row.lhs, row.rhs_scale, row.ratio});
      }
      run.out() << f.name() << " [" << text << "] implied constant " << report.implied_constant << '\n';
      series.push_back(std::move(j));
    }
    if (c.implication) {
      const auto imp = check_tail_implication(f, omega, params, c.gamma, c.n);
      Json j = parse(to_json(imp));
      j["function"] = f.name();
      implications.push_back(std::move(j));
      o.pass = o.pass && imp.holds();
      if (!imp.holds()) run.out() << f.name() << ": weighted tail bounded but cell sum is not\n";
    }
  }
  o.result["x"] = *params.x;
  o.result["series"] = std::move(series);
  o.result["implications"] = std::move(implications);
  const std::string columns[] = {"series", "n", "lhs", "rhs_scale", "ratio"};
  write_table_csv(run.file("table.csv"), columns, table);
  return o;
}

Outcome cmd_corpus(Run& run) {
  const auto& c = run.config();
  Outcome o;
  o.anchor = "function-classes";
  if (!c.export_path.empty()) {
    write_function_csv(make_function(c.function), c.points, c.export_path);
    run.out() << "wrote " << c.function << " on " << c.points << " points to " << c.export_path << '\n';
  }
  const auto params = make_params(c);
  SmoothnessOptions smooth;
  smooth.t_grid = c.resolution;
  smooth.x_quad = c.resolution;
  smooth.domain = c.domain;
  smooth.threads = run.threads();

  Json members = Json::array();
  std::vector<std::vector<double>> table;
  const auto functions = corpus();
  for (std::size_t i = 0; i < functions.size(); ++i) {
    const auto& f = functions[i];
    const auto omega = make_modulus(c.modulus, f, c.beta);
    const auto m = membership_constant(f, omega, params, c.delta_points, smooth);
    Json j;
    j["name"] = f.name();
    j["description"] = f.description();
    j["alpha"] = f.lipschitz_alpha() ? Json(*f.lipschitz_alpha()) : Json(nullptr);
    j["modulus"] = omega.label();
    j["membership"] = parse(to_json(m));
    members.push_back(std::move(j));
    o.pass = o.pass && std::isfinite(m.constant);
    table.push_back({static_cast<double>(i), f.lipschitz_alpha().value_or(std::nan("")), m.constant, m.witness_delta});
    run.out() << f.name() << ": " << f.description() << ", membership constant " << m.constant << " vs "
              << omega.label() << '\n';
  }
  o.result["members"] = std::move(members);
  const std::string columns[] = {"index", "alpha", "membership_constant", "witness_delta"};
  write_table_csv(run.file("table.csv"), columns, table);
  return o;
}

std::string dashed(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

bool is_flag(const std::string& key) {
  return key == "allow_large_beta" || key == "corollary" || key == "suite";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Summability means of Fourier series: numerical checks", "fsum"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file; flags override it");
  std::map<std::string, std::string> raw;
  std::map<std::string, bool> flags;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : config_keys()) {
    if (is_flag(key)) {
      options[key] = app.add_flag("--" + dashed(key), flags[key]);
    } else {
      options[key] = app.add_option("--" + dashed(key), raw[key]);
    }
  }
  bool no_implication = false;
  auto* no_implication_opt = app.add_flag("--no-implication", no_implication, "skip the weighted-tail pairing");

  const std::map<std::string, std::string> descriptions = {
      {"classify", "classify matrix rows or search for a separating witness"},
      {"kernel", "Dirichlet kernel bounds (--lemma 1) or kernel-sum bounds (--lemma 2)"},
      {"rates", "rate-of-approximation experiments"},
      {"conditions", "integral conditions on f at a point"},
      {"corpus", "list corpus functions and their modulus-class constants"},
  };
  std::map<std::string, CLI::App*> subcommands;
  for (const auto& [name, text] : descriptions) subcommands[name] = app.add_subcommand(name, text);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  std::string command;
  for (const auto& [name, sub] : subcommands) {
    if (sub->parsed()) command = name;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorKind::IoError, "cannot open config " + config_path);
      Json doc;
      try {
        doc = Json::parse(in);
      } catch (const Json::parse_error& e) {
        throw Error(ErrorKind::ParseError, config_path + ": " + e.what());
      }
      config = config_from_json(doc);
    }
    for (const auto& key : config_keys()) {
      if (options[key]->count() == 0) continue;
      if (is_flag(key)) {
        set_field(config, key, Json(flags[key]));
      } else {
        set_field(config, key, Json(raw[key]));
      }
    }
    if (no_implication_opt->count() > 0) config.implication = !no_implication;
    validate_config(config);
  } catch (const Error& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    Run run(config, command, out, err);
    Outcome outcome;
    if (command == "classify") outcome = cmd_classify(run);
    if (command == "kernel") outcome = cmd_kernel(run);
    if (command == "rates") outcome = cmd_rates(run);
    if (command == "conditions") outcome = cmd_conditions(run);
    if (command == "corpus") outcome = cmd_corpus(run);
    run.write_report(outcome);
    out << command << ": " << (outcome.pass ? "PASS" : "FAIL") << " [" << outcome.anchor << "]\n";
    return outcome.pass ? kExitPass : kExitFail;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::NotInClass ? kExitFail : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace fsum::cli
