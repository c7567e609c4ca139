#include "fsum/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "csv.hpp"
#include "json.hpp"

namespace fsum {

namespace {

using Json = nlohmann::ordered_json;

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_number(const std::optional<double>& v) { return v ? number(*v) : Json(nullptr); }

Json params_json(const ExperimentParams& p) {
  Json j;
  j["p"] = number(p.p);
  j["beta"] = number(p.beta);
  j["x"] = optional_number(p.x);
  j["allow_large_beta"] = p.allow_large_beta;
  return j;
}

Json kernel_json(const KernelBoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["grid_size"] = r.grid_size;
  j["max_ratio"] = number(r.max_ratio);
  j["attained_t"] = number(r.attained_t);
  j["skipped_points"] = r.skipped_points;
  return j;
}

Json class_json(const ClassReport& r) {
  Json j;
  j["label"] = std::string(to_string(r.label));
  j["in_class"] = r.in_class;
  j["constant"] = number(r.constant);
  j["witness_m"] = r.witness_m;
  return j;
}

Json exact_json(const ExactClassReport& r) {
  Json j;
  j["label"] = std::string(to_string(r.label));
  j["in_class"] = r.in_class;
  j["numerator"] = r.numerator;
  j["denominator"] = r.denominator;
  j["constant"] = number(r.constant());
  j["witness_m"] = r.witness_m;
  return j;
}

Json condition_json(const ConditionReport& r) {
  Json j;
  j["condition_id"] = std::string(to_string(r.id));
  j["x"] = number(r.x);
  j["gamma"] = optional_number(r.gamma);
  j["implied_constant"] = number(r.implied_constant);
  Json rows = Json::array();
  for (const auto& row : r.per_n) {
    Json e;
    e["n"] = row.n;
    e["lhs"] = number(row.lhs);
    e["rhs_scale"] = number(row.rhs_scale);
    e["ratio"] = number(row.ratio);
    rows.push_back(std::move(e));
  }
  j["per_n"] = std::move(rows);
  return j;
}

Json rate_json(const RateReport& r) {
  Json j;
  j["matrix_name"] = r.matrix_name;
  j["function_name"] = r.function_name;
  j["modulus"] = r.modulus_label;
  j["params"] = params_json(r.params);
  j["bound_variant"] = std::string(to_string(r.variant));
  j["orientation"] = std::string(to_string(r.orientation));
  j["pointwise_x"] = optional_number(r.x);
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["n"] = row.n;
    e["error"] = number(row.error);
    e["bound"] = number(row.bound);
    e["ratio"] = number(row.ratio);
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  j["slope"] = number(r.fit.slope);
  j["slope_stderr"] = number(r.fit.stderr_slope);
  j["fit_points"] = r.fit.points;
  j["degenerate"] = r.fit.degenerate;
  j["ratio_bounded"] = r.ratio_bounded;
  Json cls;
  cls["label"] = std::string(to_string(r.class_check.label));
  cls["in_class"] = r.class_check.in_class;
  cls["worst_constant"] = number(r.class_check.worst_constant);
  cls["failing_rows"] = r.class_check.failing_rows;
  j["class_check"] = std::move(cls);
  Json conditions = Json::array();
  for (const auto& c : r.conditions) conditions.push_back(condition_json(c));
  j["conditions"] = std::move(conditions);
  return j;
}

std::string fmt(double v, const char* spec = "%.4g") {
  if (!std::isfinite(v)) return std::isnan(v) ? "n/a" : "inf";
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

std::string to_json(const KernelBoundReport& r) { return kernel_json(r).dump(); }

std::string to_json(const DirichletBoundReport& r) {
  Json j;
  j["decay"] = kernel_json(r.decay);
  j["uniform"] = kernel_json(r.uniform);
  j["passes"] = r.passes;
  return j.dump();
}

std::string to_json(const ClassReport& r) { return class_json(r).dump(); }

std::string to_json(const ExactClassReport& r) { return exact_json(r).dump(); }

std::string to_json(const SeparatingWitness& w) {
  Json j;
  j["weights"] = w.weights;
  Json row = Json::array();
  for (double v : w.row) row.push_back(number(v));
  j["row"] = std::move(row);
  j["inside"] = class_json(w.inside);
  j["outside"] = class_json(w.outside);
  j["exact_inside"] = exact_json(w.exact_inside);
  j["exact_outside"] = exact_json(w.exact_outside);
  j["trial"] = w.trial;
  return j.dump();
}

std::string to_json(const ConditionReport& r) { return condition_json(r).dump(); }

std::string to_json(const TailImplication& r) {
  Json j;
  j["weighted_tail"] = condition_json(r.weighted_tail);
  j["cell_sum"] = condition_json(r.cell_sum);
  j["tail_bounded"] = r.tail_bounded;
  j["cell_sum_bounded"] = r.cell_sum_bounded;
  j["holds"] = r.holds();
  return j.dump();
}

std::string to_json(const MembershipReport& r) {
  Json j;
  j["constant"] = number(r.constant);
  j["witness_delta"] = number(r.witness_delta);
  j["domain"] = std::string(to_string(r.domain));
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    Json e;
    e["delta"] = number(row.delta);
    e["omega_beta"] = number(row.omega_beta);
    e["omega"] = number(row.omega);
    e["ratio"] = number(row.ratio);
    rows.push_back(std::move(e));
  }
  j["rows"] = std::move(rows);
  return j.dump();
}

std::string to_json(const RateReport& r) { return rate_json(r).dump(); }

std::string to_json(const CorollaryRow& r) {
  Json j;
  j["alpha"] = number(r.alpha);
  j["p"] = number(r.p);
  j["beta"] = number(r.beta);
  j["slope"] = number(r.slope);
  j["slope_stderr"] = number(r.stderr_slope);
  j["lower"] = number(r.lower);
  j["upper"] = number(r.upper);
  j["pass"] = r.pass;
  j["report"] = rate_json(r.report);
  return j.dump();
}

void write_table_csv(const std::filesystem::path& path, std::span<const std::string> columns,
                     const std::vector<std::vector<double>>& rows) {
  auto out = detail::open_output(path);
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << detail::format_double(row[i]);
    out << '\n';
  }
  if (!out) throw Error(ErrorKind::IoError, "failed writing " + path.string());
}

void write_rate_csv(const RateReport& r, const std::filesystem::path& path) {
  const std::string columns[] = {"n", "error", "bound", "ratio"};
  std::vector<std::vector<double>> rows;
  for (const auto& row : r.rows) rows.push_back({static_cast<double>(row.n), row.error, row.bound, row.ratio});
  write_table_csv(path, columns, rows);
}

void write_membership_csv(const MembershipReport& r, const std::filesystem::path& path) {
  const std::string columns[] = {"delta", "omega_beta", "omega", "ratio"};
  std::vector<std::vector<double>> rows;
  for (const auto& row : r.rows) rows.push_back({row.delta, row.omega_beta, row.omega, row.ratio});
  write_table_csv(path, columns, rows);
}

std::string markdown_table(std::span<const RateReport> reports) {
  std::ostringstream out;
  out << "| matrix | function | variant | slope | stderr | max ratio | bounded | rows in class |\n";
  out << "|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : reports) {
    double worst = 0.0;
    for (const auto& row : r.rows) worst = std::max(worst, row.ratio);
    out << "| " << r.matrix_name << " | " << r.function_name << " | " << to_string(r.variant) << " | "
        << fmt(r.fit.slope) << " | " << fmt(r.fit.stderr_slope) << " | " << fmt(worst) << " | "
        << (r.ratio_bounded ? "yes" : "no") << " | " << (r.class_check.in_class ? "yes" : "no") << " |\n";
  }
  return out.str();
}

std::string markdown_table(std::span<const CorollaryRow> rows) {
  std::ostringstream out;
  out << "| alpha | p | beta | slope | stderr | window | pass |\n";
  out << "|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    out << "| " << fmt(r.alpha) << " | " << fmt(r.p) << " | " << fmt(r.beta) << " | " << fmt(r.slope) << " | "
        << fmt(r.stderr_slope) << " | [" << fmt(r.lower) << ", " << fmt(r.upper) << "] | "
        << (r.pass ? "yes" : "no") << " |\n";
  }
  return out.str();
}

}  // namespace fsum
