#include "econodyn/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "econodyn/balance.hpp"
#include "econodyn/diagnostics.hpp"
#include "econodyn/harrod.hpp"
#include "econodyn/phillips.hpp"

namespace econodyn::scenario {
namespace {

constexpr long long kDefaultSegments = 200;

std::string child(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string item(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

[[noreturn]] void schema_error(const std::string& path, const std::string& message) {
  throw Failure(Status::schema, path + ": " + message);
}

void require_object(const Json& j, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
}

void reject_unknown(const Json& obj, const std::string& path,
                    const std::vector<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      schema_error(child(path, key), "unknown field");
    }
  }
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  const double value = j.get<double>();
  if (!std::isfinite(value)) schema_error(path, "must be finite");
  return value;
}

const Json& field(const Json& obj, const std::string& key, const std::string& path) {
  if (!obj.contains(key)) schema_error(child(path, key), "required field is missing");
  return obj.at(key);
}

double required_number(const Json& obj, const std::string& key, const std::string& path) {
  return number(field(obj, key, path), child(path, key));
}

std::optional<double> optional_number(const Json& obj, const std::string& key,
                                      const std::string& path) {
  if (!obj.contains(key)) return std::nullopt;
  return number(obj.at(key), child(path, key));
}

long long integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<long long>();
}

Eigen::VectorXd number_list(const Json& j, const std::string& path, std::size_t expected) {
  if (!j.is_array()) schema_error(path, "expected an array of numbers");
  if (j.size() != expected) {
    schema_error(path, "expected " + std::to_string(expected) + " entries, got " +
                           std::to_string(j.size()));
  }
  Eigen::VectorXd out(static_cast<Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) out[static_cast<Index>(i)] = number(j[i], item(path, i));
  return out;
}

// A number, or a list of [t, value] breakpoints joined linearly and held
// constant outside their range.
balance::CoeffFn coefficient(const Json& j, const std::string& path) {
  if (j.is_number()) {
    const double value = number(j, path);
    return [value](double) { return value; };
  }
  if (!j.is_array() || j.empty()) {
    schema_error(path, "expected a number or a non-empty list of [t, value] pairs");
  }
  std::vector<std::pair<double, double>> points;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const auto at = item(path, k);
    if (!j[k].is_array() || j[k].size() != 2) schema_error(at, "expected a [t, value] pair");
    const double t = number(j[k][0], item(at, 0));
    const double v = number(j[k][1], item(at, 1));
    if (!points.empty() && !(t > points.back().first)) {
      schema_error(item(at, 0), "breakpoint times must increase strictly");
    }
    points.emplace_back(t, v);
  }
  return [points](double t) {
    if (t <= points.front().first) return points.front().second;
    if (t >= points.back().first) return points.back().second;
    const auto hi = std::upper_bound(points.begin(), points.end(), t,
                                     [](double x, const auto& p) { return x < p.first; });
    const auto lo = hi - 1;
    const double s = (t - lo->first) / (hi->first - lo->first);
    return lo->second + s * (hi->second - lo->second);
  };
}

balance::System parse_system(const Json& params, const std::string& path) {
  const auto& a = field(params, "A", path);
  const auto a_path = child(path, "A");
  if (!a.is_array() || a.empty()) schema_error(a_path, "expected a non-empty square matrix");
  const std::size_t n = a.size();
  balance::System sys;
  sys.A.assign(n, std::vector<balance::CoeffFn>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto row_path = item(a_path, i);
    if (!a[i].is_array()) schema_error(row_path, "expected a row");
    if (a[i].size() != n) {
      schema_error(row_path, "expected " + std::to_string(n) + " entries, got " +
                                 std::to_string(a[i].size()));
    }
    for (std::size_t j = 0; j < n; ++j) sys.A[i][j] = coefficient(a[i][j], item(row_path, j));
  }
  const auto& c = field(params, "c", path);
  const auto c_path = child(path, "c");
  if (!c.is_array() || c.size() != n) {
    schema_error(c_path, "expected " + std::to_string(n) + " entries");
  }
  for (std::size_t i = 0; i < n; ++i) sys.c.push_back(coefficient(c[i], item(c_path, i)));
  if (const auto len = optional_number(params, "step_length", path)) {
    if (!(*len > 0.0)) schema_error(child(path, "step_length"), "must be positive");
    sys.step_length = *len;
  }
  return sys;
}

long long segments(const Json& config, const Overrides& overrides) {
  if (overrides.grid) {
    if (*overrides.grid < 2) schema_error("--grid", "must be at least 2");
    return *overrides.grid;
  }
  if (!config.contains("grid")) return kDefaultSegments;
  const long long value = integer(config.at("grid"), "grid");
  if (value < 2) schema_error("grid", "must be at least 2");
  return value;
}

double tolerance(const Json& params, const std::string& path) {
  const auto tol = optional_number(params, "tol", path);
  if (tol && !(*tol > 0.0)) schema_error(child(path, "tol"), "must be positive");
  return tol.value_or(kDefaultTolerance);
}

std::size_t max_iterations(const Json& params, const std::string& path) {
  if (!params.contains("max_iter")) return kDefaultMaxIterations;
  const long long value = integer(params.at("max_iter"), child(path, "max_iter"));
  if (value < 1) schema_error(child(path, "max_iter"), "must be at least 1");
  return static_cast<std::size_t>(value);
}

// Module validators name the offending field first; prefix it with the path.
template <typename F>
void validated(const std::string& path, F&& check) {
  try {
    check();
  } catch (const Error& e) {
    throw Failure(Status::schema, child(path, e.detail()));
  }
}

class Table {
 public:
  void add(std::string name, Eigen::VectorXd values) {
    names_.push_back(std::move(name));
    columns_.push_back(std::move(values));
  }

  std::string render() const {
    std::string out;
    for (std::size_t k = 0; k < names_.size(); ++k) out += (k ? "," : "") + names_[k];
    out += '\n';
    const Index rows = columns_.empty() ? 0 : columns_.front().size();
    for (Index r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < columns_.size(); ++k) {
        if (k) out += ',';
        out += format_double(columns_[k][r]);
      }
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Eigen::VectorXd> columns_;
};

Json solver_json(const SolverReport& r) {
  Json out;
  out["iterations"] = r.iterations;
  out["final_residual"] = r.final_residual;
  out["converged"] = r.converged;
  out["warnings"] = r.warnings;
  return out;
}

Json header(const std::string& kind, long long grid) {
  Json out;
  out["kind"] = kind;
  out["grid"] = grid;
  return out;
}

void fail_solver(Artifacts& a, const std::string& message) {
  a.status = Status::solver;
  a.message = message;
  a.report["error"] = message;
}

void dump(const Json& j, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close(2 * static_cast<std::size_t>(depth), ' ');
  switch (j.type()) {
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_double(v) : "null";
      break;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t k = 0; k < j.size(); ++k) {
        out += pad;
        dump(j[k], depth + 1, out);
        out += k + 1 < j.size() ? ",\n" : "\n";
      }
      out += close + "]";
      break;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      std::size_t k = 0;
      for (const auto& [key, value] : j.items()) {
        out += pad + Json(key).dump() + ": ";
        dump(value, depth + 1, out);
        out += ++k < j.size() ? ",\n" : "\n";
      }
      out += close + "}";
      break;
    }
    default:
      out += j.dump();
  }
}

Artifacts run_harrod(const Json& params, long long grid) {
  const std::string path = "parameters";
  reject_unknown(params, path, {"m", "n", "Y0", "K0", "t_end", "steps"});
  harrod::Params p;
  p.m = required_number(params, "m", path);
  p.n = required_number(params, "n", path);
  p.Y0 = required_number(params, "Y0", path);
  p.K0 = required_number(params, "K0", path);
  validated(path, [&] { harrod::validate(p); });
  const double horizon = harrod::forecast_horizon(p);
  const double t_end = optional_number(params, "t_end", path).value_or(0.9 * horizon);
  if (!(t_end > 0.0 && t_end < horizon)) {
    schema_error(child(path, "t_end"), "must lie in (0, n/m)");
  }
  long long steps = 20;
  if (params.contains("steps")) {
    steps = integer(params.at("steps"), child(path, "steps"));
    if (steps < 0) schema_error(child(path, "steps"), "must be non-negative");
  }

  const auto g = make_uniform_grid(0.0, t_end, static_cast<Index>(grid));
  Eigen::VectorXd exponential(g.size()), corrected(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    exponential[i] = harrod::income_exponential(p, g.node(i));
    corrected[i] = harrod::income_corrected(p, g.node(i));
  }
  Table table;
  table.add("t", g.nodes());
  table.add("Y_exponential", exponential);
  table.add("Y_corrected", corrected);

  Artifacts a;
  a.csv = table.render();
  a.report = header("harrod", grid);
  a.report["parameters"] = {{"m", p.m}, {"n", p.n}, {"Y0", p.Y0}, {"K0", p.K0}, {"t_end", t_end}};
  a.report["growth_rate"] = p.growth_rate();
  a.report["horizon"] = horizon;
  const auto s = static_cast<std::size_t>(steps);
  Json discrete;
  discrete["Y_c0"] = p.K0 / p.n;
  discrete["steps"] = steps;
  discrete["income"] = harrod::income_discrete(p, s);
  discrete["limit"] = p.K0 / p.n / (1.0 - p.growth_rate());
  discrete["exponential_discrepancy"] = harrod::exponential_discrepancy(p, s);
  a.report["discrete"] = discrete;
  a.report["warnings"] = harrod::reconcile_warnings(p);
  return a;
}

Artifacts run_phillips(const Json& params, long long grid) {
  const std::string path = "parameters";
  reject_unknown(params, path, {"k", "n", "m", "l", "Y1", "Y1p", "tau_end", "tol", "max_iter"});
  phillips::Params p;
  p.k = required_number(params, "k", path);
  p.n = required_number(params, "n", path);
  p.m = required_number(params, "m", path);
  p.l = required_number(params, "l", path);
  p.Y1 = required_number(params, "Y1", path);
  p.Y1p = required_number(params, "Y1p", path);
  validated(path, [&] { phillips::validate(p); });
  const double tau_end = optional_number(params, "tau_end", path).value_or(3.0);
  if (!(tau_end > 1.0)) schema_error(child(path, "tau_end"), "must exceed 1");
  const double tol = tolerance(params, path);
  const std::size_t max_iter = max_iterations(params, path);

  const auto g = make_uniform_grid(1.0, tau_end, static_cast<Index>(grid));
  const auto traj = phillips::corrected_income(p, g, tol, max_iter);
  Table table;
  table.add("tau", traj.tau);
  table.add("Y", traj.income);
  table.add("d2Y", traj.second_derivative);

  Artifacts a;
  a.csv = table.render();
  a.report = header("phillips", grid);
  a.report["parameters"] = {{"k", p.k},   {"n", p.n},     {"m", p.m},          {"l", p.l},
                            {"Y1", p.Y1}, {"Y1p", p.Y1p}, {"tau_end", tau_end}};
  const auto classical = phillips::classical_coeffs(p);
  const auto initial = phillips::corrected_coeffs(p, 0.0);
  const auto d = phillips::dimensionless_coeffs(p);
  a.report["classical"] = {{"a", classical.a}, {"b", classical.b}};
  a.report["corrected_at_t0"] = {{"a", initial.a}, {"b", initial.b}};
  a.report["dimensionless"] = {{"alpha", d.alpha}, {"beta", d.beta}, {"gamma", d.gamma}};
  a.report["solver"] = solver_json(traj.report);
  a.report["equation_residual"] = phillips::equation_residual(p, traj);
  if (!traj.report.converged) fail_solver(a, "successive approximations did not converge");
  return a;
}

Table trajectory_table(const balance::Trajectory& traj, const std::string& prefix = "") {
  Table table;
  table.add("t", traj.t);
  for (Index i = 0; i < traj.x.cols(); ++i) {
    table.add(prefix + "x" + std::to_string(i + 1), traj.x.col(i));
  }
  return table;
}

Artifacts run_cauchy(const Json& params, long long grid) {
  const std::string path = "parameters";
  reject_unknown(params, path, {"A", "c", "step_length", "p", "pp", "tol", "max_iter"});
  const auto sys = parse_system(params, path);
  const std::size_t n = sys.size();
  const balance::CauchyData data{number_list(field(params, "p", path), child(path, "p"), n),
                                 number_list(field(params, "pp", path), child(path, "pp"), n)};
  const double tol = tolerance(params, path);
  const std::size_t max_iter = max_iterations(params, path);

  const auto g = make_uniform_grid(0.0, 1.0, static_cast<Index>(grid));
  const auto traj = balance::simulate_cauchy(sys, data, g, tol, max_iter);
  Artifacts a;
  a.csv = trajectory_table(traj).render();
  a.report = header("balance-cauchy", grid);
  a.report["participants"] = n;
  a.report["step_length"] = sys.step_length;
  a.report["lambda"] = balance::kTaylorParameter;
  a.report["solver"] = solver_json(traj.report);
  a.report["equation_residual"] = balance::equation_residual(sys, traj);
  if (!traj.report.converged) fail_solver(a, "successive approximations did not converge");
  return a;
}

Json criticality_json(const balance::CriticalityReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"re", e.number.real()}, {"im", e.number.imag()}, {"gap", e.gap}});
  }
  Json out;
  out["entries"] = entries;
  out["min_gap"] = r.min_gap;
  out["threshold"] = balance::kCriticalGap;
  out["warning"] = r.warning;
  out["messages"] = r.messages;
  return out;
}

std::size_t characteristic_count(const Json& params, const std::string& path) {
  if (!params.contains("characteristic_count")) return 3;
  const auto key = child(path, "characteristic_count");
  const long long value = integer(params.at("characteristic_count"), key);
  if (value < 1) schema_error(key, "must be at least 1");
  return static_cast<std::size_t>(value);
}

Artifacts run_forecast(const Json& params, long long grid) {
  const std::string path = "parameters";
  reject_unknown(params, path, {"A", "c", "step_length", "p", "r", "characteristic_count"});
  const auto sys = parse_system(params, path);
  const std::size_t n = sys.size();
  const balance::ForecastData data{number_list(field(params, "p", path), child(path, "p"), n),
                                   number_list(field(params, "r", path), child(path, "r"), n)};
  const std::size_t count = characteristic_count(params, path);

  const auto g = make_uniform_grid(0.0, 1.0, static_cast<Index>(grid));
  Artifacts a;
  a.report = header("balance-forecast", grid);
  a.report["participants"] = n;
  a.report["step_length"] = sys.step_length;
  a.report["lambda"] = balance::kTaylorParameter;
  a.report["criticality"] = criticality_json(balance::criticality_check(sys, g, count));
  try {
    const auto traj = balance::forecast(sys, data, g);
    a.csv = trajectory_table(traj).render();
    a.report["solver"] = solver_json(traj.report);
    a.report["equation_residual"] = balance::equation_residual(sys, traj);
  } catch (const Error& e) {
    fail_solver(a, e.what());
  }
  return a;
}

std::vector<balance::Variant> parse_variants(const Json& list, const std::string& path,
                                             std::size_t n) {
  if (!list.is_array()) schema_error(path, "expected an array of variants");
  std::vector<balance::Variant> out;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const auto at = item(path, k);
    require_object(list[k], at);
    reject_unknown(list[k], at, {"dc", "dr"});
    balance::Variant v;
    if (list[k].contains("dc")) {
      const auto& dc = list[k].at("dc");
      const auto dc_path = child(at, "dc");
      if (!dc.is_array() || dc.size() != n) {
        schema_error(dc_path, "expected " + std::to_string(n) + " entries");
      }
      for (std::size_t i = 0; i < n; ++i) {
        v.dc.push_back(dc[i].is_null() ? balance::CoeffFn{} : coefficient(dc[i], item(dc_path, i)));
      }
    }
    if (list[k].contains("dr")) v.dr = number_list(list[k].at("dr"), child(at, "dr"), n);
    out.push_back(std::move(v));
  }
  return out;
}

Artifacts run_sweep(const Json& params, long long grid, const Overrides& overrides) {
  const std::string path = "parameters";
  reject_unknown(params, path, {"A", "c", "step_length", "p", "r", "variants"});
  const auto sys = parse_system(params, path);
  const std::size_t n = sys.size();
  const balance::ForecastData base{number_list(field(params, "p", path), child(path, "p"), n),
                                   number_list(field(params, "r", path), child(path, "r"), n)};
  std::vector<balance::Variant> variants;
  if (overrides.variants) {
    const Json file = load_json(*overrides.variants);
    const Json& list = file.is_object() && file.contains("variants") ? file.at("variants") : file;
    variants = parse_variants(list, "variants", n);
  } else {
    variants = parse_variants(field(params, "variants", path), child(path, "variants"), n);
  }

  const auto g = make_uniform_grid(0.0, 1.0, static_cast<Index>(grid));
  Artifacts a;
  a.report = header("balance-sweep", grid);
  a.report["participants"] = n;
  a.report["lambda"] = balance::kTaylorParameter;
  a.report["variants"] = variants.size();
  try {
    const auto results = balance::variational_sweep(sys, base, variants, g);
    Table table;
    table.add("t", g.nodes());
    for (std::size_t k = 0; k < results.size(); ++k) {
      const auto& x = results[k].x;
      for (Index i = 0; i < x.cols(); ++i) {
        table.add("v" + std::to_string(k + 1) + "_x" + std::to_string(i + 1), x.col(i));
      }
    }
    a.csv = table.render();
  } catch (const Error& e) {
    fail_solver(a, e.what());
  }
  return a;
}

Artifacts run_diagnose(const Json& config, const std::string& kind, long long grid) {
  const std::string path = "parameters";
  const auto& params = config.at("parameters");
  if (kind == "diagnose") reject_unknown(params, path, {"A", "c", "step_length", "cond_threshold"});
  const auto sys = parse_system(params, path);
  double threshold = diagnostics::kDefaultConditionThreshold;
  if (kind == "diagnose") {
    threshold = optional_number(params, "cond_threshold", path).value_or(threshold);
    if (!(threshold > 1.0)) schema_error(child(path, "cond_threshold"), "must exceed 1");
  }

  const auto g = make_uniform_grid(0.0, 1.0, static_cast<Index>(grid));
  const auto health = diagnostics::diagnose(sys, g, threshold);
  const Index m = g.size();
  Eigen::VectorXd norms(m), dets(m), conditions(m);
  for (Index k = 0; k < m; ++k) {
    const auto& rec = health.records[static_cast<std::size_t>(k)];
    norms[k] = rec.inf_norm;
    dets[k] = rec.det;
    conditions[k] = rec.condition;
  }
  Table table;
  table.add("t", g.nodes());
  table.add("inf_norm", norms);
  table.add("det", dets);
  table.add("condition", conditions);

  Artifacts a;
  a.csv = table.render();
  a.report = header("diagnose", grid);
  a.report["source_kind"] = kind;
  a.report["participants"] = sys.size();
  a.report["cond_threshold"] = threshold;
  a.report["flags"] = {{"contractive", health.contractive},
                       {"invertible_everywhere", health.invertible_everywhere},
                       {"well_conditioned", health.well_conditioned},
                       {"nonnegative", health.nonnegative},
                       {"irreducible", health.irreducible}};
  a.report["max_inf_norm"] = norms.maxCoeff();
  a.report["max_condition"] = conditions.maxCoeff();
  a.report["messages"] = health.messages;
  return a;
}

const std::vector<std::string> kKinds{"harrod",           "phillips",      "balance-cauchy",
                                      "balance-forecast", "balance-sweep", "diagnose"};

std::string check_top_level(const Json& config) {
  require_object(config, "config");
  reject_unknown(config, "", {"kind", "parameters", "grid", "output"});
  const auto& kind = field(config, "kind", "");
  if (!kind.is_string()) schema_error("kind", "expected a string");
  const auto name = kind.get<std::string>();
  if (std::find(kKinds.begin(), kKinds.end(), name) == kKinds.end()) {
    schema_error("kind", "unknown kind \"" + name +
                             "\"; expected one of harrod, phillips, balance-cauchy, "
                             "balance-forecast, balance-sweep, diagnose");
  }
  require_object(field(config, "parameters", ""), "parameters");
  return name;
}

}  // namespace

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(Status::missing_file, path + ": cannot open file");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Failure(Status::schema, path + ": invalid JSON (" + e.what() + ")");
  }
}

Artifacts run(const Json& config, const Overrides& overrides) {
  const auto kind = check_top_level(config);
  const long long grid = segments(config, overrides);
  const auto& params = config.at("parameters");
  if (kind == "harrod") return run_harrod(params, grid);
  if (kind == "phillips") return run_phillips(params, grid);
  if (kind == "balance-cauchy") return run_cauchy(params, grid);
  if (kind == "balance-forecast") return run_forecast(params, grid);
  if (kind == "balance-sweep") return run_sweep(params, grid, overrides);
  return run_diagnose(config, kind, grid);
}

Artifacts diagnose(const Json& config, const Overrides& overrides) {
  const auto kind = check_top_level(config);
  if (kind == "harrod" || kind == "phillips") {
    schema_error("kind", "diagnose needs a balance-type config, got \"" + kind + "\"");
  }
  return run_diagnose(config, kind, segments(config, overrides));
}

std::string output_dir(const Json& config, const Overrides& overrides) {
  if (overrides.out) return *overrides.out;
  if (!config.is_object() || !config.contains("output")) {
    schema_error("output", "required field is missing (or pass --out)");
  }
  const auto& out = config.at("output");
  if (!out.is_string() || out.get<std::string>().empty()) {
    schema_error("output", "expected a non-empty directory path");
  }
  return out.get<std::string>();
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.16e", value);
  return buffer;
}

std::string dump_report(const Json& report) {
  std::string out;
  dump(report, 0, out);
  out += '\n';
  return out;
}

void write_artifacts(const Artifacts& artifacts, const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Failure(Status::io, dir + ": cannot create directory (" + ec.message() + ")");
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    if (!out) throw Failure(Status::io, path.string() + ": write failed");
  };
  if (!artifacts.csv.empty()) write("trajectory.csv", artifacts.csv);
  write("report.json", dump_report(artifacts.report));
}

int execute(Command command, const std::string& config_path, const Overrides& overrides,
            std::ostream& out, std::ostream& err) {
  try {
    const Json config = load_json(config_path);
    const auto dir = output_dir(config, overrides);
    const auto artifacts = command == Command::run ? run(config, overrides)
                                                   : diagnose(config, overrides);
    write_artifacts(artifacts, dir);
    if (artifacts.status != Status::ok) {
      err << "error: " << artifacts.message << "\n";
      return static_cast<int>(artifacts.status);
    }
    out << "wrote " << dir << "\n";
    return 0;
  } catch (const Failure& f) {
    err << "error: " << f.what() << "\n";
    return static_cast<int>(f.status());
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return static_cast<int>(Status::solver);
  }
}

}  // namespace econodyn::scenario
