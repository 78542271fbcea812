#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rsq/rsq.h"

using nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string family = "hyperbolic";
  std::optional<double> g;
  std::optional<std::pair<double, double>> periods;
  std::string target;
  std::vector<std::pair<std::string, std::vector<double>>> grid;
  std::vector<std::string> checks;
  std::string sweep_check;
  std::vector<double> axis;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_nodes = 4'000'000;
  std::optional<double> tol;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string out;
  std::string format = "json-lines";
  bool timing = false;
  std::vector<std::string> inputs;
};

// ------------------------------------------------------------ formatting

std::string num(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_num(double v) { return std::isfinite(v) ? num(v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// A record is an ordered list of (field, already-encoded JSON value, CSV text).
struct Field {
  std::string name, json_text, csv_text;
};
using Record = std::vector<Field>;

Field f_num(const std::string& n, double v) { return {n, num(v), csv_num(v)}; }
Field f_str(const std::string& n, const std::string& v) { return {n, json(v).dump(), csv_field(v)}; }
Field f_bool(const std::string& n, bool v) { return {n, v ? "true" : "false", v ? "true" : "false"}; }

class Writer {
 public:
  Writer(const std::string& path, const std::string& format) : csv_(format == "csv") {
    if (!path.empty()) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw UsageError("cannot open output file '" + path + "'");
    }
  }
  void write(const Record& r) {
    std::ostream& o = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
    if (csv_) {
      if (!header_) {
        for (size_t k = 0; k < r.size(); ++k) o << (k ? "," : "") << r[k].name;
        o << "\n";
        header_ = true;
      }
      for (size_t k = 0; k < r.size(); ++k) o << (k ? "," : "") << r[k].csv_text;
      o << "\n";
    } else {
      o << "{";
      for (size_t k = 0; k < r.size(); ++k) o << (k ? "," : "") << json(r[k].name).dump() << ":" << r[k].json_text;
      o << "}\n";
    }
    o.flush();
  }

 private:
  bool csv_;
  bool header_ = false;
  std::ofstream file_;
};

// ------------------------------------------------------------ config

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      v.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
  }
  if (v.empty()) throw UsageError("empty list");
  return v;
}

std::vector<double> json_list(const json& j, const std::string& what) {
  std::vector<double> v;
  if (j.is_number()) return {j.get<double>()};
  if (!j.is_array()) throw UsageError(what + " must be a number or an array of numbers");
  for (const auto& x : j) {
    if (!x.is_number()) throw UsageError(what + " must contain numbers");
    v.push_back(x.get<double>());
  }
  return v;
}

void load_config(const std::string& path, RunConfig& c) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config parse error: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string k = it.key();
      const json& v = it.value();
      if (k == "command") c.command = v.get<std::string>();
      else if (k == "family") c.family = v.get<std::string>();
      else if (k == "g") c.g = v.get<double>();
      else if (k == "periods") {
        auto p = json_list(v, "periods");
        if (p.size() != 2) throw UsageError("periods must have two entries");
        c.periods = std::make_pair(p[0], p[1]);
      } else if (k == "target") c.target = v.get<std::string>();
      else if (k == "grid") {
        if (!v.is_object()) throw UsageError("grid must map argument names to values");
        for (auto g = v.begin(); g != v.end(); ++g) c.grid.emplace_back(g.key(), json_list(g.value(), "grid." + g.key()));
      } else if (k == "checks") c.checks = v.get<std::vector<std::string>>();
      else if (k == "sweep") {
        if (!v.is_object()) throw UsageError("sweep must be an object {check, axis}");
        for (auto s = v.begin(); s != v.end(); ++s) {
          if (s.key() == "check") c.sweep_check = s.value().get<std::string>();
          else if (s.key() == "axis") c.axis = json_list(s.value(), "sweep.axis");
          else throw UsageError("unknown sweep field '" + s.key() + "'");
        }
      } else if (k == "quad") {
        for (auto s = v.begin(); s != v.end(); ++s) {
          if (s.key() == "rel_tol") c.rel_tol = s.value().get<double>();
          else if (s.key() == "abs_tol") c.abs_tol = s.value().get<double>();
          else if (s.key() == "max_nodes") c.max_nodes = s.value().get<long>();
          else throw UsageError("unknown quad field '" + s.key() + "'");
        }
      } else if (k == "tol") c.tol = v.get<double>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "jobs") c.jobs = v.get<int>();
      else if (k == "out") c.out = v.get<std::string>();
      else if (k == "format") c.format = v.get<std::string>();
      else if (k == "inputs") c.inputs = v.get<std::vector<std::string>>();
      else throw UsageError("unknown config field '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("config type error: ") + e.what());
  }
}

// Content hash over everything that determines the numbers; output path, thread count
// and timing are excluded.
std::string config_hash(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["family"] = c.family;
  j["g"] = c.g ? json(num(*c.g)) : json(nullptr);
  j["periods"] = c.periods ? json({num(c.periods->first), num(c.periods->second)}) : json(nullptr);
  j["target"] = c.target;
  json grid = json::array();
  for (const auto& [k, v] : c.grid) {
    json vals = json::array();
    for (double x : v) vals.push_back(num(x));
    grid.push_back({k, vals});
  }
  j["grid"] = grid;
  j["checks"] = c.checks;
  j["sweep_check"] = c.sweep_check;
  json axis = json::array();
  for (double x : c.axis) axis.push_back(num(x));
  j["axis"] = axis;
  j["quad"] = {num(c.rel_tol), num(c.abs_tol), c.max_nodes};
  j["tol"] = c.tol ? json(num(*c.tol)) : json(nullptr);
  j["seed"] = c.seed;
  j["format"] = c.format;
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : j.dump()) h = (h ^ ch) * 1099511628211ull;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void validate(const RunConfig& c) {
  if (c.format != "json-lines" && c.format != "csv") throw UsageError("format must be json-lines or csv");
  if (c.jobs < 1) throw UsageError("jobs must be at least 1");
  if (c.tol && !(*c.tol >= 0)) throw UsageError("tol must be non-negative");
}

rsq_suite_config suite_config(const RunConfig& c) {
  rsq_suite_config s;
  rsq_suite_config_init(&s);
  s.rel_tol = c.rel_tol;
  s.abs_tol = c.abs_tol;
  s.max_nodes = c.max_nodes;
  if (c.tol) {
    s.has_tolerance = 1;
    s.tolerance = *c.tol;
  }
  s.seed = c.seed;
  s.jobs = c.jobs;
  return s;
}

// ------------------------------------------------------------ commands

struct ResultsDeleter {
  void operator()(rsq_results* r) const { rsq_results_free(r); }
};
using Results = std::unique_ptr<rsq_results, ResultsDeleter>;

Record result_record(const rsq_results* rs, size_t i, const RunConfig& c, const std::string& hash,
                     const std::string& stamp) {
  rsq_result_view v;
  rsq_result_get(rs, i, &v);
  json params = json::object();
  std::string pcsv;
  for (size_t k = 0; k < v.n_params; ++k) {
    const char* key = rsq_result_param_key(rs, i, k);
    const char* val = rsq_result_param_value(rs, i, k);
    params[key] = val;
    pcsv += (k ? ";" : "") + std::string(key) + "=" + val;
  }
  Record r;
  r.push_back(f_str("check_name", v.check_name));
  r.push_back({"params", params.dump(), csv_field(pcsv)});
  r.push_back(f_num("lhs_re", v.lhs.re));
  r.push_back(f_num("lhs_im", v.lhs.im));
  r.push_back(f_num("rhs_re", v.rhs.re));
  r.push_back(f_num("rhs_im", v.rhs.im));
  r.push_back(f_num("abs_err", v.abs_err));
  r.push_back(f_num("rel_err", v.rel_err));
  r.push_back(f_num("tolerance", v.tolerance));
  r.push_back(f_bool("passed", v.passed != 0));
  r.push_back(f_num("runtime_ms", c.timing ? v.runtime_ms : 0.0));
  r.push_back(f_str("version", rsq_version()));
  r.push_back(f_str("config_hash", hash));
  if (c.timing) r.push_back(f_str("timestamp", stamp));
  return r;
}

int emit_results(const rsq_results* rs, const RunConfig& c, const std::string& sweep_key) {
  Writer w(c.out, c.format);
  const std::string hash = config_hash(c), stamp = c.timing ? utc_now() : "";
  bool all = true;
  for (size_t i = 0; i < rsq_results_count(rs); ++i) {
    Record r = result_record(rs, i, c, hash, stamp);
    rsq_result_view v;
    rsq_result_get(rs, i, &v);
    if (!sweep_key.empty()) {
      double axis = NAN;
      for (size_t k = 0; k < v.n_params; ++k)
        if (sweep_key == rsq_result_param_key(rs, i, k)) axis = std::stod(rsq_result_param_value(rs, i, k));
      r.push_back(f_num("axis", axis));
      r.push_back(f_num("deviation", v.rel_err));
    }
    all = all && v.passed;
    w.write(r);
  }
  return all ? kExitPass : kExitFail;
}

int cmd_check(const RunConfig& c) {
  std::vector<std::string> names = c.checks;
  if (names.empty())
    for (size_t k = 0; k < rsq_check_count(); ++k) names.emplace_back(rsq_check_name(k));
  std::vector<const char*> ptrs;
  for (const auto& n : names) ptrs.push_back(n.c_str());
  const rsq_suite_config sc = suite_config(c);
  rsq_results* raw = nullptr;
  const int st = rsq_suite_run(ptrs.data(), ptrs.size(), &sc, &raw);
  if (st != RSQ_OK) throw UsageError(rsq_last_error());
  Results rs(raw);
  return emit_results(rs.get(), c, "");
}

int cmd_sweep(const RunConfig& c) {
  if (c.sweep_check.empty()) throw UsageError("sweep needs a check name (--check or sweep.check)");
  if (c.axis.empty()) throw UsageError("sweep needs a non-empty axis (--axis or sweep.axis)");
  const rsq_suite_config sc = suite_config(c);
  rsq_results* raw = nullptr;
  const int st = rsq_sweep(c.sweep_check.c_str(), c.axis.data(), c.axis.size(), &sc, &raw);
  if (st != RSQ_OK) {
    if (st == RSQ_E_UNKNOWN_CHECK || st == RSQ_E_DOMAIN || st == RSQ_E_CONFIG) throw UsageError(rsq_last_error());
    std::cerr << "sweep failed: " << rsq_last_error() << "\n";
    return kExitFail;
  }
  Results rs(raw);
  const std::string key = c.sweep_check.rfind("reduction.", 0) == 0 ? "w2" : "regulator";
  emit_results(rs.get(), c, key);
  return kExitPass;
}

int cmd_eval(const RunConfig& c) {
  const int arity = rsq_eval_arity(c.target.c_str());
  if (arity < 0) throw UsageError("unknown eval target '" + c.target + "'");
  if (!c.g) throw UsageError("eval needs a coupling g");
  // grid axes in the target's argument order
  std::vector<std::vector<double>> axes;
  for (int k = 0; k < arity; ++k) {
    const std::string name = rsq_eval_arg_name(c.target.c_str(), size_t(k));
    const std::vector<double>* vals = nullptr;
    for (const auto& [key, v] : c.grid)
      if (key == name) vals = &v;
    if (!vals || vals->empty()) throw UsageError("grid is missing values for '" + name + "'");
    axes.push_back(*vals);
  }
  for (const auto& [key, v] : c.grid) {
    bool known = false;
    for (int k = 0; k < arity; ++k) known = known || key == rsq_eval_arg_name(c.target.c_str(), size_t(k));
    if (!known) throw UsageError("'" + key + "' is not an argument of " + c.target);
  }
  rsq_coupling* cp = nullptr;
  const int st = c.periods ? rsq_coupling_new_periods(*c.g, c.periods->first, c.periods->second, &cp)
                           : rsq_coupling_new(*c.g, &cp);
  if (st != RSQ_OK) throw UsageError(rsq_last_error());
  std::unique_ptr<rsq_coupling, void (*)(rsq_coupling*)> coupling(cp, rsq_coupling_free);
  rsq_quad* qp = nullptr;
  rsq_quad_new(&qp);
  std::unique_ptr<rsq_quad, void (*)(rsq_quad*)> quad(qp, rsq_quad_free);
  if (rsq_quad_set(qp, c.rel_tol, c.abs_tol, c.max_nodes) != RSQ_OK) throw UsageError(rsq_last_error());

  std::vector<std::vector<double>> points(1);
  for (const auto& ax : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& p : points)
      for (double v : ax) {
        next.push_back(p);
        next.back().push_back(v);
      }
    points = std::move(next);
  }
  struct Out {
    int status = RSQ_OK;
    rsq_complex v{0, 0};
    double err = 0;
    std::string msg;
  };
  std::vector<Out> res(points.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < points.size(); k = next++) {
      Out& o = res[k];
      o.status = rsq_eval(c.target.c_str(), c.family.c_str(), cp, qp, points[k].data(), points[k].size(), &o.v, &o.err);
      if (o.status != RSQ_OK) o.msg = rsq_last_error();
    }
  };
  const size_t workers = std::min<size_t>(size_t(c.jobs), points.size());
  std::vector<std::thread> pool;
  for (size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Writer w(c.out, c.format);
  bool ok = true;
  for (size_t k = 0; k < points.size(); ++k) {
    const Out& o = res[k];
    if (o.status == RSQ_E_CONFIG) throw UsageError(o.msg);
    Record r;
    r.push_back(f_str("target", c.target));
    r.push_back(f_str("family", c.family));
    r.push_back(f_num("g", *c.g));
    r.push_back(f_num("w1", c.periods ? c.periods->first : NAN));
    r.push_back(f_num("w2", c.periods ? c.periods->second : NAN));
    for (int a = 0; a < arity; ++a) r.push_back(f_num(rsq_eval_arg_name(c.target.c_str(), size_t(a)), points[k][size_t(a)]));
    const bool good = o.status == RSQ_OK;
    r.push_back(f_num("re", good ? o.v.re : NAN));
    r.push_back(f_num("im", good ? o.v.im : NAN));
    r.push_back(f_num("error", good ? o.err : NAN));
    r.push_back(f_bool("ok", good));
    r.push_back(f_str("status", rsq_status_name(o.status)));
    r.push_back(f_str("message", o.msg));
    ok = ok && good;
    w.write(r);
  }
  return ok ? kExitPass : kExitFail;
}

int cmd_report(const RunConfig& c) {
  if (c.inputs.empty()) throw UsageError("report needs at least one input file");
  struct Row {
    std::string name, params;
    double abs_err, rel_err, tol;
    bool passed;
  };
  std::vector<Row> rows;
  auto dbl = [](const json& v) { return v.is_number() ? v.get<double>() : INFINITY; };
  for (const auto& path : c.inputs) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read report '" + path + "'");
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        const json j = json::parse(line);
        Row r;
        r.name = j.at("check_name").get<std::string>();
        r.passed = j.at("passed").get<bool>();
        r.abs_err = dbl(j.at("abs_err"));
        r.rel_err = dbl(j.at("rel_err"));
        r.tol = dbl(j.at("tolerance"));
        std::string p;
        for (auto it = j.at("params").begin(); it != j.at("params").end(); ++it)
          p += (p.empty() ? "" : " ") + it.key() + "=" + it.value().get<std::string>();
        r.params = p;
        rows.push_back(std::move(r));
      } catch (const json::exception& e) {
        throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  size_t failed = 0;
  std::printf("%-6s %-28s %-12s %-12s %-10s %s\n", "STATUS", "CHECK", "ABS_ERR", "REL_ERR", "TOL", "PARAMS");
  for (const auto& r : rows) {
    failed += r.passed ? 0 : 1;
    std::printf("%-6s %-28s %-12.3e %-12.3e %-10.3g %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.abs_err, r.rel_err,
                r.tol, r.params.c_str());
  }
  std::printf("%zu records, %zu passed, %zu failed\n", rows.size(), rows.size() - failed, failed);
  return failed ? kExitFail : kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for Baxter Q-operators, raising operators and their wave functions"};
  app.require_subcommand(1);

  std::string config_path, out, format, family, target, periods, check_name, axis;
  std::vector<std::string> grid_flags, names, inputs;
  double tol = 0, g = 0, rel_tol = 0, abs_tol = 0;
  std::uint64_t seed = 0;
  int jobs = 1;
  long max_nodes = 0;
  bool timing = false, list = false;

  auto* o_config = app.add_option("--config", config_path, "JSON config file");
  auto* o_out = app.add_option("--out", out, "output path (default stdout)");
  auto* o_format = app.add_option("--format", format, "json-lines or csv");
  auto* o_tol = app.add_option("--tol", tol, "replace every finite check tolerance");
  auto* o_jobs = app.add_option("--jobs", jobs, "worker threads");
  auto* o_seed = app.add_option("--seed", seed, "seed for random parameter draws");
  auto* o_rel = app.add_option("--rel-tol", rel_tol, "quadrature relative tolerance");
  auto* o_abs = app.add_option("--abs-tol", abs_tol, "quadrature absolute tolerance");
  auto* o_nodes = app.add_option("--max-nodes", max_nodes, "quadrature node budget");
  app.add_flag("--timing", timing, "record runtimes and a timestamp (reports are then not reproducible)");

  auto* eval = app.add_subcommand("eval", "evaluate a function on a grid")->fallthrough();
  auto* o_target = eval->add_option("--target", target, "K, hatK, Kg, mu, S2, psi_HR, psi_MB or psi_factored");
  auto* o_family = eval->add_option("--family", family, "hyperbolic, gamma or relativistic");
  auto* o_g = eval->add_option("--g", g, "coupling");
  auto* o_periods = eval->add_option("--periods", periods, "w1,w2");
  auto* o_grid = eval->add_option("--grid", grid_flags, "NAME=v1,v2,... (repeatable)");

  auto* check = app.add_subcommand("check", "run named checks (all when none are given)")->fallthrough();
  auto* o_names = check->add_option("names", names, "check names");
  check->add_flag("--list", list, "print the registered check names");

  auto* sweep = app.add_subcommand("sweep", "run a trend check along an explicit axis")->fallthrough();
  auto* o_check = sweep->add_option("--check", check_name, "reduction.* or delta.* check");
  auto* o_axis = sweep->add_option("--axis", axis, "v1,v2,...");

  auto* report = app.add_subcommand("report", "merge json-lines reports into a pass/fail table")->fallthrough();
  auto* o_inputs = report->add_option("inputs", inputs, "report files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    RunConfig c;
    if (*o_config) load_config(config_path, c);
    const std::string cmd = app.get_subcommands().front()->get_name();
    if (!c.command.empty() && c.command != cmd)
      throw UsageError("config command '" + c.command + "' does not match '" + cmd + "'");
    c.command = cmd;
    if (*o_out) c.out = out;
    if (*o_format) c.format = format;
    if (*o_tol) c.tol = tol;
    if (*o_jobs) c.jobs = jobs;
    if (*o_seed) c.seed = seed;
    if (*o_rel) c.rel_tol = rel_tol;
    if (*o_abs) c.abs_tol = abs_tol;
    if (*o_nodes) c.max_nodes = max_nodes;
    c.timing = timing;
    if (*o_target) c.target = target;
    if (*o_family) c.family = family;
    if (*o_g) c.g = g;
    if (*o_periods) {
      auto p = parse_list(periods);
      if (p.size() != 2) throw UsageError("--periods takes w1,w2");
      c.periods = std::make_pair(p[0], p[1]);
    }
    for (const auto& gf : grid_flags) {
      const auto eq = gf.find('=');
      if (eq == std::string::npos) throw UsageError("--grid takes NAME=v1,v2,...");
      const std::string key = gf.substr(0, eq);
      auto vals = parse_list(gf.substr(eq + 1));
      bool replaced = false;
      for (auto& [k, v] : c.grid)
        if (k == key) {
          v = vals;
          replaced = true;
        }
      if (!replaced) c.grid.emplace_back(key, vals);
    }
    if (*o_names) c.checks = names;
    if (*o_check) c.sweep_check = check_name;
    if (*o_axis) c.axis = parse_list(axis);
    if (*o_inputs) c.inputs = inputs;
    validate(c);

    if (cmd == "check" && list) {
      for (size_t k = 0; k < rsq_check_count(); ++k) std::printf("%s\n", rsq_check_name(k));
      return kExitPass;
    }
    if (cmd == "eval") return cmd_eval(c);
    if (cmd == "check") return cmd_check(c);
    if (cmd == "sweep") return cmd_sweep(c);
    return cmd_report(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
