// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// usage: acceptance <path-to-rsq-cli>
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rsq/identity_suite.hpp"
#include "rsq/special_fn.hpp"

using namespace rsq;

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kPi = 3.141592653589793238462643383279502884;

struct Verdict {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2e", v);
  return b;
}

bool within(const CheckResult& r, double tol) { return r.abs_err <= tol || r.rel_err <= tol; }

std::vector<CheckResult> run(const std::vector<std::string>& names) {
  SuiteConfig cfg;
  cfg.jobs = 1;
  return run_suite(names, cfg);
}

// Every record of `name` must be within `tol`; `count` pins the number of records.
double require_all(Verdict& v, const std::vector<CheckResult>& rs, const std::string& name, size_t count, double tol) {
  size_t n = 0;
  double worst = 0.0;
  for (const auto& r : rs) {
    if (r.check_name != name) continue;
    ++n;
    worst = std::max(worst, std::min(r.abs_err, r.rel_err));
    if (!within(r, tol)) v.require(false, name + " " + fmt(std::min(r.abs_err, r.rel_err)) + " > " + fmt(tol));
  }
  v.require(n == count, name + ": " + std::to_string(n) + " records, expected " + std::to_string(count));
  return worst;
}

// Step records of a trend check must decrease strictly; the last one must be below `final_limit`.
void require_trend(Verdict& v, const std::vector<CheckResult>& rs, const std::string& name, size_t steps,
                   double final_limit) {
  std::vector<double> d;
  for (const auto& r : rs)
    if (r.check_name == name && r.params.count("stage") && r.params.at("stage") == "step") d.push_back(r.rel_err);
  v.require(d.size() == steps, name + ": " + std::to_string(d.size()) + " steps, expected " + std::to_string(steps));
  for (size_t k = 1; k < d.size(); ++k)
    v.require(d[k] < d[k - 1], name + " not decreasing at step " + std::to_string(k));
  if (!d.empty()) {
    v.require(std::isfinite(d.back()) && d.back() < final_limit,
              name + " final " + fmt(d.back()) + " >= " + fmt(final_limit));
    v.detail += (v.detail.empty() ? "" : ", ") + name + " final " + fmt(d.back());
  }
}

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

Verdict special_functions() {
  Verdict v;
  const std::array<Periods, 3> periods = {Periods(1, 1), Periods(1, std::sqrt(2.0)), Periods(0.7, 1.9)};
  std::mt19937_64 rng(20260101);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double inv = 0, fe1 = 0, fe2 = 0, sym = 0, hom = 0;
  for (const auto& p : periods) {
    for (int i = 0; i < 100; ++i) {
      const cplx z(p.sum() * (0.02 + 0.96 * unit(rng)), 2.0 * unit(rng) - 1.0);
      const double scale = 0.5 + 2.5 * unit(rng);
      const cplx s = double_sine(z, p);
      inv = std::max(inv, std::abs(s * double_sine(p.sum() - z, p) - 1.0));
      fe1 = std::max(fe1, rel_diff(s, 2.0 * std::sin(kPi * z / p.w2) * double_sine(z + p.w1, p)));
      fe2 = std::max(fe2, rel_diff(s, 2.0 * std::sin(kPi * z / p.w1) * double_sine(z + p.w2, p)));
      sym = std::max(sym, rel_diff(s, double_sine(z, Periods(p.w2, p.w1))));
      hom = std::max(hom, rel_diff(s, double_sine(scale * z, Periods(scale * p.w1, scale * p.w2))));
    }
  }
  double refl = 0;
  std::uniform_real_distribution<double> box(-7.0, 7.0);
  for (int i = 0; i < 100; ++i) {
    const cplx z(box(rng), box(rng));
    refl = std::max(refl, std::abs(complex_gamma(z) * complex_gamma(1.0 - z) * std::sin(kPi * z) / kPi - 1.0));
  }
  v.require(inv <= 1e-9, "inversion " + fmt(inv));
  v.require(fe1 <= 1e-9, "shift by w1 " + fmt(fe1));
  v.require(fe2 <= 1e-9, "shift by w2 " + fmt(fe2));
  v.require(sym <= 1e-9, "period symmetry " + fmt(sym));
  v.require(hom <= 1e-9, "homogeneity " + fmt(hom));
  v.require(refl <= 1e-11, "gamma reflection " + fmt(refl));
  if (v.ok)
    v.detail = "inversion " + fmt(inv) + ", shifts " + fmt(std::max(fe1, fe2)) + ", symmetry " + fmt(sym) +
               ", homogeneity " + fmt(hom) + ", gamma reflection " + fmt(refl);
  return v;
}

Verdict beta_integrals() {
  Verdict v;
  const auto rs = run({"beta.hyperbolic.grid", "beta.gamma.grid", "beta.relativistic.grid"});
  const double a = require_all(v, rs, "beta.hyperbolic.grid", 9, 1e-8);
  const double b = require_all(v, rs, "beta.gamma.grid", 9, 1e-8);
  const double c = require_all(v, rs, "beta.relativistic.grid", 3, 1e-7);
  for (const auto& r : rs)
    if (r.check_name == "beta.relativistic.grid")
      v.require(r.params.at("g") == "0.80000000000000004" && r.params.at("w2") == param_num(std::sqrt(2.0)),
                "relativistic beta point has wrong coupling");
  if (v.ok) v.detail = "worst " + fmt(std::max(a, b)) + " (hyperbolic, gamma), " + fmt(c) + " (relativistic)";
  return v;
}

Verdict equivalence() {
  Verdict v;
  const auto rs = run({"equivalence.grid", "equivalence.relativistic"});
  const double a = require_all(v, rs, "equivalence.grid", 27, 1e-7);
  const double b = require_all(v, rs, "equivalence.relativistic", 8, 1e-5);
  if (v.ok) v.detail = "27-point grid worst " + fmt(a) + ", relativistic worst " + fmt(b);
  return v;
}

Verdict eigen_relations() {
  Verdict v;
  const auto rs = run({"eigen.n1.hyperbolic", "eigen.n1.gamma", "eigen.n1.relativistic", "eigen.n2.hyperbolic",
                       "eigen.n2.gamma", "eigen.n2.relativistic"});
  double n1 = 0;
  for (const char* f : {"eigen.n1.hyperbolic", "eigen.n1.gamma", "eigen.n1.relativistic"})
    n1 = std::max(n1, require_all(v, rs, f, 5, 1e-8));
  const double h = require_all(v, rs, "eigen.n2.hyperbolic", 1, 1e-5);
  const double g = require_all(v, rs, "eigen.n2.gamma", 1, 1e-5);
  const double r = require_all(v, rs, "eigen.n2.relativistic", 1, 1e-4);
  for (const auto& x : rs)
    if (x.check_name == "eigen.n2.hyperbolic") v.require(x.params.at("g") == "1", "hyperbolic Q2 point is not at g=1");
  if (v.ok)
    v.detail = "n=1 worst " + fmt(n1) + ", Q2 " + fmt(h) + " (g=1), " + fmt(g) + " (gamma), " + fmt(r) + " (relativistic)";
  return v;
}

Verdict commutativity() {
  Verdict v;
  const auto rs = run({"qq.n1.hyperbolic", "qq.n1.gamma", "qq.n1.relativistic", "qq.n2.hyperbolic.g1",
                       "qq.n2.determinant_route", "determinant_route.g1", "qq.n2.hyperbolic.g1_3", "qq.n2.gamma",
                       "qq.n2.relativistic"});
  double n1 = 0;
  for (const char* f : {"qq.n1.hyperbolic", "qq.n1.gamma", "qq.n1.relativistic"}) n1 = std::max(n1, require_all(v, rs, f, 1, 1e-6));
  const double direct = require_all(v, rs, "qq.n2.hyperbolic.g1", 1, 1e-6);
  const double agree = require_all(v, rs, "qq.n2.determinant_route", 1, 1e-6);
  const double det = require_all(v, rs, "determinant_route.g1", 4, 1e-6);
  const double g13 = require_all(v, rs, "qq.n2.hyperbolic.g1_3", 1, 1e-5);
  for (const auto& x : rs)
    if (x.check_name == "qq.n2.hyperbolic.g1_3") v.require(x.params.at("g") == "1.3", "general-g point is not at g=1.3");
  const double others = std::max(require_all(v, rs, "qq.n2.gamma", 1, 1e-5), require_all(v, rs, "qq.n2.relativistic", 1, 1e-5));
  if (v.ok)
    v.detail = "n=1 worst " + fmt(n1) + ", n=2 g=1 direct " + fmt(direct) + ", direct vs determinant " + fmt(agree) +
               ", determinant pieces " + fmt(det) + ", g=1.3 " + fmt(g13) + ", other families " + fmt(others);
  return v;
}

Verdict exchange() {
  Verdict v;
  const auto rs = run({"exchange.hyperbolic", "exchange.gamma", "exchange.relativistic"});
  double w = 0;
  for (const char* f : {"exchange.hyperbolic", "exchange.gamma", "exchange.relativistic"}) w = std::max(w, require_all(v, rs, f, 1, 1e-6));
  if (v.ok) v.detail = "worst " + fmt(w);
  return v;
}

Verdict residuals() {
  Verdict v;
  const auto rs = run({"residual.schrodinger", "residual.momentum", "residual.dual"});
  const double h = require_all(v, rs, "residual.schrodinger", 3, 1e-4);
  const double p = require_all(v, rs, "residual.momentum", 3, 1e-6);
  const double d = require_all(v, rs, "residual.dual", 2, 1e-5);
  if (v.ok) v.detail = "H " + fmt(h) + ", P " + fmt(p) + ", dual " + fmt(d);
  return v;
}

Verdict reductions() {
  Verdict v;
  const std::vector<std::string> names = {"reduction.Kg_to_hatK", "reduction.Kgstar_to_K", "reduction.beta_reduction_1",
                                          "reduction.beta_reduction_2", "reduction.S2_to_gamma"};
  const auto rs = run(names);
  for (const auto& n : names) {
    const Reduction r = parse_reduction(n.substr(10));
    require_trend(v, rs, n, default_reduction_schedule(r).size(), 5e-2);
  }
  return v;
}

Verdict delta_sequences() {
  Verdict v;
  const auto rs = run({"delta.n1.g1", "delta.n1.g1_5", "delta.n2.g1"});
  for (const auto& r : rs)
    if (r.params.count("regulator")) {
      const std::string reg = r.params.at("regulator");
      v.require(reg == "10" || reg == "20" || reg == "40", "unexpected regulator " + reg);
    }
  require_trend(v, rs, "delta.n1.g1", 3, 5e-2);
  require_trend(v, rs, "delta.n1.g1_5", 3, 5e-2);
  require_trend(v, rs, "delta.n2.g1", 3, 1e-1);
  return v;
}

Verdict scalar_product_chain() {
  Verdict v;
  const auto rs = run({"chain.hyperbolic", "chain.gamma", "chain.relativistic", "orthogonality.hyperbolic",
                       "orthogonality.gamma", "orthogonality.relativistic"});
  const double h = require_all(v, rs, "chain.hyperbolic", 3, 1e-5);
  const double g = require_all(v, rs, "chain.gamma", 3, 1e-5);
  const double r = require_all(v, rs, "chain.relativistic", 3, 1e-4);
  double o = 0;
  o = std::max(o, require_all(v, rs, "orthogonality.hyperbolic", 2, 1e-9));
  o = std::max(o, require_all(v, rs, "orthogonality.gamma", 1, 1e-9));
  o = std::max(o, require_all(v, rs, "orthogonality.relativistic", 1, 1e-9));
  if (v.ok)
    v.detail = "chain " + fmt(h) + " (hyperbolic), " + fmt(g) + " (gamma), " + fmt(r) + " (relativistic), orthogonality " + fmt(o);
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), {});
}

Verdict determinism(const std::string& cli) {
  Verdict v;
  if (cli.empty()) {
    v.require(false, "no CLI path given");
    return v;
  }
  const std::string a = "acceptance_jobs1.jsonl", b = "acceptance_jobs8.jsonl";
  const int ra = std::system(("\"" + cli + "\" check --seed 11 --jobs 1 --out " + a).c_str());
  const int rb = std::system(("\"" + cli + "\" check --seed 11 --jobs 8 --out " + b).c_str());
  v.require(ra == 0 && rb == 0, "suite runs exited with " + std::to_string(ra) + " and " + std::to_string(rb));
  const std::string sa = slurp(a), sb = slurp(b);
  const auto lines = std::count(sa.begin(), sa.end(), '\n');
  v.require(!sa.empty(), "empty report");
  v.require(sa == sb, "reports differ");
  if (v.ok) v.detail = std::to_string(lines) + " records, " + std::to_string(sa.size()) + " bytes identical";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  struct Criterion {
    int id;
    const char* title;
    double budget_s;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "special-function identities", 5, special_functions},
      {2, "beta integrals", 30, beta_integrals},
      {3, "representation equivalence", 300, equivalence},
      {4, "eigen-relations", 600, eigen_relations},
      {5, "commutativity", 600, commutativity},
      {6, "exchange relations", 180, exchange},
      {7, "Schrodinger, momentum and dual residuals", 180, residuals},
      {8, "reductions", 120, reductions},
      {9, "delta sequences", 300, delta_sequences},
      {10, "scalar-product chain and orthogonality", 600, scalar_product_chain},
      {11, "determinism across --jobs 1 and 8", 900, [&] { return determinism(cli); }},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    v.require(secs < c.budget_s, "runtime " + fmt(secs) + " s over budget " + fmt(c.budget_s) + " s");
    failed += v.ok ? 0 : 1;
    std::printf("%s criterion %2d  %-42s %7.2f s  %s\n", v.ok ? "PASS" : "FAIL", c.id, c.title, secs, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
