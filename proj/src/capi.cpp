#include "rsq/rsq.h"

#include <cstring>
#include <string>
#include <vector>

#include "rsq/identity_suite.hpp"

struct rsq_coupling {
  rsq::Coupling c;
};

struct rsq_quad {
  rsq::QuadSpec q;
};

struct rsq_results {
  std::vector<rsq::CheckResult> items;
  std::vector<std::vector<std::pair<std::string, std::string>>> params;
};

namespace {

thread_local std::string g_last_error;

int fail(int status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

template <class F>
int guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const rsq::Error& e) {
    return fail(int(e.status()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(RSQ_E_OVERFLOW, "out of memory");
  } catch (const std::exception& e) {
    return fail(RSQ_E_DOMAIN, e.what());
  }
}

struct Target {
  const char* name;
  std::vector<const char*> args;
};

const std::vector<Target>& targets() {
  static const std::vector<Target> t = {
      {"K", {"x"}},
      {"hatK", {"lambda"}},
      {"Kg", {"lambda"}},
      {"mu", {"a", "b"}},
      {"S2", {"z_re", "z_im"}},
      {"psi_HR", {"lambda1", "lambda2", "x1", "x2"}},
      {"psi_MB", {"lambda1", "lambda2", "x1", "x2"}},
      {"psi_factored", {"lambda", "x"}},
  };
  return t;
}

const Target* find_target(const char* name) {
  if (!name) return nullptr;
  for (const auto& t : targets())
    if (std::strcmp(t.name, name) == 0) return &t;
  return nullptr;
}

rsq::SuiteConfig to_suite(const rsq_suite_config* c) {
  rsq::SuiteConfig s;
  if (!c) return s;
  s.quad.rel_tol = c->rel_tol;
  s.quad.abs_tol = c->abs_tol;
  s.quad.max_nodes = c->max_nodes;
  s.quad.validate();
  if (c->has_tolerance) {
    if (!(c->tolerance >= 0)) throw rsq::Error(rsq::Status::config, "tolerance override must be non-negative");
    s.tolerance = c->tolerance;
  }
  s.seed = c->seed;
  if (c->jobs < 1) throw rsq::Error(rsq::Status::config, "jobs must be at least 1");
  s.jobs = c->jobs;
  return s;
}

rsq_results* wrap(std::vector<rsq::CheckResult> v) {
  auto* r = new rsq_results;
  r->items = std::move(v);
  for (const auto& it : r->items) r->params.emplace_back(it.params.begin(), it.params.end());
  return r;
}

}  // namespace

extern "C" {

const char* rsq_version(void) { return "1.0.0"; }

const char* rsq_status_name(int status) { return rsq::status_name(rsq::Status(status)); }

const char* rsq_last_error(void) { return g_last_error.c_str(); }

int rsq_coupling_new(double g, rsq_coupling** out) {
  return guarded([&] {
    if (!out) return fail(RSQ_E_DOMAIN, "null output handle");
    *out = new rsq_coupling{rsq::Coupling(g)};
    return int(RSQ_OK);
  });
}

int rsq_coupling_new_periods(double g, double w1, double w2, rsq_coupling** out) {
  return guarded([&] {
    if (!out) return fail(RSQ_E_DOMAIN, "null output handle");
    *out = new rsq_coupling{rsq::Coupling(g, rsq::Periods(w1, w2))};
    return int(RSQ_OK);
  });
}

void rsq_coupling_free(rsq_coupling* c) { delete c; }

int rsq_quad_new(rsq_quad** out) {
  return guarded([&] {
    if (!out) return fail(RSQ_E_DOMAIN, "null output handle");
    *out = new rsq_quad{};
    return int(RSQ_OK);
  });
}

int rsq_quad_set(rsq_quad* q, double rel_tol, double abs_tol, long max_nodes) {
  return guarded([&] {
    if (!q) return fail(RSQ_E_DOMAIN, "null quadrature handle");
    rsq::QuadSpec s = q->q;
    s.rel_tol = rel_tol;
    s.abs_tol = abs_tol;
    s.max_nodes = max_nodes;
    s.validate();
    q->q = s;
    return int(RSQ_OK);
  });
}

void rsq_quad_free(rsq_quad* q) { delete q; }

int rsq_eval_arity(const char* target) {
  const Target* t = find_target(target);
  return t ? int(t->args.size()) : -1;
}

const char* rsq_eval_arg_name(const char* target, size_t k) {
  const Target* t = find_target(target);
  return t && k < t->args.size() ? t->args[k] : nullptr;
}

int rsq_eval(const char* target, const char* family, const rsq_coupling* c, const rsq_quad* q, const double* args,
             size_t nargs, rsq_complex* value, double* error) {
  return guarded([&] {
    const Target* t = find_target(target);
    if (!t) return fail(RSQ_E_CONFIG, std::string("unknown target '") + (target ? target : "") + "'");
    if (!c || !value) return fail(RSQ_E_DOMAIN, "null handle");
    if (nargs != t->args.size() || (nargs && !args))
      return fail(RSQ_E_CONFIG, std::string("target '") + t->name + "' takes " + std::to_string(t->args.size()) +
                                    " arguments");
    const rsq::Family fam = rsq::parse_family(family ? family : "hyperbolic");
    const rsq::QuadSpec qs = q ? q->q : rsq::QuadSpec{};
    const rsq::Coupling& cp = c->c;
    const std::string name = t->name;
    rsq::cplx v;
    double err = 0.0;
    auto quad = [&](const rsq::QuadResult& r) {
      v = r.value;
      err = r.error;
    };
    if (name == "K") v = rsq::kernel_K(args[0], cp);
    else if (name == "hatK") v = rsq::kernel_hatK(args[0], cp);
    else if (name == "Kg") v = rsq::kernel_Kg(args[0], cp);
    else if (name == "mu") v = rsq::measure(fam, args[0], args[1], cp);
    else if (name == "S2") v = rsq::double_sine(rsq::cplx(args[0], args[1]), cp.omega());
    else if (name == "psi_HR") quad(rsq::psi_HR({args[0], args[1]}, {args[2], args[3]}, cp, fam, qs));
    else if (name == "psi_MB") quad(rsq::psi_MB({args[0], args[1]}, {args[2], args[3]}, cp, fam, qs));
    else quad(rsq::psi_factored(args[0], args[1], cp, qs));
    value->re = v.real();
    value->im = v.imag();
    if (error) *error = err;
    return int(RSQ_OK);
  });
}

void rsq_suite_config_init(rsq_suite_config* cfg) {
  if (!cfg) return;
  const rsq::QuadSpec q;
  cfg->rel_tol = q.rel_tol;
  cfg->abs_tol = q.abs_tol;
  cfg->max_nodes = q.max_nodes;
  cfg->has_tolerance = 0;
  cfg->tolerance = 0.0;
  cfg->seed = 0;
  cfg->jobs = 1;
}

size_t rsq_check_count(void) { return rsq::check_names().size(); }

const char* rsq_check_name(size_t i) {
  const auto& n = rsq::check_names();
  return i < n.size() ? n[i].c_str() : nullptr;
}

int rsq_suite_run(const char* const* names, size_t n, const rsq_suite_config* cfg, rsq_results** out) {
  return guarded([&] {
    if (!out) return fail(RSQ_E_DOMAIN, "null output handle");
    if (n && !names) return fail(RSQ_E_DOMAIN, "null name list");
    std::vector<std::string> sel;
    for (size_t k = 0; k < n; ++k) sel.emplace_back(names[k] ? names[k] : "");
    *out = wrap(rsq::run_suite(sel, to_suite(cfg)));
    return int(RSQ_OK);
  });
}

int rsq_sweep(const char* name, const double* axis, size_t n, const rsq_suite_config* cfg, rsq_results** out) {
  return guarded([&] {
    if (!out || !name) return fail(RSQ_E_DOMAIN, "null handle");
    if (n && !axis) return fail(RSQ_E_DOMAIN, "null axis");
    *out = wrap(rsq::run_sweep(name, std::vector<double>(axis, axis + n), to_suite(cfg)));
    return int(RSQ_OK);
  });
}

size_t rsq_results_count(const rsq_results* r) { return r ? r->items.size() : 0; }

int rsq_result_get(const rsq_results* r, size_t i, rsq_result_view* out) {
  if (!r || !out || i >= r->items.size()) return fail(RSQ_E_DOMAIN, "result index out of range");
  const rsq::CheckResult& c = r->items[i];
  out->check_name = c.check_name.c_str();
  out->lhs = {c.lhs.real(), c.lhs.imag()};
  out->rhs = {c.rhs.real(), c.rhs.imag()};
  out->abs_err = c.abs_err;
  out->rel_err = c.rel_err;
  out->tolerance = c.tolerance;
  out->passed = c.passed ? 1 : 0;
  out->runtime_ms = c.runtime_ms;
  out->n_params = r->params[i].size();
  return RSQ_OK;
}

const char* rsq_result_param_key(const rsq_results* r, size_t i, size_t k) {
  if (!r || i >= r->params.size() || k >= r->params[i].size()) return nullptr;
  return r->params[i][k].first.c_str();
}

const char* rsq_result_param_value(const rsq_results* r, size_t i, size_t k) {
  if (!r || i >= r->params.size() || k >= r->params[i].size()) return nullptr;
  return r->params[i][k].second.c_str();
}

void rsq_results_free(rsq_results* r) { delete r; }

}  // extern "C"
