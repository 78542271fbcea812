#include "rsq/identity_suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <thread>

namespace rsq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kI(0, 1);

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

OperatorSpec make_spec(Family f, int n, const Coupling& c, cplx p) {
  OperatorSpec s;
  s.family = f;
  s.arity = n;
  s.dual = f == Family::gamma;
  s.coupling = c;
  s.spectral = p;
  return s;
}

void put_coupling(Params& p, const Coupling& c) {
  p["g"] = param_num(c.g);
  if (c.periods) {
    p["w1"] = param_num(c.periods->w1);
    p["w2"] = param_num(c.periods->w2);
  }
}

Params base_params(Family f, const Coupling& c) {
  Params p;
  p["family"] = family_name(f);
  put_coupling(p, c);
  return p;
}

bool is_real(const SpectralPoint& sp) { return sp.lambda1.imag() == 0.0 && sp.lambda2.imag() == 0.0; }

QuadSpec with_nodes(QuadSpec q, long n) {
  q.max_nodes = std::max(q.max_nodes, n);
  return q;
}

// ln(a + e^u) without overflow
double log_shift_exp(double a, double u) { return u > 0 ? u + std::log1p(a * std::exp(-u)) : std::log(a) + std::log1p(std::exp(u) / a); }

// int_0^inf s^{-i lam} ds / ((a + s)(s + b)) in the variable u = ln s
QuadResult j_integral(cplx lam, double a, double b, const QuadSpec& q) {
  const cplx pw = 1.0 - kI * lam;
  auto f = [&](double u) { return std::exp(pw * u - log_shift_exp(a, u) - log_shift_exp(b, u)); };
  DecayProfile d{1 - lam.imag(), 1 + lam.imag(), 0.5 * (std::log(a) + std::log(b))};
  LineHints h;
  h.frequency = std::fabs(lam.real());
  return integrate_line(f, d, q, h);
}

double cauchy_entry_det(double z1, double z2, double s1, double s2) {
  return 1.0 / ((z1 + s1) * (z2 + s2)) - 1.0 / ((z1 + s2) * (z2 + s1));
}

}  // namespace

std::string param_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string param_num(cplx v) {
  if (v.imag() == 0.0) return param_num(v.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
  return buf;
}

CheckResult make_result(std::string name, Params params, cplx lhs, cplx rhs, double tolerance, double runtime_ms) {
  CheckResult r;
  r.check_name = std::move(name);
  r.params = std::move(params);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  r.rel_err = r.abs_err / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.tolerance = tolerance;
  r.passed = r.abs_err <= tolerance || r.rel_err <= tolerance;
  r.runtime_ms = runtime_ms;
  return r;
}

bool strictly_decreasing(const std::vector<double>& v) {
  for (size_t k = 1; k < v.size(); ++k)
    if (!(v[k] < v[k - 1])) return false;
  return true;
}

CheckResult trend_result(std::string name, Params params, const std::vector<double>& deviations, double threshold,
                         double runtime_ms) {
  if (deviations.empty()) throw Error(Status::domain, "trend needs at least one deviation");
  params["stage"] = "trend";
  params["steps"] = std::to_string(deviations.size());
  const double last = deviations.back();
  CheckResult r = make_result(std::move(name), std::move(params), last, 0.0, threshold, runtime_ms);
  if (!strictly_decreasing(deviations) || !std::isfinite(last)) {
    r.abs_err = kInf;
    r.rel_err = kInf;
    r.passed = false;
  }
  return r;
}

CheckResult step_result(std::string name, Params params, cplx object, cplx limit, double runtime_ms) {
  params["stage"] = "step";
  return make_result(std::move(name), std::move(params), object, limit, kInf, runtime_ms);
}

void RegSchedule::validate() const {
  if (epsilons.empty() || regulators.empty()) throw Error(Status::domain, "regulator schedule must be non-empty");
  for (size_t k = 0; k < epsilons.size(); ++k) {
    if (!(epsilons[k] > 0) || !std::isfinite(epsilons[k])) throw Error(Status::domain, "epsilons must be positive");
    if (k > 0 && !(epsilons[k] < epsilons[k - 1])) throw Error(Status::domain, "epsilons must be strictly descending");
  }
  for (size_t k = 0; k < regulators.size(); ++k) {
    if (!(regulators[k] > 0) || !std::isfinite(regulators[k])) throw Error(Status::domain, "regulators must be positive");
    if (k > 0 && !(regulators[k] > regulators[k - 1]))
      throw Error(Status::domain, "regulators must be strictly ascending");
  }
}

double RegSchedule::epsilon() const {
  validate();
  return epsilons.back();
}

// ---------------------------------------------------------------- beta integrals

CheckResult check_beta(Family family, double x_or_lam, const Coupling& c, const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  Params p = base_params(family, c);
  const double v = x_or_lam;
  QuadResult lhs;
  cplx rhs;
  LineHints h;
  switch (family) {
    case Family::hyperbolic: {
      p["lambda"] = param_num(v);
      h.frequency = std::fabs(v);
      const double r = kernel_decay_rate(family, c);
      lhs = integrate_line([&](double z) { return std::exp(kI * v * z) * kernel_K(z, c); }, {r, r, 0.0}, q, h);
      rhs = kernel_hatK(v, c);
      break;
    }
    case Family::gamma: {
      p["x"] = param_num(v);
      h.frequency = std::fabs(v);
      const double r = kernel_decay_rate(family, c);
      lhs = integrate_line([&](double l) { return std::exp(kI * v * l) * kernel_hatK(l, c) / (2 * kPi); }, {r, r, 0.0},
                           q, h);
      rhs = kernel_K(v, c);
      break;
    }
    case Family::relativistic: {
      p["x"] = param_num(v);
      const Periods& w = c.omega();
      const double s = 2 * kPi / w.prod();
      h.frequency = s * std::fabs(v);
      const double r = kernel_decay_rate(family, c);
      lhs = integrate_line([&](double z) { return std::exp(kI * s * v * z) * kernel_Kg(z, c); }, {r, r, 0.0}, q, h);
      const Coupling cd = c.dual();
      rhs = std::sqrt(w.prod()) * double_sine(cd.g, w) * kernel_Kg(v, cd);
      break;
    }
  }
  return make_result(std::string("beta.") + family_name(family), std::move(p), lhs.value, rhs, tolerance, ms_since(t0));
}

// ---------------------------------------------------------------- reductions

const char* reduction_name(Reduction r) noexcept {
  switch (r) {
    case Reduction::Kg_to_hatK: return "Kg_to_hatK";
    case Reduction::Kgstar_to_K: return "Kgstar_to_K";
    case Reduction::beta_reduction_1: return "beta_reduction_1";
    case Reduction::beta_reduction_2: return "beta_reduction_2";
    case Reduction::S2_to_gamma: return "S2_to_gamma";
  }
  return "?";
}

Reduction parse_reduction(const std::string& name) {
  for (Reduction r : {Reduction::Kg_to_hatK, Reduction::Kgstar_to_K, Reduction::beta_reduction_1,
                      Reduction::beta_reduction_2, Reduction::S2_to_gamma})
    if (name == reduction_name(r)) return r;
  throw Error(Status::unknown_check, "unknown reduction '" + name + "'");
}

ReductionParams default_reduction_params(Reduction r) {
  switch (r) {
    case Reduction::Kg_to_hatK: return {0.5, 1.2, 1.0};
    case Reduction::Kgstar_to_K: return {0.7, 0.9, 1.0};
    case Reduction::beta_reduction_1: return {0.4, 1.2, 1.0};
    case Reduction::beta_reduction_2: return {0.4, 1.2, 1.0};
    case Reduction::S2_to_gamma: return {0.6, 1.0, 1.0};
  }
  return {};
}

std::vector<double> default_reduction_schedule(Reduction r) {
  if (r == Reduction::S2_to_gamma) return {10, 20, 40};
  return {0.4, 0.2, 0.1, 0.05};
}

namespace {

// Normalization of K_{g w2}(lam w2) against hatK_g(2 lam).
double kg_norm(double g, double w1, double w2) {
  return std::exp(log_gamma(g).real()) * std::pow(2.0, 1 - g) / (2 * kPi) * std::pow(2 * kPi * w2 / w1, g - 1);
}

std::pair<cplx, cplx> reduction_step(Reduction which, double w2, const ReductionParams& p, const QuadSpec& q) {
  const double w1 = p.omega1, g = p.g, a = p.arg;
  const Periods per(w1, w2);
  switch (which) {
    case Reduction::Kg_to_hatK: {
      const Coupling c(g * w2, per);
      return {kernel_Kg(a * w2, c) / kg_norm(g, w1, w2), kernel_hatK(2 * a, Coupling(g))};
    }
    case Reduction::Kgstar_to_K: {
      const Coupling c(w1 + w2 - g * w2, per);
      return {kernel_Kg(a, c), std::pow(2.0, -g) * std::pow(std::cosh(kPi * a / w1), -g)};
    }
    case Reduction::beta_reduction_1: {
      const Coupling c(w1 + w2 - g * w2, per);
      const double r = kernel_decay_rate(Family::relativistic, c), s = 2 * kPi * a / w1;
      LineHints h;
      h.frequency = std::fabs(s);
      QuadResult v = integrate_line([&](double z) { return std::exp(kI * s * z) * kernel_Kg(z, c); }, {r, r, 0.0}, q, h);
      const cplx lim = w1 / (2 * kPi) * complex_gamma(cplx(g / 2, a)) * complex_gamma(cplx(g / 2, -a)) /
                       std::exp(log_gamma(g).real());
      return {v.value, lim};
    }
    case Reduction::beta_reduction_2: {
      const Coupling c(g * w2, per);
      const double r = kernel_decay_rate(Family::relativistic, c) * w2, s = 2 * kPi * a / w1, n = kg_norm(g, w1, w2);
      LineHints h;
      h.frequency = std::fabs(s);
      QuadResult v =
          integrate_line([&](double l) { return std::exp(kI * s * l) * kernel_Kg(l * w2, c) / n; }, {r, r, 0.0}, q, h);
      return {v.value, kPi * std::pow(std::cosh(kPi * a / w1), -g)};
    }
    case Reduction::S2_to_gamma: {
      const double u = a / w1;
      const cplx lim = std::sqrt(2 * kPi) * std::pow(2 * kPi * w1 / w2, 0.5 - u) / std::exp(log_gamma(u).real());
      return {double_sine(a, per), lim};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

std::vector<CheckResult> check_reduction(Reduction which, const std::vector<double>& omega2_schedule,
                                         const ReductionParams& p, const QuadSpec& q, double threshold) {
  const auto t0 = Clock::now();
  if (omega2_schedule.empty()) throw Error(Status::domain, "reduction schedule must be non-empty");
  const bool ascending = which == Reduction::S2_to_gamma;
  for (size_t k = 0; k < omega2_schedule.size(); ++k) {
    const double w = omega2_schedule[k];
    if (!(w > 0) || !std::isfinite(w)) throw Error(Status::domain, "w2 values must be positive");
    if (k > 0 && !(ascending ? w > omega2_schedule[k - 1] : w < omega2_schedule[k - 1]))
      throw Error(Status::domain, ascending ? "w2 schedule must ascend for S2_to_gamma" : "w2 schedule must descend");
  }
  const std::string name = std::string("reduction.") + reduction_name(which);
  Params base;
  base["arg"] = param_num(p.arg);
  base["g"] = param_num(p.g);
  base["w1"] = param_num(p.omega1);
  std::vector<CheckResult> out;
  std::vector<double> dev;
  for (double w2 : omega2_schedule) {
    const auto ts = Clock::now();
    auto [obj, lim] = reduction_step(which, w2, p, q);
    Params ps = base;
    ps["w2"] = param_num(w2);
    out.push_back(step_result(name, std::move(ps), obj, lim, ms_since(ts)));
    dev.push_back(out.back().rel_err);
  }
  out.push_back(trend_result(name, base, dev, threshold, ms_since(t0)));
  return out;
}

// ---------------------------------------------------------------- QQ commutativity

namespace {

void put_points(Params& p, const char* key, const std::vector<double>& v) {
  for (size_t k = 0; k < v.size(); ++k) p[key + std::to_string(k + 1)] = param_num(v[k]);
}

}  // namespace

CheckResult check_qq_commutativity(Family family, int arity, const QQParams& p, const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  if (p.x.size() != size_t(arity) || p.z.size() != size_t(arity))
    throw Error(Status::domain, "endpoints must have one entry per particle");
  if (tolerance == 0.0) tolerance = arity == 1 ? 1e-6 : 1e-5;
  const OperatorSpec s = make_spec(family, arity, p.c, 0.0);
  const QuadResult a = qq_convolution_kernel(s, p.first, p.second, p.x, p.z, q);
  const QuadResult b = qq_convolution_kernel(s, p.second, p.first, p.x, p.z, q);
  Params ps = base_params(family, p.c);
  ps["arity"] = std::to_string(arity);
  ps["first"] = param_num(p.first);
  ps["second"] = param_num(p.second);
  put_points(ps, "x", p.x);
  put_points(ps, "z", p.z);
  return make_result("qq.n" + std::to_string(arity) + "." + family_name(family), std::move(ps), a.value, b.value,
                     tolerance, ms_since(t0));
}

QuadResult qq_determinant_route(cplx first, cplx second, const std::vector<double>& x, const std::vector<double>& z,
                                const QuadSpec& q) {
  if (x.size() != 2 || z.size() != 2) throw Error(Status::domain, "the determinant route is a two-particle formula");
  if (x[0] == x[1] || z[0] == z[1]) throw Error(Status::coincident, "the determinant route divides by x12 and z12");
  const cplx lam = (first - second) / 2.0;
  if (!(std::fabs(lam.imag()) < 1)) throw Error(Status::divergence, "the one-fold integrals need |Im lam| < 1");
  const double Z[2] = {std::exp(2 * x[0]), std::exp(2 * x[1])}, T[2] = {std::exp(2 * z[0]), std::exp(2 * z[1])};
  QuadSpec qs = q.split(4);
  QuadResult J[2][2];
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) J[i][k] = j_integral(lam, Z[i], T[k], qs);
  const cplx det = J[0][0].value * J[1][1].value - J[0][1].value * J[1][0].value;
  const double mu = std::pow(std::sinh(z[0] - z[1]), 2);
  const cplx pre = 32.0 * mu * Z[0] * Z[1] * T[0] * T[1] * std::exp(kI * first * (x[0] + x[1])) *
                   std::exp(-kI * second * (z[0] + z[1])) / ((Z[0] - Z[1]) * (T[0] - T[1]));
  const double err = std::abs(J[0][0].error * J[1][1].value) + std::abs(J[0][0].value * J[1][1].error) +
                     std::abs(J[0][1].error * J[1][0].value) + std::abs(J[0][1].value * J[1][0].error);
  long nodes = 0;
  for (auto& row : J)
    for (auto& j : row) nodes += j.nodes;
  return {pre * det, std::abs(pre) * err, nodes};
}

CheckResult check_qq_determinant_agreement(const QQParams& p, const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  if (p.c.g != 1.0) throw Error(Status::domain, "the determinant route holds at g = 1");
  const OperatorSpec s = make_spec(Family::hyperbolic, 2, p.c, 0.0);
  const QuadResult direct = qq_convolution_kernel(s, p.first, p.second, p.x, p.z, q);
  const QuadResult route = qq_determinant_route(p.first, p.second, p.x, p.z, q);
  Params ps = base_params(Family::hyperbolic, p.c);
  ps["first"] = param_num(p.first);
  ps["second"] = param_num(p.second);
  put_points(ps, "x", p.x);
  put_points(ps, "z", p.z);
  return make_result("qq.n2.determinant_route", std::move(ps), direct.value, route.value, tolerance, ms_since(t0));
}

std::vector<CheckResult> check_g1_determinant_route(const DeterminantParams& p, const QuadSpec& q, double tolerance) {
  const auto [z1, z2] = p.z;
  const auto [t1, t2] = p.t;
  if (!(z1 > 0 && z2 > 0 && t1 > 0 && t2 > 0)) throw Error(Status::domain, "rational variables must be positive");
  if (z1 == z2 || t1 == t2) throw Error(Status::coincident, "determinant sample points must be distinct");
  if (!(p.g > 0)) throw Error(Status::domain, "coupling must be positive");
  const std::string name = "determinant_route.g1";
  Params base;
  base["lambda"] = param_num(p.lam);
  base["z1"] = param_num(z1);
  base["z2"] = param_num(z2);
  base["t1"] = param_num(t1);
  base["t2"] = param_num(t2);
  std::vector<CheckResult> out;

  {
    const auto t0 = Clock::now();
    Params ps = base;
    ps["part"] = "cauchy";
    const double lhs = cauchy_entry_det(z1, z2, t1, t2);
    const double rhs = (z1 - z2) * (t1 - t2) / ((z1 + t1) * (z1 + t2) * (z2 + t1) * (z2 + t2));
    out.push_back(make_result(name, std::move(ps), lhs, rhs, 1e-12, ms_since(t0)));
  }
  {
    const auto t0 = Clock::now();
    Params ps = base;
    ps["part"] = "rational_n1";
    ps["g"] = param_num(p.g);
    const double g = p.g;
    auto side = [&](double sgn) {
      auto f = [&](double u) {
        return std::exp(cplx(g, sgn * p.lam) * u - g * (log_shift_exp(z1, u) + log_shift_exp(t1, u)));
      };
      LineHints h;
      h.frequency = std::fabs(p.lam);
      return integrate_line(f, {g, g, 0.5 * (std::log(z1) + std::log(t1))}, q, h).value;
    };
    const cplx lhs = std::exp(kI * p.lam * std::log(z1)) * side(-1);
    const cplx rhs = std::exp(-kI * p.lam * std::log(t1)) * side(1);
    out.push_back(make_result(name, std::move(ps), lhs, rhs, tolerance, ms_since(t0)));
  }
  {
    const auto t0 = Clock::now();
    Params ps = base;
    ps["part"] = "factorization_n2";
    const cplx pw = 1.0 - kI * p.lam;
    auto f = [&](double u1, double u2) {
      const double s1 = std::exp(u1), s2 = std::exp(u2);
      return std::exp(pw * (u1 + u2)) * cauchy_entry_det(z1, z2, s1, s2) * cauchy_entry_det(s1, s2, t1, t2);
    };
    const double c = 0.25 * (std::log(z1) + std::log(z2) + std::log(t1) + std::log(t2));
    const DecayProfile d{1.0, 1.0, c};
    const cplx lhs = integrate_plane(f, d, d, q).value;
    const QuadSpec qs = q.split(4);
    const cplx det = j_integral(p.lam, z1, t1, qs).value * j_integral(p.lam, z2, t2, qs).value -
                     j_integral(p.lam, z1, t2, qs).value * j_integral(p.lam, z2, t1, qs).value;
    out.push_back(make_result(name, std::move(ps), lhs, 2.0 * det, tolerance, ms_since(t0)));
  }
  return out;
}

// ---------------------------------------------------------------- scalar-product chain

std::vector<CheckResult> check_scalar_product_chain(Family family, const ChainParams& p, const Coupling& c,
                                                    const QuadSpec& q, double tolerance) {
  if (!(p.t0 <= 12) || !std::isfinite(p.t0) || !std::isfinite(p.t1))
    throw Error(Status::domain, "insertion point t0 must satisfy t0 <= 12");
  if (!(p.eps >= 1e-3 && p.eps <= 1e-1)) throw Error(Status::domain, "eps must lie in [1e-3, 1e-1]");
  if (!is_real(p.lams) || !is_real(p.rhos)) throw Error(Status::domain, "the chain takes real spectral data");
  if (tolerance == 0.0) tolerance = family == Family::relativistic ? 1e-4 : 1e-5;
  const std::string name = std::string("chain.") + family_name(family);
  const OperatorSpec s2 = make_spec(family, 2, c, 0.0);
  const KernelModel m = kernel_model(s2);
  const double shift = m.exchange_shift();
  const cplx r1 = p.rhos.lambda1, r2 = p.rhos.lambda2;
  Params base = base_params(family, c);
  base["lambda1"] = param_num(p.lams.lambda1);
  base["lambda2"] = param_num(p.lams.lambda2);
  base["rho1"] = param_num(r1);
  base["rho2"] = param_num(r2);
  base["t0"] = param_num(p.t0);
  base["t1"] = param_num(p.t1);
  base["eps"] = param_num(p.eps);
  base["shift"] = param_num(shift);
  std::vector<CheckResult> out;
  {
    const auto t0 = Clock::now();
    const cplx lp = p.lams.lambda1 - kI * shift + kI * p.eps;
    auto w = std::make_shared<LambdaWave>(s2.with_spectral(r1), r2);
    const QuadResult lhs = apply_Q(s2.with_spectral(lp), FunctionHandle::from_wave(w, q), {p.t1, p.t0}, q);
    const cplx rhs = 2.0 * m.eigen(lp, r1) * m.eigen(lp, r2) * (*w)(p.t1, p.t0, q).value;
    Params ps = base;
    ps["part"] = "Q2";
    out.push_back(make_result(name, std::move(ps), lhs.value, rhs, tolerance, ms_since(t0)));
  }
  const cplx lp2 = p.lams.lambda2 - kI * shift + kI * p.eps;
  const OperatorSpec s1 = make_spec(family, 1, c, lp2);
  const struct {
    cplx rho;
    double at;
    const char* part;
  } steps[2] = {{r1, p.t1, "Q1_rho1"}, {r2, p.t0, "Q1_rho2"}};
  for (const auto& st : steps) {
    const auto t0 = Clock::now();
    const FunctionHandle pw = FunctionHandle::plane_wave(m.sigma, st.rho);
    const QuadResult lhs = apply_Q(s1, pw, {st.at}, q);
    const cplx rhs = m.eigen(lp2, st.rho) * pw.f1(st.at);
    Params ps = base;
    ps["part"] = st.part;
    out.push_back(make_result(name, std::move(ps), lhs.value, rhs, tolerance, ms_since(t0)));
  }
  return out;
}

// ---------------------------------------------------------------- delta sequences

FunctionHandle gaussian_test_function(int n, double a) {
  if (!(a > 0)) throw Error(Status::domain, "Gaussian width parameter must be positive");
  // e^{-a x^2} <= e^{-r |x|} once |x| >= r / a; the truncation depth then lies past the crossover
  const Envelope e{std::sqrt(60 * a), std::sqrt(60 * a)};
  const double freq = 0.0, strip = 1e9;
  if (n == 1) return FunctionHandle::unary([a](double x) { return cplx(std::exp(-a * x * x)); }, e, strip, freq);
  if (n == 2)
    return FunctionHandle::binary([a](double x1, double x2) { return cplx(std::exp(-a * (x1 * x1 + x2 * x2))); }, e, e,
                                  strip, freq);
  throw Error(Status::domain, "test functions are defined for n = 1 or 2");
}

std::vector<CheckResult> check_delta_sequence(int n, double power_g, const FunctionHandle& test_fn,
                                              const RegSchedule& schedule, const std::vector<double>& y,
                                              const QuadSpec& q, double threshold) {
  const auto t0 = Clock::now();
  if (n != 1 && n != 2) throw Error(Status::domain, "delta sequences are implemented for n = 1 and 2");
  if (y.size() != size_t(n) || test_fn.arity != n) throw Error(Status::domain, "test function and y must have n variables");
  if (!(power_g > 0) || !std::isfinite(power_g)) throw Error(Status::domain, "power g must be positive");
  if (n == 2 && y[0] == y[1]) throw Error(Status::coincident, "the two delta points must differ");
  const double eps = schedule.epsilon();
  if (threshold == 0.0) threshold = n == 1 ? 5e-2 : 1e-1;
  const double g = power_g;
  const std::string name = "delta.n" + std::to_string(n);
  Params base;
  base["n"] = std::to_string(n);
  base["power_g"] = param_num(g);
  base["epsilon"] = param_num(eps);
  put_points(base, "y", y);
  base["conjecture"] = (n == 2 && g != 1.0) ? "true" : "false";

  auto clog = [eps](double u) { return std::log(cplx(u, -eps)); };
  std::vector<CheckResult> out;
  std::vector<double> dev;
  for (double L : schedule.regulators) {
    const auto ts = Clock::now();
    QuadResult v;
    cplx target;
    if (n == 1) {
      const double yy = y[0];
      auto f = [&](double x) {
        return test_fn.f1(x) * std::exp((1 - g) * std::log(L) + kI * L * (x - yy) - g * clog(x - yy));
      };
      const double r = test_fn.env[0].rate_pos, rn = test_fn.env[0].rate_neg;
      auto [lo, hi] = truncation_interval({r, rn, 0.0}, q);
      LineHints h;
      h.frequency = L;
      if (yy > lo && yy < hi) h.breakpoints = {yy};
      v = integrate_interval(f, lo, hi, q, h);
      target = 2 * kPi / std::exp(log_gamma(g).real()) * std::exp(kI * kPi * g / 2.0) * test_fn.f1(yy);
    } else {
      const double y1 = y[0], y2 = y[1];
      auto f = [&](double x1, double x2) {
        const cplx ln = 2 * (1 - g) * std::log(L) + kI * L * (x1 + x2 - y1 - y2) -
                        g * (clog(x1 - y1) + clog(x1 - y2) + clog(x2 - y1) + clog(x2 - y2));
        const double d = std::fabs(x1 - x2);
        const double vw = g == 1.0 ? d * d : std::pow(d, 2 * g);
        return test_fn.f2(x1, x2) * vw * std::exp(ln);
      };
      const DecayProfile d1{test_fn.env[0].rate_pos, test_fn.env[0].rate_neg, 0.0};
      const DecayProfile d2{test_fn.env[1].rate_pos, test_fn.env[1].rate_neg, 0.0};
      PlaneHints h;
      h.outer.breakpoints = {std::min(y1, y2), std::max(y1, y2)};
      h.outer.frequency = L;
      const bool kink = std::fmod(2 * g, 1.0) != 0.0;
      h.inner = [=](double x1) {
        LineHints l;
        l.breakpoints = {std::min(y1, y2), std::max(y1, y2)};
        if (kink) {
          l.breakpoints.push_back(x1);
          std::sort(l.breakpoints.begin(), l.breakpoints.end());
        }
        l.frequency = L;
        return l;
      };
      v = integrate_plane(f, d1, d2, q, h);
      target = 4 * kPi * kPi * std::exp(2.0 * kPi * kI * g - 2 * log_gamma(g).real()) *
               (test_fn.f2(y1, y2) + test_fn.f2(y2, y1));
    }
    Params ps = base;
    ps["regulator"] = param_num(L);
    out.push_back(step_result(name, std::move(ps), v.value, target, ms_since(ts)));
    dev.push_back(out.back().rel_err);
  }
  out.push_back(trend_result(name, base, dev, threshold, ms_since(t0)));
  return out;
}

// ---------------------------------------------------------------- orthogonality

CheckResult check_orthogonality_coefficient(Family family, const SpectralPoint& lams, const Coupling& c,
                                            double tolerance) {
  const auto t0 = Clock::now();
  if (!is_real(lams)) throw Error(Status::domain, "orthogonality coefficient takes real spectral data");
  const double l1 = lams.lambda1.real(), l2 = lams.lambda2.real(), l12 = l1 - l2;
  if (l12 == 0.0) throw Error(Status::coincident, "the coefficient has poles at lambda1 = lambda2");
  const double g = c.g;
  const double lg = log_gamma(g).real();
  cplx lhs, rhs;
  switch (family) {
    case Family::hyperbolic: {
      // (rho - lam) hatK(lam - rho - i g), regular at rho = lam
      auto reg = [&](double d) {
        return complex_gamma(cplx(g, d / 2)) * complex_gamma(cplx(1, -d / 2)) * (2.0 / kI) /
               std::exp((1 - g) * std::log(2.0) + lg);
      };
      const cplx prod = reg(0) * reg(l12) * reg(-l12) * reg(0);
      lhs = std::pow(2.0, 1 - 2 * g) * 4 * kPi * kPi / (l12 * l12) * prod;
      rhs = std::pow(2.0, 2 * g + 1) * kPi * kPi * std::exp(-2 * lg) * complex_gamma(cplx(g, l12 / 2)) *
            complex_gamma(cplx(g, -l12 / 2)) * complex_gamma(cplx(0, l12 / 2)) * complex_gamma(cplx(0, -l12 / 2));
      break;
    }
    case Family::gamma: {
      const double a = std::fabs(l12);
      const double reg = std::pow(a / std::sinh(a), 2 * g);
      lhs = 2 * std::exp(2 * lg) / (4 * kPi * kPi) * reg * 4 * kPi * kPi * std::exp(-2 * lg) / std::pow(a, 2 * g);
      rhs = 2 / std::pow(std::sinh(a), 2 * g);
      break;
    }
    case Family::relativistic: {
      const Periods& w = c.omega();
      const double sq = std::sqrt(w.prod());
      const cplx sg = double_sine(g, w);
      auto reg = [&](double d) -> cplx {
        if (d == 0.0) return sq / (kI * double_sine_near_zero(0.0, w));
        return -d * sq * sg / (double_sine(cplx(g, d), w) * double_sine(cplx(0, -d), w));
      };
      const cplx prod = reg(0) * reg(l12) * reg(-l12) * reg(0);
      lhs = 2.0 * 4 * kPi * kPi / (l12 * l12) * prod;
      rhs = 2 * std::pow(w.prod(), 3) * sg * sg /
            (double_sine(cplx(g, l12), w) * double_sine(cplx(g, -l12), w) * double_sine(cplx(0, l12), w) *
             double_sine(cplx(0, -l12), w));
      break;
    }
  }
  Params ps = base_params(family, c);
  ps["lambda1"] = param_num(l1);
  ps["lambda2"] = param_num(l2);
  return make_result(std::string("orthogonality.") + family_name(family), std::move(ps), lhs, rhs, tolerance,
                     ms_since(t0));
}

// ---------------------------------------------------------------- eigen, exchange, equivalence, residuals

CheckResult check_eigen_n1(Family family, cplx p, cplx label, double at, const Coupling& c, const QuadSpec& q,
                           double tolerance) {
  const auto t0 = Clock::now();
  const OperatorSpec s = make_spec(family, 1, c, p);
  const KernelModel m = kernel_model(s);
  const FunctionHandle pw = FunctionHandle::plane_wave(m.sigma, label);
  const QuadResult lhs = apply_Q(s, pw, {at}, q);
  Params ps = base_params(family, c);
  ps["spectral"] = param_num(p);
  ps["label"] = param_num(label);
  ps["at"] = param_num(at);
  return make_result(std::string("eigen.n1.") + family_name(family), std::move(ps), lhs.value,
                     m.eigen(p, label) * pw.f1(at), tolerance, ms_since(t0));
}

CheckResult check_eigen_n2(Family family, cplx lam, const SpectralPoint& rhos, const PositionPoint& at,
                           const Coupling& c, const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  const OperatorSpec s = make_spec(family, 2, c, lam);
  const KernelModel m = kernel_model(s);
  auto w = std::make_shared<LambdaWave>(s.with_spectral(rhos.lambda1), rhos.lambda2);
  const QuadResult lhs = apply_Q(s, FunctionHandle::from_wave(w, q), {at.x1, at.x2}, q);
  const cplx rhs = 2.0 * m.eigen(lam, rhos.lambda1) * m.eigen(lam, rhos.lambda2) * (*w)(at.x1, at.x2, q).value;
  Params ps = base_params(family, c);
  ps["spectral"] = param_num(lam);
  ps["rho1"] = param_num(rhos.lambda1);
  ps["rho2"] = param_num(rhos.lambda2);
  ps["x1"] = param_num(at.x1);
  ps["x2"] = param_num(at.x2);
  return make_result(std::string("eigen.n2.") + family_name(family), std::move(ps), lhs.value, rhs, tolerance,
                     ms_since(t0));
}

CheckResult check_exchange(Family family, cplx lam, cplx rho, cplx label, const PositionPoint& at, const Coupling& c,
                           const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  auto [lhs, rhs] = qlambda_exchange_check(family, lam, rho, label, {at.x1, at.x2}, c, q);
  Params ps = base_params(family, c);
  ps["spectral"] = param_num(lam);
  ps["rho"] = param_num(rho);
  ps["label"] = param_num(label);
  ps["x1"] = param_num(at.x1);
  ps["x2"] = param_num(at.x2);
  return make_result(std::string("exchange.") + family_name(family), std::move(ps), lhs.value, rhs.value, tolerance,
                     ms_since(t0));
}

CheckResult check_equivalence(Family family, const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c,
                              const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  const Family mb = family == Family::relativistic ? Family::relativistic : Family::gamma;
  const Family hr = family == Family::relativistic ? Family::relativistic : Family::hyperbolic;
  const QuadResult a = psi_HR(sp, pp, c, hr, q);
  const QuadResult b = psi_MB(sp, pp, c, mb, q);
  Params ps = base_params(hr, c);
  ps["lambda1"] = param_num(sp.lambda1);
  ps["lambda2"] = param_num(sp.lambda2);
  ps["x1"] = param_num(pp.x1);
  ps["x2"] = param_num(pp.x2);
  return make_result(std::string("equivalence.") + family_name(hr), std::move(ps), a.value, b.value, tolerance,
                     ms_since(t0));
}

namespace {

Params residual_params(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c) {
  Params ps;
  put_coupling(ps, c);
  ps["lambda1"] = param_num(sp.lambda1);
  ps["lambda2"] = param_num(sp.lambda2);
  ps["x1"] = param_num(pp.x1);
  ps["x2"] = param_num(pp.x2);
  return ps;
}

}  // namespace

CheckResult check_schrodinger(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, double h,
                              const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  const ResidualReport r = schrodinger_residual(sp, pp, c, h, q);
  Params ps = residual_params(sp, pp, c);
  ps["h"] = param_num(h);
  ps["magnitude"] = param_num(r.magnitude);
  return make_result("residual.schrodinger", std::move(ps), r.residual, 0.0, tolerance, ms_since(t0));
}

CheckResult check_momentum(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, double h,
                           const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  const ResidualReport r = momentum_residual(sp, pp, c, h, q);
  Params ps = residual_params(sp, pp, c);
  ps["h"] = param_num(h);
  ps["magnitude"] = param_num(r.magnitude);
  return make_result("residual.momentum", std::move(ps), r.residual, 0.0, tolerance, ms_since(t0));
}

std::vector<CheckResult> check_dual_difference(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c,
                                               const QuadSpec& q, double tolerance) {
  const auto t0 = Clock::now();
  const DualResidual r = dual_difference_residual(sp, pp, c, q);
  const double ms = ms_since(t0);
  Params ph = residual_params(sp, pp, c), pp2 = ph;
  ph["part"] = "calH";
  pp2["part"] = "calP";
  ph["magnitude"] = pp2["magnitude"] = param_num(r.magnitude);
  return {make_result("residual.dual", std::move(ph), r.h_residual, 0.0, tolerance, ms),
          make_result("residual.dual", std::move(pp2), r.p_residual, 0.0, tolerance, ms)};
}

// ---------------------------------------------------------------- registry and runner

namespace {

const double kSqrt2 = 1.41421356237309504880;

Coupling rel_coupling(double g) { return Coupling(g, Periods(1.0, kSqrt2)); }

// Parameter draws: mt19937_64 seeded by the suite seed mixed with the check name.
class Draw {
 public:
  Draw(std::uint64_t seed, const std::string& key) : rng_(seed ^ fnv1a(key)) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * double(rng_() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) h = (h ^ ch) * 1099511628211ull;
    return h;
  }
  std::mt19937_64 rng_;
};

QQParams random_qq(std::uint64_t seed, const std::string& key, int arity, const Coupling& c) {
  Draw d(seed, key);
  QQParams p;
  p.c = c;
  p.first = d.uniform(-0.8, 0.8);
  p.second = d.uniform(-0.8, 0.8);
  auto pair = [&](std::vector<double>& v) {
    do {
      v.clear();
      for (int k = 0; k < arity; ++k) v.push_back(d.uniform(-0.6, 0.6));
    } while (arity == 2 && std::fabs(v[0] - v[1]) < 0.1);
  };
  pair(p.x);
  pair(p.z);
  return p;
}

QQParams fixed_qq2(const Coupling& c) { return {0.3, -0.2, {0.4, -0.3}, {0.1, 0.5}, c}; }

using Runner = std::function<std::vector<CheckResult>(const SuiteConfig&)>;

struct Entry {
  std::string name;
  Runner run;
};

std::vector<CheckResult> one(CheckResult r) { return {std::move(r)}; }

QuadSpec tight(const QuadSpec& q) {
  QuadSpec t = q;
  t.rel_tol = std::min(q.rel_tol, 1e-12);
  t.abs_tol = std::min(q.abs_tol, 1e-15);
  return t;
}

QuadSpec delta_quad(const QuadSpec& q, int n) {
  QuadSpec t = q;
  if (n == 2) {
    t.rel_tol = std::max(q.rel_tol, 1e-7);
    t.abs_tol = std::max(q.abs_tol, 1e-10);
    return with_nodes(t, 50'000'000);
  }
  return with_nodes(t, 20'000'000);
}

const RegSchedule kDeltaSchedule{{1e-3, 1e-5}, {10, 20, 40}};
constexpr double kDeltaWidth = 25.0;

std::vector<double> delta_y(int n) { return n == 1 ? std::vector<double>{0.0} : std::vector<double>{0.3, -0.3}; }

std::vector<CheckResult> run_delta(int n, double g, const RegSchedule& s, const SuiteConfig& cfg) {
  auto r = check_delta_sequence(n, g, gaussian_test_function(n, kDeltaWidth), s, delta_y(n), delta_quad(cfg.quad, n));
  for (auto& x : r) {
    x.params["test_fn"] = "gaussian";
    x.params["width"] = param_num(kDeltaWidth);
  }
  return r;
}

const std::vector<Entry>& registry() {
  static const std::vector<Entry> entries = [] {
    std::vector<Entry> e;
    e.push_back({"beta.hyperbolic", [](const SuiteConfig& c) {
                   return one(check_beta(Family::hyperbolic, 0.6, Coupling(1.0), c.quad));
                 }});
    e.push_back({"beta.hyperbolic.grid", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   for (double g : {0.5, 1.0, 1.5})
                     for (double l : {0.0, 0.6, 1.3}) r.push_back(check_beta(Family::hyperbolic, l, Coupling(g), c.quad, 1e-8));
                   return r;
                 }});
    e.push_back({"beta.gamma", [](const SuiteConfig& c) {
                   return one(check_beta(Family::gamma, 0.7, Coupling(1.0), c.quad));
                 }});
    e.push_back({"beta.gamma.grid", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   for (double g : {0.5, 1.0, 1.5})
                     for (double x : {0.0, 0.7, 1.6}) r.push_back(check_beta(Family::gamma, x, Coupling(g), c.quad, 1e-8));
                   return r;
                 }});
    e.push_back({"beta.relativistic", [](const SuiteConfig& c) {
                   return one(check_beta(Family::relativistic, 0.4, rel_coupling(0.8), c.quad));
                 }});
    e.push_back({"beta.relativistic.grid", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   for (double x : {0.0, 0.4, 0.9}) r.push_back(check_beta(Family::relativistic, x, rel_coupling(0.8), c.quad));
                   return r;
                 }});
    for (Reduction red : {Reduction::Kg_to_hatK, Reduction::Kgstar_to_K, Reduction::beta_reduction_1,
                          Reduction::beta_reduction_2, Reduction::S2_to_gamma})
      e.push_back({std::string("reduction.") + reduction_name(red), [red](const SuiteConfig& c) {
                     return check_reduction(red, default_reduction_schedule(red), default_reduction_params(red), c.quad);
                   }});
    e.push_back({"qq.n1.hyperbolic", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::hyperbolic, 1,
                                                     random_qq(c.seed, "qq.n1.hyperbolic", 1, Coupling(1.0)), c.quad));
                 }});
    e.push_back({"qq.n1.gamma", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::gamma, 1, random_qq(c.seed, "qq.n1.gamma", 1, Coupling(1.2)),
                                                     c.quad));
                 }});
    e.push_back({"qq.n1.relativistic", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::relativistic, 1,
                                                     random_qq(c.seed, "qq.n1.relativistic", 1, rel_coupling(0.8)), c.quad));
                 }});
    e.push_back({"qq.n2.hyperbolic.g1", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::hyperbolic, 2,
                                                     random_qq(c.seed, "qq.n2.hyperbolic.g1", 2, Coupling(1.0)), c.quad));
                 }});
    e.push_back({"qq.n2.determinant_route", [](const SuiteConfig& c) {
                   return one(check_qq_determinant_agreement(random_qq(c.seed, "qq.n2.hyperbolic.g1", 2, Coupling(1.0)),
                                                             c.quad));
                 }});
    e.push_back({"qq.n2.hyperbolic.g1_3", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::hyperbolic, 2, fixed_qq2(Coupling(1.3)), c.quad));
                 }});
    e.push_back({"qq.n2.gamma", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::gamma, 2, fixed_qq2(Coupling(1.3)), c.quad));
                 }});
    e.push_back({"qq.n2.relativistic", [](const SuiteConfig& c) {
                   return one(check_qq_commutativity(Family::relativistic, 2, fixed_qq2(rel_coupling(0.9)), c.quad));
                 }});
    e.push_back({"determinant_route.g1", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r = check_g1_determinant_route(DeterminantParams{}, c.quad);
                   DeterminantParams p;
                   p.z = {1, 2};
                   p.t = {3, 5};
                   r.push_back(check_g1_determinant_route(p, c.quad).front());
                   return r;
                 }});
    e.push_back({"chain.hyperbolic", [](const SuiteConfig& c) {
                   return check_scalar_product_chain(Family::hyperbolic, ChainParams{}, Coupling(1.0), c.quad);
                 }});
    e.push_back({"chain.gamma", [](const SuiteConfig& c) {
                   return check_scalar_product_chain(Family::gamma, ChainParams{}, Coupling(1.0), with_nodes(c.quad, 40'000'000));
                 }});
    e.push_back({"chain.relativistic", [](const SuiteConfig& c) {
                   return check_scalar_product_chain(Family::relativistic, ChainParams{}, rel_coupling(0.9), c.quad);
                 }});
    e.push_back({"delta.n1.g1", [](const SuiteConfig& c) { return run_delta(1, 1.0, kDeltaSchedule, c); }});
    e.push_back({"delta.n1.g1_5", [](const SuiteConfig& c) { return run_delta(1, 1.5, kDeltaSchedule, c); }});
    e.push_back({"delta.n2.g1", [](const SuiteConfig& c) { return run_delta(2, 1.0, kDeltaSchedule, c); }});
    e.push_back({"orthogonality.hyperbolic", [](const SuiteConfig&) {
                   return std::vector<CheckResult>{
                       check_orthogonality_coefficient(Family::hyperbolic, {0.6, -0.4}, Coupling(1.0)),
                       check_orthogonality_coefficient(Family::hyperbolic, {0.2, 1.1}, Coupling(1.7))};
                 }});
    e.push_back({"orthogonality.gamma", [](const SuiteConfig&) {
                   return one(check_orthogonality_coefficient(Family::gamma, {0.5, -0.3}, Coupling(1.4)));
                 }});
    e.push_back({"orthogonality.relativistic", [](const SuiteConfig&) {
                   return one(check_orthogonality_coefficient(Family::relativistic, {0.5, -0.3}, rel_coupling(0.9)));
                 }});
    e.push_back({"eigen.n1.hyperbolic", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   const double pts[5][4] = {{1.0, 0.9, 0.2, 0.4}, {0.7, 0.4, -0.5, -1.0}, {1.3, -0.2, 0.3, 0.6},
                                             {0.5, 0.1, 0.35, 1.5}, {2.1, 0.6, -0.4, -0.2}};
                   for (auto& p : pts) r.push_back(check_eigen_n1(Family::hyperbolic, p[1], p[2], p[3], Coupling(p[0]), c.quad));
                   return r;
                 }});
    e.push_back({"eigen.n1.gamma", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   const double pts[5][4] = {{1.3, 0.5, -0.3, 0.7}, {1.6, 0.9, -0.4, -0.45}, {0.7, -0.2, 0.3, 0.1},
                                             {1.0, 0.0, 0.6, -0.8}, {2.2, 0.4, 0.25, 1.2}};
                   for (auto& p : pts) r.push_back(check_eigen_n1(Family::gamma, p[1], p[2], p[3], Coupling(p[0]), c.quad));
                   return r;
                 }});
    e.push_back({"eigen.n1.relativistic", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   const double pts[5][4] = {{0.9, -0.1, 0.35, -0.6}, {1.1, 0.2, 0.6, 0.3}, {0.6, 0.45, -0.2, 0.8},
                                             {1.5, -0.3, 0.1, -0.25}, {2.0, 0.05, -0.5, 0.45}};
                   for (auto& p : pts)
                     r.push_back(check_eigen_n1(Family::relativistic, p[1], p[2], p[3], rel_coupling(p[0]), c.quad));
                   return r;
                 }});
    e.push_back({"eigen.n2.hyperbolic", [](const SuiteConfig& c) {
                   return one(check_eigen_n2(Family::hyperbolic, 0.3, {-0.25, 0.5}, {0.4, -0.3}, Coupling(1.0), c.quad, 1e-5));
                 }});
    e.push_back({"eigen.n2.gamma", [](const SuiteConfig& c) {
                   return one(check_eigen_n2(Family::gamma, 0.2, {-0.4, 0.6}, {0.5, -0.1}, Coupling(1.5), c.quad, 1e-5));
                 }});
    e.push_back({"eigen.n2.relativistic", [](const SuiteConfig& c) {
                   return one(check_eigen_n2(Family::relativistic, 0.15, {-0.3, 0.4}, {0.25, -0.45}, rel_coupling(0.9),
                                             c.quad, 1e-4));
                 }});
    e.push_back({"exchange.hyperbolic", [](const SuiteConfig& c) {
                   return one(check_exchange(Family::hyperbolic, cplx(0.5, -0.4), 0.2, 0.1, {0.3, -0.4}, Coupling(1.0), c.quad));
                 }});
    e.push_back({"exchange.gamma", [](const SuiteConfig& c) {
                   return one(check_exchange(Family::gamma, cplx(0.3, -0.4), -0.2, 0.5, {0.6, -0.1}, Coupling(1.3), c.quad));
                 }});
    e.push_back({"exchange.relativistic", [](const SuiteConfig& c) {
                   return one(
                       check_exchange(Family::relativistic, cplx(0.2, -0.3), 0.1, -0.25, {0.35, -0.2}, rel_coupling(0.9), c.quad));
                 }});
    e.push_back({"equivalence.grid", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   for (double g : {0.6, 1.0, 2.3})
                     for (double dl : {-1.2, 0.1, 0.9})
                       for (double dx : {-1.5, 0.0, 0.7})
                         r.push_back(check_equivalence(Family::hyperbolic, {0.2 + dl, 0.2}, {-0.3 + dx, -0.3}, Coupling(g),
                                                       c.quad, 1e-7));
                   return r;
                 }});
    e.push_back({"equivalence.relativistic", [](const SuiteConfig& c) {
                   std::vector<CheckResult> r;
                   const double pts[8][4] = {{0.35, -0.2, 0.15, -0.4}, {0.1, 0.5, -0.3, 0.2},  {-0.4, 0.3, 0.6, 0.1},
                                             {0.8, -0.1, 0.0, 0.9},    {0.2, 0.25, -0.7, -0.1}, {-0.6, -0.2, 0.3, -0.5},
                                             {0.05, 0.7, 1.1, 0.4},    {0.45, -0.55, -0.2, 0.35}};
                   for (auto& p : pts)
                     r.push_back(check_equivalence(Family::relativistic, {p[0], p[1]}, {p[2], p[3]}, rel_coupling(0.9), c.quad,
                                                   1e-5));
                   return r;
                 }});
    e.push_back({"residual.schrodinger", [](const SuiteConfig& c) {
                   const QuadSpec t = tight(c.quad);
                   return std::vector<CheckResult>{
                       check_schrodinger({0.4, -0.3}, {0.5, -0.5}, Coupling(1.0), 1e-2, t),
                       check_schrodinger({0.4, -0.3}, {0.3, -0.9}, Coupling(1.6), 1e-2, t),
                       check_schrodinger({0.7, 0.1}, {1.0, 0.2}, Coupling(0.8), 1e-2, t)};
                 }});
    e.push_back({"residual.momentum", [](const SuiteConfig& c) {
                   const QuadSpec t = tight(c.quad);
                   return std::vector<CheckResult>{check_momentum({0.4, -0.3}, {0.5, -0.5}, Coupling(1.0), 1e-2, t),
                                                   check_momentum({0.4, -0.3}, {0.3, -0.9}, Coupling(1.6), 1e-2, t),
                                                   check_momentum({0.7, 0.1}, {1.0, 0.2}, Coupling(0.8), 1e-2, t)};
                 }});
    e.push_back({"residual.dual", [](const SuiteConfig& c) {
                   return check_dual_difference({0.4, -0.3}, {0.2, -0.1}, Coupling(2.5), tight(c.quad));
                 }});
    return e;
  }();
  return entries;
}

const Entry* find_entry(const std::string& name) {
  for (const auto& e : registry())
    if (e.name == name) return &e;
  return nullptr;
}

void apply_override(std::vector<CheckResult>& rs, const std::optional<double>& tol) {
  if (!tol) return;
  for (auto& r : rs) {
    if (!std::isfinite(r.tolerance)) continue;
    r.tolerance = *tol;
    r.passed = r.abs_err <= *tol || r.rel_err <= *tol;
  }
}

std::vector<CheckResult> run_entry(const Entry& e, const SuiteConfig& cfg) {
  const auto t0 = Clock::now();
  std::vector<CheckResult> rs;
  try {
    rs = e.run(cfg);
  } catch (const Error& err) {
    Params p{{"error", err.what()}, {"status", std::to_string(int(err.status()))}};
    CheckResult r = make_result(e.name, std::move(p), 0.0, 0.0, 0.0, ms_since(t0));
    r.abs_err = r.rel_err = kInf;
    r.passed = false;
    rs = {r};
  } catch (const std::exception& err) {
    Params p{{"error", err.what()}, {"status", std::to_string(int(Status::non_finite))}};
    CheckResult r = make_result(e.name, std::move(p), 0.0, 0.0, 0.0, ms_since(t0));
    r.abs_err = r.rel_err = kInf;
    r.passed = false;
    rs = {r};
  }
  for (auto& r : rs) r.check_name = e.name;
  apply_override(rs, cfg.tolerance);
  return rs;
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& e : registry()) n.push_back(e.name);
    return n;
  }();
  return names;
}

bool is_check(const std::string& name) { return find_entry(name) != nullptr; }

std::vector<CheckResult> run_suite(const std::vector<std::string>& selection, const SuiteConfig& cfg) {
  cfg.quad.validate();
  std::vector<const Entry*> todo;
  for (const auto& n : selection) {
    const Entry* e = find_entry(n);
    if (!e) throw Error(Status::unknown_check, "unknown check '" + n + "'");
    todo.push_back(e);
  }
  std::vector<std::vector<CheckResult>> slots(todo.size());
  const size_t workers = std::min<size_t>(size_t(std::max(1, cfg.jobs)), todo.size());
  if (workers <= 1) {
    for (size_t k = 0; k < todo.size(); ++k) slots[k] = run_entry(*todo[k], cfg);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (size_t k = next++; k < todo.size(); k = next++) slots[k] = run_entry(*todo[k], cfg);
      });
    for (auto& t : pool) t.join();
  }
  std::vector<CheckResult> out;
  for (auto& s : slots)
    for (auto& r : s) out.push_back(std::move(r));
  return out;
}

std::vector<CheckResult> run_sweep(const std::string& name, const std::vector<double>& axis, const SuiteConfig& cfg) {
  if (axis.empty()) throw Error(Status::domain, "sweep axis must be non-empty");
  std::vector<CheckResult> rs;
  if (name.rfind("reduction.", 0) == 0 && is_check(name)) {
    const Reduction r = parse_reduction(name.substr(10));
    rs = check_reduction(r, axis, default_reduction_params(r), cfg.quad);
  } else if (name == "delta.n1.g1" || name == "delta.n1.g1_5" || name == "delta.n2.g1") {
    const int n = name[7] - '0';
    const double g = name == "delta.n1.g1_5" ? 1.5 : 1.0;
    RegSchedule s = kDeltaSchedule;
    s.regulators = axis;
    rs = run_delta(n, g, s, cfg);
  } else {
    throw Error(Status::unknown_check, "'" + name + "' has no sweep axis (reduction.* and delta.* do)");
  }
  rs.pop_back();
  for (auto& r : rs) r.check_name = name;
  return rs;
}

}  // namespace rsq
