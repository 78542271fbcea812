#include "rsq/wavefn.hpp"

#include <cmath>
#include <limits>

#include "rsq/operators.hpp"

namespace rsq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;
const cplx kI(0, 1);

bool is_real(const SpectralPoint& sp) { return sp.lambda1.imag() == 0.0 && sp.lambda2.imag() == 0.0; }

OperatorSpec raising(Family f, bool dual, const Coupling& c, cplx spectral) {
  OperatorSpec s;
  s.family = f;
  s.arity = 2;
  s.dual = dual;
  s.coupling = c;
  s.spectral = spectral;
  return s;
}

double fd_sigma(const Coupling& c) { return 2 * kPi / c.omega().prod(); }


// Fourth-order central stencils for f', f'' from f(x - 2h) .. f(x + 2h).
struct Stencil {
  cplx d1, d2;
};

template <class F>
Stencil stencil(F&& f, double h) {
  const cplx m2 = f(-2 * h), m1 = f(-h), z = f(0.0), p1 = f(h), p2 = f(2 * h);
  return {(m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12 * h), (-m2 + 16.0 * m1 - 30.0 * z + 16.0 * p1 - p2) / (12 * h * h)};
}

}  // namespace

QuadResult psi_factored(cplx lam, double x, const Coupling& c, const QuadSpec& q) {
  q.validate();
  const double rate = 2 * c.g - 2 * std::fabs(lam.imag());
  if (!(rate > 0)) throw Error(Status::divergence, "psi_factored needs |Im lambda| < g");
  const double h = lattice_step(0.8 * kPi / 2, 2 * std::fabs(lam.real()), q);
  const double depth = q.truncation_safety * -std::log(std::min(q.rel_tol, q.abs_tol) * 0.1);
  const long n = long(std::ceil((std::fabs(x) / 2 + depth / rate) / h)) + 1;
  if (n > q.max_nodes) throw BudgetError(0.0, std::numeric_limits<double>::infinity(), "psi_factored exceeds the node budget");
  auto term = [&](long k) {
    const double y = double(k) * h;
    return std::exp(log_kernel(Family::hyperbolic, x / 2 - y, c) + log_kernel(Family::hyperbolic, x / 2 + y, c)) *
           std::cos(2.0 * lam * y);
  };
  NeumaierSum fine, coarse;
  const cplx t0 = term(0);
  for (long k = n; k >= 1; --k) {
    const cplx t = term(k);
    fine.add(t);
    if ((k & 1) == 0) coarse.add(t);
  }
  const cplx sf = h * (t0 + 2.0 * fine.value()), sc = 2 * h * (t0 + 2.0 * coarse.value());
  const double diff = std::abs(sf - sc);
  return {sf, diff * diff / std::max(std::abs(sf), q.abs_tol), n + 1};
}

QuadResult psi_HR(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, Family family,
                  const QuadSpec& q) {
  if (family == Family::relativistic) {
    const double s = fd_sigma(c);
    return apply_Lambda(raising(Family::relativistic, true, c, sp.lambda2), FunctionHandle::plane_wave(s, sp.lambda1),
                        pp.x1, pp.x2, q);
  }
  if (is_real(sp)) {
    const cplx l1 = sp.lambda1, l2 = sp.lambda2;
    QuadResult r = psi_factored((l1 - l2) / 2.0, pp.x1 - pp.x2, c, q);
    const cplx cm = std::exp(kI * (l1 + l2) * (pp.x1 + pp.x2) / 2.0);
    return {cm * r.value, std::abs(cm) * r.error, r.nodes};
  }
  return apply_Lambda(raising(Family::hyperbolic, false, c, sp.lambda2), FunctionHandle::plane_wave(1.0, sp.lambda1),
                      pp.x1, pp.x2, q);
}

QuadResult psi_MB(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, Family family,
                  const QuadSpec& q) {
  const cplx l1 = sp.lambda1, l2 = sp.lambda2;
  if (family == Family::relativistic) {
    if (!is_real(sp)) throw Error(Status::continuation, "relativistic psi_MB takes real spectral data");
    const double s = fd_sigma(c);
    const Coupling cd = c.dual();
    QuadResult r = apply_Lambda(raising(Family::relativistic, true, cd, pp.x1), FunctionHandle::plane_wave(s, pp.x2),
                                l1.real(), l2.real(), q);
    const cplx s2 = std::pow(double_sine(cd.g, c.omega()), 2);
    return {s2 * r.value, std::abs(s2) * r.error, r.nodes};
  }
  if (!(std::fabs(l1.imag()) < c.g) || !(std::fabs(l2.imag()) < c.g))
    throw Error(Status::continuation, "spectral shift moves a Gamma pole across the real contour (needs |Im lambda| < g)");
  const double x1 = pp.x1, x2 = pp.x2;
  auto integrand = [&](double gam) {
    return std::exp(kI * x2 * (l1 + l2 - gam) + kI * x1 * gam) * kernel_hatK(l1 - gam, c) * kernel_hatK(l2 - gam, c) /
           (2 * kPi);
  };
  LineHints hints;
  hints.frequency = std::fabs(x1 - x2);
  return integrate_line(integrand, {kPi, kPi, 0.5 * (l1.real() + l2.real())}, q, hints);
}

cplx psi_asymptotic(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c) {
  const cplx l1 = sp.lambda1, l2 = sp.lambda2;
  if (l1 == l2) throw Error(Status::coincident, "the two-plane-wave asymptotics needs lambda1 != lambda2");
  const double g = c.g, x1 = pp.x1, x2 = pp.x2;
  const cplx a = kI * (l2 - l1) / 2.0;
  const cplx t1 = complex_gamma(a) * complex_gamma(-a + g) * std::exp(kI * (l1 * x1 + l2 * x2));
  const cplx t2 = complex_gamma(-a) * complex_gamma(a + g) * std::exp(kI * (l2 * x1 + l1 * x2));
  const double pre = std::exp((2 * g - 1) * kLn2 - log_gamma(g).real() - g * (x2 - x1));
  return pre * (t1 + t2);
}

cplx sutherland_gauge(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, const QuadSpec& q) {
  const double d = std::fabs(pp.x1 - pp.x2);
  if (d == 0.0) return 0.0;
  return std::pow(std::sinh(d), c.g) * psi_HR(sp, pp, c, Family::hyperbolic, q).value;
}

ResidualReport schrodinger_residual(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, double h,
                                    const QuadSpec& q) {
  if (pp.x1 == pp.x2) throw Error(Status::coincident, "H has a coth singularity at x1 = x2");
  if (!(h > 0) || !(4 * h < std::fabs(pp.x1 - pp.x2))) throw Error(Status::domain, "finite-difference step too large");
  auto psi = [&](double a, double b) { return psi_HR(sp, {a, b}, c, Family::hyperbolic, q).value; };
  const Stencil s1 = stencil([&](double t) { return psi(pp.x1 + t, pp.x2); }, h);
  const Stencil s2 = stencil([&](double t) { return psi(pp.x1, pp.x2 + t); }, h);
  const cplx v = psi(pp.x1, pp.x2);
  const double g = c.g;
  const cplx hpsi = -s1.d2 - s2.d2 - 2 * g / std::tanh(pp.x1 - pp.x2) * (s1.d1 - s2.d1) - 2 * g * g * v;
  const cplx e = sp.lambda1 * sp.lambda1 + sp.lambda2 * sp.lambda2;
  return {std::abs(hpsi - e * v), std::abs(v), h, 4};
}

ResidualReport momentum_residual(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, double h,
                                 const QuadSpec& q) {
  if (!(h > 0)) throw Error(Status::domain, "finite-difference step must be positive");
  auto psi = [&](double a, double b) { return psi_HR(sp, {a, b}, c, Family::hyperbolic, q).value; };
  const Stencil s1 = stencil([&](double t) { return psi(pp.x1 + t, pp.x2); }, h);
  const Stencil s2 = stencil([&](double t) { return psi(pp.x1, pp.x2 + t); }, h);
  const cplx v = psi(pp.x1, pp.x2);
  const cplx ppsi = -kI * (s1.d1 + s2.d1);
  return {std::abs(ppsi - (sp.lambda1 + sp.lambda2) * v), std::abs(v), h, 4};
}

std::pair<cplx, cplx> dual_coefficients(cplx l1, cplx l2, double g) {
  if (l1 == l2) throw Error(Status::coincident, "dual difference coefficients are singular at lambda1 = lambda2");
  const cplx b = 2.0 * kI * (g - 1);
  return {(l1 - l2 + b) / (l2 - l1), (l2 - l1 + b) / (l1 - l2)};
}

DualResidual dual_difference_residual(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c,
                                      const QuadSpec& q) {
  if (!(c.g > 2))
    throw Error(Status::continuation, "the shift lambda -> lambda - 2i is only continued along the real contour for g > 2");
  const cplx l1 = sp.lambda1, l2 = sp.lambda2;
  auto [a1, a2] = dual_coefficients(l1, l2, c.g);
  const cplx sh(0, -2);
  auto psi = [&](cplx u1, cplx u2) { return psi_MB({u1, u2}, pp, c, Family::gamma, q).value; };
  const cplx v = psi(l1, l2);
  const cplx hv = a1 * psi(l1 + sh, l2) + a2 * psi(l1, l2 + sh);
  const cplx pv = psi(l1 + sh, l2 + sh);
  const double x1 = pp.x1, x2 = pp.x2;
  return {std::abs(hv - (std::exp(2 * x1) + std::exp(2 * x2)) * v), std::abs(pv - std::exp(2 * x1 + 2 * x2) * v),
          std::abs(v)};
}

}  // namespace rsq
