#include "rsq/kernels.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace rsq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2 = 0.69314718055994530942;

// ln sh(x) for x > 0
double log_sinh(double x) { return x - kLn2 + std::log1p(-std::exp(-2 * x)); }

// principal ln ch(x), valid for |Im x| < pi/2
cplx log_cosh(cplx x) {
  if (x.real() < 0) x = -x;
  return x - kLn2 + std::log(1.0 + std::exp(-2.0 * x));
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << z.real() << (z.imag() < 0 ? "-" : "+") << std::fabs(z.imag()) << "i";
  return os.str();
}

}  // namespace

const char* family_name(Family f) noexcept {
  switch (f) {
    case Family::hyperbolic: return "hyperbolic";
    case Family::gamma: return "gamma";
    case Family::relativistic: return "relativistic";
  }
  return "?";
}

Family parse_family(const std::string& name) {
  if (name == "hyperbolic") return Family::hyperbolic;
  if (name == "gamma") return Family::gamma;
  if (name == "relativistic") return Family::relativistic;
  throw Error(Status::config, "unknown kernel family '" + name + "'");
}

Coupling::Coupling(double coupling) : g(coupling) {
  if (!(g > 0) || !std::isfinite(g)) throw Error(Status::domain, "coupling g must be positive and finite");
}

Coupling::Coupling(double coupling, Periods p) : g(coupling), periods(p), gstar_(p.sum() - coupling) {
  if (!(g > 0) || !(g < p.sum())) throw Error(Status::domain, "coupling must satisfy 0 < g < w1 + w2");
}

Coupling::Coupling(double coupling, double dual_coupling, Periods p)
    : g(coupling), periods(p), gstar_(dual_coupling) {}

const Periods& Coupling::omega() const {
  if (!periods) throw Error(Status::domain, "relativistic kernels need periods (w1, w2)");
  return *periods;
}

double Coupling::gstar() const {
  omega();
  return gstar_;
}

Coupling Coupling::dual() const { return Coupling(gstar(), g, omega()); }

double kernel_K(double x, const Coupling& c) {
  const double ax = std::fabs(x);
  if (ax < 1.0) return std::exp(-c.g * std::log(std::cosh(ax)));
  return std::exp(-c.g * (ax - kLn2 + std::log1p(std::exp(-2 * ax))));
}

cplx kernel_K(cplx x, const Coupling& c) {
  if (!(std::fabs(x.imag()) < kPi / 2))
    throw Error(Status::strip, "ch^{-g} is only evaluated for |Im x| < pi/2, got " + fmt(x));
  if (x.imag() == 0.0) return kernel_K(x.real(), c);
  return std::exp(-c.g * log_cosh(x));
}

cplx kernel_hatK(cplx lam, const Coupling& c) {
  const cplx i(0, 1);
  const double g = c.g;
  cplx l = log_gamma((g + i * lam) / 2.0) + log_gamma((g - i * lam) / 2.0) - (1 - g) * kLn2 - log_gamma(g).real();
  return std::exp(l);
}

cplx kernel_Kg(cplx lam, const Coupling& c) {
  const Periods& p = c.omega();
  const cplx i(0, 1);
  LogValue a = log_double_sine_ext(c.g / 2 + i * lam, p);
  LogValue b = log_double_sine_ext(c.g / 2 - i * lam, p);
  if (a.zero || b.zero) throw Error(Status::pole, "K_g has a pole at lambda = " + fmt(lam));
  return std::exp(-a.log - b.log);
}

double log_kernel(Family kind, double u, const Coupling& c) {
  switch (kind) {
    case Family::hyperbolic: {
      const double au = std::fabs(u);
      if (au < 1.0) return -c.g * std::log(std::cosh(au));
      return -c.g * (au - kLn2 + std::log1p(std::exp(-2 * au)));
    }
    case Family::gamma: {
      const double g = c.g;
      return 2 * log_gamma(cplx(g / 2, u / 2)).real() - (1 - g) * kLn2 - log_gamma(g).real();
    }
    case Family::relativistic: {
      // K_g = 1 / |S(g/2 + i u)|^2 on the real line
      LogValue a = log_double_sine_ext(cplx(c.g / 2, u), c.omega());
      if (a.zero) throw Error(Status::pole, "K_g has a pole at lambda = " + fmt(u));
      return -2 * a.log.real();
    }
  }
  return 0.0;
}

double log_measure(Family kind, double d, const Coupling& c) {
  if (d == 0.0) return -std::numeric_limits<double>::infinity();
  const double ad = std::fabs(d);
  switch (kind) {
    case Family::hyperbolic:
      return 2 * c.g * log_sinh(ad);
    case Family::gamma: {
      // Gamma(iu) Gamma(-iu) = pi / (u sh(pi u))
      const double u = ad / 2, g = c.g;
      return 2 * ((1 - g) * kLn2 + log_gamma(g).real()) + std::log(u) + log_sinh(kPi * u) - std::log(kPi) -
             2 * log_gamma(cplx(g, u)).real();
    }
    case Family::relativistic: {
      // S(iy) S(-iy) = 4 sh(pi y/w1) sh(pi y/w2);  S(g - iy) = conj S(g + iy)
      const Periods& p = c.omega();
      LogValue s1 = log_double_sine_ext(cplx(c.g, ad), p);
      return 2 * kLn2 + log_sinh(kPi * ad / p.w1) + log_sinh(kPi * ad / p.w2) + 2 * s1.log.real();
    }
  }
  return 0.0;
}

cplx measure(Family kind, double a, double b, const Coupling& c) {
  if (a == b) return 0.0;
  return std::exp(log_measure(kind, a - b, c));
}

cplx eigenvalue(Family kind, cplx spectral, cplx label, const Coupling& c) {
  switch (kind) {
    case Family::hyperbolic: return kernel_hatK(spectral - label, c);
    case Family::gamma: return kernel_K(spectral - label, c);
    case Family::relativistic: {
      const Periods& p = c.omega();
      return std::sqrt(p.prod()) * double_sine(c.g, p) * kernel_Kg(spectral - label, c);
    }
  }
  return 0.0;
}

cplx hatK_asymptotic(double gamma, double mu, const Coupling& c) {
  if (!(mu > 0)) throw Error(Status::domain, "hatK_asymptotic needs mu > 0");
  const double l = std::log(2 * kPi) - log_gamma(c.g).real() + (c.g - 1) * std::log(mu) + kPi * (gamma - mu) / 2;
  return std::exp(l);
}

double kernel_decay_rate(Family kind, const Coupling& c) {
  switch (kind) {
    case Family::hyperbolic: return c.g;
    case Family::gamma: return kPi / 2;
    case Family::relativistic: return kPi * c.gstar() / c.omega().prod();
  }
  return 0.0;
}

}  // namespace rsq
