#include "rsq/special_fn.hpp"

#include <cmath>
#include <sstream>

#include "rsq/quad.hpp"

namespace rsq {

namespace {

// 14 zeta(3) / pi^2
constexpr double kZeta3Const = 1.7051135952700231637;
constexpr double kPi = 3.14159265358979323846;
constexpr double kLnSqrt2Pi = 0.91893853320467274178;
constexpr double kLn2 = 0.69314718055994530942;

// Lanczos approximation, g = 7, n = 9 (P. Godfrey's coefficient table); relative
// accuracy about 1e-15 for Re z >= 1/2.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_nonpositive_integer(cplx z) { return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real()); }

cplx log_gamma_right(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (int i = 1; i < 9; ++i) x += kLanczos[i] / (z + double(i));
  cplx t = z + kLanczosG + 0.5;
  return kLnSqrt2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// Series coefficients of ln(sinh x / x) in powers of x^2: 2^{2n} B_{2n} / (2n (2n)!).
constexpr double kLnShc[10] = {1.0 / 6.0,
                               -1.0 / 180.0,
                               1.0 / 2835.0,
                               -1.0 / 37800.0,
                               1.0 / 467775.0,
                               -691.0 / 3831077250.0,
                               2.0 / 127702575.0,
                               -3617.0 / 2605132530000.0,
                               43867.0 / 350813659321125.0,
                               -174611.0 / 15313294652906250.0};

template <class T>
T lnshc_series(T x2) {
  T s = 0, p = x2;
  for (double c : kLnShc) {
    s += c * p;
    p *= x2;
  }
  return s;
}

double lnshc(double x) {
  x = std::fabs(x);
  if (x < 0.5) return lnshc_series(x * x);
  return x - kLn2 + std::log1p(-std::exp(-2 * x)) - std::log(x);
}

cplx lnshc(cplx x) {
  if (std::abs(x) < 0.5) return lnshc_series(x * x);
  if (x.real() < 0) x = -x;
  cplx w = std::exp(-2.0 * x);
  cplx l1 = std::abs(w) < 1e-8 ? -w - 0.5 * w * w : std::log(1.0 - w);
  return x - kLn2 + l1 - std::log(x);
}

cplx expm1c(cplx e) {
  double s = std::sin(0.5 * e.imag());
  return {std::expm1(e.real()) * std::cos(e.imag()) - 2 * s * s, std::exp(e.real()) * std::sin(e.imag())};
}

std::string fmt(cplx z) {
  std::ostringstream os;
  os.precision(17);
  os << "(" << z.real() << ", " << z.imag() << ")";
  return os.str();
}

// Searches for z = m*w1 + k*w2 (pole, m,k >= 1) or z = -(m*w1 + k*w2) (zero, m,k >= 0).
struct LatticeHit {
  bool hit = false;
  bool pole = false;
  long m = 0, k = 0;
};

LatticeHit lattice_point(cplx z, const Periods& p) {
  LatticeHit h;
  const double scale = std::max(1.0, std::abs(z));
  const double tol = 1e-12 * scale;
  if (std::fabs(z.imag()) > tol) return h;
  double x = z.real();
  const bool pole_side = x > 0;
  long m_min = pole_side ? 1 : 0;
  double y = pole_side ? x : -x;
  long m_max = (long)std::floor((y + tol) / p.w1);
  if (m_max - m_min > 50'000'000) throw Error(Status::domain, "double sine argument too large: " + fmt(z));
  for (long m = m_min; m <= m_max; ++m) {
    double r = (y - double(m) * p.w1) / p.w2;
    long k = std::lround(r);
    if (k < m_min) continue;
    if (std::fabs(y - double(m) * p.w1 - double(k) * p.w2) <= tol) {
      h.hit = true;
      h.pole = pole_side;
      h.m = m;
      h.k = k;
      return h;
    }
  }
  return h;
}

cplx sinc(cplx u) {
  if (std::abs(u) < 1e-4) {
    cplx u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

}  // namespace

Periods::Periods(double omega1, double omega2) : w1(omega1), w2(omega2) {
  if (!(w1 > 0) || !(w2 > 0) || !std::isfinite(w1) || !std::isfinite(w2))
    throw Error(Status::domain, "periods must be positive and finite");
}

cplx log_gamma(cplx z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(Status::domain, "log_gamma of non-finite argument");
  if (is_nonpositive_integer(z)) throw Error(Status::pole, "gamma pole at " + fmt(z));
  if (z.real() >= 0.5) return log_gamma_right(z);
  // reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z)
  return std::log(kPi) - log_2sin(kPi * z) + kLn2 - log_gamma_right(1.0 - z);
}

cplx complex_gamma(cplx z) {
  cplx l = log_gamma(z);
  if (l.real() > 709.0) throw Error(Status::overflow, "gamma overflows at " + fmt(z) + "; use log_gamma");
  return std::exp(l);
}

cplx log_2sin(cplx u) {
  const double y = u.imag();
  if (y > 1.0) {
    cplx w = std::exp(cplx(0, 2) * u);
    return cplx(0, kPi / 2) - cplx(0, 1) * u + std::log(1.0 - w);
  }
  if (y < -1.0) {
    cplx w = std::exp(cplx(0, -2) * u);
    return cplx(0, -kPi / 2) + cplx(0, 1) * u + std::log(1.0 - w);
  }
  return std::log(2.0 * std::sin(u));
}

cplx log_double_sine(cplx z, const Periods& p) {
  const double om = p.sum();
  if (!(z.real() > 0.0 && z.real() < om) || !std::isfinite(z.imag()))
    throw Error(Status::strip, "log_double_sine needs 0 < Re z < w1 + w2, got " + fmt(z));
  const cplx a = 2.0 * z - om;
  if (a == cplx(0.0)) return 0.0;
  // The corrections to exp(+-i pi B22 / 2) are O(|z| e^{-2 pi |Im z| / wmax}); past e^{-36}
  // they are below the quadrature's own rounding and the closed form is used.
  if (2 * kPi * std::fabs(z.imag()) / p.wmax() - std::log1p(std::abs(z) / p.wmin()) >= 36.0)
    return (z.imag() > 0 ? 1.0 : -1.0) * cplx(0, kPi / 2) * b22(z, p);
  const double w1 = p.w1, w2 = p.w2, w12 = w1 * w2;
  const double rate = om - std::fabs(a.real());
  // envelope e^{-rate T} far below double precision
  const double T = 38.0 / rate + 2.0 / p.wmin();
  const cplx f0 = a * (a * a - w1 * w1 - w2 * w2) / (12.0 * w12);
  auto f = [&](double t) -> cplx {
    if (t == 0.0) return f0;
    cplx e = lnshc(a * t) - lnshc(w1 * t) - lnshc(w2 * t);
    return a / (2.0 * w12 * t * t) * expm1c(e);
  };

  // Adding c th^2(k t)/t^2 cancels the 1/t^2 tail, leaving an even integrand that is analytic
  // for |Im t| < pi/wmax and decays exponentially; the trapezoid rule then converges
  // geometrically. Its integral over the half line is c k 14 zeta(3)/pi^2.
  const double kappa = 0.5 * p.wmax();
  const cplx c = a / (2.0 * w12);
  auto hfun = [&](double t) -> cplx {
    if (t == 0.0) return f0 + c * kappa * kappa;
    double th = std::tanh(kappa * t);
    return f(t) + c * th * th / (t * t);
  };
  const double tail_rate = std::min(rate, 2 * kappa);
  const double Th = 38.0 / tail_rate + 2.0 / p.wmin();
  const double d = 0.8 * kPi / p.wmax();
  const double h = 2 * kPi * d / (40.0 + std::fabs(a.imag()) * d);
  const long n = (long)std::ceil(Th / h);
  if (n <= 20000) {
    NeumaierSum coarse, fine;
    coarse.add(0.5 * hfun(0.0));
    for (long k = 1; k <= n; ++k) coarse.add(hfun(k * h));
    fine.add(coarse.value());
    for (long k = 0; k < n; ++k) fine.add(hfun((k + 0.5) * h));
    const cplx ic = coarse.value() * h, ifine = fine.value() * (0.5 * h);
    // geometric convergence: agreement of the coarse sum to 1e-9 puts the fine one at rounding level
    if (std::abs(ic - ifine) <= 1e-9 * std::max(1.0, std::abs(ifine)))
      return ifine - c * kappa * kZeta3Const;
  }

  QuadSpec s;
  s.rel_tol = 1e-14;
  s.abs_tol = 1e-15;
  s.max_nodes = 2'000'000;
  LineHints hints;
  hints.frequency = 0.5 * std::fabs(a.imag());
  QuadResult r = integrate_interval(f, 0.0, T, s, hints);
  return r.value - a / (2.0 * w12 * T);
}

LogValue log_double_sine_ext(cplx z, const Periods& p, SineTrace* trace) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw Error(Status::domain, "double sine of non-finite argument");
  LatticeHit hit = lattice_point(z, p);
  if (hit.hit && hit.pole) {
    std::ostringstream os;
    os << "double sine pole at m=" << hit.m << ", k=" << hit.k;
    throw PoleError(hit.m, hit.k, os.str());
  }
  if (hit.hit) return LogValue{0.0, true};

  const bool w1_large = p.w1 >= p.w2;
  const double wl = w1_large ? p.w1 : p.w2;
  const double ws = w1_large ? p.w2 : p.w1;
  const double lo = 0.5 * ws, hi = 0.5 * ws + wl;
  cplx acc = 0.0;
  int steps = 0;
  // S(z) = 2 sin(pi z / ws) S(z + wl)
  while (z.real() < lo) {
    acc += log_2sin(kPi * z / ws);
    z += wl;
    ++steps;
  }
  while (z.real() > hi) {
    z -= wl;
    acc -= log_2sin(kPi * z / ws);
    ++steps;
  }
  if (trace) {
    trace->steps = steps;
    trace->ill_conditioned = steps > 64;
  }
  return LogValue{acc + log_double_sine(z, p), false};
}

cplx double_sine(cplx z, const Periods& p, SineTrace* trace) {
  LogValue v = log_double_sine_ext(z, p, trace);
  if (v.zero) return 0.0;
  if (v.log.real() > 709.0) throw Error(Status::overflow, "double sine overflows at " + fmt(z));
  return std::exp(v.log);
}

cplx double_sine_near_zero(cplx z, const Periods& p) {
  if (!(std::abs(z) < 0.1 * p.wmin())) throw Error(Status::domain, "double_sine_near_zero needs |z| < 0.1 min(w1, w2)");
  const double wl = p.wmax(), ws = p.wmin();
  // S(z)/z = [2 sin(pi z/ws)/z] S(z + wl)
  return 2.0 * kPi / ws * sinc(kPi * z / ws) * std::exp(log_double_sine(z + wl, p));
}

cplx b22(cplx z, const Periods& p) {
  const double w1 = p.w1, w2 = p.w2, w12 = w1 * w2;
  return z * z / w12 - (w1 + w2) * z / w12 + (w1 * w1 + 3 * w12 + w2 * w2) / (6 * w12);
}

cplx double_sine_asymptotic(cplx z, const Periods& p) {
  if (z.imag() == 0.0) throw Error(Status::domain, "double_sine_asymptotic is undefined on the real axis");
  const double sgn = z.imag() > 0 ? 1.0 : -1.0;
  return std::exp(cplx(0, sgn * kPi / 2) * b22(z, p));
}

}  // namespace rsq
