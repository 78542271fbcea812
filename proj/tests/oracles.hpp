#pragma once
// Independent reference implementations used only by the tests. Nothing here calls the
// library; the algorithms are deliberately different from the production ones.

#include <cmath>
#include <complex>
#include <fstream>
#include <functional>
#include <map>
#include <string>

#include <json.hpp>

namespace oracle {

using cl = std::complex<long double>;
using cd = std::complex<double>;

// Gamma by upward recursion to Re z >= 25 followed by the Stirling series.
inline cl log_gamma(cl z) {
  const long double pi = 3.141592653589793238462643383279502884L;
  if (z.real() < 0.5L) {
    // reflection
    return std::log(pi) - std::log(std::sin(pi * z)) - log_gamma(1.0L - z);
  }
  cl shift = 0;
  while (z.real() < 25.0L) {
    shift += std::log(z);
    z += 1.0L;
  }
  static const long double b[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66,
                                  -691.0L / 2730, 7.0L / 6, -3617.0L / 510};
  cl s = (z - 0.5L) * std::log(z) - z + 0.5L * std::log(2 * pi);
  cl zp = z;
  for (int k = 1; k <= 8; ++k) {
    s += b[k - 1] / ((2.0L * k) * (2.0L * k - 1) * zp);
    zp *= z * z;
  }
  return s - shift;
}

inline cd gamma(cd z) {
  cl v = std::exp(log_gamma(cl(z.real(), z.imag())));
  return cd(double(v.real()), double(v.imag()));
}

// ln S2 via trapezoid on [0, T] of the even integrand, with the 1/t^2 tail added in
// closed form. Three step sizes are combined by Romberg extrapolation; the gap between
// the first and second extrapolants is reported as a convergence check.
struct LnS {
  cd value;
  double richardson_gap;
};

inline cl lns_integrand(long double t, cl a, long double w1, long double w2) {
  if (t == 0.0L) return a * (a * a - w1 * w1 - w2 * w2) / (12.0L * w1 * w2);
  cl num = std::sinh(a * t) / (std::sinh(w1 * t) * std::sinh(w2 * t));
  return (num - a / (w1 * w2 * t)) / (2.0L * t);
}

inline LnS ln_double_sine(cd z, double w1, double w2) {
  cl a = 2.0L * cl(z.real(), z.imag()) - (long double)(w1 + w2);
  long double rate = (long double)(w1 + w2) - std::fabs(a.real());
  long double T = std::min(40.0L / rate, 600.0L / (long double)(w1 + w2));
  auto trap = [&](long n) {
    long double h = T / n;
    cl s = 0.5L * lns_integrand(0, a, w1, w2) + 0.5L * lns_integrand(T, a, w1, w2);
    for (long k = 1; k < n; ++k) s += lns_integrand(k * h, a, w1, w2);
    return s * h;
  };
  long n = (long)(T * (60.0L + 8.0L * std::fabs(a.imag())));
  // the integrand is even, so only the endpoint at T contributes h^2, h^4 terms
  cl t1 = trap(n), t2 = trap(2 * n), t4 = trap(4 * n);
  cl r1 = (4.0L * t2 - t1) / 3.0L, r2 = (4.0L * t4 - t2) / 3.0L;
  cl fine = (16.0L * r2 - r1) / 15.0L, coarse = r1;
  cl tail = -a / (2.0L * (long double)w1 * (long double)w2 * T);
  cl v = fine + tail;
  return {cd(double(v.real()), double(v.imag())), double(std::abs(fine - coarse))};
}

// S2 by shifting with the first period only, in the opposite manner to the library.
inline cd double_sine(cd z, double w1, double w2) {
  const double pi = 3.14159265358979323846;
  cd acc = 1.0;
  while (z.real() < 0.3 * std::min(w1, w2)) {
    acc *= 2.0 * std::sin(pi * z / w2);
    z += w1;
  }
  while (z.real() > w1 + w2 - 0.3 * std::min(w1, w2)) {
    z -= w1;
    acc /= 2.0 * std::sin(pi * z / w2);
  }
  return acc * std::exp(ln_double_sine(z, w1, w2).value);
}

inline cd trapezoid(const std::function<cd(double)>& f, double L, long n) {
  double h = 2 * L / (n - 1);
  cd s = 0.5 * (f(-L) + f(L));
  for (long k = 1; k < n - 1; ++k) s += f(-L + k * h);
  return s * h;
}

inline cd trapezoid_2d(const std::function<cd(double, double)>& f, double L, long n) {
  double h = 2 * L / (n - 1);
  cd s = 0;
  for (long i = 0; i < n; ++i) {
    double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    double x = -L + i * h;
    cd row = 0;
    for (long j = 0; j < n; ++j) {
      double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      row += wj * f(x, -L + j * h);
    }
    s += wi * row;
  }
  return s * h * h;
}

// Values frozen by scripts/gen_fixtures.py (mpmath, 25 digits).
inline const std::map<std::string, cd>& mp_values() {
  static const std::map<std::string, cd> values = [] {
    std::map<std::string, cd> m;
    std::ifstream in(RSQ_FIXTURE_DIR "/mp_values.json");
    auto j = nlohmann::json::parse(in);
    for (auto& [k, v] : j.items()) m[k] = cd(v[0].get<double>(), v[1].get<double>());
    return m;
  }();
  return values;
}

inline cd mp(const std::string& key) { return mp_values().at(key); }

}  // namespace oracle
