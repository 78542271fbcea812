#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rsq/special_fn.hpp"

using namespace rsq;
using oracle::mp;

namespace {
const double kPi = 3.14159265358979323846;
double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
}  // namespace

TEST_CASE("periods reject non-positive values") {
  CHECK_THROWS_AS(Periods(0.0, 1.0), Error);
  CHECK_THROWS_AS(Periods(1.0, -2.0), Error);
  CHECK_NOTHROW(Periods(0.3, 7.0));
}

TEST_CASE("gamma trivial values") {
  CHECK(std::abs(complex_gamma(1.0) - 1.0) < 1e-14);
  CHECK(std::abs(complex_gamma(0.5) - std::sqrt(kPi)) < 1e-14);
  CHECK(std::abs(complex_gamma(5.0) - 24.0) < 1e-12);
}

TEST_CASE("gamma against recursion plus Stirling oracle and mpmath") {
  for (cplx z : {cplx(0.3, 0.7), cplx(4.2, -3.1), cplx(-2.5, 0.5), cplx(12.5, 30.0), cplx(-7.3, -2.2),
                 cplx(33.0, 18.0)}) {
    CHECK(rel(complex_gamma(z), oracle::gamma(z)) < 1e-12);
  }
  CHECK(rel(complex_gamma({0.3, 0.7}), mp("gamma(0.3+0.7i)")) < 1e-12);
  CHECK(rel(complex_gamma({4.2, -3.1}), mp("gamma(4.2-3.1i)")) < 1e-12);
  CHECK(rel(complex_gamma({-2.5, 0.5}), mp("gamma(-2.5+0.5i)")) < 1e-12);
  CHECK(rel(complex_gamma({12.5, 30.0}), mp("gamma(12.5+30i)")) < 1e-12);
}

TEST_CASE("gamma poles and overflow") {
  CHECK_THROWS_AS(complex_gamma(0.0), Error);
  CHECK_THROWS_AS(complex_gamma(-3.0), Error);
  CHECK_THROWS_AS(complex_gamma(200.0), Error);
  CHECK(std::isfinite(log_gamma(200.0).real()));
}

TEST_CASE("gamma reflection identity at random non-real points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-7.0, 7.0);
  for (int i = 0; i < 100; ++i) {
    cplx z(u(rng), u(rng));
    cplx v = complex_gamma(z) * complex_gamma(1.0 - z) * std::sin(kPi * z) / kPi;
    CHECK(std::abs(v - 1.0) < 1e-11);
  }
}

TEST_CASE("log double sine: midpoint, oracle, mpmath") {
  Periods p11(1, 1), p2(1, std::sqrt(2.0)), p3(0.7, 1.9);
  CHECK(std::abs(log_double_sine(1.0, p11)) < 1e-13);
  CHECK(std::abs(log_double_sine(0.5 * p3.sum(), p3)) < 1e-13);

  auto o = oracle::ln_double_sine(0.7, 1, 1);
  CHECK(o.richardson_gap < 1e-12);
  CHECK(std::abs(log_double_sine(0.7, p11) - o.value) < 1e-11);
  CHECK(std::abs(log_double_sine(0.7, p11) - mp("lnS(0.7|1,1)")) < 1e-11);
  CHECK(std::abs(log_double_sine({0.3, 0.2}, p2) - mp("lnS(0.3+0.2i|1,sqrt2)")) < 1e-11);
  CHECK(std::abs(log_double_sine({1.1, -0.4}, p3) - mp("lnS(1.1-0.4i|0.7,1.9)")) < 1e-11);

  cplx z(0.3, 0.2);
  CHECK(std::abs(log_double_sine(z, p2) + log_double_sine(p2.sum() - z, p2)) < 1e-11);
  CHECK_THROWS_AS(log_double_sine({-0.1, 0.0}, p2), Error);
  CHECK_THROWS_AS(log_double_sine({2.5, 0.0}, p2), Error);
}

TEST_CASE("double sine: functional relations and extension") {
  Periods p(1, 1.3);
  cplx z = 0.4;
  CHECK(std::abs(double_sine(z, p) / double_sine(z + p.w1, p) - 2.0 * std::sin(kPi * z / p.w2)) < 1e-10);
  CHECK(std::abs(double_sine(1.15, p) - 1.0) < 1e-13);

  Periods p2(1, std::sqrt(2.0));
  CHECK(rel(double_sine({-0.4, 0.3}, p2), mp("S(-0.4+0.3i|1,sqrt2)")) < 1e-10);
  CHECK(rel(double_sine({3.3, 0.1}, p2), mp("S(3.3+0.1i|1,sqrt2)")) < 1e-10);
  CHECK(rel(double_sine({-0.4, 0.3}, p2), oracle::double_sine({-0.4, 0.3}, 1, std::sqrt(2.0))) < 1e-10);
  CHECK(rel(double_sine({0.5, 8.0}, Periods(1, 1)), mp("S(0.5+8i|1,1)")) < 1e-9);
}

TEST_CASE("double sine homogeneity and period symmetry") {
  Periods p(1, std::sqrt(2.0));
  cplx z(0.6, 0.1);
  double gam = 2.5;
  CHECK(rel(double_sine(gam * z, Periods(gam * p.w1, gam * p.w2)), double_sine(z, p)) < 1e-10);
  CHECK(rel(double_sine(z, Periods(p.w2, p.w1)), double_sine(z, p)) < 1e-10);
}

TEST_CASE("double sine zeros and poles") {
  Periods p(1, 1.5);
  CHECK(double_sine(0.0, p) == cplx(0.0));
  CHECK(double_sine(-2.5, p) == cplx(0.0));
  CHECK(double_sine(-3.0, p) == cplx(0.0));
  try {
    double_sine(2.5, p);
    FAIL("expected pole");
  } catch (const PoleError& e) {
    CHECK(e.m() == 1);
    CHECK(e.k() == 1);
  }
  CHECK_THROWS_AS(double_sine(4.0, p), PoleError);
}

TEST_CASE("ill-conditioning flag after many shifts") {
  SineTrace tr;
  double_sine({-80.3, 0.2}, Periods(1, 1), &tr);
  CHECK(tr.steps > 64);
  CHECK(tr.ill_conditioned);
  SineTrace tr2;
  double_sine({-3.3, 0.2}, Periods(1, 1), &tr2);
  CHECK_FALSE(tr2.ill_conditioned);
}

TEST_CASE("double sine near zero") {
  CHECK(std::abs(double_sine_near_zero(0.0, Periods(1, 1)) - 2 * kPi) < 1e-12);
  CHECK(std::abs(double_sine_near_zero(0.0, Periods(2, 2)) - kPi) < 1e-12);
  Periods p(1, std::sqrt(2.0));
  cplx v = double_sine_near_zero(1e-4, p);
  CHECK(std::abs(v - 2 * kPi / std::pow(2.0, 0.25)) < 1e-3);
  CHECK(rel(v, mp("S(1e-4|1,sqrt2)/1e-4")) < 1e-10);
  // Richardson in z of the plain quotient
  cplx q1 = oracle::double_sine(1e-4, 1, std::sqrt(2.0)) / 1e-4;
  cplx q2 = oracle::double_sine(2e-4, 1, std::sqrt(2.0)) / 2e-4;
  CHECK(std::abs(double_sine_near_zero(0.0, p) - (2.0 * q1 - q2)) < 1e-7);
  CHECK_THROWS_AS(double_sine_near_zero(0.2, p), Error);
}

TEST_CASE("B22 polynomial") {
  CHECK(std::abs(b22(0.0, Periods(1, 1)) - 5.0 / 6.0) < 1e-15);
  CHECK(std::abs(b22(1.0, Periods(1, 1)) + 1.0 / 6.0) < 1e-15);
  Periods p(1, 2);
  CHECK(std::abs(b22(0.3, p) - b22(p.sum() - 0.3, p)) < 1e-14);
}

TEST_CASE("double sine asymptotic") {
  Periods p(1, 1);
  cplx z(0.5, 8.0);
  double e8 = std::abs(double_sine(z, p) - double_sine_asymptotic(z, p)) / std::abs(double_sine_asymptotic(z, p));
  CHECK(e8 < 1e-3);
  CHECK(std::abs(double_sine_asymptotic(std::conj(z), p) - std::conj(double_sine_asymptotic(z, p))) < 1e-12 * std::abs(double_sine_asymptotic(z, p)));
  CHECK_THROWS_AS(double_sine_asymptotic(0.5, p), Error);
  double prev = 1e300;
  for (double y : {1.0, 2.0, 4.0}) {
    cplx w(0.5, y);
    double e = std::abs(double_sine(w, p) - double_sine_asymptotic(w, p)) / std::abs(double_sine_asymptotic(w, p));
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("gamma-function limit of the double sine") {
  double prev = 1e300;
  for (double w2 : {10.0, 20.0, 40.0}) {
    Periods p(1, w2);
    double u = 0.6;
    cplx lim = std::sqrt(2 * kPi) * std::pow(2 * kPi / w2, 0.5 - u) / double_sine(u, p);
    double dev = std::abs(lim / complex_gamma(u) - 1.0);
    CHECK(dev < prev);
    prev = dev;
  }
  CHECK(prev < 5e-2);
}
