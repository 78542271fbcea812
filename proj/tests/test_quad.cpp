#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rsq/quad.hpp"

using namespace rsq;

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("spec validation") {
  QuadSpec s;
  CHECK_NOTHROW(s.validate());
  s.max_nodes = 10;
  CHECK_THROWS_AS(s.validate(), Error);
  QuadSpec t;
  t.rel_tol = -1;
  CHECK_THROWS_AS(t.validate(), Error);
  CHECK_THROWS_AS((DecayProfile{0.0, 1.0}.validate()), Error);
}

TEST_CASE("sech and Gaussian integrals") {
  QuadSpec s;
  auto sech = [](double z) { return cplx(1.0 / std::cosh(z)); };
  CHECK(std::abs(integrate_line(sech, {1, 1}, s).value - kPi) < 1e-10);
  auto wave = [](double z) { return std::exp(cplx(0, z)) / std::cosh(z); };
  double ref = kPi / std::cosh(kPi / 2);
  CHECK(std::abs(integrate_line(wave, {1, 1}, s, {{}, 1.0}).value - ref) < 1e-10);
  CHECK(std::abs(oracle::trapezoid(wave, 40, 16001) - ref) < 1e-12);
  auto gauss = [](double z) { return cplx(std::exp(-z * z)); };
  CHECK(std::abs(integrate_line(gauss, {1, 1}, s).value - std::sqrt(kPi)) < 1e-10);
}

TEST_CASE("oracle trapezoid") {
  CHECK(std::abs(oracle_trapezoid([](double) { return cplx(1); }, 1, 3) - 2.0) < 1e-15);
  CHECK(std::abs(oracle_trapezoid([](double z) { return cplx(z); }, 3.7, 101)) < 1e-13);
  auto sech = [](double z) { return cplx(1.0 / std::cosh(z)); };
  CHECK(std::abs(oracle_trapezoid(sech, 40, 16001) - kPi) < 1e-12);
}

TEST_CASE("plane integrals") {
  QuadSpec s;
  auto g2 = [](double a, double b) { return cplx(std::exp(-a * a - b * b)); };
  CHECK(std::abs(integrate_plane(g2, {1, 1}, {1, 1}, s).value - kPi) < 1e-9);
  auto s2 = [](double a, double b) { return cplx(1.0 / (std::cosh(a) * std::cosh(b))); };
  CHECK(std::abs(integrate_plane(s2, {1, 1}, {1, 1}, s).value - kPi * kPi) < 1e-9);

  // g = 1 Q2-kernel slice with extra damping so it converges
  auto slice = [](double a, double b) {
    double sh = std::sinh(a - b);
    double ca = std::cosh(a), cb = std::cosh(b);
    return cplx(sh * sh / (ca * ca * cb * cb * ca * cb));
  };
  PlaneHints h;
  h.inner = [](double a) { return LineHints{{a}, 0.0}; };
  cplx v = integrate_plane(slice, {1, 1}, {1, 1}, s, h).value;
  cplx ref = oracle::trapezoid_2d(slice, 20, 4001);
  CHECK(std::abs(v - ref) < 1e-8 * std::abs(ref));
}

TEST_CASE("linearity and translation covariance") {
  QuadSpec s;
  auto f = [](double z) { return std::exp(cplx(0, 0.7 * z)) / std::cosh(z); };
  auto g = [](double z) { return cplx(std::exp(-z * z / 2)); };
  cplx a(0.3, -1.2), b(2.0, 0.5);
  cplx lhs = integrate_line([&](double z) { return a * f(z) + b * g(z); }, {0.5, 0.5}, s).value;
  cplx rhs = a * integrate_line(f, {1, 1}, s).value + b * integrate_line(g, {0.5, 0.5}, s).value;
  CHECK(std::abs(lhs - rhs) < 2 * (1e-9 * std::abs(rhs) + 1e-12) * 10);
  double shift = 2.3;
  cplx moved = integrate_line([&](double z) { return f(z - shift); }, {1, 1, shift}, s).value;
  cplx base = integrate_line(f, {1, 1}, s).value;
  CHECK(std::abs(moved - base) < 1e-9 * std::abs(base));
}

TEST_CASE("determinism") {
  QuadSpec s;
  auto f = [](double z) { return std::exp(cplx(0.1 * z, 3.0 * z)) / std::pow(std::cosh(z), 1.3); };
  QuadResult r1 = integrate_line(f, {1.2, 1.4}, s, {{0.25}, 3.0});
  QuadResult r2 = integrate_line(f, {1.2, 1.4}, s, {{0.25}, 3.0});
  CHECK(r1.value.real() == r2.value.real());
  CHECK(r1.value.imag() == r2.value.imag());
  CHECK(r1.nodes == r2.nodes);
}

TEST_CASE("budget and non-finite errors") {
  QuadSpec s;
  s.max_nodes = 64;
  s.rel_tol = 1e-14;
  s.abs_tol = 1e-16;
  auto f = [](double z) { return std::exp(cplx(0, 40 * z)) / std::cosh(z); };
  try {
    integrate_line(f, {1, 1}, s);
    FAIL("expected budget error");
  } catch (const BudgetError& e) {
    CHECK(std::isfinite(e.error_bound()));
  }
  QuadSpec t;
  auto bad = [](double z) { return cplx(z > 0.3 ? NAN : 1.0); };
  CHECK_THROWS_AS(integrate_interval(bad, 0, 1, t), NonFiniteError);
}

TEST_CASE("oracle agreement on random kernel-family integrands") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> ug(0.5, 2.0), ul(-3.0, 3.0);
  QuadSpec s;
  for (int i = 0; i < 20; ++i) {
    double g = ug(rng), lam = ul(rng);
    auto f = [&](double z) { return std::exp(cplx(0, lam * z)) * std::pow(std::cosh(z), -g); };
    cplx a = integrate_line(f, {g, g}, s, {{}, lam}).value;
    cplx o = oracle::trapezoid(f, 30.0 / g + 10, 40001);
    CHECK(std::abs(a - o) <= 10 * 1e-9 * std::abs(o) + 1e-11);
  }
}

TEST_CASE("lattice sum of an analytic integrand") {
  auto f = [](long k) { double z = 0.1 * k; return cplx(1.0 / std::cosh(z)); };
  QuadResult r = lattice_sum(f, 0.1, -400, 400);
  CHECK(std::abs(r.value - kPi) < 1e-12);
  CHECK(r.error < 1e-6);
}
