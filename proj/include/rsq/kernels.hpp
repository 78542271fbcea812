#pragma once

#include <optional>
#include <string>

#include "rsq/special_fn.hpp"

namespace rsq {

enum class Family { hyperbolic, gamma, relativistic };

const char* family_name(Family f) noexcept;
Family parse_family(const std::string& name);

struct Coupling {
  double g;
  std::optional<Periods> periods;

  explicit Coupling(double coupling);
  Coupling(double coupling, Periods p);

  const Periods& omega() const;  // throws when the periods are absent
  double gstar() const;          // w1 + w2 - g
  Coupling dual() const;         // g -> g*; dual().dual() reproduces g bit for bit

 private:
  Coupling(double coupling, double dual_coupling, Periods p);
  double gstar_ = 0.0;
};

// ch^{-g}(x)
double kernel_K(double x, const Coupling& c);
// Principal branch of ch^{-g} for |Im x| < pi/2.
cplx kernel_K(cplx x, const Coupling& c);

// Gamma((g + i lam)/2) Gamma((g - i lam)/2) / (2^{1-g} Gamma(g))
cplx kernel_hatK(cplx lam, const Coupling& c);

// 1 / (S(g/2 + i lam) S(g/2 - i lam))
cplx kernel_Kg(cplx lam, const Coupling& c);

// Weight of the n = 2 kernels at the pair (a, b); exact zero at a = b.
//   hyperbolic   sh^{2g}|a - b|
//   gamma        [2^{1-g} Gamma(g)]^2 / (Gamma(g +- i(a-b)/2) Gamma(+- i(a-b)/2))
//   relativistic S(g +- i(a-b)) S(+- i(a-b))
cplx measure(Family kind, double a, double b, const Coupling& c);

// Logarithms on the real line, where both functions are positive:
//   kernel   ch^{-g}(u), hatK(u) or K_g(u) by family
//   measure  as `measure`; ln mu(0) = -inf
double log_kernel(Family kind, double u, const Coupling& c);
double log_measure(Family kind, double d, const Coupling& c);

// Eigenvalue of the n = 1 operator of the family on a plane wave:
//   hyperbolic   q(lam, lam1) = hatK(lam - lam1)
//   gamma        qhat(x, x1)  = K(x - x1)
//   relativistic q(lam, rho)  = sqrt(w1 w2) S(g) K_g(lam - rho)
// The relativistic dual eigenvalue is the same formula evaluated at c.dual().
cplx eigenvalue(Family kind, cplx spectral, cplx label, const Coupling& c);

// (2 pi / Gamma(g)) mu^{g-1} e^{pi (gamma - mu)/2}
cplx hatK_asymptotic(double gamma, double mu, const Coupling& c);

// Exponential decay rate of |K| on the real axis for the family's kernel.
double kernel_decay_rate(Family kind, const Coupling& c);

}  // namespace rsq
