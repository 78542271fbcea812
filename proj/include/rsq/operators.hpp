#pragma once

#include <array>
#include <memory>
#include <vector>

#include "rsq/kernels.hpp"
#include "rsq/quad.hpp"

namespace rsq {

// One operator of a family. For the hyperbolic/gamma pair the family tag already names the
// side (hyperbolic acts on coordinates, gamma is the hatted operator on spectral variables),
// so `dual` must be false for hyperbolic and true for gamma. Relativistic operators use
// K_{g*}, mu_{g*} when dual is false and K_g, mu_g when dual is true.
struct OperatorSpec {
  Family family = Family::hyperbolic;
  int arity = 1;
  bool dual = false;
  Coupling coupling{1.0};
  cplx spectral = 0.0;

  void validate() const;
  OperatorSpec with_spectral(cplx s) const;
  OperatorSpec with_arity(int n) const;
};

// The ingredients an operator is built from.
//   kernel  Q_1 f(x) = w int e^{i sigma p (x - y)} K(x - y) f(y) dy
//   n = 2   Q_2 f(x) = w^2 int mu(y1 - y2) e^{i sigma p (x1 + x2 - y1 - y2)} prod K(x_i - y_k) f(y)
//   raising Lambda f(x1, x2) = w int e^{i sigma p (x1 + x2 - y)} K(x1 - y) K(x2 - y) f(y) dy
struct KernelModel {
  Family family;
  Coupling kc;          // coupling that enters K and mu
  double sigma;         // 1, or 2 pi / (w1 w2)
  double weight;        // 1, or 1 / (2 pi) for the gamma family
  double rate;          // |K(u)| ~ e^{-rate |u|}
  double strip;         // K analytic for |Im u| < strip
  double mu_strip;      // mu analytic for |Im u| < mu_strip; 0 when mu has a kink at 0
  cplx kernel(double u) const;
  double log_kernel(double u) const;
  double log_measure(double d) const;
  // shift of the raising-operator spectral parameter produced by the Q -> Lambda limit
  double exchange_shift() const { return rate / sigma; }
  // n = 1 eigenvalue on the plane wave e^{i sigma label y}
  cplx eigen(cplx p, cplx label) const;
};

KernelModel kernel_model(const OperatorSpec& s);

// Exponential envelope of |f| along one axis: e^{-rate_pos y} for y -> +inf and
// e^{-rate_neg |y|} for y -> -inf. Negative rates mean growth.
struct Envelope {
  double rate_pos = 0.0;
  double rate_neg = 0.0;
};

class LambdaWave;

struct FunctionHandle {
  int arity = 1;
  std::function<cplx(double)> f1;
  std::function<cplx(double, double)> f2;
  std::array<Envelope, 2> env{};
  double strip = 0.0;      // analytic in each variable for |Im| < strip; 0 if unknown
  double frequency = 0.0;  // bound on the oscillation frequency per variable
  std::shared_ptr<const LambdaWave> wave;  // set when f is a raising-operator wave

  static FunctionHandle unary(std::function<cplx(double)> f, Envelope e, double strip = 0.0,
                              double frequency = 0.0);
  static FunctionHandle binary(std::function<cplx(double, double)> f, Envelope e1, Envelope e2,
                               double strip = 0.0, double frequency = 0.0);
  // e^{i sigma label y}
  static FunctionHandle plane_wave(double sigma, cplx label);
  // Pointwise evaluation by quadrature; lattice methods use the wave's own tables instead.
  static FunctionHandle from_wave(std::shared_ptr<const LambdaWave> w, const QuadSpec& q);
};

enum class Method { automatic, adaptive, lattice };

// [Q f](at). `at` has one entry for arity 1 and two for arity 2.
QuadResult apply_Q(const OperatorSpec& s, const FunctionHandle& f, const std::vector<double>& at,
                   const QuadSpec& q, Method m = Method::automatic);

// [Lambda f](x1, x2) for a unary f.
QuadResult apply_Lambda(const OperatorSpec& s, const FunctionHandle& f, double x1, double x2, const QuadSpec& q);

// Kernels without the integration weights.
cplx q_kernel(const OperatorSpec& s, const std::vector<double>& x, const std::vector<double>& y);
cplx lambda_kernel(const OperatorSpec& s, double x1, double x2, double y);

// |e^{g y1 + i lam y2} Q(x, y; lam) / Lambda(x, y1; lam - i g) - 1| for the hyperbolic family.
double qlim_deviation(const OperatorSpec& s, double x1, double x2, double y1, double y2);

// Kernel of Q(first) Q(second): int dy Q(x, y; first) Q(y, z; second), weights included.
// For n = 1, `substituted` evaluates the same integral after y -> z + x - y.
QuadResult qq_convolution_kernel(const OperatorSpec& s, cplx first, cplx second, const std::vector<double>& x,
                                 const std::vector<double>& z, const QuadSpec& q, bool substituted = false,
                                 Method m = Method::automatic);

// Lambda(q2) applied to e^{i sigma q1 y}: the two-particle wave
//   F(a, b) = w int e^{i sigma q2 (a + b - t)} K(a - t) K(b - t) e^{i sigma q1 t} dt.
class LambdaWave {
 public:
  LambdaWave(const OperatorSpec& raising, cplx label);

  const KernelModel& model() const { return model_; }
  cplx outer() const { return q2_; }
  cplx label() const { return q1_; }

  QuadResult operator()(double a, double b, const QuadSpec& q) const;
  Envelope envelope() const;

  // Samples F(j h, k h) for lo <= j, k <= hi by the trapezoid rule on the same lattice,
  // stored as G[d] with F(j, k) = w h e^{i sigma (q2 j + q1 k) h - rate |j - k| h} G[j - k].
  // g_even repeats the t-sum on the even sublattice (step 2h) for an error estimate.
  struct Table {
    double h = 0.0;
    long lo = 0, hi = 0;
    std::vector<cplx> g, g_even;  // indexed by d + (hi - lo)
    cplx at(long j, long k, const LambdaWave& w) const;
  };
  Table tabulate(double h, long lo, long hi, const QuadSpec& q) const;

 private:
  OperatorSpec spec_;
  KernelModel model_;
  cplx q2_, q1_;
};

// Exchange relation Q_2(lam) Lambda_2(rho') = 2 q(lam, rho') Lambda_2(rho') Q_1(lam) with
// rho' = rho - i shift (g, pi/2 or g*/2 by family), applied to the plane wave with `label`.
// Hyperbolic uses Q_2(lam); gamma and relativistic use the hatted operators.
// Returns (LHS, RHS).
std::pair<QuadResult, QuadResult> qlambda_exchange_check(Family family, cplx lam, cplx rho, cplx label,
                                                         const std::vector<double>& at, const Coupling& c,
                                                         const QuadSpec& q);

// Lattice step for an analytic integrand: strip half-width d, oscillation frequency, tolerance.
double lattice_step(double d, double frequency, const QuadSpec& q);

}  // namespace rsq
