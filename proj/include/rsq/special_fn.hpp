#pragma once

#include "rsq/error.hpp"

namespace rsq {

// Quasi-periods of the double sine; both strictly positive.
struct Periods {
  double w1, w2;

  Periods(double omega1, double omega2);
  double sum() const { return w1 + w2; }
  double prod() const { return w1 * w2; }
  double wmin() const { return w1 < w2 ? w1 : w2; }
  double wmax() const { return w1 < w2 ? w2 : w1; }
};

// Lanczos (g = 7, 9 terms) with reflection below Re z = 1/2.
cplx log_gamma(cplx z);
cplx complex_gamma(cplx z);

// ln(2 sin u), stable for large |Im u|. Branch is irrelevant to callers that exponentiate.
cplx log_2sin(cplx u);

// ln S2(z|w) from the t-integral; requires 0 < Re z < w1 + w2.
cplx log_double_sine(cplx z, const Periods& p);

struct SineTrace {
  int steps = 0;
  bool ill_conditioned = false;  // set when more than 64 shifts were applied
};

struct LogValue {
  cplx log;
  bool zero = false;  // exact zero of the function; `log` is meaningless then
};

// ln S2 on the whole plane. The integral is only evaluated in the central window
// Re z in [wmin/2, wmin/2 + wmax]; elsewhere the argument is shifted by the larger
// period with the functional relations.
LogValue log_double_sine_ext(cplx z, const Periods& p, SineTrace* trace = nullptr);

cplx double_sine(cplx z, const Periods& p, SineTrace* trace = nullptr);

// S2(z)/z near the origin, continuous at 0 with value 2*pi/sqrt(w1*w2).
cplx double_sine_near_zero(cplx z, const Periods& p);

cplx b22(cplx z, const Periods& p);

// exp(sign(Im z) * i*pi*B22(z)/2)
cplx double_sine_asymptotic(cplx z, const Periods& p);

}  // namespace rsq
