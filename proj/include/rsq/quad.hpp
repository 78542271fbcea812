#pragma once

#include <functional>
#include <vector>

#include "rsq/error.hpp"

namespace rsq {

struct QuadSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  long max_nodes = 4'000'000;
  double truncation_safety = 1.5;
  // Step for lattice (trapezoid) sums over analytic integrands; 0 picks one from the strip width.
  double lattice_step = 0.0;

  void validate() const;
  QuadSpec split(int parts) const;
};

// Envelope exponents of |f| as the argument runs to +inf / -inf.
struct DecayProfile {
  double rate_pos;
  double rate_neg;
  double center = 0.0;

  void validate() const;
};

struct LineHints {
  std::vector<double> breakpoints;
  double frequency = 0.0;  // bounds panel width by pi/(4|frequency|)
};

struct QuadResult {
  cplx value;
  double error = 0.0;
  long nodes = 0;
};

using LineFn = std::function<cplx(double)>;
using PlaneFn = std::function<cplx(double, double)>;

// [center - L_neg, center + L_pos] with L = safety * (-ln(abs_tol/10)) / rate.
std::pair<double, double> truncation_interval(const DecayProfile& d, const QuadSpec& s);

// Adaptive Gauss-Kronrod (7/15) on a finite interval. Panels are refined in a fixed
// priority order and summed left to right, so the result is bit-reproducible.
QuadResult integrate_interval(const LineFn& f, double a, double b, const QuadSpec& s,
                              const LineHints& hints = {});

QuadResult integrate_line(const LineFn& f, const DecayProfile& d, const QuadSpec& s,
                          const LineHints& hints = {});

struct PlaneHints {
  LineHints outer;
  // Hints for the inner (second) variable given the outer one, e.g. a kink at y2 = y1.
  std::function<LineHints(double)> inner;
};

// Nested: outer variable is the first argument. Tolerances are split evenly per axis.
QuadResult integrate_plane(const PlaneFn& f, const DecayProfile& d1, const DecayProfile& d2,
                           const QuadSpec& s, const PlaneHints& hints = {});

// Plain composite trapezoid on [-L, L] with n (odd) nodes.
cplx oracle_trapezoid(const LineFn& f, double L, long n);

// h * sum_{k=lo..hi} f(k); the error estimate compares against the even-index sum with step 2h.
QuadResult lattice_sum(const std::function<cplx(long)>& f, double h, long lo, long hi);

// Compensated summation of complex terms in the given order.
class NeumaierSum {
 public:
  void add(cplx v);
  cplx value() const;

 private:
  double sr_ = 0, cr_ = 0, si_ = 0, ci_ = 0;
};

}  // namespace rsq
