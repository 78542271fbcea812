#pragma once

#include "rsq/kernels.hpp"
#include "rsq/quad.hpp"

namespace rsq {

struct SpectralPoint {
  cplx lambda1, lambda2;
};

struct PositionPoint {
  double x1, x2;
};

// Coordinate-side representation
//   int dt e^{i s l2 (x1 + x2 - t)} K(x1 - t) K(x2 - t) e^{i s l1 t}
// with K = ch^{-g}, s = 1 for the hyperbolic/gamma pair and K = K_g, s = 2 pi/(w1 w2) for the
// relativistic family. Real hyperbolic data go through psi_factored.
QuadResult psi_HR(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, Family family,
                  const QuadSpec& q);

// Spectral-side representation
//   hyperbolic/gamma  int dgamma/(2 pi) e^{i x2 (l1 + l2 - gamma)} hatK(l1 - gamma) hatK(l2 - gamma) e^{i x1 gamma}
//   relativistic      S(g*)^2 int dgamma e^{i s x1 (l1 + l2 - gamma)} K_{g*}(l1 - gamma) K_{g*}(l2 - gamma) e^{i s x2 gamma}
// The contour stays on the real axis; complex l is accepted (hyperbolic/gamma only) while
// |Im(l_j)| < g keeps the Gamma poles off it, and refused with Status::continuation otherwise.
QuadResult psi_MB(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, Family family,
                  const QuadSpec& q);

// psi_l(x) = int dy K(x/2 - y) K(-x/2 - y) e^{2 i l y}, K = ch^{-g}, so that
// Psi = e^{i (l1 + l2)(x1 + x2)/2} psi_{(l1 - l2)/2}(x1 - x2).
// Evaluated by a trapezoid sum, which keeps it smooth in x and l for finite differences.
QuadResult psi_factored(cplx lam, double x, const Coupling& c, const QuadSpec& q);

// Two-plane-wave leading term for x2 - x1 -> +inf (hyperbolic). Throws Status::coincident for l1 = l2.
cplx psi_asymptotic(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c);

// sh^g|x1 - x2| psi_HR
cplx sutherland_gauge(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, const QuadSpec& q);

struct ResidualReport {
  double residual;   // |H Psi - E Psi| or |P Psi - E Psi|
  double magnitude;  // |Psi| at the point
  double step;       // finite-difference step
  int order;         // finite-difference order
};

// |H Psi - (l1^2 + l2^2) Psi| with
//   H = -d1^2 - d2^2 - 2 g coth(x1 - x2)(d1 - d2) - 2 g^2,
// derivatives by fourth-order central differences of step h. Throws Status::coincident at x1 = x2.
ResidualReport schrodinger_residual(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, double h,
                                    const QuadSpec& q);
// |-i (d1 + d2) Psi - (l1 + l2) Psi|, same stencil.
ResidualReport momentum_residual(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c, double h,
                                 const QuadSpec& q);

// Coefficients of the dual difference operator
//   calH = a1 e^{-2i d_l1} + a2 e^{-2i d_l2},
//   a1 = (l1 - l2 + 2i(g - 1))/(l2 - l1),  a2 = (l2 - l1 + 2i(g - 1))/(l1 - l2).
std::pair<cplx, cplx> dual_coefficients(cplx l1, cplx l2, double g);

struct DualResidual {
  double h_residual;  // |calH Psi - (e^{2 x1} + e^{2 x2}) Psi|
  double p_residual;  // |Psi(l1 - 2i, l2 - 2i) - e^{2 x1 + 2 x2} Psi|
  double magnitude;
};

// Uses psi_MB at l_j - 2i; requires g > 2 so the shifted Gamma poles stay off the real contour.
DualResidual dual_difference_residual(const SpectralPoint& sp, const PositionPoint& pp, const Coupling& c,
                                      const QuadSpec& q);

}  // namespace rsq
