#include "rsq/operators.hpp"

#include <cmath>
#include <limits>
#include <unordered_map>

namespace rsq {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();
const cplx kI(0, 1);

bool is_integer(double g) { return std::fabs(g - std::round(g)) < 1e-14 * std::max(1.0, g); }

void require_convergent(double pos, double neg, const char* what) {
  if (!(pos > 0) || !(neg > 0))
    throw Error(Status::divergence, std::string(what) + ": integrand does not decay (rates " + std::to_string(pos) +
                                        ", " + std::to_string(neg) + ")");
}

bool same_model(const KernelModel& a, const KernelModel& b) {
  return a.family == b.family && a.kc.g == b.kc.g && a.sigma == b.sigma && a.weight == b.weight;
}

// Depth in e-folds at which neglected tails fall below abs_tol.
double tail_depth(const QuadSpec& q) { return q.truncation_safety * -std::log(q.abs_tol / 10.0); }

std::pair<long, long> index_window(double a, double b, double h) {
  return {long(std::floor(a / h)) - 1, long(std::ceil(b / h)) + 1};
}

// Accepts S_h when it agrees with S_2h to roughly half the target digits; the trapezoid error
// on analytic integrands squares when h halves, so |S_h - S_2h|^2 / |S_h| estimates it.
double lattice_error(cplx fine, cplx coarse, const QuadSpec& q) {
  const double diff = std::abs(fine - coarse);
  const double scale = std::max(std::abs(fine), q.abs_tol);
  return diff * diff / scale;
}

bool lattice_accepts(cplx fine, cplx coarse, const QuadSpec& q) {
  const double diff = std::abs(fine - coarse);
  return diff <= std::sqrt(std::max(q.rel_tol * std::abs(fine), q.abs_tol)) * std::sqrt(std::abs(fine) + q.abs_tol);
}

void check_finite(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw NonFiniteError(0.0, std::string(what) + " is not finite");
}

}  // namespace

void OperatorSpec::validate() const {
  if (arity != 1 && arity != 2) throw Error(Status::domain, "operator arity must be 1 or 2");
  if (family == Family::hyperbolic && dual) throw Error(Status::domain, "hyperbolic operators act on coordinates; dual must be false");
  if (family == Family::gamma && !dual) throw Error(Status::domain, "gamma-family operators are the hatted ones; dual must be true");
  if (family == Family::relativistic) coupling.omega();
  if (!std::isfinite(spectral.real()) || !std::isfinite(spectral.imag()))
    throw Error(Status::domain, "spectral parameter must be finite");
}

OperatorSpec OperatorSpec::with_spectral(cplx s) const {
  OperatorSpec o = *this;
  o.spectral = s;
  return o;
}

OperatorSpec OperatorSpec::with_arity(int n) const {
  OperatorSpec o = *this;
  o.arity = n;
  return o;
}

KernelModel kernel_model(const OperatorSpec& s) {
  s.validate();
  const Coupling& c = s.coupling;
  switch (s.family) {
    case Family::hyperbolic:
      return {Family::hyperbolic, c, 1.0, 1.0, c.g, kPi / 2, is_integer(c.g) ? kInf : 0.0};
    case Family::gamma:
      return {Family::gamma, c, 1.0, 1.0 / (2 * kPi), kPi / 2, c.g, kInf};
    case Family::relativistic: {
      Coupling kc = s.dual ? c : c.dual();
      const double pr = kc.omega().prod();
      return {Family::relativistic, kc, 2 * kPi / pr, 1.0, kPi * kc.gstar() / pr, kc.g / 2, kc.gstar()};
    }
  }
  throw Error(Status::domain, "unknown family");
}

cplx KernelModel::kernel(double u) const { return std::exp(log_kernel(u)); }

double KernelModel::log_kernel(double u) const { return rsq::log_kernel(family, u, kc); }

double KernelModel::log_measure(double d) const { return rsq::log_measure(family, d, kc); }

cplx KernelModel::eigen(cplx p, cplx label) const {
  switch (family) {
    case Family::hyperbolic: return kernel_hatK(p - label, kc);
    case Family::gamma: return kernel_K(p - label, kc);
    case Family::relativistic: return eigenvalue(Family::relativistic, p, label, kc.dual());
  }
  return 0.0;
}

FunctionHandle FunctionHandle::unary(std::function<cplx(double)> f, Envelope e, double strip, double frequency) {
  FunctionHandle h;
  h.arity = 1;
  h.f1 = std::move(f);
  h.env = {e, e};
  h.strip = strip;
  h.frequency = frequency;
  return h;
}

FunctionHandle FunctionHandle::binary(std::function<cplx(double, double)> f, Envelope e1, Envelope e2, double strip,
                                      double frequency) {
  FunctionHandle h;
  h.arity = 2;
  h.f2 = std::move(f);
  h.env = {e1, e2};
  h.strip = strip;
  h.frequency = frequency;
  return h;
}

FunctionHandle FunctionHandle::plane_wave(double sigma, cplx label) {
  const double a = sigma * label.imag();
  return unary([sigma, label](double y) { return std::exp(kI * sigma * label * y); }, {a, -a}, kInf,
               sigma * std::fabs(label.real()));
}

FunctionHandle FunctionHandle::from_wave(std::shared_ptr<const LambdaWave> w, const QuadSpec& q) {
  const Envelope e = w->envelope();
  const double freq = w->model().sigma * (std::fabs(w->outer().real()) + std::fabs(w->label().real()));
  FunctionHandle h = binary([w, q](double a, double b) { return (*w)(a, b, q).value; }, e, e, w->model().strip, freq);
  h.wave = std::move(w);
  return h;
}

double lattice_step(double d, double frequency, const QuadSpec& q) {
  if (q.lattice_step > 0) return q.lattice_step;
  if (!(d > 0)) throw Error(Status::domain, "lattice step needs a positive strip width");
  const double depth = -std::log(q.rel_tol * 1e-2);
  return 2 * kPi * d / (depth + std::fabs(frequency) * d);
}

cplx q_kernel(const OperatorSpec& s, const std::vector<double>& x, const std::vector<double>& y) {
  const KernelModel m = kernel_model(s);
  if (x.size() != size_t(s.arity) || y.size() != size_t(s.arity))
    throw Error(Status::domain, "q_kernel needs arity-many coordinates");
  if (s.arity == 1) return std::exp(kI * m.sigma * s.spectral * (x[0] - y[0]) + m.log_kernel(x[0] - y[0]));
  const double l = m.log_measure(y[0] - y[1]) + m.log_kernel(x[0] - y[0]) + m.log_kernel(x[1] - y[0]) +
                   m.log_kernel(x[0] - y[1]) + m.log_kernel(x[1] - y[1]);
  return std::exp(kI * m.sigma * s.spectral * (x[0] + x[1] - y[0] - y[1]) + l);
}

cplx lambda_kernel(const OperatorSpec& s, double x1, double x2, double y) {
  const KernelModel m = kernel_model(s);
  return std::exp(kI * m.sigma * s.spectral * (x1 + x2 - y) + m.log_kernel(x1 - y) + m.log_kernel(x2 - y));
}

double qlim_deviation(const OperatorSpec& s, double x1, double x2, double y1, double y2) {
  if (s.family != Family::hyperbolic) throw Error(Status::domain, "qlim_deviation is defined for the hyperbolic family");
  const KernelModel m = kernel_model(s);
  const double g = s.coupling.g;
  const cplx lam = s.spectral;
  const cplx lq = g * y1 + kI * lam * y2 + kI * lam * (x1 + x2 - y1 - y2) + m.log_measure(y1 - y2) +
                  m.log_kernel(x1 - y1) + m.log_kernel(x2 - y1) + m.log_kernel(x1 - y2) + m.log_kernel(x2 - y2);
  const cplx ll = kI * (lam - kI * g) * (x1 + x2 - y1) + m.log_kernel(x1 - y1) + m.log_kernel(x2 - y1);
  return std::abs(std::exp(lq - ll) - 1.0);
}

// ---------------------------------------------------------------------------------------------
// Lambda waves

LambdaWave::LambdaWave(const OperatorSpec& raising, cplx label)
    : spec_(raising), model_(kernel_model(raising)), q2_(raising.spectral), q1_(label) {
  const double di = model_.sigma * (q2_.imag() - q1_.imag());
  require_convergent(2 * model_.rate - di, 2 * model_.rate + di, "raising operator on a plane wave");
}

Envelope LambdaWave::envelope() const {
  const double a = model_.sigma * q2_.imag(), b = model_.sigma * q1_.imag();
  return {model_.rate + std::min(a, b), model_.rate - std::max(a, b)};
}

QuadResult LambdaWave::operator()(double a, double b, const QuadSpec& q) const {
  return apply_Lambda(spec_, FunctionHandle::plane_wave(model_.sigma, q1_), a, b, q);
}

LambdaWave::Table LambdaWave::tabulate(double h, long lo, long hi, const QuadSpec& q) const {
  if (!(h > 0) || hi < lo) throw Error(Status::domain, "tabulate needs h > 0 and lo <= hi");
  const double r = model_.rate, sig = model_.sigma;
  const cplx delta = q1_ - q2_;
  const double up = 2 * r + sig * delta.imag(), down = 2 * r - sig * delta.imag();
  const double depth = tail_depth(q);
  const long mp = long(std::ceil(depth / (up * h))) + 1, mm = long(std::ceil(depth / (down * h))) + 1;
  const long span = hi - lo;
  const long nk = span + std::max(mp, mm) + 1;

  std::vector<double> lk(size_t(nk + 1));
  for (long n = 0; n <= nk; ++n) lk[size_t(n)] = model_.log_kernel(double(n) * h);
  auto LK = [&](long n) { return lk[size_t(std::labs(n))]; };

  // e^{-sigma Im(delta) m h} and e^{i sigma Re(delta) m h}, indexed by m + off
  const long mlo = -span - mm, mhi = span + mp, off = -mlo;
  std::vector<double> em(size_t(mhi - mlo + 1));
  std::vector<cplx> pm(em.size());
  for (long m = mlo; m <= mhi; ++m) {
    em[size_t(m + off)] = LK(m) - sig * delta.imag() * double(m) * h;
    pm[size_t(m + off)] = std::polar(1.0, sig * delta.real() * double(m) * h);
  }

  Table t;
  t.h = h;
  t.lo = lo;
  t.hi = hi;
  t.g.assign(size_t(2 * span + 1), 0.0);
  t.g_even.assign(size_t(2 * span + 1), 0.0);
  for (long d = -span; d <= span; ++d) {
    const double scale = r * double(std::labs(d)) * h;
    const long a = std::min(0L, d) - mm, b = std::max(0L, d) + mp;
    cplx s = 0.0, se = 0.0;
    for (long m = a; m <= b; ++m) {
      const cplx v = std::exp(LK(d - m) + em[size_t(m + off)] + scale) * pm[size_t(m + off)];
      s += v;
      if ((m & 1) == 0) se += v;
    }
    t.g[size_t(d + span)] = s;
    t.g_even[size_t(d + span)] = se;
  }
  return t;
}

cplx LambdaWave::Table::at(long j, long k, const LambdaWave& w) const {
  if (j < lo || j > hi || k < lo || k > hi) throw Error(Status::domain, "wave table index out of range");
  const KernelModel& m = w.model();
  const long d = j - k;
  const cplx ph = kI * m.sigma * (w.outer() * double(j) + w.label() * double(k)) * h;
  return m.weight * h * std::exp(ph - m.rate * double(std::labs(d)) * h) * g[size_t(d + (hi - lo))];
}

// ---------------------------------------------------------------------------------------------
// Application

QuadResult apply_Lambda(const OperatorSpec& s, const FunctionHandle& f, double x1, double x2, const QuadSpec& q) {
  const KernelModel m = kernel_model(s);
  if (f.arity != 1 || !f.f1) throw Error(Status::domain, "the raising operator acts on functions of one variable");
  const double sp = m.sigma * s.spectral.imag();
  const double pos = 2 * m.rate + f.env[0].rate_pos - sp, neg = 2 * m.rate + f.env[0].rate_neg + sp;
  require_convergent(pos, neg, "raising operator");
  const cplx p = s.spectral;
  auto integrand = [&](double y) {
    return m.weight * std::exp(kI * m.sigma * p * (x1 + x2 - y) + m.log_kernel(x1 - y) + m.log_kernel(x2 - y)) * f.f1(y);
  };
  LineHints hints;
  hints.frequency = m.sigma * std::fabs(p.real()) + f.frequency;
  return integrate_line(integrand, {pos, neg, 0.5 * (x1 + x2)}, q, hints);
}

namespace {

QuadResult apply_Q1(const KernelModel& m, cplx p, const FunctionHandle& f, double x, const QuadSpec& q) {
  if (f.arity != 1 || !f.f1) throw Error(Status::domain, "Q_1 acts on functions of one variable");
  const double sp = m.sigma * p.imag();
  const double pos = m.rate + f.env[0].rate_pos - sp, neg = m.rate + f.env[0].rate_neg + sp;
  require_convergent(pos, neg, "Q_1");
  auto integrand = [&](double y) { return m.weight * std::exp(kI * m.sigma * p * (x - y) + m.log_kernel(x - y)) * f.f1(y); };
  LineHints hints;
  hints.frequency = m.sigma * std::fabs(p.real()) + f.frequency;
  return integrate_line(integrand, {pos, neg, x}, q, hints);
}

struct Q2Setup {
  DecayProfile d1, d2;
};

Q2Setup q2_profiles(const KernelModel& m, cplx p, const FunctionHandle& f, double x1, double x2) {
  const double sp = m.sigma * p.imag();
  Q2Setup s{{f.env[0].rate_pos - sp, f.env[0].rate_neg + sp, 0.5 * (x1 + x2)},
            {f.env[1].rate_pos - sp, f.env[1].rate_neg + sp, 0.5 * (x1 + x2)}};
  require_convergent(s.d1.rate_pos, s.d1.rate_neg, "Q_2");
  require_convergent(s.d2.rate_pos, s.d2.rate_neg, "Q_2");
  return s;
}

QuadResult apply_Q2_adaptive(const KernelModel& m, cplx p, const FunctionHandle& f, double x1, double x2,
                             const QuadSpec& q) {
  const Q2Setup st = q2_profiles(m, p, f, x1, x2);
  // ln K(x1 - y) + ln K(x2 - y), reused across the nested quadrature
  std::unordered_map<double, double> memo;
  auto bl = [&](double y) {
    auto it = memo.find(y);
    if (it != memo.end()) return it->second;
    const double v = m.log_kernel(x1 - y) + m.log_kernel(x2 - y);
    memo.emplace(y, v);
    return v;
  };
  auto integrand = [&](double y1, double y2) -> cplx {
    if (y1 == y2) return 0.0;
    const double l = m.log_measure(y1 - y2) + bl(y1) + bl(y2);
    return m.weight * m.weight * std::exp(kI * m.sigma * p * (x1 + x2 - y1 - y2) + l) * f.f2(y1, y2);
  };
  PlaneHints hints;
  hints.outer.frequency = m.sigma * std::fabs(p.real()) + f.frequency;
  const bool kink = !(m.mu_strip > 0);
  const double fr = hints.outer.frequency;
  hints.inner = [kink, fr](double y1) {
    LineHints h;
    h.frequency = fr;
    if (kink) h.breakpoints.push_back(y1);
    return h;
  };
  return integrate_plane(integrand, st.d1, st.d2, q, hints);
}

// Lattice window shared by both axes.
std::pair<long, long> q2_window(const Q2Setup& st, double x1, double x2, double h, const QuadSpec& q) {
  DecayProfile d{std::min(st.d1.rate_pos, st.d2.rate_pos), std::min(st.d1.rate_neg, st.d2.rate_neg), 0.5 * (x1 + x2)};
  auto [a, b] = truncation_interval(d, q);
  const double half = 0.5 * std::fabs(x1 - x2);
  return index_window(a - half, b + half, h);
}

QuadResult apply_Q2_lattice(const KernelModel& m, cplx p, const FunctionHandle& f, double x1, double x2,
                            const QuadSpec& q) {
  if (!(m.mu_strip > 0)) throw Error(Status::domain, "lattice sums need an analytic measure");
  if (!(f.strip > 0)) throw Error(Status::domain, "lattice sums need an analytic input (declare its strip)");
  const Q2Setup st = q2_profiles(m, p, f, x1, x2);
  const double d = 0.8 * std::min({m.strip, f.strip, m.mu_strip / 2});
  double h = lattice_step(d, m.sigma * std::fabs(p.real()) + f.frequency, q);
  for (int attempt = 0;; ++attempt) {
    auto [lo, hi] = q2_window(st, x1, x2, h, q);
    const long n = hi - lo + 1;
    if (n * n > q.max_nodes) throw BudgetError(0.0, kInf, "Q_2 lattice exceeds the node budget");
    std::vector<cplx> bl(static_cast<size_t>(n));
    std::vector<double> mu(size_t(2 * n - 1));
    for (long j = lo; j <= hi; ++j) {
      const double y = double(j) * h;
      bl[size_t(j - lo)] = m.log_kernel(x1 - y) + m.log_kernel(x2 - y) - kI * m.sigma * p * y;
    }
    for (long dd = -(n - 1); dd <= n - 1; ++dd) mu[size_t(dd + n - 1)] = m.log_measure(double(dd) * h);
    NeumaierSum fine, coarse;
    for (long j = lo; j <= hi; ++j) {
      cplx row = 0.0, row_even = 0.0;
      for (long k = lo; k <= hi; ++k) {
        if (j == k) continue;
        const cplx v = std::exp(mu[size_t(j - k + n - 1)] + bl[size_t(j - lo)] + bl[size_t(k - lo)]) *
                       f.f2(double(j) * h, double(k) * h);
        row += v;
        if ((k & 1) == 0) row_even += v;
      }
      fine.add(row);
      if ((j & 1) == 0) coarse.add(row_even);
    }
    const cplx pre = m.weight * m.weight * std::exp(kI * m.sigma * p * (x1 + x2));
    const cplx sf = pre * h * h * fine.value(), sc = pre * 4.0 * h * h * coarse.value();
    check_finite(sf, "Q_2 lattice sum");
    if (lattice_accepts(sf, sc, q) || attempt == 2) {
      const double err = lattice_error(sf, sc, q);
      if (!lattice_accepts(sf, sc, q)) throw BudgetError(sf, std::abs(sf - sc), "Q_2 lattice sum did not settle");
      return {sf, err, n * n};
    }
    h /= 2;
  }
}

// Q_2 applied to a raising-operator wave of the same family, via the wave's lattice tables.
QuadResult apply_Q2_wave(const KernelModel& m, cplx p, const FunctionHandle& f, double x1, double x2,
                         const QuadSpec& q) {
  const LambdaWave& w = *f.wave;
  const Q2Setup st = q2_profiles(m, p, f, x1, x2);
  const double d = 0.8 * std::min(m.strip, m.mu_strip / 2);
  double h = lattice_step(d, m.sigma * std::fabs(p.real()) + f.frequency, q);
  const double r = m.rate, sig = m.sigma;
  for (int attempt = 0;; ++attempt) {
    auto [lo, hi] = q2_window(st, x1, x2, h, q);
    const long n = hi - lo + 1;
    if (n * n > q.max_nodes) throw BudgetError(0.0, kInf, "Q_2 lattice exceeds the node budget");
    LambdaWave::Table t = w.tabulate(h, lo, hi, q);
    std::vector<cplx> a(static_cast<size_t>(n)), b(static_cast<size_t>(n));
    for (long j = lo; j <= hi; ++j) {
      const double y = double(j) * h;
      const cplx base = m.log_kernel(x1 - y) + m.log_kernel(x2 - y) - kI * sig * p * y;
      a[size_t(j - lo)] = base + kI * sig * w.outer() * y;
      b[size_t(j - lo)] = base + kI * sig * w.label() * y;
    }
    std::vector<double> c(size_t(2 * n - 1));
    for (long dd = -(n - 1); dd <= n - 1; ++dd)
      c[size_t(dd + n - 1)] = m.log_measure(double(dd) * h) - r * double(std::labs(dd)) * h;
    NeumaierSum fine, coarse;
    for (long j = lo; j <= hi; ++j) {
      cplx row = 0.0, row_even = 0.0;
      for (long k = lo; k <= hi; ++k) {
        if (j == k) continue;
        const size_t di = size_t(j - k + n - 1);
        const cplx e = std::exp(a[size_t(j - lo)] + b[size_t(k - lo)] + c[di]);
        row += e * t.g[di];
        if ((k & 1) == 0) row_even += e * t.g_even[di];
      }
      fine.add(row);
      if ((j & 1) == 0) coarse.add(row_even);
    }
    const cplx pre = m.weight * m.weight * w.model().weight * std::exp(kI * sig * p * (x1 + x2));
    const cplx sf = pre * h * h * h * fine.value(), sc = pre * 8.0 * h * h * h * coarse.value();
    check_finite(sf, "Q_2 wave lattice sum");
    if (lattice_accepts(sf, sc, q) || attempt == 2) {
      if (!lattice_accepts(sf, sc, q)) throw BudgetError(sf, std::abs(sf - sc), "Q_2 wave lattice did not settle");
      return {sf, lattice_error(sf, sc, q), n * n};
    }
    h /= 2;
  }
}

}  // namespace

QuadResult apply_Q(const OperatorSpec& s, const FunctionHandle& f, const std::vector<double>& at, const QuadSpec& q,
                   Method method) {
  q.validate();
  const KernelModel m = kernel_model(s);
  if (at.size() != size_t(s.arity)) throw Error(Status::domain, "apply_Q needs one coordinate per particle");
  if (s.arity == 1) return apply_Q1(m, s.spectral, f, at[0], q);
  if (f.arity != 2 || !f.f2) throw Error(Status::domain, "Q_2 acts on functions of two variables");
  const bool wave = f.wave && same_model(f.wave->model(), m);
  const bool analytic = m.mu_strip > 0;
  if (method == Method::automatic) method = analytic && (wave || f.strip > 0) ? Method::lattice : Method::adaptive;
  if (method == Method::adaptive) return apply_Q2_adaptive(m, s.spectral, f, at[0], at[1], q);
  if (wave) return apply_Q2_wave(m, s.spectral, f, at[0], at[1], q);
  return apply_Q2_lattice(m, s.spectral, f, at[0], at[1], q);
}

QuadResult qq_convolution_kernel(const OperatorSpec& s, cplx first, cplx second, const std::vector<double>& x,
                                 const std::vector<double>& z, const QuadSpec& q, bool substituted, Method method) {
  const KernelModel m = kernel_model(s);
  if (x.size() != size_t(s.arity) || z.size() != size_t(s.arity))
    throw Error(Status::domain, "qq_convolution_kernel needs arity-many endpoints");
  if (s.arity == 1) {
    const double x0 = x[0], z0 = z[0], sig = m.sigma;
    const double di = sig * (first.imag() - second.imag());
    double pos = 2 * m.rate - di, neg = 2 * m.rate + di;
    require_convergent(pos, neg, "QQ kernel");
    auto base = [&](double y) {
      return m.weight * m.weight *
             std::exp(kI * sig * (first * (x0 - y) + second * (y - z0)) + m.log_kernel(x0 - y) + m.log_kernel(y - z0));
    };
    LineHints hints;
    hints.frequency = sig * (std::fabs(first.real()) + std::fabs(second.real()));
    if (!substituted) return integrate_line(base, {pos, neg, 0.5 * (x0 + z0)}, q, hints);
    return integrate_line([&](double y) { return base(z0 + x0 - y); }, {neg, pos, 0.5 * (x0 + z0)}, q, hints);
  }
  // n = 2: Q_2(first) applied to y -> w^2 Q(y, z; second)
  const double z1 = z[0], z2 = z[1];
  const double lmu = m.log_measure(z1 - z2);
  const cplx ps = second;
  const double sig = m.sigma;
  auto memo = std::make_shared<std::unordered_map<double, double>>();
  auto kz = [m, z1, z2, memo](double y) {
    auto it = memo->find(y);
    if (it != memo->end()) return it->second;
    const double v = m.log_kernel(y - z1) + m.log_kernel(y - z2);
    memo->emplace(y, v);
    return v;
  };
  auto f2 = [m, lmu, ps, sig, z1, z2, kz](double y1, double y2) {
    return m.weight * m.weight * std::exp(kI * sig * ps * (y1 + y2 - z1 - z2) + lmu + kz(y1) + kz(y2));
  };
  const double a = sig * ps.imag();
  const Envelope e{2 * m.rate + a, 2 * m.rate - a};
  FunctionHandle fh = FunctionHandle::binary(f2, e, e, m.strip, sig * std::fabs(ps.real()));
  return apply_Q(s.with_spectral(first), fh, x, q, method);
}

std::pair<QuadResult, QuadResult> qlambda_exchange_check(Family family, cplx lam, cplx rho, cplx label,
                                                         const std::vector<double>& at, const Coupling& c,
                                                         const QuadSpec& q) {
  if (at.size() != 2) throw Error(Status::domain, "the exchange relation is evaluated at two coordinates");
  OperatorSpec s;
  s.family = family;
  s.arity = 2;
  s.dual = family != Family::hyperbolic;
  s.coupling = c;
  s.spectral = lam;
  const KernelModel m = kernel_model(s);
  const cplx rho_s = rho - kI * m.exchange_shift();
  auto w = std::make_shared<LambdaWave>(s.with_spectral(rho_s), label);
  QuadResult lhs = apply_Q(s, FunctionHandle::from_wave(w, q), at, q);
  QuadResult wv = (*w)(at[0], at[1], q);
  const cplx factor = 2.0 * m.eigen(lam, rho_s) * m.eigen(lam, label);
  QuadResult rhs{factor * wv.value, std::abs(factor) * wv.error, wv.nodes};
  return {lhs, rhs};
}

}  // namespace rsq
