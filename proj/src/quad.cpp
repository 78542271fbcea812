#include "rsq/quad.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace rsq {

namespace {

// Gauss-Kronrod 7/15 (QUADPACK qk15).
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  cplx value;
  double error;
  double resabs;
  long id;
};

struct PanelOrder {
  bool operator()(const Panel& p, const Panel& q) const {
    if (p.error != q.error) return p.error < q.error;
    return p.id > q.id;
  }
};

cplx sample(const LineFn& f, double x) {
  cplx v = f(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite integrand value at x = " << x;
    throw NonFiniteError(x, os.str());
  }
  return v;
}

Panel gk15(const LineFn& f, double a, double b, long id) {
  const double c = 0.5 * (a + b), hl = 0.5 * (b - a);
  cplx fv[15];
  fv[7] = sample(f, c);
  for (int j = 0; j < 7; ++j) {
    double dx = hl * kXgk[j];
    fv[j] = sample(f, c - dx);
    fv[14 - j] = sample(f, c + dx);
  }
  cplx rk = kWgk[7] * fv[7];
  cplx rg = kWg[3] * fv[7];
  double resabs = kWgk[7] * std::abs(fv[7]);
  for (int j = 0; j < 7; ++j) {
    rk += kWgk[j] * (fv[j] + fv[14 - j]);
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
    if (j % 2 == 1) rg += kWg[j / 2] * (fv[j] + fv[14 - j]);
  }
  cplx mean = 0.5 * rk;
  double resasc = kWgk[7] * std::abs(fv[7] - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv[j] - mean) + std::abs(fv[14 - j] - mean));
  const double ahl = std::fabs(hl);
  resabs *= ahl;
  resasc *= ahl;
  double err = std::abs((rk - rg) * hl);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50 * eps)) err = std::max(50 * eps * resabs, err);
  return Panel{a, b, rk * hl, err, resabs, id};
}

std::vector<double> initial_grid(double a, double b, double center, const LineHints& hints) {
  std::vector<double> pts{a, b};
  for (double x : hints.breakpoints)
    if (x > a && x < b) pts.push_back(x);
  if (center > a && center < b) pts.push_back(center);
  // geometric grading away from the center catches localized features on long intervals
  for (double s = 0.5; s < (b - a); s *= 2) {
    if (center + s < b && center + s > a) pts.push_back(center + s);
    if (center - s > a && center - s < b) pts.push_back(center - s);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (hints.frequency != 0.0) {
    const double wmax = 3.14159265358979323846 / (4.0 * std::fabs(hints.frequency));
    std::vector<double> fine{pts.front()};
    for (size_t i = 1; i < pts.size(); ++i) {
      double lo = pts[i - 1], hi = pts[i];
      long n = std::max(1L, (long)std::ceil((hi - lo) / wmax));
      for (long k = 1; k < n; ++k) fine.push_back(lo + (hi - lo) * double(k) / double(n));
      fine.push_back(hi);
    }
    pts.swap(fine);
  }
  return pts;
}

QuadResult adaptive(const LineFn& f, const std::vector<double>& grid, const QuadSpec& s) {
  std::priority_queue<Panel, std::vector<Panel>, PanelOrder> heap;
  std::vector<Panel> frozen;
  long id = 0, nodes = 0;
  double err_total = 0.0, abs_total = 0.0;
  for (size_t i = 1; i < grid.size(); ++i) {
    Panel p = gk15(f, grid[i - 1], grid[i], id++);
    nodes += 15;
    err_total += p.error;
    abs_total += p.resabs;
    heap.push(p);
  }
  // below this the estimate is dominated by rounding and refinement cannot help
  auto floor_tol = [&]() { return 100.0 * std::numeric_limits<double>::epsilon() * abs_total; };
  auto current_sum = [&]() {
    std::vector<Panel> all(frozen);
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    std::sort(all.begin(), all.end(), [](const Panel& p, const Panel& q) { return p.a < q.a; });
    NeumaierSum acc;
    double err = 0.0;
    for (const Panel& p : all) {
      acc.add(p.value);
      err += p.error;
    }
    return QuadResult{acc.value(), err, nodes};
  };
  // running value estimate refreshed lazily; only used for the relative tolerance
  cplx running = current_sum().value;
  long since_refresh = 0;
  while (!heap.empty()) {
    const double tol = std::max({s.abs_tol, s.rel_tol * std::abs(running), floor_tol()});
    if (err_total <= tol) {
      QuadResult r = current_sum();
      if (r.error <= std::max({s.abs_tol, s.rel_tol * std::abs(r.value), floor_tol()})) return r;
      running = r.value;
      err_total = r.error;
      if (err_total <= tol) return r;
    }
    if (nodes + 30 > s.max_nodes) {
      QuadResult r = current_sum();
      std::ostringstream os;
      os.precision(3);
      os << "quadrature budget of " << s.max_nodes << " nodes exceeded (error estimate " << r.error << ")";
      throw BudgetError(r.value, r.error, os.str());
    }
    Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b) || (p.b - p.a) < 1e-13 * std::max(1.0, std::fabs(mid))) {
      frozen.push_back(p);
      continue;
    }
    Panel l = gk15(f, p.a, mid, id++), r = gk15(f, mid, p.b, id++);
    nodes += 30;
    err_total += l.error + r.error - p.error;
    abs_total += l.resabs + r.resabs - p.resabs;
    running += l.value + r.value - p.value;
    heap.push(l);
    heap.push(r);
    if (++since_refresh == 256) {
      QuadResult cur = current_sum();
      running = cur.value;
      err_total = cur.error;
      since_refresh = 0;
    }
  }
  return current_sum();
}

}  // namespace

void NeumaierSum::add(cplx v) {
  auto step = [](double& s, double& c, double x) {
    double t = s + x;
    if (std::fabs(s) >= std::fabs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
  };
  step(sr_, cr_, v.real());
  step(si_, ci_, v.imag());
}

cplx NeumaierSum::value() const { return {sr_ + cr_, si_ + ci_}; }

void QuadSpec::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0)) throw Error(Status::domain, "QuadSpec tolerances must be positive");
  if (max_nodes < 64) throw Error(Status::domain, "QuadSpec max_nodes must be at least 64");
  if (!(truncation_safety >= 1.0)) throw Error(Status::domain, "QuadSpec truncation_safety must be >= 1");
  if (lattice_step < 0) throw Error(Status::domain, "QuadSpec lattice_step must be non-negative");
}

QuadSpec QuadSpec::split(int parts) const {
  QuadSpec q = *this;
  q.rel_tol /= parts;
  q.abs_tol /= parts;
  return q;
}

void DecayProfile::validate() const {
  if (!(rate_pos > 0) || !(rate_neg > 0) || !std::isfinite(rate_pos) || !std::isfinite(rate_neg))
    throw Error(Status::divergence, "decay rates must be positive and finite");
  if (!std::isfinite(center)) throw Error(Status::domain, "decay center must be finite");
}

std::pair<double, double> truncation_interval(const DecayProfile& d, const QuadSpec& s) {
  d.validate();
  const double depth = -std::log(s.abs_tol / 10.0);
  return {d.center - s.truncation_safety * depth / d.rate_neg, d.center + s.truncation_safety * depth / d.rate_pos};
}

QuadResult integrate_interval(const LineFn& f, double a, double b, const QuadSpec& s, const LineHints& hints) {
  s.validate();
  if (!(b > a)) throw Error(Status::domain, "integrate_interval needs a < b");
  return adaptive(f, initial_grid(a, b, 0.5 * (a + b), hints), s);
}

QuadResult integrate_line(const LineFn& f, const DecayProfile& d, const QuadSpec& s, const LineHints& hints) {
  s.validate();
  auto [lo, hi] = truncation_interval(d, s);
  return adaptive(f, initial_grid(lo, hi, d.center, hints), s);
}

QuadResult integrate_plane(const PlaneFn& f, const DecayProfile& d1, const DecayProfile& d2, const QuadSpec& s,
                           const PlaneHints& hints) {
  s.validate();
  d1.validate();
  d2.validate();
  const QuadSpec half = s.split(2);
  auto [lo1, hi1] = truncation_interval(d1, half);
  double inner_err = 0.0;
  long inner_nodes = 0;
  LineFn outer = [&](double x1) {
    LineHints ih = hints.inner ? hints.inner(x1) : LineHints{};
    QuadResult r = integrate_line([&](double x2) { return f(x1, x2); }, d2, half, ih);
    inner_err = std::max(inner_err, r.error);
    inner_nodes += r.nodes;
    return r.value;
  };
  QuadResult r = adaptive(outer, initial_grid(lo1, hi1, d1.center, hints.outer), half);
  r.error += inner_err * (hi1 - lo1);
  r.nodes = inner_nodes;
  return r;
}

cplx oracle_trapezoid(const LineFn& f, double L, long n) {
  if (n < 3 || n % 2 == 0 || !(L > 0)) throw Error(Status::domain, "oracle_trapezoid needs odd n >= 3 and L > 0");
  const double h = 2 * L / double(n - 1);
  NeumaierSum acc;
  acc.add(0.5 * f(-L));
  for (long k = 1; k < n - 1; ++k) acc.add(f(-L + double(k) * h));
  acc.add(0.5 * f(L));
  return acc.value() * h;
}

QuadResult lattice_sum(const std::function<cplx(long)>& f, double h, long lo, long hi) {
  if (!(h > 0) || hi < lo) throw Error(Status::domain, "lattice_sum needs h > 0 and lo <= hi");
  NeumaierSum all, even;
  for (long k = lo; k <= hi; ++k) {
    cplx v = f(k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NonFiniteError(double(k) * h, "non-finite lattice term");
    all.add(v);
    if (k % 2 == 0) even.add(v);
  }
  cplx fine = all.value() * h, coarse = even.value() * (2 * h);
  return QuadResult{fine, std::abs(fine - coarse), hi - lo + 1};
}

}  // namespace rsq
