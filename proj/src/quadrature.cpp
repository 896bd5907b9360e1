#include "nlsbg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace nlsbg {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1,1]
constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename V>
struct Interval {
  double a, b;
  V value;
  double err;
};

template <typename V, typename F>
Interval<V> gk15(const F& f, double a, double b) {
  double hl = 0.5 * (b - a), c = 0.5 * (a + b);
  V fc = f(c);
  V resk = wgk[7] * fc;
  V resg = wg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    double dx = hl * xgk[j];
    V f1 = f(c - dx), f2 = f(c + dx);
    resk += wgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += wg[j / 2] * (f1 + f2);
  }
  Interval<V> r;
  r.a = a;
  r.b = b;
  r.value = resk * hl;
  // plain |K15 - G7| estimate: conservative but robust near log singularities
  r.err = std::abs(resk - resg) * hl;
  return r;
}

template <typename V, typename F>
std::pair<V, QuadResult> run(const F& f, double a, double b, double rel_tol,
                             double abs_tol, const std::vector<double>& breaks,
                             int max_intervals) {
  if (!(b > a)) throw std::invalid_argument("quadrature requires b > a");
  std::vector<double> pts{a, b};
  for (double p : breaks)
    if (p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());

  auto cmp = [](const Interval<V>& l, const Interval<V>& r) { return l.err < r.err; };
  std::priority_queue<Interval<V>, std::vector<Interval<V>>, decltype(cmp)> heap(cmp);

  V total{};
  double toterr = 0.0;
  int evals = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    auto iv = gk15<V>(f, pts[i], pts[i + 1]);
    evals += 15;
    total += iv.value;
    toterr += iv.err;
    heap.push(iv);
  }
  int n = static_cast<int>(pts.size()) - 1;
  while (n < max_intervals) {
    double goal = std::max(abs_tol, rel_tol * std::abs(total));
    if (toterr <= goal) break;
    Interval<V> worst = heap.top();
    heap.pop();
    double m = 0.5 * (worst.a + worst.b);
    if (m <= worst.a || m >= worst.b) break;  // interval at roundoff width
    auto l = gk15<V>(f, worst.a, m);
    auto r = gk15<V>(f, m, worst.b);
    evals += 30;
    total += l.value + r.value - worst.value;
    toterr += l.err + r.err - worst.err;
    heap.push(l);
    heap.push(r);
    ++n;
  }
  QuadResult meta;
  meta.error = toterr;
  meta.evaluations = evals;
  meta.converged = toterr <= std::max(abs_tol, rel_tol * std::abs(total));
  return {total, meta};
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol, double abs_tol,
                     const std::vector<double>& breakpoints, int max_intervals) {
  auto [v, meta] = run<double>(f, a, b, rel_tol, abs_tol, breakpoints, max_intervals);
  meta.value = v;
  return meta;
}

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                        double b, double rel_tol, double abs_tol,
                        const std::vector<double>& breakpoints, int max_intervals) {
  auto [v, meta] =
      run<std::complex<double>>(f, a, b, rel_tol, abs_tol, breakpoints, max_intervals);
  QuadResultC out;
  out.value = v;
  out.error = meta.error;
  out.evaluations = meta.evaluations;
  out.converged = meta.converged;
  return out;
}

void kronrod15(double a, double b, std::vector<double>& nodes,
               std::vector<double>& weights) {
  double hl = 0.5 * (b - a), c = 0.5 * (a + b);
  for (int j = 0; j < 7; ++j) {
    double dx = hl * xgk[j];
    nodes.push_back(c - dx);
    weights.push_back(wgk[j] * hl);
    nodes.push_back(c + dx);
    weights.push_back(wgk[j] * hl);
  }
  nodes.push_back(c);
  weights.push_back(wgk[7] * hl);
}

QuadResult pv_integrate(const std::function<double(double)>& f, double a, double b,
                        double c, double rel_tol, double abs_tol,
                        const std::vector<double>& breakpoints) {
  if (!(a < c && c < b)) throw std::invalid_argument("PV singularity must be interior");
  double d = std::min(c - a, b - c);
  double fc = f(c);
  // window [c-d, c+d]: integrand (f(x)-f(c))/(x-c), PV of the subtracted pole = 0
  auto reg = [&](double x) {
    double t = x - c;
    if (std::abs(t) < 1e-14 * std::max(1.0, std::abs(c))) {
      double h = 1e-7 * std::max(1.0, std::abs(c));
      return (f(c + h) - f(c - h)) / (2.0 * h);
    }
    return (f(x) - fc) / t;
  };
  QuadResult inner = integrate(reg, c - d, c + d, rel_tol, abs_tol, breakpoints);
  QuadResult out = inner;
  auto plain = [&](double x) { return f(x) / (x - c); };
  if (a < c - d) {
    QuadResult left = integrate(plain, a, c - d, rel_tol, abs_tol, breakpoints);
    out.value += left.value;
    out.error += left.error;
    out.evaluations += left.evaluations;
    out.converged = out.converged && left.converged;
  }
  if (c + d < b) {
    QuadResult right = integrate(plain, c + d, b, rel_tol, abs_tol, breakpoints);
    out.value += right.value;
    out.error += right.error;
    out.evaluations += right.evaluations;
    out.converged = out.converged && right.converged;
  }
  return out;
}

}  // namespace nlsbg
