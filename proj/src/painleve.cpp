#include "nlsbg/painleve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nlsbg/airy.hpp"

namespace nlsbg {

namespace {

constexpr double kGrowthLimit = 1e3;
constexpr double kSpacing = 0.01;

struct State {
  double u, p;  // u and u'
};

inline State rhs(double s, const State& y) {
  return {y.p, 2.0 * y.u * y.u * y.u + s * y.u};
}

// Dormand-Prince 5(4) pair; h < 0 for the backward sweep.
struct DP54 {
  double rel_tol, abs_tol;

  // advances (s,y) by exactly `span` (signed) with adaptive substeps
  void advance(double& s, State& y, double span) const {
    double target = s + span;
    double h = span;
    int rejects = 0;
    while ((span < 0) ? (s > target) : (s < target)) {
      if ((span < 0) ? (s + h < target) : (s + h > target)) h = target - s;
      State k1 = rhs(s, y);
      State y2{y.u + h * 0.2 * k1.u, y.p + h * 0.2 * k1.p};
      State k2 = rhs(s + 0.2 * h, y2);
      State y3{y.u + h * (3.0 / 40 * k1.u + 9.0 / 40 * k2.u),
               y.p + h * (3.0 / 40 * k1.p + 9.0 / 40 * k2.p)};
      State k3 = rhs(s + 0.3 * h, y3);
      State y4{y.u + h * (44.0 / 45 * k1.u - 56.0 / 15 * k2.u + 32.0 / 9 * k3.u),
               y.p + h * (44.0 / 45 * k1.p - 56.0 / 15 * k2.p + 32.0 / 9 * k3.p)};
      State k4 = rhs(s + 0.8 * h, y4);
      State y5{y.u + h * (19372.0 / 6561 * k1.u - 25360.0 / 2187 * k2.u +
                          64448.0 / 6561 * k3.u - 212.0 / 729 * k4.u),
               y.p + h * (19372.0 / 6561 * k1.p - 25360.0 / 2187 * k2.p +
                          64448.0 / 6561 * k3.p - 212.0 / 729 * k4.p)};
      State k5 = rhs(s + 8.0 / 9 * h, y5);
      State y6{y.u + h * (9017.0 / 3168 * k1.u - 355.0 / 33 * k2.u +
                          46732.0 / 5247 * k3.u + 49.0 / 176 * k4.u -
                          5103.0 / 18656 * k5.u),
               y.p + h * (9017.0 / 3168 * k1.p - 355.0 / 33 * k2.p +
                          46732.0 / 5247 * k3.p + 49.0 / 176 * k4.p -
                          5103.0 / 18656 * k5.p)};
      State k6 = rhs(s + h, y6);
      State y7{y.u + h * (35.0 / 384 * k1.u + 500.0 / 1113 * k3.u +
                          125.0 / 192 * k4.u - 2187.0 / 6784 * k5.u +
                          11.0 / 84 * k6.u),
               y.p + h * (35.0 / 384 * k1.p + 500.0 / 1113 * k3.p +
                          125.0 / 192 * k4.p - 2187.0 / 6784 * k5.p +
                          11.0 / 84 * k6.p)};
      State k7 = rhs(s + h, y7);
      // embedded 4th-order difference
      double eu = h * (71.0 / 57600 * k1.u - 71.0 / 16695 * k3.u +
                       71.0 / 1920 * k4.u - 17253.0 / 339200 * k5.u +
                       22.0 / 525 * k6.u - 1.0 / 40 * k7.u);
      double ep = h * (71.0 / 57600 * k1.p - 71.0 / 16695 * k3.p +
                       71.0 / 1920 * k4.p - 17253.0 / 339200 * k5.p +
                       22.0 / 525 * k6.p - 1.0 / 40 * k7.p);
      double su = abs_tol + rel_tol * std::max(std::abs(y.u), std::abs(y7.u));
      double sp = abs_tol + rel_tol * std::max(std::abs(y.p), std::abs(y7.p));
      double err = std::sqrt(0.5 * ((eu / su) * (eu / su) + (ep / sp) * (ep / sp)));
      if (err <= 1.0) {
        s += h;
        y = y7;
        if (std::abs(y.u) > kGrowthLimit)
          throw std::runtime_error("painleve: growth monitor tripped (|u| > 1e3)");
        rejects = 0;
      } else if (++rejects > 60) {
        throw std::runtime_error("painleve: step-size collapse");
      }
      double fac = 0.9 * std::pow(err > 1e-12 ? 1.0 / err : 1e12, 0.2);
      h *= std::clamp(fac, 0.2, 5.0);
      if (std::abs(h) < 1e-14)
        throw std::runtime_error("painleve: step-size collapse");
    }
  }
};

// quintic Hermite coefficients in t = (s - a)/h from data at a (lower) and
// b = a + h (upper); second derivatives come from the ODE itself
struct Quintic {
  double c[6];
  double h;

  Quintic(double a, double hh, double u0, double p0, double u1, double p1)
      : h(hh) {
    double w0 = 2 * u0 * u0 * u0 + a * u0;
    double w1 = 2 * u1 * u1 * u1 + (a + h) * u1;
    double P0 = p0 * h, P1 = p1 * h, W0 = w0 * h * h, W1 = w1 * h * h;
    double d = u1 - u0;
    c[0] = u0;
    c[1] = P0;
    c[2] = 0.5 * W0;
    c[3] = 10 * d - 6 * P0 - 4 * P1 - 1.5 * W0 + 0.5 * W1;
    c[4] = -15 * d + 8 * P0 + 7 * P1 + 1.5 * W0 - W1;
    c[5] = 6 * d - 3 * P0 - 3 * P1 + 0.5 * (W1 - W0);
  }
  double eval(double t) const {
    return c[0] + t * (c[1] + t * (c[2] + t * (c[3] + t * (c[4] + t * c[5]))));
  }
  double deriv(double t) const {
    return (c[1] + t * (2 * c[2] + t * (3 * c[3] + t * (4 * c[4] + t * 5 * c[5])))) / h;
  }
};

// 6-point Gauss-Legendre: exact through degree 11, so the square of the
// quintic interpolant is integrated without quadrature error
constexpr double kGL6x[3] = {0.238619186083196909, 0.661209386466264514,
                             0.932469514203152028};
constexpr double kGL6w[3] = {0.467913934572691047, 0.360761573048138608,
                             0.171324492379170345};

// int_{t0}^{t1} q(t)^2 dt * h, with t in [0,1]
double usq_integral(const Quintic& q, double t0, double t1) {
  double mid = 0.5 * (t0 + t1), hl = 0.5 * (t1 - t0);
  double acc = 0.0;
  for (int j = 0; j < 3; ++j) {
    double a = q.eval(mid - hl * kGL6x[j]);
    double b = q.eval(mid + hl * kGL6x[j]);
    acc += kGL6w[j] * (a * a + b * b);
  }
  return acc * hl * q.h;
}

// index of the grid interval [s_grid[i+1], s_grid[i]] containing s
size_t interval_of(const PainleveTable& t, double s) {
  if (s > t.s_max + 1e-12 || s < t.s_min - 1e-12)
    throw std::out_of_range("painleve: s outside table range");
  double fi = (t.s_max - s) / kSpacing;
  size_t i = static_cast<size_t>(std::max(0.0, std::floor(fi)));
  return std::min(i, t.s_grid.size() - 2);
}

Quintic interval_quintic(const PainleveTable& t, size_t i) {
  double b = t.s_grid[i], a = t.s_grid[i + 1];
  return Quintic(a, b - a, t.u[i + 1], t.u_prime[i + 1], t.u[i], t.u_prime[i]);
}

double airy_tail(double kappa, double s) {
  auto v = airy(s);
  return kappa * kappa * (v.Ai_prime * v.Ai_prime - s * v.Ai * v.Ai);
}

}  // namespace

double PainleveTable::u_at(double s) const {
  size_t i = interval_of(*this, s);
  auto q = interval_quintic(*this, i);
  return q.eval((s - s_grid[i + 1]) / q.h);
}

double PainleveTable::u_prime_at(double s) const {
  size_t i = interval_of(*this, s);
  auto q = interval_quintic(*this, i);
  return q.deriv((s - s_grid[i + 1]) / q.h);
}

PainleveTable solve_pii(double kappa, double s_min, double s_max,
                        double rel_tol, double abs_tol) {
  if (std::abs(kappa) > 1.0 + 1e-12)
    throw std::invalid_argument("painleve: |kappa| must be <= 1");
  if (s_max < 8.0) throw std::invalid_argument("painleve: s_max must be >= 8");
  double floor_s = (std::abs(kappa) > 0.999) ? -12.0 : -30.0;
  if (s_min < floor_s - 1e-12)
    throw std::invalid_argument("painleve: s_min below the admitted range");
  if (s_min >= s_max) throw std::invalid_argument("painleve: need s_min < s_max");

  PainleveTable t;
  t.kappa = kappa;
  t.s_max = s_max;
  t.rel_tol = rel_tol;
  t.abs_tol = abs_tol;

  size_t n = static_cast<size_t>(std::ceil((s_max - s_min) / kSpacing - 1e-9)) + 1;
  t.s_grid.resize(n);
  for (size_t i = 0; i < n; ++i) t.s_grid[i] = s_max - kSpacing * static_cast<double>(i);
  t.s_min = t.s_grid.back();

  double mag = std::abs(kappa);
  double sgn = (kappa < 0) ? -1.0 : 1.0;
  t.u.assign(n, 0.0);
  t.u_prime.assign(n, 0.0);
  t.tail.assign(n, 0.0);
  if (mag == 0.0) return t;

  auto bd = airy(s_max);
  State y{mag * bd.Ai, mag * bd.Ai_prime};
  DP54 stepper{rel_tol, abs_tol};
  t.u[0] = y.u;
  t.u_prime[0] = y.p;
  double s = s_max;
  for (size_t i = 1; i < n; ++i) {
    stepper.advance(s, y, t.s_grid[i] - s);
    t.u[i] = y.u;
    t.u_prime[i] = y.p;
  }

  // cumulative tail: analytic Airy closure at s_max, then per-interval
  // integrals of the squared interpolant
  t.tail[0] = mag * mag * airy_tail(1.0, s_max);
  for (size_t i = 0; i + 1 < n; ++i) {
    Quintic q(t.s_grid[i + 1], t.s_grid[i] - t.s_grid[i + 1], t.u[i + 1],
              t.u_prime[i + 1], t.u[i], t.u_prime[i]);
    t.tail[i + 1] = t.tail[i] + usq_integral(q, 0.0, 1.0);
  }

  if (sgn < 0) {
    for (auto& v : t.u) v = -v;
    for (auto& v : t.u_prime) v = -v;
  }
  return t;
}

double tail_integral(const PainleveTable& table, double s) {
  if (s >= table.s_max) return airy_tail(table.kappa, s);
  size_t i = interval_of(table, s);
  auto q = interval_quintic(table, i);
  double t0 = (s - table.s_grid[i + 1]) / q.h;
  return table.tail[i] + usq_integral(q, t0, 1.0);
}

ResidueMatrices residue_matrices(const PainleveTable& table, double s, double phi0) {
  const std::complex<double> I{0.0, 1.0};
  double u = table.u_at(s);
  double Is = tail_integral(table, s);
  ResidueMatrices r;
  r.M1_P.s = r.M1_inf.s = s;
  r.M1_P.phi0 = r.M1_inf.phi0 = phi0;
  r.M1_P.m[0][0] = -0.5 * I * Is;
  r.M1_P.m[0][1] = 0.5 * u;
  r.M1_P.m[1][0] = 0.5 * u;
  r.M1_P.m[1][1] = 0.5 * I * Is;
  std::complex<double> ph = std::exp(I * phi0);
  r.M1_inf.m[0][0] = -0.5 * I * Is;
  r.M1_inf.m[0][1] = 0.5 * I * u / ph;
  r.M1_inf.m[1][0] = -0.5 * I * u * ph;
  r.M1_inf.m[1][1] = 0.5 * I * Is;
  return r;
}

std::string to_csv(const PainleveTable& table) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line,
                "# kappa=%.17g s_max=%.17g rel_tol=%g abs_tol=%g\n", table.kappa,
                table.s_max, table.rel_tol, table.abs_tol);
  out += line;
  out += "s,u,u_prime,tail\n";
  for (size_t i = 0; i < table.s_grid.size(); ++i) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g\n", table.s_grid[i],
                  table.u[i], table.u_prime[i], table.tail[i]);
    out += line;
  }
  return out;
}

}  // namespace nlsbg
