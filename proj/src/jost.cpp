#include "nlsbg/jost.hpp"

#include <cmath>
#include <stdexcept>

namespace nlsbg {

namespace {

using cplx = std::complex<double>;
using Vec2 = std::array<cplx, 2>;

struct ColumnOde {
  const InitialDatum* datum;
  cplx lam;   // lambda(z)
  cplx shift; // +i zeta (col 0) or -i zeta (col 1)

  Vec2 operator()(double x, const Vec2& v) const {
    cplx qv = datum->at(x);
    cplx cq = std::conj(qv);
    const cplx I{0.0, 1.0};
    // i sigma3 (Q - lambda) + shift
    return {(-I * lam + shift) * v[0] + I * cq * v[1],
            -I * qv * v[0] + (I * lam + shift) * v[1]};
  }
};

Vec2 rk4_step(const ColumnOde& f, double x, const Vec2& v, double h) {
  Vec2 k1 = f(x, v);
  Vec2 v2{v[0] + 0.5 * h * k1[0], v[1] + 0.5 * h * k1[1]};
  Vec2 k2 = f(x + 0.5 * h, v2);
  Vec2 v3{v[0] + 0.5 * h * k2[0], v[1] + 0.5 * h * k2[1]};
  Vec2 k3 = f(x + 0.5 * h, v3);
  Vec2 v4{v[0] + h * k3[0], v[1] + h * k3[1]};
  Vec2 k4 = f(x + h, v4);
  return {v[0] + h / 6.0 * (k1[0] + 2.0 * (k2[0] + k3[0]) + k4[0]),
          v[1] + h / 6.0 * (k1[1] + 2.0 * (k2[1] + k3[1]) + k4[1])};
}

// frequency-adapted substep: global RK4 error ~ omega^5 h^4 per unit length
double substep_for(cplx lam, cplx zeta, double tol) {
  double omega = 2.0 * (std::abs(zeta) + std::abs(lam)) + 2.0;
  double h = std::pow(2.0 * tol / std::pow(omega, 5), 0.25);
  return std::min(h, 0.02);
}

void advance(const ColumnOde& f, double& x, Vec2& v, double target, double h0) {
  double span = target - x;
  if (span == 0.0) return;
  int n = static_cast<int>(std::ceil(std::abs(span) / h0));
  double h = span / n;
  for (int i = 0; i < n; ++i) {
    v = rk4_step(f, x, v, h);
    x += h;
  }
}

cplx lambda_at(cplx z) { return 0.5 * (z + 1.0 / z); }
cplx zeta_at(cplx z) { return 0.5 * (z - 1.0 / z); }

}  // namespace

std::array<cplx, 2> jost_column_at_zero(const InitialDatum& datum, cplx z,
                                        Side side, int col, double tol) {
  if (z == 0.0 || z == cplx(1.0) || z == cplx(-1.0))
    throw std::invalid_argument("jost: z in {0,+1,-1} needs the degenerate form");
  if (col != 0 && col != 1) throw std::invalid_argument("jost: col must be 0 or 1");
  cplx lam = lambda_at(z), zeta = zeta_at(z);
  const cplx I{0.0, 1.0};
  ColumnOde ode{&datum, lam, (col == 0 ? I * zeta : -I * zeta)};
  // Y± columns: Y+ = I + sigma1/z, Y- = I - sigma1/z
  double s = (side == Side::Plus) ? 1.0 : -1.0;
  Vec2 v = (col == 0) ? Vec2{1.0, s / z} : Vec2{s / z, 1.0};
  double x = (side == Side::Plus) ? datum.x_end() : datum.x0;
  double h0 = substep_for(lam, zeta, tol);
  advance(ode, x, v, 0.0, h0);
  return v;
}

JostSolution jost_solve(const InitialDatum& datum, cplx z, Side side,
                        double tol) {
  if (z == 0.0 || z == cplx(1.0) || z == cplx(-1.0))
    throw std::invalid_argument("jost: z in {0,+1,-1} needs the degenerate form");
  cplx lam = lambda_at(z), zeta = zeta_at(z);
  const cplx I{0.0, 1.0};
  ColumnOde ode0{&datum, lam, I * zeta};
  ColumnOde ode1{&datum, lam, -I * zeta};
  double s = (side == Side::Plus) ? 1.0 : -1.0;
  Vec2 c0{1.0, s / z};
  Vec2 c1{s / z, 1.0};

  size_t n = datum.q.size();
  JostSolution out;
  out.z = z;
  out.side = side;
  out.x.resize(n);
  out.m.resize(n);
  for (size_t i = 0; i < n; ++i)
    out.x[i] = datum.x0 + datum.dx * static_cast<double>(i);

  double h0 = substep_for(lam, zeta, tol);
  if (side == Side::Plus) {
    double x = datum.x_end();
    out.m[n - 1] = {c0[0], c1[0], c0[1], c1[1]};
    for (size_t i = n - 1; i-- > 0;) {
      double x1 = x;
      advance(ode0, x1, c0, out.x[i], h0);
      advance(ode1, x, c1, out.x[i], h0);
      out.m[i] = {c0[0], c1[0], c0[1], c1[1]};
    }
  } else {
    double x = datum.x0;
    out.m[0] = {c0[0], c1[0], c0[1], c1[1]};
    for (size_t i = 1; i < n; ++i) {
      double x1 = x;
      advance(ode0, x1, c0, out.x[i], h0);
      advance(ode1, x, c1, out.x[i], h0);
      out.m[i] = {c0[0], c1[0], c0[1], c1[1]};
    }
  }
  return out;
}

EdgeColumns jost_edge_columns(const InitialDatum& datum, double z1) {
  if (z1 != 1.0 && z1 != -1.0)
    throw std::invalid_argument("jost: degenerate form is for z = +/-1 only");
  // zeta = 0, lambda = z1, psi = m; bounded boundary vectors are the kernels
  // of i sigma3 (±sigma1 - z1):  z=+1: (1,1) at +inf, (1,-1) at -inf;
  //                              z=-1: (1,-1)/(-1,1) at +inf, (1,1) at -inf.
  ColumnOde ode{&datum, z1, 0.0};
  double h0 = substep_for(z1, 0.0, 2e-10);
  EdgeColumns e;
  {
    double x = datum.x_end();
    Vec2 v{1.0, z1};  // Y+ col 1 at z=±1
    advance(ode, x, v, 0.0, h0);
    e.psi1_plus = v;
  }
  {
    double x = datum.x_end();
    Vec2 v{z1, 1.0};  // Y+ col 2
    advance(ode, x, v, 0.0, h0);
    e.psi2_plus = v;
  }
  {
    double x = datum.x0;
    Vec2 v{1.0, -z1};  // Y- col 1
    advance(ode, x, v, 0.0, h0);
    e.psi1_minus = v;
  }
  return e;
}

}  // namespace nlsbg
