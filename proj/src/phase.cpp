#include "nlsbg/phase.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nlsbg {

namespace {
void require_nonzero(cplx z) {
  if (z == cplx(0.0, 0.0)) throw std::domain_error("spectral point z = 0 is singular");
}
}  // namespace

cplx lambda_of(cplx z) {
  require_nonzero(z);
  return 0.5 * (z + 1.0 / z);
}

cplx zeta_of(cplx z) {
  require_nonzero(z);
  return 0.5 * (z - 1.0 / z);
}

cplx theta(cplx z, double xi) {
  require_nonzero(z);
  cplx zi = 1.0 / z;
  return xi * (z - zi) - 0.5 * (z * z - zi * zi);
}

cplx theta_prime(cplx z, double xi) {
  require_nonzero(z);
  cplx zi = 1.0 / z;
  return xi * (1.0 + zi * zi) - z - zi * zi * zi;
}

double re_2i_theta(cplx z, double xi) {
  require_nonzero(z);
  double u = z.real(), v = z.imag();
  double a2 = u * u + v * v;
  return 2.0 * u * v * (1.0 + 1.0 / (a2 * a2)) - 2.0 * xi * v * (1.0 + 1.0 / a2);
}

PhaseGeometry stationary_points(double xi) {
  PhaseGeometry g;
  g.xi = xi;
  if (std::abs(xi) < 1.0) {
    g.region = Region::SolitonicI;
    g.has_points = false;
    return g;
  }
  g.region = (std::abs(xi) == 1.0) ? (xi < 0 ? Region::TransitionMinus1 : Region::TransitionPlus1)
                                   : Region::SolitonlessII;
  g.has_points = true;
  double root = std::sqrt(xi * xi + 8.0);
  g.eta = (xi < 0) ? 0.5 * (xi - root) : 0.5 * (xi + root);
  // z^2 - eta z + 1 = 0; evaluate the large root without cancellation,
  // recover the small one from the product xi1*xi2 = 1.
  double disc = g.eta * g.eta - 4.0;
  if (disc <= 0.0) {  // |xi| = 1: double root at sign(xi)
    g.xi1 = g.xi2 = (xi < 0) ? -1.0 : 1.0;
    return g;
  }
  double sign = (g.eta < 0) ? -1.0 : 1.0;
  g.xi2 = 0.5 * (g.eta + sign * std::sqrt(disc));
  g.xi1 = 1.0 / g.xi2;
  return g;
}

Region classify_region(double x, double t, double C) {
  if (t <= 0.0) throw std::invalid_argument("classify_region requires t > 0");
  if (C <= 0.0) throw std::invalid_argument("classify_region requires C > 0");
  double xi = x / (2.0 * t);
  double t23 = std::pow(t, 2.0 / 3.0);
  double dm = std::abs(xi + 1.0) * t23;
  double dp = std::abs(xi - 1.0) * t23;
  if (dm <= C || dp <= C) return (dm <= dp) ? Region::TransitionMinus1 : Region::TransitionPlus1;
  return (std::abs(xi) < 1.0) ? Region::SolitonicI : Region::SolitonlessII;
}

cplx ScaledCoordinates::k_of_z(cplx z) const {
  double t13 = std::cbrt(tau);
  return (case_tag == CaseTag::CaseI) ? t13 * (z + 1.0) : -t13 * (z - 1.0);
}

cplx ScaledCoordinates::z_of_k(cplx k) const {
  double t13 = std::cbrt(tau);
  return (case_tag == CaseTag::CaseI) ? k / t13 - 1.0 : 1.0 - k / t13;
}

ScaledCoordinates scaled_vars(double x, double t, CaseTag c) {
  if (t <= 0.0) throw std::invalid_argument("scaled_vars requires t > 0");
  ScaledCoordinates sc;
  sc.case_tag = c;
  sc.t = t;
  sc.tau = 0.75 * t;
  sc.xi = x / (2.0 * t);
  double t23 = std::cbrt(sc.tau) * std::cbrt(sc.tau);
  sc.s = (c == CaseTag::CaseI) ? (8.0 / 3.0) * (sc.xi + 1.0) * t23
                               : -(8.0 / 3.0) * (sc.xi - 1.0) * t23;
  return sc;
}

cplx phase_remainder(cplx z, double x, double t, CaseTag c) {
  ScaledCoordinates sc = scaled_vars(x, t, c);
  cplx k = sc.k_of_z(z);
  return t * theta(z, sc.xi) - (4.0 / 3.0) * k * k * k - sc.s * k;
}

double scaling_disk_radius(double C) {
  return 1.5 * std::cbrt(0.75) * std::sqrt(2.0 * C);
}

std::vector<SignatureCheck> signature_samples(double xi, double phi_open,
                                              int n_per_sector, std::uint64_t seed) {
  if (std::abs(xi) <= 1.0) throw std::invalid_argument("signature sampling needs |xi| > 1");
  PhaseGeometry g = stationary_points(xi);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const bool left = (xi < -1.0);  // transition at z = -1, sectors on the negative axis
  const double gamma = 0.5 * g.xi1;
  std::vector<SignatureCheck> out;
  out.reserve(static_cast<size_t>(n_per_sector) * 8);

  // One sampled point in a sector, both upper and its conjugate.
  auto push = [&](int sector, cplx z, double bound_mag, bool upper_grows) {
    for (int conj_pass = 0; conj_pass < 2; ++conj_pass) {
      cplx zz = conj_pass ? std::conj(z) : z;
      bool grows = conj_pass ? !upper_grows : upper_grows;
      SignatureCheck c;
      c.z = zz;
      c.sector = sector + (conj_pass ? 10 : 0);
      c.lhs = re_2i_theta(zz, xi);
      c.bound = grows ? bound_mag : -bound_mag;
      c.expect_ge = grows;
      c.ok = grows ? (c.lhs >= c.bound - 1e-13) : (c.lhs <= c.bound + 1e-13);
      out.push_back(c);
    }
  };

  for (int i = 0; i < n_per_sector; ++i) {
    double ang = (0.02 + 0.96 * unif(rng)) * phi_open;  // stay inside the open sector

    // sector 0: at the origin, on the bounded side (toward xi_1); radius < |gamma| sec(ang)
    {
      double rho = (0.05 + 0.90 * unif(rng)) * std::abs(gamma) / std::cos(ang);
      double dir = left ? M_PI - ang : ang;
      cplx z = std::polar(rho, dir);
      double bound = std::abs(std::sin(2.0 * dir)) * std::abs(z.imag());
      // decaying above the axis on the left side (xi<-1); growing on the right (xi>1)
      push(0, z, bound, !left);
    }
    // sector 3: at the origin, unbounded side
    {
      double rho = 0.05 + 2.95 * unif(rng);
      double dir = left ? ang : M_PI - ang;
      cplx z = std::polar(rho, dir);
      double bound = std::abs(std::sin(2.0 * dir)) * std::abs(z.imag());
      push(3, z, bound, left);
    }
    // sector 1: at xi_1, opening toward gamma, |u| < |xi_1|/2
    {
      double umax = 0.5 * std::abs(g.xi1) * 0.98;
      double u = (0.02 + 0.96 * unif(rng)) * umax;
      if (!left) u = -u;  // for xi>1 the sector opens toward the origin
      double v = std::abs(u) * std::tan(ang);
      cplx z(g.xi1 + u, v);
      double bound = (4.0 / std::abs(g.xi1)) * u * u * v;
      push(1, z, bound, !left);
    }
    // sector 2: at xi_2, opening away from the origin (unbounded)
    {
      double rho = 0.05 + 4.95 * unif(rng);
      double u = rho * std::cos(ang);
      if (left) u = -u;
      double v = rho * std::sin(ang);
      cplx z(g.xi2 + u, v);
      double bound = (std::abs(z) <= 2.0)
                         ? u * u * v / (8.0 * std::pow(std::abs(g.xi2), 3))
                         : 2.0 * std::sqrt(2.0) * v;
      push(2, z, bound, !left);
    }
  }
  return out;
}

}  // namespace nlsbg
