#pragma once
// Phase function theta(z) = xi*(z - 1/z) - (z^2 - z^-2)/2 of the modulated
// plane-wave factor e^{2it*theta}, its signature analysis, stationary points,
// space-time region classification and the cube-root scaling maps used in the
// transition wedges around xi = -1 and xi = +1.

#include <complex>
#include <cstdint>
#include <vector>

namespace nlsbg {

using cplx = std::complex<double>;

enum class Region { SolitonicI, SolitonlessII, TransitionMinus1, TransitionPlus1 };
enum class CaseTag { CaseI, CaseII };  // CaseI: edge z=-1 (xi ~ -1), CaseII: edge z=+1

// lambda(z) = (z + 1/z)/2,  zeta(z) = (z - 1/z)/2.  Singular at z = 0.
cplx lambda_of(cplx z);
cplx zeta_of(cplx z);

// theta(z; xi) = xi (z - 1/z) - (z^2 - z^-2)/2,  with x/t = 2 xi.
cplx theta(cplx z, double xi);
// d theta / dz at real or complex z
cplx theta_prime(cplx z, double xi);

// Closed form of Re(2 i theta):
//   2 Re z Im z (1 + |z|^-4) - 2 xi Im z (1 + |z|^-2)
double re_2i_theta(cplx z, double xi);

struct PhaseGeometry {
  double xi = 0.0;
  Region region = Region::SolitonicI;
  bool has_points = false;  // real stationary points exist iff |xi| >= 1
  double eta = 0.0;         // eta_1 for xi < -1, eta_2 for xi > 1
  double xi1 = 0.0;         // stationary point inside the unit circle
  double xi2 = 0.0;         // stationary point outside; xi1 * xi2 = 1
};

// Real stationary points of theta for |xi| >= 1: roots of z^2 - eta z + 1 = 0
// with eta = (xi - sqrt(xi^2+8))/2 for xi < -1 (resp. + for xi > 1).
// |xi| < 1 yields a point-free geometry; xi = -1/+1 the double root at -1/+1.
PhaseGeometry stationary_points(double xi);

// Transition wedge P_{\mp1}: |xi -(\mp1)| t^{2/3} <= C (zero included).
// Transition labels take precedence; between the two wedges the closer edge wins.
Region classify_region(double x, double t, double C);  // throws on t<=0 or C<=0

struct ScaledCoordinates {
  CaseTag case_tag = CaseTag::CaseI;
  double tau = 0.0;  // 3t/4
  double s = 0.0;    // (8/3)(xi+1) tau^{2/3}  resp.  -(8/3)(xi-1) tau^{2/3}
  double xi = 0.0;
  double t = 0.0;

  cplx k_of_z(cplx z) const;  // tau^{1/3}(z+1)  resp.  -tau^{1/3}(z-1)
  cplx z_of_k(cplx k) const;
  double x() const { return 2.0 * t * xi; }
};

ScaledCoordinates scaled_vars(double x, double t, CaseTag c);  // throws on t<=0

// Exact remainder S(t;k) = t*theta(z) - (4/3)k^3 - s k of the cubic rescaling,
// evaluated from closed forms (no series truncation); O(t^{-1/3}) on |k|<=O(1).
cplx phase_remainder(cplx z, double x, double t, CaseTag c);

// Default scaling-disk radius: 1.5*(3/4)^{1/3} sqrt(2C).
double scaling_disk_radius(double C);

// ---- signature sampling (sector inequalities of the steepest-descent regions)

struct SignatureCheck {
  cplx z;         // sampled point
  int sector;     // 0..3 upper sectors, 10..13 their conjugates
  double lhs;     // Re(2 i theta)(z)
  double bound;   // claimed bound (signed)
  bool expect_ge; // lhs >= bound expected (else lhs <= bound)
  bool ok;
};

// Samples n points per sector for the given xi (|xi|>1 required) using opening
// angle phi_open in (0, pi/4), and checks the sector inequalities:
//   sectors at 0:    |Re 2i theta| >= |sin 2 arg z| |Im z|
//   sector at xi_1:  |Re 2i theta| >= (4/|xi_1|) u^2 |v|
//   sector at xi_2:  |Re 2i theta| >= u^2 |v| / (8 |xi_2|^3)  (|z|<=2)
//                    |Re 2i theta| >= 2 sqrt(2) |v|            (|z|>2)
// with the sign pattern of the decaying/growing sectors for the given xi side.
std::vector<SignatureCheck> signature_samples(double xi, double phi_open,
                                              int n_per_sector, std::uint64_t seed);

}  // namespace nlsbg
