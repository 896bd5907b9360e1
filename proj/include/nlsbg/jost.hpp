#pragma once
// Jost solutions of the x-part Lax system at t = 0,
//   psi_x = i sigma3 (Q - lambda(z)) psi,  psi^± ~ Y± e^{-i zeta(z) x sigma3},
// in the rescaled form m^± = psi^± e^{i zeta x sigma3}.  Columns integrated
// from the respective endpoint with frequency-adapted RK4 substeps.  The
// combinations (m1^-, forward) and (m2^+, backward) are the ones stable in
// the closed upper half plane.

#include <array>
#include <complex>
#include <vector>

#include "nlsbg/datum.hpp"

namespace nlsbg {

enum class Side { Minus, Plus };

struct JostSolution {
  std::complex<double> z;
  Side side;
  std::vector<double> x;                                // datum grid
  std::vector<std::array<std::complex<double>, 4>> m;   // m11, m12, m21, m22
};

// Full matrix m^side on the datum grid, integrated away from the side's
// endpoint where it equals Y±.  Intended for real z (for complex z the
// column opposite to the stable one grows exponentially).  tol is the target
// global integration error.
JostSolution jost_solve(const InitialDatum& datum, std::complex<double> z, Side side,
                        double tol = 2e-10);

// Single column of m^side at x = 0 (col is 0 or 1), z != 0, +/-1.
std::array<std::complex<double>, 2> jost_column_at_zero(const InitialDatum& datum,
                                                        std::complex<double> z,
                                                        Side side, int col,
                                                        double tol = 2e-10);

// Degenerate points z = +/-1 (zeta = 0, Y± rank deficient): the bounded
// solutions limit onto the kernel of the nilpotent background generator and
// psi = m there.  psi2_plus equals psi1_plus at z=1 and -psi1_plus at z=-1 up
// to the integration tolerance; both are computed independently.
struct EdgeColumns {
  std::array<std::complex<double>, 2> psi1_plus;
  std::array<std::complex<double>, 2> psi2_plus;
  std::array<std::complex<double>, 2> psi1_minus;
};
EdgeColumns jost_edge_columns(const InitialDatum& datum, double z1);

}  // namespace nlsbg
