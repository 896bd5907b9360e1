#pragma once
// Painleve II transcendent u'' = 2u^3 + s u pinned by the Airy boundary
// condition u ~ kappa Ai(s), s -> +infinity, together with its tail integral
// I(s) = int_s^inf u^2 and the order-1/k residue matrices of the model
// parametrix.  Built by backward shooting from s_max with dense output.

#include <complex>
#include <string>
#include <vector>

namespace nlsbg {

struct PainleveTable {
  std::vector<double> s_grid;   // descending, s_max ... s_min, spacing 0.01
  std::vector<double> u;
  std::vector<double> u_prime;
  std::vector<double> tail;     // I(s) = int_s^inf u^2
  double kappa = 0.0;           // signed amplitude of the Airy datum
  double s_max = 10.0;
  double s_min = 0.0;
  double rel_tol = 1e-11;
  double abs_tol = 1e-13;

  double u_at(double s) const;        // quintic Hermite between nodes
  double u_prime_at(double s) const;
};

// Backward integration from (kappa Ai, kappa Ai') at s_max.  |kappa| <= 1;
// s_min >= -12 when |kappa| > 0.999 (the amplitude-1 branch grows like
// sqrt(-s/2) and is one-sided unstable), >= -30 otherwise.  Odd symmetry in
// kappa is exact: the |kappa| solution is computed once and the sign attached.
PainleveTable solve_pii(double kappa, double s_min, double s_max = 10.0,
                        double rel_tol = 1e-11, double abs_tol = 1e-13);

// I(s) for s in [s_min, s_max]; above s_max the closed-form Airy tail
// kappa^2 (Ai'(s)^2 - s Ai(s)^2) is returned.
double tail_integral(const PainleveTable& table, double s);

struct ResidueMatrix {
  std::complex<double> m[2][2];
  double s = 0.0;
  double phi0 = 0.0;
};

struct ResidueMatrices {
  ResidueMatrix M1_P;    // (1/2)[[-i I, u],[u, i I]]
  ResidueMatrix M1_inf;  // -(i/2)[[I, -e^{-i phi0} u],[e^{i phi0} u, -I]]
};

ResidueMatrices residue_matrices(const PainleveTable& table, double s, double phi0);

// CSV with a comment header carrying kappa, s_max and the tolerances.
std::string to_csv(const PainleveTable& table);

}  // namespace nlsbg
