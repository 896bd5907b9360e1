#pragma once
// Direct scattering at t = 0: scattering coefficients, reflection, nu, the
// discrete spectrum with norming constants, the trace formula, the partial
// transmission functions T(z) of both asymptotic regimes, and the modified
// reflection coefficient R(z) of the z ~ 1 transition region.
//
// Stability notes.  s11 and s21 blow up like (z ∓ 1)^{-1} at the edges; all
// edge-sensitive quantities are built from the regular determinants
//   S11(z) = det[psi1^-, psi2^+],  S21(z) = det[psi1^+, psi1^-],
// and 1 - |r|^2 is evaluated as |1 - z^{-2}|^2 / |S11|^2 (unitarity written
// without cancellation), which stays accurate arbitrarily close to ±1.

#include <complex>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "nlsbg/datum.hpp"
#include "nlsbg/phase.hpp"

namespace nlsbg {

struct DiscreteMode {
  std::complex<double> z;          // simple zero of s11, |z| = 1, Im z > 0
  std::complex<double> c;          // norming constant, c = i z |c|
  std::complex<double> s11_prime;  // Cauchy-circle derivative at z
};

struct EdgeData {
  std::complex<double> S11_plus1, S21_plus1;    // determinants at z = +1
  std::complex<double> S11_minus1, S21_minus1;  // determinants at z = -1
};

class ScatteringSolver {
 public:
  explicit ScatteringSolver(InitialDatum datum, double exclusion_radius = 0.02);

  const InitialDatum& datum() const { return datum_; }
  double exclusion_radius() const { return exclusion_; }

  // (s11, s21) at real z; throws within the exclusion radius of {0,±1}
  std::pair<std::complex<double>, std::complex<double>> coefficients(double z) const;
  std::complex<double> reflection(double z) const;  // r(0) := 0
  double one_minus_r2(double zeta) const;           // cancellation-free
  double nu(double zeta) const;                     // -(1/2pi) log(1-|r|^2)

  // det[m1^-, m2^+](x=0): proportional to s11, regular at ±1, analytic in C+
  std::complex<double> S11_det(std::complex<double> z) const;
  std::complex<double> S21_det(double z) const;  // real z only (psi1^+ unstable off-axis)
  std::complex<double> s11_upper(std::complex<double> z) const;  // Im z >= 0

  const std::vector<DiscreteMode>& discrete_spectrum() const;
  std::complex<double> s11_prime(std::complex<double> zj, double radius = 1e-3,
                                 int nodes = 64) const;
  std::complex<double> trace_formula_s11(std::complex<double> z) const;  // Im z > 0

  // partial transmission functions; Case I carries the Blaschke product
  std::complex<double> T_function(std::complex<double> z, CaseTag tag) const;
  std::complex<double> T_infinity(CaseTag tag) const;
  std::complex<double> T_plus(double zeta, CaseTag tag) const;  // zeta in (0,inf)
  std::complex<double> G_function(double z) const;              // s11 / T_+, |G| = 1

  const EdgeData& edge_data() const;
  double chi_cutoff(double z) const;  // C^inf bump at 1, support radius 0.1
  std::complex<double> modified_reflection_R(double z) const;  // z in (0,inf)

  // nu-mesh integrals shared with the asymptotic evaluator
  double integral_nu_over_zeta_pos() const;        // int_0^inf nu/zeta
  double integral_nu_over_2zeta_pos() const;       // int_0^inf nu/(2 zeta)
  double integral_nu_kernel_neg(double z) const;   // int_{-inf}^0 nu/(zeta - z), z > 0
  std::complex<double> integral_nu_cauchy_full(std::complex<double> z) const;
  std::complex<double> integral_nu_cauchy_pos(std::complex<double> z) const;
  std::complex<double> integral_nu_cauchy_neg(std::complex<double> z) const;

 private:
  struct Mesh {
    std::vector<double> nodes, weights;
    std::vector<double> nu_vals;
  };
  const Mesh& pos_mesh() const;
  const Mesh& neg_mesh() const;
  std::complex<double> blaschke_unit(std::complex<double> z) const;  // prod (z-zj)/(z-conj zj)
  std::complex<double> blaschke_caseI(std::complex<double> z) const; // prod (z-zj)/(z zj-1)

  InitialDatum datum_;
  double exclusion_;
  mutable std::map<double, std::pair<std::complex<double>, std::complex<double>>> coeff_cache_;
  mutable std::map<double, double> nu_cache_;
  mutable std::unique_ptr<Mesh> pos_mesh_, neg_mesh_;
  mutable std::unique_ptr<std::vector<DiscreteMode>> discrete_;
  mutable std::unique_ptr<EdgeData> edge_;
};

// snapshot of the scattering data for serialization / the CLI artifact
struct ScatteringData {
  std::vector<double> z_samples;
  std::vector<std::complex<double>> r, s11, s21;
  std::vector<std::pair<double, double>> nu_samples;  // (zeta, nu)
  std::vector<DiscreteMode> discrete;
  EdgeData edge{};
  double grid_x0 = 0.0, grid_dx = 0.0;
  std::size_t grid_n = 0;
  double background_tolerance = 0.0, exclusion_radius = 0.0;
};

ScatteringData make_snapshot(const ScatteringSolver& solver,
                             const std::vector<double>& z_samples,
                             const std::vector<double>& nu_samples);
// doubles encoded as hex-float strings: bit-exact round trip
std::string to_json(const ScatteringData& data);
ScatteringData scattering_data_from_json(const std::string& text);

}  // namespace nlsbg
