#pragma once
// Transition-region asymptotics: the constant phase alpha(inf), the edge
// phase phi0, the Painleve II correction beta(∓1) and the predicted field
//   q_pred = e^{i alpha(inf)} (1 + tau^{-1/3} beta),  tau = 3t/4,
// valid in the wedges |xi -(∓1)| t^{2/3} <= C around x = ∓2t.

#include <complex>
#include <string>
#include <vector>

#include "nlsbg/painleve.hpp"
#include "nlsbg/phase.hpp"
#include "nlsbg/scattering.hpp"

namespace nlsbg {

struct AsymptoticPrediction {
  CaseTag case_tag = CaseTag::CaseI;
  double x = 0.0, t = 0.0, xi = 0.0;
  double s = 0.0, tau = 0.0;
  double alpha_inf = 0.0;       // real constant phase
  double phi0 = 0.0;            // edge phase
  double kappa = 0.0;           // signed Airy amplitude of the PII branch
  double u = 0.0;               // u(s)
  double tail = 0.0;            // I(s) = int_s^inf u^2
  std::complex<double> beta{0.0, 0.0};
  std::complex<double> q_pred{0.0, 0.0};
  std::complex<double> t_inf_sq{0.0, 0.0};  // T(inf)^2 audit value
  double error_scale_claim = -0.5;          // remainder O(t^-1/2)
};

// alpha(inf): Case I  -2 sum arg z_j + int_0^inf nu/zeta,
//             Case II int_0^inf nu/zeta  (principal branch, real result;
// normative disambiguation: e^{i alpha} = T(inf)^2)
double alpha_infty(const ScatteringSolver& scattering, CaseTag tag);

// phi0: Case I arg r(-1); Case II arg R(1).  Both collapse to 0 in the
// generic case.  Non-generic edges (S11(∓1) ~ 0) fall back to the value of
// r just outside the edge; a vanishing r there reports the generic fallback 0.
double phi0_phase(const ScatteringSolver& scattering, CaseTag tag);

// signed Airy amplitude: Case I kappa = -|r(-1)|, Case II kappa = +|R(1)|;
// values in (1, 1+1e-6] clamp to 1, larger excess throws.
double edge_kappa(const ScatteringSolver& scattering, CaseTag tag);

// beta(∓1) = ∓(i/2) (u(s) e^{i phi0} + I(s)); the sign is - for Case I.
std::complex<double> beta_correction(CaseTag tag, const PainleveTable& table,
                                     double s, double phi0);

// Full prediction at a space-time point inside a transition wedge of
// constant C.  The overload taking a table skips the PII solve (the table's
// kappa must match edge_kappa within 1e-6).
AsymptoticPrediction q_asymptotic(double x, double t,
                                  const ScatteringSolver& scattering, double C);
AsymptoticPrediction q_asymptotic(double x, double t,
                                  const ScatteringSolver& scattering, double C,
                                  const PainleveTable& table);

// PII table sized for evaluations at scaled coordinate s: range guard for the
// one-sided-unstable |kappa| = 1 branch (s >= -4 required there)
PainleveTable pii_table_for(double kappa, double s);

// CSV: x, t, xi, s, tau, alpha_inf, phi0, re beta, im beta, re q, im q
std::string predictions_to_csv(const std::vector<AsymptoticPrediction>& preds);

}  // namespace nlsbg
