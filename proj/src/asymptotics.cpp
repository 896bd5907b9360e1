#include "nlsbg/asymptotics.hpp"

#include <cmath>

#include "nlsbg/airy.hpp"
#include <cstdio>
#include <stdexcept>

namespace nlsbg {

namespace {

using cplx = std::complex<double>;

// limit of r at the edge z = ∓1: the determinant ratio when the edge is
// generic, otherwise r evaluated just outside the unit circle
cplx edge_reflection(const ScatteringSolver& s, CaseTag tag) {
  const EdgeData& e = s.edge_data();
  cplx s11 = (tag == CaseTag::CaseI) ? e.S11_minus1 : e.S11_plus1;
  cplx s21 = (tag == CaseTag::CaseI) ? e.S21_minus1 : e.S21_plus1;
  if (std::abs(s11) > 1e-8) return s21 / s11;
  double off = 2.0 * s.exclusion_radius();
  double z = (tag == CaseTag::CaseI) ? -1.0 - off : 1.0 + off;
  return s.reflection(z);
}

double clamp_kappa(double mag) {
  if (mag <= 1.0) return mag;
  if (mag <= 1.0 + 1e-6) return 1.0;
  throw std::runtime_error("asymptotics: edge amplitude exceeds 1 beyond noise");
}

}  // namespace

double alpha_infty(const ScatteringSolver& scattering, CaseTag tag) {
  double a = scattering.integral_nu_over_zeta_pos();
  if (tag == CaseTag::CaseI)
    for (const auto& m : scattering.discrete_spectrum()) a -= 2.0 * std::arg(m.z);
  return a;
}

double phi0_phase(const ScatteringSolver& scattering, CaseTag tag) {
  if (tag == CaseTag::CaseII) {
    if (std::abs(scattering.edge_data().S11_plus1) < 1e-8) {
      cplx r = edge_reflection(scattering, CaseTag::CaseII);
      return (std::abs(r) < 1e-8) ? 0.0 : std::arg(std::conj(r));
    }
    return std::arg(scattering.modified_reflection_R(1.0));
  }
  cplx r = edge_reflection(scattering, CaseTag::CaseI);
  if (std::abs(r) < 1e-8) return 0.0;  // generic fallback, r indeterminate
  return std::arg(r);
}

double edge_kappa(const ScatteringSolver& scattering, CaseTag tag) {
  if (tag == CaseTag::CaseI)
    return -clamp_kappa(std::abs(edge_reflection(scattering, CaseTag::CaseI)));
  if (std::abs(scattering.edge_data().S11_plus1) < 1e-8)
    return clamp_kappa(std::abs(edge_reflection(scattering, CaseTag::CaseII)));
  return clamp_kappa(std::abs(scattering.modified_reflection_R(1.0)));
}

cplx beta_correction(CaseTag tag, const PainleveTable& table, double s,
                     double phi0) {
  if (s < table.s_min)
    throw std::out_of_range("asymptotics: s below the Painleve table range");
  // above s_max the Airy continuation takes over (u and I both tiny there)
  double u = (s <= table.s_max) ? table.u_at(s) : table.kappa * airy(s).Ai;
  cplx val = u * std::exp(cplx(0.0, phi0)) + tail_integral(table, s);
  cplx half_i{0.0, 0.5};
  return (tag == CaseTag::CaseI) ? -half_i * val : half_i * val;
}

PainleveTable pii_table_for(double kappa, double s) {
  if (std::abs(kappa) < 1e-14) {
    PainleveTable t = solve_pii(0.0, std::min(s - 2.0, -2.0));
    return t;
  }
  double s_min;
  if (std::abs(kappa) > 0.999) {
    if (s < -4.0)
      throw std::out_of_range(
          "asymptotics: s < -4 on the amplitude-1 branch (one-sided unstable)");
    s_min = -5.0;
  } else {
    s_min = std::max(-30.0, std::min(s - 2.0, -2.0));
  }
  double s_max = std::max(10.0, s + 2.0);
  return solve_pii(kappa, s_min, s_max);
}

AsymptoticPrediction q_asymptotic(double x, double t,
                                  const ScatteringSolver& scattering, double C,
                                  const PainleveTable& table) {
  Region reg = classify_region(x, t, C);
  CaseTag tag;
  if (reg == Region::TransitionMinus1)
    tag = CaseTag::CaseI;
  else if (reg == Region::TransitionPlus1)
    tag = CaseTag::CaseII;
  else
    throw std::domain_error("asymptotics: (x,t) outside the transition wedges");

  ScaledCoordinates sc = scaled_vars(x, t, tag);
  AsymptoticPrediction p;
  p.case_tag = tag;
  p.x = x;
  p.t = t;
  p.xi = sc.xi;
  p.s = sc.s;
  p.tau = sc.tau;
  p.kappa = edge_kappa(scattering, tag);
  if (std::abs(table.kappa - p.kappa) > 1e-6)
    throw std::invalid_argument("asymptotics: table kappa does not match the edge");
  p.alpha_inf = alpha_infty(scattering, tag);
  p.phi0 = phi0_phase(scattering, tag);
  p.u = (p.s <= table.s_max) ? table.u_at(p.s) : table.kappa * airy(p.s).Ai;
  p.tail = tail_integral(table, p.s);
  p.beta = beta_correction(tag, table, p.s, p.phi0);
  p.q_pred = std::exp(cplx(0.0, p.alpha_inf)) *
             (1.0 + std::pow(p.tau, -1.0 / 3.0) * p.beta);
  cplx ti = scattering.T_infinity(tag);
  p.t_inf_sq = ti * ti;
  return p;
}

AsymptoticPrediction q_asymptotic(double x, double t,
                                  const ScatteringSolver& scattering, double C) {
  Region reg = classify_region(x, t, C);
  CaseTag tag = (reg == Region::TransitionMinus1) ? CaseTag::CaseI : CaseTag::CaseII;
  if (reg != Region::TransitionMinus1 && reg != Region::TransitionPlus1)
    throw std::domain_error("asymptotics: (x,t) outside the transition wedges");
  ScaledCoordinates sc = scaled_vars(x, t, tag);
  PainleveTable table = pii_table_for(edge_kappa(scattering, tag), sc.s);
  return q_asymptotic(x, t, scattering, C, table);
}

std::string predictions_to_csv(const std::vector<AsymptoticPrediction>& preds) {
  std::string out =
      "x,t,xi,s,tau,alpha_inf,phi0,re_beta,im_beta,re_q_pred,im_q_pred\n";
  char line[512];
  for (const auto& p : preds) {
    std::snprintf(line, sizeof line,
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,"
                  "%.17g\n",
                  p.x, p.t, p.xi, p.s, p.tau, p.alpha_inf, p.phi0, p.beta.real(),
                  p.beta.imag(), p.q_pred.real(), p.q_pred.imag());
    out += line;
  }
  return out;
}

}  // namespace nlsbg
