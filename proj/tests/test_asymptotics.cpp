#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "nlsbg/airy.hpp"
#include "nlsbg/asymptotics.hpp"
#include "nlsbg/datum.hpp"

using namespace nlsbg;
using cplx = std::complex<double>;

namespace {

ScatteringSolver& tanh_solver() {
  static ScatteringSolver s(tanh_datum(12.0, 0.05));
  return s;
}

ScatteringSolver& headline_solver() {
  static ScatteringSolver s(tanh_gauss_datum(0.3, 1.0, 12.0, 0.05));
  return s;
}

}  // namespace

TEST_CASE("alpha(inf): tanh gives -pi / 0, identity e^{i alpha} = T(inf)^2") {
  auto& T = tanh_solver();
  // one eigenvalue at i, nu ~ 0: alpha_I = -2 arg(i) = -pi, alpha_II = 0
  CHECK(std::abs(alpha_infty(T, CaseTag::CaseI) + M_PI) < 1e-6);
  CHECK(std::abs(alpha_infty(T, CaseTag::CaseII)) < 1e-6);

  for (auto* S : {&tanh_solver(), &headline_solver()}) {
    for (CaseTag tag : {CaseTag::CaseI, CaseTag::CaseII}) {
      double a = alpha_infty(*S, tag);
      cplx ti = S->T_infinity(tag);
      CHECK(std::abs(std::exp(cplx(0.0, a)) - ti * ti) < 1e-8);
    }
  }
}

TEST_CASE("phi0 and kappa at the edges") {
  auto& H = headline_solver();
  // generic collapse: phi0 = 0 for both cases, |r(-1)| = |R(1)| = 1
  CHECK(std::abs(phi0_phase(H, CaseTag::CaseI)) < 1e-9);
  CHECK(std::abs(phi0_phase(H, CaseTag::CaseII)) < 1e-9);
  CHECK(edge_kappa(H, CaseTag::CaseI) == -1.0);
  CHECK(edge_kappa(H, CaseTag::CaseII) == 1.0);
  // tanh: non-generic, r vanishes at both edges
  auto& T = tanh_solver();
  CHECK(std::abs(phi0_phase(T, CaseTag::CaseI)) < 1e-9);
  CHECK(std::abs(edge_kappa(T, CaseTag::CaseI)) < 1e-5);
  CHECK(std::abs(edge_kappa(T, CaseTag::CaseII)) < 1e-5);
}

TEST_CASE("beta: structure, mirror identity, Airy-tail magnitude") {
  PainleveTable zero = solve_pii(0.0, -5.0);
  CHECK(beta_correction(CaseTag::CaseI, zero, 0.0, 0.0) == cplx(0.0, 0.0));

  PainleveTable half = solve_pii(0.5, -10.0);
  for (double s : {-8.0, -1.0, 0.0, 3.0}) {
    for (double p0 : {0.0, 0.7, -2.1}) {
      cplx b1 = beta_correction(CaseTag::CaseI, half, s, p0);
      cplx b2 = beta_correction(CaseTag::CaseII, half, s, p0);
      CHECK(b2 == -b1);  // exact mirror
    }
    // phi0 = 0 and real u: beta purely imaginary, sign - for Case I
    cplx b = beta_correction(CaseTag::CaseI, half, s, 0.0);
    CHECK(b.real() == 0.0);
    double expect = -0.5 * (half.u_at(s) + tail_integral(half, s));
    CHECK(std::abs(b.imag() - expect) < 1e-15);
  }

  // s = 8: |beta| = (1/2)|u(8) + I(8)| dominated by the tiny Airy tail
  cplx b8 = beta_correction(CaseTag::CaseII, half, 8.0, 0.0);
  double u8 = 0.5 * airy(8.0).Ai;
  CHECK(std::abs(half.u_at(8.0) - u8) < 1e-3 * u8);
  CHECK(std::abs(std::abs(b8) - 0.5 * (half.u_at(8.0) + tail_integral(half, 8.0))) <
        1e-15);
  CHECK(std::abs(b8) < 1e-4);

  // above s_max the Airy continuation takes over smoothly
  cplx b12 = beta_correction(CaseTag::CaseII, half, 12.0, 0.0);
  CHECK(std::abs(b12) < 1e-7);
  CHECK_THROWS_AS((void)beta_correction(CaseTag::CaseI, half, -11.0, 0.0),
                  std::out_of_range);
}

TEST_CASE("pii_table_for: range policy") {
  PainleveTable t1 = pii_table_for(-1.0, 0.0);
  CHECK(t1.kappa == -1.0);
  CHECK(t1.s_min <= -4.0);
  CHECK_THROWS_AS((void)pii_table_for(1.0, -4.5), std::out_of_range);
  PainleveTable t2 = pii_table_for(0.5, -12.0);
  CHECK(t2.s_min <= -12.0);
  PainleveTable t3 = pii_table_for(0.5, 14.0);
  CHECK(t3.s_max >= 16.0);
}

TEST_CASE("q_asymptotic: tanh edges reproduce the background") {
  auto& T = tanh_solver();
  // beta ~ 0 (reflectionless, kappa ~ 0): q_pred = e^{i alpha}
  AsymptoticPrediction pI = q_asymptotic(-80.0, 40.0, T, 2.0);
  CHECK(pI.case_tag == CaseTag::CaseI);
  CHECK(std::abs(pI.s) < 1e-12);
  CHECK(std::abs(pI.beta) < 1e-4);
  // alpha = -pi: prediction is -1, matching tanh(-2t)
  CHECK(std::abs(pI.q_pred - cplx(-1.0, 0.0)) < 1e-4);

  AsymptoticPrediction pII = q_asymptotic(80.0, 40.0, T, 2.0);
  CHECK(pII.case_tag == CaseTag::CaseII);
  CHECK(std::abs(pII.q_pred - cplx(1.0, 0.0)) < 1e-4);

  CHECK_THROWS_AS((void)q_asymptotic(0.0, 40.0, T, 2.0), std::domain_error);
}

TEST_CASE("q_asymptotic: headline structure and invariants") {
  auto& H = headline_solver();
  for (double t : {40.0, 80.0, 160.0}) {
    AsymptoticPrediction p = q_asymptotic(-2.0 * t, t, H, 2.0);
    CHECK(p.case_tag == CaseTag::CaseI);
    CHECK(std::abs(p.s) < 1e-12);
    CHECK(p.kappa == -1.0);
    CHECK(std::abs(p.phi0) < 1e-9);
    // audit identity
    CHECK(std::abs(std::exp(cplx(0.0, p.alpha_inf)) - p.t_inf_sq) < 1e-8);
    // u(0) for kappa = -1 is the negated Hastings-McLeod value
    CHECK(std::abs(p.u + 0.3670615515448) < 1e-7);
    CHECK(std::abs(p.tail - 0.0690913807085) < 1e-7);
    // triangle bound on the modulus
    double corr = std::pow(p.tau, -1.0 / 3.0) * std::abs(p.beta);
    CHECK(std::abs(std::abs(p.q_pred) - 1.0) <= corr + 1e-15);
    // doubling t only shrinks the correction through tau^{-1/3}
    CHECK(std::abs(std::abs(p.q_pred - std::exp(cplx(0.0, p.alpha_inf))) - corr) <
          1e-14);
  }
  // fixed s = 0: |q_pred| -> 1 monotonically in t
  double d40 = std::abs(std::abs(q_asymptotic(-80.0, 40.0, H, 2.0).q_pred) - 1.0);
  double d80 = std::abs(std::abs(q_asymptotic(-160.0, 80.0, H, 2.0).q_pred) - 1.0);
  double d160 = std::abs(std::abs(q_asymptotic(-320.0, 160.0, H, 2.0).q_pred) - 1.0);
  CHECK(d80 < d40);
  CHECK(d160 < d80);

  // mirrored Case II run: u flips sign with kappa while the tail I is even,
  // so beta_II - beta_I = i I(0)
  AsymptoticPrediction pII = q_asymptotic(160.0, 80.0, H, 2.0);
  AsymptoticPrediction pI = q_asymptotic(-160.0, 80.0, H, 2.0);
  CHECK(pII.case_tag == CaseTag::CaseII);
  CHECK(pII.kappa == -pI.kappa);
  CHECK(std::abs(pII.u + pI.u) < 1e-12);
  CHECK(std::abs(pII.tail - pI.tail) < 1e-12);
  CHECK(std::abs(pII.beta - pI.beta - cplx(0.0, pI.tail)) < 1e-9);
}

TEST_CASE("prediction CSV") {
  auto& T = tanh_solver();
  std::vector<AsymptoticPrediction> ps{q_asymptotic(-80.0, 40.0, T, 2.0),
                                       q_asymptotic(80.0, 40.0, T, 2.0)};
  std::string csv = predictions_to_csv(ps);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line ==
        "x,t,xi,s,tau,alpha_inf,phi0,re_beta,im_beta,re_q_pred,im_q_pred");
  int rows = 0;
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 2);
}
