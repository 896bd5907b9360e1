#include "nlsbg/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <stdexcept>

#include <json.hpp>

#include "nlsbg/jost.hpp"
#include "nlsbg/quadrature.hpp"

namespace nlsbg {

namespace {

using cplx = std::complex<double>;
const cplx kI{0.0, 1.0};

// nu mesh covers [kInner, kOuter] with geometric grading into the edge point
// z = 1 (log singularity in the generic case); outside the mesh nu is closed
// with its nu ~ c zeta^{±4} asymptotics (r = O(z^{-2}) at infinity and the
// z -> 1/z symmetry at zero)
constexpr double kInner = 0.05;
constexpr double kOuter = 20.0;

// integration gets cheaper where high accuracy is pointless: far from the
// unit circle |s21| has already decayed like z^{-2}
double solver_tol_for(cplx z) {
  cplx lam = 0.5 * (z + 1.0 / z), zeta = 0.5 * (z - 1.0 / z);
  return (std::abs(lam) > 3.0 || std::abs(zeta) > 3.0) ? 1e-8 : 2e-10;
}

cplx det2(const std::array<cplx, 2>& a, const std::array<cplx, 2>& b) {
  return a[0] * b[1] - a[1] * b[0];
}

std::vector<double> positive_mesh_edges() {
  std::vector<double> es{kInner, 0.15, 0.3, 0.5, 0.7, 0.85};
  for (int k = 1; k <= 12; ++k) es.push_back(1.0 - std::pow(10.0, -k));
  for (int k = 12; k >= 1; --k) es.push_back(1.0 + std::pow(10.0, -k));
  for (double e : {1.3, 1.6, 2.0, 3.0, 5.0, 8.0, 12.0, kOuter}) es.push_back(e);
  return es;
}

std::string hexd(double v) {
  char b[48];
  std::snprintf(b, sizeof b, "%a", v);
  return b;
}

double unhexd(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

nlohmann::json jc(cplx v) { return {hexd(v.real()), hexd(v.imag())}; }

cplx juc(const nlohmann::json& j) {
  return {unhexd(j.at(0).get<std::string>()), unhexd(j.at(1).get<std::string>())};
}

}  // namespace

ScatteringSolver::ScatteringSolver(InitialDatum datum, double exclusion_radius)
    : datum_(std::move(datum)), exclusion_(exclusion_radius) {
  datum_.validate();
}

cplx ScatteringSolver::S11_det(cplx z) const {
  double tol = solver_tol_for(z);
  auto v1m = jost_column_at_zero(datum_, z, Side::Minus, 0, tol);
  auto v2p = jost_column_at_zero(datum_, z, Side::Plus, 1, tol);
  return det2(v1m, v2p);
}

cplx ScatteringSolver::S21_det(double z) const {
  double tol = solver_tol_for(z);
  auto v1p = jost_column_at_zero(datum_, z, Side::Plus, 0, tol);
  auto v1m = jost_column_at_zero(datum_, z, Side::Minus, 0, tol);
  return det2(v1p, v1m);
}

cplx ScatteringSolver::s11_upper(cplx z) const {
  if (z.imag() < 0.0)
    throw std::domain_error("scattering: s11 extends to the upper half plane only");
  cplx d = 1.0 - 1.0 / (z * z);
  return S11_det(z) / d;
}

std::pair<cplx, cplx> ScatteringSolver::coefficients(double z) const {
  if (std::abs(z) < exclusion_ || std::abs(z - 1.0) < exclusion_ ||
      std::abs(z + 1.0) < exclusion_)
    throw std::domain_error(
        "scattering: z within the exclusion radius of a singular point {0,+1,-1}");
  auto it = coeff_cache_.find(z);
  if (it != coeff_cache_.end()) return it->second;
  cplx d = 1.0 - 1.0 / (z * z);
  std::pair<cplx, cplx> out{S11_det(z) / d, S21_det(z) / d};
  coeff_cache_[z] = out;
  return out;
}

cplx ScatteringSolver::reflection(double z) const {
  if (z == 0.0) return 0.0;  // r(0) := 0 by the asymptotics r(z) ~ 0, z -> 0
  auto [s11, s21] = coefficients(z);
  return s21 / s11;
}

double ScatteringSolver::one_minus_r2(double zeta) const {
  if (zeta == 0.0 || zeta == 1.0 || zeta == -1.0)
    throw std::domain_error("scattering: 1-|r|^2 undefined exactly at {0,+1,-1}");
  // unitarity without cancellation: |s11|^2-|s21|^2 = 1 <=> 1-|r|^2 = |s11|^-2
  double d = std::abs(1.0 - 1.0 / (zeta * zeta));
  double s = std::abs(S11_det(zeta));
  return (d / s) * (d / s);
}

double ScatteringSolver::nu(double zeta) const {
  auto it = nu_cache_.find(zeta);
  if (it != nu_cache_.end()) return it->second;
  double v = -std::log(one_minus_r2(zeta)) / (2.0 * M_PI);
  if (v < 0.0 && v > -1e-9) v = 0.0;  // clamp tiny negative unitarity defects
  nu_cache_[zeta] = v;
  return v;
}

const ScatteringSolver::Mesh& ScatteringSolver::pos_mesh() const {
  if (pos_mesh_) return *pos_mesh_;
  auto m = std::make_unique<Mesh>();
  auto es = positive_mesh_edges();
  for (size_t i = 0; i + 1 < es.size(); ++i) {
    if (es[i] < 1.0 && es[i + 1] > 1.0) continue;  // 1e-12 sliver at the edge point
    kronrod15(es[i], es[i + 1], m->nodes, m->weights);
  }
  m->nu_vals.reserve(m->nodes.size());
  for (double x : m->nodes) m->nu_vals.push_back(nu(x));
  pos_mesh_ = std::move(m);
  return *pos_mesh_;
}

const ScatteringSolver::Mesh& ScatteringSolver::neg_mesh() const {
  if (neg_mesh_) return *neg_mesh_;
  auto m = std::make_unique<Mesh>();
  auto es = positive_mesh_edges();
  for (size_t i = 0; i + 1 < es.size(); ++i) {
    if (es[i] < 1.0 && es[i + 1] > 1.0) continue;
    kronrod15(-es[i + 1], -es[i], m->nodes, m->weights);
  }
  m->nu_vals.reserve(m->nodes.size());
  for (double x : m->nodes) m->nu_vals.push_back(nu(x));
  neg_mesh_ = std::move(m);
  return *neg_mesh_;
}

namespace {

template <typename K>
cplx nu_mesh_sum(const std::vector<double>& nodes, const std::vector<double>& weights,
                 const std::vector<double>& nu_vals, K kernel) {
  cplx acc = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i)
    acc += weights[i] * nu_vals[i] * kernel(nodes[i]);
  return acc;
}

// int over the outer tail |zeta| in [kOuter, inf), nu ~ nuZ (kOuter/|zeta|)^4
template <typename K>
cplx nu_tail_outer(double sign, double nuZ, K kernel) {
  auto f = [&](double t) -> cplx {
    double w = kOuter / t;
    return nuZ * w * w * w * w * kernel(sign * t);
  };
  return integrate_c(f, kOuter, 5000.0, 1e-10, 1e-14, {50.0, 500.0}).value;
}

// inner tail |zeta| in (0, kInner], nu ~ nuA (|zeta|/kInner)^4
template <typename K>
cplx nu_tail_inner(double sign, double nuA, K kernel) {
  auto f = [&](double t) -> cplx {
    if (t == 0.0) return 0.0;
    double w = t / kInner;
    return nuA * w * w * w * w * kernel(sign * t);
  };
  return integrate_c(f, 0.0, kInner, 1e-10, 1e-14).value;
}

}  // namespace

double ScatteringSolver::integral_nu_over_zeta_pos() const {
  const Mesh& m = pos_mesh();
  cplx s = nu_mesh_sum(m.nodes, m.weights, m.nu_vals,
                       [](double z) { return cplx(1.0 / z); });
  // closed tails: int_Z^inf c zeta^-5 = nu(Z)/4, int_0^a c zeta^3/a^4 = nu(a)/4
  return s.real() + 0.25 * nu(kOuter) + 0.25 * nu(kInner);
}

double ScatteringSolver::integral_nu_over_2zeta_pos() const {
  return 0.5 * integral_nu_over_zeta_pos();
}

double ScatteringSolver::integral_nu_kernel_neg(double z) const {
  if (!(z > 0.0))
    throw std::domain_error("scattering: negative-axis kernel needs z > 0");
  const Mesh& m = neg_mesh();
  auto kern = [z](double zeta) { return cplx(1.0 / (zeta - z)); };
  cplx s = nu_mesh_sum(m.nodes, m.weights, m.nu_vals, kern);
  s += nu_tail_outer(-1.0, nu(-kOuter), kern);
  s += nu_tail_inner(-1.0, nu(-kInner), kern);
  return s.real();
}

cplx ScatteringSolver::integral_nu_cauchy_pos(cplx z) const {
  const Mesh& m = pos_mesh();
  auto kern = [z](double zeta) { return 1.0 / (zeta - z) - 0.5 / zeta; };
  cplx s = nu_mesh_sum(m.nodes, m.weights, m.nu_vals, kern);
  s += nu_tail_outer(1.0, nu(kOuter), kern);
  s += nu_tail_inner(1.0, nu(kInner), kern);
  return s;
}

cplx ScatteringSolver::integral_nu_cauchy_neg(cplx z) const {
  const Mesh& m = neg_mesh();
  auto kern = [z](double zeta) { return 1.0 / (zeta - z); };
  cplx s = nu_mesh_sum(m.nodes, m.weights, m.nu_vals, kern);
  s += nu_tail_outer(-1.0, nu(-kOuter), kern);
  s += nu_tail_inner(-1.0, nu(-kInner), kern);
  return s;
}

cplx ScatteringSolver::integral_nu_cauchy_full(cplx z) const {
  const Mesh& p = pos_mesh();
  auto kern = [z](double zeta) { return 1.0 / (zeta - z); };
  cplx s = nu_mesh_sum(p.nodes, p.weights, p.nu_vals, kern);
  s += nu_tail_outer(1.0, nu(kOuter), kern);
  s += nu_tail_inner(1.0, nu(kInner), kern);
  return s + integral_nu_cauchy_neg(z);
}

cplx ScatteringSolver::blaschke_unit(cplx z) const {
  cplx p = 1.0;
  for (const auto& d : discrete_spectrum()) p *= (z - d.z) / (z - std::conj(d.z));
  return p;
}

cplx ScatteringSolver::blaschke_caseI(cplx z) const {
  cplx p = 1.0;
  for (const auto& d : discrete_spectrum()) p *= (z - d.z) / (z * d.z - 1.0);
  return p;
}

cplx ScatteringSolver::trace_formula_s11(cplx z) const {
  if (z.imag() < 1e-3)
    throw std::domain_error("scattering: trace formula needs Im z >= 1e-3");
  return blaschke_unit(z) * std::exp(-kI * integral_nu_cauchy_full(z));
}

cplx ScatteringSolver::T_function(cplx z, CaseTag tag) const {
  if (z.imag() == 0.0 && z.real() >= 0.0)
    throw std::domain_error("scattering: T evaluated on its branch ray [0,inf)");
  cplx v = std::exp(-kI * integral_nu_cauchy_pos(z));
  if (tag == CaseTag::CaseI) v *= blaschke_caseI(z);
  return v;
}

cplx ScatteringSolver::T_infinity(CaseTag tag) const {
  cplx v = std::exp(kI * integral_nu_over_2zeta_pos());
  if (tag == CaseTag::CaseI)
    for (const auto& d : discrete_spectrum()) v *= std::conj(d.z);
  return v;
}

cplx ScatteringSolver::T_plus(double zeta, CaseTag tag) const {
  if (!(zeta > 2.0 * kInner && zeta < 0.5 * kOuter))
    throw std::domain_error("scattering: T_+ supported on (0.1, 10)");
  double nuz = nu(zeta);
  const Mesh& m = pos_mesh();
  // PV over the mesh by subtraction, pole term integrated in closed form
  cplx pv = 0.0;
  for (size_t i = 0; i < m.nodes.size(); ++i) {
    double d = m.nodes[i] - zeta;
    if (std::abs(d) < 1e-9) {
      // node collides with the pole: the subtracted integrand limits to nu'
      double h = 1e-6;
      pv += m.weights[i] * (nu(zeta + h) - nu(zeta - h)) / (2.0 * h);
      continue;
    }
    pv += m.weights[i] * (m.nu_vals[i] - nuz) / d;
  }
  pv += nuz * std::log((kOuter - zeta) / (zeta - kInner));
  auto kern = [zeta](double zp) { return cplx(1.0 / (zp - zeta)); };
  pv += nu_tail_outer(1.0, nu(kOuter), kern);
  pv += nu_tail_inner(1.0, nu(kInner), kern);
  cplx e = pv + kI * M_PI * nuz - cplx(integral_nu_over_2zeta_pos());
  cplx v = std::exp(-kI * e);
  if (tag == CaseTag::CaseI) v *= blaschke_caseI(zeta);
  return v;
}

cplx ScatteringSolver::G_function(double z) const {
  if (!(z > 0.0)) throw std::domain_error("scattering: G defined on (0,inf)");
  double phase = integral_nu_kernel_neg(z) + integral_nu_over_2zeta_pos();
  return blaschke_unit(z) * std::exp(-kI * phase);
}

const EdgeData& ScatteringSolver::edge_data() const {
  if (edge_) return *edge_;
  auto e = std::make_unique<EdgeData>();
  auto p = jost_edge_columns(datum_, 1.0);
  e->S11_plus1 = det2(p.psi1_minus, p.psi2_plus);
  e->S21_plus1 = det2(p.psi1_plus, p.psi1_minus);
  auto n = jost_edge_columns(datum_, -1.0);
  e->S11_minus1 = det2(n.psi1_minus, n.psi2_plus);
  e->S21_minus1 = det2(n.psi1_plus, n.psi1_minus);
  edge_ = std::move(e);
  return *edge_;
}

double ScatteringSolver::chi_cutoff(double z) const {
  constexpr double delta = 0.1;
  double d = std::abs(z - 1.0) / delta;
  if (d >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - d * d));
}

cplx ScatteringSolver::modified_reflection_R(double z) const {
  if (!(z > 0.0)) throw std::domain_error("scattering: R evaluated off (0,inf)");
  const EdgeData& ed = edge_data();
  if (std::abs(ed.S11_plus1) < 1e-8)
    throw std::runtime_error("scattering: degenerate edge |S11(1)| ~ 0, R undefined");
  double chi = chi_cutoff(z);
  cplx acc = 0.0;
  if (chi > 0.0) {
    cplx F, G;
    if (std::abs(z - 1.0) < 1e-9) {
      F = std::conj(ed.S21_plus1) / ed.S11_plus1;
      G = G_function(1.0);
    } else {
      F = std::conj(S21_det(z)) / S11_det(z);
      G = G_function(z);
    }
    acc += chi * F * G * G;
  }
  if (1.0 - chi > 1e-10) {
    // conj(r)/(1-|r|^2) T_+^{-2} written in the regular determinants:
    // conj(S21) S11 / |1-z^-2|^2 * T_+^{-2}; finite through the edge limit
    cplx d = 1.0 - 1.0 / (z * z);
    cplx tp = T_plus(z, CaseTag::CaseII);
    cplx plain =
        std::conj(S21_det(z)) * S11_det(z) / (std::norm(d) * tp * tp);
    acc += (1.0 - chi) * plain;
  }
  return acc;
}

const std::vector<DiscreteMode>& ScatteringSolver::discrete_spectrum() const {
  if (discrete_) return *discrete_;
  auto out = std::make_unique<std::vector<DiscreteMode>>();

  const int N = 2048;
  std::vector<double> phi(N), mag(N);
  for (int k = 0; k < N; ++k) {
    phi[k] = M_PI * (k + 0.5) / N;
    cplx z = std::exp(kI * phi[k]);
    double tol = 1e-4;  // scan pass only locates minima
    auto v1m = jost_column_at_zero(datum_, z, Side::Minus, 0, tol);
    auto v2p = jost_column_at_zero(datum_, z, Side::Plus, 1, tol);
    mag[k] = std::abs(det2(v1m, v2p) / (1.0 - 1.0 / (z * z)));
  }

  std::vector<cplx> roots;
  for (int k = 1; k + 1 < N; ++k) {
    if (!(mag[k] < mag[k - 1] && mag[k] <= mag[k + 1] && mag[k] < 1e-2)) continue;
    cplx z = std::exp(kI * phi[k]);
    cplx deriv = s11_prime(z, 1e-3, 32);
    cplx f = s11_upper(z);
    bool ok = false;
    for (int it = 0; it < 40; ++it) {
      if (std::abs(f) < 1e-10) {
        ok = true;
        break;
      }
      if (std::abs(deriv) < 1e-9)
        throw std::runtime_error("scattering: Newton derivative vanished in polish");
      cplx step = f / deriv;
      cplx zn = z;
      cplx fn = f;
      int halvings = 0;
      while (halvings <= 6) {
        zn = z - step;
        fn = s11_upper(zn);
        if (std::abs(fn) < std::abs(f)) break;
        step *= 0.5;
        ++halvings;
      }
      if (std::abs(fn) >= std::abs(f)) {
        deriv = s11_prime(z, 1e-3, 32);  // stale quasi-Newton slope, refresh
        continue;
      }
      z = zn;
      f = fn;
    }
    if (!ok) throw std::runtime_error("scattering: root polish failed to converge");
    if (z.imag() <= 0.0 || std::abs(std::abs(z) - 1.0) > 1e-6)
      throw std::runtime_error("scattering: polished zero left the upper unit circle");
    roots.push_back(z);
  }

  std::sort(roots.begin(), roots.end(),
            [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  std::vector<cplx> uniq;
  for (cplx z : roots) {
    if (!uniq.empty()) {
      double d = std::abs(z - uniq.back());
      if (d < 1e-7) continue;  // same zero reached from adjacent scan minima
      if (d < 1e-6)
        throw std::runtime_error(
            "scattering: suspicious near-double zeros of s11 (not merged)");
    }
    uniq.push_back(z);
  }

  for (cplx z : uniq) {
    DiscreteMode d;
    d.z = z;
    d.s11_prime = s11_prime(z, 1e-3, 64);
    if (std::abs(d.s11_prime) < 1e-6)
      throw std::runtime_error("scattering: ill-conditioned (near-multiple) eigenvalue");
    // at a zero of s11: psi1^-(z_j) = s21(z_j) psi2^+(z_j); least-squares ratio
    auto v1m = jost_column_at_zero(datum_, z, Side::Minus, 0);
    auto v2p = jost_column_at_zero(datum_, z, Side::Plus, 1);
    cplx num = std::conj(v2p[0]) * v1m[0] + std::conj(v2p[1]) * v1m[1];
    double den = std::norm(v2p[0]) + std::norm(v2p[1]);
    cplx s21 = num / den;
    d.c = s21 / d.s11_prime;
    out->push_back(d);
  }

  discrete_ = std::move(out);
  return *discrete_;
}

cplx ScatteringSolver::s11_prime(cplx zj, double radius, int nodes) const {
  // Cauchy circle: f'(z) = (1/(2 pi r)) int f(z+r e^{i t}) e^{-i t} dt
  cplx acc = 0.0;
  for (int k = 0; k < nodes; ++k) {
    double t = 2.0 * M_PI * k / nodes;
    cplx w = zj + radius * std::exp(kI * t);
    acc += s11_upper(w) * std::exp(-kI * t);
  }
  return acc / (static_cast<double>(nodes) * radius);
}

ScatteringData make_snapshot(const ScatteringSolver& solver,
                             const std::vector<double>& z_samples,
                             const std::vector<double>& nu_samples) {
  ScatteringData d;
  d.z_samples = z_samples;
  for (double z : z_samples) {
    auto [s11, s21] = solver.coefficients(z);
    d.s11.push_back(s11);
    d.s21.push_back(s21);
    d.r.push_back(s21 / s11);
  }
  for (double zeta : nu_samples) d.nu_samples.emplace_back(zeta, solver.nu(zeta));
  d.discrete = solver.discrete_spectrum();
  d.edge = solver.edge_data();
  d.grid_x0 = solver.datum().x0;
  d.grid_dx = solver.datum().dx;
  d.grid_n = solver.datum().q.size();
  d.background_tolerance = solver.datum().background_tolerance;
  d.exclusion_radius = solver.exclusion_radius();
  return d;
}

std::string to_json(const ScatteringData& d) {
  nlohmann::json j;
  j["schema"] = "nlsbg-scattering/1";
  j["provenance"] = {{"grid_x0", hexd(d.grid_x0)},
                     {"grid_dx", hexd(d.grid_dx)},
                     {"grid_n", d.grid_n},
                     {"background_tolerance", hexd(d.background_tolerance)},
                     {"exclusion_radius", hexd(d.exclusion_radius)}};
  auto& zs = j["samples"]["z"] = nlohmann::json::array();
  auto& rs = j["samples"]["r"] = nlohmann::json::array();
  auto& a11 = j["samples"]["s11"] = nlohmann::json::array();
  auto& a21 = j["samples"]["s21"] = nlohmann::json::array();
  for (size_t i = 0; i < d.z_samples.size(); ++i) {
    zs.push_back(hexd(d.z_samples[i]));
    rs.push_back(jc(d.r[i]));
    a11.push_back(jc(d.s11[i]));
    a21.push_back(jc(d.s21[i]));
  }
  j["nu"] = nlohmann::json::array();
  for (auto& [zeta, v] : d.nu_samples) j["nu"].push_back({hexd(zeta), hexd(v)});
  j["discrete"] = nlohmann::json::array();
  for (auto& m : d.discrete)
    j["discrete"].push_back({{"z", jc(m.z)},
                             {"c", jc(m.c)},
                             {"s11_prime", jc(m.s11_prime)}});
  j["edge"] = {{"S11_plus1", jc(d.edge.S11_plus1)},
               {"S21_plus1", jc(d.edge.S21_plus1)},
               {"S11_minus1", jc(d.edge.S11_minus1)},
               {"S21_minus1", jc(d.edge.S21_minus1)}};
  return j.dump(2);
}

ScatteringData scattering_data_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (j.at("schema").get<std::string>() != "nlsbg-scattering/1")
    throw std::runtime_error("scattering: unknown snapshot schema");
  ScatteringData d;
  const auto& p = j.at("provenance");
  d.grid_x0 = unhexd(p.at("grid_x0").get<std::string>());
  d.grid_dx = unhexd(p.at("grid_dx").get<std::string>());
  d.grid_n = p.at("grid_n").get<std::size_t>();
  d.background_tolerance = unhexd(p.at("background_tolerance").get<std::string>());
  d.exclusion_radius = unhexd(p.at("exclusion_radius").get<std::string>());
  const auto& s = j.at("samples");
  for (const auto& v : s.at("z")) d.z_samples.push_back(unhexd(v.get<std::string>()));
  for (const auto& v : s.at("r")) d.r.push_back(juc(v));
  for (const auto& v : s.at("s11")) d.s11.push_back(juc(v));
  for (const auto& v : s.at("s21")) d.s21.push_back(juc(v));
  for (const auto& v : j.at("nu"))
    d.nu_samples.emplace_back(unhexd(v.at(0).get<std::string>()),
                              unhexd(v.at(1).get<std::string>()));
  for (const auto& v : j.at("discrete")) {
    DiscreteMode m;
    m.z = juc(v.at("z"));
    m.c = juc(v.at("c"));
    m.s11_prime = juc(v.at("s11_prime"));
    d.discrete.push_back(m);
  }
  const auto& e = j.at("edge");
  d.edge.S11_plus1 = juc(e.at("S11_plus1"));
  d.edge.S21_plus1 = juc(e.at("S21_plus1"));
  d.edge.S11_minus1 = juc(e.at("S11_minus1"));
  d.edge.S21_minus1 = juc(e.at("S21_minus1"));
  return d;
}

}  // namespace nlsbg
