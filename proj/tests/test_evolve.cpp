#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "nlsbg/datum.hpp"
#include "nlsbg/evolve.hpp"

using namespace nlsbg;
using cplx = std::complex<double>;

namespace {

double sup_diff(const EvolutionState& a, const EvolutionState& b) {
  double m = 0.0;
  for (size_t i = 0; i < a.w.size(); ++i) m = std::max(m, std::abs(a.w[i] - b.w[i]));
  return m;
}

}  // namespace

TEST_CASE("black soliton is stationary") {
  EvolveParams p;  // L=40, N=2048, dt=2e-3
  auto st = evolve(tanh_datum(), 10.0, p);
  double sup = 0.0;
  for (auto& w : st.w) sup = std::max(sup, std::abs(w));
  CHECK(sup < 1e-6);
  // w = 0 is an exact fixed point of the discrete flow
  CHECK(sup == 0.0);
}

TEST_CASE("fourth-order time convergence") {
  auto d = tanh_gauss_datum(0.3);
  EvolveParams p;
  p.leakage_threshold = 1e-5;
  EvolveParams p4 = p, p2 = p, p1 = p, pr = p;
  p4.dt = 4e-3;
  p2.dt = 2e-3;
  p1.dt = 1e-3;
  pr.dt = 2.5e-4;
  auto s4 = evolve(d, 1.0, p4);
  auto s2 = evolve(d, 1.0, p2);
  auto s1 = evolve(d, 1.0, p1);
  auto sr = evolve(d, 1.0, pr);
  double e4 = sup_diff(s4, sr), e2 = sup_diff(s2, sr), e1 = sup_diff(s1, sr);
  CHECK(e4 / e2 > 12.0);
  CHECK(e4 / e2 < 20.0);
  CHECK(e2 / e1 > 12.0);
  CHECK(e2 / e1 < 20.0);
  // dt vs dt/2 field agreement
  CHECK(sup_diff(s2, s1) < 1e-7);
}

TEST_CASE("conserved quantities") {
  // closed forms on the exact background
  EvolutionState bg;
  bg.L = 40.0;
  bg.N = 2048;
  bg.w.assign(2048, 0.0);
  auto [mass, energy] = conserved_quantities(bg);
  CHECK(std::abs(mass + 2.0) < 1e-10);
  CHECK(std::abs(energy - 8.0 / 3.0) < 1e-10);

  // drift-free while the perturbation stays contained
  EvolveParams p;
  p.leakage_threshold = 1e-6;
  p.record_interval = 0.5;
  auto st = evolve(tanh_gauss_datum(0.3), 1.5, p);
  double m0 = st.diagnostics.front().mass;
  double e0 = st.diagnostics.front().energy;
  for (auto& r : st.diagnostics) {
    CHECK(std::abs(r.mass - m0) < 1e-8 * std::abs(m0));
    CHECK(std::abs(r.energy - e0) < 1e-8 * e0);
  }
}

TEST_CASE("leakage guard") {
  EvolveParams p;
  p.leakage_threshold = 1e-12;
  CHECK_THROWS_WITH_AS(evolve(tanh_gauss_datum(0.3), 3.0, p),
                       doctest::Contains("leakage"), std::runtime_error);
}

TEST_CASE("sample_field: nodes, band-limited interpolation, domain guard") {
  EvolveParams p;
  p.leakage_threshold = 1e-5;
  auto st = evolve(tanh_gauss_datum(0.3), 1.0, p);
  // exact stored value on a grid node
  for (int j : {100, 777, 1500}) {
    cplx expect = std::tanh(st.x_at(j)) + st.w[j];
    CHECK(std::abs(sample_field(st, st.x_at(j)) - expect) < 1e-14);
  }
  // mid-node value agrees with a grid-refined rerun
  EvolveParams pf = p;
  pf.N = 4096;
  auto sf = evolve(tanh_gauss_datum(0.3), 1.0, pf);
  for (int j : {900, 1024, 1200}) {
    double xm = st.x_at(j) + 0.5 * st.dx();
    CHECK(std::abs(sample_field(st, xm) - sample_field(sf, xm)) < 1e-7);
  }
  // near the boundary w ~ 0: field is the background
  CHECK(std::abs(sample_field(st, 37.0) - std::tanh(37.0)) < 1e-8);
  CHECK_THROWS_AS((void)sample_field(st, 39.9), std::domain_error);
}

TEST_CASE("spatial resolution: doubling N leaves the contained field unchanged") {
  EvolveParams p;
  p.leakage_threshold = 1e-5;
  EvolveParams pf = p;
  pf.N = 4096;
  auto a = evolve(tanh_gauss_datum(0.3), 1.0, p);
  auto b = evolve(tanh_gauss_datum(0.3), 1.0, pf);
  // compare on the common (coarse) nodes: spectral accuracy puts the
  // difference at the temporal floor
  double sup = 0.0;
  for (int j = 0; j < a.N; ++j) sup = std::max(sup, std::abs(a.w[j] - b.w[2 * j]));
  CHECK(sup < 1e-9);
}

TEST_CASE("CSV artifacts") {
  EvolveParams p;
  p.N = 256;
  p.leakage_threshold = 1.0;
  auto st = evolve(tanh_datum(), 0.1, p);
  std::istringstream field(field_to_csv(st));
  std::string line;
  std::getline(field, line);
  CHECK(line == "x,re_q,im_q");
  int rows = 0;
  while (std::getline(field, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 256);

  std::istringstream diag(diagnostics_to_csv(st));
  std::getline(diag, line);
  CHECK(line == "t,mass,energy,leakage");
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(evolve(tanh_datum(), -1.0, {}), std::invalid_argument);
  EvolveParams bad;
  bad.N = 4;
  CHECK_THROWS_AS(evolve(tanh_datum(), 1.0, bad), std::invalid_argument);
}
