#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "nlsbg/airy.hpp"
#include "nlsbg/painleve.hpp"
#include "nlsbg/quadrature.hpp"

using namespace nlsbg;

TEST_CASE("quadrature: smooth, endpoint-log, complex, PV") {
  auto r = integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-14);
  CHECK(r.converged);

  // integrable log singularity at the left endpoint
  auto rl = integrate([](double x) { return -std::log(x); }, 1e-300, 1.0, 1e-12,
                      1e-14, {1e-4});
  CHECK(std::abs(rl.value - 1.0) < 1e-9);

  auto rc = integrate_c([](double x) { return std::exp(std::complex<double>(0, x)); },
                        0.0, M_PI);
  CHECK(std::abs(rc.value - std::complex<double>(0.0, 2.0)) < 1e-12);

  // PV int_{-1}^{2} dx/x = log 2
  auto rp = pv_integrate([](double) { return 1.0; }, -1.0, 2.0, 0.0);
  CHECK(std::abs(rp.value - std::log(2.0)) < 1e-10);
  // PV int_{-1}^{1} x^2/(x-c) = 2c + c^2 log((1-c)/(1+c)), c = 0.3
  double c = 0.3;
  auto rq = pv_integrate([](double x) { return x * x; }, -1.0, 1.0, c);
  CHECK(std::abs(rq.value - (2 * c + c * c * std::log((1 - c) / (1 + c)))) < 1e-10);

  CHECK_THROWS(pv_integrate([](double) { return 1.0; }, 0.0, 1.0, 1.5));
}

TEST_CASE("zero amplitude gives the zero table") {
  auto t = solve_pii(0.0, -5.0);
  for (size_t i = 0; i < t.s_grid.size(); ++i) {
    CHECK(t.u[i] == 0.0);
    CHECK(t.tail[i] == 0.0);
  }
  CHECK(tail_integral(t, -3.3) == 0.0);
}

// reference values from an independent high-order integration at rtol 1e-12
TEST_CASE("amplitude-1 branch values") {
  auto t = solve_pii(1.0, -5.0);
  CHECK(std::abs(t.u_at(0.0) - 0.367061551544) < 1e-8);
  CHECK(std::abs(t.u_prime_at(0.0) - (-0.295372105438)) < 1e-8);
  CHECK(std::abs(t.u_at(-5.0) - 1.57948707172) < 1e-6);  // one-sided instability
  CHECK(std::abs(tail_integral(t, 0.0) - 0.0690913807085) < 1e-8);
}

TEST_CASE("interior-amplitude values and tails") {
  struct Ref {
    double kappa, u0, up0, um5, I0;
  };
  const Ref refs[] = {
      {0.9, 0.328245435668, -0.259308716373, 0.291480500812, 0.0556320111314},
      {0.5, 0.178983470308, -0.133796764952, 0.200674310496, 0.0168753277918},
      {0.1, 0.0355144746829, -0.0259165908826, 0.0352791238004, 0.000670078861003},
  };
  for (const auto& r : refs) {
    auto t = solve_pii(r.kappa, -6.0);
    CHECK(std::abs(t.u_at(0.0) - r.u0) < 1e-8);
    CHECK(std::abs(t.u_prime_at(0.0) - r.up0) < 1e-8);
    CHECK(std::abs(t.u_at(-5.0) - r.um5) < 1e-8);
    CHECK(std::abs(tail_integral(t, 0.0) - r.I0) < 1e-8);
  }
}

TEST_CASE("dual oracle at s=0: half tolerance and shifted matching point") {
  auto base = solve_pii(1.0, -2.0);
  auto tight = solve_pii(1.0, -2.0, 10.0, 5e-12, 5e-14);
  auto shifted = solve_pii(1.0, -2.0, 14.0);
  CHECK(std::abs(base.u_at(0.0) - tight.u_at(0.0)) < 1e-8);
  CHECK(std::abs(base.u_at(0.0) - shifted.u_at(0.0)) < 1e-8);
}

TEST_CASE("linear regime: u tracks kappa Ai on [4,8] to 1e-3 relative") {
  for (double kappa : {0.1, 0.5, 0.9}) {
    auto t = solve_pii(kappa, -1.0);
    for (double s = 4.0; s <= 8.0; s += 0.37) {
      double ai = airy(s).Ai;
      CHECK(std::abs(t.u_at(s) / (kappa * ai) - 1.0) < 1e-3);
      CHECK(t.u_at(s) / kappa > 0.0);  // sign convention in the matching regime
    }
  }
}

TEST_CASE("odd symmetry in kappa is exact") {
  auto p = solve_pii(0.7, -8.0);
  auto m = solve_pii(-0.7, -8.0);
  for (size_t i = 0; i < p.u.size(); ++i) {
    CHECK(p.u[i] + m.u[i] == 0.0);
    CHECK(p.u_prime[i] + m.u_prime[i] == 0.0);
    CHECK(p.tail[i] == m.tail[i]);
  }
}

TEST_CASE("ODE residual < 1e-8 at every fifth interior node") {
  // 6th-order stencil keeps the differentiation error below the bound in the
  // oscillatory region where high derivatives grow like |2s|^{k/2}
  auto check_residual = [](const PainleveTable& t) {
    double h = t.s_grid[0] - t.s_grid[1];
    for (size_t i = 3; i + 3 < t.s_grid.size(); i += 5) {
      double dd = (2 * t.u[i - 3] - 27 * t.u[i - 2] + 270 * t.u[i - 1] -
                   490 * t.u[i] + 270 * t.u[i + 1] - 27 * t.u[i + 2] +
                   2 * t.u[i + 3]) /
                  (180 * h * h);
      double res = dd - (2 * std::pow(t.u[i], 3) + t.s_grid[i] * t.u[i]);
      CHECK(std::abs(res) < 1e-8);
    }
  };
  check_residual(solve_pii(1.0, -5.0));   // amplitude-1 branch, stable window
  check_residual(solve_pii(0.5, -10.0));  // bounded oscillatory branch
}

TEST_CASE("growth monitor aborts the amplitude-1 branch past its stable window") {
  CHECK_THROWS_AS(solve_pii(1.0, -12.0), std::runtime_error);
}

TEST_CASE("tail: closure identity, additivity, monotonicity") {
  auto t = solve_pii(0.8, -10.0);
  auto v = airy(t.s_max);
  double closed = 0.64 * (v.Ai_prime * v.Ai_prime - t.s_max * v.Ai * v.Ai);
  CHECK(std::abs(t.tail[0] - closed) < 1e-10);
  // direct quadrature of the interpolant reproduces the closure at s_max
  auto direct = integrate([&](double s) { double u = t.u_at(s); return u * u; },
                          5.0, t.s_max, 1e-13, 1e-15);
  CHECK(std::abs((tail_integral(t, 5.0) - t.tail[0]) - direct.value) < 1e-10);

  // additivity at (a,b) = (0,4)
  auto mid = integrate([&](double s) { double u = t.u_at(s); return u * u; }, 0.0,
                       4.0, 1e-13, 1e-15);
  CHECK(std::abs(tail_integral(t, 0.0) - (tail_integral(t, 4.0) + mid.value)) < 1e-10);

  for (size_t i = 1; i < t.tail.size(); ++i) CHECK(t.tail[i] >= t.tail[i - 1]);

  // off-node evaluation is consistent with neighbours
  double a = tail_integral(t, -3.004);
  CHECK(a >= tail_integral(t, -3.0));
  CHECK(a <= tail_integral(t, -3.01));
}

TEST_CASE("tail at s=8 for kappa=0.5 equals the Airy-dominated estimate") {
  auto t = solve_pii(0.5, -1.0);
  auto v = airy(8.0);
  double est = 0.25 * (v.Ai_prime * v.Ai_prime - 8.0 * v.Ai * v.Ai);
  CHECK(tail_integral(t, 8.0) == doctest::Approx(est).epsilon(1e-3));
}

TEST_CASE("input validation and growth guard") {
  CHECK_THROWS_AS(solve_pii(1.2, -5.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_pii(0.5, -5.0, 6.0), std::invalid_argument);
  CHECK_THROWS_AS(solve_pii(1.0, -20.0), std::invalid_argument);  // |kappa|=1 floor
  CHECK_NOTHROW(solve_pii(0.5, -20.0));
  CHECK_THROWS_AS(solve_pii(0.5, 11.0), std::invalid_argument);
  CHECK_THROWS(tail_integral(solve_pii(0.5, -2.0), -3.0));
}

TEST_CASE("residue matrices: structure, trace, special cases") {
  auto t = solve_pii(0.6, -9.0);
  for (double s : {-7.0, -2.5, 0.0, 3.1}) {
    for (double phi0 : {0.0, 0.9, -2.2}) {
      auto rm = residue_matrices(t, s, phi0);
      double u = t.u_at(s), Is = tail_integral(t, s);
      const std::complex<double> I{0, 1};
      CHECK(std::abs(rm.M1_P.m[0][0] + rm.M1_P.m[1][1]) == 0.0);
      CHECK(std::abs(rm.M1_inf.m[0][0] + rm.M1_inf.m[1][1]) == 0.0);
      CHECK(std::abs(rm.M1_P.m[0][0] - (-0.5 * I * Is)) < 1e-15);
      CHECK(std::abs(rm.M1_P.m[0][1] - 0.5 * u) < 1e-15);
      CHECK(std::abs(rm.M1_P.m[1][0] - rm.M1_P.m[0][1]) == 0.0);
      CHECK(std::abs(rm.M1_inf.m[0][0] - (-0.5 * I * Is)) < 1e-15);
      CHECK(std::abs(std::abs(rm.M1_inf.m[0][1]) - 0.5 * std::abs(u)) < 1e-14);
      CHECK(std::abs(std::abs(rm.M1_inf.m[1][0]) - 0.5 * std::abs(u)) < 1e-14);
      CHECK(std::abs(rm.M1_inf.m[0][1] - (I * std::exp(-I * phi0) * 0.5 * u)) < 1e-14);
      CHECK(std::abs(rm.M1_inf.m[1][0] - (-I * std::exp(I * phi0) * 0.5 * u)) < 1e-14);
    }
  }
  // phi0 = 0: off-diagonals of M1_inf collapse to -(i/2)(-u) and -(i/2)u
  auto rm0 = residue_matrices(t, 1.0, 0.0);
  double u1 = t.u_at(1.0);
  CHECK(std::abs(rm0.M1_inf.m[0][1] - std::complex<double>(0, 0.5 * u1)) < 1e-15);
  CHECK(std::abs(rm0.M1_inf.m[1][0] - std::complex<double>(0, -0.5 * u1)) < 1e-15);
}

TEST_CASE("CSV serialization round-trips the header and grid") {
  auto t = solve_pii(0.3, 5.0, 8.0);
  auto csv = to_csv(t);
  CHECK(csv.find("kappa=0.2999999") != std::string::npos);
  CHECK(csv.find("s_max=8") != std::string::npos);
  CHECK(csv.find("s,u,u_prime,tail") != std::string::npos);
  // one header comment, one column row, one line per node
  size_t lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == t.s_grid.size() + 2);
}
