#pragma once
// Adaptive Gauss-Kronrod 15(7) quadrature with mandatory breakpoints and a
// subtraction-based Cauchy principal-value helper.  Handles the integrable
// log singularities of nu at |zeta| = 1 by breakpoint-anchored bisection.

#include <complex>
#include <functional>
#include <vector>

namespace nlsbg {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;      // accumulated error estimate
  int evaluations = 0;
  bool converged = false;
};

struct QuadResultC {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Integrate f over [a,b]; intervals are pre-split at the interior breakpoints.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double rel_tol = 1e-9, double abs_tol = 1e-12,
                     const std::vector<double>& breakpoints = {},
                     int max_intervals = 4000);

QuadResultC integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                        double b, double rel_tol = 1e-9, double abs_tol = 1e-12,
                        const std::vector<double>& breakpoints = {},
                        int max_intervals = 4000);

// Fixed 15-point Kronrod rule on [a,b]: appends nodes and weights.  Used to
// build static composite meshes whose integrand values are cached and reused
// against many kernels.
void kronrod15(double a, double b, std::vector<double>& nodes,
               std::vector<double>& weights);

// PV integral of f(x)/(x-c) over [a,b], a < c < b: subtracts f(c) on a window
// symmetric about c (exact log cancellation) and integrates the rest normally.
QuadResult pv_integrate(const std::function<double(double)>& f, double a, double b,
                        double c, double rel_tol = 1e-9, double abs_tol = 1e-12,
                        const std::vector<double>& breakpoints = {});

}  // namespace nlsbg
