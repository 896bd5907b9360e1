#pragma once
// Initial profiles q0(x) in the finite-density class: q0 -> -1 (x -> -inf),
// q0 -> +1 (x -> +inf).  Sampled on a uniform grid; built-in profiles also
// carry their analytic form so spectral quantities are free of interpolation
// error.

#include <complex>
#include <functional>
#include <vector>

namespace nlsbg {

struct InitialDatum {
  double x0 = -30.0;
  double dx = 0.02;
  std::vector<std::complex<double>> q;
  double background_tolerance = 1e-9;
  std::function<std::complex<double>(double)> analytic;  // optional exact form

  double x_end() const { return x0 + dx * static_cast<double>(q.size() - 1); }

  // analytic form when present, otherwise 4-point Lagrange interpolation;
  // outside the grid the value is clipped to the background -/+ 1
  std::complex<double> at(double x) const;

  // endpoint proximity to -/+ 1 and decay of first and second differences;
  // throws std::invalid_argument naming the offending endpoint
  void validate() const;
};

InitialDatum tanh_datum(double L = 30.0, double dx = 0.02);
// q0 = tanh x + amp exp(-(x/width)^2)
InitialDatum tanh_gauss_datum(double amp, double width = 1.0, double L = 30.0,
                              double dx = 0.02);
// q0 = tanh x + amp sech(x)^2
InitialDatum tanh_sech2_datum(double amp, double L = 30.0, double dx = 0.02);

}  // namespace nlsbg
