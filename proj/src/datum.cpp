#include "nlsbg/datum.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace nlsbg {

std::complex<double> InitialDatum::at(double x) const {
  if (analytic) return analytic(x);
  if (x <= x0) return {-1.0, 0.0};
  if (x >= x_end()) return {1.0, 0.0};
  double fi = (x - x0) / dx;
  // centered 4-point stencil, shifted at the boundaries
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(fi) - 1;
  std::ptrdiff_t n = static_cast<std::ptrdiff_t>(q.size());
  i = std::max<std::ptrdiff_t>(0, std::min(i, n - 4));
  double t = fi - static_cast<double>(i);  // in [0,3] relative to node i
  std::complex<double> acc = 0.0;
  for (int j = 0; j < 4; ++j) {
    double w = 1.0;
    for (int k = 0; k < 4; ++k)
      if (k != j) w *= (t - k) / (j - k);
    acc += w * q[static_cast<size_t>(i + j)];
  }
  return acc;
}

void InitialDatum::validate() const {
  if (q.size() < 2 || !(dx > 0.0))
    throw std::invalid_argument("datum: need N >= 2 samples and dx > 0");
  auto fail = [](const std::string& side, double defect) {
    throw std::invalid_argument("datum: background tolerance violated at the " +
                                side + " endpoint (defect " +
                                std::to_string(defect) + ")");
  };
  double dl = std::abs(q.front() + 1.0);
  double dr = std::abs(q.back() - 1.0);
  if (dl > background_tolerance) fail("left", dl);
  if (dr > background_tolerance) fail("right", dr);
  // decay of finite differences up to order 2 at both ends
  size_t n = q.size();
  double thresh = 10.0 * background_tolerance;
  double d1l = std::abs(q[1] - q[0]);
  double d1r = std::abs(q[n - 1] - q[n - 2]);
  if (d1l > thresh) fail("left", d1l);
  if (d1r > thresh) fail("right", d1r);
  if (n >= 3) {
    double d2l = std::abs(q[2] - 2.0 * q[1] + q[0]);
    double d2r = std::abs(q[n - 1] - 2.0 * q[n - 2] + q[n - 3]);
    if (d2l > thresh) fail("left", d2l);
    if (d2r > thresh) fail("right", d2r);
  }
}

namespace {

InitialDatum sample(std::function<std::complex<double>(double)> f, double L,
                    double dx) {
  InitialDatum d;
  d.x0 = -L;
  d.dx = dx;
  size_t n = static_cast<size_t>(std::llround(2.0 * L / dx)) + 1;
  d.q.resize(n);
  for (size_t i = 0; i < n; ++i) d.q[i] = f(d.x0 + dx * static_cast<double>(i));
  d.analytic = std::move(f);
  return d;
}

}  // namespace

InitialDatum tanh_datum(double L, double dx) {
  return sample([](double x) { return std::complex<double>(std::tanh(x), 0.0); }, L,
                dx);
}

InitialDatum tanh_gauss_datum(double amp, double width, double L, double dx) {
  return sample(
      [amp, width](double x) {
        double u = x / width;
        return std::complex<double>(std::tanh(x) + amp * std::exp(-u * u), 0.0);
      },
      L, dx);
}

InitialDatum tanh_sech2_datum(double amp, double L, double dx) {
  return sample(
      [amp](double x) {
        double s = 1.0 / std::cosh(x);
        return std::complex<double>(std::tanh(x) + amp * s * s, 0.0);
      },
      L, dx);
}

}  // namespace nlsbg
