#include "nlsbg/airy.hpp"

#include <cmath>

namespace nlsbg {

namespace {

// Ai(0) = 3^{-2/3}/Gamma(2/3),  Ai'(0) = -3^{-1/3}/Gamma(1/3)
constexpr long double kAi0 = 0.35502805388781723926006318600418L;
constexpr long double kAip0 = -0.25881940379280679840518356018920L;

// Maclaurin: Ai = Ai(0) f + Ai'(0) g with
//   f = sum 3^k (1/3)_k x^{3k}/(3k)!,  g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!
// Extended precision absorbs the cancellation up to |x| = 8.
AiryValue airy_series(double x) {
  long double lx = x;
  long double x3 = lx * lx * lx;
  long double f = 1.0L, fp = 0.0L;     // f and f'
  long double g = lx, gp = 1.0L;       // g and g'
  long double tf = 1.0L, tg = lx;      // current terms of f, g
  for (int k = 1; k < 220; ++k) {
    long double k3 = 3.0L * k;
    tf *= x3 / (k3 * (k3 - 1.0L) * (k3 - 2.0L)) * (k3 - 2.0L);  // 3^k(1/3)_k/(3k)! step
    tg *= x3 / ((k3 + 1.0L) * k3 * (k3 - 1.0L)) * (k3 - 1.0L);
    f += tf;
    g += tg;
    fp += tf * k3 / lx;        // d/dx x^{3k} = 3k x^{3k-1}
    gp += tg * (k3 + 1.0L) / lx;
    if (std::abs((double)tf) < 1e-22 && std::abs((double)tg) < 1e-22) break;
  }
  if (x == 0.0) { fp = 0.0L; gp = 1.0L; }
  AiryValue v;
  v.Ai = (double)(kAi0 * f + kAip0 * g);
  v.Ai_prime = (double)(kAi0 * fp + kAip0 * gp);
  return v;
}

// u_k, v_k coefficients of the Poincare expansions
void uv_coeffs(long double* u, long double* v, int n) {
  u[0] = 1.0L;
  v[0] = 1.0L;
  for (int k = 1; k < n; ++k) {
    u[k] = u[k - 1] * (3.0L * k - 0.5L) * (3.0L * k - 1.5L) * (3.0L * k - 2.5L) /
           (54.0L * k * (k - 0.5L));
    v[k] = u[k] * (6.0L * k + 1.0L) / (1.0L - 6.0L * k);
  }
}

AiryValue airy_asymptotic_pos(double x) {
  constexpr int N = 34;
  long double u[N], v[N];
  uv_coeffs(u, v, N);
  long double lx = x;
  long double t = (2.0L / 3.0L) * lx * std::sqrt(lx);
  long double su = 0.0L, sv = 0.0L, pw = 1.0L;
  long double prev = 1e300L;
  for (int k = 0; k < N; ++k) {
    long double term = u[k] * pw;
    if (std::abs((double)term) > std::abs((double)prev)) break;  // optimal truncation
    su += (k % 2 ? -term : term);
    sv += (k % 2 ? -v[k] * pw : v[k] * pw);
    prev = term;
    pw /= t;
  }
  long double sp = std::sqrt((long double)M_PI);
  long double x14 = std::pow(lx, 0.25L);
  long double e = std::exp(-t);
  AiryValue r;
  r.Ai = (double)(e * su / (2.0L * sp * x14));
  r.Ai_prime = (double)(-x14 * e * sv / (2.0L * sp));
  return r;
}

AiryValue airy_asymptotic_neg(double x) {
  constexpr int N = 34;
  long double u[N], v[N];
  uv_coeffs(u, v, N);
  long double z = -(long double)x;
  long double t = (2.0L / 3.0L) * z * std::sqrt(z);
  // even/odd splits with alternating signs: sum (-1)^k u_{2k} t^{-2k}, etc.
  long double se_u = 0.0L, so_u = 0.0L, se_v = 0.0L, so_v = 0.0L;
  long double pw = 1.0L, prev = 1e300L;
  for (int k = 0; k < N; ++k) {
    long double term = u[k] * pw;
    if (std::abs((double)term) > std::abs((double)prev)) break;  // optimal truncation
    int m = k / 2;
    long double sgn = (m % 2 ? -1.0L : 1.0L);
    if (k % 2 == 0) {
      se_u += sgn * term;
      se_v += sgn * v[k] * pw;
    } else {
      so_u += sgn * term;
      so_v += sgn * v[k] * pw;
    }
    prev = term;
    pw /= t;
  }
  long double c = std::cos(t - (long double)M_PI / 4.0L);
  long double s = std::sin(t - (long double)M_PI / 4.0L);
  long double sp = std::sqrt((long double)M_PI);
  long double z14 = std::pow(z, 0.25L);
  AiryValue r;
  r.Ai = (double)((c * se_u + s * so_u) / (sp * z14));
  r.Ai_prime = (double)(z14 * (s * se_v - c * so_v) / sp);
  return r;
}

}  // namespace

AiryValue airy(double x) {
  AiryValue r;
  if (std::abs(x) <= 8.0) {
    r = airy_series(x);
  } else if (x > 0) {
    r = airy_asymptotic_pos(x);
  } else {
    r = airy_asymptotic_neg(x);
  }
  r.in_window = (std::abs(x) <= 30.0);
  return r;
}

}  // namespace nlsbg
