#pragma once
// Airy function Ai and its derivative with absolute error < 1e-12 on the
// window [-30, 30]: extended-precision Maclaurin series for |x| <= 8 and
// Poincare-type asymptotic expansions (exponential/oscillatory branch) beyond.

namespace nlsbg {

struct AiryValue {
  double Ai = 0.0;
  double Ai_prime = 0.0;
  bool in_window = true;  // false: outside [-30,30], best-effort value
};

AiryValue airy(double x);

}  // namespace nlsbg
