#pragma once

#include <cmath>
#include <cstddef>

namespace wedgebound::detail {

struct Integral {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
};

template <class F>
void simpson_step(F& f, double a, double fa, double m, double fm, double b, double fb,
                  double whole, double tol, int depth, Integral& out) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  out.evaluations += 2;
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * tol) {
    out.value += left + right + delta / 15;
    out.error += std::fabs(delta) / 15;
    return;
  }
  simpson_step(f, a, fa, lm, flm, m, fm, left, tol / 2, depth - 1, out);
  simpson_step(f, m, fm, rm, frm, b, fb, right, tol / 2, depth - 1, out);
}

/// Adaptive Simpson quadrature with Richardson correction; `abs_tol` is the
/// target absolute error on [a, b].
template <class F>
Integral adaptive_simpson(F&& f, double a, double b, double abs_tol, int max_depth = 48) {
  Integral out;
  if (b <= a) return out;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  out.evaluations = 3;
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  simpson_step(f, a, fa, m, fm, b, fb, whole, abs_tol, max_depth, out);
  return out;
}

/// Splits [a, b] into `panels` pieces first so narrow features are not
/// missed by the initial three-point sample, then applies adaptive_simpson.
template <class F>
Integral panel_simpson(F&& f, double a, double b, double abs_tol, int panels = 4) {
  Integral total;
  const double width = (b - a) / panels;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + i * width;
    const double hi = i + 1 == panels ? b : lo + width;
    const Integral part = adaptive_simpson(f, lo, hi, abs_tol / panels);
    total.value += part.value;
    total.error += part.error;
    total.evaluations += part.evaluations;
  }
  return total;
}

}  // namespace wedgebound::detail
