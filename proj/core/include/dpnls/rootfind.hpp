#pragma once

#include <cmath>
#include <utility>

#include "dpnls/errors.hpp"

namespace dpnls {

/// Bracketed scalar root finding: bisection refined by secant steps. A secant
/// candidate is taken only when it lands strictly inside the bracket, and a
/// bisection is forced whenever the previous step failed to halve the bracket,
/// so the width at least halves every two iterations. f(lo) and f(hi) must
/// have opposite signs. Works in double or long double.
template <class Real, class F>
Real find_root(F&& f, Real lo, Real hi, Real flo, Real fhi, Real xtol,
               int max_iter = 200) {
  if (flo == Real(0)) return lo;
  if (fhi == Real(0)) return hi;
  if ((flo < Real(0)) == (fhi < Real(0)))
    throw BracketError("find_root: no sign change in bracket");

  Real a = lo, b = hi, fa = flo, fb = fhi;
  bool force_bisect = false;
  for (int it = 0; it < max_iter; ++it) {
    const Real width = b - a;
    if (std::abs(width) <= xtol * (Real(1) + std::abs(a) + std::abs(b))) break;
    Real x = a + width / Real(2);
    if (!force_bisect) {
      Real s = (a * fb - b * fa) / (fb - fa);
      const Real margin = width / Real(64);
      if (s > a + margin && s < b - margin) x = s;
    }
    Real fx = f(x);
    if (fx == Real(0)) return x;
    if ((fx < Real(0)) == (fa < Real(0))) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
    force_bisect = (b - a) > width / Real(2);
  }
  return a + (b - a) / Real(2);
}

/// Convenience overload evaluating the endpoints itself.
template <class Real, class F>
Real find_root(F&& f, Real lo, Real hi, Real xtol, int max_iter = 200) {
  Real flo = f(lo), fhi = f(hi);
  return find_root(std::forward<F>(f), lo, hi, flo, fhi, xtol, max_iter);
}

}  // namespace dpnls
