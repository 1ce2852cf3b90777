#pragma once

#include <array>
#include <functional>

namespace dpnls {

/// 64-point Gauss-Legendre rule on [a, b].
double gauss_legendre_64(const std::function<double(double)>& f, double a, double b);

/// Composite 64-point Gauss-Legendre with panel doubling until two successive
/// refinements agree to rel_tol. Throws NumericsError if the panel budget is
/// exhausted without agreement.
double integrate_doubling(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, int max_panels = 4096);

/// int_zeta^1 (1-t^2)^alpha dt for alpha > -1 and zeta in [-1, 1].
///
/// The endpoint singularity at t = 1 (alpha < 0) and the fractional-power
/// non-smoothness (alpha not an integer) are removed by the substitution
/// 1 - t = v^s with s = m/(alpha+1), m = ceil(3(alpha+1)), after which the
/// integrand is s v^{m-1} (2-v^s)^alpha. Negative zeta is folded by symmetry.
double power_integral(double alpha, double zeta, double rel_tol = 1e-12);

}  // namespace dpnls
