#include "dpnls/quadrature.hpp"

#include <cmath>
#include <vector>

#include "dpnls/errors.hpp"

namespace dpnls {

namespace {

struct GLRule {
  std::vector<double> x;  // nodes in (0,1), positive half
  std::vector<double> w;
};

// Nodes/weights of the 64-point Gauss-Legendre rule, found once by Newton on
// the Legendre recurrence; symmetric, so only the positive half is stored.
const GLRule& gl64() {
  static const GLRule rule = [] {
    constexpr int n = 64;
    GLRule r;
    for (int i = 0; i < n / 2; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
          double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16 * (1.0 + std::abs(x))) break;
      }
      r.x.push_back(x);
      r.w.push_back(2.0 / ((1.0 - x * x) * dp * dp));
    }
    return r;
  }();
  return rule;
}

}  // namespace

double gauss_legendre_64(const std::function<double(double)>& f, double a, double b) {
  const GLRule& r = gl64();
  const double c = 0.5 * (a + b), hw = 0.5 * (b - a);
  double sum = 0.0;
  for (size_t i = 0; i < r.x.size(); ++i)
    sum += r.w[i] * (f(c - hw * r.x[i]) + f(c + hw * r.x[i]));
  return hw * sum;
}

double integrate_doubling(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, int max_panels) {
  if (a == b) return 0.0;
  double prev = gauss_legendre_64(f, a, b);
  for (int panels = 2; panels <= max_panels; panels *= 2) {
    double sum = 0.0;
    const double step = (b - a) / panels;
    for (int i = 0; i < panels; ++i)
      sum += gauss_legendre_64(f, a + i * step, a + (i + 1) * step);
    double scale = std::max({std::abs(sum), std::abs(prev), 1e-300});
    if (std::abs(sum - prev) <= rel_tol * scale) return sum;
    prev = sum;
  }
  throw NumericsError("integrate_doubling: panel budget exhausted");
}

double power_integral(double alpha, double zeta, double rel_tol) {
  if (!(alpha > -1.0)) throw ValidationError("power_integral: alpha must exceed -1");
  if (!(zeta >= -1.0 && zeta <= 1.0))
    throw OutOfRangeError("power_integral: zeta must lie in [-1, 1]");
  if (zeta == 1.0) return 0.0;
  if (zeta < 0.0)
    return 2.0 * power_integral(alpha, 0.0, rel_tol) -
           power_integral(alpha, -zeta, rel_tol);
  if (alpha == 0.0) return 1.0 - zeta;

  const int m = static_cast<int>(std::ceil(3.0 * (alpha + 1.0)));
  const double s = m / (alpha + 1.0);
  const double v_max = std::pow(1.0 - zeta, 1.0 / s);
  auto g = [&](double v) {
    return s * std::pow(v, m - 1) * std::pow(2.0 - std::pow(v, s), alpha);
  };
  return integrate_doubling(g, 0.0, v_max, rel_tol);
}

}  // namespace dpnls
