#include "dpnls/functionals.hpp"

#include <cmath>

#include "dpnls/errors.hpp"

namespace dpnls {

namespace {

// trapezoid over one half-line of a nodewise quantity
template <class F>
double trapz_side(int n, double h, F&& value) {
  double s = 0.5 * (value(0) + value(n));
  for (int j = 1; j < n; ++j) s += value(j);
  return s * h;
}

}  // namespace

double mass_of(const QFunction& f) {
  const int n = f.grid.n_per_side;
  const double h = f.grid.h();
  return trapz_side(n, h, [&](int j) { return std::norm(f.left(j)); }) +
         trapz_side(n, h, [&](int j) { return std::norm(f.right(j)); });
}

double grad_sq(const QFunction& f) {
  const int n = f.grid.n_per_side;
  const double h = f.grid.h();
  std::vector<Complex> df = derivative(f);
  const Complex* dl = df.data();
  const Complex* dr = df.data() + n + 1;
  return trapz_side(n, h, [&](int j) { return std::norm(dl[j]); }) +
         trapz_side(n, h, [&](int j) { return std::norm(dr[j]); });
}

double lp_power(const QFunction& f, double p) {
  const int n = f.grid.n_per_side;
  const double h = f.grid.h();
  auto val = [&](Complex v) { return std::pow(std::abs(v), p); };
  return trapz_side(n, h, [&](int j) { return val(f.left(j)); }) +
         trapz_side(n, h, [&](int j) { return val(f.right(j)); });
}

double q_norm(const QFunction& f) { return std::sqrt(mass_of(f) + grad_sq(f)); }

FunctionalValues functionals(const QFunction& f, const ModelParams& params,
                             double omega) {
  const double gs = grad_sq(f);
  const double m = mass_of(f);
  const double pw = lp_power(f, 2.0 * params.mu + 2.0);
  const double jump2 = std::norm(f.trace_plus() - f.trace_minus());

  FunctionalValues v{};
  v.f_gamma = gs - jump2 / params.gamma;
  v.mass = m;
  v.energy = 0.5 * v.f_gamma - params.lambda / (2.0 * params.mu + 2.0) * pw;
  v.action = v.energy + 0.5 * omega * v.mass;
  v.nehari = v.f_gamma + omega * v.mass - params.lambda * pw;
  v.stilde = v.action - 0.5 * v.nehari;
  return v;
}

Residuals stationary_residual(const QFunction& f, const ModelParams& params,
                              double omega) {
  const int n = f.grid.n_per_side;
  if (n < 4) throw ValidationError("stationary_residual: grid too coarse");
  const double h = f.grid.h();
  const double inv_h2 = 1.0 / (h * h);
  const double two_mu = 2.0 * params.mu;

  auto side_max = [&](auto&& at) {
    double worst = 0.0;
    for (int j = 1; j < n; ++j) {
      Complex fj = at(j);
      Complex lap = (at(j + 1) - 2.0 * fj + at(j - 1)) * inv_h2;
      Complex r = -lap - params.lambda * std::pow(std::abs(fj), two_mu) * fj +
                  omega * fj;
      worst = std::max(worst, std::abs(r));
    }
    return worst;
  };
  double interior = std::max(side_max([&](int j) { return f.left(j); }),
                             side_max([&](int j) { return f.right(j); }));

  const double inv2h = 1.0 / (2.0 * h);
  Complex d_minus = (3.0 * f.left(n) - 4.0 * f.left(n - 1) + f.left(n - 2)) * inv2h;
  Complex d_plus = (-3.0 * f.right(0) + 4.0 * f.right(1) - f.right(2)) * inv2h;

  Residuals r{};
  r.interior = interior;
  r.match_deriv = std::abs(d_plus - d_minus);
  r.match_jump = std::abs(f.trace_plus() - f.trace_minus() + params.gamma * d_plus);
  return r;
}

}  // namespace dpnls
