#include "dpnls/profiles.hpp"

#include <cmath>
#include <iostream>

#include "dpnls/errors.hpp"

namespace dpnls {

namespace {

// sech(z)^p without overflow for large |z|
double sech_pow(double z, double p) {
  double az = std::abs(z);
  double e = std::exp(-az);
  double sech = 2.0 * e / (1.0 + e * e);
  return std::pow(sech, p);
}

}  // namespace

double soliton_value(const ModelParams& params, double omega, double x0, double x) {
  if (!(omega > 0.0)) throw OutOfRangeError("soliton_value: omega must be positive");
  double amp = std::pow((params.mu + 1.0) * omega / params.lambda,
                        1.0 / (2.0 * params.mu));
  double z = params.mu * std::sqrt(omega) * (x - x0);
  return amp * sech_pow(z, 1.0 / params.mu);
}

QFunction assemble_profile(const ModelParams& params, double omega, double x1,
                           double x2, double theta, const Grid& grid) {
  QFunction f = zero_function(grid);
  const Complex phase = std::polar(1.0, theta);
  for (int j = 0; j <= grid.n_per_side; ++j) {
    f.left(j) = -phase * soliton_value(params, omega, x1, grid.x_left(j));
    f.right(j) = phase * soliton_value(params, omega, x2, grid.x_right(j));
  }
  double ratio = edge_decay_ratio(f);
  if (ratio > kDecayFloor)
    std::cerr << "dpnls: warning: profile not decayed at +-L (edge ratio " << ratio
              << " exceeds " << kDecayFloor << "); enlarge the grid\n";
  return f;
}

QFunction linear_bound_state(const ModelParams& params, const Grid& grid) {
  QFunction f = zero_function(grid);
  const double amp = std::sqrt(2.0 / params.gamma);
  const double rate = 2.0 / params.gamma;
  for (int j = 0; j <= grid.n_per_side; ++j) {
    f.left(j) = -amp * std::exp(-rate * std::abs(grid.x_left(j)));
    f.right(j) = amp * std::exp(-rate * std::abs(grid.x_right(j)));
  }
  return f;
}

}  // namespace dpnls
