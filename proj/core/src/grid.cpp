#include "dpnls/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpnls/errors.hpp"

namespace dpnls {

Grid make_grid(double half_length, int n_per_side) {
  if (!(half_length > 0.0) || !std::isfinite(half_length))
    throw ValidationError("half_length must be positive and finite");
  if (n_per_side < 8) throw ValidationError("n_per_side must be at least 8");
  return Grid{half_length, n_per_side};
}

Grid default_grid(const ModelParams& params, double omega, double max_center,
                  int n_per_side) {
  if (!(omega > 0.0)) throw ValidationError("default_grid: omega must be positive");
  // 25 decay lengths keep |psi(+-L)| below the 1e-10 floor (e^-25 ~ 1.4e-11).
  double L = std::max(25.0 / std::sqrt(params.omega0),
                      25.0 / std::sqrt(omega) + std::abs(max_center));
  return make_grid(L, n_per_side);
}

}  // namespace dpnls
