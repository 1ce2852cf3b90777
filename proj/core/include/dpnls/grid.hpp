#pragma once

#include "dpnls/params.hpp"

namespace dpnls {

/// Uniform grid on [-L, 0^-] u [0^+, L]. The origin is stored twice, once per
/// half-line, so sampled functions may jump there. Node layout in value
/// arrays: indices 0..n are the left half-line (index n is 0^-), indices
/// n+1..2n+1 are the right half-line (index n+1 is 0^+).
struct Grid {
  double half_length = 0.0;
  int n_per_side = 0;

  double h() const { return half_length / n_per_side; }
  int nodes_per_side() const { return n_per_side + 1; }
  int total_nodes() const { return 2 * (n_per_side + 1); }
  int index_zero_minus() const { return n_per_side; }
  int index_zero_plus() const { return n_per_side + 1; }

  double x_left(int j) const { return -half_length + j * h(); }  // j = 0..n
  double x_right(int j) const { return j * h(); }                // j = 0..n

  bool operator==(const Grid&) const = default;
};

/// Validates and builds a grid.
Grid make_grid(double half_length, int n_per_side);

/// Domain sized so stationary profiles at this frequency decay below the
/// default floor at +-L: L = max(25/sqrt(omega0), 25/sqrt(omega) + max_center).
Grid default_grid(const ModelParams& params, double omega, double max_center = 0.0,
                  int n_per_side = 4000);

}  // namespace dpnls
