#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

#include "dpnls/grid.hpp"
#include "dpnls/params.hpp"

namespace dpnls {

using Complex = std::complex<double>;

/// A complex-valued function on the two half-lines, grid-sampled, with the
/// boundary traces at 0^+ and 0^- stored independently.
struct QFunction {
  Grid grid;
  std::vector<Complex> values;  // layout per Grid: [left 0..n | right 0..n]

  Complex trace_minus() const { return values[grid.index_zero_minus()]; }
  Complex trace_plus() const { return values[grid.index_zero_plus()]; }

  Complex left(int j) const { return values[j]; }
  Complex right(int j) const { return values[grid.index_zero_plus() + j]; }
  Complex& left(int j) { return values[j]; }
  Complex& right(int j) { return values[grid.index_zero_plus() + j]; }
};

QFunction zero_function(const Grid& grid);

/// First derivative per half-line, same node layout. Central differences in
/// the interior, one-sided second-order stencils at 0^± and ±L.
std::vector<Complex> derivative(const QFunction& f);

double max_abs(const QFunction& f);

/// max(|f(-L)|, |f(L)|) / max|f|; large values flag an undersized grid.
double edge_decay_ratio(const QFunction& f);

/// sqrt(||f||^2 + ||f'||^2), trapezoid per half-line.
double q_norm(const QFunction& f);

/// CSV with columns x,re,im,side; the header comment line carries the model
/// parameters, omega and the grid metadata. 17 significant digits.
void write_csv(std::ostream& os, const QFunction& f, const ModelParams& params,
               double omega);

/// Reads the format emitted by write_csv (header line included).
QFunction read_csv(std::istream& is);

}  // namespace dpnls
