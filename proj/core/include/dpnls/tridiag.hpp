#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "dpnls/errors.hpp"

namespace dpnls {

/// Symmetric tridiagonal matrix: diagonal d (n entries), off-diagonal e (n-1).
struct SymTridiag {
  std::vector<double> d;
  std::vector<double> e;

  int size() const { return static_cast<int>(d.size()); }
};

std::vector<double> tridiag_apply(const SymTridiag& m, const std::vector<double>& x);
double quadratic_form(const SymTridiag& m, const std::vector<double>& x);

/// Number of eigenvalues of the pencil (A, M) strictly below sigma, by
/// Sylvester inertia of the LDL^T factorization of A - sigma M. M must be
/// symmetric positive definite. Exact up to rounding; O(n).
int count_below(const SymTridiag& a, const SymTridiag& m, double sigma);

struct EigenPair {
  double value;
  std::vector<double> vector;  // normalized to x^T M x = 1
};

struct EigsOptions {
  double bisect_tol = 1e-13;    ///< absolute, scaled by (1 + |lambda|)
  int max_invit = 10;           ///< inverse-iteration sweeps per pair
  double residual_tol = 1e-10;  ///< backward error target, matrix scale
};

/// k smallest eigenpairs of A x = lambda M x (A, M symmetric tridiagonal,
/// M positive definite): bisection on the inertia count for the values,
/// shifted inverse iteration with M-orthogonalization for the vectors.
/// Throws NumericsError when the iteration budget is exhausted.
std::vector<EigenPair> smallest_eigenpairs(const SymTridiag& a, const SymTridiag& m,
                                           int k, const EigsOptions& opt = {});

/// LU factorization with partial pivoting of a general tridiagonal matrix,
/// real or complex scalar. Layout matches the usual (dl, d, du) bands; the
/// factorization adds one fill-in band.
template <class T>
class TridiagLU {
 public:
  TridiagLU(std::vector<T> dl, std::vector<T> d, std::vector<T> du);

  void solve(std::vector<T>& rhs) const;
  int size() const { return static_cast<int>(d_.size()); }

 private:
  std::vector<T> dl_, d_, du_, du2_;
  std::vector<int> piv_;
};

extern template class TridiagLU<double>;
extern template class TridiagLU<std::complex<double>>;

}  // namespace dpnls
