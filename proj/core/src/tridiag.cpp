#include "dpnls/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace dpnls {

std::vector<double> tridiag_apply(const SymTridiag& m, const std::vector<double>& x) {
  const int n = m.size();
  std::vector<double> y(n);
  for (int i = 0; i < n; ++i) {
    double v = m.d[i] * x[i];
    if (i > 0) v += m.e[i - 1] * x[i - 1];
    if (i < n - 1) v += m.e[i] * x[i + 1];
    y[i] = v;
  }
  return y;
}

double quadratic_form(const SymTridiag& m, const std::vector<double>& x) {
  const int n = m.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    s += m.d[i] * x[i] * x[i];
    if (i < n - 1) s += 2.0 * m.e[i] * x[i] * x[i + 1];
  }
  return s;
}

namespace {

// LDL^T sweep of A - sigma M; returns false on exact breakdown.
bool ldl_negative_count(const SymTridiag& a, const SymTridiag& m, double sigma,
                        int* count) {
  const int n = a.size();
  int neg = 0;
  double dprev = 0.0;
  for (int i = 0; i < n; ++i) {
    double di = a.d[i] - sigma * m.d[i];
    if (i > 0) {
      double bi = a.e[i - 1] - sigma * m.e[i - 1];
      di -= bi * bi / dprev;
    }
    if (di == 0.0) return false;
    if (di < 0.0) ++neg;
    dprev = di;
  }
  *count = neg;
  return true;
}

double m_inner(const SymTridiag& m, const std::vector<double>& x,
               const std::vector<double>& y) {
  const int n = m.size();
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    double mv = m.d[i] * y[i];
    if (i > 0) mv += m.e[i - 1] * y[i - 1];
    if (i < n - 1) mv += m.e[i] * y[i + 1];
    s += x[i] * mv;
  }
  return s;
}

double norm2(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

int count_below(const SymTridiag& a, const SymTridiag& m, double sigma) {
  int count = 0;
  double shift = sigma;
  for (int attempt = 0; attempt < 8; ++attempt) {
    if (ldl_negative_count(a, m, shift, &count)) return count;
    shift += (1.0 + std::abs(sigma)) * 1e-14 * (attempt + 1);
  }
  throw NumericsError("count_below: persistent LDL^T breakdown");
}

std::vector<EigenPair> smallest_eigenpairs(const SymTridiag& a, const SymTridiag& m,
                                           int k, const EigsOptions& opt) {
  const int n = a.size();
  if (k < 1 || k > n) throw ValidationError("smallest_eigenpairs: bad k");

  // crude spectral magnitude of the pencil for the initial brackets
  double mass_floor = m.d[0];
  double amax = 0.0;
  for (int i = 0; i < n; ++i) {
    double row_m = m.d[i] - (i > 0 ? std::abs(m.e[i - 1]) : 0.0) -
                   (i < n - 1 ? std::abs(m.e[i]) : 0.0);
    mass_floor = std::min(mass_floor, row_m);
    double row_a = std::abs(a.d[i]) + (i > 0 ? std::abs(a.e[i - 1]) : 0.0) +
                   (i < n - 1 ? std::abs(a.e[i]) : 0.0);
    amax = std::max(amax, row_a);
  }
  if (!(mass_floor > 0.0))
    throw ValidationError("smallest_eigenpairs: mass matrix not diagonally dominant");
  double scale = amax / mass_floor + 1.0;

  double lo = -scale;
  while (count_below(a, m, lo) > 0) lo *= 2.0;
  double hi = scale;
  while (count_below(a, m, hi) < k) hi *= 2.0;

  // bisection on the inertia count for each of the k smallest values
  std::vector<double> values(k);
  double left = lo;
  for (int j = 1; j <= k; ++j) {
    double x0 = left, x1 = hi;
    while (x1 - x0 > opt.bisect_tol * (1.0 + std::abs(x0) + std::abs(x1))) {
      double mid = 0.5 * (x0 + x1);
      if (count_below(a, m, mid) >= j)
        x1 = mid;
      else
        x0 = mid;
    }
    values[j - 1] = 0.5 * (x0 + x1);
    left = x0;  // the next eigenvalue cannot be to the left of this one
  }

  // inverse iteration, M-orthogonalized against the pairs already found
  double mmax = 0.0;
  for (int i = 0; i < n; ++i) {
    double row_m = m.d[i] + (i > 0 ? std::abs(m.e[i - 1]) : 0.0) +
                   (i < n - 1 ? std::abs(m.e[i]) : 0.0);
    mmax = std::max(mmax, row_m);
  }
  std::vector<EigenPair> pairs;
  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int j = 0; j < k; ++j) {
    double lam = values[j];
    double shift = lam + (1.0 + std::abs(lam)) * 1e-11;
    std::vector<double> dl(n > 1 ? n - 1 : 0), dg(n), du(n > 1 ? n - 1 : 0);
    for (int i = 0; i < n; ++i) dg[i] = a.d[i] - shift * m.d[i];
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = a.e[i] - shift * m.e[i];
    TridiagLU<double> lu(dl, dg, du);

    std::vector<double> x(n);
    for (double& v : x) v = unif(rng);
    double rq = lam;
    bool converged = false;
    for (int it = 0; it < opt.max_invit; ++it) {
      std::vector<double> rhs = tridiag_apply(m, x);
      lu.solve(rhs);
      x.swap(rhs);
      for (const EigenPair& p : pairs) {
        double c = m_inner(m, p.vector, x);
        for (int i = 0; i < n; ++i) x[i] -= c * p.vector[i];
      }
      double nm = std::sqrt(std::max(m_inner(m, x, x), 1e-300));
      for (double& v : x) v /= nm;
      rq = quadratic_form(a, x);  // x^T M x = 1
      std::vector<double> ax = tridiag_apply(a, x);
      std::vector<double> mx = tridiag_apply(m, x);
      double rnorm = 0.0;
      for (int i = 0; i < n; ++i) {
        double ri = ax[i] - rq * mx[i];
        rnorm += ri * ri;
      }
      rnorm = std::sqrt(rnorm);
      // backward error relative to the matrix scale; the eigenvector error is
      // this divided by the spectral gap
      double denom = (amax + std::abs(rq) * mmax) * norm2(x) + 1e-300;
      if (rnorm <= opt.residual_tol * denom) {
        converged = true;
        break;
      }
    }
    if (!converged)
      throw NumericsError("smallest_eigenpairs: inverse iteration budget exhausted");
    if (x[0] < 0.0 || (x[0] == 0.0 && x[n / 2] < 0.0))
      for (double& v : x) v = -v;  // deterministic sign
    pairs.push_back(EigenPair{rq, std::move(x)});
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair& p, const EigenPair& q) { return p.value < q.value; });
  return pairs;
}

template <class T>
TridiagLU<T>::TridiagLU(std::vector<T> dl, std::vector<T> d, std::vector<T> du)
    : dl_(std::move(dl)), d_(std::move(d)), du_(std::move(du)) {
  const int n = static_cast<int>(d_.size());
  if (static_cast<int>(dl_.size()) != std::max(n - 1, 0) ||
      static_cast<int>(du_.size()) != std::max(n - 1, 0))
    throw ValidationError("TridiagLU: inconsistent band lengths");
  du2_.assign(n > 2 ? n - 2 : 0, T(0));
  piv_.assign(n, 0);
  // row-pivoting LU, one fill-in band (same scheme as the textbook gttrf)
  for (int i = 0; i < n - 1; ++i) {
    piv_[i] = i;
    if (std::abs(d_[i]) >= std::abs(dl_[i])) {
      if (d_[i] == T(0)) throw NumericsError("TridiagLU: singular matrix");
      T mult = dl_[i] / d_[i];
      dl_[i] = mult;
      d_[i + 1] -= mult * du_[i];
      if (i < n - 2) du2_[i] = T(0);
    } else {
      T mult = d_[i] / dl_[i];
      piv_[i] = i + 1;
      d_[i] = dl_[i];
      dl_[i] = mult;
      T tmp = du_[i];
      du_[i] = d_[i + 1];
      d_[i + 1] = tmp - mult * d_[i + 1];
      if (i < n - 2) {
        du2_[i] = du_[i + 1];
        du_[i + 1] = -mult * du_[i + 1];
      }
    }
  }
  if (n > 0) {
    piv_[n - 1] = n - 1;
    if (d_[n - 1] == T(0)) throw NumericsError("TridiagLU: singular matrix");
  }
}

template <class T>
void TridiagLU<T>::solve(std::vector<T>& b) const {
  const int n = size();
  if (static_cast<int>(b.size()) != n)
    throw ValidationError("TridiagLU::solve: size mismatch");
  for (int i = 0; i < n - 1; ++i) {
    if (piv_[i] == i) {
      b[i + 1] -= dl_[i] * b[i];
    } else {
      T tmp = b[i];
      b[i] = b[i + 1];
      b[i + 1] = tmp - dl_[i] * b[i];
    }
  }
  for (int i = n - 1; i >= 0; --i) {
    T v = b[i];
    if (i < n - 1) v -= du_[i] * b[i + 1];
    if (i < n - 2) v -= du2_[i] * b[i + 2];
    b[i] = v / d_[i];
  }
}

template class TridiagLU<double>;
template class TridiagLU<std::complex<double>>;

}  // namespace dpnls
