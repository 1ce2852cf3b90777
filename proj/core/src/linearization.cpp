#include "dpnls/linearization.hpp"

#include <cmath>
#include <ostream>

#include "dpnls/errors.hpp"
#include "dpnls/io.hpp"

#include "json.hpp"

namespace dpnls {

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::Hgamma: return "H_gamma";
    case OperatorKind::L1: return "L1";
    case OperatorKind::L2: return "L2";
  }
  return "?";
}

namespace {

// Unknown ordering: [left nodes 1..n | right nodes 0..n-1]; +-L are Dirichlet.
// 0^- sits at unknown n-1 and 0^+ at unknown n, so every coupling (elementwise
// and the delta' border term) is tridiagonal.

void add_stiffness_and_border(const ModelParams& params, const Grid& grid,
                              SymTridiag* a) {
  const int n = grid.n_per_side;
  const double inv_h = 1.0 / grid.h();
  // left side: elements j = 1..n touch unknowns j-1, j (node index j = unknown j-1)
  for (int j = 1; j <= n; ++j) {
    int u = j - 1;
    a->d[u] += inv_h;
    if (j > 1) {
      a->d[u - 1] += inv_h;
      a->e[u - 1] += -inv_h;
    }
  }
  // right side: elements j = 0..n-1 touch unknowns n+j, n+j+1 (the last one is
  // the Dirichlet node at +L)
  for (int j = 0; j < n; ++j) {
    int u = n + j;
    a->d[u] += inv_h;
    if (j < n - 1) {
      a->d[u + 1] += inv_h;
      a->e[u] += -inv_h;
    }
  }
  // delta' border term: -(1/gamma)|u(0+)-u(0-)|^2
  const double ginv = 1.0 / params.gamma;
  a->d[n - 1] -= ginv;
  a->d[n] -= ginv;
  a->e[n - 1] += ginv;
}

// weight w(x): element contributions of int w(x) u v with u, v piecewise linear
template <class ElementRule>
void add_weighted_mass(const Grid& grid, SymTridiag* a, ElementRule&& element) {
  const int n = grid.n_per_side;
  double m00, m01, m11;
  for (int j = 1; j <= n; ++j) {  // left element [x_{j-1}, x_j]
    element(grid.x_left(j - 1), grid.x_left(j), &m00, &m01, &m11);
    int u = j - 1;
    a->d[u] += m11;
    if (j > 1) {
      a->d[u - 1] += m00;
      a->e[u - 1] += m01;
    }
  }
  for (int j = 0; j < n; ++j) {  // right element [x_j, x_{j+1}]
    element(grid.x_right(j), grid.x_right(j + 1), &m00, &m01, &m11);
    int u = n + j;
    a->d[u] += m00;
    if (j < n - 1) {
      a->d[u + 1] += m11;
      a->e[u] += m01;
    }
  }
}

SymTridiag consistent_mass(const Grid& grid) {
  SymTridiag m;
  const int nu = 2 * grid.n_per_side;
  m.d.assign(nu, 0.0);
  m.e.assign(nu - 1, 0.0);
  const double h = grid.h();
  add_weighted_mass(grid, &m, [&](double, double, double* m00, double* m01,
                                  double* m11) {
    *m00 = *m11 = h / 3.0;
    *m01 = h / 6.0;
  });
  return m;
}

SymTridiag zero_like(const Grid& grid) {
  SymTridiag a;
  const int nu = 2 * grid.n_per_side;
  a.d.assign(nu, 0.0);
  a.e.assign(nu - 1, 0.0);
  return a;
}

// 8-point Gauss rule on [0,1] for the element potential integrals
struct G8 {
  double x[8], w[8];
};
const G8& g8() {
  static const G8 r = [] {
    // nodes/weights of P8 on [-1,1], mapped to [0,1]
    const double xs[4] = {0.1834346424956498, 0.5255324099163290,
                          0.7966664774136267, 0.9602898564975363};
    const double ws[4] = {0.3626837833783620, 0.3137066458778873,
                          0.2223810344533745, 0.1012285362903763};
    G8 g;
    for (int i = 0; i < 4; ++i) {
      g.x[i] = 0.5 * (1.0 - xs[3 - i]);
      g.x[7 - i] = 0.5 * (1.0 + xs[3 - i]);
      g.w[i] = g.w[7 - i] = 0.5 * ws[3 - i];
    }
    return g;
  }();
  return r;
}

}  // namespace

DiscreteOperator discretize_form(const ModelParams& params, double omega,
                                 const std::function<double(double)>& potential,
                                 const Grid& grid, OperatorKind kind) {
  DiscreteOperator op;
  op.grid = grid;
  op.kind = kind;
  op.omega = omega;
  op.mass = consistent_mass(grid);
  op.a = zero_like(grid);
  add_stiffness_and_border(params, grid, &op.a);
  for (int i = 0; i < op.a.size(); ++i) op.a.d[i] += omega * op.mass.d[i];
  for (int i = 0; i + 1 < op.a.size(); ++i) op.a.e[i] += omega * op.mass.e[i];
  if (potential) {
    const G8& g = g8();
    add_weighted_mass(grid, &op.a, [&](double xa, double xb, double* m00,
                                       double* m01, double* m11) {
      const double h = xb - xa;
      double s00 = 0.0, s01 = 0.0, s11 = 0.0;
      for (int q = 0; q < 8; ++q) {
        double s = g.x[q];
        double v = potential(xa + s * h) * g.w[q];
        s00 += v * (1.0 - s) * (1.0 - s);
        s01 += v * (1.0 - s) * s;
        s11 += v * s * s;
      }
      *m00 = h * s00;
      *m01 = h * s01;
      *m11 = h * s11;
    });
  }
  return op;
}

DiscreteOperator discretize_form(const ModelParams& params, double omega,
                                 const std::vector<double>& potential_nodes,
                                 const Grid& grid) {
  if (static_cast<int>(potential_nodes.size()) != grid.total_nodes())
    throw GridMismatchError("discretize_form: potential sample count != grid nodes");
  DiscreteOperator op;
  op.grid = grid;
  op.kind = OperatorKind::Hgamma;
  op.omega = omega;
  op.mass = consistent_mass(grid);
  op.a = zero_like(grid);
  add_stiffness_and_border(params, grid, &op.a);
  for (int i = 0; i < op.a.size(); ++i) op.a.d[i] += omega * op.mass.d[i];
  for (int i = 0; i + 1 < op.a.size(); ++i) op.a.e[i] += omega * op.mass.e[i];

  // P1-interpolated potential: closed-form element integrals
  const int n = grid.n_per_side;
  auto node_value = [&](bool left_side, int j) {
    return potential_nodes[left_side ? j : grid.index_zero_plus() + j];
  };
  const double h = grid.h();
  auto element = [&](double va, double vb, double* m00, double* m01, double* m11) {
    *m00 = h * (3.0 * va + vb) / 12.0;
    *m01 = h * (va + vb) / 12.0;
    *m11 = h * (va + 3.0 * vb) / 12.0;
  };
  double m00, m01, m11;
  for (int j = 1; j <= n; ++j) {
    element(node_value(true, j - 1), node_value(true, j), &m00, &m01, &m11);
    int u = j - 1;
    op.a.d[u] += m11;
    if (j > 1) {
      op.a.d[u - 1] += m00;
      op.a.e[u - 1] += m01;
    }
  }
  for (int j = 0; j < n; ++j) {
    element(node_value(false, j), node_value(false, j + 1), &m00, &m01, &m11);
    int u = n + j;
    op.a.d[u] += m00;
    if (j < n - 1) {
      op.a.d[u + 1] += m11;
      op.a.e[u] += m01;
    }
  }
  return op;
}

DiscreteOperator build_hgamma(const ModelParams& params, const Grid& grid,
                              double omega) {
  return discretize_form(params, omega, std::function<double(double)>(), grid,
                         OperatorKind::Hgamma);
}

DiscreteOperator build_L(const ModelParams& params, double omega,
                         const GroundState& state, int which, const Grid& grid) {
  if (!(state.profile.grid == grid))
    throw GridMismatchError("build_L: state profile lives on another grid");
  if (which != 1 && which != 2) throw ValidationError("build_L: which must be 1 or 2");

  // lambda |psi|^{2mu} = (mu+1) omega sech^2(mu sqrt(omega)(x - center)) per side
  const double mu = params.mu;
  const double depth = (which == 1 ? (2.0 * mu + 1.0) : 1.0) * (mu + 1.0) * omega;
  const double k = mu * std::sqrt(omega);
  const double c_left = state.tsol.x1();
  const double c_right = state.tsol.x2();
  auto sech2 = [](double z) {
    double e = std::exp(-std::abs(z));
    double s = 2.0 * e / (1.0 + e * e);
    return s * s;
  };
  auto potential = [=](double x) {
    double c = x < 0.0 ? c_left : c_right;
    return -depth * sech2(k * (x - c));
  };
  return discretize_form(params, omega, potential, grid,
                         which == 1 ? OperatorKind::L1 : OperatorKind::L2);
}

DiscreteOperator build_L(const ModelParams& params, double omega,
                         const GroundState& state, int which) {
  return build_L(params, omega, state, which, state.profile.grid);
}

SpectralReport spectral_report(const DiscreteOperator& op, int k) {
  if (k < 1) throw ValidationError("spectral_report: k must be positive");
  SpectralReport rep;
  rep.kind = op.kind;
  rep.grid = op.grid;
  rep.tol = 1e-6 * std::max(std::abs(op.omega), 1.0);
  rep.n_negative = count_below(op.a, op.mass, -rep.tol);
  rep.lowest_pairs = smallest_eigenpairs(op.a, op.mass, k);
  for (const EigenPair& p : rep.lowest_pairs)
    if (std::abs(p.value) <= rep.tol) rep.near_zero.push_back(p.value);
  return rep;
}

QFunction xi_kernel_vector(const ModelParams& params, double omega,
                           const Grid& grid) {
  TSolution sym = solve_symmetric(params, omega);
  const double k = params.mu * std::sqrt(omega);
  const double p = 1.0 / params.mu;
  auto xi = [&](double x) {
    double z = k * (std::abs(x) + sym.y1);
    double e = std::exp(-z);
    double sech = 2.0 * e / (1.0 + e * e);
    return std::tanh(z) * std::pow(sech, p);
  };
  QFunction f = zero_function(grid);
  for (int j = 0; j <= grid.n_per_side; ++j) {
    f.left(j) = xi(grid.x_left(j));
    f.right(j) = xi(grid.x_right(j));
  }
  return f;
}

std::vector<double> qfunction_to_unknowns(const QFunction& f) {
  const int n = f.grid.n_per_side;
  std::vector<double> u(2 * n);
  for (int j = 1; j <= n; ++j) u[j - 1] = f.left(j).real();
  for (int j = 0; j < n; ++j) u[n + j] = f.right(j).real();
  return u;
}

QFunction unknowns_to_qfunction(const Grid& grid, const std::vector<double>& u) {
  const int n = grid.n_per_side;
  if (static_cast<int>(u.size()) != 2 * n)
    throw GridMismatchError("unknowns_to_qfunction: size mismatch");
  QFunction f = zero_function(grid);
  for (int j = 1; j <= n; ++j) f.left(j) = u[j - 1];
  for (int j = 0; j < n; ++j) f.right(j) = u[n + j];
  return f;
}

double form_value(const DiscreteOperator& op, const QFunction& f) {
  if (!(f.grid == op.grid)) throw GridMismatchError("form_value: grid mismatch");
  return quadratic_form(op.a, qfunction_to_unknowns(f));
}

double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b,
                         const SymTridiag& mass) {
  auto mb = tridiag_apply(mass, b);
  auto ma = tridiag_apply(mass, a);
  double ab = 0.0, aa = 0.0, bb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    ab += a[i] * mb[i];
    aa += a[i] * ma[i];
    bb += b[i] * mb[i];
  }
  return std::abs(ab) / std::sqrt(aa * bb);
}

void report_to_json(std::ostream& os, const SpectralReport& rep) {
  nlohmann::json j;
  j["kind"] = to_string(rep.kind);
  j["tol"] = rep.tol;
  j["n_negative"] = rep.n_negative;
  j["near_zero"] = rep.near_zero;
  std::vector<double> values;
  for (const auto& p : rep.lowest_pairs) values.push_back(p.value);
  j["eigenvalues"] = values;
  j["grid"]["L"] = rep.grid.half_length;
  j["grid"]["n_per_side"] = rep.grid.n_per_side;
  os << j.dump(2) << "\n";
}

}  // namespace dpnls
