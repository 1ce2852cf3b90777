#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "dpnls/ground_state.hpp"
#include "dpnls/grid.hpp"
#include "dpnls/params.hpp"
#include "dpnls/qfunction.hpp"
#include "dpnls/tridiag.hpp"

namespace dpnls {

enum class OperatorKind { Hgamma, L1, L2 };

std::string to_string(OperatorKind k);

/// Piecewise-linear (P1) discretization of the quadratic form
///   a(u,v) = int u'v' - (1/gamma)(u(0+)-u(0-))(v(0+)-v(0-)) + int (omega+V) uv
/// on the two half-lines with homogeneous Dirichlet conditions at +-L,
/// paired with the P1 mass matrix for the generalized eigenproblem.
/// Unknown ordering keeps 0^- and 0^+ adjacent, so both matrices are
/// tridiagonal and symmetric by construction.
struct DiscreteOperator {
  Grid grid;
  OperatorKind kind = OperatorKind::Hgamma;
  double omega = 0.0;
  SymTridiag a;
  SymTridiag mass;

  int unknowns() const { return 2 * grid.n_per_side; }
};

/// Assembly from a potential sampled at the grid nodes (P1-interpolated in
/// the weighted mass term).
DiscreteOperator discretize_form(const ModelParams& params, double omega,
                                 const std::vector<double>& potential_nodes,
                                 const Grid& grid);

/// Assembly from a callable potential, integrated element-wise with an 8-point
/// Gauss rule (exact to rounding for the smooth sech^2 wells used here, so the
/// Rayleigh-Ritz one-sided eigenvalue bounds survive discretization).
DiscreteOperator discretize_form(const ModelParams& params, double omega,
                                 const std::function<double(double)>& potential,
                                 const Grid& grid, OperatorKind kind);

/// The defect Hamiltonian form (zero potential), shifted by omega.
DiscreteOperator build_hgamma(const ModelParams& params, const Grid& grid,
                              double omega = 0.0);

/// Linearization blocks around a stationary state: potential
/// -(2mu+1) lambda |psi|^{2mu} for which = 1, -lambda |psi|^{2mu} for
/// which = 2, written as exact sech^2 wells located by the state's branch
/// solution. Throws GridMismatchError if the state lives on another grid.
DiscreteOperator build_L(const ModelParams& params, double omega,
                         const GroundState& state, int which);
DiscreteOperator build_L(const ModelParams& params, double omega,
                         const GroundState& state, int which, const Grid& grid);

/// Eigenvalue summary of a discretized operator. n_negative counts pencil
/// eigenvalues below -tol by exact inertia; near_zero lists computed
/// eigenvalues inside [-tol, tol]; tol = 1e-6 * max(|omega|, 1).
struct SpectralReport {
  OperatorKind kind;
  Grid grid;
  double tol;
  int n_negative;
  std::vector<double> near_zero;
  std::vector<EigenPair> lowest_pairs;
};

SpectralReport spectral_report(const DiscreteOperator& op, int k);

/// Zero-mode candidate of the symmetric-state linearization:
/// tanh(mu sqrt(omega)(|x|+y)) sech^{1/mu}(mu sqrt(omega)(|x|+y)); an actual
/// kernel vector exactly at omega_star.
QFunction xi_kernel_vector(const ModelParams& params, double omega,
                           const Grid& grid);

/// x^T A x of a sampled (real-valued) function, Dirichlet values dropped.
double form_value(const DiscreteOperator& op, const QFunction& f);

/// Interior unknowns <-> grid embedding (zeros at +-L).
std::vector<double> qfunction_to_unknowns(const QFunction& f);
QFunction unknowns_to_qfunction(const Grid& grid, const std::vector<double>& u);

/// |<a,b>_M| / (||a||_M ||b||_M).
double cosine_similarity(const std::vector<double>& a, const std::vector<double>& b,
                         const SymTridiag& mass);

void report_to_json(std::ostream& os, const SpectralReport& report);

}  // namespace dpnls
