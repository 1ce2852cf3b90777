#pragma once

#include "dpnls/params.hpp"
#include "dpnls/qfunction.hpp"

namespace dpnls {

/// The conserved/variational functionals evaluated on one QFunction.
/// Identities action = energy + (omega/2) mass and
/// stilde = action - nehari/2 hold by construction.
struct FunctionalValues {
  double f_gamma;  ///< ||psi'||^2 - (1/gamma)|psi(0+)-psi(0-)|^2
  double mass;     ///< ||psi||^2
  double energy;
  double action;   ///< S_omega
  double nehari;   ///< I_omega = <S'_omega(psi), psi>
  double stilde;   ///< S_omega - I_omega/2
};

FunctionalValues functionals(const QFunction& f, const ModelParams& params,
                             double omega);

/// ||psi||^2 by the trapezoid rule per half-line.
double mass_of(const QFunction& f);
/// ||psi'||^2, finite-differenced then trapezoid per half-line.
double grad_sq(const QFunction& f);
/// ||psi||_p^p.
double lp_power(const QFunction& f, double p);

/// Pointwise defects of the stationary equation and of the delta' matching
/// conditions, from second-order stencils.
struct Residuals {
  double interior;     ///< max interior |-psi'' - lambda|psi|^{2mu}psi + omega psi|
  double match_deriv;  ///< |psi'(0+) - psi'(0-)|
  double match_jump;   ///< |psi(0+) - psi(0-) + gamma psi'(0+)|
};

Residuals stationary_residual(const QFunction& f, const ModelParams& params,
                              double omega);

}  // namespace dpnls
