#pragma once

namespace dpnls {

/// Physical parameters of the focusing NLS with an attractive delta' defect,
/// plus the two derived threshold frequencies.
///
/// omega0 = 4/gamma^2 is where the stationary branch is born; omega_star =
/// omega0*(mu+1)/mu is where the symmetric branch splits.
struct ModelParams {
  double gamma;   ///< delta' strength, > 0 (attractive)
  double lambda;  ///< nonlinearity coefficient, > 0 (focusing)
  double mu;      ///< nonlinearity power, > 0

  double omega0;
  double omega_star;
};

/// Validates and builds ModelParams. Throws ValidationError naming the
/// offending field for non-positive or non-finite input.
ModelParams make_params(double gamma, double lambda, double mu);

}  // namespace dpnls
