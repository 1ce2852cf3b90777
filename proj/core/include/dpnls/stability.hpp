#pragma once

#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "dpnls/ground_state.hpp"
#include "dpnls/params.hpp"

namespace dpnls {

enum class Verdict { Stable, Unstable, Indeterminate };

std::string to_string(Verdict v);

/// Outcome of the slope/eigenvalue-count stability test for one branch at one
/// frequency. Stable iff n_expected - p == 0, unstable if the difference is
/// odd; the continued symmetric branch past omega_star is unstable for either
/// sign of d''. p is -1 when d'' sits inside the dead band.
struct StabilityVerdict {
  Branch branch;
  double omega;
  double d_second;
  int n_expected;
  int p;
  Verdict verdict;
};

/// int_zeta^1 (1-t^2)^{1/mu-1} dt, relative accuracy 1e-10 or better.
/// Requires 0 <= zeta < 1.
double singular_integral(double mu, double zeta);

/// The branch solution whose traces feed the d-derivative quadratures.
TSolution branch_solution(const ModelParams& params, double omega, Branch branch);

/// d'(omega) = M(psi_omega)/2 via the closed quadrature form. Requires
/// omega > omega0 and, on the asymmetric branch, omega > omega_star.
double d_prime(const ModelParams& params, double omega, Branch branch);

/// Frequency derivatives (t1', t2') of the branch traces. Throws
/// SingularAtBifurcation when the asymmetric branch is requested within
/// 1e-8 relative of omega_star, where the formula degenerates.
std::pair<double, double> zeta_derivatives(const ModelParams& params, double omega,
                                           Branch branch);

/// The two summands of d'': (I) from the integrals, (II) from the moving
/// endpoints.
double term_I(const ModelParams& params, double omega, Branch branch);
double term_II(const ModelParams& params, double omega, Branch branch);

/// d''(omega) on the given branch (full expression, prefactor included).
double d_second(const ModelParams& params, double omega, Branch branch);

/// One-sided limits of term (II) at omega_star:
/// left  = sqrt(mu)/(mu+1)^{1/mu-1/2},
/// right = left * (5-2mu)/(4mu+5).
std::pair<double, double> term_II_limits(double mu);

/// w(mu) = lim_{omega -> omega_star+} [(I) + (II)]; its sign is the sign of
/// d'' just past the branch point.
double w_of_mu(double mu);

/// The unique zero of w in (2, 2.5), by bisection.
double mu_star();

/// GSS-style classification of one branch at one frequency. Returns
/// Indeterminate inside the omega_star exclusion zone (|omega/omega_star - 1|
/// < 1e-8) and when d'' falls in the dead band.
StabilityVerdict classify(const ModelParams& params, double omega, Branch branch);

/// Empirical stability-change frequencies on the asymmetric branch for mu > 2:
/// first and last sign change of d'' located by scanning log-spaced
/// frequencies in (omega_star, factor*omega_star] and bisecting. Empty when no
/// sign change exists in the scanned window.
struct InstabilityThresholds {
  double omega1;
  double omega2;
};
std::optional<InstabilityThresholds> instability_thresholds(
    const ModelParams& params, double omega_max_factor = 1e4, int n_scan = 400);

void verdicts_to_csv(std::ostream& os, const ModelParams& params,
                     const std::vector<StabilityVerdict>& rows);
void verdicts_to_json(std::ostream& os, const ModelParams& params,
                      const std::vector<StabilityVerdict>& rows);

}  // namespace dpnls
