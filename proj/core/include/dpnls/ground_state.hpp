#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dpnls/functionals.hpp"
#include "dpnls/params.hpp"
#include "dpnls/qfunction.hpp"

namespace dpnls {

enum class Branch { Symmetric, AsymmetricLeft, AsymmetricRight };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

/// A solution of the two-hump matching system. t1 belongs to the left piece,
/// t2 to the right one; y_i = atanh(t_i)/(mu sqrt(omega)) are the distances of
/// the (virtual) hump centers from the defect, with centers x1 = y1 > 0 and
/// x2 = -y2 < 0.
struct TSolution {
  double t1 = 0.0;
  double t2 = 0.0;
  Branch branch = Branch::Symmetric;
  double y1 = 0.0;
  double y2 = 0.0;

  double x1() const { return y1; }
  double x2() const { return -y2; }
};

/// f(t) = t^{2mu} - t^{2mu+2} = t^{2mu}(1-t^2); the two hump traces must share
/// this value.
double f_poly(double mu, double t);
/// Location sqrt(mu/(mu+1)) of the maximum of f_poly.
double t_bar(double mu);
/// Maximum value mu^mu/(mu+1)^{mu+1} of f_poly.
double f_max(double mu);

/// Symmetric solution t1 = t2 = 2/(gamma sqrt(omega)); requires omega > omega0.
TSolution solve_symmetric(const ModelParams& params, double omega);

/// w(x) = ((a^2-1)x^2 - 2ax + 1)/((ax-1)^{2mu+2}) + x^2 - 1; its unique zero in
/// (2/a, 1] gives the asymmetric t2. Requires x > 1/a.
double w_function(double mu, double a, double x);

/// The two mirror asymmetric solutions, for omega > omega_star. The root of
/// w_function is located as an offset from the symmetric value 2/(gamma
/// sqrt(omega)) (where w has its trivial zero), evaluated in extended
/// precision; the pair is well conditioned arbitrarily close to the branch
/// point.
std::pair<TSolution, TSolution> solve_asymmetric(const ModelParams& params,
                                                 double omega);

/// (|f(t1)-f(t2)|, |1/t1 + 1/t2 - gamma sqrt(omega)|).
std::pair<double, double> tsystem_residual(const ModelParams& params, double omega,
                                           const TSolution& sol);

struct GroundState {
  ModelParams params;
  double omega = 0.0;
  TSolution tsol;
  QFunction profile;
  FunctionalValues values;
  Residuals residuals;
};

struct GroundStateResult {
  GroundState ground;
  /// Present for omega > omega_star: the continued symmetric stationary state,
  /// which is no longer the action minimizer there.
  std::optional<GroundState> continued_symmetric;
};

/// Assembles and evaluates the stationary state for a given branch solution.
GroundState stationary_state(const ModelParams& params, double omega,
                             const TSolution& sol, const Grid& grid);

/// The action minimizer at the given frequency (omega > omega0): symmetric up
/// to omega_star, asymmetric beyond it, where the continued symmetric state is
/// returned alongside. Verifies the action ordering numerically.
GroundStateResult ground_state(const ModelParams& params, double omega,
                               const Grid& grid);

/// q(t) = int_{phi(t)}^{t} (1-v^2)^{1/mu} dv with phi(t) = -t/(gamma
/// sqrt(omega) t - 1); stationary in t exactly at matching-system solutions.
double q_function(const ModelParams& params, double omega, double t);

/// Closed form of q'' at the symmetric point 2/(gamma sqrt(omega)):
/// (2/(gamma sqrt(omega))) (1 - 4/(gamma^2 omega))^{1/mu - 1}
/// (gamma^2 omega - 4(mu+1)/mu). Positive exactly when omega > omega_star.
double q_second_at_symmetric(const ModelParams& params, double omega);

/// Branch action/mass from the quadrature closed forms (no grid).
double action_closed_form(const ModelParams& params, double omega,
                          const TSolution& sol);
double mass_closed_form(const ModelParams& params, double omega,
                        const TSolution& sol);

struct ScanRow {
  double omega;
  Branch branch;
  double t1, t2;
  double action;
  double mass;
  std::string verdict;
};

/// One row per branch existing at each frequency; omega column monotone.
/// Points are distributed linearly or logarithmically over
/// [omega_min, omega_max] and evaluated by a bounded worker pool.
std::vector<ScanRow> bifurcation_scan(const ModelParams& params, double omega_min,
                                      double omega_max, int n_points,
                                      bool log_spacing = false, int max_threads = 0);

void scan_to_csv(std::ostream& os, const std::vector<ScanRow>& rows);
void scan_to_json(std::ostream& os, const ModelParams& params,
                  const std::vector<ScanRow>& rows);

}  // namespace dpnls
