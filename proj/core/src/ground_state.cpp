#include "dpnls/ground_state.hpp"

#include <cmath>
#include <sstream>

#include "dpnls/errors.hpp"
#include "dpnls/io.hpp"
#include "dpnls/profiles.hpp"
#include "dpnls/quadrature.hpp"
#include "dpnls/rootfind.hpp"

namespace dpnls {

std::string to_string(Branch b) {
  switch (b) {
    case Branch::Symmetric: return "symmetric";
    case Branch::AsymmetricLeft: return "asymmetric-left";
    case Branch::AsymmetricRight: return "asymmetric-right";
  }
  return "?";
}

Branch branch_from_string(const std::string& s) {
  if (s == "symmetric") return Branch::Symmetric;
  if (s == "asymmetric-left" || s == "asymmetric") return Branch::AsymmetricLeft;
  if (s == "asymmetric-right") return Branch::AsymmetricRight;
  throw ValidationError("unknown branch '" + s + "'");
}

double f_poly(double mu, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw OutOfRangeError("f_poly: t must lie in [0, 1]");
  return std::pow(t, 2.0 * mu) * (1.0 - t) * (1.0 + t);
}

double t_bar(double mu) { return std::sqrt(mu / (mu + 1.0)); }

double f_max(double mu) {
  return std::pow(mu, mu) / std::pow(mu + 1.0, mu + 1.0);
}

namespace {

double center_from_t(double mu, double omega, double t) {
  return std::atanh(t) / (mu * std::sqrt(omega));
}

long double w_ld(double mu, long double a, long double x) {
  long double num = (a * a - 1.0L) * x * x - 2.0L * a * x + 1.0L;
  long double den = std::pow(a * x - 1.0L, 2.0L * (long double)mu + 2.0L);
  return num / den + x * x - 1.0L;
}

}  // namespace

TSolution solve_symmetric(const ModelParams& params, double omega) {
  if (!(omega > params.omega0))
    throw OutOfRangeError("omega must exceed omega0 = " + fmt17(params.omega0));
  const double t = 2.0 / (params.gamma * std::sqrt(omega));
  const double y = center_from_t(params.mu, omega, t);
  return TSolution{t, t, Branch::Symmetric, y, y};
}

double w_function(double mu, double a, double x) {
  if (!(a > 0.0) || !(x > 1.0 / a))
    throw OutOfRangeError("w_function: requires x > 1/a");
  return static_cast<double>(w_ld(mu, a, x));
}

std::pair<TSolution, TSolution> solve_asymmetric(const ModelParams& params,
                                                 double omega) {
  if (!(omega > params.omega_star))
    throw OutOfRangeError("omega must exceed omega_star = " +
                          fmt17(params.omega_star));
  const double mu = params.mu;
  const long double a = (long double)params.gamma * std::sqrt((long double)omega);
  const long double t_sym = 2.0L / a;

  // w vanishes identically at the symmetric point and its other zero in
  // (2/a, 1] merges into it at the branch point, so solve for the offset
  // delta = t2 - 2/a in extended precision.
  auto g = [&](long double delta) { return w_ld(mu, a, t_sym + delta); };
  const long double d_hi = 1.0L - t_sym;
  long double d_lo = d_hi * 1e-18L;
  long double g_lo = g(d_lo);
  for (int i = 0; i < 40 && !(g_lo < 0.0L); ++i) {
    d_lo *= 16.0L;
    g_lo = g(d_lo);
  }
  if (!(g_lo < 0.0L))
    throw BracketError("solve_asymmetric: no sign change next to the symmetric root");
  long double g_hi = g(d_hi);  // w(1) > 0
  const long double delta =
      find_root(g, d_lo, d_hi, g_lo, g_hi, (long double)1e-20L, 300);

  const long double t2l = t_sym + delta;
  const long double t1l = 1.0L / (a - 1.0L / t2l);
  const double t1 = static_cast<double>(t1l);
  const double t2 = static_cast<double>(t2l);
  const double y1 = center_from_t(mu, omega, t1);
  const double y2 = center_from_t(mu, omega, t2);

  // t1 < t2: small trace on the right, hump mass on the left
  TSolution left{t1, t2, Branch::AsymmetricLeft, y1, y2};
  TSolution right{t2, t1, Branch::AsymmetricRight, y2, y1};

  auto res = tsystem_residual(params, omega, left);
  if (res.first > 1e-10 || res.second > 1e-10)
    throw NumericsError("solve_asymmetric: system residual above tolerance");
  return {left, right};
}

std::pair<double, double> tsystem_residual(const ModelParams& params, double omega,
                                           const TSolution& sol) {
  double r1 = std::abs(f_poly(params.mu, sol.t1) - f_poly(params.mu, sol.t2));
  double r2 = std::abs(1.0 / sol.t1 + 1.0 / sol.t2 -
                       params.gamma * std::sqrt(omega));
  return {r1, r2};
}

GroundState stationary_state(const ModelParams& params, double omega,
                             const TSolution& sol, const Grid& grid) {
  GroundState s;
  s.params = params;
  s.omega = omega;
  s.tsol = sol;
  s.profile = assemble_profile(params, omega, sol.x1(), sol.x2(), 0.0, grid);
  s.values = functionals(s.profile, params, omega);
  s.residuals = stationary_residual(s.profile, params, omega);
  return s;
}

GroundStateResult ground_state(const ModelParams& params, double omega,
                               const Grid& grid) {
  if (!(omega > params.omega0))
    throw OutOfRangeError("omega must exceed omega0 = " + fmt17(params.omega0));

  GroundStateResult result;
  if (omega <= params.omega_star) {
    result.ground = stationary_state(params, omega, solve_symmetric(params, omega),
                                     grid);
    return result;
  }
  auto [left, right] = solve_asymmetric(params, omega);
  (void)right;  // the mirror state carries the same functionals
  result.ground = stationary_state(params, omega, left, grid);
  result.continued_symmetric =
      stationary_state(params, omega, solve_symmetric(params, omega), grid);
  if (!(result.ground.values.action < result.continued_symmetric->values.action))
    throw NumericsError("ground_state: asymmetric action is not below symmetric");
  return result;
}

double q_function(const ModelParams& params, double omega, double t) {
  const double a = params.gamma * std::sqrt(omega);
  if (a * t == 1.0) throw OutOfRangeError("q_function: t = 1/(gamma sqrt(omega))");
  const double phi = -t / (a * t - 1.0);
  if (phi < -1.0 || phi > 1.0 || t > 1.0)
    throw OutOfRangeError("q_function: integrand leaves [-1, 1]");
  const double alpha = 1.0 / params.mu;
  // int_phi^t = int_phi^1 - int_t^1
  return power_integral(alpha, phi) - power_integral(alpha, t);
}

double q_second_at_symmetric(const ModelParams& params, double omega) {
  // (2/a)(1 - 4/a^2)^{1/mu - 1}(a^2 - 4(mu+1)/mu) with a = gamma sqrt(omega);
  // agrees with central differences of q_function for every mu, and is
  // positive exactly when omega > omega_star.
  const double g2w = params.gamma * params.gamma * omega;
  return (2.0 / (params.gamma * std::sqrt(omega))) *
         std::pow(1.0 - 4.0 / g2w, 1.0 / params.mu - 1.0) *
         (g2w - 4.0 * (params.mu + 1.0) / params.mu);
}

double action_closed_form(const ModelParams& params, double omega,
                          const TSolution& sol) {
  const double mu = params.mu;
  const double pref = std::pow(omega, 0.5 + 1.0 / mu) *
                      std::pow(mu + 1.0, 1.0 / mu) /
                      (2.0 * std::pow(params.lambda, 1.0 / mu));
  return pref * (power_integral(1.0 / mu, sol.t1) + power_integral(1.0 / mu, sol.t2));
}

double mass_closed_form(const ModelParams& params, double omega,
                        const TSolution& sol) {
  const double mu = params.mu;
  const double pref = std::pow((mu + 1.0) / params.lambda, 1.0 / mu) *
                      std::pow(omega, 1.0 / mu - 0.5) / mu;
  return pref *
         (power_integral(1.0 / mu - 1.0, sol.t1) +
          power_integral(1.0 / mu - 1.0, sol.t2));
}

}  // namespace dpnls
