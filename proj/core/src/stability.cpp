#include "dpnls/stability.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "dpnls/errors.hpp"
#include "dpnls/io.hpp"
#include "dpnls/quadrature.hpp"
#include "dpnls/rootfind.hpp"

#include "json.hpp"

namespace dpnls {

namespace {

constexpr double kBifurcationZone = 1e-8;  // |omega/omega_star - 1| below this
constexpr double kDeadBandFactor = 1e-8;   // on |d''| relative to its prefactor

double fp(double mu, double t) {  // f_poly'
  return 2.0 * std::pow(t, 2.0 * mu - 1.0) * (mu - (mu + 1.0) * t * t);
}

double one_minus_sq(double t) { return (1.0 - t) * (1.0 + t); }

double d2_prefactor(const ModelParams& p, double omega) {
  return std::pow((p.mu + 1.0) / p.lambda, 1.0 / p.mu) *
         std::pow(omega, 1.0 / p.mu - 1.5) / (2.0 * p.mu);
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Stable: return "stable";
    case Verdict::Unstable: return "unstable";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "?";
}

double singular_integral(double mu, double zeta) {
  if (!(mu > 0.0)) throw ValidationError("singular_integral: mu must be positive");
  if (!(zeta >= 0.0 && zeta < 1.0))
    throw OutOfRangeError("singular_integral: zeta must lie in [0, 1)");
  return power_integral(1.0 / mu - 1.0, zeta);
}

TSolution branch_solution(const ModelParams& params, double omega, Branch branch) {
  if (branch == Branch::Symmetric) return solve_symmetric(params, omega);
  auto [left, right] = solve_asymmetric(params, omega);
  return branch == Branch::AsymmetricLeft ? left : right;
}

double d_prime(const ModelParams& params, double omega, Branch branch) {
  return 0.5 * mass_closed_form(params, omega, branch_solution(params, omega, branch));
}

std::pair<double, double> zeta_derivatives(const ModelParams& params, double omega,
                                           Branch branch) {
  if (branch == Branch::Symmetric) {
    if (!(omega > params.omega0))
      throw OutOfRangeError("omega must exceed omega0 = " + fmt17(params.omega0));
    double zp = -1.0 / (params.gamma * std::pow(omega, 1.5));
    return {zp, zp};
  }
  if (std::abs(omega / params.omega_star - 1.0) < kBifurcationZone)
    throw SingularAtBifurcation(
        "zeta_derivatives: asymmetric branch degenerate at omega_star");
  TSolution sol = branch_solution(params, omega, branch);
  const double mu = params.mu;
  const double f1 = fp(mu, sol.t1), f2 = fp(mu, sol.t2);
  const double denom = 2.0 * std::sqrt(omega) *
                       (sol.t1 * sol.t1 * f1 + sol.t2 * sol.t2 * f2);
  const double t1t2sq = sol.t1 * sol.t1 * sol.t2 * sol.t2;
  double t1p = -params.gamma * f2 * t1t2sq / denom;
  double t2p = -params.gamma * f1 * t1t2sq / denom;
  return {t1p, t2p};
}

double term_I(const ModelParams& params, double omega, Branch branch) {
  TSolution sol = branch_solution(params, omega, branch);
  const double mu = params.mu;
  return (1.0 / mu - 0.5) * (power_integral(1.0 / mu - 1.0, sol.t1) +
                             power_integral(1.0 / mu - 1.0, sol.t2));
}

double term_II(const ModelParams& params, double omega, Branch branch) {
  TSolution sol = branch_solution(params, omega, branch);
  auto [z1p, z2p] = zeta_derivatives(params, omega, branch);
  const double e = 1.0 / params.mu - 1.0;
  return -omega * (z1p * std::pow(one_minus_sq(sol.t1), e) +
                   z2p * std::pow(one_minus_sq(sol.t2), e));
}

double d_second(const ModelParams& params, double omega, Branch branch) {
  return d2_prefactor(params, omega) *
         (term_I(params, omega, branch) + term_II(params, omega, branch));
}

std::pair<double, double> term_II_limits(double mu) {
  double left = std::sqrt(mu) / std::pow(mu + 1.0, 1.0 / mu - 0.5);
  double right = left * (5.0 - 2.0 * mu) / (4.0 * mu + 5.0);
  return {left, right};
}

double w_of_mu(double mu) {
  if (!(mu > 0.0)) throw ValidationError("w_of_mu: mu must be positive");
  return (2.0 / mu - 1.0) * singular_integral(mu, t_bar(mu)) +
         term_II_limits(mu).second;
}

double mu_star() {
  static const double value = [] {
    auto w = [](double mu) { return w_of_mu(mu); };
    return find_root(w, 2.0, 2.5, 1e-10, 200);
  }();
  return value;
}

StabilityVerdict classify(const ModelParams& params, double omega, Branch branch) {
  if (!(omega > params.omega0))
    throw OutOfRangeError("omega must exceed omega0 = " + fmt17(params.omega0));
  const bool symmetric = branch == Branch::Symmetric;
  if (!symmetric && !(omega > params.omega_star))
    throw OutOfRangeError("asymmetric branch requires omega > omega_star = " +
                          fmt17(params.omega_star));

  StabilityVerdict v{};
  v.branch = branch;
  v.omega = omega;
  v.n_expected = symmetric ? (omega > params.omega_star ? 2 : 1) : 1;
  v.p = -1;
  v.d_second = std::numeric_limits<double>::quiet_NaN();
  v.verdict = Verdict::Indeterminate;

  // the branch point itself is left open
  if (std::abs(omega / params.omega_star - 1.0) < kBifurcationZone) return v;

  v.d_second = d_second(params, omega, branch);
  const double dead_band = kDeadBandFactor * d2_prefactor(params, omega);
  if (std::abs(v.d_second) >= dead_band) v.p = v.d_second > 0.0 ? 1 : 0;

  if (symmetric && omega > params.omega_star) {
    // unstable for either sign of d''
    v.verdict = Verdict::Unstable;
    return v;
  }
  if (v.p < 0) return v;  // dead band: sign of d'' unresolved
  const int nmp = v.n_expected - v.p;
  if (nmp == 0)
    v.verdict = Verdict::Stable;
  else if (nmp % 2 != 0)
    v.verdict = Verdict::Unstable;
  return v;
}

std::optional<InstabilityThresholds> instability_thresholds(
    const ModelParams& params, double omega_max_factor, int n_scan) {
  const double lo = params.omega_star * (1.0 + 1e-6);
  const double hi = params.omega_star * omega_max_factor;
  auto sign_of = [&](double w) {
    return d_second(params, w, Branch::AsymmetricLeft) > 0.0 ? 1 : -1;
  };
  double prev_w = lo;
  int prev_s = sign_of(lo);
  double first = 0.0, last = 0.0;
  bool found = false;
  const double ratio = std::pow(hi / lo, 1.0 / (n_scan - 1));
  double w = lo;
  for (int i = 1; i < n_scan; ++i) {
    w *= ratio;
    int s = sign_of(w);
    if (s != prev_s) {
      auto g = [&](double x) { return d_second(params, x, Branch::AsymmetricLeft); };
      double root = find_root(g, prev_w, w, 1e-10, 200);
      if (!found) first = root;
      last = root;
      found = true;
    }
    prev_s = s;
    prev_w = w;
  }
  if (!found) return std::nullopt;
  return InstabilityThresholds{first, last};
}

void verdicts_to_csv(std::ostream& os, const ModelParams& params,
                     const std::vector<StabilityVerdict>& rows) {
  os << "mu,gamma,omega,branch,d_second,n,p,verdict\n";
  for (const auto& r : rows)
    os << fmt17(params.mu) << ',' << fmt17(params.gamma) << ',' << fmt17(r.omega)
       << ',' << to_string(r.branch) << ',' << fmt17(r.d_second) << ','
       << r.n_expected << ',' << r.p << ',' << to_string(r.verdict) << "\n";
}

void verdicts_to_json(std::ostream& os, const ModelParams& params,
                      const std::vector<StabilityVerdict>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["mu"] = params.mu;
    j["gamma"] = params.gamma;
    j["omega"] = r.omega;
    j["branch"] = to_string(r.branch);
    j["d_second"] = r.d_second;
    j["n"] = r.n_expected;
    j["p"] = r.p;
    j["verdict"] = to_string(r.verdict);
    out.push_back(j);
  }
  os << out.dump(2) << "\n";
}

}  // namespace dpnls
