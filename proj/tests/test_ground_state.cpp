#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dpnls/errors.hpp"
#include "dpnls/ground_state.hpp"
#include "dpnls/profiles.hpp"

using namespace dpnls;

namespace {

// mu = 1 closed form: f(t1) = f(t2) forces t1^2 + t2^2 = 1, which with
// 1/t1 + 1/t2 = a reduces to a^2 p^2 - 2p - 1 = 0 for the product p = t1 t2.
struct Mu1Oracle {
  double t1, t2;
};

Mu1Oracle mu1_asymmetric(double a) {
  double p = (1.0 + std::sqrt(1.0 + a * a)) / (a * a);
  double s = a * p;
  double disc = std::sqrt(s * s - 4.0 * p);
  return {(s - disc) / 2.0, (s + disc) / 2.0};
}

}  // namespace

TEST_CASE("f_poly endpoints, maximum, and location") {
  CHECK(f_poly(1.0, 0.0) == 0.0);
  CHECK(f_poly(1.0, 1.0) == 0.0);
  CHECK(f_poly(1.0, t_bar(1.0)) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(f_max(1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(t_bar(2.0) == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
  for (double mu : {0.5, 1.0, 2.7}) {
    double tb = t_bar(mu);
    CHECK(f_poly(mu, tb) == doctest::Approx(f_max(mu)).epsilon(1e-13));
    CHECK(f_poly(mu, tb - 0.05) < f_max(mu));
    CHECK(f_poly(mu, tb + 0.05) < f_max(mu));
  }
  CHECK_THROWS_AS(f_poly(1.0, 1.5), OutOfRangeError);
}

TEST_CASE("symmetric branch closed form") {
  ModelParams p = make_params(2.0, 1.0, 1.0);

  TSolution s = solve_symmetric(p, 1.5);
  CHECK(s.t1 == doctest::Approx(1.0 / std::sqrt(1.5)).epsilon(1e-15));
  CHECK(s.t1 == doctest::Approx(0.8164966).epsilon(1e-6));
  double a = p.gamma * std::sqrt(1.5);
  double y_log = 1.0 / (2.0 * p.mu * std::sqrt(1.5)) *
                 std::log((a + 2.0) / (a - 2.0));
  CHECK(s.y1 == doctest::Approx(y_log).epsilon(1e-14));
  CHECK(s.y1 == doctest::Approx(0.93588131010357011).epsilon(1e-14));

  TSolution s4 = solve_symmetric(p, 4.0);
  CHECK(s4.t1 == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s4.y1 == doctest::Approx(std::log(3.0) / 4.0).epsilon(1e-14));
  CHECK(s4.branch == Branch::Symmetric);

  // birth of the branch: t -> 1 and the centers run away
  TSolution sb = solve_symmetric(p, 1.0 + 1e-10);
  CHECK(sb.t1 > 1.0 - 1e-9);
  CHECK(sb.y1 > 10.0);

  CHECK_THROWS_WITH_AS(solve_symmetric(p, 1.0), doctest::Contains("omega0"),
                       OutOfRangeError);
  CHECK_THROWS_AS(solve_symmetric(p, 0.5), OutOfRangeError);
}

TEST_CASE("w_function endpoint values") {
  for (double mu : {0.5, 1.0, 2.5}) {
    double a_min = 2.0 * std::sqrt((mu + 1.0) / mu);
    for (double a : {a_min * 1.05, a_min * 2.0, a_min * 10.0}) {
      CHECK(std::abs(w_function(mu, a, 2.0 / a)) < 1e-12);
      CHECK(w_function(mu, a, 1.0) > 0.0);
    }
  }
  CHECK_THROWS_AS(w_function(1.0, 4.0, 0.2), OutOfRangeError);
}

TEST_CASE("asymmetric branch matches the mu = 1 closed-form oracle") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double omega = 4.0;
  auto [left, right] = solve_asymmetric(p, omega);

  Mu1Oracle oracle = mu1_asymmetric(p.gamma * std::sqrt(omega));
  CHECK(left.t1 == doctest::Approx(oracle.t1).epsilon(1e-12));
  CHECK(left.t2 == doctest::Approx(oracle.t2).epsilon(1e-12));
  CHECK(left.t1 == doctest::Approx(0.340550).epsilon(1e-5));
  CHECK(left.t2 == doctest::Approx(0.940226).epsilon(1e-5));

  // centers from the trace values (same formula, independent arithmetic)
  double y1 = 0.25 * std::log((1.0 + oracle.t1) / (1.0 - oracle.t1));
  double y2 = 0.25 * std::log((1.0 + oracle.t2) / (1.0 - oracle.t2));
  CHECK(left.y1 == doctest::Approx(y1).epsilon(1e-12));
  CHECK(left.y2 == doctest::Approx(y2).epsilon(1e-12));
  CHECK(left.y1 == doctest::Approx(0.177363).epsilon(1e-4));
  CHECK(left.y2 == doctest::Approx(0.870037).epsilon(1e-4));

  // mirror pair
  CHECK(right.t1 == left.t2);
  CHECK(right.t2 == left.t1);
  CHECK(right.branch == Branch::AsymmetricRight);
  CHECK(left.branch == Branch::AsymmetricLeft);

  // the returned t2 is the root of w
  CHECK(std::abs(w_function(1.0, 4.0, left.t2)) < 1e-10);

  CHECK_THROWS_WITH_AS(solve_asymmetric(p, 2.0), doctest::Contains("omega_star"),
                       OutOfRangeError);
}

TEST_CASE("matching-system residuals stay below 1e-10 across parameters") {
  for (double gamma : {0.7, 2.0, 4.5}) {
    for (double mu : {0.4, 1.0, 1.8, 2.5, 3.3}) {
      ModelParams p = make_params(gamma, 1.3, mu);
      for (double f : {0.2, 0.7}) {
        double omega_sym = p.omega0 + f * (p.omega_star - p.omega0);
        auto rs = tsystem_residual(p, omega_sym, solve_symmetric(p, omega_sym));
        CHECK(rs.first < 1e-10);
        CHECK(rs.second < 1e-10);
      }
      for (double f : {1.01, 2.0, 50.0}) {
        double omega = p.omega_star * f;
        auto [left, right] = solve_asymmetric(p, omega);
        for (const TSolution& sol : {left, right}) {
          auto ra = tsystem_residual(p, omega, sol);
          CHECK(ra.first < 1e-10);
          CHECK(ra.second < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("branches merge at the bifurcation frequency") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double tb = t_bar(p.mu);
  double prev = 1e9;
  for (int k = 2; k <= 6; ++k) {
    double omega = p.omega_star * (1.0 + std::pow(10.0, -k));
    auto [left, right] = solve_asymmetric(p, omega);
    double dist = std::hypot(left.t1 - tb, left.t2 - tb);
    CHECK(dist < prev);
    prev = dist;
  }
  CHECK(prev < 2e-3);
}

TEST_CASE("asymmetric large-frequency asymptotics") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double prev1 = 1e9, prev2 = 1e9;
  for (double f : {1e2, 1e3, 1e4}) {
    double omega = p.omega_star * f;
    auto [left, right] = solve_asymmetric(p, omega);
    double a = p.gamma * std::sqrt(omega);
    double dev1 = std::abs(a * left.t1 - 1.0);
    double dev2 = std::abs((1.0 - left.t2) * (1.0 + left.t2) *
                               std::pow(p.gamma, 2.0 * p.mu) *
                               std::pow(omega, p.mu) -
                           1.0);
    CHECK(dev1 < prev1);
    CHECK(dev2 < prev2);
    prev1 = dev1;
    prev2 = dev2;
  }
  CHECK(prev1 < 1e-2);
  CHECK(prev2 < 1e-2);
}

TEST_CASE("mirror states carry identical action") {
  ModelParams p = make_params(2.0, 1.0, 2.0);
  double omega = 2.0 * p.omega_star;
  auto [left, right] = solve_asymmetric(p, omega);
  CHECK(action_closed_form(p, omega, left) ==
        doctest::Approx(action_closed_form(p, omega, right)).epsilon(1e-12));

  Grid g = default_grid(p, omega, std::max(left.y1, left.y2), 4000);
  GroundState sl = stationary_state(p, omega, left, g);
  GroundState sr = stationary_state(p, omega, right, g);
  CHECK(sl.values.action == doctest::Approx(sr.values.action).epsilon(1e-12));
}

TEST_CASE("closed-form action and mass agree with grid functionals") {
  // Richardson-extrapolated grid values remove the h^2 quadrature bias.
  ModelParams p = make_params(2.0, 1.0, 1.0);
  for (double omega : {1.5, 4.0}) {
    TSolution sol = omega > p.omega_star ? solve_asymmetric(p, omega).first
                                         : solve_symmetric(p, omega);
    auto values_at = [&](int n) {
      Grid g = default_grid(p, omega, std::max(sol.y1, sol.y2), n);
      return stationary_state(p, omega, sol, g).values;
    };
    FunctionalValues c = values_at(16000), f = values_at(32000);
    double action = (4.0 * f.action - c.action) / 3.0;
    double mass = (4.0 * f.mass - c.mass) / 3.0;
    CHECK(action_closed_form(p, omega, sol) ==
          doctest::Approx(action).epsilon(1e-7));
    CHECK(mass_closed_form(p, omega, sol) == doctest::Approx(mass).epsilon(1e-7));
  }
}

TEST_CASE("q is stationary exactly at the asymmetric solution") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double omega = 4.0;
  auto [left, right] = solve_asymmetric(p, omega);
  double t2 = left.t2;
  double dq = (q_function(p, omega, t2 + 1e-6) - q_function(p, omega, t2 - 1e-6)) /
              2e-6;
  CHECK(std::abs(dq) < 1e-7);
}

TEST_CASE("q curvature closed form at the symmetric point") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  CHECK(q_second_at_symmetric(p, 4.0) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(q_second_at_symmetric(p, 1.9) < 0.0);
  CHECK(q_second_at_symmetric(p, 2.1) > 0.0);

  // second differences of q itself pin the curvature, mu = 1 and mu = 2
  for (double mu : {1.0, 2.0}) {
    ModelParams pm = make_params(2.0, 1.0, mu);
    double omega = 1.1 * pm.omega_star;
    double ts = 2.0 / (pm.gamma * std::sqrt(omega));
    double d = 1e-4;
    double q2 = (q_function(pm, omega, ts + d) - 2.0 * q_function(pm, omega, ts) +
                 q_function(pm, omega, ts - d)) /
                (d * d);
    CHECK(q2 == doctest::Approx(q_second_at_symmetric(pm, omega)).epsilon(1e-4));
  }
}

TEST_CASE("ground state selection across the bifurcation") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g1 = default_grid(p, 1.5, 1.0, 4000);
  GroundStateResult below = ground_state(p, 1.5, g1);
  CHECK(below.ground.tsol.branch == Branch::Symmetric);
  CHECK_FALSE(below.continued_symmetric.has_value());
  CHECK(std::abs(below.ground.values.nehari) < 1e-3);

  Grid g2 = default_grid(p, 4.0, 1.0, 4000);
  GroundStateResult above = ground_state(p, 4.0, g2);
  CHECK(above.ground.tsol.branch == Branch::AsymmetricLeft);
  REQUIRE(above.continued_symmetric.has_value());
  CHECK(above.ground.values.action < above.continued_symmetric->values.action);

  CHECK_THROWS_AS(ground_state(p, 1.0, g1), OutOfRangeError);
}

TEST_CASE("bifurcation scan counts branches and tracks the vanishing mass") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  auto rows = bifurcation_scan(p, 1.01, 3.0, 41);
  double prev_omega = 0.0;
  for (const auto& r : rows) {
    CHECK(r.omega >= prev_omega);
    prev_omega = r.omega;
  }
  int asym_below = 0, rows_above = 0;
  for (const auto& r : rows) {
    if (r.omega <= 2.0)
      asym_below += r.branch != Branch::Symmetric ? 1 : 0;
    else
      rows_above += 1;
  }
  CHECK(asym_below == 0);  // asymmetric rows absent before the branch point
  CHECK(rows_above > 0);
  CHECK(rows_above % 3 == 0);  // three branches per frequency after it

  // the symmetric-branch mass vanishes toward the branch birth
  auto near_birth = bifurcation_scan(p, 1.0001, 1.5, 30);
  CHECK(near_birth.front().mass < 0.02 * near_birth.back().mass);

  CHECK_THROWS_AS(bifurcation_scan(p, 0.9, 2.0, 5), OutOfRangeError);
}

TEST_CASE("scan serialization has the documented schema") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  auto rows = bifurcation_scan(p, 1.5, 2.5, 3);
  std::stringstream csv;
  scan_to_csv(csv, rows);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "omega,branch,t1,t2,S_omega,M,verdict");
  std::stringstream js;
  scan_to_json(js, p, rows);
  CHECK(js.str().find("\"omega_star\"") != std::string::npos);
  CHECK(js.str().find("\"rows\"") != std::string::npos);
}
