#include "doctest.h"

#include <cmath>
#include <sstream>

#include "dpnls/errors.hpp"
#include "dpnls/ground_state.hpp"
#include "dpnls/linearization.hpp"
#include "dpnls/profiles.hpp"

using namespace dpnls;

TEST_CASE("defect Hamiltonian: bound state eigenvalue and eigenfunction") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(40.0, 1200);
  DiscreteOperator op = build_hgamma(p, g, 0.0);
  auto pairs = smallest_eigenpairs(op.a, op.mass, 3);

  CHECK(pairs[0].value == doctest::Approx(-1.0).epsilon(0.01));
  QFunction psi = linear_bound_state(p, g);
  CHECK(cosine_similarity(pairs[0].vector, qfunction_to_unknowns(psi), op.mass) >
        0.999);
  // only one bound state; everything else sits at or above the continuum edge
  CHECK(count_below(op.a, op.mass, -1e-6) == 1);
  CHECK(pairs[1].value > -1e-6);
}

TEST_CASE("defect Hamiltonian: shallow well limit") {
  ModelParams p = make_params(50.0, 1.0, 1.0);
  Grid g = make_grid(300.0, 3000);
  DiscreteOperator op = build_hgamma(p, g, 1.0);
  auto pairs = smallest_eigenpairs(op.a, op.mass, 1);
  CHECK(pairs[0].value < 1.0);
  CHECK(pairs[0].value > 0.99);  // the well supports only a -4/gamma^2 state
}

TEST_CASE("sampled and callable potential assemblies agree") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(30.0, 900);
  auto well = [](double x) { return -0.8 / std::cosh(0.7 * x) - 0.1; };
  std::vector<double> nodes(g.total_nodes());
  for (int j = 0; j <= g.n_per_side; ++j) {
    nodes[j] = well(g.x_left(j));
    nodes[g.index_zero_plus() + j] = well(g.x_right(j));
  }
  DiscreteOperator sampled = discretize_form(p, 1.2, nodes, g);
  DiscreteOperator exact = discretize_form(p, 1.2, well, g, OperatorKind::Hgamma);
  auto ps = smallest_eigenpairs(sampled.a, sampled.mass, 2);
  auto pe = smallest_eigenpairs(exact.a, exact.mass, 2);
  CHECK(ps[0].value == doctest::Approx(pe[0].value).epsilon(1e-4));
  CHECK(ps[1].value == doctest::Approx(pe[1].value).epsilon(1e-4));

  // a constant potential is interpolated exactly: the two paths coincide
  std::vector<double> flat(g.total_nodes(), -0.7);
  DiscreteOperator s2 = discretize_form(p, 1.2, flat, g);
  DiscreteOperator e2 = discretize_form(
      p, 1.2, [](double) { return -0.7; }, g, OperatorKind::Hgamma);
  for (int i = 0; i < s2.a.size(); i += 131)
    CHECK(s2.a.d[i] == doctest::Approx(e2.a.d[i]).epsilon(1e-13));
}

TEST_CASE("linearization wells: depth ratio and form identity") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double omega = 1.5;
  Grid g = make_grid(40.0, 2000);
  GroundState s = stationary_state(p, omega, solve_symmetric(p, omega), g);
  DiscreteOperator h = build_hgamma(p, g, omega);
  DiscreteOperator l1 = build_L(p, omega, s, 1);
  DiscreteOperator l2 = build_L(p, omega, s, 2);

  for (int i = 0; i < h.a.size(); i += 97) {
    double v1 = l1.a.d[i] - h.a.d[i];
    double v2 = l2.a.d[i] - h.a.d[i];
    if (std::abs(v2) > 1e-12)
      CHECK(v1 / v2 == doctest::Approx(3.0).epsilon(1e-12));  // (2mu+1)/1 at mu=1
  }

  // (psi, L1 psi) = -2 mu lambda ||psi||_{2mu+2}^{2mu+2}
  double lhs = form_value(l1, s.profile);
  double rhs = -2.0 * p.mu * p.lambda * lp_power(s.profile, 2.0 * p.mu + 2.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-4));
  CHECK(lhs < 0.0);

  CHECK_THROWS_AS(build_L(p, omega, s, 3), ValidationError);
  Grid other = make_grid(40.0, 1999);
  CHECK_THROWS_AS(build_L(p, omega, s, 1, other), GridMismatchError);
}

TEST_CASE("second variation spectra reproduce the negative-eigenvalue counts") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(40.0, 2000);

  // below the branch point: one negative direction
  {
    double omega = 0.75 * p.omega_star;
    GroundState s = stationary_state(p, omega, solve_symmetric(p, omega), g);
    SpectralReport r1 = spectral_report(build_L(p, omega, s, 1), 4);
    CHECK(r1.n_negative == 1);
    CHECK(r1.near_zero.empty());
  }
  // past it: two on the continued symmetric branch, one on the asymmetric one
  {
    double omega = 1.5 * p.omega_star;
    GroundState sym = stationary_state(p, omega, solve_symmetric(p, omega), g);
    SpectralReport rsym = spectral_report(build_L(p, omega, sym, 1), 4);
    CHECK(rsym.n_negative == 2);

    GroundState asym =
        stationary_state(p, omega, solve_asymmetric(p, omega).first, g);
    SpectralReport rasym = spectral_report(build_L(p, omega, asym, 1), 4);
    CHECK(rasym.n_negative == 1);
    CHECK(rasym.near_zero.empty());
  }
}

TEST_CASE("nonnegativity of the phase block with the state as kernel") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(40.0, 2000);
  for (double omega : {1.3, 2.8}) {
    TSolution sol = omega > p.omega_star ? solve_asymmetric(p, omega).first
                                         : solve_symmetric(p, omega);
    GroundState s = stationary_state(p, omega, sol, g);
    DiscreteOperator l2 = build_L(p, omega, s, 2);
    auto pairs = smallest_eigenpairs(l2.a, l2.mass, 2);
    CHECK(pairs[0].value >= -1e-4 * omega);
    CHECK(pairs[0].value < 1e-3 * omega);  // the discrete kernel mode
    CHECK(cosine_similarity(pairs[0].vector, qfunction_to_unknowns(s.profile),
                            l2.mass) > 0.999);
    CHECK(pairs[1].value > 0.1);
  }
}

TEST_CASE("kernel mode at the branch point") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double omega = p.omega_star;
  for (int n : {1000, 2000}) {
    Grid g = make_grid(40.0, n);
    GroundState s = stationary_state(p, omega, solve_symmetric(p, omega), g);
    DiscreteOperator l1 = build_L(p, omega, s, 1);
    auto pairs = smallest_eigenpairs(l1.a, l1.mass, 3);
    double kernel_tol = g.h() * g.h() * omega;  // a continuum zero shows up at O(h^2)
    CHECK(std::abs(pairs[1].value) <= kernel_tol);
    QFunction xi = xi_kernel_vector(p, omega, g);
    CHECK(cosine_similarity(pairs[1].vector, qfunction_to_unknowns(xi), l1.mass) >
          0.999);

    double fv = form_value(l1, xi);
    CHECK(std::abs(fv) < 10.0 * kernel_tol);
  }
}

TEST_CASE("form value of the kernel candidate crosses zero at the branch point") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(40.0, 2000);
  auto closed = [&](double omega) {
    double g2w = p.gamma * p.gamma * omega;
    return -(4.0 / p.gamma) * std::pow(1.0 - 4.0 / g2w, 1.0 / p.mu) *
           (p.mu - (p.mu + 1.0) * 4.0 / g2w);
  };
  for (double omega : {1.8, 2.2}) {
    GroundState s = stationary_state(p, omega, solve_symmetric(p, omega), g);
    DiscreteOperator l1 = build_L(p, omega, s, 1);
    double fv = form_value(l1, xi_kernel_vector(p, omega, g));
    CHECK(fv == doctest::Approx(closed(omega)).epsilon(1e-3));
  }
  CHECK(closed(1.8) > 0.0);
  CHECK(closed(2.2) < 0.0);
}

TEST_CASE("near-zero eigenvalue changes sign once across the branch point") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(40.0, 1500);
  int sign_changes = 0;
  double prev = 0.0;
  bool have_prev = false;
  for (double omega : {1.80, 1.90, 1.96, 2.04, 2.10, 2.20}) {
    GroundState s = stationary_state(p, omega, solve_symmetric(p, omega), g);
    DiscreteOperator l1 = build_L(p, omega, s, 1);
    auto pairs = smallest_eigenpairs(l1.a, l1.mass, 2);
    double ev = pairs[1].value;
    if (have_prev && (ev < 0.0) != (prev < 0.0)) ++sign_changes;
    prev = ev;
    have_prev = true;
  }
  CHECK(sign_changes == 1);
}

TEST_CASE("counts are stable under refinement and domain growth") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double omega = 1.5 * p.omega_star;
  auto count_at = [&](double L, int n) {
    Grid g = make_grid(L, n);
    GroundState s = stationary_state(p, omega, solve_asymmetric(p, omega).first, g);
    return spectral_report(build_L(p, omega, s, 1), 3).n_negative;
  };
  CHECK(count_at(40.0, 1000) == 1);
  CHECK(count_at(40.0, 2000) == 1);
  CHECK(count_at(60.0, 1500) == 1);
}

TEST_CASE("essential spectrum floor sits at omega") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  double omega = 1.5;
  for (double L : {40.0, 60.0}) {
    Grid g = make_grid(L, static_cast<int>(L * 50.0));
    GroundState s = stationary_state(p, omega, solve_symmetric(p, omega), g);
    DiscreteOperator l1 = build_L(p, omega, s, 1);
    auto pairs = smallest_eigenpairs(l1.a, l1.mass, 4);
    // two discrete states below the continuum, then the box modes at omega+
    CHECK(pairs[2].value >= omega);
    CHECK(pairs[2].value <= 1.05 * omega);
  }
}

TEST_CASE("unknown embedding round trip") {
  Grid g = make_grid(10.0, 64);
  std::vector<double> u(2 * g.n_per_side);
  for (size_t i = 0; i < u.size(); ++i) u[i] = std::sin(0.1 * i);
  QFunction f = unknowns_to_qfunction(g, u);
  CHECK(f.left(0) == Complex(0.0, 0.0));
  CHECK(f.right(g.n_per_side) == Complex(0.0, 0.0));
  auto u2 = qfunction_to_unknowns(f);
  REQUIRE(u2.size() == u.size());
  for (size_t i = 0; i < u.size(); ++i) CHECK(u2[i] == u[i]);
}

TEST_CASE("spectral report serializes to JSON") {
  ModelParams p = make_params(2.0, 1.0, 1.0);
  Grid g = make_grid(30.0, 600);
  SpectralReport rep = spectral_report(build_hgamma(p, g, 0.0), 3);
  std::stringstream ss;
  report_to_json(ss, rep);
  CHECK(ss.str().find("\"eigenvalues\"") != std::string::npos);
  CHECK(ss.str().find("\"n_negative\"") != std::string::npos);
  CHECK(ss.str().find("\"kind\"") != std::string::npos);
}
