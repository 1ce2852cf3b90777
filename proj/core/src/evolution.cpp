#include "dpnls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "dpnls/errors.hpp"
#include "dpnls/io.hpp"
#include "dpnls/tridiag.hpp"

namespace dpnls {

namespace {

// H_gamma form matrix (stiffness + delta' border) over the interior unknowns
// [left 1..n | right 0..n-1], +-L Dirichlet; identical assembly to the
// linearization module, kept local to avoid hauling in eigensolver headers.
SymTridiag hgamma_matrix(const ModelParams& params, const Grid& grid) {
  const int n = grid.n_per_side;
  SymTridiag k;
  k.d.assign(2 * n, 0.0);
  k.e.assign(2 * n - 1, 0.0);
  const double inv_h = 1.0 / grid.h();
  for (int j = 1; j <= n; ++j) {
    k.d[j - 1] += inv_h;
    if (j > 1) {
      k.d[j - 2] += inv_h;
      k.e[j - 2] += -inv_h;
    }
  }
  for (int j = 0; j < n; ++j) {
    k.d[n + j] += inv_h;
    if (j < n - 1) {
      k.d[n + j + 1] += inv_h;
      k.e[n + j] += -inv_h;
    }
  }
  const double ginv = 1.0 / params.gamma;
  k.d[n - 1] -= ginv;
  k.d[n] -= ginv;
  k.e[n - 1] += ginv;
  return k;
}

// trapezoid weights = lumped P1 mass over the unknowns
std::vector<double> lumped_mass(const Grid& grid) {
  const int n = grid.n_per_side;
  const double h = grid.h();
  std::vector<double> m(2 * n, h);
  m[n - 1] = m[n] = 0.5 * h;  // 0^- and 0^+
  return m;
}

std::vector<Complex> to_unknowns(const QFunction& f) {
  const int n = f.grid.n_per_side;
  std::vector<Complex> u(2 * n);
  for (int j = 1; j <= n; ++j) u[j - 1] = f.left(j);
  for (int j = 0; j < n; ++j) u[n + j] = f.right(j);
  return u;
}

QFunction from_unknowns(const Grid& grid, const std::vector<Complex>& u) {
  QFunction f = zero_function(grid);
  const int n = grid.n_per_side;
  for (int j = 1; j <= n; ++j) f.left(j) = u[j - 1];
  for (int j = 0; j < n; ++j) f.right(j) = u[n + j];
  return f;
}

// One Crank-Nicolson flight of fixed dt:
// (M + i dt/2 K) u^{n+1} = (M - i dt/2 K) u^n, M lumped. Being an exact Cayley
// transform of a symmetric pencil, it conserves sum m_i |u_i|^2 to rounding.
class CayleyStep {
 public:
  CayleyStep(const ModelParams& params, const Grid& grid, double dt)
      : k_(hgamma_matrix(params, grid)), m_(lumped_mass(grid)), dt_(dt),
        lu_(make_lu()) {}

  void apply(std::vector<Complex>& u) const {
    const int n = static_cast<int>(u.size());
    std::vector<Complex> rhs(n);
    const Complex i_half_dt(0.0, 0.5 * dt_);
    for (int i = 0; i < n; ++i) {
      Complex ku = k_.d[i] * u[i];
      if (i > 0) ku += k_.e[i - 1] * u[i - 1];
      if (i < n - 1) ku += k_.e[i] * u[i + 1];
      rhs[i] = m_[i] * u[i] - i_half_dt * ku;
    }
    lu_.solve(rhs);
    u.swap(rhs);
  }

 private:
  TridiagLU<Complex> make_lu() const {
    const int n = static_cast<int>(m_.size());
    std::vector<Complex> dl(n - 1), d(n), du(n - 1);
    const Complex i_half_dt(0.0, 0.5 * dt_);
    for (int i = 0; i < n; ++i) d[i] = m_[i] + i_half_dt * k_.d[i];
    for (int i = 0; i + 1 < n; ++i) dl[i] = du[i] = i_half_dt * k_.e[i];
    return TridiagLU<Complex>(std::move(dl), std::move(d), std::move(du));
  }

  SymTridiag k_;
  std::vector<double> m_;
  double dt_;
  TridiagLU<Complex> lu_;
};

Complex q_inner(const QFunction& a, const QFunction& b) {
  const int n = a.grid.n_per_side;
  const double h = a.grid.h();
  std::vector<Complex> da = derivative(a), db = derivative(b);
  auto dot_side = [&](const Complex* u, const Complex* v) {
    Complex s = 0.5 * (std::conj(u[0]) * v[0] + std::conj(u[n]) * v[n]);
    for (int j = 1; j < n; ++j) s += std::conj(u[j]) * v[j];
    return s * h;
  };
  const Complex* al = a.values.data();
  const Complex* ar = al + n + 1;
  const Complex* bl = b.values.data();
  const Complex* br = bl + n + 1;
  Complex s = dot_side(al, bl) + dot_side(ar, br);
  s += dot_side(da.data(), db.data()) + dot_side(da.data() + n + 1, db.data() + n + 1);
  return s;
}

}  // namespace

EvolutionConfig default_config(const Grid& grid, double T, double dt_ratio) {
  EvolutionConfig c;
  c.dt = dt_ratio * grid.h();
  c.T = T;
  return c;
}

QFunction linear_half_step(const QFunction& state, const ModelParams& params,
                           double dt) {
  if (!(dt > 0.0)) throw ValidationError("linear_half_step: dt must be positive");
  CayleyStep step(params, state.grid, dt);
  std::vector<Complex> u = to_unknowns(state);
  step.apply(u);
  return from_unknowns(state.grid, u);
}

double orbital_distance(const QFunction& f, const QFunction& reference) {
  if (!(f.grid == reference.grid))
    throw GridMismatchError("orbital_distance: grid mismatch");
  double f2 = std::real(q_inner(f, f));
  double r2 = std::real(q_inner(reference, reference));
  double cross = std::abs(q_inner(reference, f));
  return std::sqrt(std::max(0.0, f2 + r2 - 2.0 * cross));
}

double antisymmetry_defect(const QFunction& f) {
  const int n = f.grid.n_per_side;
  double m = max_abs(f);
  if (m == 0.0) return 0.0;
  double worst = 0.0;
  for (int j = 0; j <= n; ++j)
    worst = std::max(worst, std::abs(f.left(j) + f.right(n - j)));
  return worst / m;
}

EvolutionTrace evolve(const QFunction& initial, const ModelParams& params,
                      const EvolutionConfig& config, const QFunction* reference) {
  const Grid& grid = initial.grid;
  if (!(config.dt > 0.0) || !(config.T > 0.0))
    throw ValidationError("evolve: dt and T must be positive");
  if (config.dt > 0.5 * grid.h() * (1.0 + 1e-12))
    throw ValidationError("evolve: dt exceeds the 0.5 h safety ratio");
  if (config.scheme != Scheme::CrankNicolsonStrang)
    throw ValidationError("evolve: unknown scheme");
  const QFunction& ref = reference ? *reference : initial;
  if (!(ref.grid == grid)) throw GridMismatchError("evolve: reference grid mismatch");

  const long n_steps = std::max(1L, std::lround(config.T / config.dt));
  CayleyStep half(params, grid, 0.5 * config.dt);
  std::vector<Complex> u = to_unknowns(initial);

  EvolutionTrace trace;
  const double q0 = q_norm(initial);

  std::vector<long> snap_steps;
  for (int s = 1; s <= config.snapshot_count; ++s)
    snap_steps.push_back(n_steps * s / config.snapshot_count);
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()),
                   snap_steps.end());

  auto monitor = [&](long step) {
    QFunction f = from_unknowns(grid, u);
    double t = step * config.dt;
    trace.times.push_back(t);
    trace.mass.push_back(mass_of(f));
    trace.energy.push_back(functionals(f, params, 0.0).energy);
    trace.orbital_distance.push_back(orbital_distance(f, ref));
    if (q_norm(f) > config.blowup_factor * q0) trace.blowup = true;
    for (long ss : snap_steps)
      if (ss == step) trace.snapshots.emplace_back(t, f);
  };

  monitor(0);
  for (long step = 1; step <= n_steps && !trace.blowup; ++step) {
    half.apply(u);
    for (Complex& v : u) {
      double phase = params.lambda * std::pow(std::norm(v), params.mu) * config.dt;
      v *= Complex(std::cos(phase), std::sin(phase));
    }
    half.apply(u);
    bool want_snapshot = false;
    for (long ss : snap_steps) want_snapshot |= (ss == step);
    if (step % config.monitor_stride == 0 || step == n_steps || want_snapshot)
      monitor(step);
  }
  return trace;
}

PerturbKind perturb_from_string(const std::string& s) {
  if (s == "none") return PerturbKind::None;
  if (s == "generic") return PerturbKind::GenericBump;
  if (s == "antisym") return PerturbKind::AntisymmetricBump;
  if (s == "shift") return PerturbKind::TranslationShift;
  throw ValidationError("unknown perturbation kind '" + s + "'");
}

QFunction make_perturbation(const QFunction& state, const PerturbationSpec& spec) {
  const Grid& grid = state.grid;
  QFunction g = zero_function(grid);
  if (spec.kind == PerturbKind::None) return g;

  if (spec.kind == PerturbKind::TranslationShift) {
    std::vector<Complex> d = derivative(state);
    for (int j = 0; j <= grid.n_per_side; ++j)
      g.right(j) = d[grid.index_zero_plus() + j];
  } else {
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    struct Bump {
      double c, w, a, phi;
    };
    Bump bumps[3];
    for (Bump& b : bumps) {
      b.c = (unif(rng) - 0.5) * grid.half_length / 1.5;
      b.w = 0.5 + unif(rng);
      b.a = 0.5 + 0.5 * unif(rng);
      b.phi = 2.0 * M_PI * unif(rng);
    }
    auto bump_val = [&](double x) {
      Complex s = 0.0;
      for (const Bump& b : bumps)
        s += b.a * std::exp(-0.5 * (x - b.c) * (x - b.c) / (b.w * b.w)) *
             Complex(std::cos(b.phi), std::sin(b.phi));
      return s;
    };
    for (int j = 0; j <= grid.n_per_side; ++j) {
      g.left(j) = bump_val(grid.x_left(j));
      g.right(j) = bump_val(grid.x_right(j));
    }
    if (spec.kind == PerturbKind::AntisymmetricBump) {
      QFunction anti = zero_function(grid);
      const int n = grid.n_per_side;
      for (int j = 0; j <= n; ++j) {
        anti.left(j) = g.left(j) - g.right(n - j);
        anti.right(j) = g.right(j) - g.left(n - j);
      }
      g = anti;
    }
  }
  double gn = q_norm(g);
  if (gn == 0.0) throw NumericsError("make_perturbation: degenerate perturbation");
  double target = spec.amplitude * q_norm(state);
  for (Complex& v : g.values) v *= target / gn;
  return g;
}

std::pair<EvolutionTrace, double> stability_probe(const ModelParams& params,
                                                  double omega, Branch branch,
                                                  const PerturbationSpec& spec,
                                                  const EvolutionConfig& config,
                                                  const Grid& grid) {
  TSolution sol;
  if (branch == Branch::Symmetric) {
    sol = solve_symmetric(params, omega);
  } else {
    auto [left, right] = solve_asymmetric(params, omega);
    sol = branch == Branch::AsymmetricLeft ? left : right;
  }
  GroundState state = stationary_state(params, omega, sol, grid);
  QFunction perturbed = state.profile;
  QFunction delta = make_perturbation(state.profile, spec);
  for (size_t i = 0; i < perturbed.values.size(); ++i)
    perturbed.values[i] += delta.values[i];

  EvolutionTrace trace = evolve(perturbed, params, config, &state.profile);
  double d0 = trace.orbital_distance.front();
  double dmax = 0.0;
  for (double d : trace.orbital_distance) dmax = std::max(dmax, d);
  if (d0 <= 0.0) throw NumericsError("stability_probe: zero initial distance");
  return {std::move(trace), dmax / d0};
}

void trace_to_csv(std::ostream& os, const EvolutionTrace& trace) {
  os << "t,M,E,orbital_distance\n";
  for (size_t i = 0; i < trace.times.size(); ++i)
    os << fmt17(trace.times[i]) << ',' << fmt17(trace.mass[i]) << ','
       << fmt17(trace.energy[i]) << ',' << fmt17(trace.orbital_distance[i]) << "\n";
}

}  // namespace dpnls
