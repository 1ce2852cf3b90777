#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "dpnls/ground_state.hpp"
#include "dpnls/params.hpp"
#include "dpnls/qfunction.hpp"

namespace dpnls {

enum class Scheme { CrankNicolsonStrang };

struct EvolutionConfig {
  double dt = 0.0;
  double T = 0.0;
  Scheme scheme = Scheme::CrankNicolsonStrang;
  double nonlinear_tol = 1e-10;
  int monitor_stride = 10;
  int snapshot_count = 0;
  double blowup_factor = 1e6;
};

/// dt = ratio * h (ratio <= 0.5 enforced at run time).
EvolutionConfig default_config(const Grid& grid, double T, double dt_ratio = 0.5);

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<double> mass;
  std::vector<double> energy;
  std::vector<double> orbital_distance;
  std::vector<std::pair<double, QFunction>> snapshots;
  bool blowup = false;
};

/// One Crank-Nicolson step of duration dt for the linear defect flow
/// i d/dt psi = H_gamma psi, using the form-assembled H_gamma matrix with a
/// lumped (trapezoid) mass, so the step is an exact Cayley transform: the
/// discrete mass is conserved to solver precision.
QFunction linear_half_step(const QFunction& state, const ModelParams& params,
                           double dt);

/// Strang splitting: linear half step, exact pointwise nonlinear phase
/// rotation psi <- e^{i lambda |psi|^{2mu} dt} psi, linear half step.
/// Monitors mass, energy and the orbital distance to `reference` (the initial
/// state when null) every monitor_stride steps. Halts early with the blowup
/// flag when the Q-norm exceeds blowup_factor times its initial value.
EvolutionTrace evolve(const QFunction& initial, const ModelParams& params,
                      const EvolutionConfig& config,
                      const QFunction* reference = nullptr);

/// min over theta of ||f - e^{i theta} reference||_Q; the minimizer is
/// theta = arg <reference, f>_Q.
double orbital_distance(const QFunction& f, const QFunction& reference);

/// max_x |f(x) + f(-x)| / max|f| (0 for exactly antisymmetric data).
double antisymmetry_defect(const QFunction& f);

enum class PerturbKind { None, GenericBump, AntisymmetricBump, TranslationShift };

PerturbKind perturb_from_string(const std::string& s);

struct PerturbationSpec {
  PerturbKind kind = PerturbKind::GenericBump;
  double amplitude = 1e-3;  ///< relative to the Q-norm of the state
  std::uint64_t seed = 12345;
};

QFunction make_perturbation(const QFunction& state, const PerturbationSpec& spec);

/// Builds the stationary state of the requested branch, perturbs it, evolves,
/// and reports max orbital_distance / initial orbital_distance.
std::pair<EvolutionTrace, double> stability_probe(const ModelParams& params,
                                                  double omega, Branch branch,
                                                  const PerturbationSpec& spec,
                                                  const EvolutionConfig& config,
                                                  const Grid& grid);

void trace_to_csv(std::ostream& os, const EvolutionTrace& trace);

}  // namespace dpnls
