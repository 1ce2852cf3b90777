#pragma once

#include "dpnls/params.hpp"
#include "dpnls/qfunction.hpp"

namespace dpnls {

/// Default decay floor: assembled stationary profiles should satisfy
/// |psi(+-L)| < kDecayFloor * max|psi|, otherwise the grid is undersized.
inline constexpr double kDecayFloor = 1e-10;

/// Free-soliton value ((mu+1)*omega/lambda)^{1/(2mu)} sech^{1/mu}(mu sqrt(omega) (x-x0)).
double soliton_value(const ModelParams& params, double omega, double x0, double x);

/// Samples -e^{i theta} phi_omega^{x1} on the left half-line and
/// +e^{i theta} phi_omega^{x2} on the right one. Emits a non-fatal warning on
/// stderr if the values at +-L exceed the decay floor.
QFunction assemble_profile(const ModelParams& params, double omega, double x1,
                           double x2, double theta, const Grid& grid);

/// Normalized bound state of the linear defect Hamiltonian:
/// (2/gamma)^{1/2} sign(x) e^{-2|x|/gamma}.
QFunction linear_bound_state(const ModelParams& params, const Grid& grid);

}  // namespace dpnls
