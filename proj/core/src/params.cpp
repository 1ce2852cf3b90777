#include "dpnls/params.hpp"

#include <cmath>
#include <string>

#include "dpnls/errors.hpp"

namespace dpnls {

namespace {
void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw ValidationError(std::string(name) + " must be positive and finite (got " +
                          std::to_string(v) + ")");
}
}  // namespace

ModelParams make_params(double gamma, double lambda, double mu) {
  require_positive(gamma, "gamma");
  require_positive(lambda, "lambda");
  require_positive(mu, "mu");
  ModelParams p{gamma, lambda, mu, 0.0, 0.0};
  p.omega0 = 4.0 / (gamma * gamma);
  p.omega_star = p.omega0 * (mu + 1.0) / mu;
  return p;
}

}  // namespace dpnls
