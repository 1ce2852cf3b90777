#include "dpnls/qfunction.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "dpnls/errors.hpp"
#include "dpnls/io.hpp"

namespace dpnls {

QFunction zero_function(const Grid& grid) {
  QFunction f;
  f.grid = grid;
  f.values.assign(grid.total_nodes(), Complex(0.0, 0.0));
  return f;
}

namespace {

// second-order first derivative of one half-line (n+1 samples, spacing h)
void differentiate_side(const Complex* f, int n, double h, Complex* out) {
  const double inv2h = 1.0 / (2.0 * h);
  out[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2h;
  for (int j = 1; j < n; ++j) out[j] = (f[j + 1] - f[j - 1]) * inv2h;
  out[n] = (3.0 * f[n] - 4.0 * f[n - 1] + f[n - 2]) * inv2h;
}

}  // namespace

std::vector<Complex> derivative(const QFunction& f) {
  const int n = f.grid.n_per_side;
  std::vector<Complex> out(f.grid.total_nodes());
  differentiate_side(f.values.data(), n, f.grid.h(), out.data());
  differentiate_side(f.values.data() + n + 1, n, f.grid.h(), out.data() + n + 1);
  return out;
}

double max_abs(const QFunction& f) {
  double m = 0.0;
  for (const Complex& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double edge_decay_ratio(const QFunction& f) {
  double m = max_abs(f);
  if (m == 0.0) return 0.0;
  const int n = f.grid.n_per_side;
  double edge = std::max(std::abs(f.left(0)), std::abs(f.right(n)));
  return edge / m;
}

void write_csv(std::ostream& os, const QFunction& f, const ModelParams& params,
               double omega) {
  const Grid& g = f.grid;
  os << "# gamma=" << fmt17(params.gamma) << " lambda=" << fmt17(params.lambda)
     << " mu=" << fmt17(params.mu) << " omega=" << fmt17(omega)
     << " L=" << fmt17(g.half_length) << " n_per_side=" << g.n_per_side << "\n";
  os << "x,re,im,side\n";
  for (int j = 0; j <= g.n_per_side; ++j) {
    const Complex v = f.left(j);
    os << fmt17(g.x_left(j)) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag())
       << ",-\n";
  }
  for (int j = 0; j <= g.n_per_side; ++j) {
    const Complex v = f.right(j);
    os << fmt17(g.x_right(j)) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag())
       << ",+\n";
  }
}

QFunction read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line.empty() || line[0] != '#')
    throw ValidationError("QFunction CSV: missing metadata header");
  double L = 0.0;
  int n = 0;
  {
    std::istringstream hs(line.substr(1));
    std::string tok;
    while (hs >> tok) {
      auto eq = tok.find('=');
      if (eq == std::string::npos) continue;
      std::string key = tok.substr(0, eq);
      std::string val = tok.substr(eq + 1);
      if (key == "L") L = std::stod(val);
      if (key == "n_per_side") n = std::stoi(val);
    }
  }
  if (!(L > 0.0) || n < 8) throw ValidationError("QFunction CSV: bad grid metadata");
  if (!std::getline(is, line) || line.rfind("x,re,im,side", 0) != 0)
    throw ValidationError("QFunction CSV: missing column header");

  QFunction f = zero_function(make_grid(L, n));
  int idx = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string xf, ref, imf, side;
    std::getline(ls, xf, ',');
    std::getline(ls, ref, ',');
    std::getline(ls, imf, ',');
    std::getline(ls, side, ',');
    if (idx >= f.grid.total_nodes())
      throw ValidationError("QFunction CSV: too many rows");
    f.values[idx++] = Complex(std::stod(ref), std::stod(imf));
  }
  if (idx != f.grid.total_nodes())
    throw ValidationError("QFunction CSV: row count does not match grid");
  return f;
}

}  // namespace dpnls
