#include <algorithm>
#include <cmath>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include "dpnls/errors.hpp"
#include "dpnls/ground_state.hpp"
#include "dpnls/io.hpp"
#include "dpnls/stability.hpp"

#include "json.hpp"

namespace dpnls {

namespace {

std::string verdict_label(const ModelParams& params, double omega, Branch branch) {
  try {
    return to_string(classify(params, omega, branch).verdict);
  } catch (const SingularAtBifurcation&) {
    return to_string(Verdict::Indeterminate);
  }
}

std::vector<ScanRow> rows_at(const ModelParams& params, double omega) {
  std::vector<ScanRow> rows;
  TSolution sym = solve_symmetric(params, omega);
  rows.push_back(ScanRow{omega, Branch::Symmetric, sym.t1, sym.t2,
                         action_closed_form(params, omega, sym),
                         mass_closed_form(params, omega, sym),
                         verdict_label(params, omega, Branch::Symmetric)});
  if (omega > params.omega_star) {
    auto [left, right] = solve_asymmetric(params, omega);
    for (const TSolution& sol : {left, right})
      rows.push_back(ScanRow{omega, sol.branch, sol.t1, sol.t2,
                             action_closed_form(params, omega, sol),
                             mass_closed_form(params, omega, sol),
                             verdict_label(params, omega, sol.branch)});
  }
  return rows;
}

}  // namespace

std::vector<ScanRow> bifurcation_scan(const ModelParams& params, double omega_min,
                                      double omega_max, int n_points,
                                      bool log_spacing, int max_threads) {
  if (!(omega_min > params.omega0))
    throw OutOfRangeError("scan: omega_min must exceed omega0 = " +
                          fmt17(params.omega0));
  if (!(omega_max >= omega_min)) throw ValidationError("scan: bad omega range");
  if (n_points < 1) throw ValidationError("scan: n_points must be positive");

  std::vector<double> omegas(n_points);
  for (int i = 0; i < n_points; ++i) {
    double s = n_points == 1 ? 0.0 : static_cast<double>(i) / (n_points - 1);
    omegas[i] = log_spacing
                    ? omega_min * std::pow(omega_max / omega_min, s)
                    : omega_min + s * (omega_max - omega_min);
  }

  // each point is independent; workers fill disjoint slots
  std::vector<std::vector<ScanRow>> per_point(n_points);
  int n_threads = max_threads > 0 ? max_threads
                                  : static_cast<int>(std::min<unsigned>(
                                        8, std::thread::hardware_concurrency()));
  n_threads = std::clamp(n_threads, 1, n_points);
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (int i = t; i < n_points; i += n_threads)
          per_point[i] = rows_at(params, omegas[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::vector<ScanRow> rows;
  for (auto& chunk : per_point)
    rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

void scan_to_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "omega,branch,t1,t2,S_omega,M,verdict\n";
  for (const auto& r : rows)
    os << fmt17(r.omega) << ',' << to_string(r.branch) << ',' << fmt17(r.t1) << ','
       << fmt17(r.t2) << ',' << fmt17(r.action) << ',' << fmt17(r.mass) << ','
       << r.verdict << "\n";
}

void scan_to_json(std::ostream& os, const ModelParams& params,
                  const std::vector<ScanRow>& rows) {
  nlohmann::json out;
  out["gamma"] = params.gamma;
  out["lambda"] = params.lambda;
  out["mu"] = params.mu;
  out["omega0"] = params.omega0;
  out["omega_star"] = params.omega_star;
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["omega"] = r.omega;
    j["branch"] = to_string(r.branch);
    j["t1"] = r.t1;
    j["t2"] = r.t2;
    j["S_omega"] = r.action;
    j["M"] = r.mass;
    j["verdict"] = r.verdict;
    arr.push_back(j);
  }
  out["rows"] = arr;
  os << out.dump(2) << "\n";
}

}  // namespace dpnls
