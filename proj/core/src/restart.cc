#include <cmath>
#include <stdexcept>

#include "mdopt/restart.h"

namespace mdopt {

RestartReport solve_restarted(const Problem& problem, InnerSolver inner,
                              double eps, const SolveOptions& opts) {
  if (problem.mu <= 0.0)
    throw std::invalid_argument("restart requires a strongly convex problem");
  if (!problem.R0)
    throw std::invalid_argument("restart requires an initial radius bound");
  if (problem.theta0 * problem.theta0 < 0.5 - 1e-12)
    throw std::invalid_argument("restart requires theta0 >= 1/sqrt(2)");
  if (eps <= 0.0) throw std::invalid_argument("restart: eps must be positive");

  RestartReport report;
  report.r0_sq = *problem.R0 * *problem.R0;
  double stages = std::log2(problem.mu * report.r0_sq / (2.0 * eps));
  double snapped = std::round(stages);
  report.p_hat = static_cast<int>(
      std::abs(stages - snapped) < 1e-9 ? snapped : std::ceil(stages));

  if (report.p_hat <= 0) {
    report.p_hat = 0;
    report.zero_restarts = true;
    report.output = problem.x0;
    return report;
  }

  // Each stage starts within R_{p-1} of the optimum, so the halved-radius
  // distance bound R₀²/2 is valid for every recentered inner run.
  Problem stage_problem = problem;
  stage_problem.theta0 = std::sqrt(report.r0_sq / 2.0);

  Vec x = problem.x0;
  for (int p = 1; p <= report.p_hat; ++p) {
    double radius_sq = std::ldexp(report.r0_sq, -p);
    RestartStage stage;
    stage.p = p;
    stage.radius = std::sqrt(radius_sq);
    stage.eps_p = 0.5 * problem.mu * radius_sq;

    SolveOptions inner_opts = opts;
    inner_opts.iteration_cap = opts.iteration_cap - report.total_inner_iterations;
    ProxSetup setup = euclidean_setup(x, 1.0, problem.feasible);
    stage.inner = inner == InnerSolver::Adaptive
                      ? solve_adaptive(stage_problem, setup, stage.eps_p, x,
                                       inner_opts)
                      : solve_partially_adaptive(stage_problem, setup,
                                                 stage.eps_p, x, inner_opts);
    x = stage.inner.output;
    stage.x = x;
    report.total_inner_iterations += stage.inner.iterations;
    bool capped = stage.inner.stop == StopReason::IterationCap;
    report.stages.push_back(std::move(stage));
    if (capped) {
      report.stop = StopReason::IterationCap;
      break;
    }
  }
  report.output = x;
  return report;
}

std::vector<std::pair<int, bool>> contraction_audit(const RestartReport& report,
                                                    const Vec& x_star) {
  std::vector<std::pair<int, bool>> checks;
  for (const auto& stage : report.stages) {
    double d2 = (stage.x - x_star).squaredNorm();
    checks.emplace_back(stage.p,
                        d2 <= std::ldexp(report.r0_sq, -stage.p) + 1e-6);
  }
  return checks;
}

}  // namespace mdopt
