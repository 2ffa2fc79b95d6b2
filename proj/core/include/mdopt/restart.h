#pragma once

#include <utility>
#include <vector>

#include "mdopt/problem.h"
#include "mdopt/solve.h"

namespace mdopt {

enum class InnerSolver { Adaptive, PartiallyAdaptive };

struct RestartStage {
  int p = 0;          // 1-based stage index
  double radius = 0;  // R_p, the guaranteed distance bound after this stage
  double eps_p = 0;   // stage accuracy μ R_p² / 2
  RunResult inner;
  Vec x;  // stage output x^p
};

struct RestartReport {
  std::vector<RestartStage> stages;
  int p_hat = 0;
  long total_inner_iterations = 0;
  Vec output;
  bool zero_restarts = false;  // ε ≥ μR₀²/2: x⁰ already qualifies
  StopReason stop = StopReason::CriterionMet;
  double r0_sq = 0.0;
};

// Halving-radius restart wrapper for strongly convex problems: stage p runs
// the inner scheme from x^{p-1} on a prox recentered there, at accuracy
// μ R₀² 2^{-p} / 2, so the squared distance to the optimum halves per stage.
RestartReport solve_restarted(const Problem& problem, InnerSolver inner,
                              double eps, const SolveOptions& opts = {});

// Per-stage check ‖x^p − x*‖² ≤ R₀² 2^{-p} + 1e-6.
std::vector<std::pair<int, bool>> contraction_audit(const RestartReport& report,
                                                    const Vec& x_star);

}  // namespace mdopt
