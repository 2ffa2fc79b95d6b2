#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mdopt/problem.h"
#include "mdopt/prox.h"
#include "mdopt/types.h"

namespace mdopt {

enum class StepKind { Productive, NonProductive };

enum class StopReason { CriterionMet, ZeroObjectiveGradient, IterationCap };

std::string to_string(StepKind kind);
std::string to_string(StopReason reason);

struct StepRecord {
  long index = 0;
  StepKind kind = StepKind::Productive;
  double h = 0.0;
  std::optional<int> constraint_index;  // multi-constraint runs only
  std::optional<double> f_value;        // productive steps only
  double g_value = 0.0;
  double grad_dual_norm = 0.0;
  std::optional<Vec> point;  // pre-step iterate, kept only on request
};

enum class OutputRule { BestProductive, WeightedAverage };

struct RunResult {
  Vec output;
  OutputRule output_rule = OutputRule::BestProductive;
  long iterations = 0;
  long productive = 0;
  std::vector<StepRecord> trace;
  StopReason stop = StopReason::CriterionMet;
  double wall_seconds = 0.0;

  long nonproductive() const { return iterations - productive; }
};

// Per-step audit of the mirror-step three-point inequality
//   h <p, x - z> <= (h^2 / 2) dual(p)^2 + V(x, z) - V(x_next, z)
// over a fixed probe set; violations beyond the tolerance are counted and the
// worst slack is retained.
class StepAudit {
 public:
  StepAudit(const ProxSetup& setup, double tolerance = 1e-8);

  void observe(const ProxSetup& setup, const Vec& x, const Vec& p, double h,
               const Vec& x_next);

  long checks() const { return checks_; }
  long violations() const { return violations_; }
  double worst_slack() const { return worst_slack_; }
  long first_violation_step() const { return first_violation_step_; }
  const std::vector<Vec>& probes() const { return probes_; }

 private:
  std::vector<Vec> probes_;
  double tolerance_;
  long checks_ = 0;
  long violations_ = 0;
  long steps_ = 0;
  long first_violation_step_ = -1;
  double worst_slack_ = 0.0;
};

struct SolveOptions {
  long iteration_cap = 10000000;
  bool record_trace = true;
  bool record_points = false;  // store each pre-step iterate in its record
  StepAudit* audit = nullptr;
};

// Raised when the fixed-count scheme finishes with no productive step, which
// contradicts its feasibility guarantee; the trace is preserved for
// inspection.
class ContradictionError : public std::runtime_error {
 public:
  ContradictionError(std::string what, std::vector<StepRecord> trace);
  const std::vector<StepRecord>& trace() const { return trace_; }

 private:
  std::vector<StepRecord> trace_;
};

// Raised when a constraint subgradient vanishes at an infeasible point, which
// certifies that the constraint level is unattainable.
class InfeasibilityError : public std::runtime_error {
 public:
  InfeasibilityError(std::string what, std::vector<StepRecord> trace);
  const std::vector<StepRecord>& trace() const { return trace_; }

 private:
  std::vector<StepRecord> trace_;
};

// Fully adaptive scheme: step ε/dual(∇f) on productive steps, ε/dual(∇g)² on
// non-productive ones; stops once (ε²/2)·Σ weights covers the initial
// distance bound.  Output is the best productive iterate.
RunResult solve_adaptive(const Problem& problem, const ProxSetup& setup,
                         double eps, const Vec& start,
                         const SolveOptions& opts = {});

// Partially adaptive scheme: the constraint Lipschitz bound replaces the
// observed constraint subgradient norms; runs a fixed iteration count.
RunResult solve_partially_adaptive(const Problem& problem,
                                   const ProxSetup& setup, double eps,
                                   const Vec& start,
                                   const SolveOptions& opts = {});

// Norm-adaptive scheme: both branches step ε/M² with M the dual norm of the
// selected subgradient; output is the step-weighted average of productive
// iterates.
RunResult solve_lipschitz(const Problem& problem, const ProxSetup& setup,
                          double eps, const Vec& start,
                          const SolveOptions& opts = {});

// Multi-constraint variant of the fully adaptive scheme: non-productive steps
// use the first constraint whose value exceeds ε rather than the aggregate
// max, and record which one.
RunResult solve_multi_constraint(const Problem& problem,
                                 const ProxSetup& setup, double eps,
                                 const Vec& start,
                                 const SolveOptions& opts = {});

// <∇f(x)/dual(∇f(x)), x - y>, zero when the subgradient vanishes; bounded by
// the prox-norm of x - y and certifies an objective gap at rate M_f · ε.
double v_f(const Problem& problem, const ProxSetup& setup, const Vec& x,
           const Vec& y);

// Guaranteed step bound for the adaptive schemes at accuracy ε.
long adaptive_iteration_bound(const Problem& problem, double eps);

// Exact fixed count ⌈2 M² Θ₀² / ε²⌉ used by the partially adaptive scheme.
long partially_adaptive_iteration_count(const Problem& problem,
                                        const ProxSetup& setup, double eps);

}  // namespace mdopt
