#include <chrono>
#include <cmath>
#include <limits>
#include <utility>

#include "mdopt/solve.h"

namespace mdopt {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Rounds up, but snaps values within 1e-9 of an integer first so exact
// analytic counts like 2 M^2 Th^2 / eps^2 survive floating-point noise.
long ceil_count(double q) {
  double r = std::round(q);
  if (std::abs(q - r) < 1e-9 * std::max(1.0, std::abs(r)))
    return static_cast<long>(r);
  return static_cast<long>(std::ceil(q));
}

void require_start(const ProxSetup& setup, const Vec& start) {
  if (start.size() != setup.dim)
    throw std::invalid_argument("solve: start dimension mismatch");
  if (!setup.feasible.contains(start, 1e-9))
    throw std::invalid_argument("solve: start outside feasible set");
}

struct BestProductiveTracker {
  double f = std::numeric_limits<double>::infinity();
  Vec x;
  bool found = false;

  void offer(double f_value, const Vec& point) {
    if (!found || f_value < f) {  // strict: earliest productive iterate wins ties
      f = f_value;
      x = point;
      found = true;
    }
  }
};

Vec advance(const ProxSetup& setup, const Vec& x, const Vec& p, double h,
            StepAudit* audit) {
  Vec next = mirror_step(setup, x, p, h);
  if (audit != nullptr) audit->observe(setup, x, p, h, next);
  return next;
}

// Shared loop for the adaptive scheme and its multi-constraint variant; they
// differ only in which constraint subgradient drives a non-productive step.
RunResult run_adaptive(const Problem& problem, const ProxSetup& setup,
                       double eps, const Vec& start, const SolveOptions& opts,
                       bool per_constraint) {
  require_start(setup, start);
  auto t0 = Clock::now();
  FunctionOracle g = problem.constraints.aggregate();

  RunResult res;
  res.output_rule = OutputRule::BestProductive;
  BestProductiveTracker best;
  Vec x = start;
  double weight_sum = 0.0;
  const double theta_sq = problem.theta0 * problem.theta0;

  while (true) {
    if (res.iterations >= opts.iteration_cap) {
      res.stop = StopReason::IterationCap;
      break;
    }
    double g_val = g.eval(x);
    StepRecord rec;
    rec.index = res.iterations;
    if (opts.record_points) rec.point = x;
    if (g_val <= eps) {
      Vec grad = problem.objective.subgrad(x);
      double m = setup.dual_norm(grad);
      if (m == 0.0) {
        res.stop = StopReason::ZeroObjectiveGradient;
        best.offer(problem.objective.eval(x), x);
        break;
      }
      double f_val = problem.objective.eval(x);
      best.offer(f_val, x);
      rec.kind = StepKind::Productive;
      rec.h = eps / m;
      rec.f_value = f_val;
      rec.g_value = g_val;
      rec.grad_dual_norm = m;
      x = advance(setup, x, grad, rec.h, opts.audit);
      weight_sum += 1.0;
      ++res.productive;
    } else {
      Vec grad;
      if (per_constraint) {
        auto [idx, value] = *first_violated(problem.constraints, x, eps);
        grad = problem.constraints.members[idx].subgrad(x);
        rec.constraint_index = idx;
        rec.g_value = value;
      } else {
        grad = g.subgrad(x);
        rec.g_value = g_val;
      }
      double m = setup.dual_norm(grad);
      if (m == 0.0)
        throw InfeasibilityError(
            "constraint subgradient vanished above the target level",
            std::move(res.trace));
      rec.kind = StepKind::NonProductive;
      rec.h = eps / (m * m);
      rec.grad_dual_norm = m;
      x = advance(setup, x, grad, rec.h, opts.audit);
      weight_sum += 1.0 / (m * m);
    }
    ++res.iterations;
    if (opts.record_trace) res.trace.push_back(std::move(rec));
    if (0.5 * eps * eps * weight_sum >= theta_sq) {
      res.stop = StopReason::CriterionMet;
      break;
    }
  }

  if (res.stop == StopReason::CriterionMet && !best.found)
    throw ContradictionError("stopping criterion met with no productive step",
                             std::move(res.trace));
  res.output = best.found ? best.x : x;
  res.wall_seconds = seconds_since(t0);
  return res;
}

}  // namespace

std::string to_string(StepKind kind) {
  return kind == StepKind::Productive ? "productive" : "nonproductive";
}

std::string to_string(StopReason reason) {
  switch (reason) {
    case StopReason::CriterionMet: return "criterion_met";
    case StopReason::ZeroObjectiveGradient: return "zero_objective_gradient";
    case StopReason::IterationCap: return "iteration_cap";
  }
  return "unknown";
}

ContradictionError::ContradictionError(std::string what,
                                       std::vector<StepRecord> trace)
    : std::runtime_error(std::move(what)), trace_(std::move(trace)) {}

InfeasibilityError::InfeasibilityError(std::string what,
                                       std::vector<StepRecord> trace)
    : std::runtime_error(std::move(what)), trace_(std::move(trace)) {}

StepAudit::StepAudit(const ProxSetup& setup, double tolerance)
    : tolerance_(tolerance) {
  int n = setup.dim;
  Vec center;
  double radius;
  switch (setup.feasible.kind) {
    case FeasibleSet::Kind::Ball:
      center = setup.feasible.center;
      radius = setup.feasible.radius;
      break;
    case FeasibleSet::Kind::Box:
      center = 0.5 * (setup.feasible.lower + setup.feasible.upper);
      radius = 0.5 * (setup.feasible.upper - setup.feasible.lower).norm();
      break;
    case FeasibleSet::Kind::WholeSpace:
    default:
      center = setup.center;
      radius = std::max(1.0, setup.scale);
      break;
  }
  for (int j = 0; j < 8; ++j) {
    Vec d(n);
    for (int i = 0; i < n; ++i)
      d(i) = std::sin(1.0 + 0.7 * (i + 1) * (j + 1)) +
             0.1 * std::cos(2.0 * (j + 1) + i);
    double dn = d.norm();
    if (dn == 0.0) {
      d.setOnes();
      dn = d.norm();
    }
    double rho = radius * (0.2 + 0.8 * j / 7.0);
    probes_.push_back(project(setup.feasible, center + (rho / dn) * d));
  }
}

void StepAudit::observe(const ProxSetup& setup, const Vec& x, const Vec& p,
                        double h, const Vec& x_next) {
  double dual = setup.dual_norm(p);
  for (const Vec& z : probes_) {
    double lhs = h * p.dot(x - z);
    double rhs = 0.5 * h * h * dual * dual + bregman(setup, x, z) -
                 bregman(setup, x_next, z);
    double slack = lhs - rhs;
    ++checks_;
    if (slack > tolerance_) {
      ++violations_;
      if (first_violation_step_ < 0) first_violation_step_ = steps_;
    }
    if (slack > worst_slack_) worst_slack_ = slack;
  }
  ++steps_;
}

RunResult solve_adaptive(const Problem& problem, const ProxSetup& setup,
                         double eps, const Vec& start,
                         const SolveOptions& opts) {
  return run_adaptive(problem, setup, eps, start, opts, false);
}

RunResult solve_multi_constraint(const Problem& problem,
                                 const ProxSetup& setup, double eps,
                                 const Vec& start, const SolveOptions& opts) {
  return run_adaptive(problem, setup, eps, start, opts, true);
}

RunResult solve_partially_adaptive(const Problem& problem,
                                   const ProxSetup& setup, double eps,
                                   const Vec& start, const SolveOptions& opts) {
  require_start(setup, start);
  auto t0 = Clock::now();
  FunctionOracle g = problem.constraints.aggregate();
  const double m_eff = problem.M_g * setup.scale;
  const long count = partially_adaptive_iteration_count(problem, setup, eps);

  RunResult res;
  res.output_rule = OutputRule::BestProductive;
  res.stop = StopReason::CriterionMet;
  BestProductiveTracker best;
  Vec x = start;

  for (long k = 0; k < count; ++k) {
    if (res.iterations >= opts.iteration_cap) {
      res.stop = StopReason::IterationCap;
      break;
    }
    double g_val = g.eval(x);
    StepRecord rec;
    rec.index = res.iterations;
    rec.g_value = g_val;
    if (opts.record_points) rec.point = x;
    if (g_val <= eps) {
      Vec grad = problem.objective.subgrad(x);
      double m = setup.dual_norm(grad);
      if (m == 0.0) {
        res.stop = StopReason::ZeroObjectiveGradient;
        best.offer(problem.objective.eval(x), x);
        break;
      }
      double f_val = problem.objective.eval(x);
      best.offer(f_val, x);
      rec.kind = StepKind::Productive;
      rec.h = eps / (m_eff * m);
      rec.f_value = f_val;
      rec.grad_dual_norm = m;
      x = advance(setup, x, grad, rec.h, opts.audit);
      ++res.productive;
    } else {
      Vec grad = g.subgrad(x);
      double m = setup.dual_norm(grad);
      if (m == 0.0)
        throw InfeasibilityError(
            "constraint subgradient vanished above the target level",
            std::move(res.trace));
      rec.kind = StepKind::NonProductive;
      rec.h = eps / (m_eff * m_eff);
      rec.grad_dual_norm = m;
      x = advance(setup, x, grad, rec.h, opts.audit);
    }
    ++res.iterations;
    if (opts.record_trace) res.trace.push_back(std::move(rec));
  }

  if (res.stop == StopReason::CriterionMet && !best.found)
    throw ContradictionError(
        "fixed-count run finished with no productive step",
        std::move(res.trace));
  res.output = best.found ? best.x : x;
  res.wall_seconds = seconds_since(t0);
  return res;
}

RunResult solve_lipschitz(const Problem& problem, const ProxSetup& setup,
                          double eps, const Vec& start,
                          const SolveOptions& opts) {
  require_start(setup, start);
  auto t0 = Clock::now();
  FunctionOracle g = problem.constraints.aggregate();

  RunResult res;
  res.output_rule = OutputRule::WeightedAverage;
  Vec x = start;
  Vec weighted = Vec::Zero(setup.dim);
  double h_sum = 0.0;
  double weight_sum = 0.0;
  const double theta_sq = problem.theta0 * problem.theta0;

  while (true) {
    if (res.iterations >= opts.iteration_cap) {
      res.stop = StopReason::IterationCap;
      break;
    }
    double g_val = g.eval(x);
    StepRecord rec;
    rec.index = res.iterations;
    rec.g_value = g_val;
    if (opts.record_points) rec.point = x;
    Vec grad;
    if (g_val <= eps) {
      grad = problem.objective.subgrad(x);
      double m = setup.dual_norm(grad);
      if (m == 0.0) {
        res.stop = StopReason::ZeroObjectiveGradient;
        res.output_rule = OutputRule::BestProductive;
        res.output = x;
        res.wall_seconds = seconds_since(t0);
        return res;
      }
      double f_val = problem.objective.eval(x);
      rec.kind = StepKind::Productive;
      rec.h = eps / (m * m);
      rec.f_value = f_val;
      rec.grad_dual_norm = m;
      weighted += rec.h * x;  // pre-step iterate carries the weight
      h_sum += rec.h;
      weight_sum += 1.0 / (m * m);
      x = advance(setup, x, grad, rec.h, opts.audit);
      ++res.productive;
    } else {
      grad = g.subgrad(x);
      double m = setup.dual_norm(grad);
      if (m == 0.0)
        throw InfeasibilityError(
            "constraint subgradient vanished above the target level",
            std::move(res.trace));
      rec.kind = StepKind::NonProductive;
      rec.h = eps / (m * m);
      rec.grad_dual_norm = m;
      weight_sum += 1.0 / (m * m);
      x = advance(setup, x, grad, rec.h, opts.audit);
    }
    ++res.iterations;
    if (opts.record_trace) res.trace.push_back(std::move(rec));
    if (0.5 * eps * eps * weight_sum >= theta_sq) {
      res.stop = StopReason::CriterionMet;
      break;
    }
  }

  if (res.stop == StopReason::CriterionMet && h_sum == 0.0)
    throw ContradictionError("stopping criterion met with no productive step",
                             std::move(res.trace));
  res.output = h_sum > 0.0 ? Vec((weighted / h_sum).eval()) : x;
  res.wall_seconds = seconds_since(t0);
  return res;
}

double v_f(const Problem& problem, const ProxSetup& setup, const Vec& x,
           const Vec& y) {
  Vec grad = problem.objective.subgrad(x);
  double m = setup.dual_norm(grad);
  if (m == 0.0) return 0.0;
  return grad.dot(x - y) / m;
}

long adaptive_iteration_bound(const Problem& problem, double eps) {
  double m = std::max(1.0, problem.M_g);
  double theta_sq = problem.theta0 * problem.theta0;
  return ceil_count(2.0 * m * m * theta_sq / (eps * eps));
}

long partially_adaptive_iteration_count(const Problem& problem,
                                        const ProxSetup& setup, double eps) {
  double m = problem.M_g * setup.scale;
  double theta_sq = problem.theta0 * problem.theta0;
  return ceil_count(2.0 * m * m * theta_sq / (eps * eps));
}

}  // namespace mdopt
