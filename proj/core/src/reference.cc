#include <cmath>
#include <limits>
#include <stdexcept>

#include "mdopt/problem.h"

namespace mdopt {
namespace {

double set_scale(const FeasibleSet& set) {
  switch (set.kind) {
    case FeasibleSet::Kind::Ball: return set.radius;
    case FeasibleSet::Kind::Box: return 0.5 * (set.upper - set.lower).norm();
    case FeasibleSet::Kind::WholeSpace: return 1.0;
  }
  return 1.0;
}

// Normalized projected subgradient descent on max_i g_i; returns the point
// with the lowest constraint value seen.  Used to find an interior anchor
// for the feasibility shrink.
Vec interior_anchor(const Problem& problem, const Vec& start) {
  FunctionOracle g = problem.constraints.aggregate();
  Vec x = project(problem.feasible, start);
  Vec best = x;
  double best_g = g.eval(x);
  double c0 = set_scale(problem.feasible);
  for (int k = 0; k < 500; ++k) {
    Vec s = g.subgrad(x);
    double n = s.norm();
    if (n == 0.0) break;
    x = project(problem.feasible, x - (c0 / std::sqrt(k + 1.0)) * (s / n));
    double v = g.eval(x);
    if (v < best_g) {
      best_g = v;
      best = x;
    }
  }
  return best;
}

// Largest t in [0, 1] with max_i g_i(anchor + t (x - anchor)) <= margin.
Vec shrink_feasible(const Problem& problem, const Vec& anchor, const Vec& x,
                    double margin) {
  if (problem.constraints.max_value(x) <= margin) return x;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    Vec cand = anchor + mid * (x - anchor);
    if (problem.constraints.max_value(cand) <= margin)
      lo = mid;
    else
      hi = mid;
  }
  return anchor + lo * (x - anchor);
}

struct Candidate {
  Vec x;
  double f = std::numeric_limits<double>::infinity();
  bool found = false;
};

void offer(const Problem& problem, const Vec& x, Candidate* best) {
  if (problem.constraints.max_value(x) > 0.0) return;
  double f = problem.objective.eval(x);
  if (f < best->f) {
    best->f = f;
    best->x = x;
    best->found = true;
  }
}

// Projected gradient with backtracking on f + rho sum_i max(0, g_i)^2.
// The penalty term is differentiable, so this polishes smooth objectives to
// far better accuracy than the subgradient phase alone.
Vec penalty_polish(const Problem& problem, Vec x, double rho, int iters) {
  auto value = [&](const Vec& z) {
    double v = problem.objective.eval(z);
    for (const auto& m : problem.constraints.members) {
      double g = m.eval(z);
      if (g > 0.0) v += rho * g * g;
    }
    return v;
  };
  auto gradient = [&](const Vec& z) {
    Vec g = problem.objective.subgrad(z);
    for (const auto& m : problem.constraints.members) {
      double gv = m.eval(z);
      if (gv > 0.0) g += (2.0 * rho * gv) * m.subgrad(z);
    }
    return g;
  };

  double t = 1.0 / std::max(1.0, rho);
  double fx = value(x);
  for (int k = 0; k < iters; ++k) {
    Vec g = gradient(x);
    double gn2 = g.squaredNorm();
    if (gn2 == 0.0) break;
    t *= 2.0;
    bool moved = false;
    for (int bt = 0; bt < 60; ++bt) {
      Vec cand = project(problem.feasible, x - t * g);
      double fc = value(cand);
      if (fc < fx - 1e-12 * std::abs(fx)) {
        x = std::move(cand);
        fx = fc;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) break;
  }
  return x;
}

}  // namespace

ReferenceOpt compute_reference(const Problem& problem, long budget) {
  if (budget < 100000)
    throw std::invalid_argument("compute_reference: budget must be >= 1e5");

  FunctionOracle g = problem.constraints.aggregate();
  const Vec anchor = interior_anchor(problem, problem.x0);

  Candidate best;
  Vec x = project(problem.feasible, problem.x0);
  offer(problem, x, &best);
  double c0 = set_scale(problem.feasible);

  // Exact-penalty phase: subgradient of max{f - best_f, g} with diminishing
  // normalized steps; best_f tightens as feasible points are found.
  for (long k = 0; k < budget; ++k) {
    double gv = g.eval(x);
    Vec s;
    if (best.found && problem.objective.eval(x) - best.f >= gv)
      s = problem.objective.subgrad(x);
    else if (gv > 0.0 || !best.found)
      s = g.subgrad(x);
    else
      s = problem.objective.subgrad(x);
    double n = s.norm();
    if (n == 0.0) break;
    x = project(problem.feasible, x - (c0 / std::sqrt(k + 1.0)) * (s / n));
    offer(problem, x, &best);
    offer(problem, shrink_feasible(problem, anchor, x, 0.0), &best);
  }

  // Smooth-penalty polish with an increasing penalty ladder, then a final
  // feasibility shrink toward the interior anchor.
  Vec polished = best.found ? best.x : x;
  for (double rho : {1e2, 1e4, 1e6, 1e8}) {
    polished = penalty_polish(problem, polished, rho, 1000);
    offer(problem, shrink_feasible(problem, anchor, polished, 0.0), &best);
  }

  if (!best.found)
    throw std::runtime_error("compute_reference: no feasible point found");

  ReferenceOpt ref;
  ref.x_star = best.x;
  ref.f_star = best.f;
  ref.budget = budget;
  ref.residual = problem.constraints.max_value(best.x);
  ref.provenance = "exact-penalty subgradient + smooth-penalty polish";
  return ref;
}

}  // namespace mdopt
