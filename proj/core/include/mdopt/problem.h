#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mdopt/oracle.h"
#include "mdopt/prox.h"

namespace mdopt {

struct ReferenceOpt {
  Vec x_star;
  double f_star = 0.0;
  std::string provenance;
  long budget = 0;
  double residual = 0.0;  // max_i g_i at x_star, <= 0 for a strictly feasible point
};

// Defining data a factory bakes into its oracles, kept alongside so instances
// can be serialized and a reloaded file checked against the builder bit for
// bit.  Ordered for deterministic output.
struct FixtureData {
  std::vector<std::pair<std::string, Mat>> matrices;
  std::vector<std::pair<std::string, Vec>> vectors;
  std::vector<std::pair<std::string, double>> constants;
};

struct Problem {
  std::string name;
  int dim = 0;
  FunctionOracle objective;
  ConstraintOracle constraints;
  FeasibleSet feasible;
  double theta0 = 0.0;  // d(x_star) <= theta0^2 for the default prox setup
  double M_g = 0.0;     // constraint Lipschitz constant w.r.t. ||.||_2 on X
  double mu = 0.0;
  Vec x0;
  std::optional<double> R0;
  double verify_eps = 0.1;  // accuracy the invariant battery solves at
  std::optional<ReferenceOpt> reference;
  FixtureData fixture;

  // Default geometry: base Euclidean prox centered at the start point.
  ProxSetup prox() const { return euclidean_setup(x0, 1.0, feasible); }
};

// 1-D sanity instance: f(x) = x, g(x) = x - 1/2 on X = [-1, 1].
Problem toy_1d();

// Sum-of-distances objective to the ten fixed anchor points, ten constraints.
// Default geometry: ball of radius sqrt(10) so the start (1,...,1) is interior;
// the *_unit variants restrict to the unit ball with a projected start.
Problem fts_quadratic();   // g_i(x) = ||x||^2 + x_i^2 - 1,  M_g = 4 sqrt(10)
Problem fts_nonsmooth();   // g_i(x) = sum_j c_ij |x_j| - 1, M_g = sqrt(130)
Problem fts_quadratic_unit();
Problem fts_nonsmooth_unit();

// Five 1-strongly-convex objectives on the unit ball sharing the constraint
// g(x) = max_i <alpha_i, x> + ||x||^2 / 2.
std::vector<Problem> strongly_convex_suite();
Problem strongly_convex_example(int k);  // k in 1..5

// Registry over every shipped instance (toy-1d, fts-*, sc-example1..5).
std::vector<std::string> problem_names();
Problem problem_by_name(const std::string& name);

// Independent long-run oracle: exact-penalty subgradient phase, smooth-penalty
// polish, then a feasibility shrink; returns the best strictly feasible point.
ReferenceOpt compute_reference(const Problem& problem, long budget);

}  // namespace mdopt
