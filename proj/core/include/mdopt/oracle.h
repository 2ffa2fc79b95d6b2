#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "mdopt/types.h"

namespace mdopt {

struct OracleMeta {
  std::optional<double> lipschitz_f;     // M_f: |f(x)-f(y)| <= M_f ||x-y||
  std::optional<double> lipschitz_grad;  // L: gradient Lipschitz constant
  double strong_convexity = 0.0;         // mu
};

// Value plus one subgradient per query.  eval and subgrad must agree: the
// returned vector is a valid subgradient of eval at the query point.
struct FunctionOracle {
  std::function<double(const Vec&)> eval;
  std::function<Vec(const Vec&)> subgrad;
  OracleMeta meta;
};

// f(x) = x' A x / 2 - b' x + c with symmetric A.  L and mu metadata are
// power-iteration estimates of the extreme eigenvalues (deterministic start).
FunctionOracle quadratic_oracle(const Mat& A, const Vec& b, double c);

// Pointwise max.  Subgradient of the lowest-indexed member attaining the max
// (exact value comparison), which keeps runs deterministic.
FunctionOracle max_oracle(std::vector<FunctionOracle> parts);

// Constraint block g_1..g_M with a shared hand-derived Lipschitz constant.
struct ConstraintOracle {
  std::vector<FunctionOracle> members;
  double lipschitz = 0.0;  // M_g

  int size() const { return static_cast<int>(members.size()); }
  double max_value(const Vec& x) const;
  // Aggregate max-constraint view used by the single-constraint algorithms.
  FunctionOracle aggregate() const;
};

// Most violated member above eps (ties -> lowest index); empty if the point
// is eps-feasible.
std::optional<std::pair<int, double>> max_violated(const ConstraintOracle& c,
                                                   const Vec& x, double eps);

// Lowest-indexed member above eps; empty if eps-feasible.  This is the
// member selection the multi-constraint solver steps on.
std::optional<std::pair<int, double>> first_violated(const ConstraintOracle& c,
                                                     const Vec& x, double eps);

}  // namespace mdopt
