#include "mdopt/oracle.h"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace mdopt {
namespace {

// Largest eigenvalue of symmetric PSD A by fixed-iteration power method.
// Start vector ones/sqrt(n) keeps the estimate deterministic.
double power_lambda_max(const Mat& A) {
  int n = static_cast<int>(A.rows());
  if (n == 0) return 0.0;
  Vec v = Vec::Constant(n, 1.0 / std::sqrt(static_cast<double>(n)));
  double lambda = 0.0;
  for (int it = 0; it < 100; ++it) {
    Vec w = A * v;
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    lambda = v.dot(A * v);
  }
  return lambda;
}

}  // namespace

FunctionOracle quadratic_oracle(const Mat& A, const Vec& b, double c) {
  if (A.rows() != A.cols() || A.rows() != b.size())
    throw std::invalid_argument("quadratic_oracle: dimension mismatch");
  if (!A.isApprox(A.transpose(), 1e-12))
    throw std::invalid_argument("quadratic_oracle: matrix must be symmetric");

  auto Ap = std::make_shared<Mat>(A);
  auto bp = std::make_shared<Vec>(b);

  FunctionOracle o;
  o.eval = [Ap, bp, c](const Vec& x) {
    return 0.5 * x.dot(*Ap * x) - bp->dot(x) + c;
  };
  o.subgrad = [Ap, bp](const Vec& x) -> Vec { return *Ap * x - *bp; };

  double lmax = power_lambda_max(A);
  // Smallest eigenvalue via the spectrum flip lmax*I - A.
  Mat flipped = lmax * Mat::Identity(A.rows(), A.cols()) - A;
  double lmin = lmax - power_lambda_max(flipped);
  o.meta.lipschitz_grad = lmax;
  o.meta.strong_convexity = lmin > 0.0 ? lmin : 0.0;
  return o;
}

FunctionOracle max_oracle(std::vector<FunctionOracle> parts) {
  if (parts.empty()) throw std::invalid_argument("max_oracle: empty member list");

  auto shared = std::make_shared<std::vector<FunctionOracle>>(std::move(parts));

  FunctionOracle o;
  o.eval = [shared](const Vec& x) {
    double best = (*shared)[0].eval(x);
    for (size_t i = 1; i < shared->size(); ++i)
      best = std::max(best, (*shared)[i].eval(x));
    return best;
  };
  o.subgrad = [shared](const Vec& x) -> Vec {
    size_t arg = 0;
    double best = (*shared)[0].eval(x);
    for (size_t i = 1; i < shared->size(); ++i) {
      double v = (*shared)[i].eval(x);
      if (v > best) {  // strict: ties keep the lowest index
        best = v;
        arg = i;
      }
    }
    return (*shared)[arg].subgrad(x);
  };

  bool all_mf = true, all_l = true;
  double mf = 0.0, l = 0.0, mu = (*shared)[0].meta.strong_convexity;
  for (const auto& p : *shared) {
    if (p.meta.lipschitz_f) mf = std::max(mf, *p.meta.lipschitz_f); else all_mf = false;
    if (p.meta.lipschitz_grad) l = std::max(l, *p.meta.lipschitz_grad); else all_l = false;
    mu = std::min(mu, p.meta.strong_convexity);
  }
  if (all_mf) o.meta.lipschitz_f = mf;
  if (all_l) o.meta.lipschitz_grad = l;
  o.meta.strong_convexity = mu;
  return o;
}

double ConstraintOracle::max_value(const Vec& x) const {
  double best = members[0].eval(x);
  for (size_t i = 1; i < members.size(); ++i)
    best = std::max(best, members[i].eval(x));
  return best;
}

FunctionOracle ConstraintOracle::aggregate() const {
  return max_oracle(members);
}

std::optional<std::pair<int, double>> max_violated(const ConstraintOracle& c,
                                                   const Vec& x, double eps) {
  if (!x.allFinite()) throw std::invalid_argument("max_violated: non-finite point");
  int arg = -1;
  double best = 0.0;
  for (int i = 0; i < c.size(); ++i) {
    double v = c.members[i].eval(x);
    if (arg < 0 || v > best) {
      arg = i;
      best = v;
    }
  }
  if (arg < 0 || best <= eps) return std::nullopt;
  return std::make_pair(arg, best);
}

std::optional<std::pair<int, double>> first_violated(const ConstraintOracle& c,
                                                     const Vec& x, double eps) {
  for (int i = 0; i < c.size(); ++i) {
    double v = c.members[i].eval(x);
    if (v > eps) return std::make_pair(i, v);
  }
  return std::nullopt;
}

}  // namespace mdopt
