#include "mdopt/prox.h"

namespace mdopt {

FeasibleSet FeasibleSet::ball(Vec center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("ball radius must be positive");
  FeasibleSet s;
  s.kind = Kind::Ball;
  s.dimension = static_cast<int>(center.size());
  s.center = std::move(center);
  s.radius = radius;
  return s;
}

FeasibleSet FeasibleSet::box(Vec lower, Vec upper) {
  if (lower.size() != upper.size())
    throw std::invalid_argument("box bounds dimension mismatch");
  if ((lower.array() > upper.array()).any())
    throw std::invalid_argument("box lower bound exceeds upper bound");
  FeasibleSet s;
  s.kind = Kind::Box;
  s.dimension = static_cast<int>(lower.size());
  s.lower = std::move(lower);
  s.upper = std::move(upper);
  return s;
}

FeasibleSet FeasibleSet::whole_space(int dim) {
  FeasibleSet s;
  s.kind = Kind::WholeSpace;
  s.dimension = dim;
  return s;
}

bool FeasibleSet::contains(const Vec& x, double tol) const {
  switch (kind) {
    case Kind::Ball:
      return (x - center).norm() <= radius + tol;
    case Kind::Box:
      return (x.array() >= lower.array() - tol).all() &&
             (x.array() <= upper.array() + tol).all();
    case Kind::WholeSpace:
      return true;
  }
  return false;
}

Vec project(const FeasibleSet& set, const Vec& x) {
  if (!x.allFinite()) throw std::invalid_argument("project: non-finite point");
  switch (set.kind) {
    case FeasibleSet::Kind::Ball: {
      Vec d = x - set.center;
      double n = d.norm();
      if (n <= set.radius) return x;
      return set.center + (set.radius / n) * d;
    }
    case FeasibleSet::Kind::Box:
      return x.cwiseMax(set.lower).cwiseMin(set.upper);
    case FeasibleSet::Kind::WholeSpace:
      return x;
  }
  return x;
}

ProxSetup euclidean_setup(Vec center, double scale, FeasibleSet feasible) {
  if (scale <= 0.0) throw std::invalid_argument("prox scale must be positive");
  ProxSetup s;
  s.dim = static_cast<int>(center.size());
  s.center = std::move(center);
  s.scale = scale;
  s.feasible = std::move(feasible);
  return s;
}

double ProxSetup::prox(const Vec& x) const {
  double n = (x - center).norm();
  return n * n / (2.0 * scale * scale);
}

double bregman(const ProxSetup& setup, const Vec& x, const Vec& y) {
  if (x.size() != setup.dim || y.size() != setup.dim)
    throw std::invalid_argument("bregman: dimension mismatch");
  double n = (y - x).norm();
  return n * n / (2.0 * setup.scale * setup.scale);
}

Vec mirror_step(const ProxSetup& setup, const Vec& x, const Vec& p, double h) {
  if (!p.allFinite()) throw std::invalid_argument("mirror_step: non-finite direction");
  if (h <= 0.0) throw std::invalid_argument("mirror_step: step size must be positive");
  if (!setup.feasible.contains(x, 1e-9))
    throw std::invalid_argument("mirror_step: point outside feasible set");
  return project(setup.feasible, x - (h * setup.scale * setup.scale) * p);
}

ProxSetup shifted_scaled(const ProxSetup& setup, const Vec& new_center,
                         double new_scale) {
  if (new_scale <= 0.0) throw std::invalid_argument("shifted_scaled: scale must be positive");
  ProxSetup s = setup;
  s.center = new_center + new_scale * setup.center;
  s.scale = new_scale * setup.scale;
  return s;
}

}  // namespace mdopt
