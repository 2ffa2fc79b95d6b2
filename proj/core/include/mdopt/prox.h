#pragma once

#include <stdexcept>

#include "mdopt/types.h"

namespace mdopt {

// Closed convex sets with exact closed-form Euclidean projection.
struct FeasibleSet {
  enum class Kind { Ball, Box, WholeSpace };

  Kind kind = Kind::WholeSpace;
  int dimension = 0;
  Vec center;      // Ball
  double radius = 0.0;
  Vec lower, upper;  // Box

  static FeasibleSet ball(Vec center, double radius);
  static FeasibleSet box(Vec lower, Vec upper);
  static FeasibleSet whole_space(int dim);

  int dim() const { return dimension; }
  bool contains(const Vec& x, double tol = 1e-9) const;
};

Vec project(const FeasibleSet& set, const Vec& x);

// One prox geometry: d(x) = ||x - center||^2 / (2 R^2), 1-strongly convex
// w.r.t. ||.||_2 / R, whose dual norm is R ||.||_2.
struct ProxSetup {
  int dim = 0;
  Vec center;
  double scale = 1.0;  // R
  FeasibleSet feasible;

  double prox(const Vec& x) const;
  double norm(const Vec& v) const { return v.norm() / scale; }
  double dual_norm(const Vec& p) const { return scale * p.norm(); }
};

ProxSetup euclidean_setup(Vec center, double scale, FeasibleSet feasible);

// V(x, y) = d(y) - d(x) - <grad d(x), y - x> = ||y - x||^2 / (2 R^2).
double bregman(const ProxSetup& setup, const Vec& x, const Vec& y);

// argmin_{u in X} { <h p, u> + V(x, u) } = project_X(x - h R^2 p).
Vec mirror_step(const ProxSetup& setup, const Vec& x, const Vec& p, double h);

// New geometry with prox x -> d((x - new_center) / new_scale).  The affine
// reparameterization composes: absolute center new_center + new_scale * old
// center, absolute scale new_scale * old scale.
ProxSetup shifted_scaled(const ProxSetup& setup, const Vec& new_center,
                         double new_scale);

}  // namespace mdopt
