#include "mdopt/problem.h"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace mdopt {
namespace {

// Anchor points of the sum-of-distances objective, one per row.
const double kAnchors[10][10] = {
    {1, 2, 1, 4, 1, 0, 4, 4, 4, 3},
    {2, 4, 3, 1, 0, 2, 4, 0, 4, 0},
    {3, 2, 3, 4, 3, 0, 3, 4, 2, 3},
    {0, 0, 2, 0, 2, 4, 4, 1, 0, 0},
    {3, 3, 4, 4, 3, 0, 1, 0, 4, 4},
    {2, 2, 4, 0, 4, 0, 2, 2, 1, 1},
    {0, 4, 3, 4, 2, 3, 3, 4, 0, 2},
    {2, 2, 1, 4, 2, 1, 4, 3, 0, 3},
    {4, 1, 2, 2, 3, 3, 2, 1, 3, 1},
    {3, 3, 2, 2, 0, 0, 4, 0, 3, 4},
};

// Rows alpha_i of the shared strongly convex constraint.
const double kAlpha[10][10] = {
    {1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
    {7, 8, 6, 2, 9, 2, 3, 3, 2, 6},
    {6, 3, 4, 3, 5, 1, 6, 3, 2, 8},
    {3, 5, 2, 7, 8, 3, 2, 1, 5, 2},
    {2, 3, 1, 8, 1, 2, 1, 1, 5, 8},
    {1, 8, 9, 1, 3, 5, 1, 3, 5, 2},
    {1, 7, 8, 5, 5, 9, 3, 1, 6, 4},
    {7, 3, 5, 8, 9, 1, 8, 7, 8, 8},
    {6, 4, 6, 2, 9, 2, 3, 1, 6, 3},
    {2, 3, 4, 4, 2, 1, 9, 1, 1, 8},
};

Mat anchors_matrix() {
  Mat A(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) A(i, j) = kAnchors[i][j];
  return A;
}

Mat alpha_matrix() {
  Mat A(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) A(i, j) = kAlpha[i][j];
  return A;
}

// f(x) = sum_k ||x - a_k||.  Each distance term contributes its unit radial
// vector; a vanishing term (x at an anchor) contributes the zero subgradient.
FunctionOracle sum_of_distances_oracle(const Mat& anchors) {
  auto Ap = std::make_shared<Mat>(anchors);
  FunctionOracle o;
  o.eval = [Ap](const Vec& x) {
    double s = 0.0;
    for (int k = 0; k < Ap->rows(); ++k) s += (x - Ap->row(k).transpose()).norm();
    return s;
  };
  o.subgrad = [Ap](const Vec& x) -> Vec {
    Vec g = Vec::Zero(x.size());
    for (int k = 0; k < Ap->rows(); ++k) {
      Vec d = x - Ap->row(k).transpose();
      double n = d.norm();
      if (n > 0.0) g += d / n;
    }
    return g;
  };
  o.meta.lipschitz_f = static_cast<double>(anchors.rows());
  return o;
}

// g_i(x) = ||x||^2 + x_i^2 - 1 as a quadratic with matrix 2I + 2 e_i e_i'.
ConstraintOracle fts_quadratic_constraints() {
  ConstraintOracle c;
  for (int i = 0; i < 10; ++i) {
    Mat A = 2.0 * Mat::Identity(10, 10);
    A(i, i) = 4.0;
    c.members.push_back(quadratic_oracle(A, Vec::Zero(10), -1.0));
  }
  c.lipschitz = 4.0 * std::sqrt(10.0);
  return c;
}

// g_i(x) = sum_j c_ij |x_j| - 1, coefficient i+1 on coordinate i, 1 elsewhere.
// Subgradient of |.| at 0 is taken as 0.
ConstraintOracle fts_nonsmooth_constraints() {
  ConstraintOracle c;
  for (int i = 0; i < 10; ++i) {
    Vec w = Vec::Ones(10);
    w[i] = static_cast<double>(i + 2);
    auto wp = std::make_shared<Vec>(w);
    FunctionOracle m;
    m.eval = [wp](const Vec& x) { return wp->dot(x.cwiseAbs()) - 1.0; };
    m.subgrad = [wp](const Vec& x) -> Vec {
      Vec g(x.size());
      for (int j = 0; j < x.size(); ++j)
        g[j] = x[j] > 0.0 ? (*wp)[j] : (x[j] < 0.0 ? -(*wp)[j] : 0.0);
      return g;
    };
    m.meta.lipschitz_f = wp->norm();
    c.members.push_back(std::move(m));
  }
  // Largest coefficient row: (1,...,1, 11) has norm sqrt(130).
  c.lipschitz = std::sqrt(130.0);
  return c;
}

Problem fts_base(const std::string& name, ConstraintOracle constraints,
                 double M_g, bool unit_ball) {
  Problem p;
  p.name = name;
  p.dim = 10;
  p.objective = sum_of_distances_oracle(anchors_matrix());
  p.constraints = std::move(constraints);
  p.M_g = M_g;
  p.theta0 = 3.0;
  p.verify_eps = 0.125;
  if (unit_ball) {
    p.feasible = FeasibleSet::ball(Vec::Zero(10), 1.0);
    p.x0 = Vec::Constant(10, 1.0 / std::sqrt(10.0));
  } else {
    p.feasible = FeasibleSet::ball(Vec::Zero(10), std::sqrt(10.0));
    p.x0 = Vec::Ones(10);
  }
  p.fixture.matrices.emplace_back("anchors", anchors_matrix());
  return p;
}

// Shared constraint of the strongly convex suite: max_i <alpha_i, x> +
// ||x||^2/2, expressed as the max of ten quadratics with identical quadratic
// part so the aggregate subgradient is alpha_active + x.
ConstraintOracle strongly_convex_constraint() {
  Mat A = alpha_matrix();
  ConstraintOracle c;
  for (int i = 0; i < 10; ++i)
    c.members.push_back(
        quadratic_oracle(Mat::Identity(10, 10), -A.row(i).transpose(), 0.0));
  double amax = 0.0;
  for (int i = 0; i < 10; ++i) amax = std::max(amax, A.row(i).norm());
  c.lipschitz = amax + 1.0;  // sup ||alpha_i + x|| over the unit ball
  return c;
}

Problem sc_base(int k, FunctionOracle objective) {
  Problem p;
  p.name = "sc-example" + std::to_string(k);
  p.dim = 10;
  p.objective = std::move(objective);
  p.constraints = strongly_convex_constraint();
  p.feasible = FeasibleSet::ball(Vec::Zero(10), 1.0);
  p.theta0 = 3.0;
  p.M_g = p.constraints.lipschitz;
  p.mu = 1.0;
  p.R0 = 2.0;
  p.x0 = Vec::Constant(10, 1.0 / std::sqrt(10.0));
  p.verify_eps = 0.05;
  return p;
}

// Worst-case quadratic chain: (L-mu)/4 * (<T x, x>/2 - x_1) + mu ||x||^2 / 2,
// T tridiagonal (-1, 2, -1) with the last diagonal entry 1.
FunctionOracle sc1_objective(FixtureData& fx) {
  const double mu = 1.0, L = 1.0e4, s = (L - mu) / 4.0;
  Mat T = Mat::Zero(10, 10);
  for (int i = 0; i < 10; ++i) {
    T(i, i) = 2.0;
    if (i + 1 < 10) {
      T(i, i + 1) = -1.0;
      T(i + 1, i) = -1.0;
    }
  }
  T(9, 9) = 1.0;
  Mat A = s * T + mu * Mat::Identity(10, 10);
  Vec b = Vec::Zero(10);
  b[0] = s;
  fx.matrices.emplace_back("quadratic", A);
  fx.vectors.emplace_back("linear", b);
  auto o = quadratic_oracle(A, b, 0.0);
  o.meta.strong_convexity = mu;
  o.meta.lipschitz_grad = L;
  return o;
}

// Max of three diagonal quadratics 1/2 <D_i x, x> - <b_i, x> + c_i.
FunctionOracle sc2_objective(FixtureData& fx) {
  const double d1[10] = {1, 1, 2, 4, 1, 5, 3, 2, 4, 8};
  const double d2[10] = {2, 1, 3, 4, 2, 5, 1, 6, 7, 2};
  const double d3[10] = {1, 1, 2, 3, 5, 1, 4, 2, 3, 6};
  auto member = [&fx](const double* d, double b0, double c, int tag) {
    Mat A = Mat::Zero(10, 10);
    Vec b(10);
    for (int i = 0; i < 10; ++i) {
      A(i, i) = d[i];
      b(i) = b0 + i;  // linear term -sum_i (b0 + i) x_i, zero-based i
    }
    std::string suffix = std::to_string(tag);
    fx.vectors.emplace_back("diag" + suffix, A.diagonal());
    fx.vectors.emplace_back("linear" + suffix, b);
    fx.constants.emplace_back("offset" + suffix, c);
    return quadratic_oracle(A, b, c);
  };
  auto o = max_oracle({member(d1, 1.0, 5.0, 1), member(d2, 11.0, 6.0, 2),
                       member(d3, 21.0, 7.0, 3)});
  o.meta.strong_convexity = 1.0;
  return o;
}

// Regression 1/2 ||A x - b||^2 + ||x||^2 / 2 folded into one quadratic.
FunctionOracle sc3_objective(FixtureData& fx) {
  Mat A(3, 10);
  A << 5, 3, 3, 5, 4, 4, 3, 3, 5, 1,
       2, 4, 3, 5, 3, 4, 2, 2, 5, 4,
       5, 2, 1, 4, 1, 1, 2, 3, 5, 5;
  Vec b(3);
  b << 1, 2, 3;
  fx.matrices.emplace_back("design", A);
  fx.vectors.emplace_back("targets", b);
  Mat Q = A.transpose() * A + Mat::Identity(10, 10);
  return quadratic_oracle(Q, A.transpose() * b, 0.5 * b.squaredNorm());
}

// f(x) = sum_i i x_i^4 + ||x||^2 / 2 (coefficients one-based).
FunctionOracle sc4_objective(FixtureData& fx) {
  Vec w(10);
  for (int i = 0; i < 10; ++i) w[i] = i + 1;
  fx.vectors.emplace_back("quartic", w);
  FunctionOracle o;
  o.eval = [](const Vec& x) {
    double s = 0.0;
    for (int i = 0; i < x.size(); ++i) {
      double q = x[i] * x[i];
      s += (i + 1) * q * q;
    }
    return s + 0.5 * x.squaredNorm();
  };
  o.subgrad = [](const Vec& x) -> Vec {
    Vec g(x.size());
    for (int i = 0; i < x.size(); ++i)
      g[i] = 4.0 * (i + 1) * x[i] * x[i] * x[i] + x[i];
    return g;
  };
  o.meta.strong_convexity = 1.0;
  o.meta.lipschitz_grad = 121.0;  // sup 12 i x_i^2 + 1 on the unit ball
  return o;
}

// Huber-smoothed l1 penalty: x^2/(2 tau) below the knee, |x| - tau/2 above.
double huber_l1(double x, double tau) {
  double a = std::abs(x);
  return a >= tau ? a - tau / 2.0 : x * x / (2.0 * tau);
}

double huber_l1_grad(double x, double tau) {
  double a = std::abs(x);
  if (a >= tau) return x > 0.0 ? 1.0 : -1.0;
  return x / tau;
}

// Denoising 1/2 ||A x - b||^2 + lambda sum huber(x_i) + ||x||^2 / 2.
FunctionOracle sc5_objective(FixtureData& fx) {
  const double lambda = 0.05, tau = 1.0e-4;
  auto Ap = std::make_shared<Mat>(2, 10);
  *Ap << 9, 2, 4, 2, 2, 3, 6, 3, 5, 5,
         6, 7, 2, 4, 8, 6, 8, 8, 5, 1;
  auto bp = std::make_shared<Vec>(2);
  *bp << 1, 2;
  fx.matrices.emplace_back("design", *Ap);
  fx.vectors.emplace_back("targets", *bp);
  fx.constants.emplace_back("lambda", lambda);
  fx.constants.emplace_back("tau", tau);
  FunctionOracle o;
  o.eval = [Ap, bp, lambda, tau](const Vec& x) {
    double s = 0.5 * (*Ap * x - *bp).squaredNorm() + 0.5 * x.squaredNorm();
    for (int i = 0; i < x.size(); ++i) s += lambda * huber_l1(x[i], tau);
    return s;
  };
  o.subgrad = [Ap, bp, lambda, tau](const Vec& x) -> Vec {
    Vec g = Ap->transpose() * (*Ap * x - *bp) + x;
    for (int i = 0; i < x.size(); ++i) g[i] += lambda * huber_l1_grad(x[i], tau);
    return g;
  };
  o.meta.strong_convexity = 1.0;
  return o;
}

}  // namespace

Problem toy_1d() {
  Problem p;
  p.name = "toy-1d";
  p.dim = 1;
  p.objective = quadratic_oracle(Mat::Zero(1, 1), Vec::Constant(1, -1.0), 0.0);
  p.objective.meta.lipschitz_f = 1.0;
  ConstraintOracle c;
  c.members.push_back(
      quadratic_oracle(Mat::Zero(1, 1), Vec::Constant(1, -1.0), -0.5));
  c.lipschitz = 1.0;
  p.constraints = std::move(c);
  p.feasible = FeasibleSet::box(Vec::Constant(1, -1.0), Vec::Constant(1, 1.0));
  p.theta0 = std::sqrt(0.5);  // d(x_star) = 1/2 at the left endpoint
  p.M_g = 1.0;
  p.x0 = Vec::Zero(1);
  p.verify_eps = 0.1;
  return p;
}

Problem fts_quadratic() {
  return fts_base("fts-quadratic", fts_quadratic_constraints(),
                  4.0 * std::sqrt(10.0), false);
}

Problem fts_nonsmooth() {
  Problem p = fts_base("fts-nonsmooth", fts_nonsmooth_constraints(),
                       std::sqrt(130.0), false);
  Mat w = Mat::Ones(10, 10);
  for (int i = 0; i < 10; ++i) w(i, i) = i + 2;
  p.fixture.matrices.emplace_back("weights", w);
  return p;
}

// Unit-ball sensitivity variants: same oracles, tighter set, projected start.
// On the unit ball the quadratic members satisfy ||grad g_i|| <= 4.
Problem fts_quadratic_unit() {
  Problem p = fts_base("fts-quadratic-unit", fts_quadratic_constraints(), 4.0, true);
  return p;
}

Problem fts_nonsmooth_unit() {
  Problem p = fts_base("fts-nonsmooth-unit", fts_nonsmooth_constraints(),
                       std::sqrt(130.0), true);
  Mat w = Mat::Ones(10, 10);
  for (int i = 0; i < 10; ++i) w(i, i) = i + 2;
  p.fixture.matrices.emplace_back("weights", w);
  return p;
}

Problem strongly_convex_example(int k) {
  FixtureData fx;
  fx.matrices.emplace_back("alpha", alpha_matrix());
  FunctionOracle o;
  switch (k) {
    case 1: o = sc1_objective(fx); break;
    case 2: o = sc2_objective(fx); break;
    case 3: o = sc3_objective(fx); break;
    case 4: o = sc4_objective(fx); break;
    case 5: o = sc5_objective(fx); break;
    default: throw std::invalid_argument("strongly_convex_example: k must be 1..5");
  }
  Problem p = sc_base(k, std::move(o));
  p.fixture = std::move(fx);
  return p;
}

std::vector<Problem> strongly_convex_suite() {
  std::vector<Problem> v;
  for (int k = 1; k <= 5; ++k) v.push_back(strongly_convex_example(k));
  return v;
}

std::vector<std::string> problem_names() {
  return {"toy-1d",
          "fts-quadratic",
          "fts-nonsmooth",
          "fts-quadratic-unit",
          "fts-nonsmooth-unit",
          "sc-example1",
          "sc-example2",
          "sc-example3",
          "sc-example4",
          "sc-example5"};
}

Problem problem_by_name(const std::string& name) {
  if (name == "toy-1d") return toy_1d();
  if (name == "fts-quadratic") return fts_quadratic();
  if (name == "fts-nonsmooth") return fts_nonsmooth();
  if (name == "fts-quadratic-unit") return fts_quadratic_unit();
  if (name == "fts-nonsmooth-unit") return fts_nonsmooth_unit();
  if (name.rfind("sc-example", 0) == 0 && name.size() == 11) {
    int k = name[10] - '0';
    if (k >= 1 && k <= 5) return strongly_convex_example(k);
  }
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace mdopt
