#pragma once

#include <Eigen/Dense>

namespace nilharm {

// Gauss-Hermite rule of given order: sum_i w_i f(x_i) ~ int f(x) e^{-x^2} dx.
// weights_exp absorbs the e^{x^2} factor so that sum_i weights_exp_i f(x_i)
// approximates the plain integral of a Gaussian-decaying f.
struct GaussHermiteRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  Eigen::VectorXd weights_exp;
};

// Golub-Welsch from the Jacobi matrix; results are cached per order.
const GaussHermiteRule& gauss_hermite(int order);

// Trapezoid rule on [-half_width, half_width] with `points` equally spaced
// nodes including both endpoints.
struct TrapezoidRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
  double spacing = 0.0;
};

TrapezoidRule trapezoid(double half_width, int points);

// Default quadrature choices: Gauss-Hermite order per v-axis, trapezoid box
// and point count per central axis.
struct QuadratureSpec {
  int gh_order = 80;
  double t_box = 20.0;
  int t_points = 401;
};

}  // namespace nilharm
