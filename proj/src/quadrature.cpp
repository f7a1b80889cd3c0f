#include "nilharm/quadrature.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace nilharm {

const GaussHermiteRule& gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be >= 1");
  static std::map<int, GaussHermiteRule> cache;
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  // Jacobi matrix of the Hermite recurrence: zero diagonal, off-diagonal
  // sqrt(i/2).  Nodes are its eigenvalues, weights sqrt(pi) * q_{0i}^2.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(order > 1 ? order - 1 : 0);
  for (int i = 1; i < order; ++i) sub[i - 1] = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

  GaussHermiteRule rule;
  rule.nodes = es.eigenvalues();
  rule.weights.resize(order);
  rule.weights_exp.resize(order);
  const double mu0 = std::sqrt(M_PI);
  for (int i = 0; i < order; ++i) {
    const double q0 = es.eigenvectors()(0, i);
    rule.weights[i] = mu0 * q0 * q0;
    // Computed in log space: the raw weight underflows around order 300.
    rule.weights_exp[i] =
        std::exp(std::log(mu0) + 2.0 * std::log(std::abs(q0)) + rule.nodes[i] * rule.nodes[i]);
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

TrapezoidRule trapezoid(double half_width, int points) {
  if (points < 2) throw std::invalid_argument("trapezoid: need at least 2 points");
  if (!(half_width > 0.0)) throw std::invalid_argument("trapezoid: half_width must be positive");
  TrapezoidRule rule;
  rule.spacing = 2.0 * half_width / (points - 1);
  rule.nodes.resize(points);
  rule.weights.resize(points);
  for (int i = 0; i < points; ++i) {
    rule.nodes[i] = -half_width + i * rule.spacing;
    rule.weights[i] = (i == 0 || i == points - 1) ? 0.5 * rule.spacing : rule.spacing;
  }
  return rule;
}

}  // namespace nilharm
