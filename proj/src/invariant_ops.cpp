#include "nilharm/invariant_ops.hpp"

namespace nilharm {

namespace {

// g (s u, 0) = (v + s u, z + s bracket(v, u) / 2); exact, no quadrature.
GroupElement curve_point(const TwoStepAlgebra& a, const GroupElement& g, const Eigen::VectorXd& u,
                         double s) {
  return {g.v + s * u, g.z + 0.5 * s * a.bracket(g.v, u)};
}

}  // namespace

std::complex<double> left_field_apply(const TwoStepAlgebra& a, const PointEvaluator& f,
                                      const Eigen::VectorXd& u, const GroupElement& g,
                                      double step) {
  if (u.size() != a.m()) throw std::invalid_argument("left_field_apply: direction dim != m");
  auto central = [&](double h) {
    return (f(curve_point(a, g, u, h)) - f(curve_point(a, g, u, -h))) / (2.0 * h);
  };
  const std::complex<double> d1 = central(step);
  const std::complex<double> d2 = central(0.5 * step);
  return (4.0 * d2 - d1) / 3.0;
}

std::complex<double> left_field_apply(const TwoStepAlgebra& a, const PointEvaluator& f, int i,
                                      const GroupElement& g, double step) {
  if (i < 0 || i >= a.m()) throw std::invalid_argument("left_field_apply: index out of range");
  Eigen::VectorXd u = Eigen::VectorXd::Zero(a.m());
  u[i] = 1.0;
  return left_field_apply(a, f, u, g, step);
}

std::complex<double> sublaplacian_apply(const TwoStepAlgebra& a, const PointEvaluator& f,
                                        const GroupElement& g, double step) {
  return sublaplacian_apply(a, f, g, step,
                            Eigen::MatrixXd::Identity(a.m(), a.m()));
}

std::complex<double> sublaplacian_apply(const TwoStepAlgebra& a, const PointEvaluator& f,
                                        const GroupElement& g, double step,
                                        const Eigen::MatrixXd& basis) {
  if (basis.rows() != a.m() || basis.cols() != a.m())
    throw std::invalid_argument("sublaplacian_apply: basis must be m x m");
  const std::complex<double> center = f(g);
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < a.m(); ++i) {
    const Eigen::VectorXd u = basis.col(i);
    auto second = [&](double h) {
      return (f(curve_point(a, g, u, h)) - 2.0 * center + f(curve_point(a, g, u, -h))) / (h * h);
    };
    const std::complex<double> s1 = second(step);
    const std::complex<double> s2 = second(0.5 * step);
    acc += (4.0 * s2 - s1) / 3.0;
  }
  return acc;
}

double frame_invariance_check(const TwoStepAlgebra& a, const Eigen::MatrixXd& basis,
                              const PointEvaluator& f, const GroupElement& g, double step) {
  const std::complex<double> plain = sublaplacian_apply(a, f, g, step);
  const std::complex<double> rotated = sublaplacian_apply(a, f, g, step, basis);
  return std::abs(plain - rotated);
}

double frame_invariance_check(const TwoStepAlgebra& a, const SymplecticFrame& frame,
                              const PointEvaluator& f, const GroupElement& g, double step) {
  return frame_invariance_check(a, frame.Dmat, f, g, step);
}

}  // namespace nilharm
