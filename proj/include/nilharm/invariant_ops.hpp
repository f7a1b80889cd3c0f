#pragma once

#include <Eigen/Dense>
#include <complex>

#include "nilharm/algebra.hpp"
#include "nilharm/representation.hpp"
#include "nilharm/symplectic.hpp"

namespace nilharm {

// Left-invariant vector field in direction u (a horizontal vector), applied
// to f at g by a central difference along the group curve s -> g (s u, 0),
// Richardson-extrapolated once.  The curve is the integral curve of the
// field, so the one-dimensional difference is the exact directional object.
std::complex<double> left_field_apply(const TwoStepAlgebra& a, const PointEvaluator& f,
                                      const Eigen::VectorXd& u, const GroupElement& g,
                                      double step = 1e-4);

// Convenience overload for the i-th basis field V_i (0-based).
std::complex<double> left_field_apply(const TwoStepAlgebra& a, const PointEvaluator& f, int i,
                                      const GroupElement& g, double step = 1e-4);

// Sublaplacian L f = sum_i V_i^2 f via second differences along the same
// curves, Richardson-extrapolated once.  `basis` may supply an alternative
// orthonormal horizontal basis (columns); L is invariant under such a
// change, which frame_invariance_check measures.
std::complex<double> sublaplacian_apply(const TwoStepAlgebra& a, const PointEvaluator& f,
                                        const GroupElement& g, double step = 1e-3);
std::complex<double> sublaplacian_apply(const TwoStepAlgebra& a, const PointEvaluator& f,
                                        const GroupElement& g, double step,
                                        const Eigen::MatrixXd& basis);

// |L f(g) in the standard basis - L f(g) in the rotated basis|.  The basis
// matrix must be orthogonal; the frame overload uses the interleaved
// (X_1, Y_1, ..., X_n, Y_n) columns.
double frame_invariance_check(const TwoStepAlgebra& a, const Eigen::MatrixXd& basis,
                              const PointEvaluator& f, const GroupElement& g, double step = 1e-3);
double frame_invariance_check(const TwoStepAlgebra& a, const SymplecticFrame& frame,
                              const PointEvaluator& f, const GroupElement& g, double step = 1e-3);

}  // namespace nilharm
