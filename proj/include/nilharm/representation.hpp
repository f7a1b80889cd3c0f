#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "nilharm/algebra.hpp"
#include "nilharm/grid.hpp"
#include "nilharm/hermite.hpp"
#include "nilharm/quadrature.hpp"
#include "nilharm/symplectic.hpp"

namespace nilharm {

// Pointwise evaluator of a function on the group.
using PointEvaluator = std::function<std::complex<double>(const GroupElement&)>;

// Coordinates of a group element relative to a frame: v = X x + Y y, t = z.
struct FrameCoordinates {
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Eigen::VectorXd t;
};

FrameCoordinates to_frame(const SymplecticFrame& f, const GroupElement& g);
GroupElement from_frame(const SymplecticFrame& f, const FrameCoordinates& c);

// Schrodinger representation attached to (lambda, frame), acting on sampled
// functions of the frame variable xi in R^n:
//
//   (pi(g) phi)(xi) = exp(i lambda.t - i sum_j d_j (x_j xi_j + x_j y_j / 2)) phi(xi + y),
//
// a unitary homomorphism for the exponential-coordinates product.  The
// shift phi(xi + y) uses multilinear interpolation (zero outside the box).
SampledFunction apply_pi(const SymplecticFrame& f, const Eigen::VectorXd& lambda,
                         const FrameCoordinates& g, const SampledFunction& phi);

// Matrix coefficient (pi(x, y, 0) phi_alpha^d, phi_beta^d) by Gauss-Hermite
// quadrature with the oscillator eigenfunctions evaluated analytically.
std::complex<double> matrix_coefficient(const SymplecticFrame& f, const MultiIndex& alpha,
                                        const MultiIndex& beta, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y, int gh_order = 80);

// Central Fourier transform f^lambda(v) = int f(v, t) e^{-i lambda.t} dt by
// tensor trapezoid over the t-box.  Throws TruncationError when |f| at the
// t-box edge exceeds 1e-6 of the maximum sample.
SampledFunction central_ft(const PointEvaluator& f, const Eigen::VectorXd& lambda,
                           const TwoStepAlgebra& a, const GridSpec& v_grid,
                           const QuadratureSpec& quad = {});

// Twisted convolution on a common v-grid:
//   (f *_l g)(z) = sum_w f(z - w) g(w) e^{-i lambda([z, w]) / 2} vol.
// Requires odd point counts so z - w lands on the grid exactly.
SampledFunction twisted_convolution(const TwoStepAlgebra& a, const SampledFunction& f,
                                    const SampledFunction& g, const Eigen::VectorXd& lambda);

// Same integral evaluated at one (arbitrary) point z.
std::complex<double> twisted_convolution_at(const TwoStepAlgebra& a, const SampledFunction& f,
                                            const SampledFunction& g,
                                            const Eigen::VectorXd& lambda,
                                            const Eigen::VectorXd& z);

// Operator-valued Fourier transform truncated to the Hermite block
// |alpha| <= N, defined through the central transform:
//   entry(a, b) = int f^lambda(x, y) (pi(x, y, 0) phi_a^d, phi_b^d) dx dy.
// xy_grid parameterizes (x_1..x_n, y_1..y_n) in frame coordinates.
struct GroupFT {
  SymplecticFrame frame;
  std::vector<MultiIndex> basis;  // graded lexicographic
  Eigen::MatrixXcd mat;
};

GroupFT group_ft(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, const PointEvaluator& f,
                 int N, const GridSpec& xy_grid, const QuadratureSpec& quad = {});

std::vector<MultiIndex> hermite_basis(int n, int N);

// Negated scaled harmonic oscillator: sum_j (d^2/dxi_j^2 - d_j^2 xi_j^2)
// applied on the grid; the second derivative uses the Richardson-combined
// (five-point) central difference.  This is the image of the sublaplacian
// under the representation, so dilate(d, alpha, .) is an eigenfunction with
// eigenvalue -(2|alpha| + n).d-weighted, i.e. -sum_j (2 alpha_j + 1) d_j.
SampledFunction hamiltonian_apply(const Eigen::VectorXd& d, const SampledFunction& phi);

}  // namespace nilharm
