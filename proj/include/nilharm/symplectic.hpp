#pragma once

#include <Eigen/Dense>
#include <vector>

#include "nilharm/algebra.hpp"

namespace nilharm {

// Orthonormal almost-symplectic frame {X_j, Y_j} for a nondegenerate
// B_lambda:  columns X.col(j), Y.col(j) satisfy
//
//   X' B Y = diag(d),   X' B X = Y' B Y = 0,   d_1 >= ... >= d_n > 0.
//
// Dmat is the orthogonal m x m change of basis whose columns are
// X_1, Y_1, ..., X_n, Y_n.
struct SymplecticFrame {
  Eigen::MatrixXd X;
  Eigen::MatrixXd Y;
  Eigen::VectorXd d;
  Eigen::MatrixXd Dmat;

  int n() const { return static_cast<int>(d.size()); }
};

// B_lambda(i, j) = sum_l lambda_l c(i, j, l); always skew.
Eigen::MatrixXd b_matrix(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda);

// Deterministic frame construction from the spectral decomposition of
// -B^2.  Throws NondegeneracyError when the smallest singular value of B
// is <= tol.  Sign fixing: the largest-magnitude component of each X_j
// (smallest index on ties) is made positive.
SymplecticFrame frame(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, double tol = 1e-10);

// Frames along a discrete path of functionals, each aligned greedily to
// the previous one so the selection inside repeated-eigenvalue blocks does
// not jump between steps.
std::vector<SymplecticFrame> frame_aligned(const TwoStepAlgebra& a,
                                           const std::vector<Eigen::VectorXd>& path,
                                           double tol = 1e-10);

// max_j |d_j(r lambda) - r d_j(lambda)|; should vanish identically since
// d scales linearly along rays.
double homogeneity_check(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, double r,
                         double tol = 1e-10);

}  // namespace nilharm
