#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace nilharm {

using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& alpha) {
  int s = 0;
  for (int a : alpha) s += a;
  return s;
}

// L^2-normalized Hermite function phi_p(x) = H_p(x) e^{-x^2/2} / sqrt(2^p p! sqrt(pi)),
// evaluated by the stable three-term recurrence
//   phi_{p+1} = sqrt(2/(p+1)) x phi_p - sqrt(p/(p+1)) phi_{p-1}.
double hermite_1d(int p, double x);

// Product over axes: phi_alpha(xi) = prod_j phi_{alpha_j}(xi_j).
double hermite_eval(const MultiIndex& alpha, const Eigen::VectorXd& xi);

// L^2 dilation U(r)phi(xi) = prod_j r_j^{1/4} phi(sqrt(r_j) xi_j) applied to
// phi_alpha; these are the oscillator eigenfunctions for frequencies r.
double dilate(const Eigen::VectorXd& r, const MultiIndex& alpha, const Eigen::VectorXd& xi);

// Laguerre polynomial L_p(x) (standard, L_p(0) = 1) by the stable recurrence.
double laguerre_1d(int p, double x);

// Diagonal matrix coefficient of the translation part of the Schrodinger
// representation at frequencies d = (1,...,1), in closed form:
//   Phi_alpha(z) = prod_j L_{alpha_j}(|z_j|^2 / 2) e^{-|z_j|^2 / 4}.
// Normalized so Phi_alpha(0) = 1.  Real-valued; returned as complex to
// match the pairing it represents.
std::complex<double> special_hermite_diag(const MultiIndex& alpha, const Eigen::VectorXcd& z);

// Same at general frequencies d: the dilated coefficient equals the unit
// one at sqrt(d_j) z_j.
std::complex<double> special_hermite_diag(const MultiIndex& alpha, const Eigen::VectorXcd& z,
                                          const Eigen::VectorXd& d);

// Residual of the raising/lowering recurrence for the diagonal coefficients,
//   (z_j d_{z_j} + conj.) Phi_aa = (a_j + 1) Phi_{a+e_j} - a_j Phi_{a-e_j} - Phi_aa,
// with the left side taken as the radial (Euler) derivative in the z_j
// plane: the central difference of s -> Phi(z with z_j scaled by e^s).
// The a_j = 0 lowering term is dropped.
double recurrence_check(const MultiIndex& alpha, int j, const Eigen::VectorXcd& z,
                        double step = 1e-4);

}  // namespace nilharm
