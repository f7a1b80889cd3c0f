#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <vector>

#include "nilharm/algebra.hpp"
#include "nilharm/representation.hpp"

namespace nilharm {

// Compactly supported bump on R^k: (1 - |u|^2)^order on |u| < 1 with
// u = (lambda - center) / radius, zero outside.
struct BumpSpec {
  Eigen::VectorXd center;
  double radius = 1.0;
  int order = 4;
};

double bump_value(const BumpSpec& spec, const Eigen::VectorXd& lambda);

// One spectral term of a chain: frequency lambda, Hermite index alpha,
// complex coefficient.
struct ChainTerm {
  Eigen::VectorXd lambda;
  MultiIndex alpha;
  std::complex<double> coeff{1.0, 0.0};
};

struct ChainSpec {
  std::vector<ChainTerm> terms;
};

// Rescaled functional with (2 alpha + 1) . d(lambda_tilde) = |lambda|:
//   lambda_tilde = lambda |lambda| / ((2 alpha + 1) . d(lambda)).
// Verifies that identity and the inverse relation
//   lambda = ((2 alpha + 1) . d(lt) / |lt|) lt
// on the result to 1e-10 before returning.
Eigen::VectorXd lambda_tilde(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda,
                             const MultiIndex& alpha);

// Bounded eigenfunction of the sublaplacian with eigenvalue -|lambda|:
//   h(v, z) = Phi_alpha^{d(lt)}(frame coordinates of v) e^{i lt . z},
// where Phi is the diagonal matrix coefficient in closed form and
// lt = lambda_tilde.  Copies are cheap (shared immutable state).
class HLambda {
 public:
  HLambda(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, const MultiIndex& alpha);

  std::complex<double> operator()(const GroupElement& g) const;

  // Factor depending on v only; operator() is phi_part(v) e^{i lt . z}.
  std::complex<double> phi_part(const Eigen::VectorXd& v) const;

  const Eigen::VectorXd& lambda() const;
  const Eigen::VectorXd& lambda_tilde() const;
  const Eigen::VectorXd& d_tilde() const;
  const SymplecticFrame& frame() const;
  double eigenvalue() const;  // -|lambda|

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Evaluator form of HLambda, for callers that only need the function.
PointEvaluator h_lambda(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda,
                        const MultiIndex& alpha);

// f_k = sum over terms of coeff (-|lambda|)^k h_lambda; k may be negative.
PointEvaluator build_chain(const TwoStepAlgebra& a, const ChainSpec& spec, int k);

// All of f_{k_lo}, ..., f_{k_hi} in order.
std::vector<PointEvaluator> build_chain(const TwoStepAlgebra& a, const ChainSpec& spec, int k_lo,
                                        int k_hi);

struct ChainResidual {
  double max_residual = 0.0;  // max_p |L f_k(p) - f_{k+1}(p)|
  double max_ref = 0.0;       // max_p |f_{k+1}(p)|, for relative scaling
};

// Applies the finite-difference sublaplacian to f_k at seeded sample points
// and compares with f_{k+1}.
ChainResidual chain_relation_check(const TwoStepAlgebra& a, const ChainSpec& spec, int k,
                                   int n_points, std::uint64_t seed, double box_v, double box_z,
                                   double step = 1e-3);

// Deterministic sup-norm estimate: seeded uniform samples over the box
// |v_i| <= box_v, |z_l| <= box_z, then coordinate descent around the best
// candidate with geometrically shrinking steps.
double sup_norm_estimate(const TwoStepAlgebra& a, const PointEvaluator& f, double box_v,
                         double box_z, std::uint64_t seed, int samples = 4096,
                         int refine_sweeps = 60);

// F_alpha = int h_lambda phi(lambda) dlambda over the bump support, by
// tensor trapezoid with `lambda_nodes` points per central axis.  The
// returned evaluator caches the v-dependent factors of the last v it saw,
// which makes t-inner loops cheap; it is not thread-safe.
PointEvaluator build_F_alpha(const TwoStepAlgebra& a, const MultiIndex& alpha,
                             const BumpSpec& phi, int lambda_nodes = 41);

struct ProbeSettings {
  double v_box = 10.0;
  int v_points = 41;
  double t_spacing = 0.125;
  int lambda_nodes = 101;
};

struct ProbeResult {
  std::vector<double> windows;
  // pairings[w][l] = P_l for window radius windows[w], l = 0..l_max
  std::vector<std::vector<std::complex<double>>> pairings;
  // geometric mean of successive ratios |P_{l+1}| / |P_l| per window
  std::vector<double> ratios;
};

// Windowed pairing of the chain with the smeared eigenfunction kernel
//   P_l = int_{|t| <= R} int_v f_l(v, t) K(v, t) dv dt,
//   K = int h_lambda psi(lambda) phi(lambda) dlambda,
// using the bilinear (unconjugated) product.  A chain carried on
// frequencies lambda pairs against bumps supported near -lambda.
ProbeResult concentration_probe(const TwoStepAlgebra& a, const ChainSpec& spec,
                                const BumpSpec& phi, const BumpSpec& psi, int l_max,
                                std::vector<double> windows, const ProbeSettings& settings = {});

}  // namespace nilharm
