#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nilharm {

// A point of the group in exponential coordinates: v is the horizontal
// (generating) part, z the central part.
struct GroupElement {
  Eigen::VectorXd v;
  Eigen::VectorXd z;
};

// Structure constants of a two-step nilpotent Lie algebra
//
//   [V_i, V_j] = sum_l c(i,j,l) T_l,
//
// stored dense and antisymmetric in (i,j).  The group product in
// exponential coordinates is
//
//   (v, z) * (v', z') = (v + v', z + z' + bracket(v, v') / 2),
//
// which is associative because brackets of brackets vanish.
class TwoStepAlgebra {
 public:
  TwoStepAlgebra(int m, int k);

  int m() const { return m_; }
  int k() const { return k_; }

  // 0-based structure constant accessors.  set_c installs both (i,j,l) and
  // the antisymmetric partner (j,i,l).
  double c(int i, int j, int l) const { return c_[(static_cast<size_t>(i) * m_ + j) * k_ + l]; }
  void set_c(int i, int j, int l, double value);

  Eigen::VectorXd bracket(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;

  GroupElement multiply(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  GroupElement identity() const;

  // True iff some central functional lambda makes B_lambda nondegenerate.
  // Decided by sampling `trials` seeded random unit functionals; odd m is
  // rejected immediately.  Deterministic for fixed (trials, seed).
  bool is_mw(int trials = 16, std::uint64_t seed = 0, double tol = 1e-10) const;

  // Human-readable name, carried along for reports ("heisenberg-1", a file
  // stem, ...).  Purely informational.
  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }

 private:
  int m_;
  int k_;
  std::vector<double> c_;
  std::string name_;
};

// Heisenberg group of dimension 2n+1: m = 2n, k = 1, [e_j, e_{n+j}] = T.
TwoStepAlgebra make_heisenberg(int n);

// Free two-step algebra on m generators: k = m(m-1)/2, one central
// direction per pair (i, j), i < j, in lexicographic order.
TwoStepAlgebra make_free_two_step(int m);

// Text format for group definitions:
//
//   # comment
//   dims <m> <k>
//   bracket <i> <j> <l> <value>     (1-based, i < j)
//
// Missing entries are zero; the (j, i) entries are implied.  Lines with
// i >= j are rejected so a file cannot silently encode a symmetric part.
// Throws std::runtime_error with a line number on malformed input.
TwoStepAlgebra parse_group(std::istream& in, const std::string& origin = "<input>");
TwoStepAlgebra load_group(const std::string& path);
std::string write_group(const TwoStepAlgebra& a);

// Builtin lookup: "heisenberg-<n>" or "free2step-<m>".  Throws
// std::invalid_argument for unknown names.
TwoStepAlgebra builtin_group(const std::string& name);

}  // namespace nilharm
