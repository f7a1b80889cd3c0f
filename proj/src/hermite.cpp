#include "nilharm/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace nilharm {

double hermite_1d(int p, double x) {
  if (p < 0) throw std::invalid_argument("hermite_1d: negative degree");
  // Recurrence runs on the functions themselves (Gaussian included), so all
  // intermediates stay bounded; good to degree several hundred.
  const double h0 = std::pow(M_PI, -0.25) * std::exp(-0.5 * x * x);
  if (p == 0) return h0;
  double prev = h0;
  double cur = std::sqrt(2.0) * x * h0;
  for (int n = 1; n < p; ++n) {
    const double next = std::sqrt(2.0 / (n + 1)) * x * cur - std::sqrt(n / (n + 1.0)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double hermite_eval(const MultiIndex& alpha, const Eigen::VectorXd& xi) {
  if (static_cast<int>(alpha.size()) != xi.size())
    throw std::invalid_argument("hermite_eval: alpha and xi dims mismatch");
  double out = 1.0;
  for (int j = 0; j < xi.size(); ++j) out *= hermite_1d(alpha[j], xi[j]);
  return out;
}

double dilate(const Eigen::VectorXd& r, const MultiIndex& alpha, const Eigen::VectorXd& xi) {
  if (r.size() != xi.size() || static_cast<int>(alpha.size()) != xi.size())
    throw std::invalid_argument("dilate: dims mismatch");
  double out = 1.0;
  for (int j = 0; j < xi.size(); ++j) {
    if (!(r[j] > 0.0)) throw std::invalid_argument("dilate: frequencies must be positive");
    out *= std::pow(r[j], 0.25) * hermite_1d(alpha[j], std::sqrt(r[j]) * xi[j]);
  }
  return out;
}

double laguerre_1d(int p, double x) {
  if (p < 0) throw std::invalid_argument("laguerre_1d: negative degree");
  if (p == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (int n = 1; n < p; ++n) {
    const double next = ((2.0 * n + 1.0 - x) * cur - n * prev) / (n + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

std::complex<double> special_hermite_diag(const MultiIndex& alpha, const Eigen::VectorXcd& z) {
  return special_hermite_diag(alpha, z, Eigen::VectorXd::Ones(z.size()));
}

std::complex<double> special_hermite_diag(const MultiIndex& alpha, const Eigen::VectorXcd& z,
                                          const Eigen::VectorXd& d) {
  if (static_cast<int>(alpha.size()) != z.size() || d.size() != z.size())
    throw std::invalid_argument("special_hermite_diag: dims mismatch");
  double out = 1.0;
  for (int j = 0; j < z.size(); ++j) {
    const double s = d[j] * std::norm(z[j]);
    out *= laguerre_1d(alpha[j], 0.5 * s) * std::exp(-0.25 * s);
  }
  return {out, 0.0};
}

double recurrence_check(const MultiIndex& alpha, int j, const Eigen::VectorXcd& z, double step) {
  if (j < 0 || j >= static_cast<int>(alpha.size()))
    throw std::invalid_argument("recurrence_check: axis out of range");
  Eigen::VectorXcd zp = z, zm = z;
  zp[j] *= std::exp(step);
  zm[j] *= std::exp(-step);
  const std::complex<double> lhs =
      (special_hermite_diag(alpha, zp) - special_hermite_diag(alpha, zm)) / (2.0 * step);
  MultiIndex up = alpha;
  up[j] += 1;
  std::complex<double> rhs = static_cast<double>(alpha[j] + 1) * special_hermite_diag(up, z) -
                             special_hermite_diag(alpha, z);
  if (alpha[j] > 0) {
    MultiIndex down = alpha;
    down[j] -= 1;
    rhs -= static_cast<double>(alpha[j]) * special_hermite_diag(down, z);
  }
  return std::abs(lhs - rhs);
}

}  // namespace nilharm
