#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace nilharm {

// All randomized routines in the library draw through these helpers so that
// a (seed, call sequence) pair reproduces bit-identical streams across
// platforms.  std::uniform_real_distribution is avoided on purpose: its
// output is implementation-defined.

inline double uniform01(std::mt19937_64& g) {
  // 53 mantissa bits, in [0, 1).
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// Marsaglia polar method; avoids trig so the value depends only on the
// integer stream.
inline double normal01(std::mt19937_64& g) {
  for (;;) {
    const double u = 2.0 * uniform01(g) - 1.0;
    const double v = 2.0 * uniform01(g) - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) return u * std::sqrt(-2.0 * std::log(s) / s);
  }
}

inline Eigen::VectorXd random_vector(std::mt19937_64& g, int dim, double lo, double hi) {
  Eigen::VectorXd out(dim);
  for (int i = 0; i < dim; ++i) out[i] = uniform(g, lo, hi);
  return out;
}

inline Eigen::VectorXd random_unit_vector(std::mt19937_64& g, int dim) {
  Eigen::VectorXd out(dim);
  for (;;) {
    for (int i = 0; i < dim; ++i) out[i] = normal01(g);
    const double n = out.norm();
    if (n > 1e-6) return out / n;
  }
}

}  // namespace nilharm
