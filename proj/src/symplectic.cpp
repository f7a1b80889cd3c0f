#include "nilharm/symplectic.hpp"

#include <algorithm>
#include <cmath>

#include "nilharm/errors.hpp"

namespace nilharm {

Eigen::MatrixXd b_matrix(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda) {
  if (lambda.size() != a.k()) throw std::invalid_argument("b_matrix: lambda must have length k");
  const int m = a.m();
  Eigen::MatrixXd B = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      double s = 0.0;
      for (int l = 0; l < a.k(); ++l) s += lambda[l] * a.c(i, j, l);
      B(i, j) = s;
      B(j, i) = -s;
    }
  return B;
}

namespace {

struct Cluster {
  double d = 0.0;            // common singular value of the block
  Eigen::MatrixXd basis;     // orthonormal basis of the -B^2 eigenspace
};

// Eigenvalues of -B^2 come in pairs d_j^2; group them into clusters of
// numerically equal values, descending.
std::vector<Cluster> spectral_clusters(const Eigen::MatrixXd& B, double tol) {
  const Eigen::MatrixXd S = -(B * B);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const Eigen::MatrixXd& V = es.eigenvectors();
  const int m = static_cast<int>(ev.size());
  const double scale = std::max(1.0, std::abs(ev[m - 1]));

  const double dmin = std::sqrt(std::max(ev[0], 0.0));
  if (!(dmin > tol))
    throw NondegeneracyError("frame: B_lambda is singular (smallest singular value " +
                             std::to_string(dmin) + ")");

  // Walk from the top (largest eigenvalue) down, merging equal values.
  std::vector<Cluster> clusters;
  int i = m - 1;
  const double ctol = 1e-8 * scale;
  while (i >= 0) {
    int j = i;
    while (j - 1 >= 0 && std::abs(ev[j - 1] - ev[i]) <= ctol) --j;
    Cluster c;
    const int width = i - j + 1;
    c.basis.resize(m, width);
    for (int p = 0; p < width; ++p) c.basis.col(p) = V.col(j + p);
    double mean = 0.0;
    for (int p = j; p <= i; ++p) mean += ev[p];
    c.d = std::sqrt(std::max(mean / width, 0.0));
    clusters.push_back(std::move(c));
    i = j - 1;
  }
  return clusters;
}

void fix_sign(Eigen::VectorXd& x) {
  int best = 0;
  for (int i = 1; i < x.size(); ++i)
    if (std::abs(x[i]) > std::abs(x[best])) best = i;
  if (x[best] < 0.0) x = -x;
}

// Component of u inside the cluster eigenspace, with the already chosen
// pair vectors removed.
Eigen::VectorXd residual_in_cluster(const Cluster& c, const Eigen::VectorXd& u,
                                    const std::vector<Eigen::VectorXd>& taken) {
  Eigen::VectorXd r = c.basis * (c.basis.transpose() * u);
  for (const auto& t : taken) r -= t * t.dot(r);
  return r;
}

}  // namespace

SymplecticFrame frame(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, double tol) {
  const Eigen::MatrixXd B = b_matrix(a, lambda);
  const int m = a.m();
  if (m % 2 != 0)
    throw NondegeneracyError("frame: odd m, B_lambda is always singular");
  const auto clusters = spectral_clusters(B, tol);

  SymplecticFrame f;
  const int n = m / 2;
  f.X.resize(m, n);
  f.Y.resize(m, n);
  f.d.resize(n);
  f.Dmat.resize(m, m);

  int slot = 0;
  for (const auto& c : clusters) {
    const int pairs = static_cast<int>(c.basis.cols()) / 2;
    std::vector<Eigen::VectorXd> taken;  // X's and Y's already placed here
    for (int p = 0; p < pairs; ++p) {
      // Deterministic pick: the eigenbasis column with the largest residual
      // after removing chosen pairs.
      Eigen::VectorXd best;
      double best_norm = -1.0;
      for (int col = 0; col < c.basis.cols(); ++col) {
        Eigen::VectorXd r = residual_in_cluster(c, c.basis.col(col), taken);
        const double nr = r.norm();
        if (nr > best_norm) {
          best_norm = nr;
          best = std::move(r);
        }
      }
      Eigen::VectorXd x = best / best_norm;
      fix_sign(x);
      Eigen::VectorXd y = -(B * x) / c.d;
      f.X.col(slot) = x;
      f.Y.col(slot) = y;
      f.d[slot] = c.d;
      taken.push_back(x);
      taken.push_back(y);
      ++slot;
    }
  }

  for (int j = 0; j < n; ++j) {
    f.Dmat.col(2 * j) = f.X.col(j);
    f.Dmat.col(2 * j + 1) = f.Y.col(j);
  }
  return f;
}

std::vector<SymplecticFrame> frame_aligned(const TwoStepAlgebra& a,
                                           const std::vector<Eigen::VectorXd>& path,
                                           double tol) {
  std::vector<SymplecticFrame> out;
  out.reserve(path.size());
  for (const auto& lambda : path) {
    if (out.empty()) {
      out.push_back(frame(a, lambda, tol));
      continue;
    }
    const SymplecticFrame& prev = out.back();
    const Eigen::MatrixXd B = b_matrix(a, lambda);
    const auto clusters = spectral_clusters(B, tol);

    SymplecticFrame f;
    const int m = a.m();
    const int n = m / 2;
    f.X.resize(m, n);
    f.Y.resize(m, n);
    f.d.resize(n);
    f.Dmat.resize(m, m);

    int slot = 0;
    for (const auto& c : clusters) {
      const int pairs = static_cast<int>(c.basis.cols()) / 2;
      std::vector<Eigen::VectorXd> taken;
      for (int p = 0; p < pairs; ++p) {
        // Project the previous X for this slot into the current eigenspace;
        // fall back to the raw basis when the spaces rotated too far.
        Eigen::VectorXd r = residual_in_cluster(c, prev.X.col(slot), taken);
        if (r.norm() < 0.2) {
          double best_norm = -1.0;
          for (int col = 0; col < c.basis.cols(); ++col) {
            Eigen::VectorXd cand = residual_in_cluster(c, c.basis.col(col), taken);
            if (cand.norm() > best_norm) {
              best_norm = cand.norm();
              r = cand;
            }
          }
        }
        Eigen::VectorXd x = r / r.norm();
        if (x.dot(prev.X.col(slot)) < 0.0) x = -x;
        Eigen::VectorXd y = -(B * x) / c.d;
        f.X.col(slot) = x;
        f.Y.col(slot) = y;
        f.d[slot] = c.d;
        taken.push_back(x);
        taken.push_back(y);
        ++slot;
      }
    }
    for (int j = 0; j < n; ++j) {
      f.Dmat.col(2 * j) = f.X.col(j);
      f.Dmat.col(2 * j + 1) = f.Y.col(j);
    }
    out.push_back(std::move(f));
  }
  return out;
}

double homogeneity_check(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, double r,
                         double tol) {
  if (!(r > 0.0)) throw std::invalid_argument("homogeneity_check: r must be positive");
  const SymplecticFrame f1 = frame(a, lambda, tol);
  const SymplecticFrame f2 = frame(a, r * lambda, tol);
  return (f2.d - r * f1.d).cwiseAbs().maxCoeff();
}

}  // namespace nilharm
