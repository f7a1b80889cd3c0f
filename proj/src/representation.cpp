#include "nilharm/representation.hpp"

#include <algorithm>
#include <cmath>

#include "nilharm/errors.hpp"

namespace nilharm {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

FrameCoordinates to_frame(const SymplecticFrame& f, const GroupElement& g) {
  return {f.X.transpose() * g.v, f.Y.transpose() * g.v, g.z};
}

GroupElement from_frame(const SymplecticFrame& f, const FrameCoordinates& c) {
  return {f.X * c.x + f.Y * c.y, c.t};
}

SampledFunction apply_pi(const SymplecticFrame& f, const Eigen::VectorXd& lambda,
                         const FrameCoordinates& g, const SampledFunction& phi) {
  const int n = f.n();
  if (phi.grid.dim() != n) throw std::invalid_argument("apply_pi: phi grid dim != n");
  if (g.x.size() != n || g.y.size() != n)
    throw std::invalid_argument("apply_pi: frame coordinate dims mismatch");
  if (g.t.size() != lambda.size())
    throw std::invalid_argument("apply_pi: central coordinate dims mismatch");

  SampledFunction out = make_sampled(phi.grid);
  out.coarse = out.coarse || phi.coarse;
  const double central = lambda.dot(g.t);
  double xy_half = 0.0;
  for (int j = 0; j < n; ++j) xy_half += f.d[j] * g.x[j] * g.y[j];
  xy_half *= 0.5;

  const long total = phi.grid.size();
  Eigen::VectorXd xi(n), shifted(n);
  Eigen::ArrayXi idx;
  for (long i = 0; i < total; ++i) {
    phi.grid.unflatten(i, idx);
    double xdot = 0.0;
    for (int j = 0; j < n; ++j) {
      xi[j] = phi.grid.coord(j, idx[j]);
      shifted[j] = xi[j] + g.y[j];
      xdot += f.d[j] * g.x[j] * xi[j];
    }
    const std::complex<double> phase = std::polar(1.0, central - xdot - xy_half);
    out.values[i] = phase * phi.value_at(shifted);
  }
  return out;
}

std::complex<double> matrix_coefficient(const SymplecticFrame& f, const MultiIndex& alpha,
                                        const MultiIndex& beta, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y, int gh_order) {
  const int n = f.n();
  if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n ||
      x.size() != n || y.size() != n)
    throw std::invalid_argument("matrix_coefficient: dims mismatch");
  const GaussHermiteRule& rule = gauss_hermite(gh_order);

  // The integrand's Gaussian factor is centered at xi = -y/2 with per-axis
  // scale 1/sqrt(d_j); substitute and integrate axis by axis.  The integral
  // factorizes because both eigenfunctions and the phase are products.
  std::complex<double> out{1.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double d = f.d[j];
    const double sd = std::sqrt(d);
    std::complex<double> axis{0.0, 0.0};
    for (int q = 0; q < rule.nodes.size(); ++q) {
      const double xi = -0.5 * y[j] + rule.nodes[q] / sd;
      const double ha = std::pow(d, 0.25) * hermite_1d(alpha[j], sd * (xi + y[j]));
      const double hb = std::pow(d, 0.25) * hermite_1d(beta[j], sd * xi);
      const double theta = -d * x[j] * (xi + 0.5 * y[j]);
      axis += rule.weights_exp[q] * std::polar(ha * hb, theta);
    }
    out *= axis / sd;
  }
  return out;
}

SampledFunction central_ft(const PointEvaluator& f, const Eigen::VectorXd& lambda,
                           const TwoStepAlgebra& a, const GridSpec& v_grid,
                           const QuadratureSpec& quad) {
  if (v_grid.dim() != a.m()) throw std::invalid_argument("central_ft: v_grid dim != m");
  if (lambda.size() != a.k()) throw std::invalid_argument("central_ft: lambda dim != k");
  const int k = a.k();
  const TrapezoidRule t_rule = trapezoid(quad.t_box, quad.t_points);
  const int tp = quad.t_points;
  long t_total = 1;
  for (int ax = 0; ax < k; ++ax) t_total *= tp;

  SampledFunction out = make_sampled(v_grid);
  double global_max = 0.0;
  double edge_max = 0.0;
  const long n_v = v_grid.size();
  GroupElement g{Eigen::VectorXd(a.m()), Eigen::VectorXd(k)};
  for (long iv = 0; iv < n_v; ++iv) {
    g.v = v_grid.point(iv);
    std::complex<double> acc{0.0, 0.0};
    for (long it = 0; it < t_total; ++it) {
      long rem = it;
      double w = 1.0;
      double phase = 0.0;
      bool edge = false;
      for (int ax = k - 1; ax >= 0; --ax) {
        const int q = static_cast<int>(rem % tp);
        rem /= tp;
        g.z[ax] = t_rule.nodes[q];
        w *= t_rule.weights[q];
        phase -= lambda[ax] * t_rule.nodes[q];
        edge = edge || q == 0 || q == tp - 1;
      }
      const std::complex<double> fv = f(g);
      const double mag = std::abs(fv);
      global_max = std::max(global_max, mag);
      if (edge) edge_max = std::max(edge_max, mag);
      acc += w * fv * std::polar(1.0, phase);
    }
    out.values[iv] = acc;
  }
  if (edge_max > 1e-6 * global_max)
    throw TruncationError("central_ft: integrand has not decayed at the t-box edge (edge " +
                          std::to_string(edge_max) + " vs max " + std::to_string(global_max) +
                          ")");
  return out;
}

namespace {

void require_twistable(const SampledFunction& f, const SampledFunction& g,
                       const TwoStepAlgebra& a) {
  if (!f.grid.same_as(g.grid)) throw std::invalid_argument("twisted_convolution: grid mismatch");
  if (f.grid.dim() != a.m()) throw std::invalid_argument("twisted_convolution: grid dim != m");
  for (int ax = 0; ax < f.grid.dim(); ++ax)
    if (f.grid.points[ax] % 2 == 0)
      throw std::invalid_argument(
          "twisted_convolution: odd point counts required so differences stay on the grid");
}

}  // namespace

SampledFunction twisted_convolution(const TwoStepAlgebra& a, const SampledFunction& f,
                                    const SampledFunction& g, const Eigen::VectorXd& lambda) {
  require_twistable(f, g, a);
  const int m = a.m();
  const Eigen::MatrixXd B = b_matrix(a, lambda);
  const GridSpec& grid = f.grid;
  const long total = grid.size();
  const double vol = grid.cell_volume();

  // Precompute grid points and B w for every source point.
  Eigen::MatrixXd pts(m, total);
  for (long j = 0; j < total; ++j) pts.col(j) = grid.point(j);
  const Eigen::MatrixXd Bw = B * pts;

  SampledFunction out = make_sampled(grid);
  Eigen::ArrayXi zi(m), wi(m), di(m);
  for (long iz = 0; iz < total; ++iz) {
    grid.unflatten(iz, zi);
    const Eigen::VectorXd z = pts.col(iz);
    std::complex<double> acc{0.0, 0.0};
    for (long jw = 0; jw < total; ++jw) {
      grid.unflatten(jw, wi);
      bool in_range = true;
      for (int ax = 0; ax < m; ++ax) {
        // z - w has grid index zi - wi + (P-1)/2 on the same axis.
        di[ax] = zi[ax] - wi[ax] + (grid.points[ax] - 1) / 2;
        if (di[ax] < 0 || di[ax] >= grid.points[ax]) {
          in_range = false;
          break;
        }
      }
      if (!in_range) continue;
      const std::complex<double> fv = f.values[grid.flat(di)];
      if (fv == std::complex<double>{0.0, 0.0}) continue;
      const double theta = -0.5 * z.dot(Bw.col(jw));
      acc += fv * g.values[jw] * std::polar(1.0, theta);
    }
    out.values[iz] = acc * vol;
  }
  return out;
}

std::complex<double> twisted_convolution_at(const TwoStepAlgebra& a, const SampledFunction& f,
                                            const SampledFunction& g,
                                            const Eigen::VectorXd& lambda,
                                            const Eigen::VectorXd& z) {
  if (!f.grid.same_as(g.grid)) throw std::invalid_argument("twisted_convolution_at: grid mismatch");
  const Eigen::MatrixXd B = b_matrix(a, lambda);
  // lambda([z, w]) = z . (B w) = (B^T z) . w.
  const Eigen::VectorXd BTz = B.transpose() * z;
  const GridSpec& grid = f.grid;
  const long total = grid.size();
  std::complex<double> acc{0.0, 0.0};
  for (long jw = 0; jw < total; ++jw) {
    const Eigen::VectorXd w = grid.point(jw);
    const std::complex<double> fv = f.value_at(z - w);
    if (fv == std::complex<double>{0.0, 0.0}) continue;
    const double theta = -0.5 * BTz.dot(w);
    acc += fv * g.values[jw] * std::polar(1.0, theta);
  }
  return acc * grid.cell_volume();
}

std::vector<MultiIndex> hermite_basis(int n, int N) {
  // All alpha with |alpha| <= N, graded lexicographic.
  std::vector<MultiIndex> graded;
  MultiIndex cur(n, 0);
  std::function<void(int, int, std::vector<MultiIndex>&)> fill =
      [&](int pos, int left, std::vector<MultiIndex>& sink) {
        if (pos == n - 1) {
          cur[pos] = left;
          sink.push_back(cur);
          return;
        }
        for (int v = 0; v <= left; ++v) {
          cur[pos] = v;
          fill(pos + 1, left - v, sink);
        }
      };
  for (int total = 0; total <= N; ++total) {
    std::vector<MultiIndex> grade;
    fill(0, total, grade);
    std::sort(grade.begin(), grade.end());
    graded.insert(graded.end(), grade.begin(), grade.end());
  }
  return graded;
}

GroupFT group_ft(const TwoStepAlgebra& a, const Eigen::VectorXd& lambda, const PointEvaluator& f,
                 int N, const GridSpec& xy_grid, const QuadratureSpec& quad) {
  GroupFT out;
  out.frame = frame(a, lambda);
  const int n = out.frame.n();
  if (xy_grid.dim() != 2 * n) throw std::invalid_argument("group_ft: xy_grid dim != 2n");
  out.basis = hermite_basis(n, N);
  const int nb = static_cast<int>(out.basis.size());
  out.mat = Eigen::MatrixXcd::Zero(nb, nb);

  // Central transform on the (x, y) parameterization of the v-plane.
  const TrapezoidRule t_rule = trapezoid(quad.t_box, quad.t_points);
  const int k = a.k();
  const int tp = quad.t_points;
  long t_total = 1;
  for (int ax = 0; ax < k; ++ax) t_total *= tp;

  const long n_xy = xy_grid.size();
  double global_max = 0.0, edge_max = 0.0;
  const GaussHermiteRule& rule = gauss_hermite(quad.gh_order);
  std::vector<std::vector<double>> ha(n), hb(n);
  Eigen::MatrixXcd coeffs(nb, nb);

  GroupElement g{Eigen::VectorXd(a.m()), Eigen::VectorXd(k)};
  FrameCoordinates fc{Eigen::VectorXd(n), Eigen::VectorXd(n), Eigen::VectorXd::Zero(k)};
  for (long ixy = 0; ixy < n_xy; ++ixy) {
    const Eigen::VectorXd p = xy_grid.point(ixy);
    fc.x = p.head(n);
    fc.y = p.tail(n);
    g.v = out.frame.X * fc.x + out.frame.Y * fc.y;

    std::complex<double> fl{0.0, 0.0};
    for (long it = 0; it < t_total; ++it) {
      long rem = it;
      double w = 1.0, phase = 0.0;
      bool edge = false;
      for (int ax = k - 1; ax >= 0; --ax) {
        const int q = static_cast<int>(rem % tp);
        rem /= tp;
        g.z[ax] = t_rule.nodes[q];
        w *= t_rule.weights[q];
        phase -= lambda[ax] * t_rule.nodes[q];
        edge = edge || q == 0 || q == tp - 1;
      }
      const std::complex<double> fv = f(g);
      const double mag = std::abs(fv);
      global_max = std::max(global_max, mag);
      if (edge) edge_max = std::max(edge_max, mag);
      fl += w * fv * std::polar(1.0, phase);
    }

    // All matrix coefficients at this (x, y) in one Gauss-Hermite sweep per
    // axis; they share nodes, only the Hermite degrees differ.
    double cellw = 1.0;
    Eigen::ArrayXi idx;
    xy_grid.unflatten(ixy, idx);
    for (int ax = 0; ax < xy_grid.dim(); ++ax) {
      const bool boundary = idx[ax] == 0 || idx[ax] == xy_grid.points[ax] - 1;
      cellw *= boundary ? 0.5 * xy_grid.spacing(ax) : xy_grid.spacing(ax);
    }
    const std::complex<double> scaled = fl * cellw;
    if (scaled == std::complex<double>{0.0, 0.0}) continue;

    coeffs.setZero();
    // Per-axis tables: values of phi^d_p at the shifted/unshifted nodes.
    std::vector<Eigen::MatrixXd> ta(n), tb(n);
    std::vector<Eigen::VectorXd> phases(n);
    for (int j = 0; j < n; ++j) {
      const double d = out.frame.d[j];
      const double sd = std::sqrt(d);
      const int nq = static_cast<int>(rule.nodes.size());
      ta[j].resize(N + 1, nq);
      tb[j].resize(N + 1, nq);
      phases[j].resize(nq);
      for (int q = 0; q < nq; ++q) {
        const double xi = -0.5 * fc.y[j] + rule.nodes[q] / sd;
        for (int p2 = 0; p2 <= N; ++p2) {
          ta[j](p2, q) = std::pow(d, 0.25) * hermite_1d(p2, sd * (xi + fc.y[j]));
          tb[j](p2, q) = std::pow(d, 0.25) * hermite_1d(p2, sd * xi);
        }
        phases[j][q] = -d * fc.x[j] * (xi + 0.5 * fc.y[j]);
      }
    }
    for (int ia = 0; ia < nb; ++ia)
      for (int ib = 0; ib < nb; ++ib) {
        std::complex<double> prod{1.0, 0.0};
        for (int j = 0; j < n; ++j) {
          std::complex<double> axis{0.0, 0.0};
          const int nq = static_cast<int>(rule.nodes.size());
          for (int q = 0; q < nq; ++q)
            axis += rule.weights_exp[q] *
                    std::polar(ta[j](out.basis[ia][j], q) * tb[j](out.basis[ib][j], q),
                               phases[j][q]);
          prod *= axis / std::sqrt(out.frame.d[j]);
        }
        out.mat(ia, ib) += scaled * prod;
      }
  }
  if (edge_max > 1e-6 * global_max)
    throw TruncationError("group_ft: integrand has not decayed at the t-box edge");
  return out;
}

SampledFunction hamiltonian_apply(const Eigen::VectorXd& d, const SampledFunction& phi) {
  const int n = phi.grid.dim();
  if (d.size() != n) throw std::invalid_argument("hamiltonian_apply: d dim mismatch");
  SampledFunction out = make_sampled(phi.grid);
  out.coarse = out.coarse || phi.coarse;
  const long total = phi.grid.size();

  // Flat strides per axis (row-major, last axis fastest).
  std::vector<long> stride(n, 1);
  for (int ax = n - 2; ax >= 0; --ax) stride[ax] = stride[ax + 1] * phi.grid.points[ax + 1];

  Eigen::ArrayXi idx;
  for (long i = 0; i < total; ++i) {
    phi.grid.unflatten(i, idx);
    std::complex<double> acc{0.0, 0.0};
    double potential = 0.0;
    for (int ax = 0; ax < n; ++ax) {
      const double xi = phi.grid.coord(ax, idx[ax]);
      potential += d[ax] * d[ax] * xi * xi;
      const double h2 = phi.grid.spacing(ax) * phi.grid.spacing(ax);
      auto nb = [&](int off) -> std::complex<double> {
        const int q = idx[ax] + off;
        if (q < 0 || q >= phi.grid.points[ax]) return {0.0, 0.0};
        return phi.values[i + static_cast<long>(off) * stride[ax]];
      };
      // (4 D_h - D_{2h}) / 3: fourth-order five-point second difference.
      const std::complex<double> d1 = nb(1) - 2.0 * phi.values[i] + nb(-1);
      const std::complex<double> d2 = nb(2) - 2.0 * phi.values[i] + nb(-2);
      acc += (4.0 * d1 - 0.25 * d2) / (3.0 * h2);
    }
    out.values[i] = acc - potential * phi.values[i];
  }
  return out;
}

}  // namespace nilharm
