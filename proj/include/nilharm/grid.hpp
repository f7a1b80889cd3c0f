#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

namespace nilharm {

// Uniform tensor grid on prod_ax [-box_ax, box_ax], endpoints included,
// values stored row-major (last axis fastest).
struct GridSpec {
  Eigen::ArrayXd box;
  Eigen::ArrayXi points;

  static GridSpec uniform(int dim, double box, int points);

  int dim() const { return static_cast<int>(box.size()); }
  double spacing(int ax) const { return 2.0 * box[ax] / (points[ax] - 1); }
  double coord(int ax, int idx) const { return -box[ax] + idx * spacing(ax); }
  long size() const;
  double cell_volume() const;
  bool same_as(const GridSpec& other) const;

  // Multi-index <-> flat index.
  long flat(const Eigen::ArrayXi& idx) const;
  Eigen::VectorXd point(long flat_index) const;
  void unflatten(long flat_index, Eigen::ArrayXi& idx) const;
};

struct SampledFunction {
  GridSpec grid;
  std::vector<std::complex<double>> values;
  // Set when any axis has fewer than 17 points (spacing above box/8).
  bool coarse = false;

  std::complex<double>& at(const Eigen::ArrayXi& idx) { return values[grid.flat(idx)]; }
  const std::complex<double>& at(const Eigen::ArrayXi& idx) const {
    return values[grid.flat(idx)];
  }

  // Multilinear interpolation; zero outside the box.
  std::complex<double> value_at(const Eigen::VectorXd& xi) const;

  double l2_norm() const;   // grid-weighted: sqrt(sum |f|^2 * cell volume)
  double sup_norm() const;
};

SampledFunction make_sampled(const GridSpec& grid);
SampledFunction sample(const GridSpec& grid,
                       const std::function<std::complex<double>(const Eigen::VectorXd&)>& f);

}  // namespace nilharm
