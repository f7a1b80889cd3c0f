#include "nilharm/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace nilharm {

GridSpec GridSpec::uniform(int dim, double box, int points) {
  if (dim < 1) throw std::invalid_argument("GridSpec: dim must be >= 1");
  if (points < 2) throw std::invalid_argument("GridSpec: need at least 2 points per axis");
  if (!(box > 0.0)) throw std::invalid_argument("GridSpec: box must be positive");
  GridSpec g;
  g.box = Eigen::ArrayXd::Constant(dim, box);
  g.points = Eigen::ArrayXi::Constant(dim, points);
  return g;
}

long GridSpec::size() const {
  long s = 1;
  for (int ax = 0; ax < dim(); ++ax) s *= points[ax];
  return s;
}

double GridSpec::cell_volume() const {
  double v = 1.0;
  for (int ax = 0; ax < dim(); ++ax) v *= spacing(ax);
  return v;
}

bool GridSpec::same_as(const GridSpec& other) const {
  return dim() == other.dim() && (box == other.box).all() && (points == other.points).all();
}

long GridSpec::flat(const Eigen::ArrayXi& idx) const {
  long f = 0;
  for (int ax = 0; ax < dim(); ++ax) f = f * points[ax] + idx[ax];
  return f;
}

void GridSpec::unflatten(long flat_index, Eigen::ArrayXi& idx) const {
  idx.resize(dim());
  for (int ax = dim() - 1; ax >= 0; --ax) {
    idx[ax] = static_cast<int>(flat_index % points[ax]);
    flat_index /= points[ax];
  }
}

Eigen::VectorXd GridSpec::point(long flat_index) const {
  Eigen::ArrayXi idx;
  unflatten(flat_index, idx);
  Eigen::VectorXd p(dim());
  for (int ax = 0; ax < dim(); ++ax) p[ax] = coord(ax, idx[ax]);
  return p;
}

std::complex<double> SampledFunction::value_at(const Eigen::VectorXd& xi) const {
  const int dim = grid.dim();
  if (xi.size() != dim) throw std::invalid_argument("value_at: dimension mismatch");
  // Locate the cell and interpolation fractions per axis.
  Eigen::ArrayXi base(dim);
  Eigen::ArrayXd frac(dim);
  for (int ax = 0; ax < dim; ++ax) {
    const double u = (xi[ax] + grid.box[ax]) / grid.spacing(ax);
    if (u < 0.0 || u > grid.points[ax] - 1) return {0.0, 0.0};
    int b = static_cast<int>(std::floor(u));
    if (b == grid.points[ax] - 1) --b;  // xi exactly at the upper edge
    base[ax] = b;
    frac[ax] = u - b;
  }
  std::complex<double> acc{0.0, 0.0};
  const int corners = 1 << dim;
  Eigen::ArrayXi idx(dim);
  for (int c = 0; c < corners; ++c) {
    double w = 1.0;
    for (int ax = 0; ax < dim; ++ax) {
      const int bit = (c >> ax) & 1;
      idx[ax] = base[ax] + bit;
      w *= bit ? frac[ax] : (1.0 - frac[ax]);
    }
    if (w != 0.0) acc += w * values[grid.flat(idx)];
  }
  return acc;
}

double SampledFunction::l2_norm() const {
  double s = 0.0;
  for (const auto& v : values) s += std::norm(v);
  return std::sqrt(s * grid.cell_volume());
}

double SampledFunction::sup_norm() const {
  double s = 0.0;
  for (const auto& v : values) s = std::max(s, std::abs(v));
  return s;
}

SampledFunction make_sampled(const GridSpec& grid) {
  SampledFunction f;
  f.grid = grid;
  f.values.assign(static_cast<size_t>(grid.size()), {0.0, 0.0});
  for (int ax = 0; ax < grid.dim(); ++ax)
    if (grid.points[ax] < 17) f.coarse = true;
  return f;
}

SampledFunction sample(const GridSpec& grid,
                       const std::function<std::complex<double>(const Eigen::VectorXd&)>& f) {
  SampledFunction out = make_sampled(grid);
  const long total = grid.size();
  for (long i = 0; i < total; ++i) out.values[i] = f(grid.point(i));
  return out;
}

}  // namespace nilharm
