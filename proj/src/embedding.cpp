#include "nilharm/embedding.hpp"

#include <algorithm>
#include <random>

#include "nilharm/invariant_ops.hpp"
#include "nilharm/rng.hpp"

namespace nilharm {

EmbeddedAlgebra embed(const TwoStepAlgebra& a) {
  const int m = a.m(), k = a.k();
  TwoStepAlgebra child(2 * m, k + 1);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int l = 0; l < k; ++l)
        if (a.c(i, j, l) != 0.0) child.set_c(i, j, l, a.c(i, j, l));
  for (int i = 0; i < m; ++i) child.set_c(m + i, i, k, 1.0);
  child.set_name(a.name().empty() ? "embedded" : a.name() + "-embedded");
  return {a, std::move(child)};
}

PointEvaluator lift(const EmbeddedAlgebra& emb, const PointEvaluator& f) {
  const int m = emb.parent.m(), k = emb.parent.k();
  return [f, m, k](const GroupElement& g) { return f({g.v.head(m), g.z.head(k)}); };
}

GroupElement project(const EmbeddedAlgebra& emb, const GroupElement& child_g) {
  return {child_g.v.head(emb.parent.m()), child_g.z.head(emb.parent.k())};
}

GroupElement include(const EmbeddedAlgebra& emb, const GroupElement& parent_g) {
  const int m = emb.parent.m(), k = emb.parent.k();
  GroupElement out{Eigen::VectorXd::Zero(2 * m), Eigen::VectorXd::Zero(k + 1)};
  out.v.head(m) = parent_g.v;
  out.z.head(k) = parent_g.z;
  return out;
}

std::pair<double, double> lifted_field_check(const EmbeddedAlgebra& emb, const PointEvaluator& f,
                                             int n_points, std::uint64_t seed, double box,
                                             double step) {
  const int m = emb.parent.m();
  const PointEvaluator lifted = lift(emb, f);
  std::mt19937_64 rng(seed);
  double inherited = 0.0, fresh = 0.0;
  for (int p = 0; p < n_points; ++p) {
    const GroupElement gc{random_vector(rng, emb.child.m(), -box, box),
                          random_vector(rng, emb.child.k(), -box, box)};
    const GroupElement gp = project(emb, gc);
    for (int i = 0; i < m; ++i) {
      const auto child_d = left_field_apply(emb.child, lifted, i, gc, step);
      const auto parent_d = left_field_apply(emb.parent, f, i, gp, step);
      inherited = std::max(inherited, std::abs(child_d - parent_d));
      fresh = std::max(fresh, std::abs(left_field_apply(emb.child, lifted, m + i, gc, step)));
    }
  }
  return {inherited, fresh};
}

double lifted_sublaplacian_check(const EmbeddedAlgebra& emb, const PointEvaluator& f,
                                 int n_points, std::uint64_t seed, double box, double step) {
  const PointEvaluator lifted = lift(emb, f);
  std::mt19937_64 rng(seed);
  double out = 0.0;
  for (int p = 0; p < n_points; ++p) {
    const GroupElement gc{random_vector(rng, emb.child.m(), -box, box),
                          random_vector(rng, emb.child.k(), -box, box)};
    const GroupElement gp = project(emb, gc);
    const auto child_l = sublaplacian_apply(emb.child, lifted, gc, step);
    const auto parent_l = sublaplacian_apply(emb.parent, f, gp, step);
    out = std::max(out, std::abs(child_l - parent_l));
  }
  return out;
}

}  // namespace nilharm
