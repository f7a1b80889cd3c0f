#pragma once

#include <cstdint>
#include <utility>

#include "nilharm/algebra.hpp"
#include "nilharm/representation.hpp"

namespace nilharm {

// Parent algebra together with its nondegenerate double: the child has
// horizontal dimension 2m and central dimension k + 1, parent coordinates
// occupying the leading slots of each.
struct EmbeddedAlgebra {
  TwoStepAlgebra parent;
  TwoStepAlgebra child;
};

// Child structure constants: inherited c(i, j, l) for i, j < m, l < k, plus
// [e_{m+i}, e_j] = delta_ij e_{k'} on the new central axis.  By the field
// formula the lifted basis fields are then
//   Vt_i = V_i + (eta_i / 2) d_t,   Vt_{m+i} = d_{eta_i} - (v_i / 2) d_t,
// and for functionals with nonzero last component s the child form is
// [[B, -sI], [sI, 0]] up to ordering, invertible for any parent B.
EmbeddedAlgebra embed(const TwoStepAlgebra& a);

// f~(v, eta, z, t) = f(v, z): the lift ignores the new coordinates.
PointEvaluator lift(const EmbeddedAlgebra& emb, const PointEvaluator& f);

// Coordinate maps between parent and child group elements.
GroupElement project(const EmbeddedAlgebra& emb, const GroupElement& child_g);
GroupElement include(const EmbeddedAlgebra& emb, const GroupElement& parent_g);

// Seeded child sample points; returns
//   (max |Vt_i f~ - V_i f| over i < m, max |Vt_{m+i} f~|).
// Both should vanish: f~ is constant along the Vt_{m+i} curves and the
// Vt_i curves of f~ project onto the parent V_i curves.
std::pair<double, double> lifted_field_check(const EmbeddedAlgebra& emb, const PointEvaluator& f,
                                             int n_points, std::uint64_t seed, double box,
                                             double step = 1e-4);

// max over seeded child points of |L' f~ - L f| with both sides by finite
// differences; the new fields contribute nothing, so the child sublaplacian
// restricts to the parent one on lifts.
double lifted_sublaplacian_check(const EmbeddedAlgebra& emb, const PointEvaluator& f,
                                 int n_points, std::uint64_t seed, double box,
                                 double step = 1e-3);

}  // namespace nilharm
