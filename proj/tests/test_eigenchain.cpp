#include <cmath>
#include <random>

#include "doctest.h"
#include "nilharm/eigenchain.hpp"
#include "nilharm/errors.hpp"
#include "nilharm/invariant_ops.hpp"
#include "nilharm/quadrature.hpp"
#include "nilharm/rng.hpp"

using namespace nilharm;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd out(1);
  out[0] = x;
  return out;
}

GroupElement random_element(std::mt19937_64& rng, const TwoStepAlgebra& a, double box) {
  return {random_vector(rng, a.m(), -box, box), random_vector(rng, a.k(), -box, box)};
}

}  // namespace

TEST_CASE("bump profile") {
  BumpSpec b{vec1(1.0), 0.5, 4};
  CHECK(bump_value(b, vec1(1.0)) == 1.0);
  CHECK(bump_value(b, vec1(1.25)) == doctest::Approx(std::pow(0.75, 4)).epsilon(1e-15));
  CHECK(bump_value(b, vec1(1.5)) == 0.0);
  CHECK(bump_value(b, vec1(2.0)) == 0.0);
  CHECK(bump_value(b, vec1(0.4)) == 0.0);

  BumpSpec linear{vec1(0.0), 2.0, 1};
  CHECK(bump_value(linear, vec1(1.0)) == doctest::Approx(0.75).epsilon(1e-15));

  CHECK_THROWS_AS(bump_value(BumpSpec{vec1(0.0), -1.0, 4}, vec1(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(bump_value(BumpSpec{vec1(0.0), 1.0, 0}, vec1(0.0)), std::invalid_argument);
  CHECK_THROWS_AS(bump_value(b, Eigen::VectorXd::Zero(2)), std::invalid_argument);
}

TEST_CASE("functional rescaling pinned cases") {
  const TwoStepAlgebra a = make_heisenberg(1);
  CHECK((lambda_tilde(a, vec1(1.7), {0}) - vec1(1.7)).norm() <= 1e-14);
  CHECK((lambda_tilde(a, vec1(3.0), {1}) - vec1(1.0)).norm() <= 1e-12);

  const TwoStepAlgebra f4 = make_free_two_step(4);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd lambda = random_unit_vector(rng, f4.k()) * uniform(rng, 0.5, 2.0);
    const Eigen::VectorXd lt = lambda_tilde(f4, lambda, {1, 0});
    // (2 alpha + 1) . d(lt) recovers |lambda|.
    const SymplecticFrame fr = frame(f4, lt);
    CHECK(std::abs(3.0 * fr.d[0] + 1.0 * fr.d[1] - lambda.norm()) <= 1e-10 * (1 + lambda.norm()));
    // Rays map to rays.
    CHECK((lt.normalized() - lambda.normalized()).norm() <= 1e-12);
  }
}

TEST_CASE("eigenfunction values and bound") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const HLambda h(a, vec1(2.0), {1});
  CHECK(std::abs(h(a.identity()) - std::complex<double>(1.0, 0.0)) <= 1e-14);
  CHECK(h.eigenvalue() == -2.0);
  CHECK((h.lambda_tilde() - vec1(2.0 / 3.0)).norm() <= 1e-14);
  CHECK((h.d_tilde() - vec1(2.0 / 3.0)).norm() <= 1e-14);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const GroupElement g = random_element(rng, a, 6.0);
    CHECK(std::abs(h(g)) <= 1.0 + 1e-12);
  }

  // The evaluator wrapper sees the same values.
  const PointEvaluator he = h_lambda(a, vec1(2.0), {1});
  const GroupElement g = random_element(rng, a, 2.0);
  CHECK(std::abs(he(g) - h(g)) == 0.0);
}

TEST_CASE("eigen-residual under the finite-difference sublaplacian") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const PointEvaluator h = h_lambda(a, vec1(1.0), {0});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const GroupElement g = random_element(rng, a, 1.5);
    CHECK(std::abs(sublaplacian_apply(a, h, g) + h(g)) <= 1e-5);
  }

  const TwoStepAlgebra f4 = make_free_two_step(4);
  const Eigen::VectorXd lambda = random_unit_vector(rng, f4.k()) * 1.4;
  const PointEvaluator h4 = h_lambda(f4, lambda, {1, 0});
  const double scale = 1e-4 * (1.0 + lambda.squaredNorm());
  for (int t = 0; t < 10; ++t) {
    const GroupElement g = random_element(rng, f4, 1.0);
    CHECK(std::abs(sublaplacian_apply(f4, h4, g) + lambda.norm() * h4(g)) <= scale);
  }
}

TEST_CASE("chains scale geometrically term by term") {
  const TwoStepAlgebra a = make_heisenberg(1);
  std::mt19937_64 rng(11);

  ChainSpec unit;
  unit.terms.push_back({vec1(1.0), {0}, {1.0, 0.0}});
  const PointEvaluator f0 = build_chain(a, unit, 0);
  const PointEvaluator f3 = build_chain(a, unit, 3);
  const PointEvaluator fm2 = build_chain(a, unit, -2);
  for (int t = 0; t < 10; ++t) {
    const GroupElement g = random_element(rng, a, 2.0);
    CHECK(std::abs(f3(g) + f0(g)) == 0.0);   // (-1)^3 = -1 exactly
    CHECK(std::abs(fm2(g) - f0(g)) == 0.0);  // (-1)^{-2} = 1 exactly
  }

  ChainSpec two;
  two.terms.push_back({vec1(2.0), {0}, {0.5, 0.25}});
  const PointEvaluator g0 = build_chain(a, two, 0);
  const PointEvaluator g2 = build_chain(a, two, 2);
  const PointEvaluator gm1 = build_chain(a, two, -1);
  for (int t = 0; t < 10; ++t) {
    const GroupElement g = random_element(rng, a, 2.0);
    CHECK(std::abs(g2(g) - 4.0 * g0(g)) == 0.0);
    CHECK(std::abs(gm1(g) + 0.5 * g0(g)) == 0.0);
  }

  const auto family = build_chain(a, two, -2, 2);
  CHECK(family.size() == 5);
  const GroupElement g = random_element(rng, a, 2.0);
  CHECK(std::abs(family[2](g) - g0(g)) == 0.0);
  CHECK_THROWS_AS(build_chain(a, two, 2, 1), std::invalid_argument);
}

TEST_CASE("chain relation under the finite-difference sublaplacian") {
  const TwoStepAlgebra a = make_heisenberg(1);

  ChainSpec unit;
  unit.terms.push_back({vec1(1.0), {0}, {1.0, 0.0}});
  CHECK(chain_relation_check(a, unit, 0, 10, 13, 1.5, 1.5).max_residual <= 1e-5);

  const ChainSpec zero;
  CHECK(chain_relation_check(a, zero, 0, 5, 13, 1.5, 1.5).max_residual == 0.0);

  ChainSpec mixed;
  mixed.terms.push_back({vec1(1.0), {0}, {1.0, 0.0}});
  mixed.terms.push_back({vec1(2.0), {1}, {0.0, 1.0}});
  for (const int k : {-2, 0, 2})
    CHECK(chain_relation_check(a, mixed, k, 10, 13, 1.5, 1.5).max_residual <= 1e-4);
}

TEST_CASE("sup-norm estimates and the boundedness dichotomy") {
  const TwoStepAlgebra a = make_heisenberg(1);

  const PointEvaluator h = h_lambda(a, vec1(1.0), {1});
  const double sup = sup_norm_estimate(a, h, 3.0, 3.0, 1, 1024, 40);
  CHECK(sup > 0.99);
  CHECK(sup <= 1.0 + 1e-12);

  const PointEvaluator zero = [](const GroupElement&) { return std::complex<double>{0.0, 0.0}; };
  CHECK(sup_norm_estimate(a, zero, 3.0, 3.0, 1, 128, 8) == 0.0);

  ChainSpec growing;
  growing.terms.push_back({vec1(2.0), {0}, {1.0, 0.0}});
  std::vector<double> sups;
  for (int k = -3; k <= 3; ++k)
    sups.push_back(sup_norm_estimate(a, build_chain(a, growing, k), 3.0, 3.0, 2, 512, 30));
  for (size_t i = 0; i + 1 < sups.size(); ++i)
    CHECK(std::abs(std::log2(sups[i + 1] / sups[i]) - 1.0) <= 1e-6);

  // Bounded side: two unit-frequency terms on the free group.
  const TwoStepAlgebra f4 = make_free_two_step(4);
  std::mt19937_64 rng(17);
  ChainSpec bounded;
  bounded.terms.push_back({random_unit_vector(rng, f4.k()), {0, 0}, {1.0, 0.0}});
  bounded.terms.push_back({random_unit_vector(rng, f4.k()), {0, 0}, {0.6, 0.2}});
  double lo = 1e300, hi = 0.0;
  for (int k = -6; k <= 6; ++k) {
    const double s = sup_norm_estimate(f4, build_chain(f4, bounded, k), 2.0, 2.0, 3, 256, 20);
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  CHECK(hi / lo <= 1.01);
}

TEST_CASE("smeared eigenfunction aggregate") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const BumpSpec phi{vec1(1.0), 0.2, 4};
  const PointEvaluator F = build_F_alpha(a, {0}, phi, 101);

  // At the identity the eigenfunctions all equal 1, so F(0) is the plain
  // quadrature of the bump; 41+ nodes land within 1e-5 of the closed form
  // integral radius * 256 / 315.
  const std::complex<double> f00 = F(a.identity());
  CHECK(std::abs(f00 - 0.2 * 256.0 / 315.0) <= 1e-5);
  CHECK(std::abs(f00.imag()) <= 1e-15);

  std::mt19937_64 rng(19);
  for (int t = 0; t < 10; ++t) {
    GroupElement g = random_element(rng, a, 2.0);
    GroupElement gm = g;
    gm.v = -g.v;
    CHECK(std::abs(F(g) - F(gm)) <= 1e-13);
  }

  // Oscillation in lambda makes the aggregate decay along the center.
  const std::complex<double> far = F({Eigen::VectorXd::Zero(2), vec1(60.0)});
  CHECK(std::abs(far) <= 0.01 * std::abs(f00));

  CHECK_THROWS_AS(build_F_alpha(a, {0}, BumpSpec{Eigen::VectorXd::Zero(2), 0.5, 4}),
                  std::invalid_argument);
}

TEST_CASE("concentration probe ratios track the dominant frequency") {
  const TwoStepAlgebra a = make_heisenberg(1);
  ProbeSettings settings;
  settings.v_box = 9.0;
  settings.v_points = 31;
  settings.t_spacing = 0.25;
  settings.lambda_nodes = 51;

  for (const double s : {1.0, 2.0}) {
    ChainSpec spec;
    spec.terms.push_back({vec1(s), {0}, {1.0, 0.0}});
    const BumpSpec phi{vec1(-s), 0.5, 4};
    const ProbeResult res = concentration_probe(a, spec, phi, phi, 3, {5.0, 10.0}, settings);
    REQUIRE(res.ratios.size() == 2);
    CHECK(std::abs(res.ratios.back() - s) <= 0.05 * s);
    CHECK(std::abs(res.pairings[0][0]) > 0.0);
  }

  // Off-support window: the zeroth pairing shrinks as the window grows.
  // The pairing is a small cancellation quantity, so this one needs the
  // default (finer) lattice to stay above the quadrature noise.  The bump
  // product must reach close to the frequency sphere (support [-1.5, -1.1]
  // here): with a gap much wider than this the R = 40 window is still
  // dominated by the edge of the product and the two pairings stay
  // comparable.
  ChainSpec spec;
  spec.terms.push_back({vec1(1.0), {0}, {1.0, 0.0}});
  const BumpSpec phi{vec1(-1.0), 0.5, 4};
  const BumpSpec psi{vec1(-1.6), 0.5, 4};
  const ProbeResult off = concentration_probe(a, spec, phi, psi, 1, {10.0, 40.0});
  CHECK(std::abs(off.pairings[1][0]) <= 0.25 * std::abs(off.pairings[0][0]));

  // A v-box too small for the kernel is refused.
  ProbeSettings tight = settings;
  tight.v_box = 3.0;
  CHECK_THROWS_AS(
      concentration_probe(a, spec, phi, phi, 1, {5.0}, tight), TruncationError);

  CHECK_THROWS_AS(concentration_probe(a, ChainSpec{}, phi, phi, 1, {5.0}, settings),
                  std::invalid_argument);
  CHECK_THROWS_AS(concentration_probe(a, spec, phi, phi, 1, {}, settings),
                  std::invalid_argument);
}
