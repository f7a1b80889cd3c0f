#include <random>

#include "doctest.h"
#include "nilharm/errors.hpp"
#include "nilharm/rng.hpp"
#include "nilharm/symplectic.hpp"

using namespace nilharm;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd out(1);
  out[0] = x;
  return out;
}

double frame_residuals(const TwoStepAlgebra& a, const SymplecticFrame& f,
                       const Eigen::VectorXd& lambda) {
  const Eigen::MatrixXd B = b_matrix(a, lambda);
  const int n = f.n();
  const Eigen::MatrixXd pairing = f.X.transpose() * B * f.Y;
  double r = (pairing - Eigen::MatrixXd(f.d.asDiagonal())).norm();
  r = std::max(r, (f.X.transpose() * B * f.X).norm());
  r = std::max(r, (f.Y.transpose() * B * f.Y).norm());
  r = std::max(r, (f.Dmat.transpose() * f.Dmat -
                   Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm());
  return r;
}

}  // namespace

TEST_CASE("b_matrix pinned example and skewness") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const Eigen::MatrixXd B = b_matrix(a, vec1(3.0));
  CHECK(B(0, 1) == 3.0);
  CHECK(B(1, 0) == -3.0);
  CHECK(B(0, 0) == 0.0);
  CHECK(B(1, 1) == 0.0);
  CHECK(b_matrix(a, vec1(0.0)).norm() == 0.0);

  const TwoStepAlgebra f4 = make_free_two_step(4);
  std::mt19937_64 rng(3);
  const Eigen::VectorXd lambda = random_vector(rng, f4.k(), -2, 2);
  const Eigen::MatrixXd Bf = b_matrix(f4, lambda);
  CHECK((Bf + Bf.transpose()).norm() == 0.0);
}

TEST_CASE("heisenberg frame is the standard pair") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const SymplecticFrame f = frame(a, vec1(2.0));
  REQUIRE(f.n() == 1);
  CHECK(f.d[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK((f.X.col(0) - Eigen::Vector2d(1, 0)).norm() <= 1e-14);
  CHECK((f.Y.col(0) - Eigen::Vector2d(0, 1)).norm() <= 1e-14);

  const TwoStepAlgebra h2 = make_heisenberg(2);
  const SymplecticFrame f2 = frame(h2, vec1(1.0));
  REQUIRE(f2.n() == 2);
  CHECK(std::abs(f2.d[0] - 1.0) <= 1e-12);
  CHECK(std::abs(f2.d[1] - 1.0) <= 1e-12);
}

TEST_CASE("frame weights sort descending") {
  // Anisotropic pairs: [e1, e3] = T, [e2, e4] = 3 T.
  TwoStepAlgebra a(4, 1);
  a.set_c(0, 2, 0, 1.0);
  a.set_c(1, 3, 0, 3.0);
  const SymplecticFrame f = frame(a, vec1(1.0));
  CHECK(f.d[0] == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(f.d[1] == doctest::Approx(1.0).epsilon(1e-12));
  // The fast pair lives in the (e2, e4) plane.
  CHECK(std::abs(f.X(0, 0)) <= 1e-12);
  CHECK(std::abs(f.X(2, 0)) <= 1e-12);
  CHECK(frame_residuals(a, f, vec1(1.0)) <= 1e-12);
}

TEST_CASE("frame residuals on seeded random functionals") {
  for (const char* name : {"heisenberg-2", "free2step-4"}) {
    const TwoStepAlgebra a = builtin_group(name);
    std::mt19937_64 rng(17);
    for (int t = 0; t < 25; ++t) {
      const Eigen::VectorXd lambda =
          random_unit_vector(rng, a.k()) * uniform(rng, 0.5, 2.0);
      const SymplecticFrame f = frame(a, lambda);
      const double scale = 1.0 + b_matrix(a, lambda).norm();
      CHECK(frame_residuals(a, f, lambda) <= 1e-8 * scale);
      CHECK(f.d.minCoeff() > 0.0);
      for (int j = 0; j + 1 < f.n(); ++j) CHECK(f.d[j] >= f.d[j + 1]);
    }
  }
}

TEST_CASE("degenerate functionals are rejected") {
  const TwoStepAlgebra f3 = make_free_two_step(3);
  std::mt19937_64 rng(5);
  CHECK_THROWS_AS(frame(f3, random_unit_vector(rng, f3.k())), NondegeneracyError);
  const TwoStepAlgebra h1 = make_heisenberg(1);
  CHECK_THROWS_AS(frame(h1, vec1(0.0)), NondegeneracyError);
}

TEST_CASE("homogeneity of the weights along rays") {
  const TwoStepAlgebra a = make_free_two_step(4);
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd lambda = random_unit_vector(rng, a.k());
    for (const double r : {0.5, 2.0, 7.0})
      CHECK(homogeneity_check(a, lambda, r) <= 1e-10 * r);
  }
}

TEST_CASE("aligned frames do not jump along a path") {
  const TwoStepAlgebra h1 = make_heisenberg(1);
  std::vector<Eigen::VectorXd> ray;
  for (int s = 1; s <= 5; ++s) ray.push_back(vec1(static_cast<double>(s)));
  const auto ray_frames = frame_aligned(h1, ray);
  REQUIRE(ray_frames.size() == 5);
  for (size_t s = 0; s < ray_frames.size(); ++s) {
    CHECK(std::abs(ray_frames[s].d[0] - ray[s][0]) <= 1e-12);
    CHECK((ray_frames[s].Dmat - ray_frames[0].Dmat).norm() <= 1e-12);
  }

  // A rotating functional on the free group; consecutive frames stay close
  // even where eigenvalues cross or cluster.
  const TwoStepAlgebra f4 = make_free_two_step(4);
  std::mt19937_64 rng(29);
  const Eigen::VectorXd u = random_unit_vector(rng, f4.k());
  Eigen::VectorXd w = random_unit_vector(rng, f4.k());
  w -= u * u.dot(w);
  w.normalize();
  std::vector<Eigen::VectorXd> arc;
  const int steps = 40;
  for (int s = 0; s <= steps; ++s) {
    const double theta = 0.5 * s / steps;
    arc.push_back(std::cos(theta) * u + std::sin(theta) * w);
  }
  const auto arc_frames = frame_aligned(f4, arc);
  for (size_t s = 0; s + 1 < arc_frames.size(); ++s)
    CHECK((arc_frames[s + 1].Dmat - arc_frames[s].Dmat).norm() <= 0.2);
  for (size_t s = 0; s < arc_frames.size(); ++s)
    CHECK(frame_residuals(f4, arc_frames[s], arc[s]) <= 1e-8 * (1.0 + b_matrix(f4, arc[s]).norm()));
}
