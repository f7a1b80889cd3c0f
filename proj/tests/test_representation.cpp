#include <cmath>
#include <random>

#include "doctest.h"
#include "nilharm/errors.hpp"
#include "nilharm/representation.hpp"
#include "nilharm/rng.hpp"

using namespace nilharm;

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd out(1);
  out[0] = x;
  return out;
}

double rel_l2_diff(const SampledFunction& a, const SampledFunction& b) {
  REQUIRE(a.grid.same_as(b.grid));
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < a.values.size(); ++i) {
    num += std::norm(a.values[i] - b.values[i]);
    den += std::norm(b.values[i]);
  }
  return std::sqrt(num / den);
}

}  // namespace

TEST_CASE("frame coordinates round trip") {
  const TwoStepAlgebra a = make_heisenberg(2);
  const SymplecticFrame f = frame(a, vec1(1.5));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const GroupElement g{random_vector(rng, 4, -2, 2), random_vector(rng, 1, -2, 2)};
    const GroupElement back = from_frame(f, to_frame(f, g));
    CHECK((back.v - g.v).norm() <= 1e-13);
    CHECK((back.z - g.z).norm() <= 1e-13);
  }

  const TwoStepAlgebra h1 = make_heisenberg(1);
  const SymplecticFrame f1 = frame(h1, vec1(1.0));
  const FrameCoordinates c = to_frame(f1, {Eigen::Vector2d(1, 0), vec1(0.0)});
  CHECK(c.x[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(c.y[0]) <= 1e-14);
}

namespace {

struct PiFixture {
  TwoStepAlgebra a = make_heisenberg(1);
  Eigen::VectorXd lambda = vec1(2.0);
  SymplecticFrame f = frame(a, lambda);
  GridSpec grid = GridSpec::uniform(1, 12.0, 512);
  SampledFunction phi;

  PiFixture() {
    phi = sample(grid, [](const Eigen::VectorXd& xi) {
      return std::complex<double>(hermite_1d(0, xi[0]) + 0.3 * hermite_1d(2, xi[0]), 0.0);
    });
  }

  // Random frame coordinates with the shift snapped to the grid so the
  // interpolation step is exact.
  FrameCoordinates random_coords(std::mt19937_64& rng) const {
    FrameCoordinates c{vec1(uniform(rng, -2, 2)), vec1(0.0), vec1(uniform(rng, -3, 3))};
    const double h = grid.spacing(0);
    c.y[0] = h * std::round(uniform(rng, -3, 3) / h);
    return c;
  }
};

}  // namespace

TEST_CASE("apply_pi: identity, center, unitarity, homomorphism") {
  PiFixture fx;
  const FrameCoordinates id{vec1(0.0), vec1(0.0), vec1(0.0)};
  CHECK(rel_l2_diff(apply_pi(fx.f, fx.lambda, id, fx.phi), fx.phi) <= 1e-12);

  // Central elements act by the character e^{i lambda t}.
  const FrameCoordinates central{vec1(0.0), vec1(0.0), vec1(0.8)};
  SampledFunction scaled = fx.phi;
  const std::complex<double> ch = std::polar(1.0, fx.lambda[0] * 0.8);
  for (auto& v : scaled.values) v *= ch;
  CHECK(rel_l2_diff(apply_pi(fx.f, fx.lambda, central, fx.phi), scaled) <= 1e-12);

  std::mt19937_64 rng(19);
  const double norm0 = fx.phi.l2_norm();
  for (int t = 0; t < 25; ++t) {
    const FrameCoordinates g = fx.random_coords(rng);
    const FrameCoordinates h = fx.random_coords(rng);
    const SampledFunction pg = apply_pi(fx.f, fx.lambda, g, fx.phi);
    CHECK(std::abs(pg.l2_norm() - norm0) <= 1e-6 * norm0);

    const SampledFunction two_step = apply_pi(fx.f, fx.lambda, g, apply_pi(fx.f, fx.lambda, h, fx.phi));
    const GroupElement gh = fx.a.multiply(from_frame(fx.f, g), from_frame(fx.f, h));
    const SampledFunction one_step = apply_pi(fx.f, fx.lambda, to_frame(fx.f, gh), fx.phi);
    CHECK(rel_l2_diff(two_step, one_step) <= 1e-6);
  }
}

TEST_CASE("matrix coefficients at z = 0 are kronecker deltas") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const SymplecticFrame f = frame(a, vec1(1.3));
  const Eigen::VectorXd zero = vec1(0.0);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; q <= 4; ++q) {
      const std::complex<double> val = matrix_coefficient(f, {p}, {q}, zero, zero);
      CHECK(std::abs(val - (p == q ? 1.0 : 0.0)) <= 1e-12);
    }
}

TEST_CASE("matrix coefficient quadrature matches the laguerre closed form") {
  const TwoStepAlgebra a = make_heisenberg(1);
  std::mt19937_64 rng(31);
  for (const double lv : {1.0, 0.6, 2.5}) {
    const SymplecticFrame f = frame(a, vec1(lv));
    for (int alpha = 0; alpha <= 4; ++alpha)
      for (int t = 0; t < 10; ++t) {
        const double x = uniform(rng, -2.1, 2.1);
        const double y = uniform(rng, -2.1, 2.1);
        const std::complex<double> quad = matrix_coefficient(f, {alpha}, {alpha}, vec1(x), vec1(y));
        Eigen::VectorXcd z(1);
        z << std::complex<double>(x, y);
        const std::complex<double> closed = special_hermite_diag({alpha}, z, f.d);
        CHECK(std::abs(quad - closed) <= 1e-8);
      }
  }

  // Two frequencies at once on heisenberg-2.
  const TwoStepAlgebra h2 = make_heisenberg(2);
  const SymplecticFrame f2 = frame(h2, vec1(0.9));
  Eigen::VectorXd x(2), y(2);
  x << 0.7, -1.2;
  y << -0.4, 0.5;
  Eigen::VectorXcd z(2);
  z << std::complex<double>(0.7, -0.4), std::complex<double>(-1.2, 0.5);
  CHECK(std::abs(matrix_coefficient(f2, {1, 2}, {1, 2}, x, y) -
                 special_hermite_diag({1, 2}, z, f2.d)) <= 1e-8);
}

TEST_CASE("matrix coefficient conjugation symmetry") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const SymplecticFrame f = frame(a, vec1(1.0));
  std::mt19937_64 rng(37);
  for (int t = 0; t < 10; ++t) {
    const Eigen::VectorXd x = vec1(uniform(rng, -2, 2));
    const Eigen::VectorXd y = vec1(uniform(rng, -2, 2));
    const std::complex<double> ab = matrix_coefficient(f, {2}, {0}, x, y);
    const std::complex<double> ba = matrix_coefficient(f, {0}, {2}, -x, -y);
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-12);
  }
}

TEST_CASE("central transform of a gaussian profile") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const GridSpec v_grid = GridSpec::uniform(2, 2.0, 9);
  const PointEvaluator f = [](const GroupElement& g) {
    return std::complex<double>(std::exp(-0.5 * g.v.squaredNorm() - 0.5 * g.z.squaredNorm()), 0.0);
  };
  const double lv = 0.7;
  const SampledFunction ft = central_ft(f, vec1(lv), a, v_grid);
  const double factor = std::sqrt(2.0 * M_PI) * std::exp(-0.5 * lv * lv);
  for (long i = 0; i < v_grid.size(); ++i) {
    const double expect = factor * std::exp(-0.5 * v_grid.point(i).squaredNorm());
    CHECK(std::abs(ft.values[i] - expect) <= 1e-10);
    CHECK(std::abs(ft.values[i].imag()) <= 1e-12);
  }
}

TEST_CASE("central transform refuses an undecayed integrand") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const GridSpec v_grid = GridSpec::uniform(2, 1.0, 3);
  const PointEvaluator slow = [](const GroupElement& g) {
    return std::complex<double>(std::exp(-g.z.squaredNorm() / 200.0), 0.0);
  };
  CHECK_THROWS_AS(central_ft(slow, vec1(1.0), a, v_grid), TruncationError);
}

TEST_CASE("twisted convolution at lambda = 0 is plain convolution") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const GridSpec grid = GridSpec::uniform(2, 7.0, 33);
  const SampledFunction f = sample(grid, [](const Eigen::VectorXd& v) {
    return std::complex<double>(std::exp(-0.5 * v.squaredNorm()), 0.0);
  });
  const SampledFunction conv = twisted_convolution(a, f, f, vec1(0.0));
  for (long i = 0; i < grid.size(); ++i) {
    const double expect = M_PI * std::exp(-0.25 * grid.point(i).squaredNorm());
    CHECK(std::abs(conv.values[i] - expect) <= 1e-8);
  }
}

TEST_CASE("twisted convolution pointwise evaluator agrees with the grid version") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const GridSpec grid = GridSpec::uniform(2, 7.0, 33);
  const SampledFunction f = sample(grid, [](const Eigen::VectorXd& v) {
    return std::complex<double>(std::exp(-0.5 * (v - Eigen::VectorXd::Constant(2, 0.3)).squaredNorm()), 0.0);
  });
  const SampledFunction g = sample(grid, [](const Eigen::VectorXd& v) {
    return std::complex<double>(std::exp(-0.7 * v.squaredNorm()), 0.0);
  });
  const Eigen::VectorXd lambda = vec1(0.9);
  const SampledFunction full = twisted_convolution(a, f, g, lambda);
  Eigen::ArrayXi idx(2);
  for (const int i : {7, 16, 21})
    for (const int j : {5, 16, 27}) {
      idx << i, j;
      const Eigen::VectorXd z = grid.point(grid.flat(idx));
      CHECK(std::abs(full.at(idx) - twisted_convolution_at(a, f, g, lambda, z)) <= 1e-10);
    }

  // Flipping the functional conjugates the result for real inputs.
  const SampledFunction flipped = twisted_convolution(a, f, g, -lambda);
  for (long i = 0; i < grid.size(); ++i)
    CHECK(std::abs(flipped.values[i] - std::conj(full.values[i])) <= 1e-12);

  CHECK_THROWS_AS(twisted_convolution(a, f, sample(GridSpec::uniform(2, 7.0, 32), [](const Eigen::VectorXd&) {
                    return std::complex<double>{0.0, 0.0};
                  }), lambda),
                  std::invalid_argument);
}

TEST_CASE("hermite basis enumeration is graded lexicographic") {
  const auto b1 = hermite_basis(1, 4);
  REQUIRE(b1.size() == 5);
  for (int p = 0; p <= 4; ++p) CHECK(b1[p] == MultiIndex{p});

  const auto b2 = hermite_basis(2, 2);
  const std::vector<MultiIndex> expect = {{0, 0}, {0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  CHECK(b2 == expect);
}

TEST_CASE("group transform entries match a direct quadrature") {
  const TwoStepAlgebra a = make_heisenberg(1);
  const Eigen::VectorXd lambda = vec1(1.0);
  const PointEvaluator f = [](const GroupElement& g) {
    return std::complex<double>(std::exp(-0.5 * g.v.squaredNorm() - 0.5 * g.z.squaredNorm()), 0.0);
  };
  const GridSpec xy = GridSpec::uniform(2, 8.0, 41);
  const GroupFT ft = group_ft(a, lambda, f, 2, xy);
  REQUIRE(ft.basis.size() == 3);

  // Same entries assembled from central_ft values and matrix_coefficient,
  // on the identical grid and weights.
  const double central = std::sqrt(2.0 * M_PI) * std::exp(-0.5);
  for (const auto& [ia, ib] : std::vector<std::pair<int, int>>{{0, 0}, {1, 0}, {2, 1}}) {
    std::complex<double> direct{0.0, 0.0};
    Eigen::ArrayXi idx(2);
    for (long i = 0; i < xy.size(); ++i) {
      xy.unflatten(i, idx);
      double w = 1.0;
      for (int ax = 0; ax < 2; ++ax)
        w *= (idx[ax] == 0 || idx[ax] == xy.points[ax] - 1) ? 0.5 * xy.spacing(ax)
                                                            : xy.spacing(ax);
      const Eigen::VectorXd p = xy.point(i);
      const Eigen::VectorXd v = ft.frame.X * p.head(1) + ft.frame.Y * p.tail(1);
      direct += w * central * std::exp(-0.5 * v.squaredNorm()) *
                matrix_coefficient(ft.frame, ft.basis[ia], ft.basis[ib], p.head(1), p.tail(1));
    }
    CHECK(std::abs(ft.mat(ia, ib) - direct) <= 1e-6 * std::abs(direct) + 1e-9);
  }
}

TEST_CASE("oscillator eigenfunctions under hamiltonian_apply") {
  Eigen::VectorXd d1 = vec1(1.0);
  const GridSpec grid = GridSpec::uniform(1, 14.0, 1024);
  const SampledFunction phi0 = sample(grid, [&](const Eigen::VectorXd& xi) {
    return std::complex<double>(dilate(d1, {0}, xi), 0.0);
  });
  const SampledFunction h = hamiltonian_apply(d1, phi0);
  double num = 0.0, den = 0.0;
  for (long i = 0; i < grid.size(); ++i) {
    num += std::norm(h.values[i] + phi0.values[i]);
    den += std::norm(phi0.values[i]);
  }
  CHECK(std::sqrt(num / den) <= 1e-5);
}

TEST_CASE("hamiltonian_apply converges at fourth order") {
  Eigen::VectorXd d1 = vec1(1.0);
  auto residual = [&](int points) {
    const GridSpec grid = GridSpec::uniform(1, 14.0, points);
    const SampledFunction phi = sample(grid, [&](const Eigen::VectorXd& xi) {
      return std::complex<double>(dilate(d1, {2}, xi), 0.0);
    });
    const SampledFunction h = hamiltonian_apply(d1, phi);
    double num = 0.0, den = 0.0;
    for (long i = 0; i < grid.size(); ++i) {
      num += std::norm(h.values[i] + 5.0 * phi.values[i]);
      den += std::norm(phi.values[i]);
    }
    return std::sqrt(num / den);
  };
  const double r1 = residual(128);
  const double r2 = residual(256);
  const double order = std::log2(r1 / r2);
  CHECK(order >= 3.5);
}
