#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "ladmpsap/linear_map.hpp"
#include "ladmpsap/problem.hpp"
#include "ladmpsap/rng.hpp"

using namespace ladmpsap;

namespace {

// |<A x, y> - <x, A' y>| <= 1e-10 (||x|| ||y|| + 1)
void check_adjoint_identity(const LinearMap& map, Rng& rng, int trials = 10) {
  for (int t = 0; t < trials; ++t) {
    const Shape in = map.input_shape();
    const Shape out = map.output_shape();
    const Block x = rng.gaussian_matrix(in.rows, in.cols);
    const Block y = rng.gaussian_matrix(out.rows, out.cols);
    const double lhs = (map.apply(x).array() * y.array()).sum();
    const double rhs = (x.array() * map.adjoint(y).array()).sum();
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (x.norm() * y.norm() + 1.0));
  }
}

}  // namespace

TEST_CASE("identity map applies and adjoints with scaling") {
  const auto id = LinearMap::identity({2, 1});
  Block v(2, 1);
  v << 1, 2;
  CHECK(id.apply(v) == v);

  const auto scaled = LinearMap::identity({2, 1}, 3.0);
  CHECK(scaled.apply(v) == 3.0 * v);
  CHECK(scaled.adjoint(v) == 3.0 * v);  // self-adjoint scaling
}

TEST_CASE("mask selects entries and its adjoint injects them back") {
  Block m(2, 2);
  m << 5, 6, 7, 8;
  const auto mask = LinearMap::mask({2, 2}, {{0, 0}});
  const Block out = mask.apply(m);
  REQUIRE(shape_of(out) == Shape{1, 1});
  CHECK(out(0, 0) == 5.0);

  Block y(1, 1);
  y << 5;
  Block back = mask.adjoint(y);
  Block want = Block::Zero(2, 2);
  want(0, 0) = 5.0;
  CHECK(back == want);
}

TEST_CASE("left multiply is the matrix product") {
  Block x(2, 2);
  x << 1, 0, 0, 2;
  Block z = Block::Ones(2, 2);
  const auto map = LinearMap::left_multiply(x, 2);
  Block want(2, 2);
  want << 1, 1, 2, 2;
  CHECK(map.apply(z) == want);
}

TEST_CASE("left multiply adjoint equals X' Y on random instances") {
  Rng rng(11);
  for (int t = 0; t < 5; ++t) {
    const Block x = rng.gaussian_matrix(4, 4);
    const Block y = rng.gaussian_matrix(4, 4);
    const auto map = LinearMap::left_multiply(x, 4);
    CHECK((map.adjoint(y) - x.transpose() * y).norm() <= 1e-12);
  }
}

TEST_CASE("apply rejects mismatched shapes") {
  const auto id = LinearMap::identity({2, 1});
  CHECK_THROWS_AS(id.apply(Block::Zero(3, 1)), std::invalid_argument);
  CHECK_THROWS_AS(id.adjoint(Block::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("mask validates its index set") {
  CHECK_THROWS_AS(LinearMap::mask({2, 2}, {{2, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(LinearMap::mask({2, 2}, {{0, 0}, {0, 0}}),
                  std::invalid_argument);
}

TEST_CASE("adjoint identity holds for every map kind") {
  Rng rng(42);
  check_adjoint_identity(LinearMap::dense(rng.gaussian_matrix(5, 3)), rng);
  check_adjoint_identity(LinearMap::identity({3, 2}, -1.7), rng);
  check_adjoint_identity(
      LinearMap::mask({4, 3}, {{0, 0}, {3, 2}, {1, 1}, {2, 0}}), rng);
  check_adjoint_identity(LinearMap::left_multiply(rng.gaussian_matrix(4, 3), 5), rng);
  check_adjoint_identity(LinearMap::right_multiply(rng.gaussian_matrix(3, 6), 2), rng);
  check_adjoint_identity(
      LinearMap::negated(LinearMap::dense(rng.gaussian_matrix(4, 4))), rng);
  check_adjoint_identity(
      LinearMap::stacked({{LinearMap::dense(rng.gaussian_matrix(3, 2)), 0},
                          {LinearMap::identity({2, 1}), 3}},
                         5),
      rng);
}

TEST_CASE("op_norm matches known singular values") {
  CHECK(LinearMap::identity({3, 1}).op_norm().value == doctest::Approx(1.0));

  Block d(2, 2);
  d << 3, 0, 0, 4;
  const auto est = LinearMap::dense(Block(d)).op_norm();
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(4.0).epsilon(1e-8));
}

TEST_CASE("op_norm agrees with a dense SVD on random matrices") {
  Rng rng(7);
  const Block m = rng.gaussian_matrix(20, 30);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m);
  const double truth = svd.singularValues()(0);
  const auto est = LinearMap::dense(m).op_norm();
  CHECK(est.converged);
  CHECK(std::abs(est.value - truth) <= 1e-8 * truth);
}

TEST_CASE("op_norm survives an all-ones start in the null space") {
  Block m(1, 2);
  m << 1, -1;  // ones vector is annihilated
  const auto est = LinearMap::dense(m).op_norm();
  CHECK(est.value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
}

TEST_CASE("op_norm dominates ||A x|| / ||x|| on random probes") {
  Rng rng(3);
  const auto map = LinearMap::dense(rng.gaussian_matrix(6, 4));
  const double bound = map.op_norm().value * (1.0 + 1e-9);
  for (int t = 0; t < 20; ++t) {
    Block x = rng.gaussian_matrix(4, 1);
    x /= x.norm();
    CHECK(map.apply(x).norm() <= bound);
  }
}

TEST_CASE("stacked norm obeys the root-sum-square bound") {
  Rng rng(5);
  const Block a = rng.gaussian_matrix(3, 4);
  const Block b = rng.gaussian_matrix(2, 4);
  const auto stacked = LinearMap::stacked(
      {{LinearMap::dense(a), 0}, {LinearMap::dense(b), 3}}, 5);
  const double na = LinearMap::dense(a).op_norm().value;
  const double nb = LinearMap::dense(b).op_norm().value;
  const double ns = stacked.op_norm().value;
  CHECK(ns <= std::sqrt(na * na + nb * nb) + 1e-8);

  // disjoint row placement: equality against the dense stack
  Eigen::MatrixXd full(5, 4);
  full.topRows(3) = a;
  full.bottomRows(2) = b;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(full);
  CHECK(ns == doctest::Approx(svd.singularValues()(0)).epsilon(1e-7));
}

TEST_CASE("lift_with_sets builds the augmented program") {
  Problem p;
  Block b(2, 1);
  b << 1, 1;
  p.rhs = b;
  p.blocks.push_back({Term::zero(), LinearMap::identity({2, 1}),
                      Block::Zero(2, 1), ConvexSet::nonneg_cone()});

  const auto lifted = lift_with_sets(p);
  REQUIRE(lifted.problem.n() == 2);
  REQUIRE(lifted.aux_of_block == std::vector<Index>{1});

  Block bhat(4, 1);
  bhat << 1, 1, 0, 0;
  CHECK(lifted.problem.rhs == bhat);

  // hat A_1 stacks A_1 over the identity; hat A_2 is a negated identity row
  Block v(2, 1);
  v << 2, 3;
  Block img1(4, 1);
  img1 << 2, 3, 2, 3;
  CHECK(lifted.problem.blocks[0].map.apply(v) == img1);
  Block img2(4, 1);
  img2 << 0, 0, -2, -3;
  CHECK(lifted.problem.blocks[1].map.apply(v) == img2);

  // auxiliary map has unit norm
  CHECK(lifted.problem.blocks[1].map.op_norm().value == doctest::Approx(1.0));

  Rng rng(13);
  check_adjoint_identity(lifted.problem.blocks[0].map, rng);
  check_adjoint_identity(lifted.problem.blocks[1].map, rng);
}

TEST_CASE("lift_with_sets preserves feasibility exactly on paired points") {
  Rng rng(17);
  Problem p;
  const Block a1 = rng.gaussian_matrix(3, 4);
  const Block a2 = rng.gaussian_matrix(3, 2);
  p.blocks.push_back({Term::l1(1.0), LinearMap::dense(a1), Block::Zero(4, 1),
                      ConvexSet::nonneg_cone()});
  p.blocks.push_back({Term::l1(1.0), LinearMap::dense(a2), Block::Zero(2, 1),
                      std::nullopt});

  // pick x1 >= 0, x2 free, then set b so (x1, x2) is feasible
  const Block x1 = rng.gaussian_matrix(4, 1).cwiseAbs();
  const Block x2 = rng.gaussian_matrix(2, 1);
  p.rhs = a1 * x1 + a2 * x2;

  const auto lifted = lift_with_sets(p);
  REQUIRE(lifted.problem.n() == 3);

  const auto residual = [&](const Block& u1, const Block& u2, const Block& aux) {
    return lifted.problem.constraint_residual({u1, u2, aux}).norm();
  };
  CHECK(residual(x1, x2, x1) <= 1e-12);          // (x, x) feasible
  CHECK(residual(x1, x2, x1 * 2.0) > 1e-6);      // copy must match
  Block x1_bad = x1;
  x1_bad(0, 0) += 1.0;                           // constraint violated
  CHECK(residual(x1_bad, x2, x1_bad) > 1e-6);
}

TEST_CASE("lift_with_sets requires at least one set") {
  Problem p;
  p.rhs = Block::Ones(2, 1);
  p.blocks.push_back(
      {Term::zero(), LinearMap::identity({2, 1}), Block::Zero(2, 1), std::nullopt});
  CHECK_THROWS_AS(lift_with_sets(p), std::invalid_argument);
}
