#include <doctest.h>

#include <cmath>

#include "ladmpsap/oracle.hpp"
#include "ladmpsap/rng.hpp"

using namespace ladmpsap;
using oracle::KktReference;

namespace {

Block scalar(double v) {
  Block b(1, 1);
  b << v;
  return b;
}

}  // namespace

TEST_CASE("two symmetric scalar blocks split the constraint evenly") {
  Problem p;
  p.rhs = scalar(1.0);
  for (int i = 0; i < 2; ++i)
    p.blocks.push_back({Term::quadratic(scalar(1.0), 1.0),
                        LinearMap::identity({1, 1}), scalar(0.0), std::nullopt});
  const auto ref = oracle::eq_qp_solve(p);
  CHECK(ref.x[0](0, 0) == doctest::Approx(0.5));
  CHECK(ref.x[1](0, 0) == doctest::Approx(0.5));
  // stationarity x - 1 + lambda = 0
  CHECK(ref.lambda(0, 0) == doctest::Approx(0.5));
}

TEST_CASE("single identity block pins x to b") {
  Rng rng(97);
  const Block c = rng.gaussian_matrix(3, 1);
  const Block b = rng.gaussian_matrix(3, 1);
  Problem p;
  p.rhs = b;
  p.blocks.push_back(
      {Term::quadratic(c, 1.0), LinearMap::identity({3, 1}), Block::Zero(3, 1),
       std::nullopt});
  const auto ref = oracle::eq_qp_solve(p);
  CHECK((ref.x[0] - b).norm() <= 1e-12);
  // stationarity (x - c) + lambda = 0 fixes the multiplier sign
  CHECK((ref.lambda - (c - b)).norm() <= 1e-12);
}

TEST_CASE("random QP references satisfy the KKT conditions") {
  Rng rng(99);
  for (int t = 0; t < 5; ++t) {
    Problem p;
    for (int i = 0; i < 3; ++i)
      p.blocks.push_back({Term::quadratic(rng.gaussian_matrix(4, 1), 0.5 + i),
                          LinearMap::dense(rng.gaussian_matrix(3, 4)),
                          Block::Zero(4, 1), std::nullopt});
    p.rhs = rng.gaussian_matrix(3, 1);
    const auto ref = oracle::eq_qp_solve(p);
    CHECK(ref.feasibility_residual <= 1e-10);
    CHECK(ref.stationarity_residual <= 1e-10);
  }
}

TEST_CASE("eq_qp_solve rejects non-quadratic terms and singular systems") {
  Problem p;
  p.rhs = scalar(1.0);
  p.blocks.push_back(
      {Term::l1(1.0), LinearMap::identity({1, 1}), scalar(0.0), std::nullopt});
  CHECK_THROWS_AS(oracle::eq_qp_solve(p), std::invalid_argument);

  // zero map makes the multiplier undetermined
  Problem q;
  q.rhs = scalar(0.0);
  q.blocks.push_back({Term::quadratic(scalar(0.0), 1.0),
                      LinearMap::identity({1, 1}, 0.0), scalar(0.0),
                      std::nullopt});
  CHECK_THROWS_AS(oracle::eq_qp_solve(q), std::runtime_error);
}

TEST_CASE("grid oracle agrees with the scalar soft threshold") {
  const Term term = Term::l1(1.0);
  // sigma = 2 means eps = 0.5
  const Block p = oracle::prox_grid_oracle(term, 2.0, scalar(1.2), 1e-4);
  CHECK(p(0, 0) == doctest::Approx(0.7).epsilon(2e-4));
}

TEST_CASE("grid oracle rejects unsupported terms and oversized scans") {
  CHECK_THROWS_AS(
      oracle::prox_grid_oracle(Term::nuclear(1.0), 1.0, Block::Zero(2, 2), 1e-3),
      std::invalid_argument);
  CHECK_THROWS_AS(
      oracle::prox_grid_oracle(Term::l1(1.0), 1.0, Block::Zero(200, 1), 1e-3),
      std::invalid_argument);
}

TEST_CASE("long run reference matches the closed form on a scalar QP") {
  Problem p;
  p.rhs = scalar(1.0);
  for (int i = 0; i < 2; ++i)
    p.blocks.push_back({Term::quadratic(scalar(1.0), 1.0),
                        LinearMap::identity({1, 1}), scalar(0.0), std::nullopt});
  SolverConfig cfg;
  cfg.schedule.beta0 = 1.0;
  const auto lr = oracle::long_run_reference(p, cfg);
  const auto cf = oracle::eq_qp_solve(p);
  CHECK((lr.x[0] - cf.x[0]).norm() <= 1e-5);
  CHECK((lr.x[1] - cf.x[1]).norm() <= 1e-5);
  CHECK(lr.source == KktReference::Source::LongRun);

  const auto again = oracle::long_run_reference(p, cfg);
  CHECK(again.x[0] == lr.x[0]);  // rerun is bit-identical
  CHECK(again.lambda == lr.lambda);
}
