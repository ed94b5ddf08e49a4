#include <doctest.h>

#include <Eigen/SVD>
#include <cmath>

#include "ladmpsap/oracle.hpp"
#include "ladmpsap/prox.hpp"
#include "ladmpsap/rng.hpp"
#include "ladmpsap/term.hpp"

using namespace ladmpsap;

TEST_CASE("soft thresholding on scalars") {
  Block w(1, 1);
  w << 1.2;
  CHECK(prox_l1(w, 0.5)(0, 0) == doctest::Approx(0.7));
  w << -0.3;
  CHECK(prox_l1(w, 0.5)(0, 0) == 0.0);
  CHECK_THROWS_AS(prox_l1(w, -1.0), std::invalid_argument);
}

TEST_CASE("l1 prox matches the per-coordinate grid oracle") {
  Rng rng(21);
  const Term term = Term::l1(1.0);
  for (int t = 0; t < 20; ++t) {
    const Block w = rng.gaussian_matrix(5, 1);
    const double sigma = 1.0 / 0.3;  // eps = 0.3
    const Block p = prox_l1(w, 0.3);
    const Block q = oracle::prox_grid_oracle(term, sigma, w, 1e-4);
    CHECK((p - q).cwiseAbs().maxCoeff() <= 1e-4 + 1e-12);
  }
}

TEST_CASE("nuclear prox thresholds singular values") {
  Block w = Block::Zero(2, 2);
  w(0, 0) = 3;
  w(1, 1) = 1;
  Block p = prox_nuclear(w, 2.0);
  Block want = Block::Zero(2, 2);
  want(0, 0) = 1.0;
  CHECK((p - want).norm() <= 1e-12);

  CHECK(prox_nuclear(Block::Zero(3, 4), 0.5).norm() == 0.0);
}

TEST_CASE("nuclear prox satisfies the subgradient membership condition") {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    const Block w = rng.gaussian_matrix(5, 4);
    const double eps = 0.7;
    const double sigma = 1.0 / eps;
    const Block p = prox_nuclear(w, eps);

    // sigma (w - p) must lie in the nuclear-norm subdifferential at p:
    // U V' on the range of p plus a spectral-norm <= 1 remainder on its
    // null directions
    const Block g = sigma * (w - p);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        p, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& s = svd.singularValues();
    Index rank = 0;
    while (rank < s.size() && s(rank) > 1e-9 * s(0)) ++rank;
    const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXd v = svd.matrixV().leftCols(rank);

    const Block rem = g - u * v.transpose();
    CHECK((u.transpose() * rem).norm() <= 1e-9);
    CHECK((rem * v).norm() <= 1e-9);
    Eigen::JacobiSVD<Eigen::MatrixXd> rem_svd(rem);
    CHECK(rem_svd.singularValues()(0) <= 1.0 + 1e-9);
  }
}

TEST_CASE("nuclear prox keeps symmetric PSD matrices symmetric PSD") {
  Rng rng(33);
  for (int t = 0; t < 5; ++t) {
    const Block g = rng.gaussian_matrix(4, 4);
    const Block psd = g * g.transpose();
    const Block p = prox_nuclear(psd, 0.5);
    CHECK((p - p.transpose()).norm() <= 1e-9 * (1.0 + p.norm()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(
        0.5 * (p + p.transpose()));
    CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
  }
}

TEST_CASE("squared Frobenius prox shrinks by mu sigma / (mu sigma + 1)") {
  Block w(1, 1);
  w << 2.0;
  CHECK(prox_sq_frobenius(w, 1.0, 1.0)(0, 0) == doctest::Approx(1.0));
  CHECK(prox_sq_frobenius(Block::Zero(2, 2), 0.7, 2.0).norm() == 0.0);
  CHECK_THROWS_AS(prox_sq_frobenius(w, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(prox_sq_frobenius(w, 1.0, 0.0), std::invalid_argument);

  Rng rng(41);
  const Term term = Term::sq_frobenius(0.5);
  for (int t = 0; t < 20; ++t) {
    const Block v = rng.gaussian_matrix(4, 1);
    const Block p = prox_sq_frobenius(v, 0.5, 3.0);
    const Block q = oracle::prox_grid_oracle(term, 3.0, v, 1e-4);
    CHECK((p - q).cwiseAbs().maxCoeff() <= 1e-4 + 1e-12);
  }
}

TEST_CASE("group soft thresholding") {
  Block w(2, 1);
  w << 3, 4;  // norm 5, eps 2.5 halves it
  const Block p = prox_group_l2(w, 2.5, {2});
  CHECK(p(0, 0) == doctest::Approx(1.5));
  CHECK(p(1, 0) == doctest::Approx(2.0));

  CHECK(prox_group_l2(w, 5.5, {2}).norm() == 0.0);
  CHECK_THROWS_AS(prox_group_l2(w, 1.0, {3}), std::invalid_argument);

  Rng rng(43);
  const Term term = Term::group_l2(1.0, {2, 3, 1});
  for (int t = 0; t < 20; ++t) {
    const Block v = rng.gaussian_matrix(6, 1);
    const Block got = prox_group_l2(v, 0.4, {2, 3, 1});
    const Block want = oracle::prox_grid_oracle(term, 1.0 / 0.4, v, 1e-5);
    CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-4);
  }
}

TEST_CASE("nonnegative projection clamps and is idempotent") {
  Block w(1, 2);
  w << -1, 2;
  Block p = project_nonneg(w);
  CHECK(p(0, 0) == 0.0);
  CHECK(p(0, 1) == 2.0);
  CHECK(project_nonneg(-Block::Ones(3, 3)).norm() == 0.0);

  Rng rng(45);
  const Block v = rng.gaussian_matrix(4, 4);
  CHECK(project_nonneg(project_nonneg(v)) == project_nonneg(v));
}

TEST_CASE("eps = 0 leaves inputs unchanged") {
  Rng rng(47);
  const Block w = rng.gaussian_matrix(3, 3);
  CHECK(prox_l1(w, 0.0) == w);
  CHECK(prox_nuclear(w, 0.0) == w);
  const Block v = rng.gaussian_matrix(4, 1);
  CHECK(prox_group_l2(v, 0.0, {2, 2}) == v);
}

TEST_CASE("logistic value and gradient at zero") {
  Rng rng(49);
  const Index s = 6;
  const Block xbar = rng.gaussian_matrix(4, s);
  Block y(s, 1);
  for (Index i = 0; i < s; ++i) y(i, 0) = (i % 2 == 0) ? 1.0 : -1.0;

  const auto [value, grad] = logistic_value_grad(Block::Zero(4, 1), xbar, y);
  CHECK(value == doctest::Approx(std::log(2.0)));
  Block want = Block::Zero(4, 1);
  for (Index i = 0; i < s; ++i) want -= 0.5 * y(i, 0) * xbar.col(i);
  want /= static_cast<double>(s);
  CHECK((grad - want).norm() <= 1e-12);
}

TEST_CASE("logistic Lipschitz bound formula") {
  Block xbar(2, 1);
  xbar << 2, 0;  // one sample with norm 2
  CHECK(logistic_lipschitz_bound(xbar) == doctest::Approx(1.0));
}

TEST_CASE("logistic rejects labels outside {-1, +1}") {
  Block xbar = Block::Ones(2, 2);
  Block y(2, 1);
  y << 1, 0.5;
  CHECK_THROWS_AS(logistic_value_grad(Block::Zero(2, 1), xbar, y),
                  std::invalid_argument);
}

TEST_CASE("logistic gradient matches central finite differences") {
  Rng rng(51);
  const Index dim = 8, s = 12;
  const Block xbar = rng.gaussian_matrix(dim, s);
  Block y(s, 1);
  for (Index i = 0; i < s; ++i) y(i, 0) = rng.uniform() < 0.5 ? 1.0 : -1.0;
  const Block w = rng.gaussian_matrix(dim, 1);

  const auto [value, grad] = logistic_value_grad(w, xbar, y);
  const double h = 1e-6;
  for (Index j = 0; j < dim; ++j) {
    Block wp = w, wm = w;
    wp(j, 0) += h;
    wm(j, 0) -= h;
    const double fd = (logistic_value_grad(wp, xbar, y).first -
                       logistic_value_grad(wm, xbar, y).first) /
                      (2.0 * h);
    CHECK(std::abs(grad(j, 0) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
  }
}

TEST_CASE("logistic loss is convex along random segments") {
  Rng rng(53);
  const Block xbar = rng.gaussian_matrix(5, 9);
  Block y(9, 1);
  for (Index i = 0; i < 9; ++i) y(i, 0) = rng.uniform() < 0.5 ? 1.0 : -1.0;
  const Term term = Term::logistic(xbar, y);
  for (int t = 0; t < 20; ++t) {
    const Block a = rng.gaussian_matrix(5, 1);
    const Block b = rng.gaussian_matrix(5, 1);
    const double mid = term.smooth_value(0.5 * (a + b));
    const double avg = 0.5 * (term.smooth_value(a) + term.smooth_value(b));
    CHECK(mid <= avg + 1e-12);
  }
}

TEST_CASE("logistic Lipschitz bound dominates sampled gradient differences") {
  Rng rng(55);
  const Block xbar = rng.gaussian_matrix(6, 10);
  Block y(10, 1);
  for (Index i = 0; i < 10; ++i) y(i, 0) = (i % 2 == 0) ? 1.0 : -1.0;
  const Term term = Term::logistic(xbar, y);
  const double lip = term.smooth_lipschitz();
  for (int t = 0; t < 30; ++t) {
    const Block a = rng.gaussian_matrix(6, 1);
    const Block b = rng.gaussian_matrix(6, 1);
    const double num = (term.smooth_grad(a) - term.smooth_grad(b)).norm();
    CHECK(num <= lip * (a - b).norm() + 1e-12);
  }
}

TEST_CASE("prox operations are non-expansive") {
  Rng rng(57);
  const auto check_pair = [&](auto&& prox) {
    for (int t = 0; t < 20; ++t) {
      const Block a = rng.gaussian_matrix(4, 3);
      const Block b = rng.gaussian_matrix(4, 3);
      CHECK((prox(a) - prox(b)).norm() <= (a - b).norm() + 1e-12);
    }
  };
  check_pair([](const Block& w) { return prox_l1(w, 0.4); });
  check_pair([](const Block& w) { return prox_nuclear(w, 0.8); });
  check_pair([](const Block& w) { return prox_sq_frobenius(w, 0.5, 2.0); });
  check_pair([](const Block& w) { return project_nonneg(w); });
}

TEST_CASE("prox output improves the proximal objective") {
  Rng rng(59);
  const std::vector<Term> terms = {Term::l1(0.7), Term::nuclear(1.3),
                                   Term::sq_frobenius(0.4),
                                   Term::group_l2(0.5, {4, 4, 4})};
  for (const auto& term : terms) {
    for (int t = 0; t < 10; ++t) {
      const Block w = (term.kind() == Term::Kind::Nuclear)
                          ? rng.gaussian_matrix(4, 3)
                          : rng.gaussian_matrix(12, 1);
      const double sigma = 2.0;
      const Block p = term.prox(w, sigma);
      const double at_p = term.prox_value(p) + 0.5 * sigma * (p - w).squaredNorm();
      CHECK(at_p <= term.prox_value(w) + 1e-10);
    }
  }
}

TEST_CASE("prox first-order condition via subgradient membership for l1") {
  Rng rng(61);
  const double weight = 0.9, sigma = 1.7;
  const Term term = Term::l1(weight);
  for (int t = 0; t < 10; ++t) {
    const Block w = rng.gaussian_matrix(6, 1);
    const Block p = term.prox(w, sigma);
    // sigma (w - p) in weight * sign(p) coordinate-wise
    const Block g = sigma * (w - p);
    for (Index i = 0; i < p.rows(); ++i) {
      if (p(i, 0) > 0.0)
        CHECK(g(i, 0) == doctest::Approx(weight));
      else if (p(i, 0) < 0.0)
        CHECK(g(i, 0) == doctest::Approx(-weight));
      else
        CHECK(std::abs(g(i, 0)) <= weight + 1e-12);
    }
  }
}
