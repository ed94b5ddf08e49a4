#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ladmpsap/problem.hpp"

namespace ladmpsap::problems {

struct LatentLrrSpec {
  int subspaces = 5;      // s
  int points = 20;        // p, per subspace
  int ambient_dim = 50;   // d
  int intrinsic_dim = 5;  // r~
  double mu = 0.01;
  std::uint64_t seed = 0;
};

struct NmcSpec {
  Index rows = 200;
  Index cols = 200;
  int rank = 10;
  double sample_ratio = 0.2;  // q
  double noise_std = 0.0;
  double mu = 1e-4;
  std::uint64_t seed = 0;
};

struct GroupLogisticSpec {
  int groups = 10;         // t; p = 9t + 1 variables
  int samples = 60;        // s
  int active_groups = 3;   // q
  double mu = 0.1;
  std::uint64_t seed = 0;
};

/// min ||Z||_* + ||L||_* + mu ||E||_1  s.t.  X Z + L X + E = X.
Problem build_latent_lrr(const Block& X, double mu);

/// min ||X||_* + (1/(2 mu)) ||E||^2  s.t.  P_Omega(X) + E = b, X >= 0.
/// b_obs holds one observed value per omega entry. Solve with the practical
/// variant; the set constraint is lifted away internally.
Problem build_nmc(const Block& b_obs,
                  const std::vector<std::pair<Index, Index>>& omega,
                  Shape shape, double mu);

/// Logistic loss with overlapping group lasso, as the two-block program
/// min loss(wbar) + mu sum_j ||z_j||  s.t.  Sbar wbar - z = 0.
/// groups lists the w coordinates each selection matrix picks; the bias
/// (last coordinate of wbar) is never selected. Solve with the proximal
/// variant.
Problem build_group_logistic(const Block& X, const Block& y,
                             const std::vector<std::vector<Index>>& groups,
                             double mu);

/// min sum_i ||x_i||_1  s.t.  sum_i A_i x_i = b with standard Gaussian
/// A_i (m x d) and b; the naive multi-block baseline diverges on these.
Problem build_parallel_bp(int n, Index m, Index d, std::uint64_t seed);

/// Union of s random r~-dimensional subspaces, p points each: columns of a
/// d x (s p) matrix.
Block gen_latent_lrr_data(const LatentLrrSpec& spec);

struct NmcData {
  Block truth;  // nonnegative, rank exactly spec.rank
  Block b_obs;  // observed entries, one per omega element, noise added
  std::vector<std::pair<Index, Index>> omega;
};
NmcData gen_nmc_data(const NmcSpec& spec);

struct GroupLogisticData {
  Block X;                     // p x s, one sample per column
  Block y;                     // labels (1, -1, 1, -1, ...)
  std::vector<Index> support;  // pruned ground-truth support of w
};
GroupLogisticData gen_group_logistic_data(const GroupLogisticSpec& spec);

/// The overlapping chain {0..9}, {9..18}, ... of t groups of ten
/// coordinates sharing one variable with each neighbour.
std::vector<std::vector<Index>> chain_groups(int t);

/// Relative nonnegative feasibility ||min(x_hat, 0)|| / ||truth||.
double fa_metric(const Block& x_hat, const Block& truth);

}  // namespace ladmpsap::problems
