#pragma once

#include <utility>
#include <vector>

#include "ladmpsap/block.hpp"

namespace ladmpsap {

/// Entrywise soft thresholding: sgn(x) * max(|x| - eps, 0).
Block prox_l1(const Block& w, double eps);

/// Singular value thresholding: U T_eps(S) V'. eps = 0 returns w unchanged.
Block prox_nuclear(const Block& w, double eps);

/// Minimizer of (1/(2 mu)) ||e||^2 + (sigma/2) ||e - w||^2,
/// i.e. w * (mu sigma) / (mu sigma + 1).
Block prox_sq_frobenius(const Block& w, double mu, double sigma);

/// Blockwise soft thresholding on consecutive groups of a column vector:
/// per group, w_j * max(1 - eps / ||w_j||, 0).
Block prox_group_l2(const Block& w, double eps,
                    const std::vector<Index>& group_sizes);

/// Entrywise max(w, 0); the projection onto the nonnegative cone.
Block project_nonneg(const Block& w);

/// Mean logistic loss (1/s) sum_i log(1 + exp(-y_i <wbar, xbar_i>)) and its
/// gradient. xbar holds one sample per column; y entries must be +1 or -1.
std::pair<double, Block> logistic_value_grad(const Block& wbar,
                                             const Block& xbar,
                                             const Block& y);

/// Lipschitz bound (1/(4s)) ||xbar||_2^2 for the logistic gradient.
double logistic_lipschitz_bound(const Block& xbar);

}  // namespace ladmpsap
