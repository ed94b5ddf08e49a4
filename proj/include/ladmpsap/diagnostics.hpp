#pragma once

#include <vector>

#include "ladmpsap/problem.hpp"
#include "ladmpsap/solver.hpp"

namespace ladmpsap {

/// A solution candidate paired with a multiplier, e.g. from an oracle or a
/// long high-accuracy run.
struct ReferencePoint {
  std::vector<Block> x;
  Block lambda;
};

struct ErgodicAverage {
  std::vector<Block> x;       // sum_k gamma_k x^{k+1}
  std::vector<double> gamma;  // beta_k^{-1} / sum_j beta_j^{-1}, sums to 1
};

/// Penalty-weighted running average of iterates. iterates[k] holds x^{k+1},
/// betas[k] the penalty in effect for that step.
ErgodicAverage ergodic_average(const std::vector<std::vector<Block>>& iterates,
                               const std::vector<double>& betas);

/// f(x~) - f(x*) + sum_i <A_i'(lambda*), x~_i - x_i*> + alpha ||A(x~) - b||^2.
/// Nonnegative, and zero exactly at optimal solutions.
double optimality_measure(const std::vector<Block>& x_tilde,
                          const ReferencePoint& reference,
                          const Problem& problem, double alpha);

/// alpha with 1/alpha = (n+1) max(1, max_i ||A_i||^2 / (eta_i - n ||A_i||^2)).
double theorem_alpha(const std::vector<double>& op_norms,
                     const std::vector<double>& eta);

/// Sequence sum_i w_i ||x_i^k - x_i*||^2 + beta_k^{-2} ||lambda^k - lambda*||^2
/// over a solve trace, evaluated with the post-update penalty of each record.
/// With weights eta_i it is non-increasing whenever the eta bounds hold; runs
/// with smooth parts should pass weights eta_i + T_i / beta_k via the
/// per-record overload below.
std::vector<double> fejer_diagnostic(const std::vector<IterationRecord>& trace,
                                     const ReferencePoint& reference,
                                     const std::vector<double>& eta);

/// Same quantity with explicit weights per record (weights[k][i]).
std::vector<double> fejer_diagnostic_weighted(
    const std::vector<IterationRecord>& trace, const ReferencePoint& reference,
    const std::vector<std::vector<double>>& weights);

}  // namespace ladmpsap
