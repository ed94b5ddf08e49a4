#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ladmpsap/problem.hpp"

namespace ladmpsap {

enum class Variant {
  Ladmpsap,         // parallel splitting, adaptive penalty
  LadmpsFixedBeta,  // parallel splitting, penalty frozen at beta0
  NaiveLadm,        // sequential multiplier, divergence baseline
  Practical,        // lifts set constraints, refined eta bounds
  Proximal,         // linearizes smooth parts, tau = T + beta eta
};

std::string to_string(Variant v);

struct PenaltySchedule {
  double beta0 = 0.0;  // 0 selects the default beta0 = m * eps2
  std::optional<double> beta_max = 1e10;  // nullopt: unbounded mode
  double rho0 = 10.0;
  double eps2 = 1e-4;
};

struct SolverConfig {
  PenaltySchedule schedule{};
  double eps1 = 1e-3;
  std::optional<std::vector<double>> eta;         // per engine block; nullopt = auto
  std::optional<std::vector<double>> proximal_T;  // per engine block; nullopt = Lipschitz bounds
  int max_iter = 2000;
  Variant variant = Variant::Ladmpsap;
  std::optional<Block> lambda0;  // defaults to zero
  double eta_margin = 1.02;
  bool record_diagnostics = false;
};

enum class SolveStatus { Converged, MaxIter, Diverged, NumericError };

std::string to_string(SolveStatus s);

struct IterationRecord {
  std::vector<Block> x;  // x^{k+1}, engine-level (lifted when lifting applies)
  Block lambda;          // lambda^{k+1}
  double beta;           // beta_k in effect during the update
  double beta_next;      // beta_{k+1}
  double feasibility_residual;
  double update_residual;
  double objective;
};

struct SolveReport {
  std::vector<Block> x;  // per original problem block; set-constrained
                         // blocks take their projected auxiliary copy
  Block lambda;
  SolveStatus status = SolveStatus::MaxIter;
  int iterations = 0;
  double feasibility_residual = 0.0;
  double update_residual = 0.0;

  // resolved engine parameters (per engine block)
  std::vector<double> eta;
  std::vector<double> T;
  std::vector<double> op_norms;
  double beta_final = 0.0;
  double b_norm_guard = 0.0;

  std::vector<Block> engine_x;  // final engine-level blocks
  std::vector<IterationRecord> trace;  // populated when record_diagnostics

  // penalty-weighted average of the engine iterates and its weights
  // (populated when record_diagnostics)
  std::vector<Block> ergodic_x;
  std::vector<double> gamma;
};

/// lambda + beta (sum_i A_i(x_i) - b); the auxiliary multiplier every block
/// update reads. Also the multiplier update itself when fed the new blocks.
Block compute_lambda_hat(const Problem& problem, const std::vector<Block>& x,
                         const Block& lambda, double beta);

/// One parallel sweep of block updates. Every block reads the same
/// lambda_hat, so the result does not depend on update order. T[i] > 0 or a
/// smooth part selects the linearized update with tau_i = T_i + beta eta_i.
std::vector<Block> update_blocks_parallel(const Problem& problem,
                                          const std::vector<Block>& x,
                                          const Block& lambda_hat, double beta,
                                          const std::vector<double>& eta,
                                          const std::vector<double>& T);

/// min(beta_max, rho beta) with rho = rho0 when the relative update
/// residual is strictly below eps2, else rho = 1. Unbounded schedules skip
/// the cap.
double update_beta(double beta, const PenaltySchedule& schedule,
                   double max_relative_step);

struct StoppingCheck {
  bool feasibility_ok = false;
  bool update_ok = false;
  double feasibility_residual = 0.0;
  double update_residual = 0.0;
};

/// Evaluates both stopping conditions for the step x_old -> x_new taken
/// under beta. Blocks with a smooth part use the linearized-update residual
/// ||A_i||^{-1} ||grad g_i(new) - grad g_i(old) - tau_i (new - old)||; all
/// others use beta sqrt(eta_i) ||new - old||. Residuals are normalized by
/// max(||b||, 1).
StoppingCheck check_stopping(const Problem& problem, const SolverConfig& config,
                             const std::vector<Block>& x_old,
                             const std::vector<Block>& x_new,
                             const Block& residual_new, double beta,
                             const std::vector<double>& eta,
                             const std::vector<double>& T,
                             const std::vector<double>& op_norms);

/// Auto eta values for the variant: margin * n ||A_i||^2 for the parallel
/// solvers, margin * ||A_i||^2 for the naive baseline, and the refined
/// margin * (n ||A_i||^2 + 2) / margin * 2 pairs for lifted problems.
std::vector<double> auto_eta(const Problem& problem, Variant variant,
                             double margin, const std::vector<double>& op_norms);

/// Runs the variant selected in config until both stopping conditions hold
/// or max_iter / the divergence guard trips. Practical (and Proximal on a
/// set-constrained problem) first lifts the sets away and solves the
/// augmented program.
SolveReport solve(const Problem& problem, const SolverConfig& config);

}  // namespace ladmpsap
