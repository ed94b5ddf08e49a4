#pragma once

#include "ladmpsap/diagnostics.hpp"
#include "ladmpsap/problem.hpp"
#include "ladmpsap/solver.hpp"

namespace ladmpsap::oracle {

/// Reference solution used by tests and benchmark runs.
struct KktReference {
  enum class Source { ClosedForm, LongRun, GridSearch };
  std::vector<Block> x;
  Block lambda;
  Source source = Source::ClosedForm;
  double feasibility_residual = 0.0;
  double stationarity_residual = 0.0;

  ReferencePoint point() const { return {x, lambda}; }
};

/// Dense matrix representation of a map, built column by column.
Eigen::MatrixXd materialize(const LinearMap& map);

/// Direct solve of the stationarity + feasibility system for problems whose
/// every term is (s_i/2) ||x_i - c_i||^2. Throws on non-quadratic terms or a
/// rank-deficient system.
KktReference eq_qp_solve(const Problem& problem);

/// Brute-force minimizer of h(x) + (sigma/2) ||x - w||^2 for separable
/// prox-capable terms (coordinate grid) and group terms (radial grid per
/// group). Accurate to within the grid step; never consults the term's
/// closed-form prox.
Block prox_grid_oracle(const Term& term, double sigma, const Block& w,
                       double step);

/// Reference by running the solver long with a slow penalty schedule
/// (rho0 = 1.01, up to 2000 iterations, tight tolerances). For lifted runs
/// the reference carries the engine-level blocks and multiplier.
KktReference long_run_reference(const Problem& problem, SolverConfig config);

}  // namespace ladmpsap::oracle
