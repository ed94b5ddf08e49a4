#include "ladmpsap/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace ladmpsap {

std::string to_string(Variant v) {
  switch (v) {
    case Variant::Ladmpsap: return "ladmpsap";
    case Variant::LadmpsFixedBeta: return "ladmps_fixed_beta";
    case Variant::NaiveLadm: return "naive_ladm";
    case Variant::Practical: return "practical";
    case Variant::Proximal: return "proximal";
  }
  return "?";
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged: return "converged";
    case SolveStatus::MaxIter: return "max_iter";
    case SolveStatus::Diverged: return "diverged";
    case SolveStatus::NumericError: return "numeric_error";
  }
  return "?";
}

Block compute_lambda_hat(const Problem& problem, const std::vector<Block>& x,
                         const Block& lambda, double beta) {
  return lambda + beta * problem.constraint_residual(x);
}

std::vector<Block> update_blocks_parallel(const Problem& problem,
                                          const std::vector<Block>& x,
                                          const Block& lambda_hat, double beta,
                                          const std::vector<double>& eta,
                                          const std::vector<double>& T) {
  const std::size_t n = problem.n();
  std::vector<Block> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& blk = problem.blocks[i];
    const double tau = T[i] + beta * eta[i];
    Block step = blk.map.adjoint(lambda_hat);
    if (blk.term.has_smooth()) step += blk.term.smooth_grad(x[i]);
    const Block w = x[i] - step / tau;
    // a term without a prox-capable part has h = 0, whose prox is the point
    out[i] = blk.term.has_prox() ? blk.term.prox(w, tau) : w;
  }
  return out;
}

double update_beta(double beta, const PenaltySchedule& schedule,
                   double max_relative_step) {
  const double rho = (max_relative_step < schedule.eps2) ? schedule.rho0 : 1.0;
  const double next = rho * beta;
  return schedule.beta_max ? std::min(*schedule.beta_max, next) : next;
}

StoppingCheck check_stopping(const Problem& problem, const SolverConfig& config,
                             const std::vector<Block>& x_old,
                             const std::vector<Block>& x_new,
                             const Block& residual_new, double beta,
                             const std::vector<double>& eta,
                             const std::vector<double>& T,
                             const std::vector<double>& op_norms) {
  const double bguard = std::max(problem.rhs.norm(), 1.0);
  StoppingCheck c;
  c.feasibility_residual = residual_new.norm() / bguard;
  double upd = 0.0;
  for (std::size_t i = 0; i < problem.n(); ++i) {
    const auto& term = problem.blocks[i].term;
    double r;
    if (term.has_smooth()) {
      const double tau = T[i] + beta * eta[i];
      const Block d = term.smooth_grad(x_new[i]) - term.smooth_grad(x_old[i]) -
                      tau * (x_new[i] - x_old[i]);
      r = d.norm() / std::max(op_norms[i], 1e-300);
    } else {
      r = beta * std::sqrt(eta[i]) * (x_new[i] - x_old[i]).norm();
    }
    upd = std::max(upd, r);
  }
  c.update_residual = upd / bguard;
  c.feasibility_ok = c.feasibility_residual < config.eps1;
  c.update_ok = c.update_residual < config.schedule.eps2;
  return c;
}

namespace {

// eta bound each (unlifted) variant must exceed, per block; lifted floors
// are assembled in solve() from the original map norms
std::vector<double> eta_floor_unlifted(std::size_t n, Variant variant,
                                       const std::vector<double>& op_norms) {
  std::vector<double> floor(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s2 = op_norms[i] * op_norms[i];
    floor[i] = (variant == Variant::NaiveLadm) ? s2 : static_cast<double>(n) * s2;
  }
  return floor;
}

std::vector<double> map_norms(const Problem& problem) {
  std::vector<double> norms(problem.n());
  for (std::size_t i = 0; i < problem.n(); ++i) {
    const auto est = problem.blocks[i].map.op_norm();
    norms[i] = est.value;
  }
  return norms;
}

struct Engine {
  const Problem& problem;
  const SolverConfig& config;
  std::vector<double> eta;
  std::vector<double> T;
  std::vector<double> op_norms;   // engine-level map norms
  std::vector<double> eta_floor;  // strict lower bounds the etas must exceed
};

void validate_engine(const Engine& e) {
  const std::size_t n = e.problem.n();
  if (e.eta.size() != n)
    throw std::invalid_argument("solver: eta list must have one entry per block");
  if (e.T.size() != n)
    throw std::invalid_argument("solver: T list must have one entry per block");
  const auto& floor = e.eta_floor;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(e.eta[i] > floor[i]))
      throw std::invalid_argument("solver: eta[" + std::to_string(i) +
                                  "] = " + std::to_string(e.eta[i]) +
                                  " violates the bound > " + std::to_string(floor[i]));
    const auto& term = e.problem.blocks[i].term;
    if (term.has_smooth()) {
      if (e.config.variant != Variant::Proximal)
        throw std::invalid_argument(
            "solver: block " + std::to_string(i) +
            " has a smooth component; use the proximal variant");
      if (e.T[i] < term.smooth_lipschitz())
        throw std::invalid_argument("solver: T[" + std::to_string(i) +
                                    "] is below the Lipschitz bound");
      if (!term.has_prox() && term.kind() != Term::Kind::Smooth)
        throw std::invalid_argument("solver: block " + std::to_string(i) +
                                    " lacks a prox-capable part");
    } else if (!term.has_prox()) {
      throw std::invalid_argument("solver: block " + std::to_string(i) +
                                  " has no prox-capable term");
    }
  }
  const auto& s = e.config.schedule;
  if (!(s.rho0 > 1.0)) throw std::invalid_argument("solver: rho0 must exceed 1");
  if (!(s.eps2 > 0.0 && s.eps2 < 1.0))
    throw std::invalid_argument("solver: eps2 must lie in (0, 1)");
  if (!(e.config.eps1 > 0.0)) throw std::invalid_argument("solver: eps1 must be positive");
  if (e.config.max_iter < 1) throw std::invalid_argument("solver: max_iter must be >= 1");
}

// naive Gauss-Seidel sweep: block i reads lambda_tilde_i built from already
// updated earlier blocks
std::vector<Block> update_blocks_naive(const Problem& problem,
                                       const std::vector<Block>& x,
                                       const Block& lambda, double beta,
                                       const std::vector<double>& eta) {
  const std::size_t n = problem.n();
  std::vector<Block> out = x;
  for (std::size_t i = 0; i < n; ++i) {
    Block r = -problem.rhs;
    for (std::size_t j = 0; j < n; ++j)
      r += problem.blocks[j].map.apply(out[j]);
    const Block lambda_tilde = lambda + beta * r;
    const auto& blk = problem.blocks[i];
    const double tau = beta * eta[i];
    out[i] = blk.term.prox(x[i] - blk.map.adjoint(lambda_tilde) / tau, tau);
  }
  return out;
}

bool all_finite(const std::vector<Block>& xs) {
  for (const auto& x : xs)
    if (!x.allFinite()) return false;
  return true;
}

SolveReport run_engine(const Engine& e, const Problem& original,
                       const std::vector<Index>& aux_of_block) {
  const Problem& problem = e.problem;
  const SolverConfig& config = e.config;
  const std::size_t n = problem.n();

  std::vector<Block> x;
  x.reserve(n);
  for (const auto& b : problem.blocks) x.push_back(b.x0);

  Block lambda = config.lambda0
                     ? *config.lambda0
                     : Block::Zero(problem.rhs.rows(), problem.rhs.cols());
  if (shape_of(lambda) != shape_of(problem.rhs))
    throw std::invalid_argument("solver: lambda0 shape does not match the constraint");

  const double bguard = std::max(problem.rhs.norm(), 1.0);
  double beta = config.schedule.beta0 > 0.0
                    ? config.schedule.beta0
                    : static_cast<double>(problem.rhs.size()) * config.schedule.eps2;

  Block residual = problem.constraint_residual(x);
  const double guard = 1e6 * std::max(residual.norm(), 1.0);

  SolveReport report;
  report.eta = e.eta;
  report.T = e.T;
  report.op_norms = e.op_norms;
  report.b_norm_guard = bguard;

  // running ergodic accumulators (penalty-weighted)
  std::vector<Block> erg(n);
  for (std::size_t i = 0; i < n; ++i)
    erg[i] = Block::Zero(x[i].rows(), x[i].cols());
  double weight_sum = 0.0;
  std::vector<double> inv_betas;

  SolveStatus status = SolveStatus::MaxIter;
  int iter = 0;
  try {
    for (iter = 0; iter < config.max_iter; ++iter) {
      std::vector<Block> x_new;
      if (config.variant == Variant::NaiveLadm) {
        x_new = update_blocks_naive(problem, x, lambda, beta, e.eta);
      } else {
        const Block lambda_hat = lambda + beta * residual;
        x_new = update_blocks_parallel(problem, x, lambda_hat, beta, e.eta, e.T);
      }

      const Block residual_new = problem.constraint_residual(x_new);
      const Block lambda_new = lambda + beta * residual_new;

      const StoppingCheck chk = check_stopping(problem, config, x, x_new,
                                               residual_new, beta, e.eta, e.T,
                                               e.op_norms);

      double beta_next = beta;
      if (config.variant != Variant::LadmpsFixedBeta)
        beta_next = update_beta(beta, config.schedule, chk.update_residual);

      if (config.record_diagnostics) {
        IterationRecord rec{x_new, lambda_new, beta, beta_next,
                            chk.feasibility_residual, chk.update_residual,
                            problem.objective(x_new)};
        report.trace.push_back(std::move(rec));
      }
      const double w = 1.0 / beta;
      for (std::size_t i = 0; i < n; ++i) erg[i] += w * x_new[i];
      weight_sum += w;
      inv_betas.push_back(w);

      x = std::move(x_new);
      lambda = lambda_new;
      residual = residual_new;
      beta = beta_next;

      report.feasibility_residual = chk.feasibility_residual;
      report.update_residual = chk.update_residual;

      if (!all_finite(x) || !lambda.allFinite() || residual.norm() > guard) {
        status = SolveStatus::Diverged;
        ++iter;
        break;
      }
      if (chk.feasibility_ok && chk.update_ok) {
        status = SolveStatus::Converged;
        ++iter;
        break;
      }
    }
  } catch (const std::runtime_error&) {
    status = SolveStatus::NumericError;
  }

  report.status = status;
  report.iterations = iter;
  report.lambda = lambda;
  report.beta_final = beta;
  report.engine_x = x;
  if (config.record_diagnostics && weight_sum > 0.0) {
    report.ergodic_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) report.ergodic_x[i] = erg[i] / weight_sum;
    report.gamma.resize(inv_betas.size());
    for (std::size_t k = 0; k < inv_betas.size(); ++k)
      report.gamma[k] = inv_betas[k] / weight_sum;
  }

  // map engine blocks back to the original program; set-constrained blocks
  // return their projected auxiliary copy
  report.x.resize(original.n());
  for (std::size_t i = 0; i < original.n(); ++i) {
    const Index aux = aux_of_block.empty() ? -1 : aux_of_block[i];
    report.x[i] = (aux >= 0) ? x[static_cast<std::size_t>(aux)] : x[i];
  }
  return report;
}

}  // namespace

std::vector<double> auto_eta(const Problem& problem, Variant variant,
                             double margin, const std::vector<double>& op_norms) {
  const std::size_t n = problem.n();
  std::vector<double> eta(n);
  const auto floor = eta_floor_unlifted(n, variant, op_norms);
  for (std::size_t i = 0; i < n; ++i) eta[i] = margin * floor[i];
  return eta;
}

SolveReport solve(const Problem& problem, const SolverConfig& config) {
  problem.validate();
  const std::size_t n0 = problem.n();

  const bool wants_lift = config.variant == Variant::Practical ||
                          (config.variant == Variant::Proximal && problem.has_sets());
  if (config.variant == Variant::Practical && !problem.has_sets())
    throw std::invalid_argument("solver: practical variant requires set constraints");
  if (!wants_lift && problem.has_sets())
    throw std::invalid_argument(
        "solver: set constraints require the practical (or proximal) variant");

  Problem lifted_storage;
  std::vector<Index> aux_of_block;
  const Problem* engine_problem = &problem;

  std::vector<double> norms0 = map_norms(problem);
  std::vector<double> op_norms;
  std::vector<double> floor;

  if (wants_lift) {
    LiftedProblem lp = lift_with_sets(problem);
    lifted_storage = std::move(lp.problem);
    aux_of_block = std::move(lp.aux_of_block);
    engine_problem = &lifted_storage;
    op_norms = map_norms(lifted_storage);
    // refined bounds in terms of the original maps: n ||A_i||^2 + 2 for the
    // primaries, 2 for the auxiliary copies
    floor.resize(engine_problem->n());
    for (std::size_t i = 0; i < engine_problem->n(); ++i)
      floor[i] = (i < n0)
                     ? static_cast<double>(n0) * norms0[i] * norms0[i] + 2.0
                     : 2.0;
  } else {
    op_norms = norms0;
    floor = eta_floor_unlifted(n0, config.variant, op_norms);
  }
  const std::size_t n = engine_problem->n();

  std::vector<double> eta;
  if (config.eta) {
    eta = *config.eta;
  } else {
    eta.resize(n);
    for (std::size_t i = 0; i < n; ++i) eta[i] = config.eta_margin * floor[i];
  }

  std::vector<double> T(n, 0.0);
  if (config.variant == Variant::Proximal) {
    if (config.proximal_T) {
      T = *config.proximal_T;
    } else {
      for (std::size_t i = 0; i < n; ++i)
        T[i] = engine_problem->blocks[i].term.smooth_lipschitz();
    }
  }

  Engine engine{*engine_problem, config,        std::move(eta),
                std::move(T),    std::move(op_norms), std::move(floor)};
  validate_engine(engine);
  return run_engine(engine, problem, aux_of_block);
}

}  // namespace ladmpsap
