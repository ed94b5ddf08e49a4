#include "ladmpsap/oracle.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ladmpsap::oracle {

Eigen::MatrixXd materialize(const LinearMap& map) {
  const Shape in = map.input_shape();
  const Shape out = map.output_shape();
  Eigen::MatrixXd m(out.size(), in.size());
  Block basis = Block::Zero(in.rows, in.cols);
  for (Index j = 0; j < in.size(); ++j) {
    basis(j % in.rows, j / in.rows) = 1.0;
    m.col(j) = vectorize(map.apply(basis));
    basis(j % in.rows, j / in.rows) = 0.0;
  }
  return m;
}

KktReference eq_qp_solve(const Problem& problem) {
  problem.validate();
  const std::size_t n = problem.n();

  std::vector<Eigen::MatrixXd> mats(n);
  std::vector<double> scales(n);
  std::vector<Block> centers(n);
  Index xdim = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& q = problem.blocks[i].term.quadratic_data();
    if (!q)
      throw std::invalid_argument("eq_qp_solve: block " + std::to_string(i) +
                                  " is not a quadratic term");
    mats[i] = materialize(problem.blocks[i].map);
    scales[i] = q->scale;
    centers[i] = q->center;
    xdim += problem.blocks[i].map.input_shape().size();
  }
  const Index m = problem.rhs.size();

  // [ S  A' ] [x]   [S c]
  // [ A  0  ] [l] = [ b ]
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(xdim + m, xdim + m);
  Eigen::VectorXd rhs(xdim + m);
  Index at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Index di = mats[i].cols();
    kkt.block(at, at, di, di) =
        scales[i] * Eigen::MatrixXd::Identity(di, di);
    kkt.block(at, xdim, di, m) = mats[i].transpose();
    kkt.block(xdim, at, m, di) = mats[i];
    rhs.segment(at, di) = scales[i] * vectorize(centers[i]);
    at += di;
  }
  rhs.segment(xdim, m) = vectorize(problem.rhs);

  Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
  if (!lu.isInvertible())
    throw std::runtime_error("eq_qp_solve: KKT system is rank deficient");
  const Eigen::VectorXd sol = lu.solve(rhs);

  KktReference ref;
  ref.source = KktReference::Source::ClosedForm;
  ref.x.resize(n);
  at = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Shape s = problem.blocks[i].map.input_shape();
    ref.x[i] = unvectorize(sol.segment(at, s.size()), s);
    at += s.size();
  }
  ref.lambda = unvectorize(sol.segment(xdim, m), shape_of(problem.rhs));

  ref.feasibility_residual = problem.constraint_residual(ref.x).norm();
  double stat = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Block g = scales[i] * (ref.x[i] - centers[i]) +
                    problem.blocks[i].map.adjoint(ref.lambda);
    stat = std::max(stat, g.norm());
  }
  ref.stationarity_residual = stat;
  return ref;
}

namespace {

// coordinate scan for separable h: one pass of exact per-coordinate
// minimization on a regular grid
Block coordinate_grid(const Term& term, double sigma, const Block& w,
                      double step) {
  Block x = w;
  for (Index j = 0; j < w.cols(); ++j) {
    for (Index i = 0; i < w.rows(); ++i) {
      const double wi = w(i, j);
      const double lo = std::min(wi, 0.0) - 1.0;
      const double hi = std::max(wi, 0.0) + 1.0;
      double best_t = wi;
      double best_v = std::numeric_limits<double>::infinity();
      for (double t = lo; t <= hi + step * 0.5; t += step) {
        x(i, j) = t;
        const double v =
            term.prox_value(x) + 0.5 * sigma * (t - wi) * (t - wi);
        if (v < best_v) {
          best_v = v;
          best_t = t;
        }
      }
      x(i, j) = best_t;
    }
  }
  return x;
}

// the group minimizer lies on the segment [0, w_g]; scan its scaling
Block radial_group_grid(const Term& term, double sigma, const Block& w,
                        double step) {
  Block x = w;
  Index at = 0;
  for (Index sz : term.group_sizes()) {
    auto wg = w.col(0).segment(at, sz);
    const double n = wg.norm();
    double best_t = 1.0;
    double best_v = std::numeric_limits<double>::infinity();
    const double tstep = n > 0.0 ? step / n : 1.0;
    for (double t = 0.0; t <= 1.0 + tstep * 0.5; t += tstep) {
      x.col(0).segment(at, sz) = t * wg;
      const double v = term.weight() * t * n +
                       0.5 * sigma * (1.0 - t) * (1.0 - t) * n * n;
      if (v < best_v) {
        best_v = v;
        best_t = t;
      }
    }
    x.col(0).segment(at, sz) = best_t * wg;
    at += sz;
  }
  return x;
}

}  // namespace

Block prox_grid_oracle(const Term& term, double sigma, const Block& w,
                       double step) {
  if (sigma <= 0.0 || step <= 0.0)
    throw std::invalid_argument("prox_grid_oracle: sigma and step must be positive");
  switch (term.kind()) {
    case Term::Kind::Zero:
    case Term::Kind::L1:
    case Term::Kind::SqFrobenius:
    case Term::Kind::Quadratic:
      if (w.size() > 64)
        throw std::invalid_argument("prox_grid_oracle: input too large for a scan");
      return coordinate_grid(term, sigma, w, step);
    case Term::Kind::GroupL2:
      return radial_group_grid(term, sigma, w, step);
    default:
      throw std::invalid_argument("prox_grid_oracle: unsupported term kind");
  }
}

KktReference long_run_reference(const Problem& problem, SolverConfig config) {
  // slow schedule, long run; eps2 keeps its caller value so the penalty
  // growth test behaves as in the original run
  config.schedule.rho0 = 1.01;
  config.max_iter = 2000;
  config.eps1 = 1e-8;
  config.record_diagnostics = false;

  const SolveReport report = solve(problem, config);
  if (report.status == SolveStatus::Diverged ||
      report.status == SolveStatus::NumericError)
    throw std::runtime_error("long_run_reference: run failed with status " +
                             to_string(report.status));

  KktReference ref;
  ref.source = KktReference::Source::LongRun;
  ref.x = report.engine_x;
  ref.lambda = report.lambda;
  ref.feasibility_residual = report.feasibility_residual;
  return ref;
}

}  // namespace ladmpsap::oracle
