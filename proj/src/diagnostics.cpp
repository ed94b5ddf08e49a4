#include "ladmpsap/diagnostics.hpp"

#include <stdexcept>

namespace ladmpsap {

ErgodicAverage ergodic_average(const std::vector<std::vector<Block>>& iterates,
                               const std::vector<double>& betas) {
  if (iterates.empty())
    throw std::invalid_argument("ergodic_average: empty trace");
  if (betas.size() != iterates.size())
    throw std::invalid_argument("ergodic_average: one beta per iterate required");

  double sum = 0.0;
  for (double b : betas) {
    if (b <= 0.0) throw std::invalid_argument("ergodic_average: beta must be positive");
    sum += 1.0 / b;
  }

  ErgodicAverage out;
  out.gamma.resize(betas.size());
  for (std::size_t k = 0; k < betas.size(); ++k)
    out.gamma[k] = (1.0 / betas[k]) / sum;

  const std::size_t n = iterates.front().size();
  out.x.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.x[i] = Block::Zero(iterates.front()[i].rows(), iterates.front()[i].cols());
    for (std::size_t k = 0; k < iterates.size(); ++k)
      out.x[i] += out.gamma[k] * iterates[k][i];
  }
  return out;
}

double optimality_measure(const std::vector<Block>& x_tilde,
                          const ReferencePoint& reference,
                          const Problem& problem, double alpha) {
  if (x_tilde.size() != problem.n() || reference.x.size() != problem.n())
    throw std::invalid_argument("optimality_measure: block count mismatch");
  double v = problem.objective(x_tilde) - problem.objective(reference.x);
  for (std::size_t i = 0; i < problem.n(); ++i) {
    const Block a = problem.blocks[i].map.adjoint(reference.lambda);
    v += (a.array() * (x_tilde[i] - reference.x[i]).array()).sum();
  }
  v += alpha * problem.constraint_residual(x_tilde).squaredNorm();
  return v;
}

double theorem_alpha(const std::vector<double>& op_norms,
                     const std::vector<double>& eta) {
  if (op_norms.size() != eta.size() || eta.empty())
    throw std::invalid_argument("theorem_alpha: mismatched inputs");
  const double n = static_cast<double>(eta.size());
  double worst = 1.0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    const double s2 = op_norms[i] * op_norms[i];
    const double gap = eta[i] - n * s2;
    if (gap <= 0.0)
      throw std::invalid_argument("theorem_alpha: eta bound violated");
    worst = std::max(worst, s2 / gap);
  }
  return 1.0 / ((n + 1.0) * worst);
}

std::vector<double> fejer_diagnostic(const std::vector<IterationRecord>& trace,
                                     const ReferencePoint& reference,
                                     const std::vector<double>& eta) {
  std::vector<std::vector<double>> weights(trace.size(), eta);
  return fejer_diagnostic_weighted(trace, reference, weights);
}

std::vector<double> fejer_diagnostic_weighted(
    const std::vector<IterationRecord>& trace, const ReferencePoint& reference,
    const std::vector<std::vector<double>>& weights) {
  if (trace.empty()) throw std::invalid_argument("fejer_diagnostic: empty trace");
  if (weights.size() != trace.size())
    throw std::invalid_argument("fejer_diagnostic: one weight row per record");
  std::vector<double> out;
  out.reserve(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    const auto& rec = trace[k];
    if (rec.x.size() != reference.x.size() ||
        weights[k].size() != reference.x.size())
      throw std::invalid_argument("fejer_diagnostic: block count mismatch");
    double v = 0.0;
    for (std::size_t i = 0; i < rec.x.size(); ++i)
      v += weights[k][i] * (rec.x[i] - reference.x[i]).squaredNorm();
    const double b = rec.beta_next;
    v += (rec.lambda - reference.lambda).squaredNorm() / (b * b);
    out.push_back(v);
  }
  return out;
}

}  // namespace ladmpsap
