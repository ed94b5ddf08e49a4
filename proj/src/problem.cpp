#include "ladmpsap/problem.hpp"

#include <stdexcept>
#include <string>

namespace ladmpsap {

bool Problem::has_sets() const {
  for (const auto& b : blocks)
    if (b.set) return true;
  return false;
}

Block Problem::constraint_residual(const std::vector<Block>& x) const {
  Block r = -rhs;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    r += blocks[i].map.apply(x[i]);
  return r;
}

double Problem::objective(const std::vector<Block>& x) const {
  double v = 0.0;
  for (std::size_t i = 0; i < blocks.size(); ++i)
    v += blocks[i].term.value(x[i]);
  return v;
}

void Problem::validate() const {
  if (blocks.empty())
    throw std::invalid_argument("problem: needs at least one block");
  if (rhs.size() == 0) throw std::invalid_argument("problem: empty rhs");
  if (!is_finite(rhs))
    throw std::invalid_argument("problem: rhs has non-finite entries");
  const Shape out = shape_of(rhs);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const auto& b = blocks[i];
    const std::string tag = "problem block " + std::to_string(i);
    if (b.map.output_shape() != out)
      throw std::invalid_argument(tag + ": map codomain " +
                                  to_string(b.map.output_shape()) +
                                  " does not match rhs " + to_string(out));
    if (shape_of(b.x0) != b.map.input_shape())
      throw std::invalid_argument(tag + ": x0 shape " + to_string(shape_of(b.x0)) +
                                  " does not match map domain " +
                                  to_string(b.map.input_shape()));
    if (!is_finite(b.x0))
      throw std::invalid_argument(tag + ": x0 has non-finite entries");
  }
}

LiftedProblem lift_with_sets(const Problem& problem) {
  problem.validate();
  if (!problem.has_sets())
    throw std::invalid_argument("lift_with_sets: no block carries a convex set");

  const Index n = static_cast<Index>(problem.n());
  const Index m0 = problem.rhs.size();

  // one extra constraint row span per set-carrying block
  std::vector<Index> row_offset(n, -1);
  Index total = m0;
  for (Index i = 0; i < n; ++i) {
    if (!problem.blocks[i].set) continue;
    row_offset[i] = total;
    total += problem.blocks[i].map.input_shape().size();
  }

  LiftedProblem out;
  out.aux_of_block.assign(n, -1);
  Problem& lifted = out.problem;

  Block bhat = Block::Zero(total, 1);
  bhat.col(0).head(m0) = vectorize(problem.rhs);
  lifted.rhs = bhat;

  for (Index i = 0; i < n; ++i) {
    const auto& b = problem.blocks[i];
    std::vector<StackComponent> comps;
    comps.push_back({b.map, 0});
    if (b.set)
      comps.push_back({LinearMap::identity(b.map.input_shape()), row_offset[i]});
    lifted.blocks.push_back(
        {b.term, LinearMap::stacked(std::move(comps), total), b.x0, std::nullopt});
  }
  for (Index i = 0; i < n; ++i) {
    const auto& b = problem.blocks[i];
    if (!b.set) continue;
    out.aux_of_block[i] = static_cast<Index>(lifted.blocks.size());
    std::vector<StackComponent> comps;
    comps.push_back({LinearMap::negated(LinearMap::identity(b.map.input_shape())),
                     row_offset[i]});
    lifted.blocks.push_back({Term::indicator(*b.set),
                             LinearMap::stacked(std::move(comps), total),
                             b.x0,  // x_{n+i}^0 = x_i^0
                             std::nullopt});
  }
  return out;
}

}  // namespace ladmpsap
