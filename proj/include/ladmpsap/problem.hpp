#pragma once

#include <optional>
#include <vector>

#include "ladmpsap/block.hpp"
#include "ladmpsap/linear_map.hpp"
#include "ladmpsap/term.hpp"

namespace ladmpsap {

struct ProblemBlock {
  Term term;
  LinearMap map;
  Block x0;
  std::optional<ConvexSet> set;
};

/// min sum_i f_i(x_i)  s.t.  sum_i A_i(x_i) = b, optionally x_i in X_i.
///
/// All maps must share the codomain of b. The mapping x -> sum_i A_i(x_i)
/// is assumed onto (full row rank); this is a documented precondition of
/// the solver theory and is not checked at runtime.
struct Problem {
  std::vector<ProblemBlock> blocks;
  Block rhs;

  std::size_t n() const { return blocks.size(); }
  bool has_sets() const;

  /// sum_i A_i(x_i) - b for iterates x.
  Block constraint_residual(const std::vector<Block>& x) const;
  /// sum_i f_i(x_i).
  double objective(const std::vector<Block>& x) const;

  /// Shape and finiteness checks; throws std::invalid_argument on failure.
  void validate() const;
};

struct LiftedProblem {
  Problem problem;                    // the equivalent lifted program
  std::vector<Index> aux_of_block;    // original block -> lifted aux index, -1 if none
};

/// Rewrites set constraints x_i in X_i as auxiliary equality constraints:
/// every block's map is stacked into row 0 of the new codomain, blocks with
/// sets additionally place an identity into their own row and gain a
/// partner block carrying the characteristic term of X_i with a negated
/// identity into that row. The new right hand side is (b; 0; ...; 0).
LiftedProblem lift_with_sets(const Problem& problem);

}  // namespace ladmpsap
