#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "ladmpsap/block.hpp"

namespace ladmpsap {

struct OpNormEstimate {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

namespace detail {
class MapImpl;
}

struct StackComponent;

/// Immutable linear mapping between blocks. Supports application, the
/// adjoint (defined by <apply(x), y> = <x, adjoint(y)>), and a power
/// iteration estimate of the operator norm. Instances share their
/// implementation, so copies are cheap and all operations are safe to call
/// concurrently.
class LinearMap {
 public:
  /// y = M x on single-column blocks.
  static LinearMap dense(Eigen::MatrixXd m);
  /// y = scale * x.
  static LinearMap identity(Shape shape, double scale = 1.0);
  /// Selects the entries of omega (in the given order) into a column.
  static LinearMap mask(Shape input, std::vector<std::pair<Index, Index>> omega);
  /// Z -> X Z, where Z has the given number of columns.
  static LinearMap left_multiply(Eigen::MatrixXd x, Index cols);
  /// L -> L X, where L has the given number of rows.
  static LinearMap right_multiply(Eigen::MatrixXd x, Index rows);
  /// y = -inner(x).
  static LinearMap negated(LinearMap inner);

  /// Concatenates component images into one column of total_rows entries;
  /// component outputs are flattened column-major at their row offsets.
  static LinearMap stacked(std::vector<StackComponent> components,
                           Index total_rows);

  Shape input_shape() const;
  Shape output_shape() const;

  Block apply(const Block& x) const;
  Block adjoint(const Block& y) const;

  /// Largest singular value estimated by power iteration on A'A. Starts
  /// from the normalized all-ones block and stops when the Rayleigh
  /// quotient changes by less than tol relatively.
  OpNormEstimate op_norm(double tol = 1e-9, int max_iter = 1000) const;

 private:
  explicit LinearMap(std::shared_ptr<const detail::MapImpl> impl)
      : impl_(std::move(impl)) {}
  std::shared_ptr<const detail::MapImpl> impl_;
};

struct StackComponent {
  LinearMap map;
  Index row_offset;  // into the flattened (single-column) codomain
};

}  // namespace ladmpsap
