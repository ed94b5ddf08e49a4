#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace ladmpsap {

/// One variable group. Vectors are stored as single-column matrices.
using Block = Eigen::MatrixXd;
using Index = Eigen::Index;

struct Shape {
  Index rows = 0;
  Index cols = 0;

  bool operator==(const Shape&) const = default;
  Index size() const { return rows * cols; }
};

inline Shape shape_of(const Block& b) { return {b.rows(), b.cols()}; }

inline std::string to_string(const Shape& s) {
  return std::to_string(s.rows) + "x" + std::to_string(s.cols);
}

inline bool is_finite(const Block& b) { return b.allFinite(); }

/// Column-major flattening of a block into a single column.
inline Eigen::VectorXd vectorize(const Block& b) {
  return Eigen::Map<const Eigen::VectorXd>(b.data(), b.size());
}

inline Block unvectorize(const Eigen::VectorXd& v, Shape s) {
  if (v.size() != s.size())
    throw std::invalid_argument("unvectorize: size mismatch");
  return Eigen::Map<const Block>(v.data(), s.rows, s.cols);
}

}  // namespace ladmpsap
