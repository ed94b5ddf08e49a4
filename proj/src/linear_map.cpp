#include "ladmpsap/linear_map.hpp"

#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace ladmpsap {

namespace detail {

class MapImpl {
 public:
  virtual ~MapImpl() = default;
  virtual Shape input_shape() const = 0;
  virtual Shape output_shape() const = 0;
  virtual Block apply(const Block& x) const = 0;
  virtual Block adjoint(const Block& y) const = 0;
};

namespace {

void check_shape(const Block& b, Shape want, const char* what) {
  if (shape_of(b) != want)
    throw std::invalid_argument(std::string(what) + ": expected " +
                                to_string(want) + ", got " +
                                to_string(shape_of(b)));
}

class DenseImpl final : public MapImpl {
 public:
  explicit DenseImpl(Eigen::MatrixXd m) : m_(std::move(m)) {
    if (m_.size() == 0) throw std::invalid_argument("dense map: empty matrix");
  }
  Shape input_shape() const override { return {m_.cols(), 1}; }
  Shape output_shape() const override { return {m_.rows(), 1}; }
  Block apply(const Block& x) const override {
    check_shape(x, input_shape(), "dense apply");
    return m_ * x;
  }
  Block adjoint(const Block& y) const override {
    check_shape(y, output_shape(), "dense adjoint");
    return m_.transpose() * y;
  }

 private:
  Eigen::MatrixXd m_;
};

class IdentityImpl final : public MapImpl {
 public:
  IdentityImpl(Shape shape, double scale) : shape_(shape), scale_(scale) {
    if (shape.size() <= 0) throw std::invalid_argument("identity map: empty shape");
  }
  Shape input_shape() const override { return shape_; }
  Shape output_shape() const override { return shape_; }
  Block apply(const Block& x) const override {
    check_shape(x, shape_, "identity apply");
    return scale_ * x;
  }
  Block adjoint(const Block& y) const override {
    check_shape(y, shape_, "identity adjoint");
    return scale_ * y;
  }

 private:
  Shape shape_;
  double scale_;
};

class MaskImpl final : public MapImpl {
 public:
  MaskImpl(Shape input, std::vector<std::pair<Index, Index>> omega)
      : input_(input), omega_(std::move(omega)) {
    if (omega_.empty()) throw std::invalid_argument("mask map: empty index set");
    std::set<std::pair<Index, Index>> seen;
    for (const auto& [r, c] : omega_) {
      if (r < 0 || r >= input_.rows || c < 0 || c >= input_.cols)
        throw std::invalid_argument("mask map: index out of range");
      if (!seen.insert({r, c}).second)
        throw std::invalid_argument("mask map: duplicate index");
    }
  }
  Shape input_shape() const override { return input_; }
  Shape output_shape() const override {
    return {static_cast<Index>(omega_.size()), 1};
  }
  Block apply(const Block& x) const override {
    check_shape(x, input_, "mask apply");
    Block out(static_cast<Index>(omega_.size()), 1);
    for (Index k = 0; k < out.rows(); ++k)
      out(k, 0) = x(omega_[k].first, omega_[k].second);
    return out;
  }
  Block adjoint(const Block& y) const override {
    check_shape(y, output_shape(), "mask adjoint");
    Block out = Block::Zero(input_.rows, input_.cols);
    for (Index k = 0; k < y.rows(); ++k)
      out(omega_[k].first, omega_[k].second) = y(k, 0);
    return out;
  }

 private:
  Shape input_;
  std::vector<std::pair<Index, Index>> omega_;
};

class LeftMulImpl final : public MapImpl {
 public:
  LeftMulImpl(Eigen::MatrixXd x, Index cols) : x_(std::move(x)), cols_(cols) {
    if (cols_ <= 0) throw std::invalid_argument("left multiply: bad column count");
  }
  Shape input_shape() const override { return {x_.cols(), cols_}; }
  Shape output_shape() const override { return {x_.rows(), cols_}; }
  Block apply(const Block& z) const override {
    check_shape(z, input_shape(), "left multiply apply");
    return x_ * z;
  }
  Block adjoint(const Block& y) const override {
    check_shape(y, output_shape(), "left multiply adjoint");
    return x_.transpose() * y;
  }

 private:
  Eigen::MatrixXd x_;
  Index cols_;
};

class RightMulImpl final : public MapImpl {
 public:
  RightMulImpl(Eigen::MatrixXd x, Index rows) : x_(std::move(x)), rows_(rows) {
    if (rows_ <= 0) throw std::invalid_argument("right multiply: bad row count");
  }
  Shape input_shape() const override { return {rows_, x_.rows()}; }
  Shape output_shape() const override { return {rows_, x_.cols()}; }
  Block apply(const Block& l) const override {
    check_shape(l, input_shape(), "right multiply apply");
    return l * x_;
  }
  Block adjoint(const Block& y) const override {
    check_shape(y, output_shape(), "right multiply adjoint");
    return y * x_.transpose();
  }

 private:
  Eigen::MatrixXd x_;
  Index rows_;
};

class NegatedImpl final : public MapImpl {
 public:
  explicit NegatedImpl(std::shared_ptr<const MapImpl> inner)
      : inner_(std::move(inner)) {}
  Shape input_shape() const override { return inner_->input_shape(); }
  Shape output_shape() const override { return inner_->output_shape(); }
  Block apply(const Block& x) const override { return -inner_->apply(x); }
  Block adjoint(const Block& y) const override { return -inner_->adjoint(y); }

 private:
  std::shared_ptr<const MapImpl> inner_;
};

class StackedImpl final : public MapImpl {
 public:
  struct Comp {
    std::shared_ptr<const MapImpl> map;
    Index row_offset;
  };

  StackedImpl(std::vector<Comp> comps, Index total_rows)
      : comps_(std::move(comps)), total_rows_(total_rows) {
    if (comps_.empty()) throw std::invalid_argument("stacked map: no components");
    if (total_rows_ <= 0) throw std::invalid_argument("stacked map: bad height");
    input_ = comps_.front().map->input_shape();
    for (const auto& c : comps_) {
      if (c.map->input_shape() != input_)
        throw std::invalid_argument("stacked map: component input shapes differ");
      const Index sz = c.map->output_shape().size();
      if (c.row_offset < 0 || c.row_offset + sz > total_rows_)
        throw std::invalid_argument("stacked map: component exceeds codomain");
    }
  }
  Shape input_shape() const override { return input_; }
  Shape output_shape() const override { return {total_rows_, 1}; }
  Block apply(const Block& x) const override {
    check_shape(x, input_, "stacked apply");
    Block out = Block::Zero(total_rows_, 1);
    for (const auto& c : comps_) {
      const Block img = c.map->apply(x);
      out.col(0).segment(c.row_offset, img.size()) += vectorize(img);
    }
    return out;
  }
  Block adjoint(const Block& y) const override {
    check_shape(y, output_shape(), "stacked adjoint");
    Block out = Block::Zero(input_.rows, input_.cols);
    for (const auto& c : comps_) {
      const Shape os = c.map->output_shape();
      const Eigen::VectorXd seg = y.col(0).segment(c.row_offset, os.size());
      out += c.map->adjoint(unvectorize(seg, os));
    }
    return out;
  }

 private:
  std::vector<Comp> comps_;
  Index total_rows_;
  Shape input_;
};

}  // namespace
}  // namespace detail

LinearMap LinearMap::dense(Eigen::MatrixXd m) {
  return LinearMap(std::make_shared<detail::DenseImpl>(std::move(m)));
}

LinearMap LinearMap::identity(Shape shape, double scale) {
  return LinearMap(std::make_shared<detail::IdentityImpl>(shape, scale));
}

LinearMap LinearMap::mask(Shape input,
                          std::vector<std::pair<Index, Index>> omega) {
  return LinearMap(std::make_shared<detail::MaskImpl>(input, std::move(omega)));
}

LinearMap LinearMap::left_multiply(Eigen::MatrixXd x, Index cols) {
  return LinearMap(std::make_shared<detail::LeftMulImpl>(std::move(x), cols));
}

LinearMap LinearMap::right_multiply(Eigen::MatrixXd x, Index rows) {
  return LinearMap(std::make_shared<detail::RightMulImpl>(std::move(x), rows));
}

LinearMap LinearMap::negated(LinearMap inner) {
  return LinearMap(std::make_shared<detail::NegatedImpl>(std::move(inner.impl_)));
}

LinearMap LinearMap::stacked(std::vector<StackComponent> components,
                             Index total_rows) {
  std::vector<detail::StackedImpl::Comp> comps;
  comps.reserve(components.size());
  for (auto& c : components)
    comps.push_back({std::move(c.map.impl_), c.row_offset});
  return LinearMap(
      std::make_shared<detail::StackedImpl>(std::move(comps), total_rows));
}

Shape LinearMap::input_shape() const { return impl_->input_shape(); }
Shape LinearMap::output_shape() const { return impl_->output_shape(); }
Block LinearMap::apply(const Block& x) const { return impl_->apply(x); }
Block LinearMap::adjoint(const Block& y) const { return impl_->adjoint(y); }

OpNormEstimate LinearMap::op_norm(double tol, int max_iter) const {
  if (tol <= 0.0) throw std::invalid_argument("op_norm: tol must be positive");
  const Shape in = input_shape();

  Block v = Block::Ones(in.rows, in.cols);
  v /= v.norm();

  double sigma2 = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    const Block u = impl_->apply(v);
    const double s2 = u.squaredNorm();  // Rayleigh quotient of A'A at unit v
    if (s2 == 0.0) {
      // v landed in the null space; restart from a fixed pseudo-random
      // direction so the deterministic all-ones start is not a blind spot
      std::mt19937_64 eng(0x9e3779b97f4a7c15ULL + static_cast<unsigned>(it));
      for (Index j = 0; j < v.cols(); ++j)
        for (Index i = 0; i < v.rows(); ++i)
          v(i, j) = static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5;
      const double nv = v.norm();
      if (nv == 0.0) return {0.0, true, it};
      v /= nv;
      const Block u2 = impl_->apply(v);
      if (u2.squaredNorm() == 0.0) return {0.0, true, it};
      continue;
    }
    const double change = std::abs(s2 - sigma2);
    sigma2 = s2;
    if (change <= tol * std::max(s2, 1e-300))
      return {std::sqrt(sigma2), true, it};
    Block w = impl_->adjoint(u);
    const double nw = w.norm();
    if (nw == 0.0) return {std::sqrt(sigma2), true, it};
    v = w / nw;
  }
  return {std::sqrt(sigma2), false, max_iter};
}

}  // namespace ladmpsap
