#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ladmpsap/block.hpp"

namespace ladmpsap {

/// Closed convex set defined by its (exact) Euclidean projection.
class ConvexSet {
 public:
  ConvexSet(std::string name, std::function<Block(const Block&)> project)
      : name_(std::move(name)), project_(std::move(project)) {}

  static ConvexSet nonneg_cone();

  const std::string& name() const { return name_; }
  Block project(const Block& w) const { return project_(w); }
  bool contains(const Block& w, double tol = 0.0) const;

 private:
  std::string name_;
  std::function<Block(const Block&)> project_;
};

/// One objective component f_i. It is either prox-capable (h with a closed
/// form proximal operation), smooth (g with gradient and a Lipschitz bound
/// on it), or a sum of both. Immutable once built.
class Term {
 public:
  enum class Kind {
    Zero,
    L1,
    Nuclear,
    SqFrobenius,
    GroupL2,
    Quadratic,
    Indicator,
    Smooth,
    Composite,
  };

  static Term zero();
  /// weight * ||x||_1
  static Term l1(double weight);
  /// weight * ||x||_*
  static Term nuclear(double weight);
  /// (1/(2 mu)) ||x||^2, prox-capable
  static Term sq_frobenius(double mu);
  /// weight * sum_j ||x_j|| over consecutive groups
  static Term group_l2(double weight, std::vector<Index> group_sizes);
  /// (scale/2) ||x - center||^2, prox-capable; carries its data for oracles
  static Term quadratic(Block center, double scale);
  /// characteristic function of the set; prox is the projection
  static Term indicator(ConvexSet set);
  /// mean logistic loss over samples (columns of xbar), smooth only
  static Term logistic(Block xbar, Block y);
  /// general smooth term
  static Term smooth(std::function<double(const Block&)> value,
                     std::function<Block(const Block&)> grad,
                     double lipschitz);
  /// g + h with g the smooth part and h the prox-capable part
  static Term composite(Term smooth_part, Term prox_part);

  Kind kind() const { return kind_; }
  bool has_prox() const { return static_cast<bool>(prox_); }
  bool has_smooth() const { return static_cast<bool>(smooth_grad_); }

  /// f(x) = g(x) + h(x). Indicator terms contribute +inf outside the set.
  double value(const Block& x) const;
  /// h(x) alone.
  double prox_value(const Block& x) const;
  /// argmin_p h(p) + (sigma/2) ||p - w||^2.
  Block prox(const Block& w, double sigma) const;

  double smooth_value(const Block& x) const;
  Block smooth_grad(const Block& x) const;
  /// Lipschitz bound on the smooth gradient; 0 when there is no smooth part.
  double smooth_lipschitz() const { return lipschitz_; }

  struct QuadraticData {
    Block center;
    double scale;
  };
  /// Set for quadratic terms; lets the KKT oracle read the closed form.
  const std::optional<QuadraticData>& quadratic_data() const {
    return quadratic_;
  }
  /// Weight of the prox-capable norm (l1 / nuclear / group) where defined.
  double weight() const { return weight_; }
  const std::vector<Index>& group_sizes() const { return group_sizes_; }
  const std::optional<ConvexSet>& set() const { return set_; }

 private:
  Term() = default;

  Kind kind_ = Kind::Zero;
  std::function<double(const Block&)> prox_value_;
  std::function<Block(const Block&, double)> prox_;
  std::function<double(const Block&)> smooth_value_;
  std::function<Block(const Block&)> smooth_grad_;
  double lipschitz_ = 0.0;
  double weight_ = 0.0;
  std::vector<Index> group_sizes_;
  std::optional<QuadraticData> quadratic_;
  std::optional<ConvexSet> set_;
};

}  // namespace ladmpsap
