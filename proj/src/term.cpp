#include "ladmpsap/term.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ladmpsap/prox.hpp"

namespace ladmpsap {

ConvexSet ConvexSet::nonneg_cone() {
  return ConvexSet("nonneg", [](const Block& w) { return project_nonneg(w); });
}

bool ConvexSet::contains(const Block& w, double tol) const {
  return (project_(w) - w).norm() <= tol;
}

Term Term::zero() {
  Term t;
  t.kind_ = Kind::Zero;
  t.prox_value_ = [](const Block&) { return 0.0; };
  t.prox_ = [](const Block& w, double) { return w; };
  return t;
}

Term Term::l1(double weight) {
  if (weight < 0.0) throw std::invalid_argument("l1 term: negative weight");
  Term t;
  t.kind_ = Kind::L1;
  t.weight_ = weight;
  t.prox_value_ = [weight](const Block& x) {
    return weight * x.cwiseAbs().sum();
  };
  t.prox_ = [weight](const Block& w, double sigma) {
    return prox_l1(w, weight / sigma);
  };
  return t;
}

Term Term::nuclear(double weight) {
  if (weight < 0.0) throw std::invalid_argument("nuclear term: negative weight");
  Term t;
  t.kind_ = Kind::Nuclear;
  t.weight_ = weight;
  t.prox_value_ = [weight](const Block& x) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(x);
    return weight * svd.singularValues().sum();
  };
  t.prox_ = [weight](const Block& w, double sigma) {
    return prox_nuclear(w, weight / sigma);
  };
  return t;
}

Term Term::sq_frobenius(double mu) {
  if (mu <= 0.0) throw std::invalid_argument("sq_frobenius term: mu must be positive");
  Term t;
  t.kind_ = Kind::SqFrobenius;
  t.weight_ = mu;
  t.prox_value_ = [mu](const Block& x) { return x.squaredNorm() / (2.0 * mu); };
  t.prox_ = [mu](const Block& w, double sigma) {
    return prox_sq_frobenius(w, mu, sigma);
  };
  return t;
}

Term Term::group_l2(double weight, std::vector<Index> group_sizes) {
  if (weight < 0.0) throw std::invalid_argument("group term: negative weight");
  Term t;
  t.kind_ = Kind::GroupL2;
  t.weight_ = weight;
  t.group_sizes_ = std::move(group_sizes);
  const auto sizes = t.group_sizes_;
  t.prox_value_ = [weight, sizes](const Block& x) {
    double v = 0.0;
    Index at = 0;
    for (Index sz : sizes) {
      v += x.col(0).segment(at, sz).norm();
      at += sz;
    }
    return weight * v;
  };
  t.prox_ = [weight, sizes](const Block& w, double sigma) {
    return prox_group_l2(w, weight / sigma, sizes);
  };
  return t;
}

Term Term::quadratic(Block center, double scale) {
  if (scale <= 0.0) throw std::invalid_argument("quadratic term: scale must be positive");
  Term t;
  t.kind_ = Kind::Quadratic;
  t.quadratic_ = QuadraticData{center, scale};
  t.prox_value_ = [center, scale](const Block& x) {
    return 0.5 * scale * (x - center).squaredNorm();
  };
  // stationarity: scale (p - c) + sigma (p - w) = 0
  t.prox_ = [center, scale](const Block& w, double sigma) {
    return (sigma * w + scale * center) / (scale + sigma);
  };
  return t;
}

Term Term::indicator(ConvexSet set) {
  Term t;
  t.kind_ = Kind::Indicator;
  t.set_ = set;
  t.prox_value_ = [set](const Block& x) {
    // tolerate roundoff at the boundary
    const double tol = 1e-12 * (1.0 + x.norm());
    return set.contains(x, tol) ? 0.0
                                : std::numeric_limits<double>::infinity();
  };
  t.prox_ = [set](const Block& w, double) { return set.project(w); };
  return t;
}

Term Term::logistic(Block xbar, Block y) {
  const double lip = logistic_lipschitz_bound(xbar);
  Term t;
  t.kind_ = Kind::Smooth;
  t.lipschitz_ = lip;
  t.smooth_value_ = [xbar, y](const Block& w) {
    return logistic_value_grad(w, xbar, y).first;
  };
  t.smooth_grad_ = [xbar, y](const Block& w) {
    return logistic_value_grad(w, xbar, y).second;
  };
  return t;
}

Term Term::smooth(std::function<double(const Block&)> value,
                  std::function<Block(const Block&)> grad, double lipschitz) {
  if (lipschitz < 0.0) throw std::invalid_argument("smooth term: negative Lipschitz bound");
  Term t;
  t.kind_ = Kind::Smooth;
  t.smooth_value_ = std::move(value);
  t.smooth_grad_ = std::move(grad);
  t.lipschitz_ = lipschitz;
  return t;
}

Term Term::composite(Term smooth_part, Term prox_part) {
  if (!smooth_part.has_smooth() || smooth_part.has_prox())
    throw std::invalid_argument("composite term: first argument must be smooth only");
  if (!prox_part.has_prox() || prox_part.has_smooth())
    throw std::invalid_argument("composite term: second argument must be prox only");
  Term t = prox_part;
  t.kind_ = Kind::Composite;
  t.smooth_value_ = smooth_part.smooth_value_;
  t.smooth_grad_ = smooth_part.smooth_grad_;
  t.lipschitz_ = smooth_part.lipschitz_;
  return t;
}

double Term::value(const Block& x) const {
  double v = 0.0;
  if (prox_value_) v += prox_value_(x);
  if (smooth_value_) v += smooth_value_(x);
  return v;
}

double Term::prox_value(const Block& x) const {
  return prox_value_ ? prox_value_(x) : 0.0;
}

Block Term::prox(const Block& w, double sigma) const {
  if (!prox_) throw std::logic_error("term has no prox-capable part");
  if (sigma <= 0.0) throw std::invalid_argument("prox: sigma must be positive");
  return prox_(w, sigma);
}

double Term::smooth_value(const Block& x) const {
  return smooth_value_ ? smooth_value_(x) : 0.0;
}

Block Term::smooth_grad(const Block& x) const {
  if (!smooth_grad_) throw std::logic_error("term has no smooth part");
  return smooth_grad_(x);
}

}  // namespace ladmpsap
