#include "ladmpsap/prox.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace ladmpsap {

namespace {

double soft(double x, double eps) {
  if (x > eps) return x - eps;
  if (x < -eps) return x + eps;
  return 0.0;
}

// log(1 + exp(t)) without overflow
double log1pexp(double t) {
  if (t > 0.0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

}  // namespace

Block prox_l1(const Block& w, double eps) {
  if (eps < 0.0) throw std::invalid_argument("prox_l1: eps must be >= 0");
  if (eps == 0.0) return w;
  return w.unaryExpr([eps](double x) { return soft(x, eps); });
}

Block prox_nuclear(const Block& w, double eps) {
  if (eps < 0.0) throw std::invalid_argument("prox_nuclear: eps must be >= 0");
  if (eps == 0.0) return w;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success)
    throw std::runtime_error("prox_nuclear: SVD failed on a " +
                             to_string(shape_of(w)) + " block");
  Eigen::VectorXd s = svd.singularValues();
  for (Index i = 0; i < s.size(); ++i) s(i) = std::max(s(i) - eps, 0.0);
  return svd.matrixU() * s.asDiagonal() * svd.matrixV().transpose();
}

Block prox_sq_frobenius(const Block& w, double mu, double sigma) {
  if (mu <= 0.0 || sigma <= 0.0)
    throw std::invalid_argument("prox_sq_frobenius: mu and sigma must be positive");
  return w * ((mu * sigma) / (mu * sigma + 1.0));
}

Block prox_group_l2(const Block& w, double eps,
                    const std::vector<Index>& group_sizes) {
  if (eps < 0.0) throw std::invalid_argument("prox_group_l2: eps must be >= 0");
  if (w.cols() != 1)
    throw std::invalid_argument("prox_group_l2: expected a column vector");
  Index total = 0;
  for (Index sz : group_sizes) {
    if (sz <= 0) throw std::invalid_argument("prox_group_l2: bad group size");
    total += sz;
  }
  if (total != w.rows())
    throw std::invalid_argument("prox_group_l2: group sizes do not cover w");
  if (eps == 0.0) return w;

  Block out = w;
  Index at = 0;
  for (Index sz : group_sizes) {
    auto seg = out.col(0).segment(at, sz);
    const double n = seg.norm();
    if (n <= eps)
      seg.setZero();
    else
      seg *= 1.0 - eps / n;
    at += sz;
  }
  return out;
}

Block project_nonneg(const Block& w) { return w.cwiseMax(0.0); }

std::pair<double, Block> logistic_value_grad(const Block& wbar,
                                             const Block& xbar,
                                             const Block& y) {
  const Index s = xbar.cols();
  if (s < 1) throw std::invalid_argument("logistic: need at least one sample");
  if (y.cols() != 1 || y.rows() != s)
    throw std::invalid_argument("logistic: y must have one entry per sample");
  if (wbar.cols() != 1 || wbar.rows() != xbar.rows())
    throw std::invalid_argument("logistic: wbar does not match sample dimension");
  for (Index i = 0; i < s; ++i)
    if (y(i, 0) != 1.0 && y(i, 0) != -1.0)
      throw std::invalid_argument("logistic: labels must be +1 or -1");

  const Eigen::VectorXd margins = xbar.transpose() * wbar.col(0);
  double value = 0.0;
  Eigen::VectorXd coeff(s);
  for (Index i = 0; i < s; ++i) {
    const double t = -y(i, 0) * margins(i);
    value += log1pexp(t);
    // sigmoid(t) = d/dm log(1+exp(-y m)) up to the -y factor
    coeff(i) = -y(i, 0) / (1.0 + std::exp(-t));
  }
  value /= static_cast<double>(s);
  Block grad = (xbar * coeff) / static_cast<double>(s);
  return {value, grad};
}

double logistic_lipschitz_bound(const Block& xbar) {
  const Index s = xbar.cols();
  if (s < 1) throw std::invalid_argument("logistic: need at least one sample");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(xbar);
  const double smax = svd.singularValues()(0);
  return smax * smax / (4.0 * static_cast<double>(s));
}

}  // namespace ladmpsap
