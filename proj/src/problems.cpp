#include "ladmpsap/problems.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <set>
#include <stdexcept>

#include "ladmpsap/rng.hpp"

namespace ladmpsap::problems {

Problem build_latent_lrr(const Block& X, double mu) {
  if (X.norm() == 0.0)
    throw std::invalid_argument("build_latent_lrr: data matrix is zero");
  const Index d = X.rows();
  const Index sp = X.cols();

  Problem p;
  p.rhs = X;
  p.blocks.push_back({Term::nuclear(1.0), LinearMap::left_multiply(X, sp),
                      Block::Zero(sp, sp), std::nullopt});
  p.blocks.push_back({Term::nuclear(1.0), LinearMap::right_multiply(X, d),
                      Block::Zero(d, d), std::nullopt});
  p.blocks.push_back({Term::l1(mu), LinearMap::identity({d, sp}),
                      Block::Zero(d, sp), std::nullopt});
  return p;
}

Problem build_nmc(const Block& b_obs,
                  const std::vector<std::pair<Index, Index>>& omega,
                  Shape shape, double mu) {
  if (omega.empty()) throw std::invalid_argument("build_nmc: empty sample set");
  if (b_obs.cols() != 1 ||
      b_obs.rows() != static_cast<Index>(omega.size()))
    throw std::invalid_argument("build_nmc: one observation per omega entry required");
  for (const auto& [r, c] : omega)
    if (r < 0 || r >= shape.rows || c < 0 || c >= shape.cols)
      throw std::invalid_argument("build_nmc: omega index out of range");

  const Index t = static_cast<Index>(omega.size());
  Problem p;
  p.rhs = b_obs;
  p.blocks.push_back({Term::nuclear(1.0), LinearMap::mask(shape, omega),
                      Block::Zero(shape.rows, shape.cols),
                      ConvexSet::nonneg_cone()});
  p.blocks.push_back({Term::sq_frobenius(mu), LinearMap::identity({t, 1}),
                      Block::Zero(t, 1), std::nullopt});
  return p;
}

Problem build_group_logistic(const Block& X, const Block& y,
                             const std::vector<std::vector<Index>>& groups,
                             double mu) {
  const Index pdim = X.rows();
  const Index s = X.cols();
  if (groups.empty()) throw std::invalid_argument("build_group_logistic: no groups");

  Index total = 0;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("build_group_logistic: empty group");
    for (Index idx : g)
      if (idx < 0 || idx >= pdim)
        throw std::invalid_argument("build_group_logistic: group index out of range");
    total += static_cast<Index>(g.size());
  }

  // xbar appends the bias coordinate to every sample
  Block xbar(pdim + 1, s);
  xbar.topRows(pdim) = X;
  xbar.bottomRows(1).setOnes();

  // Sbar = (S, 0): one 1 per row, bias column never selected
  Eigen::MatrixXd sbar = Eigen::MatrixXd::Zero(total, pdim + 1);
  std::vector<Index> sizes;
  Index row = 0;
  for (const auto& g : groups) {
    for (Index idx : g) sbar(row++, idx) = 1.0;
    sizes.push_back(static_cast<Index>(g.size()));
  }

  Problem p;
  p.rhs = Block::Zero(total, 1);
  p.blocks.push_back({Term::logistic(xbar, y), LinearMap::dense(sbar),
                      Block::Zero(pdim + 1, 1), std::nullopt});
  p.blocks.push_back({Term::group_l2(mu, sizes),
                      LinearMap::negated(LinearMap::identity({total, 1})),
                      Block::Zero(total, 1), std::nullopt});
  return p;
}

Problem build_parallel_bp(int n, Index m, Index d, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("build_parallel_bp: need at least two blocks");
  Rng rng(seed);
  Problem p;
  for (int i = 0; i < n; ++i)
    p.blocks.push_back({Term::l1(1.0), LinearMap::dense(rng.gaussian_matrix(m, d)),
                        Block::Zero(d, 1), std::nullopt});
  p.rhs = rng.gaussian_matrix(m, 1);
  return p;
}

Block gen_latent_lrr_data(const LatentLrrSpec& spec) {
  if (spec.subspaces < 1 || spec.points < 1 || spec.ambient_dim < 1 ||
      spec.intrinsic_dim < 1 || spec.intrinsic_dim > spec.ambient_dim)
    throw std::invalid_argument("gen_latent_lrr_data: bad spec");
  Rng rng(spec.seed);
  Block X(spec.ambient_dim, static_cast<Index>(spec.subspaces) * spec.points);
  Index col = 0;
  for (int k = 0; k < spec.subspaces; ++k) {
    const Block g = rng.gaussian_matrix(spec.ambient_dim, spec.intrinsic_dim);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    const Eigen::MatrixXd basis =
        qr.householderQ() * Eigen::MatrixXd::Identity(spec.ambient_dim, spec.intrinsic_dim);
    const Block coeff = rng.gaussian_matrix(spec.intrinsic_dim, spec.points);
    X.middleCols(col, spec.points) = basis * coeff;
    col += spec.points;
  }
  return X;
}

NmcData gen_nmc_data(const NmcSpec& spec) {
  if (spec.rank < 1 || spec.rank > std::min(spec.rows, spec.cols))
    throw std::invalid_argument("gen_nmc_data: bad rank");
  if (!(spec.sample_ratio > 0.0 && spec.sample_ratio <= 1.0))
    throw std::invalid_argument("gen_nmc_data: sample ratio must be in (0, 1]");
  Rng rng(spec.seed);

  // entrywise-nonnegative factors keep the truth nonnegative with rank
  // exactly r, so the rank-r truncation is the matrix itself and the
  // nonnegativity clamp is a no-op
  const Block u = rng.gaussian_matrix(spec.rows, spec.rank).cwiseAbs();
  const Block v = rng.gaussian_matrix(spec.cols, spec.rank).cwiseAbs();
  NmcData data;
  data.truth = (u * v.transpose()).cwiseMax(0.0);

  const Index total = spec.rows * spec.cols;
  const Index t = static_cast<Index>(
      std::llround(spec.sample_ratio * static_cast<double>(total)));

  // deterministic sample of t distinct entries (partial Fisher-Yates over
  // column-major positions)
  std::vector<Index> positions(total);
  for (Index i = 0; i < total; ++i) positions[i] = i;
  for (Index i = 0; i < t; ++i) {
    const Index j = i + static_cast<Index>(rng.below(total - i));
    std::swap(positions[i], positions[j]);
  }
  data.omega.reserve(t);
  data.b_obs.resize(t, 1);
  for (Index k = 0; k < t; ++k) {
    const Index r = positions[k] % spec.rows;
    const Index c = positions[k] / spec.rows;
    data.omega.push_back({r, c});
    double v_obs = data.truth(r, c);
    if (spec.noise_std > 0.0) v_obs += spec.noise_std * rng.normal();
    data.b_obs(k, 0) = v_obs;
  }
  return data;
}

std::vector<std::vector<Index>> chain_groups(int t) {
  std::vector<std::vector<Index>> groups(t);
  for (int j = 0; j < t; ++j) {
    groups[j].resize(10);
    for (int k = 0; k < 10; ++k) groups[j][k] = 9 * j + k;
  }
  return groups;
}

GroupLogisticData gen_group_logistic_data(const GroupLogisticSpec& spec) {
  if (spec.groups < 1 || spec.samples < 1 || spec.active_groups < 1 ||
      spec.active_groups > spec.groups)
    throw std::invalid_argument("gen_group_logistic_data: bad spec");
  Rng rng(spec.seed);
  const int t = spec.groups;
  const Index p = 9 * static_cast<Index>(t) + 1;
  const auto groups = chain_groups(t);

  // choose q active groups
  std::vector<int> order(t);
  for (int j = 0; j < t; ++j) order[j] = j;
  for (int j = 0; j < spec.active_groups; ++j) {
    const int k = j + static_cast<int>(rng.below(t - j));
    std::swap(order[j], order[k]);
  }
  std::set<int> chosen(order.begin(), order.begin() + spec.active_groups);

  std::set<Index> raw;
  for (int j : chosen)
    for (Index idx : groups[j]) raw.insert(idx);
  // variables shared with an unchosen group are removed from the support
  std::set<Index> support = raw;
  for (int j = 0; j < t; ++j) {
    if (chosen.count(j)) continue;
    for (Index idx : groups[j]) support.erase(idx);
  }

  GroupLogisticData data;
  data.support.assign(support.begin(), support.end());
  data.y.resize(spec.samples, 1);
  for (int i = 0; i < spec.samples; ++i) data.y(i, 0) = (i % 2 == 0) ? 1.0 : -1.0;

  data.X.resize(p, spec.samples);
  for (Index j = 0; j < spec.samples; ++j) {
    for (Index i = 0; i < p; ++i) {
      if (support.count(i))
        data.X(i, j) = data.y(j, 0) > 0 ? rng.uniform(0.5, 1.5)
                                        : rng.uniform(-1.5, -0.5);
      else
        data.X(i, j) = rng.uniform(-0.5, 0.5);
    }
  }
  return data;
}

double fa_metric(const Block& x_hat, const Block& truth) {
  if (shape_of(x_hat) != shape_of(truth))
    throw std::invalid_argument("fa_metric: shape mismatch");
  const double denom = std::max(truth.norm(), 1.0);
  return x_hat.cwiseMin(0.0).norm() / denom;
}

}  // namespace ladmpsap::problems
