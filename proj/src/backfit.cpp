#include "latadd/backfit.hpp"

#include <cmath>
#include <stdexcept>

namespace latadd {

namespace {

// Trapezoid node weights: spacing everywhere, halved at the two ends.
Eigen::VectorXd trapezoid_weights(const EvalGrid& grid) {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(grid.size(), grid.spacing());
  w(0) *= 0.5;
  w(grid.size() - 1) *= 0.5;
  return w;
}

void check_grids(const RegressionSample& sample, const std::vector<EvalGrid>& grids) {
  if (sample.size() == 0) throw std::invalid_argument("empty sample");
  if (static_cast<int>(grids.size()) != sample.dim())
    throw std::invalid_argument("need one evaluation grid per design component");
}

}  // namespace

void BackfitOptions::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
  if (max_cycles < 1) throw std::invalid_argument("max_cycles must be at least 1");
  if (grid_points < 2) throw std::invalid_argument("grid_points must be at least 2");
}

double ComponentFunction::interpolate(double x) const {
  const int n = grid.size();
  if (x <= grid.lower()) return values(0);
  if (x >= grid.upper()) return values(n - 1);
  double t = (x - grid.lower()) / grid.spacing();
  int i = static_cast<int>(std::floor(t));
  if (i > n - 2) i = n - 2;
  const double frac = t - static_cast<double>(i);
  return (1.0 - frac) * values(i) + frac * values(i + 1);
}

double grid_integrate(const Eigen::VectorXd& values, const EvalGrid& grid,
                      const Eigen::VectorXd& weight) {
  if (values.size() != grid.size() || weight.size() != grid.size())
    throw std::invalid_argument("grid_integrate: length mismatch");
  const Eigen::VectorXd tw = trapezoid_weights(grid);
  return (values.array() * weight.array() * tw.array()).sum();
}

double evaluate_fit(const AdditiveFit& fit, const Eigen::VectorXd& x) {
  return evaluate_fit_detailed(fit, x).value;
}

EvalDetail evaluate_fit_detailed(const AdditiveFit& fit, const Eigen::VectorXd& x) {
  if (x.size() != static_cast<Eigen::Index>(fit.components.size()))
    throw std::invalid_argument("evaluate_fit: point dimension mismatch");
  EvalDetail out;
  out.value = fit.m0;
  for (std::size_t j = 0; j < fit.components.size(); ++j) {
    const auto& c = fit.components[j];
    const double xj = x(static_cast<Eigen::Index>(j));
    if (xj < c.grid.lower() || xj > c.grid.upper()) out.clamped = true;
    out.value += c.interpolate(xj);
  }
  return out;
}

std::vector<EvalGrid> make_default_grids(const RegressionSample& sample, double trim,
                                         int n_points) {
  const RestrictedDomain domain = default_domain(sample, trim);
  std::vector<EvalGrid> grids;
  grids.reserve(static_cast<std::size_t>(domain.dim()));
  for (int j = 0; j < domain.dim(); ++j)
    grids.emplace_back(domain.interval(j).lo, domain.interval(j).hi, n_points);
  return grids;
}

SmoothBackfitter::SmoothBackfitter(const RegressionSample& sample, const Kernel& kernel,
                                   std::vector<EvalGrid> grids, BackfitOptions opts)
    : designs_(sample.designs),
      responses_(sample.responses),
      kernel_(kernel),
      opts_(std::move(opts)),
      grids_(std::move(grids)),
      d_(sample.dim()),
      n_(sample.size()),
      restricted_(false) {
  kernel_.validate();
  opts_.validate();
  check_grids(sample, grids_);

  points_.resize(static_cast<std::size_t>(d_));
  trapw_.resize(static_cast<std::size_t>(d_));
  kmat_.resize(static_cast<std::size_t>(d_));
  fdens_.resize(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    const auto& g = grids_[static_cast<std::size_t>(j)];
    points_[static_cast<std::size_t>(j)] = g.points();
    trapw_[static_cast<std::size_t>(j)] = trapezoid_weights(g);
    Eigen::MatrixXd k(g.size(), n_);
    for (int a = 0; a < g.size(); ++a)
      for (Eigen::Index l = 0; l < n_; ++l)
        k(a, l) = kh_value(kernel_, g.point(a) - designs_(l, j));
    kmat_[static_cast<std::size_t>(j)] = std::move(k);
    fdens_[static_cast<std::size_t>(j)] =
        kmat_[static_cast<std::size_t>(j)].rowwise().sum() / static_cast<double>(n_);
  }
  pair_.resize(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    pair_[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(d_));
    for (int l = j + 1; l < d_; ++l)
      pair_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] =
          (kmat_[static_cast<std::size_t>(j)] * kmat_[static_cast<std::size_t>(l)].transpose()) /
          static_cast<double>(n_);
  }
}

SmoothBackfitter::SmoothBackfitter(const RegressionSample& sample, const Kernel& kernel,
                                   const RestrictedDomain& domain, std::vector<EvalGrid> grids,
                                   BackfitOptions opts)
    : SmoothBackfitter(sample, kernel, std::move(grids), std::move(opts)) {
  if (domain.dim() != d_)
    throw std::invalid_argument("restricted domain dimension does not match the sample");
  restricted_ = true;

  mask_.resize(static_cast<std::size_t>(d_));
  in_count_.assign(static_cast<std::size_t>(d_), 0.0);
  for (int j = 0; j < d_; ++j) {
    Eigen::ArrayXd m(grids_[static_cast<std::size_t>(j)].size());
    for (int a = 0; a < m.size(); ++a)
      m(a) = domain.contains(j, points_[static_cast<std::size_t>(j)](a)) ? 1.0 : 0.0;
    mask_[static_cast<std::size_t>(j)] = std::move(m);
    double count = 0.0;
    for (Eigen::Index l = 0; l < n_; ++l)
      if (domain.contains(j, designs_(l, j))) count += 1.0;
    if (count == 0.0) throw std::runtime_error("empty restricted domain");
    in_count_[static_cast<std::size_t>(j)] = count;
  }

  pair_count_.assign(static_cast<std::size_t>(d_), std::vector<double>(static_cast<std::size_t>(d_), 0.0));
  for (int j = 0; j < d_; ++j) {
    for (int l = j + 1; l < d_; ++l) {
      double count = 0.0;
      for (Eigen::Index i = 0; i < n_; ++i)
        if (domain.contains_pair(j, l, designs_(i, j), designs_(i, l))) count += 1.0;
      if (count == 0.0) throw std::runtime_error("empty restricted domain");
      pair_count_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = count;
      pair_count_[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)] = count;
    }
  }

  // Restricted marginal density: kernel sum over everyone, normalized by
  // the in-domain count, zero off the domain.
  pdens_.resize(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j)
    pdens_[static_cast<std::size_t>(j)] =
        (fdens_[static_cast<std::size_t>(j)].array() * mask_[static_cast<std::size_t>(j)] *
         (static_cast<double>(n_) / in_count_[static_cast<std::size_t>(j)]))
            .matrix();

  // Rescale the pair tables to the restricted normalization and apply the
  // product-domain indicator in place.
  for (int j = 0; j < d_; ++j) {
    for (int l = j + 1; l < d_; ++l) {
      auto& p = pair_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
      p *= static_cast<double>(n_) / pair_count_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)];
      p = mask_[static_cast<std::size_t>(j)].matrix().asDiagonal() * p *
          mask_[static_cast<std::size_t>(l)].matrix().asDiagonal();
    }
  }

  // pair_marginal_[j][l](b) = int p_jl(u, x_b) du / int p_j(u) du, the
  // correction subtracted from p_jl/p_j inside the restricted cycle.
  pair_marginal_.resize(static_cast<std::size_t>(d_));
  for (int j = 0; j < d_; ++j) {
    pair_marginal_[static_cast<std::size_t>(j)].resize(static_cast<std::size_t>(d_));
    const double ip_j = (pdens_[static_cast<std::size_t>(j)].array() *
                         trapw_[static_cast<std::size_t>(j)].array())
                            .sum();
    for (int l = 0; l < d_; ++l) {
      if (l == j) continue;
      const Eigen::MatrixXd& p = (j < l)
                                     ? pair_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)]
                                     : pair_[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
      Eigen::VectorXd marg;
      if (j < l)
        marg = p.transpose() * trapw_[static_cast<std::size_t>(j)];
      else
        marg = p * trapw_[static_cast<std::size_t>(j)];
      pair_marginal_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] = marg / ip_j;
    }
  }
}

AdditiveFit SmoothBackfitter::fit() const { return run(responses_, -1); }

AdditiveFit SmoothBackfitter::fit(const Eigen::VectorXd& responses) const {
  if (responses.size() != n_) throw std::invalid_argument("response vector length mismatch");
  return run(responses, -1);
}

AdditiveFit SmoothBackfitter::fit_leave_out(Eigen::Index row) const {
  if (restricted_) throw std::logic_error("leave-one-out refit is only supported in plain mode");
  if (row < 0 || row >= n_) throw std::invalid_argument("leave-one-out row out of range");
  if (n_ < 2) throw std::invalid_argument("cannot leave out the only observation");
  return run(responses_, row);
}

AdditiveFit SmoothBackfitter::run(const Eigen::VectorXd& y, Eigen::Index exclude) const {
  const auto dd = static_cast<std::size_t>(d_);
  const double n_eff = static_cast<double>(exclude >= 0 ? n_ - 1 : n_);

  double ybar = y.sum();
  if (exclude >= 0) ybar -= y(exclude);
  ybar /= n_eff;

  // Effective (possibly leave-one-out downdated) marginal tables.
  std::vector<Eigen::VectorXd> f(dd), mhat(dd);
  std::vector<std::vector<Eigen::MatrixXd>> pair_loo;
  if (exclude >= 0) pair_loo.resize(dd, std::vector<Eigen::MatrixXd>(dd));
  for (int j = 0; j < d_; ++j) {
    const auto& k = kmat_[static_cast<std::size_t>(j)];
    Eigen::VectorXd r = k * y;
    Eigen::VectorXd fj = fdens_[static_cast<std::size_t>(j)] * static_cast<double>(n_);
    if (exclude >= 0) {
      r -= y(exclude) * k.col(exclude);
      fj -= k.col(exclude);
    }
    r /= n_eff;
    fj /= n_eff;
    Eigen::VectorXd m(fj.size());
    for (Eigen::Index a = 0; a < fj.size(); ++a) m(a) = fj(a) > 0.0 ? r(a) / fj(a) : 0.0;
    f[static_cast<std::size_t>(j)] = std::move(fj);
    mhat[static_cast<std::size_t>(j)] = std::move(m);
  }
  if (exclude >= 0) {
    for (int j = 0; j < d_; ++j)
      for (int l = j + 1; l < d_; ++l)
        pair_loo[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] =
            (static_cast<double>(n_) * pair_[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] -
             kmat_[static_cast<std::size_t>(j)].col(exclude) *
                 kmat_[static_cast<std::size_t>(l)].col(exclude).transpose()) /
            n_eff;
  }
  const auto& pair_tab = (exclude >= 0) ? pair_loo : pair_;
  auto pair_apply = [&](int j, int l, const Eigen::VectorXd& w) -> Eigen::VectorXd {
    if (j < l) return pair_tab[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] * w;
    return pair_tab[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)].transpose() * w;
  };

  // Per-component live nodes, centering weights and centering constants.
  std::vector<Eigen::ArrayXd> live(dd);
  std::vector<Eigen::VectorXd> centerw(dd);
  std::vector<double> center0(dd, ybar);
  for (int j = 0; j < d_; ++j) {
    const auto& fj = f[static_cast<std::size_t>(j)];
    Eigen::ArrayXd lv = (fj.array() > 0.0).cast<double>();
    if (restricted_) {
      lv *= mask_[static_cast<std::size_t>(j)];
      // Restricted regression estimate: plain ratio masked to the domain.
      mhat[static_cast<std::size_t>(j)] =
          (mhat[static_cast<std::size_t>(j)].array() * mask_[static_cast<std::size_t>(j)]).matrix();
      centerw[static_cast<std::size_t>(j)] =
          (pdens_[static_cast<std::size_t>(j)].array() * trapw_[static_cast<std::size_t>(j)].array())
              .matrix();
      const double ip = centerw[static_cast<std::size_t>(j)].sum();
      center0[static_cast<std::size_t>(j)] =
          mhat[static_cast<std::size_t>(j)].dot(centerw[static_cast<std::size_t>(j)]) / ip;
    } else {
      centerw[static_cast<std::size_t>(j)] =
          (fj.array() * trapw_[static_cast<std::size_t>(j)].array()).matrix();
    }
    live[static_cast<std::size_t>(j)] = std::move(lv);
  }

  // Initial components.
  std::vector<Eigen::VectorXd> comp(dd);
  for (int j = 0; j < d_; ++j) {
    const int g = grids_[static_cast<std::size_t>(j)].size();
    if (opts_.initial_components) {
      const auto& init = *opts_.initial_components;
      if (static_cast<int>(init.size()) != d_ || init[static_cast<std::size_t>(j)].size() != g)
        throw std::invalid_argument("initial components do not match the grids");
      comp[static_cast<std::size_t>(j)] =
          (init[static_cast<std::size_t>(j)].array() * live[static_cast<std::size_t>(j)]).matrix();
    } else {
      comp[static_cast<std::size_t>(j)] = Eigen::VectorXd::Zero(g);
    }
  }

  const double lag_sign = (restricted_ && opts_.restricted_lag_sign == LagSign::as_printed) ? 1.0 : -1.0;

  AdditiveFit result;
  result.m0 = ybar;
  result.bandwidth = kernel_.bandwidth;
  result.mode = restricted_ ? FitMode::restricted : FitMode::plain;
  result.converged = false;

  int cycles = 0;
  double delta = 0.0;
  for (int cycle = 0; cycle < opts_.max_cycles; ++cycle) {
    delta = 0.0;
    for (int j = 0; j < d_; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      Eigen::VectorXd value = mhat[sj];
      value.array() -= center0[sj];
      for (int l = 0; l < d_; ++l) {
        if (l == j) continue;
        const auto sl = static_cast<std::size_t>(l);
        const Eigen::VectorXd wml =
            (trapw_[sl].array() * comp[sl].array()).matrix();
        Eigen::VectorXd t = pair_apply(j, l, wml);
        const Eigen::VectorXd& denom = restricted_ ? pdens_[sj] : f[sj];
        for (Eigen::Index a = 0; a < t.size(); ++a)
          t(a) = denom(a) > 0.0 ? t(a) / denom(a) : 0.0;
        if (restricted_) t.array() -= pair_marginal_[sj][sl].dot(wml);
        value -= (l < j ? 1.0 : -lag_sign) * t;
      }
      value = (value.array() * live[sj]).matrix();
      // Immediate re-centering keeps every component in the constraint
      // set, so the cycle's fixed point solves the constrained problem.
      const double wsum = centerw[sj].sum();
      if (wsum > 0.0) {
        const double c = value.dot(centerw[sj]) / wsum;
        value.array() -= c * live[sj];
      }
      const double dj = ((value - comp[sj]).array() * live[sj]).abs().maxCoeff();
      delta = std::max(delta, dj);
      comp[sj] = std::move(value);
    }
    ++cycles;
    result.cycle_deltas.push_back(delta);
    if (delta <= opts_.tolerance) {
      result.converged = true;
      break;
    }
  }
  result.iterations = cycles;
  result.final_delta = delta;
  result.components.reserve(dd);
  for (int j = 0; j < d_; ++j)
    result.components.push_back(
        ComponentFunction{grids_[static_cast<std::size_t>(j)], comp[static_cast<std::size_t>(j)]});
  return result;
}

AdditiveFit backfit(const RegressionSample& sample, const Kernel& kernel,
                    const std::vector<EvalGrid>& grids, const BackfitOptions& opts) {
  return SmoothBackfitter(sample, kernel, grids, opts).fit();
}

AdditiveFit backfit_restricted(const RegressionSample& sample, const Kernel& kernel,
                               const RestrictedDomain& domain, const std::vector<EvalGrid>& grids,
                               const BackfitOptions& opts) {
  return SmoothBackfitter(sample, kernel, domain, grids, opts).fit();
}

AdditiveFit direct_additive_oracle(const RegressionSample& sample, const Kernel& kernel,
                                   const std::vector<EvalGrid>& grids) {
  kernel.validate();
  check_grids(sample, grids);
  const int d = sample.dim();
  if (d > 3) throw std::invalid_argument("direct_additive_oracle supports at most three components");
  const auto n = static_cast<double>(sample.size());
  const double ybar = sample.responses.mean();

  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(d)), tw(static_cast<std::size_t>(d)),
      f(static_cast<std::size_t>(d)), mh(static_cast<std::size_t>(d));
  std::vector<int> offset(static_cast<std::size_t>(d), 0);
  int total = 0;
  for (int j = 0; j < d; ++j) {
    const auto& g = grids[static_cast<std::size_t>(j)];
    offset[static_cast<std::size_t>(j)] = total;
    total += g.size();
    pts[static_cast<std::size_t>(j)] = g.points();
    tw[static_cast<std::size_t>(j)] = trapezoid_weights(g);
    Eigen::VectorXd fj(g.size()), rj(g.size());
    for (int a = 0; a < g.size(); ++a) {
      fj(a) = density_1d(sample, j, kernel, g.point(a));
      double r = 0.0;
      for (Eigen::Index l = 0; l < sample.size(); ++l)
        r += sample.responses(l) * kh_value(kernel, g.point(a) - sample.designs(l, j));
      rj(a) = r / n;
    }
    Eigen::VectorXd m(g.size());
    for (int a = 0; a < g.size(); ++a) m(a) = fj(a) > 0.0 ? rj(a) / fj(a) : 0.0;
    f[static_cast<std::size_t>(j)] = std::move(fj);
    mh[static_cast<std::size_t>(j)] = std::move(m);
  }

  // Constrained normal equations [H C^T; C 0][v; lambda] = [g; 0], with
  // each stationarity row divided by its density weight so that all rows
  // are of unit scale: v_j(a) + sum_l int v_l f_jl/f_j + lambda_j =
  // mhat_j(a) - ybar. Row scaling leaves the solution unchanged.
  const int dim = total + d;
  Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(dim);
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    for (int a = 0; a < grids[sj].size(); ++a) {
      const int row = offset[sj] + a;
      if (f[sj](a) == 0.0) {
        kkt(row, row) = 1.0;  // dead node, pinned to zero
        continue;
      }
      kkt(row, row) = 1.0;
      rhs(row) = mh[sj](a) - ybar;
      kkt(row, total + j) = 1.0;
      kkt(total + j, row) = f[sj](a) * tw[sj](a);
      for (int l = 0; l < d; ++l) {
        if (l == j) continue;
        const auto slz = static_cast<std::size_t>(l);
        for (int b = 0; b < grids[slz].size(); ++b) {
          const double fab = density_2d(sample, j, l, kernel, pts[sj](a), pts[slz](b));
          kkt(row, offset[slz] + b) += fab / f[sj](a) * tw[slz](b);
        }
      }
    }
  }
  const Eigen::VectorXd sol = Eigen::FullPivLU<Eigen::MatrixXd>(kkt).solve(rhs);

  AdditiveFit fit;
  fit.m0 = ybar;
  fit.bandwidth = kernel.bandwidth;
  fit.mode = FitMode::plain;
  fit.converged = true;
  fit.iterations = 0;
  fit.final_delta = 0.0;
  for (int j = 0; j < d; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    fit.components.push_back(ComponentFunction{
        grids[sj], sol.segment(offset[sj], grids[sj].size())});
  }
  return fit;
}

}  // namespace latadd
