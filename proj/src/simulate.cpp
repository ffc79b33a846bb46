#include "latadd/simulate.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "latadd/rng.hpp"

namespace latadd {

namespace {

void check_dims(int n_rows, int n_cols) {
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("field dimensions must be positive");
}

void check_autonormal(const AutoNormalParams& p) {
  if (!(p.cond_var > 0.0)) throw std::invalid_argument("conditional variance must be positive");
  if (!(std::fabs(p.theta1) + std::fabs(p.theta2) < 0.5))
    throw std::invalid_argument("auto-normal parameters must satisfy |theta1| + |theta2| < 1/2");
}

}  // namespace

LatticeField simulate_unilateral(const UnilateralModel& model, int n_rows, int n_cols,
                                 std::uint64_t seed) {
  check_dims(n_rows, n_cols);
  if (model.burn_in < 0) throw std::invalid_argument("burn-in margin must be non-negative");
  if (!(model.noise_sd >= 0.0)) throw std::invalid_argument("noise sd must be non-negative");
  const int rows = n_rows + model.burn_in;
  const int cols = n_cols + model.burn_in;
  Rng rng(seed);
  Eigen::MatrixXd y(rows, cols);
  for (int u = 0; u < rows; ++u) {
    for (int v = 0; v < cols; ++v) {
      const double e = model.noise_sd * rng.normal();
      if (u == 0 || v == 0)
        y(u, v) = e;
      else
        y(u, v) = model.g1(y(u - 1, v)) + model.g2(y(u, v - 1)) + e;
    }
  }
  return LatticeField(y.block(model.burn_in, model.burn_in, n_rows, n_cols));
}

struct AutoNormalSampler::Impl {
  AutoNormalParams params;
  int rows = 0, cols = 0;
  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt;
};

AutoNormalSampler::AutoNormalSampler(const AutoNormalParams& params, int n_rows, int n_cols)
    : impl_(new Impl) {
  check_dims(n_rows, n_cols);
  check_autonormal(params);
  impl_->params = params;
  impl_->rows = n_rows;
  impl_->cols = n_cols;

  const int n = n_rows * n_cols;
  auto idx = [n_cols](int u, int v) { return u * n_cols + v; };
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(5 * n));
  const double scale = 1.0 / params.cond_var;
  for (int u = 0; u < n_rows; ++u) {
    for (int v = 0; v < n_cols; ++v) {
      const int s = idx(u, v);
      trip.emplace_back(s, s, scale);
      if (u > 0) trip.emplace_back(s, idx(u - 1, v), -params.theta1 * scale);
      if (u + 1 < n_rows) trip.emplace_back(s, idx(u + 1, v), -params.theta1 * scale);
      if (v > 0) trip.emplace_back(s, idx(u, v - 1), -params.theta2 * scale);
      if (v + 1 < n_cols) trip.emplace_back(s, idx(u, v + 1), -params.theta2 * scale);
    }
  }
  Eigen::SparseMatrix<double> precision(n, n);
  precision.setFromTriplets(trip.begin(), trip.end());
  impl_->llt.compute(precision);
  if (impl_->llt.info() != Eigen::Success)
    throw std::runtime_error("auto-normal precision factorization failed");
}

AutoNormalSampler::~AutoNormalSampler() = default;
AutoNormalSampler::AutoNormalSampler(AutoNormalSampler&&) noexcept = default;
AutoNormalSampler& AutoNormalSampler::operator=(AutoNormalSampler&&) noexcept = default;

LatticeField AutoNormalSampler::draw(std::uint64_t seed) const {
  const int n = impl_->rows * impl_->cols;
  Rng rng(seed);
  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z(i) = rng.normal();
  // x = P^T U^{-1} z has covariance equal to the inverse precision.
  const Eigen::VectorXd w = impl_->llt.matrixU().solve(z);
  const Eigen::VectorXd x = impl_->llt.permutationPinv() * w;
  Eigen::MatrixXd field(impl_->rows, impl_->cols);
  for (int u = 0; u < impl_->rows; ++u)
    for (int v = 0; v < impl_->cols; ++v)
      field(u, v) = impl_->params.alpha + x(u * impl_->cols + v);
  return LatticeField(std::move(field));
}

namespace {

LatticeField simulate_autonormal_gibbs(const AutoNormalParams& p, int n_rows, int n_cols,
                                       std::uint64_t seed, int burnin_sweeps) {
  if (burnin_sweeps < 1) throw std::invalid_argument("gibbs burn-in must be positive");
  Rng rng(seed);
  const double sd = std::sqrt(p.cond_var);
  Eigen::MatrixXd y = Eigen::MatrixXd::Constant(n_rows, n_cols, p.alpha);
  for (int sweep = 0; sweep < burnin_sweeps; ++sweep) {
    for (int u = 0; u < n_rows; ++u) {
      for (int v = 0; v < n_cols; ++v) {
        double m = 0.0;
        if (u > 0) m += p.theta1 * (y(u - 1, v) - p.alpha);
        if (u + 1 < n_rows) m += p.theta1 * (y(u + 1, v) - p.alpha);
        if (v > 0) m += p.theta2 * (y(u, v - 1) - p.alpha);
        if (v + 1 < n_cols) m += p.theta2 * (y(u, v + 1) - p.alpha);
        y(u, v) = p.alpha + m + sd * rng.normal();
      }
    }
  }
  return LatticeField(std::move(y));
}

}  // namespace

LatticeField simulate_autonormal(const AutoNormalParams& params, int n_rows, int n_cols,
                                 std::uint64_t seed, AutoNormalMethod method, int gibbs_burnin) {
  check_dims(n_rows, n_cols);
  check_autonormal(params);
  if (method == AutoNormalMethod::gibbs)
    return simulate_autonormal_gibbs(params, n_rows, n_cols, seed, gibbs_burnin);
  return AutoNormalSampler(params, n_rows, n_cols).draw(seed);
}

AutoNormalParams coding_fit(const LatticeField& field, bool with_intercept, CodingCombine combine) {
  const CodingPartition part = checkerboard_coding(field);
  const double alpha = with_intercept ? field.values().mean() : 0.0;

  struct CodeFit {
    double theta1 = 0.0, theta2 = 0.0, ssr = 0.0;
    std::size_t n = 0;
  };
  // Normal equations accumulated per code; `stacked` pools both codes
  // into one regression instead of averaging the two estimates.
  auto accumulate = [&](const std::vector<std::pair<int, int>>& sites, double& s11, double& s12,
                        double& s22, double& s1y, double& s2y) {
    for (const auto& [u, v] : sites) {
      const double x1 = field(u - 1, v) + field(u + 1, v) - 2.0 * alpha;
      const double x2 = field(u, v - 1) + field(u, v + 1) - 2.0 * alpha;
      const double y = field(u, v) - alpha;
      s11 += x1 * x1;
      s12 += x1 * x2;
      s22 += x2 * x2;
      s1y += x1 * y;
      s2y += x2 * y;
    }
  };
  auto solve2 = [](double s11, double s12, double s22, double s1y, double s2y, double scale)
      -> std::pair<double, double> {
    const double det = s11 * s22 - s12 * s12;
    if (!(det > 1e-12 * scale)) throw std::runtime_error("degenerate coding regression");
    return {(s22 * s1y - s12 * s2y) / det, (s11 * s2y - s12 * s1y) / det};
  };
  auto ssr_of = [&](const std::vector<std::pair<int, int>>& sites, double t1, double t2) {
    double ssr = 0.0;
    for (const auto& [u, v] : sites) {
      const double x1 = field(u - 1, v) + field(u + 1, v) - 2.0 * alpha;
      const double x2 = field(u, v - 1) + field(u, v + 1) - 2.0 * alpha;
      const double r = (field(u, v) - alpha) - t1 * x1 - t2 * x2;
      ssr += r * r;
    }
    return ssr;
  };

  AutoNormalParams out;
  out.alpha = alpha;
  const std::size_t n_total = part.code_a.size() + part.code_b.size();
  if (combine == CodingCombine::stacked) {
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    accumulate(part.code_a, s11, s12, s22, s1y, s2y);
    accumulate(part.code_b, s11, s12, s22, s1y, s2y);
    const double scale = std::max(1.0, s11 * s22);
    auto [t1, t2] = solve2(s11, s12, s22, s1y, s2y, scale);
    out.theta1 = t1;
    out.theta2 = t2;
    const double ssr = ssr_of(part.code_a, t1, t2) + ssr_of(part.code_b, t1, t2);
    out.cond_var = ssr / static_cast<double>(n_total > 2 ? n_total - 2 : 1);
    return out;
  }

  CodeFit fits[2];
  const std::vector<std::pair<int, int>>* codes[2] = {&part.code_a, &part.code_b};
  for (int c = 0; c < 2; ++c) {
    double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
    accumulate(*codes[c], s11, s12, s22, s1y, s2y);
    const double scale = std::max(1.0, s11 * s22);
    auto [t1, t2] = solve2(s11, s12, s22, s1y, s2y, scale);
    fits[c] = {t1, t2, ssr_of(*codes[c], t1, t2), codes[c]->size()};
  }
  out.theta1 = 0.5 * (fits[0].theta1 + fits[1].theta1);
  out.theta2 = 0.5 * (fits[0].theta2 + fits[1].theta2);
  const double ssr = fits[0].ssr + fits[1].ssr;
  out.cond_var = ssr / static_cast<double>(n_total > 4 ? n_total - 4 : 1);
  return out;
}

}  // namespace latadd
