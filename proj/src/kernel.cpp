#include "latadd/kernel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "latadd/stats.hpp"

namespace latadd {

namespace {
constexpr double inv_sqrt_2pi = 0.39894228040143267794;

void check_component(const RegressionSample& sample, int j) {
  if (sample.size() == 0) throw std::invalid_argument("empty sample");
  if (j < 0 || j >= sample.dim()) throw std::invalid_argument("component index out of range");
}
}  // namespace

KernelFamily parse_kernel_family(const std::string& name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "epanechnikov") return KernelFamily::epanechnikov;
  throw std::invalid_argument("unknown kernel family: " + name);
}

std::string to_string(KernelFamily family) {
  return family == KernelFamily::gaussian ? "gaussian" : "epanechnikov";
}

void Kernel::validate() const {
  if (!(bandwidth > 0.0)) throw std::invalid_argument("bandwidth must be positive");
}

double kernel_value(const Kernel& kernel, double t) {
  switch (kernel.family) {
    case KernelFamily::gaussian:
      return inv_sqrt_2pi * std::exp(-0.5 * t * t);
    case KernelFamily::epanechnikov:
      return (t <= 1.0 && t >= -1.0) ? 0.75 * (1.0 - t * t) : 0.0;
  }
  return 0.0;
}

double kh_value(const Kernel& kernel, double t) {
  kernel.validate();
  return kernel_value(kernel, t / kernel.bandwidth) / kernel.bandwidth;
}

EvalGrid::EvalGrid(double lower, double upper, int n_points)
    : lower_(lower), upper_(upper), n_points_(n_points) {
  if (!(lower < upper)) throw std::invalid_argument("grid needs lower < upper");
  if (n_points < 2) throw std::invalid_argument("grid needs at least two points");
  if (!std::isfinite(lower) || !std::isfinite(upper))
    throw std::invalid_argument("grid bounds must be finite");
}

Eigen::VectorXd EvalGrid::points() const {
  Eigen::VectorXd p(n_points_);
  for (int i = 0; i < n_points_; ++i) p(i) = point(i);
  return p;
}

RestrictedDomain::RestrictedDomain(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.empty()) throw std::invalid_argument("restricted domain needs at least one interval");
  for (const auto& iv : intervals_)
    if (!(iv.lo < iv.hi)) throw std::invalid_argument("restricted interval needs lo < hi");
}

const Interval& RestrictedDomain::interval(int j) const {
  if (j < 0 || j >= dim()) throw std::invalid_argument("component index out of range");
  return intervals_[static_cast<std::size_t>(j)];
}

RestrictedDomain default_domain(const RegressionSample& sample, double trim) {
  if (sample.size() == 0) throw std::invalid_argument("empty sample");
  if (trim < 0.0 || trim >= 0.5) throw std::invalid_argument("trim must lie in [0, 0.5)");
  std::vector<Interval> intervals;
  for (int j = 0; j < sample.dim(); ++j) {
    std::vector<double> column(sample.designs.col(j).data(),
                               sample.designs.col(j).data() + sample.size());
    const double lo = quantile_type7(column, trim);
    const double hi = quantile_type7(column, 1.0 - trim);
    if (!(lo < hi))
      throw std::runtime_error("degenerate design column " + std::to_string(j) +
                               " (constant values)");
    intervals.push_back({lo, hi});
  }
  return RestrictedDomain(std::move(intervals));
}

double density_1d(const RegressionSample& sample, int j, const Kernel& kernel, double x) {
  check_component(sample, j);
  double s = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l) s += kh_value(kernel, x - sample.designs(l, j));
  return s / static_cast<double>(sample.size());
}

double density_2d(const RegressionSample& sample, int j, int k, const Kernel& kernel, double xj,
                  double xk) {
  check_component(sample, j);
  check_component(sample, k);
  if (j == k) throw std::invalid_argument("density_2d needs two distinct components");
  double s = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l)
    s += kh_value(kernel, xj - sample.designs(l, j)) * kh_value(kernel, xk - sample.designs(l, k));
  return s / static_cast<double>(sample.size());
}

double nw_regress_1d(const RegressionSample& sample, int j, const Kernel& kernel, double x) {
  check_component(sample, j);
  double num = 0.0, den = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l) {
    const double w = kh_value(kernel, x - sample.designs(l, j));
    num += sample.responses(l) * w;
    den += w;
  }
  return den == 0.0 ? 0.0 : num / den;
}

double restricted_density_1d(const RegressionSample& sample, int j, const Kernel& kernel,
                             const RestrictedDomain& domain, double x) {
  check_component(sample, j);
  double count = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l)
    if (domain.contains(j, sample.designs(l, j))) count += 1.0;
  if (count == 0.0) throw std::runtime_error("empty restricted domain");
  if (!domain.contains(j, x)) return 0.0;
  double s = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l) s += kh_value(kernel, x - sample.designs(l, j));
  return s / count;
}

double restricted_density_2d(const RegressionSample& sample, int j, int k, const Kernel& kernel,
                             const RestrictedDomain& domain, double xj, double xk) {
  check_component(sample, j);
  check_component(sample, k);
  if (j == k) throw std::invalid_argument("restricted_density_2d needs two distinct components");
  double count = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l)
    if (domain.contains_pair(j, k, sample.designs(l, j), sample.designs(l, k))) count += 1.0;
  if (count == 0.0) throw std::runtime_error("empty restricted domain");
  if (!domain.contains_pair(j, k, xj, xk)) return 0.0;
  double s = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l)
    s += kh_value(kernel, xj - sample.designs(l, j)) * kh_value(kernel, xk - sample.designs(l, k));
  return s / count;
}

double full_dim_nw(const RegressionSample& sample, const Kernel& kernel, const Eigen::VectorXd& x) {
  if (sample.size() == 0) throw std::invalid_argument("empty sample");
  if (x.size() != sample.dim()) throw std::invalid_argument("point dimension mismatch");
  double num = 0.0, den = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); ++l) {
    double w = 1.0;
    for (int j = 0; j < sample.dim(); ++j) w *= kh_value(kernel, x(j) - sample.designs(l, j));
    num += sample.responses(l) * w;
    den += w;
  }
  return den == 0.0 ? 0.0 : num / den;
}

}  // namespace latadd
