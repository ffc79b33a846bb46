#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "latadd/lattice.hpp"

namespace latadd {

enum class KernelFamily { gaussian, epanechnikov };

KernelFamily parse_kernel_family(const std::string& name);
std::string to_string(KernelFamily family);

/// Symmetric probability-density kernel with a bandwidth. K_h(t) = K(t/h)/h.
struct Kernel {
  KernelFamily family = KernelFamily::gaussian;
  double bandwidth = 1.0;

  void validate() const;
};

/// K(t): standard normal density, or 0.75 (1 - t^2) on [-1, 1].
double kernel_value(const Kernel& kernel, double t);

/// K_h(t) = K(t / h) / h.
double kh_value(const Kernel& kernel, double t);

/// Uniform evaluation grid on [lower, upper] with n_points >= 2 nodes.
class EvalGrid {
 public:
  EvalGrid(double lower, double upper, int n_points);

  double lower() const { return lower_; }
  double upper() const { return upper_; }
  int size() const { return n_points_; }
  double spacing() const { return (upper_ - lower_) / static_cast<double>(n_points_ - 1); }
  double point(int i) const { return lower_ + spacing() * static_cast<double>(i); }
  Eigen::VectorXd points() const;

 private:
  double lower_, upper_;
  int n_points_;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Compact per-component intervals A_j; pair regions are the products
/// A_j x A_k, so the symmetry (x_j,x_k) in A_jk <=> (x_k,x_j) in A_kj
/// holds by construction.
class RestrictedDomain {
 public:
  explicit RestrictedDomain(std::vector<Interval> intervals);

  int dim() const { return static_cast<int>(intervals_.size()); }
  const Interval& interval(int j) const;
  bool contains(int j, double x) const { return interval(j).contains(x); }
  bool contains_pair(int j, int k, double xj, double xk) const {
    return contains(j, xj) && contains(k, xk);
  }

 private:
  std::vector<Interval> intervals_;
};

/// A_j = [q_trim, q_(1-trim)] of design column j (type-7 quantiles);
/// trim = 0 gives the full data range. Throws on a constant column.
RestrictedDomain default_domain(const RegressionSample& sample, double trim);

/// Marginal kernel density of design column j at x: average of K_h over
/// the column.
double density_1d(const RegressionSample& sample, int j, const Kernel& kernel, double x);

/// Bivariate kernel density of design columns (j, k); j != k.
double density_2d(const RegressionSample& sample, int j, int k, const Kernel& kernel, double xj,
                  double xk);

/// Nadaraya-Watson regression of the response on design column j.
/// Follows the 0/0 := 0 convention where the density vanishes.
double nw_regress_1d(const RegressionSample& sample, int j, const Kernel& kernel, double x);

/// Density estimate confined to A_j: kernel sum over all observations
/// divided by the count of design values inside A_j, zero outside A_j.
/// Throws "empty restricted domain" when that count is zero.
double restricted_density_1d(const RegressionSample& sample, int j, const Kernel& kernel,
                             const RestrictedDomain& domain, double x);

double restricted_density_2d(const RegressionSample& sample, int j, int k, const Kernel& kernel,
                             const RestrictedDomain& domain, double xj, double xk);

/// Full-dimensional product-kernel Nadaraya-Watson estimate at x
/// (one coordinate per design column). Intended for small d.
double full_dim_nw(const RegressionSample& sample, const Kernel& kernel,
                   const Eigen::VectorXd& x);

}  // namespace latadd
