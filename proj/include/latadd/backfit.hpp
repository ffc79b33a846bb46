#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "latadd/kernel.hpp"
#include "latadd/lattice.hpp"

namespace latadd {

/// One additive component tabulated on its evaluation grid.
struct ComponentFunction {
  EvalGrid grid;
  Eigen::VectorXd values;

  /// Linear interpolation; arguments outside the grid clamp to the
  /// nearest boundary value.
  double interpolate(double x) const;
};

enum class FitMode { plain, restricted };

/// Sign applied to the not-yet-updated components inside one restricted
/// backfitting cycle. `as_printed` adds those terms; `standard` subtracts
/// them like the unrestricted cycle does. The two choices reach different
/// fixed points; they are deliberately not reconciled here.
enum class LagSign { as_printed, standard };

struct BackfitOptions {
  double tolerance = 1e-8;  // sup-norm change of any component per full cycle
  int max_cycles = 100;
  int grid_points = 101;  // used when grids are built from the sample
  LagSign restricted_lag_sign = LagSign::as_printed;
  /// Optional warm start, one vector of grid values per component.
  std::optional<std::vector<Eigen::VectorXd>> initial_components;

  void validate() const;
};

struct AdditiveFit {
  double m0 = 0.0;
  std::vector<ComponentFunction> components;
  double bandwidth = 0.0;
  int iterations = 0;
  double final_delta = 0.0;
  bool converged = false;
  FitMode mode = FitMode::plain;
  std::vector<double> cycle_deltas;  // sup-norm change per full cycle
};

/// Trapezoidal quadrature of values * weight over the grid.
double grid_integrate(const Eigen::VectorXd& values, const EvalGrid& grid,
                      const Eigen::VectorXd& weight);

/// m0 + sum of interpolated components at x (one coordinate per
/// component); out-of-grid coordinates clamp.
double evaluate_fit(const AdditiveFit& fit, const Eigen::VectorXd& x);

struct EvalDetail {
  double value = 0.0;
  bool clamped = false;
};
EvalDetail evaluate_fit_detailed(const AdditiveFit& fit, const Eigen::VectorXd& x);

/// Grids spanning the (optionally trimmed) range of each design column.
std::vector<EvalGrid> make_default_grids(const RegressionSample& sample, double trim,
                                         int n_points);

/// Smooth backfitting solver. The constructor tabulates the kernel
/// quantities that depend only on the designs (marginal densities, pair
/// densities on grid products); fitting a response vector against those
/// tables is then cheap, which is what the bootstrap and leave-one-out
/// paths exploit.
///
/// The cycle updates components in index order; each update subtracts the
/// quadrature cross terms against the other components and is immediately
/// re-centered to zero density-weighted grid mean. The fixed point of
/// this map is exactly the minimizer of the discretized least-squares
/// objective under the centering constraints (see direct_additive_oracle).
class SmoothBackfitter {
 public:
  SmoothBackfitter(const RegressionSample& sample, const Kernel& kernel,
                   std::vector<EvalGrid> grids, BackfitOptions opts = {});
  SmoothBackfitter(const RegressionSample& sample, const Kernel& kernel,
                   const RestrictedDomain& domain, std::vector<EvalGrid> grids,
                   BackfitOptions opts = {});

  /// Fit with the sample's own responses.
  AdditiveFit fit() const;

  /// Fit a different response vector against the same designs.
  AdditiveFit fit(const Eigen::VectorXd& responses) const;

  /// Exact leave-one-out fit: equivalent to refitting with observation
  /// `row` removed (plain mode only).
  AdditiveFit fit_leave_out(Eigen::Index row) const;

  int dim() const { return d_; }
  const std::vector<EvalGrid>& grids() const { return grids_; }

 private:
  AdditiveFit run(const Eigen::VectorXd& responses, Eigen::Index exclude) const;

  Eigen::MatrixXd designs_;
  Eigen::VectorXd responses_;
  Kernel kernel_;
  BackfitOptions opts_;
  std::vector<EvalGrid> grids_;
  int d_ = 0;
  Eigen::Index n_ = 0;
  bool restricted_ = false;

  std::vector<Eigen::VectorXd> points_;   // grid nodes per component
  std::vector<Eigen::VectorXd> trapw_;    // trapezoid weights per component
  std::vector<Eigen::MatrixXd> kmat_;     // K_h(node - design) per component, G_j x N
  std::vector<Eigen::VectorXd> fdens_;    // marginal density on the grid
  std::vector<std::vector<Eigen::MatrixXd>> pair_;  // pair density, j < l

  // Restricted-mode tables.
  std::vector<Eigen::ArrayXd> mask_;            // 1 on A_j, 0 off
  std::vector<double> in_count_;                // #designs inside A_j
  std::vector<std::vector<double>> pair_count_;  // #designs inside A_j x A_l
  std::vector<Eigen::VectorXd> pdens_;          // restricted density on the grid
  std::vector<std::vector<Eigen::VectorXd>> pair_marginal_;  // int p_jl(u, .) du / int p_j
};

/// One-call helpers over SmoothBackfitter.
AdditiveFit backfit(const RegressionSample& sample, const Kernel& kernel,
                    const std::vector<EvalGrid>& grids, const BackfitOptions& opts = {});
AdditiveFit backfit_restricted(const RegressionSample& sample, const Kernel& kernel,
                               const RestrictedDomain& domain, const std::vector<EvalGrid>& grids,
                               const BackfitOptions& opts = {});

/// Exact minimizer of the discretized additive least-squares objective:
/// the same marginal/pair quadrature tables the backfitting cycle uses,
/// assembled into the constrained normal equations and solved directly.
/// Supports d <= 3. The tables are recomputed here with the plain
/// per-point estimators, independently of SmoothBackfitter's internals.
AdditiveFit direct_additive_oracle(const RegressionSample& sample, const Kernel& kernel,
                                   const std::vector<EvalGrid>& grids);

}  // namespace latadd
