#pragma once

#include <cstdint>
#include <vector>

#include "latadd/backfit.hpp"
#include "latadd/kernel.hpp"
#include "latadd/lattice.hpp"
#include "latadd/simulate.hpp"

namespace latadd {

enum class Multiplier { normal, rademacher };

/// Wild-bootstrap responses: fitted value plus the original residual
/// scaled by an i.i.d. mean-zero unit-variance multiplier. Designs are
/// reused unchanged. Deterministic given the seed.
Eigen::VectorXd wild_resample(const RegressionSample& sample, const AdditiveFit& fit,
                              std::uint64_t seed, Multiplier multiplier = Multiplier::normal);

/// Pointwise band for one additive component. center is the
/// bias-corrected curve 2*m_j - mean of bootstrap refits; the half-width
/// is the normal quantile for the level times the bootstrap standard
/// deviation, so lower <= center <= upper holds pointwise.
struct ConfidenceBand {
  int component = 0;
  EvalGrid grid;
  Eigen::VectorXd center;
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  double level = 0.95;
  int n_boot = 0;  // replicates actually used
};

/// Spread estimate used for the band half-width, computed from the
/// bootstrap deviations m*_j - m_j per grid node. `deviation_rms` takes
/// the second moment of the deviations about zero, so the width reflects
/// the whole estimation error including the bias component those same
/// deviations estimate; `sample_sd` centres them first. The rms variant
/// covers closer to nominal in simulations and is the default.
enum class WidthEstimator { deviation_rms, sample_sd };

struct CiOptions {
  double level = 0.95;
  int n_boot = 100;
  std::uint64_t seed = 0;
  Multiplier multiplier = Multiplier::normal;
  WidthEstimator width = WidthEstimator::deviation_rms;
  double max_drop_fraction = 0.2;  // more non-convergent refits than this is an error
};

struct CiResult {
  AdditiveFit fit;  // the fit on the original responses
  std::vector<ConfidenceBand> bands;
  int n_dropped = 0;
};

/// Fits the sample, then refits wild-bootstrap resamples with the same
/// bandwidth and grids; per-replicate seeds are derived by counter from
/// the master seed. Non-convergent replicates are dropped; exceeding
/// max_drop_fraction raises.
CiResult bootstrap_ci(const RegressionSample& sample, const Kernel& kernel,
                      const std::vector<EvalGrid>& grids, const BackfitOptions& opts,
                      const CiOptions& ci);

/// How 4-vectors of neighbour values are compared inside the
/// marked-empirical-process statistic: componentwise on all coordinates,
/// or lexicographically.
enum class OrderMode { componentwise, lexicographic };

/// Goodness-of-fit statistic for the auto-normal conditional mean:
/// T = N^{-1} max_k | sum_j resid(s_j) * I{X(s_j) <= X(s_k)} |
/// over the N interior sites, with X(s) the (north, west, south, east)
/// neighbour values and residuals taken against the given parameters.
double linearity_statistic(const LatticeField& field, const AutoNormalParams& params,
                           OrderMode order = OrderMode::componentwise);

struct LinearityTestOptions {
  int n_boot = 199;
  std::uint64_t seed = 0;
  OrderMode order = OrderMode::componentwise;
  bool with_intercept = true;
  /// Simulate the null fields with conditional variance 1 instead of the
  /// fitted residual variance.
  bool force_unit_variance = false;
};

struct LinearityTestResult {
  double t_observed = 0.0;
  std::vector<double> t_boot;
  double p_value = 1.0;
  AutoNormalParams fitted;
  OrderMode order = OrderMode::componentwise;
};

/// Parametric bootstrap test of the auto-normal null: fits the scheme by
/// the coding method, simulates null fields with the fitted parameters,
/// re-estimates on each simulated field, and compares statistics. The
/// p-value uses the add-one convention (1 + #{T* >= T}) / (1 + B).
/// Fitted coefficients outside the sampler's stability region are scaled
/// onto its boundary for the null draws (the reported fit is unchanged).
LinearityTestResult linearity_test(const LatticeField& field, const LinearityTestOptions& opts);

}  // namespace latadd
