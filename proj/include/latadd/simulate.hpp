#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>

#include "latadd/lattice.hpp"

namespace latadd {

/// Parameters of the first-order auto-normal (conditional autoregressive)
/// scheme: conditionally on the rest of the field, each site is normal
/// with mean alpha + theta1 * (vertical neighbours - alpha each) +
/// theta2 * (horizontal neighbours - alpha each) and variance cond_var.
struct AutoNormalParams {
  double alpha = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
  double cond_var = 1.0;
};

/// Unilateral recursion over the raster order:
/// Y(u,v) = g1(Y(u-1,v)) + g2(Y(u,v-1)) + noise. The first row and column
/// of an enlarged grid are pure noise, and a burn_in margin is discarded
/// so that the kept block is effectively stationary.
struct UnilateralModel {
  std::function<double(double)> g1 = [](double x) { return std::sin(x); };
  std::function<double(double)> g2 = [](double x) { return std::cos(x); };
  double noise_sd = 1.0;
  int burn_in = 20;
};

LatticeField simulate_unilateral(const UnilateralModel& model, int n_rows, int n_cols,
                                 std::uint64_t seed);

enum class AutoNormalMethod { exact, gibbs };

/// Draws one field from the joint Gaussian law implied by the auto-normal
/// scheme with a free boundary (boundary sites simply have fewer
/// neighbours in the precision matrix). `exact` factorizes the sparse
/// precision matrix; `gibbs` runs raster-scan sweeps and is meant for
/// lattices too large to factorize. Requires |theta1| + |theta2| < 1/2.
LatticeField simulate_autonormal(const AutoNormalParams& params, int n_rows, int n_cols,
                                 std::uint64_t seed, AutoNormalMethod method = AutoNormalMethod::exact,
                                 int gibbs_burnin = 200);

/// Reusable exact sampler: factorizes the precision matrix once and then
/// draws any number of independent fields (one seed each).
class AutoNormalSampler {
 public:
  AutoNormalSampler(const AutoNormalParams& params, int n_rows, int n_cols);
  ~AutoNormalSampler();
  AutoNormalSampler(AutoNormalSampler&&) noexcept;
  AutoNormalSampler& operator=(AutoNormalSampler&&) noexcept;

  LatticeField draw(std::uint64_t seed) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

enum class CodingCombine { average, stacked };

/// Besag's coding-method estimate of the auto-normal parameters: ordinary
/// least squares of the (optionally mean-centred) response on the
/// vertical- and horizontal-neighbour sums, run separately on the two
/// checkerboard codes and combined. cond_var is the pooled residual mean
/// square. Throws "degenerate coding regression" when the regressors are
/// rank deficient (e.g. a constant field).
AutoNormalParams coding_fit(const LatticeField& field, bool with_intercept = true,
                            CodingCombine combine = CodingCombine::average);

}  // namespace latadd
