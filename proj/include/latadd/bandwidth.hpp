#pragma once

#include <vector>

#include "latadd/backfit.hpp"
#include "latadd/kernel.hpp"
#include "latadd/lattice.hpp"

namespace latadd {

struct CvResult {
  std::vector<double> candidates;
  std::vector<double> scores;
  double chosen = 0.0;
};

/// Leave-one-out cross-validation score for bandwidth h: sum of squared
/// held-out prediction errors over every stride-th observation, scaled by
/// the stride. Each held-out fit is an exact refit without that
/// observation row (the rest of the sample, including rows that share the
/// held-out site as a neighbour value, stays in). Predictions clamp to
/// the grid range.
double cv_score(const RegressionSample& sample, KernelFamily family, double h,
                const std::vector<EvalGrid>& grids, const BackfitOptions& opts, int stride = 1);

/// Scores every candidate and picks the minimizer; ties break toward the
/// smallest bandwidth.
CvResult select_bandwidth(const RegressionSample& sample, KernelFamily family,
                          const std::vector<double>& candidates, const std::vector<EvalGrid>& grids,
                          const BackfitOptions& opts, int stride = 1);

/// Log-spaced candidates between 0.25x and 2x the normal-reference value
/// 1.06 * sd * N^(-1/5) computed from the pooled design values.
std::vector<double> default_candidates(const RegressionSample& sample, int count = 12);

}  // namespace latadd
