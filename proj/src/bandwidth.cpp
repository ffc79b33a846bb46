#include "latadd/bandwidth.hpp"

#include <cmath>
#include <stdexcept>

#include "latadd/stats.hpp"

namespace latadd {

double cv_score(const RegressionSample& sample, KernelFamily family, double h,
                const std::vector<EvalGrid>& grids, const BackfitOptions& opts, int stride) {
  if (!(h > 0.0)) throw std::invalid_argument("bandwidth must be positive");
  if (stride < 1) throw std::invalid_argument("stride must be at least 1");
  if (sample.size() <= sample.dim() + 1)
    throw std::invalid_argument("sample too small for cross-validation");

  const SmoothBackfitter engine(sample, Kernel{family, h}, grids, opts);
  double score = 0.0;
  for (Eigen::Index l = 0; l < sample.size(); l += stride) {
    const AdditiveFit fit = engine.fit_leave_out(l);
    const double pred = evaluate_fit(fit, sample.designs.row(l).transpose());
    const double err = sample.responses(l) - pred;
    score += err * err;
  }
  return score * static_cast<double>(stride);
}

CvResult select_bandwidth(const RegressionSample& sample, KernelFamily family,
                          const std::vector<double>& candidates, const std::vector<EvalGrid>& grids,
                          const BackfitOptions& opts, int stride) {
  if (candidates.empty()) throw std::invalid_argument("candidate list is empty");
  CvResult result;
  result.candidates = candidates;
  result.scores.reserve(candidates.size());
  for (double h : candidates) result.scores.push_back(cv_score(sample, family, h, grids, opts, stride));

  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const bool better = result.scores[i] < result.scores[best] ||
                        (result.scores[i] == result.scores[best] && candidates[i] < candidates[best]);
    if (better) best = i;
  }
  result.chosen = candidates[best];
  return result;
}

std::vector<double> default_candidates(const RegressionSample& sample, int count) {
  if (count < 1) throw std::invalid_argument("candidate count must be positive");
  std::vector<double> pooled(sample.designs.data(), sample.designs.data() + sample.designs.size());
  const double sd = stddev(pooled);
  if (!(sd > 0.0)) throw std::runtime_error("degenerate designs: zero spread");
  const double reference =
      1.06 * sd * std::pow(static_cast<double>(sample.size()), -0.2);
  const double lo = 0.25 * reference, hi = 2.0 * reference;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(reference);
    return out;
  }
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) out.push_back(lo * std::exp(step * static_cast<double>(i)));
  return out;
}

}  // namespace latadd
