#include "latadd/reproduce.hpp"

#include <cmath>
#include <stdexcept>

#include "latadd/bandwidth.hpp"
#include "latadd/parallel.hpp"
#include "latadd/rng.hpp"
#include "latadd/simulate.hpp"
#include "latadd/stats.hpp"

namespace latadd {

namespace {

void check_failed(int failed, int reps) {
  if (failed * 10 > reps)
    throw std::runtime_error("more than 10% of Monte Carlo replicates failed (" +
                             std::to_string(failed) + " of " + std::to_string(reps) + ")");
}

}  // namespace

NeighborScheme example1_scheme() { return NeighborScheme({{1, 0}, {0, 1}, {1, 1}}); }

Example1Summary run_example1(const Example1Options& options) {
  Example1Summary summary;
  summary.options = options;
  if (summary.options.candidates.empty())
    for (int i = 0; i <= 17; ++i) summary.options.candidates.push_back(0.15 + 0.05 * i);
  summary.reps.resize(static_cast<std::size_t>(options.reps));

  const NeighborScheme scheme = example1_scheme();
  const auto& candidates = summary.options.candidates;
  parallel_for(static_cast<std::size_t>(options.reps), options.jobs, [&](std::size_t r) {
    auto& rep = summary.reps[r];
    try {
      const LatticeField field = simulate_unilateral(UnilateralModel{}, options.rows, options.cols,
                                                     substream_seed(options.seed, r));
      const RegressionSample sample = extract_samples(field, scheme);
      const std::vector<EvalGrid> grids = make_default_grids(sample, 0.0, options.grid_points);
      BackfitOptions opts;
      const CvResult cv =
          select_bandwidth(sample, KernelFamily::gaussian, candidates, grids, opts, options.stride);
      rep.chosen_h = cv.chosen;
      const AdditiveFit fit =
          backfit(sample, Kernel{KernelFamily::gaussian, cv.chosen}, grids, opts);
      // Mean absolute value of the third component over the central nodes.
      const auto& m3 = fit.components[2];
      const int g = m3.grid.size();
      const int span = 7;
      const int start = (g - span) / 2;
      double acc = 0.0;
      for (int a = start; a < start + span; ++a) acc += std::fabs(m3.values(a));
      rep.mean_abs_m3_center = acc / span;
      rep.ok = true;
    } catch (const std::exception& e) {
      rep.error = e.what();
    }
  });

  std::vector<double> hs, m3s;
  for (const auto& rep : summary.reps) {
    if (!rep.ok) {
      ++summary.failed;
      continue;
    }
    hs.push_back(rep.chosen_h);
    m3s.push_back(rep.mean_abs_m3_center);
  }
  check_failed(summary.failed, options.reps);
  summary.mean_h = mean(hs);
  summary.var_h = variance(hs);
  summary.mean_abs_m3 = mean(m3s);
  return summary;
}

Example2CurvesSummary run_example2_curves(const Example2CurvesOptions& options) {
  Example2CurvesSummary summary;
  summary.options = options;
  summary.target = {options.theta1, options.theta2, options.theta1, options.theta2};
  summary.reps.resize(static_cast<std::size_t>(options.reps));

  const NeighborScheme scheme = NeighborScheme::four_neighbor();
  const AutoNormalParams params{0.0, options.theta1, options.theta2, 1.0};
  parallel_for(static_cast<std::size_t>(options.reps), options.jobs, [&](std::size_t r) {
    auto& rep = summary.reps[r];
    try {
      const LatticeField field = simulate_autonormal(params, options.rows, options.cols,
                                                     substream_seed(options.seed, r));
      const RegressionSample sample = extract_samples(field, scheme);
      const std::vector<EvalGrid> grids = make_default_grids(sample, 0.0, options.grid_points);
      BackfitOptions opts;
      opts.restricted_lag_sign = options.lag_sign;
      const Kernel kernel{KernelFamily::gaussian, options.bandwidth};
      AdditiveFit fit;
      if (options.restricted)
        fit = backfit_restricted(sample, kernel, default_domain(sample, 0.0), grids, opts);
      else
        fit = backfit(sample, kernel, grids, opts);
      for (int j = 0; j < 4; ++j) {
        const auto& c = fit.components[static_cast<std::size_t>(j)];
        // Slope over the interior nodes (endpoints dropped).
        std::vector<double> x, y;
        for (int a = 1; a + 1 < c.grid.size(); ++a) {
          x.push_back(c.grid.point(a));
          y.push_back(c.values(a));
        }
        rep.slopes[static_cast<std::size_t>(j)] = ols_slope(x, y);
      }
      rep.ok = true;
    } catch (const std::exception& e) {
      rep.error = e.what();
    }
  });

  std::array<double, 4> acc{};
  int used = 0;
  for (const auto& rep : summary.reps) {
    if (!rep.ok) {
      ++summary.failed;
      continue;
    }
    ++used;
    for (int j = 0; j < 4; ++j) acc[static_cast<std::size_t>(j)] += rep.slopes[static_cast<std::size_t>(j)];
  }
  check_failed(summary.failed, options.reps);
  for (int j = 0; j < 4; ++j)
    summary.mean_slopes[static_cast<std::size_t>(j)] = acc[static_cast<std::size_t>(j)] / used;
  return summary;
}

Example2TestSummary run_example2_test(const Example2TestOptions& options) {
  Example2TestSummary summary;
  summary.options = options;
  summary.reps.resize(static_cast<std::size_t>(options.reps));

  const AutoNormalParams params{0.0, options.theta1, options.theta2, 1.0};
  parallel_for(static_cast<std::size_t>(options.reps), options.jobs, [&](std::size_t r) {
    auto& rep = summary.reps[r];
    try {
      const std::uint64_t rep_seed = substream_seed(options.seed, r);
      const LatticeField field =
          simulate_autonormal(params, options.rows, options.cols, substream_seed(rep_seed, 0));
      LinearityTestOptions topts;
      topts.n_boot = options.n_boot;
      topts.seed = substream_seed(rep_seed, 1);
      topts.order = options.order;
      topts.with_intercept = false;   // the null has mean zero
      topts.force_unit_variance = true;
      const LinearityTestResult res = linearity_test(field, topts);
      rep.p_value = res.p_value;
      rep.t_observed = res.t_observed;
      rep.ok = true;
    } catch (const std::exception& e) {
      rep.error = e.what();
    }
  });

  int used = 0, r10 = 0, r05 = 0;
  for (const auto& rep : summary.reps) {
    if (!rep.ok) {
      ++summary.failed;
      continue;
    }
    ++used;
    if (rep.p_value <= 0.10) ++r10;
    if (rep.p_value <= 0.05) ++r05;
  }
  check_failed(summary.failed, options.reps);
  summary.reject_10 = static_cast<double>(r10) / used;
  summary.reject_05 = static_cast<double>(r05) / used;
  return summary;
}

}  // namespace latadd
