#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "latadd/bandwidth.hpp"
#include "latadd/simulate.hpp"
#include "latadd/stats.hpp"
#include "test_helpers.hpp"

using namespace latadd;
using test_fixtures::random_sample;

namespace {

// Removes row `drop` from a sample; used to cross-check the engine's
// leave-one-out path against a from-scratch refit.
RegressionSample without_row(const RegressionSample& s, Eigen::Index drop) {
  RegressionSample out;
  const auto n = s.size();
  out.responses.resize(n - 1);
  out.designs.resize(n - 1, s.dim());
  Eigen::Index w = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == drop) continue;
    out.responses(w) = s.responses(i);
    out.designs.row(w) = s.designs.row(i);
    out.sites.push_back(s.sites[static_cast<std::size_t>(i)]);
    ++w;
  }
  return out;
}

}  // namespace

TEST_CASE("leave-one-out downdating equals a from-scratch refit") {
  const LatticeField field = simulate_unilateral(UnilateralModel{}, 8, 8, 99);
  const RegressionSample s = extract_samples(field, NeighborScheme({{1, 0}, {0, 1}}));
  const Kernel k{KernelFamily::gaussian, 0.5};
  const auto grids = make_default_grids(s, 0.0, 11);
  BackfitOptions opts;
  opts.tolerance = 1e-11;
  opts.max_cycles = 300;
  const SmoothBackfitter engine(s, k, grids, opts);
  for (Eigen::Index drop : {Eigen::Index(0), Eigen::Index(17), s.size() - 1}) {
    const AdditiveFit fast = engine.fit_leave_out(drop);
    const AdditiveFit slow = backfit(without_row(s, drop), k, grids, opts);
    CHECK(fast.m0 == doctest::Approx(slow.m0).epsilon(1e-13));
    for (int j = 0; j < 2; ++j)
      CHECK((fast.components[j].values - slow.components[j].values).cwiseAbs().maxCoeff() <= 1e-9);
  }
}

TEST_CASE("constant field scores zero for any bandwidth") {
  const LatticeField field = test_fixtures::constant_field(6, 6, 2.0);
  const RegressionSample s = extract_samples(field, NeighborScheme({{1, 0}, {0, 1}}));
  const std::vector<EvalGrid> grids(2, EvalGrid(1.0, 3.0, 11));
  for (double h : {0.2, 0.5, 1.0})
    CHECK(cv_score(s, KernelFamily::gaussian, h, grids, {}, 1) <= 1e-20);
}

TEST_CASE("stride equal to the sample size keeps a single held-out point") {
  const RegressionSample s = random_sample(301, 40, 2);
  const Kernel k{KernelFamily::gaussian, 0.4};
  const auto grids = make_default_grids(s, 0.0, 11);
  BackfitOptions opts;
  const double score = cv_score(s, KernelFamily::gaussian, 0.4, grids, opts, static_cast<int>(s.size()));
  // manual single-point LOO residual (full refit without row 0)
  const AdditiveFit loo = backfit(without_row(s, 0), k, grids, opts);
  const double pred = evaluate_fit(loo, s.designs.row(0).transpose());
  const double expect = static_cast<double>(s.size()) * std::pow(s.responses(0) - pred, 2);
  CHECK(score == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("cv score is non-negative and validates its inputs") {
  const RegressionSample s = random_sample(303, 30, 2);
  const auto grids = make_default_grids(s, 0.0, 9);
  CHECK(cv_score(s, KernelFamily::gaussian, 0.3, grids, {}, 3) >= 0.0);
  CHECK_THROWS(cv_score(s, KernelFamily::gaussian, -0.1, grids, {}, 1));
  CHECK_THROWS(cv_score(s, KernelFamily::gaussian, 0.3, grids, {}, 0));
  const RegressionSample tiny = random_sample(305, 3, 2);
  CHECK_THROWS(cv_score(tiny, KernelFamily::gaussian, 0.3, grids, {}, 1));
}

TEST_CASE("selection: argmin with smallest-bandwidth tie break") {
  const RegressionSample s = random_sample(307, 50, 1);
  const auto grids = make_default_grids(s, 0.0, 11);

  SUBCASE("single candidate") {
    const CvResult r = select_bandwidth(s, KernelFamily::gaussian, {0.4}, grids, {}, 4);
    CHECK(r.chosen == 0.4);
    CHECK(r.scores.size() == 1);
  }
  SUBCASE("duplicates and permutations do not change the choice") {
    const std::vector<double> base{0.2, 0.35, 0.5, 0.8};
    const CvResult r1 = select_bandwidth(s, KernelFamily::gaussian, base, grids, {}, 2);
    std::vector<double> dup = base;
    dup.insert(dup.end(), base.begin(), base.end());
    const CvResult r2 = select_bandwidth(s, KernelFamily::gaussian, dup, grids, {}, 2);
    CHECK(r1.chosen == r2.chosen);
    std::vector<double> perm = base;
    std::reverse(perm.begin(), perm.end());
    const CvResult r3 = select_bandwidth(s, KernelFamily::gaussian, perm, grids, {}, 2);
    CHECK(r1.chosen == r3.chosen);
  }
  SUBCASE("empty candidate list") {
    CHECK_THROWS(select_bandwidth(s, KernelFamily::gaussian, {}, grids, {}, 1));
  }
}

TEST_CASE("score curve over a bandwidth sweep is finite with an interior minimum") {
  const LatticeField field = simulate_unilateral(UnilateralModel{}, 24, 28, 12);
  const RegressionSample s = extract_samples(field, NeighborScheme({{1, 0}, {0, 1}, {1, 1}}));
  const auto grids = make_default_grids(s, 0.0, 13);
  std::vector<double> candidates;
  for (double h = 0.15; h <= 1.001; h += 0.1) candidates.push_back(h);
  std::vector<double> curve4, curve1;
  for (double h : candidates) {
    curve4.push_back(cv_score(s, KernelFamily::gaussian, h, grids, {}, 4));
    curve1.push_back(cv_score(s, KernelFamily::gaussian, h, grids, {}, 1));
  }
  std::size_t best = 0;
  for (std::size_t i = 0; i < curve1.size(); ++i) {
    CHECK(std::isfinite(curve1[i]));
    CHECK(std::isfinite(curve4[i]));
    if (curve1[i] < curve1[best]) best = i;
  }
  CHECK(best > 0);
  CHECK(best + 1 < curve1.size());

  // subsampled and full curves track each other
  const double m1 = mean(curve1), m4 = mean(curve4);
  double num = 0, d1 = 0, d4 = 0;
  for (std::size_t i = 0; i < curve1.size(); ++i) {
    num += (curve1[i] - m1) * (curve4[i] - m4);
    d1 += (curve1[i] - m1) * (curve1[i] - m1);
    d4 += (curve4[i] - m4) * (curve4[i] - m4);
  }
  CHECK(num / std::sqrt(d1 * d4) >= 0.9);
}

TEST_CASE("default candidates bracket the normal-reference value") {
  const RegressionSample s = random_sample(311, 200, 2);
  const auto cand = default_candidates(s);
  REQUIRE(cand.size() == 12);
  CHECK(std::is_sorted(cand.begin(), cand.end()));
  CHECK(cand.front() > 0.0);
  CHECK(cand.back() == doctest::Approx(8.0 * cand.front()).epsilon(1e-9));
}
