// Acceptance suite: end-to-end checks of the library's statistical
// guarantees, one printed line per criterion. Monte Carlo sections run on
// fixed seeds with counter-derived substreams, so the whole binary is
// deterministic for a given job count and produces identical statistics
// for any job count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "latadd/backfit.hpp"
#include "latadd/bandwidth.hpp"
#include "latadd/bootstrap.hpp"
#include "latadd/field_io.hpp"
#include "latadd/kernel.hpp"
#include "latadd/lattice.hpp"
#include "latadd/parallel.hpp"
#include "latadd/reproduce.hpp"
#include "latadd/rng.hpp"
#include "latadd/simulate.hpp"
#include "latadd/stats.hpp"

using namespace latadd;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;
Clock::time_point g_t0;

int jobs() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 4 : static_cast<int>(hw);
}

void report(int criterion, bool pass, const std::string& detail) {
  const double elapsed = std::chrono::duration<double>(Clock::now() - g_t0).count();
  std::printf("[%s] criterion %2d: %s  (t=%.1fs)\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str(), elapsed);
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void report_aux(bool pass, const std::string& detail) {
  std::printf("[%s] aux check  : %s\n", pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return std::string(buf);
}

double sup_diff(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------
// 1. The backfitting cycle and the direct constrained least-squares
//    solve are two routes to the same discrete objective.
void criterion1() {
  double worst = 0.0;
  const int fields = 20;
  std::vector<double> sup(fields);
  parallel_for(fields, jobs(), [&](std::size_t i) {
    const LatticeField field = simulate_unilateral(UnilateralModel{}, 10, 10, 1000 + i);
    const RegressionSample s = extract_samples(field, NeighborScheme({{1, 0}, {0, 1}}));
    const Kernel k{KernelFamily::gaussian, 0.5};
    const auto grids = make_default_grids(s, 0.0, 15);
    BackfitOptions opts;
    opts.tolerance = 1e-11;
    opts.max_cycles = 500;
    const AdditiveFit it = backfit(s, k, grids, opts);
    const AdditiveFit oracle = direct_additive_oracle(s, k, grids);
    double d = it.converged ? 0.0 : 1.0;
    for (int j = 0; j < 2; ++j)
      d = std::max(d, sup_diff(it.components[j].values, oracle.components[j].values));
    sup[i] = d;
  });
  for (double d : sup) worst = std::max(worst, d);
  report(1, worst <= 1e-6,
         fmt("iterative vs direct minimizer on %d random 10x10 fields, sup diff %.2e (tol 1e-6)",
             fields, worst));
}

// ---------------------------------------------------------------------
// 2. Exact identities.
void criterion2() {
  bool pass = true;
  std::string detail;

  // m0 equals the response mean to machine precision
  const LatticeField f1 = simulate_unilateral(UnilateralModel{}, 12, 14, 2001);
  const RegressionSample s1 = extract_samples(f1, NeighborScheme({{1, 0}, {0, 1}}));
  const AdditiveFit fit1 =
      backfit(s1, Kernel{KernelFamily::gaussian, 0.4}, make_default_grids(s1, 0.0, 13), {});
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s1.size(); ++i) acc += s1.responses(i);
  const double ybar = acc / static_cast<double>(s1.size());
  const double m0_err = std::fabs(fit1.m0 - ybar) / std::max(1.0, std::fabs(ybar));
  pass = pass && m0_err <= 1e-14;

  // d=1 fit equals the marginal regression minus the mean, on a grid wide
  // and fine enough that the quadrature captures all kernel mass
  const RegressionSample s2 = extract_samples(f1, NeighborScheme({{1, 0}}));
  const double h = 0.45;
  const double lo = s2.designs.col(0).minCoeff() - 8 * h;
  const double hi = s2.designs.col(0).maxCoeff() + 8 * h;
  const int npts = static_cast<int>(std::ceil((hi - lo) / (h / 3.0))) + 1;
  const std::vector<EvalGrid> grids{EvalGrid(lo, hi, npts)};
  const Kernel k{KernelFamily::gaussian, h};
  const AdditiveFit fit2 = backfit(s2, k, grids, {});
  double d1_err = 0.0;
  for (int a = 0; a < npts; ++a)
    d1_err = std::max(d1_err, std::fabs(fit2.components[0].values(a) -
                                        (nw_regress_1d(s2, 0, k, grids[0].point(a)) -
                                         s2.responses.mean())));
  pass = pass && d1_err <= 1e-10;

  // constant field: zero components
  const LatticeField fc = LatticeField(Eigen::MatrixXd::Constant(9, 9, 2.75));
  const RegressionSample sc = extract_samples(fc, NeighborScheme({{1, 0}, {0, 1}}));
  const AdditiveFit fitc =
      backfit(sc, Kernel{KernelFamily::gaussian, 0.3}, {EvalGrid(1.75, 3.75, 15), EvalGrid(1.75, 3.75, 15)}, {});
  double c_err = std::fabs(fitc.m0 - 2.75);
  for (const auto& c : fitc.components) c_err = std::max(c_err, c.values.cwiseAbs().maxCoeff());
  pass = pass && c_err <= 1e-12;

  report(2, pass,
         fmt("m0 rel err %.1e (tol 1e-14); d=1 vs marginal sup %.1e (tol 1e-10); constant-field "
             "residue %.1e (tol 1e-12)",
             m0_err, d1_err, c_err));
}

// ---------------------------------------------------------------------
// 3. Geometric convergence of the cycle on auto-normal data.
void criterion3() {
  const LatticeField field = simulate_autonormal(AutoNormalParams{0, 0.2, 0.25, 1.0}, 20, 20, 3001);
  const RegressionSample s = extract_samples(field, NeighborScheme::four_neighbor());
  const auto grids = make_default_grids(s, 0.0, 13);
  const Kernel k{KernelFamily::gaussian, 0.4};
  BackfitOptions opts;
  opts.tolerance = 1e-13;
  opts.max_cycles = 400;

  double worst_ratio = 0.0;
  int checked = 0;
  for (int mode = 0; mode < 2; ++mode) {
    const AdditiveFit fit = mode == 0
                                ? backfit(s, k, grids, opts)
                                : backfit_restricted(s, k, default_domain(s, 0.0), grids, opts);
    for (std::size_t r = 2; r + 1 < fit.cycle_deltas.size(); ++r) {
      if (fit.cycle_deltas[r] < 1e-12) break;
      worst_ratio = std::max(worst_ratio, fit.cycle_deltas[r + 1] / fit.cycle_deltas[r]);
      ++checked;
    }
  }
  report(3, checked > 0 && worst_ratio <= 0.95,
         fmt("successive-cycle delta ratios (plain and restricted), worst %.3f over %d ratios "
             "(bound 0.95)",
             worst_ratio, checked));
}

// ---------------------------------------------------------------------
// 4. Component slopes on auto-normal fields.
void criterion4() {
  Example2CurvesOptions o;
  o.reps = 100;
  o.jobs = jobs();
  const Example2CurvesSummary s = run_example2_curves(o);
  double worst = 0.0;
  for (int j = 0; j < 4; ++j) worst = std::max(worst, std::fabs(s.mean_slopes[j] - s.target[j]));
  report(4, worst <= 0.05,
         fmt("mean slopes over %d reps: %.4f %.4f %.4f %.4f vs (0.2, 0.25, 0.2, 0.25), worst dev "
             "%.4f (tol 0.05)",
             o.reps, s.mean_slopes[0], s.mean_slopes[1], s.mean_slopes[2], s.mean_slopes[3], worst));

  // Same study through the restricted cycle (standard lag sign, which is
  // the convention that matches the unrestricted fixed point).
  Example2CurvesOptions r = o;
  r.restricted = true;
  r.lag_sign = LagSign::standard;
  const Example2CurvesSummary sr = run_example2_curves(r);
  double worst_r = 0.0;
  for (int j = 0; j < 4; ++j) worst_r = std::max(worst_r, std::fabs(sr.mean_slopes[j] - sr.target[j]));
  report_aux(worst_r <= 0.05,
             fmt("restricted-mode slopes (standard lag sign): %.4f %.4f %.4f %.4f, worst dev %.4f",
                 sr.mean_slopes[0], sr.mean_slopes[1], sr.mean_slopes[2], sr.mean_slopes[3],
                 worst_r));
}

// ---------------------------------------------------------------------
// 5. Bandwidth selection on the unilateral model.
void criterion5() {
  Example1Options o;
  o.reps = 100;
  o.stride = 4;
  o.jobs = jobs();
  const Example1Summary s = run_example1(o);
  const bool pass = s.mean_h >= 0.30 && s.mean_h <= 0.55 && s.mean_abs_m3 <= 0.15;
  report(5, pass,
         fmt("LOO-CV over %d reps (stride %d): mean h %.3f (need [0.30, 0.55]), var h %.4f, mean "
             "|m3| at 7 central nodes %.4f (need <= 0.15)",
             o.reps, o.stride, s.mean_h, s.var_h, s.mean_abs_m3));
}

// ---------------------------------------------------------------------
// 6. Size of the parametric-bootstrap linearity test.
void criterion6() {
  Example2TestOptions o;
  o.reps = 500;
  o.n_boot = 200;
  o.jobs = jobs();
  const Example2TestSummary s = run_example2_test(o);
  const bool pass = std::fabs(s.reject_10 - 0.10) <= 0.05 && std::fabs(s.reject_05 - 0.05) <= 0.05;
  report(6, pass,
         fmt("null rejection rates over %d reps, %d bootstrap draws: %.1f%% at 10%%, %.1f%% at 5%% "
             "(tol +/-5 points; %d failed reps)",
             o.reps, o.n_boot, 100 * s.reject_10, 100 * s.reject_05, s.failed));
}

// ---------------------------------------------------------------------
// 7. Power against the nonlinear unilateral model on 61x61 lattices.
void criterion7() {
  const int runs = 25;
  std::vector<double> pvals(runs, 1.0);
  parallel_for(runs, jobs(), [&](std::size_t r) {
    const LatticeField f = simulate_unilateral(UnilateralModel{}, 61, 61, 7000 + r);
    LinearityTestOptions opts;
    opts.n_boot = 200;
    opts.seed = substream_seed(7100, r);
    opts.with_intercept = true;
    pvals[r] = linearity_test(f, opts).p_value;
  });
  int reject = 0;
  for (double p : pvals)
    if (p < 0.05) ++reject;
  report(7, reject >= static_cast<int>(0.8 * runs),
         fmt("nonlinear 61x61 fields: p < 0.05 in %d of %d runs (need >= %d)", reject, runs,
             static_cast<int>(0.8 * runs)));
}

// ---------------------------------------------------------------------
// 8. Wild-bootstrap confidence bands: degenerate case and coverage.
void criterion8() {
  // zero-width bands on a zero-residual input
  const LatticeField fc = LatticeField(Eigen::MatrixXd::Constant(8, 8, 1.0));
  const RegressionSample sc = extract_samples(fc, NeighborScheme({{1, 0}, {0, 1}}));
  CiOptions cic;
  cic.n_boot = 20;
  cic.seed = 5;
  const CiResult zc = bootstrap_ci(sc, Kernel{KernelFamily::gaussian, 0.3},
                                   {EvalGrid(0.0, 2.0, 11), EvalGrid(0.0, 2.0, 11)}, {}, cic);
  double zero_width = 0.0;
  for (const auto& b : zc.bands) zero_width = std::max(zero_width, (b.upper - b.lower).cwiseAbs().maxCoeff());

  // coverage of the known component functions on unilateral fields;
  // ground-truth centring constants from one large reference field
  const LatticeField big = simulate_unilateral(UnilateralModel{}, 400, 400, 11);
  double esin = 0.0, ecos = 0.0;
  for (Eigen::Index u = 0; u < big.rows(); ++u)
    for (Eigen::Index v = 0; v < big.cols(); ++v) {
      esin += std::sin(big(u, v));
      ecos += std::cos(big(u, v));
    }
  esin /= static_cast<double>(big.rows() * big.cols());
  ecos /= static_cast<double>(big.rows() * big.cols());

  const NeighborScheme scheme = example1_scheme();
  const double h = 0.3;
  const int reps = 100;
  std::vector<std::array<long, 4>> counts(reps);  // covered_rms, covered_sd, total, dropped
  parallel_for(reps, jobs(), [&](std::size_t r) {
    const LatticeField f = simulate_unilateral(UnilateralModel{}, 24, 28, 8000 + r);
    const RegressionSample s = extract_samples(f, scheme);
    std::vector<EvalGrid> grids;
    for (int j = 0; j < 3; ++j)
      grids.emplace_back(s.designs.col(j).minCoeff() - 4 * h, s.designs.col(j).maxCoeff() + 4 * h,
                         25);
    CiOptions ci;
    ci.n_boot = 100;
    ci.seed = substream_seed(8800, r);
    const Kernel k{KernelFamily::gaussian, h};
    const CiResult rms = bootstrap_ci(s, k, grids, {}, ci);
    CiOptions ci_sd = ci;
    ci_sd.width = WidthEstimator::sample_sd;
    const CiResult sd = bootstrap_ci(s, k, grids, {}, ci_sd);
    std::array<long, 4> loc{0, 0, 0, 0};
    for (int j = 0; j < 3; ++j) {
      const int g = grids[j].size(), start = (g - 7) / 2;
      for (int a = start; a < start + 7; ++a) {
        const double x = grids[j].point(a);
        const double truth = j == 0 ? std::sin(x) - esin : (j == 1 ? std::cos(x) - ecos : 0.0);
        ++loc[2];
        if (rms.bands[j].lower(a) <= truth && truth <= rms.bands[j].upper(a)) ++loc[0];
        if (sd.bands[j].lower(a) <= truth && truth <= sd.bands[j].upper(a)) ++loc[1];
      }
    }
    loc[3] = rms.n_dropped;
    counts[r] = loc;
  });
  long cov_rms = 0, cov_sd = 0, total = 0;
  for (const auto& c : counts) {
    cov_rms += c[0];
    cov_sd += c[1];
    total += c[2];
  }
  const double rate = static_cast<double>(cov_rms) / static_cast<double>(total);
  const double rate_sd = static_cast<double>(cov_sd) / static_cast<double>(total);
  const bool pass = zero_width <= 1e-10 && rate >= 0.85 && rate <= 0.99;
  report(8, pass,
         fmt("zero-residual width %.1e (tol 1e-10); 95%% band coverage of the true components, %d "
             "reps x 7 central nodes x 3 components: %.1f%% (need [85, 99]; centered-sd variant "
             "%.1f%%)",
             zero_width, reps, 100 * rate, 100 * rate_sd));
}

// ---------------------------------------------------------------------
// 9. Micro-oracles: every estimator against an independent brute force.
namespace brute {
double kh(double h, double t, bool gauss) {
  const double u = t / h;
  const double k = gauss ? std::exp(-0.5 * u * u) / std::sqrt(2.0 * M_PI)
                         : (std::fabs(u) <= 1.0 ? 0.75 * (1.0 - u * u) : 0.0);
  return k / h;
}
}  // namespace brute

void criterion9() {
  Rng rng(9001);
  double worst = 0.0;
  for (int instance = 0; instance < 100; ++instance) {
    const bool gauss = instance % 2 == 0;
    const int n = 20 + static_cast<int>(rng.raw() % 60);
    const int d = 1 + static_cast<int>(rng.raw() % 3);
    const double h = 0.15 + 0.5 * rng.uniform();
    RegressionSample s;
    s.responses.resize(n);
    s.designs.resize(n, d);
    for (int i = 0; i < n; ++i) {
      s.sites.emplace_back(i, 0);
      s.responses(i) = 2.0 * rng.normal();
      for (int j = 0; j < d; ++j) s.designs(i, j) = rng.normal();
    }
    const Kernel k{gauss ? KernelFamily::gaussian : KernelFamily::epanechnikov, h};
    const double x = rng.normal();
    const int j = static_cast<int>(rng.raw() % d);

    auto check = [&](double got, long double expect) {
      const double err =
          std::fabs(got - static_cast<double>(expect)) / std::max(1.0, std::fabs((double)expect));
      worst = std::max(worst, err);
    };

    {
      long double acc = 0.0L;
      for (int i = 0; i < n; ++i) acc += brute::kh(h, x - s.designs(i, j), gauss);
      check(density_1d(s, j, k, x), acc / n);
    }
    {
      long double num = 0.0L, den = 0.0L;
      for (int i = 0; i < n; ++i) {
        const long double w = brute::kh(h, x - s.designs(i, j), gauss);
        num += s.responses(i) * w;
        den += w;
      }
      check(nw_regress_1d(s, j, k, x), den == 0.0L ? 0.0L : num / den);
    }
    if (d >= 2) {
      const int l = (j + 1) % d;
      const double xl = rng.normal();
      long double acc = 0.0L;
      for (int i = 0; i < n; ++i)
        acc += static_cast<long double>(brute::kh(h, x - s.designs(i, j), gauss)) *
               brute::kh(h, xl - s.designs(i, l), gauss);
      check(density_2d(s, j, l, k, x, xl), acc / n);

      Eigen::VectorXd xv(d);
      for (int c = 0; c < d; ++c) xv(c) = 0.5 * rng.normal();
      long double num = 0.0L, den = 0.0L;
      for (int i = 0; i < n; ++i) {
        long double w = 1.0L;
        for (int c = 0; c < d; ++c) w *= brute::kh(h, xv(c) - s.designs(i, c), gauss);
        num += s.responses(i) * w;
        den += w;
      }
      check(full_dim_nw(s, k, xv), den == 0.0L ? 0.0L : num / den);
    }
    {
      // restricted variants on the middle half of the data range
      std::vector<Interval> iv;
      for (int c = 0; c < d; ++c) {
        const double lo = s.designs.col(c).minCoeff(), hi = s.designs.col(c).maxCoeff();
        iv.push_back({lo + 0.25 * (hi - lo), hi - 0.25 * (hi - lo)});
      }
      const RestrictedDomain dom(iv);
      const double xj = 0.5 * (iv[j].lo + iv[j].hi);
      long double acc = 0.0L, count = 0.0L;
      for (int i = 0; i < n; ++i) {
        acc += brute::kh(h, xj - s.designs(i, j), gauss);
        if (s.designs(i, j) >= iv[j].lo && s.designs(i, j) <= iv[j].hi) count += 1.0L;
      }
      if (count > 0) check(restricted_density_1d(s, j, k, dom, xj), acc / count);
      if (d >= 2) {
        const int l = (j + 1) % d;
        const double xl2 = 0.5 * (iv[l].lo + iv[l].hi);
        long double acc2 = 0.0L, count2 = 0.0L;
        for (int i = 0; i < n; ++i) {
          acc2 += static_cast<long double>(brute::kh(h, xj - s.designs(i, j), gauss)) *
                  brute::kh(h, xl2 - s.designs(i, l), gauss);
          const bool in_j = s.designs(i, j) >= iv[j].lo && s.designs(i, j) <= iv[j].hi;
          const bool in_l = s.designs(i, l) >= iv[l].lo && s.designs(i, l) <= iv[l].hi;
          if (in_j && in_l) count2 += 1.0L;
        }
        if (count2 > 0) check(restricted_density_2d(s, j, l, k, dom, xj, xl2), acc2 / count2);
      }
    }
  }

  // the goodness-of-fit statistic against an O(N^2) double loop
  const LatticeField f = simulate_autonormal(AutoNormalParams{0, 0.2, 0.25, 1.0}, 20, 20, 9002);
  const AutoNormalParams est = coding_fit(f, false);
  double stat_err = 0.0;
  for (const auto order : {OrderMode::componentwise, OrderMode::lexicographic}) {
    std::vector<double> eps;
    std::vector<std::array<double, 4>> xs;
    for (Eigen::Index u = 1; u + 1 < f.rows(); ++u)
      for (Eigen::Index v = 1; v + 1 < f.cols(); ++v) {
        xs.push_back({f(u - 1, v), f(u, v - 1), f(u + 1, v), f(u, v + 1)});
        eps.push_back(f(u, v) - est.theta1 * (f(u - 1, v) + f(u + 1, v)) -
                      est.theta2 * (f(u, v - 1) + f(u, v + 1)));
      }
    long double sup = 0.0L;
    for (std::size_t k2 = 0; k2 < xs.size(); ++k2) {
      long double sum = 0.0L;
      for (std::size_t j2 = 0; j2 < xs.size(); ++j2) {
        bool le = true;
        if (order == OrderMode::componentwise) {
          for (int c = 0; c < 4; ++c) le = le && xs[j2][c] <= xs[k2][c];
        } else {
          for (int c = 0; c < 4; ++c) {
            if (xs[j2][c] != xs[k2][c]) {
              le = xs[j2][c] < xs[k2][c];
              break;
            }
          }
        }
        if (le) sum += eps[j2];
      }
      sup = std::max(sup, (long double)std::fabs((double)sum));
    }
    const double expect = static_cast<double>(sup) / static_cast<double>(xs.size());
    stat_err = std::max(stat_err, std::fabs(linearity_statistic(f, est, order) - expect));
  }
  worst = std::max(worst, stat_err);
  report(9, worst <= 1e-12,
         fmt("kernel estimators and test statistic vs independent summation, worst rel err %.2e "
             "(tol 1e-12)",
             worst));
}

// ---------------------------------------------------------------------
// 10. Determinism across runs and parallel schedules.
void criterion10() {
  bool pass = true;
  std::string what = "ok";

  const LatticeField u1 = simulate_unilateral(UnilateralModel{}, 15, 17, 42);
  const LatticeField u2 = simulate_unilateral(UnilateralModel{}, 15, 17, 42);
  if (u1.values() != u2.values()) {
    pass = false;
    what = "unilateral simulation differs between runs";
  }
  const AutoNormalParams p{0.0, 0.2, 0.25, 1.0};
  if (simulate_autonormal(p, 13, 13, 7).values() != simulate_autonormal(p, 13, 13, 7).values()) {
    pass = false;
    what = "auto-normal simulation differs between runs";
  }

  {
    LinearityTestOptions opts;
    opts.n_boot = 59;
    opts.seed = 1234;
    opts.with_intercept = false;
    opts.force_unit_variance = true;
    const LatticeField f = simulate_autonormal(p, 18, 18, 99);
    const auto a = linearity_test(f, opts);
    const auto b = linearity_test(f, opts);
    if (a.p_value != b.p_value || a.t_boot != b.t_boot) {
      pass = false;
      what = "linearity test not reproducible";
    }
  }

  {
    const LatticeField f = simulate_unilateral(UnilateralModel{}, 14, 14, 77);
    const RegressionSample s = extract_samples(f, NeighborScheme({{1, 0}, {0, 1}}));
    const auto grids = make_default_grids(s, 0.0, 11);
    CiOptions ci;
    ci.n_boot = 30;
    ci.seed = 7;
    const CiResult a = bootstrap_ci(s, Kernel{KernelFamily::gaussian, 0.4}, grids, {}, ci);
    const CiResult b = bootstrap_ci(s, Kernel{KernelFamily::gaussian, 0.4}, grids, {}, ci);
    for (std::size_t j = 0; j < a.bands.size(); ++j)
      if (a.bands[j].lower != b.bands[j].lower || a.bands[j].upper != b.bands[j].upper) {
        pass = false;
        what = "bootstrap bands not reproducible";
      }
  }

  {
    // identical Monte Carlo statistics for serial and parallel schedules
    Example2TestOptions o;
    o.reps = 24;
    o.n_boot = 39;
    o.seed = 5150;
    o.jobs = 1;
    const auto serial = run_example2_test(o);
    o.jobs = jobs();
    const auto parallel = run_example2_test(o);
    for (int r = 0; r < o.reps; ++r)
      if (serial.reps[r].p_value != parallel.reps[r].p_value) {
        pass = false;
        what = "replicate p-values depend on the job count";
      }

    Example1Options e1;
    e1.reps = 6;
    e1.stride = 8;
    e1.seed = 616;
    e1.jobs = 1;
    const auto s1 = run_example1(e1);
    e1.jobs = jobs();
    const auto s2 = run_example1(e1);
    for (int r = 0; r < e1.reps; ++r)
      if (s1.reps[r].chosen_h != s2.reps[r].chosen_h ||
          s1.reps[r].mean_abs_m3_center != s2.reps[r].mean_abs_m3_center) {
        pass = false;
        what = "bandwidth study depends on the job count";
      }
  }

  report(10, pass, fmt("seeded simulation, bootstrap, and Monte Carlo drivers reproduce "
                       "byte-identically across runs and job counts: %s", what.c_str()));
}

}  // namespace

int main() {
  g_t0 = Clock::now();
  std::printf("acceptance suite (%d worker threads)\n", jobs());
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  const double elapsed = std::chrono::duration<double>(Clock::now() - g_t0).count();
  std::printf("%s: %d failure(s), %.1fs total\n", g_failures == 0 ? "ALL PASS" : "FAILURES",
              g_failures, elapsed);
  return g_failures == 0 ? 0 : 1;
}
