// latadd: additive-approximation toolkit for lattice fields.
//
// Subcommands: simulate, fit, cv, ci, test, reproduce. Structured results
// go to JSON (with the effective configuration echoed, so a report can be
// reproduced byte-for-byte from its own config block); curves and bands
// are optionally exported as CSV for plotting.

#include <CLI11.hpp>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <string>
#include <thread>

#include "latadd/backfit.hpp"
#include "latadd/bandwidth.hpp"
#include "latadd/bootstrap.hpp"
#include "latadd/field_io.hpp"
#include "latadd/kernel.hpp"
#include "latadd/lattice.hpp"
#include "latadd/reproduce.hpp"
#include "latadd/simulate.hpp"
#include "latadd/version.hpp"

using json = nlohmann::ordered_json;
using namespace latadd;

namespace {

// ---------------------------------------------------------------- common

struct InputOptions {
  std::string path;
  std::string format = "auto";  // auto | csv | pgm
  std::string window;           // "u0,v0,rows,cols", 1-based origin
};

struct EstimationOptions {
  std::string offsets = "1,0;0,1;-1,0;0,-1";
  std::string kernel = "gaussian";
  double bandwidth = 0.4;
  int grid_points = 101;
  double trim = 0.0;
  std::optional<double> grid_lower;
  std::optional<double> grid_upper;
  double tolerance = 1e-8;
  int max_cycles = 100;
  bool restricted = false;
  std::string lag_sign = "printed";
};

void add_input_options(CLI::App* cmd, InputOptions& in) {
  cmd->add_option("--input", in.path, "input field (CSV, or PGM by extension)")->required();
  cmd->add_option("--format", in.format, "input format: auto, csv, pgm")
      ->check(CLI::IsMember({"auto", "csv", "pgm"}));
  cmd->add_option("--window", in.window, "sub-window 'u0,v0,rows,cols' (1-based origin)");
}

void add_estimation_options(CLI::App* cmd, EstimationOptions& est) {
  cmd->add_option("--offsets", est.offsets, "neighbour offsets 'du,dv;du,dv;...'");
  cmd->add_option("--kernel", est.kernel, "kernel family")
      ->check(CLI::IsMember({"gaussian", "epanechnikov"}));
  cmd->add_option("--grid-points", est.grid_points, "evaluation grid nodes per component");
  cmd->add_option("--trim", est.trim, "quantile trim for the default grids/domain");
  cmd->add_option("--grid-lower", est.grid_lower, "override: common lower grid bound");
  cmd->add_option("--grid-upper", est.grid_upper, "override: common upper grid bound");
  cmd->add_option("--tolerance", est.tolerance, "backfitting stopping tolerance");
  cmd->add_option("--max-cycles", est.max_cycles, "backfitting cycle limit");
  cmd->add_flag("--restricted", est.restricted, "use the domain-restricted backfitting cycle");
  cmd->add_option("--lag-sign", est.lag_sign,
                  "restricted-cycle sign for pending components: printed or standard")
      ->check(CLI::IsMember({"printed", "standard"}));
}

LatticeField load_field(const InputOptions& in) {
  LatticeField field = in.format == "csv"   ? read_field_csv(in.path)
                       : in.format == "pgm" ? read_field_pgm(in.path)
                                            : read_field_auto(in.path);
  if (in.window.empty()) return field;
  long u0, v0, rows, cols;
  if (std::sscanf(in.window.c_str(), "%ld,%ld,%ld,%ld", &u0, &v0, &rows, &cols) != 4)
    throw std::invalid_argument("window must be 'u0,v0,rows,cols'");
  return field.window(u0 - 1, v0 - 1, rows, cols);
}

std::vector<EvalGrid> build_grids(const RegressionSample& sample, const EstimationOptions& est) {
  if (est.grid_lower && est.grid_upper)
    return std::vector<EvalGrid>(static_cast<std::size_t>(sample.dim()),
                                 EvalGrid(*est.grid_lower, *est.grid_upper, est.grid_points));
  return make_default_grids(sample, est.trim, est.grid_points);
}

BackfitOptions build_backfit_options(const EstimationOptions& est) {
  BackfitOptions opts;
  opts.tolerance = est.tolerance;
  opts.max_cycles = est.max_cycles;
  opts.grid_points = est.grid_points;
  opts.restricted_lag_sign =
      est.lag_sign == "standard" ? LagSign::standard : LagSign::as_printed;
  return opts;
}

json estimation_config(const InputOptions& in, const EstimationOptions& est) {
  json c;
  c["input"] = in.path;
  c["format"] = in.format;
  if (!in.window.empty()) c["window"] = in.window;
  c["offsets"] = est.offsets;
  c["kernel"] = est.kernel;
  c["bandwidth"] = est.bandwidth;
  c["grid_points"] = est.grid_points;
  c["trim"] = est.trim;
  if (est.grid_lower) c["grid_lower"] = *est.grid_lower;
  if (est.grid_upper) c["grid_upper"] = *est.grid_upper;
  c["tolerance"] = est.tolerance;
  c["max_cycles"] = est.max_cycles;
  c["restricted"] = est.restricted;
  c["lag_sign"] = est.lag_sign;
  return c;
}

json report_shell(const std::string& kind) {
  json r;
  r["schema_version"] = schema_version;
  r["kind"] = kind;
  r["tool"] = std::string("latadd ") + version;
  return r;
}

void write_json(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << j.dump(2) << '\n';
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

std::string format_num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_curve_csv(const std::string& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& columns) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
  out << '\n';
  for (std::size_t i = 0; i < columns.front().size(); ++i) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? "," : "") << format_num(columns[c][i]);
    out << '\n';
  }
}

json fit_to_json(const AdditiveFit& fit) {
  json r;
  r["m0"] = fit.m0;
  r["bandwidth"] = fit.bandwidth;
  r["iterations"] = fit.iterations;
  r["converged"] = fit.converged;
  r["final_delta"] = fit.final_delta;
  r["mode"] = fit.mode == FitMode::plain ? "plain" : "restricted";
  r["components"] = json::array();
  for (std::size_t j = 0; j < fit.components.size(); ++j) {
    const auto& c = fit.components[j];
    json cj;
    cj["index"] = j;
    cj["grid"] = {{"lower", c.grid.lower()}, {"upper", c.grid.upper()}, {"points", c.grid.size()}};
    cj["x"] = to_std(c.grid.points());
    cj["values"] = to_std(c.values);
    r["components"].push_back(cj);
  }
  return r;
}

// -------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string model = "autonormal";
  int rows = 20, cols = 20;
  std::uint64_t seed = 0;
  std::string out;
  double theta1 = 0.2, theta2 = 0.25, alpha = 0.0, cond_var = 1.0;
  std::string method = "exact";
  int gibbs_burnin = 200;
  double noise_sd = 1.0;
  int margin = 20;
};

int cmd_simulate(const SimulateArgs& a) {
  LatticeField field = [&] {
    if (a.model == "unilateral") {
      UnilateralModel model;
      model.noise_sd = a.noise_sd;
      model.burn_in = a.margin;
      return simulate_unilateral(model, a.rows, a.cols, a.seed);
    }
    const AutoNormalParams params{a.alpha, a.theta1, a.theta2, a.cond_var};
    const auto method = a.method == "gibbs" ? AutoNormalMethod::gibbs : AutoNormalMethod::exact;
    return simulate_autonormal(params, a.rows, a.cols, a.seed, method, a.gibbs_burnin);
  }();
  write_field_csv(field, a.out);

  json sidecar = report_shell("simulate");
  json c;
  c["model"] = a.model;
  c["rows"] = a.rows;
  c["cols"] = a.cols;
  c["seed"] = a.seed;
  if (a.model == "unilateral") {
    c["noise_sd"] = a.noise_sd;
    c["margin"] = a.margin;
  } else {
    c["theta1"] = a.theta1;
    c["theta2"] = a.theta2;
    c["alpha"] = a.alpha;
    c["cond_var"] = a.cond_var;
    c["method"] = a.method;
    if (a.method == "gibbs") c["gibbs_burnin"] = a.gibbs_burnin;
  }
  c["out"] = a.out;
  sidecar["config"] = c;
  write_json(sidecar, a.out + ".json");
  return 0;
}

// ------------------------------------------------------------------- fit

int cmd_fit(const InputOptions& in, EstimationOptions& est, const std::string& out,
            const std::string& curves) {
  const LatticeField field = load_field(in);
  const NeighborScheme scheme = NeighborScheme::parse(est.offsets);
  const RegressionSample sample = extract_samples(field, scheme);
  const auto grids = build_grids(sample, est);
  const Kernel kernel{parse_kernel_family(est.kernel), est.bandwidth};
  const BackfitOptions opts = build_backfit_options(est);

  AdditiveFit fit;
  if (est.restricted) {
    RestrictedDomain domain =
        (est.grid_lower && est.grid_upper)
            ? RestrictedDomain(std::vector<Interval>(static_cast<std::size_t>(sample.dim()),
                                                     Interval{*est.grid_lower, *est.grid_upper}))
            : default_domain(sample, est.trim);
    fit = backfit_restricted(sample, kernel, domain, grids, opts);
  } else {
    fit = backfit(sample, kernel, grids, opts);
  }

  json report = report_shell("fit");
  report["config"] = estimation_config(in, est);
  report["n_samples"] = sample.size();
  report["result"] = fit_to_json(fit);
  write_json(report, out);

  if (!curves.empty()) {
    for (std::size_t j = 0; j < fit.components.size(); ++j) {
      const auto& c = fit.components[j];
      const std::vector<double> xs = to_std(c.grid.points());
      const std::vector<double> vals = to_std(c.values);
      write_curve_csv(curves + "_m" + std::to_string(j + 1) + ".csv", {"x", "value"}, {xs, vals});
    }
  }
  return 0;
}

// -------------------------------------------------------------------- cv

int cmd_cv(const InputOptions& in, EstimationOptions& est, const std::string& candidates_text,
           int stride, const std::string& out) {
  const LatticeField field = load_field(in);
  const RegressionSample sample = extract_samples(field, NeighborScheme::parse(est.offsets));
  const auto grids = build_grids(sample, est);
  const BackfitOptions opts = build_backfit_options(est);

  std::vector<double> candidates;
  if (!candidates_text.empty()) {
    std::stringstream ss(candidates_text);
    std::string tok;
    while (std::getline(ss, tok, ',')) candidates.push_back(std::stod(tok));
  } else {
    candidates = default_candidates(sample);
  }
  const CvResult cv =
      select_bandwidth(sample, parse_kernel_family(est.kernel), candidates, grids, opts, stride);

  json report = report_shell("cv");
  json c = estimation_config(in, est);
  c.erase("bandwidth");
  c["stride"] = stride;
  c["candidates"] = cv.candidates;
  report["config"] = c;
  report["result"] = {{"scores", cv.scores}, {"chosen", cv.chosen}};
  write_json(report, out);
  return 0;
}

// -------------------------------------------------------------------- ci

int cmd_ci(const InputOptions& in, EstimationOptions& est, CiOptions ci,
           const std::string& multiplier, const std::string& width, const std::string& out,
           const std::string& bands_prefix) {
  const LatticeField field = load_field(in);
  const RegressionSample sample = extract_samples(field, NeighborScheme::parse(est.offsets));
  const auto grids = build_grids(sample, est);
  const Kernel kernel{parse_kernel_family(est.kernel), est.bandwidth};
  ci.multiplier = multiplier == "rademacher" ? Multiplier::rademacher : Multiplier::normal;
  ci.width = width == "sd" ? WidthEstimator::sample_sd : WidthEstimator::deviation_rms;

  const CiResult res = bootstrap_ci(sample, kernel, grids, build_backfit_options(est), ci);

  json report = report_shell("ci");
  json c = estimation_config(in, est);
  c["level"] = ci.level;
  c["n_boot"] = ci.n_boot;
  c["seed"] = ci.seed;
  c["multiplier"] = multiplier;
  c["width"] = width;
  report["config"] = c;
  report["fit"] = fit_to_json(res.fit);
  report["n_dropped"] = res.n_dropped;
  report["bands"] = json::array();
  for (const auto& band : res.bands) {
    json bj;
    bj["component"] = band.component;
    bj["level"] = band.level;
    bj["n_boot"] = band.n_boot;
    bj["x"] = to_std(band.grid.points());
    bj["lower"] = to_std(band.lower);
    bj["center"] = to_std(band.center);
    bj["upper"] = to_std(band.upper);
    report["bands"].push_back(bj);
  }
  write_json(report, out);

  if (!bands_prefix.empty()) {
    for (const auto& band : res.bands) {
      write_curve_csv(bands_prefix + "_m" + std::to_string(band.component + 1) + ".csv",
                      {"x", "lower", "center", "upper"},
                      {to_std(band.grid.points()), to_std(band.lower), to_std(band.center),
                       to_std(band.upper)});
    }
  }
  return 0;
}

// ------------------------------------------------------------------ test

int cmd_test(const InputOptions& in, LinearityTestOptions opts, const std::string& order,
             bool no_intercept, bool unit_variance, const std::string& out) {
  const LatticeField field = load_field(in);
  opts.order = order == "lexicographic" ? OrderMode::lexicographic : OrderMode::componentwise;
  opts.with_intercept = !no_intercept;
  opts.force_unit_variance = unit_variance;
  const LinearityTestResult res = linearity_test(field, opts);

  json report = report_shell("test");
  json c;
  c["input"] = in.path;
  if (!in.window.empty()) c["window"] = in.window;
  c["n_boot"] = opts.n_boot;
  c["seed"] = opts.seed;
  c["order"] = order;
  c["intercept"] = opts.with_intercept;
  c["unit_variance"] = unit_variance;
  report["config"] = c;
  report["result"] = {{"t_observed", res.t_observed},
                      {"p_value", res.p_value},
                      {"fitted",
                       {{"alpha", res.fitted.alpha},
                        {"theta1", res.fitted.theta1},
                        {"theta2", res.fitted.theta2},
                        {"cond_var", res.fitted.cond_var}}},
                      {"t_boot", res.t_boot}};
  write_json(report, out);
  return 0;
}

// ------------------------------------------------------------- reproduce

int cmd_reproduce(const std::string& experiment, int reps, int boot, int stride,
                  std::uint64_t seed, int jobs_opt, const std::string& out,
                  const std::string& per_rep) {
  json report = report_shell("reproduce");
  json rows = json::array();
  json summary;
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  if (experiment == "example1") {
    Example1Options o;
    if (reps > 0) o.reps = reps;
    if (stride > 0) o.stride = stride;
    o.seed = seed;
    o.jobs = jobs_opt;
    const Example1Summary s = run_example1(o);
    for (const auto& rep : s.reps)
      rows.push_back({{"ok", rep.ok},
                      {"chosen_h", rep.chosen_h},
                      {"mean_abs_m3_center", rep.mean_abs_m3_center}});
    summary = {{"mean_h", s.mean_h},
               {"var_h", s.var_h},
               {"mean_abs_m3", s.mean_abs_m3},
               {"failed", s.failed}};
    report["config"] = {{"experiment", experiment}, {"reps", s.options.reps},
                        {"rows", s.options.rows},  {"cols", s.options.cols},
                        {"stride", s.options.stride}, {"grid_points", s.options.grid_points},
                        {"candidates", s.options.candidates}, {"seed", seed},
                        {"jobs", jobs_opt}};
    header = {"chosen_h", "mean_abs_m3_center"};
    columns.resize(2);
    for (const auto& rep : s.reps) {
      columns[0].push_back(rep.chosen_h);
      columns[1].push_back(rep.mean_abs_m3_center);
    }
  } else if (experiment == "example2-curves") {
    Example2CurvesOptions o;
    if (reps > 0) o.reps = reps;
    o.seed = seed;
    o.jobs = jobs_opt;
    const Example2CurvesSummary s = run_example2_curves(o);
    for (const auto& rep : s.reps)
      rows.push_back({{"ok", rep.ok}, {"slopes", rep.slopes}});
    summary = {{"mean_slopes", s.mean_slopes}, {"target", s.target}, {"failed", s.failed}};
    report["config"] = {{"experiment", experiment},
                        {"reps", s.options.reps},
                        {"rows", s.options.rows},
                        {"cols", s.options.cols},
                        {"theta1", s.options.theta1},
                        {"theta2", s.options.theta2},
                        {"bandwidth", s.options.bandwidth},
                        {"grid_points", s.options.grid_points},
                        {"seed", seed},
                        {"jobs", jobs_opt}};
    header = {"slope_m1", "slope_m2", "slope_m3", "slope_m4"};
    columns.resize(4);
    for (const auto& rep : s.reps)
      for (int j = 0; j < 4; ++j) columns[static_cast<std::size_t>(j)].push_back(rep.slopes[static_cast<std::size_t>(j)]);
  } else if (experiment == "example2-test") {
    Example2TestOptions o;
    if (reps > 0) o.reps = reps;
    if (boot > 0) o.n_boot = boot;
    o.seed = seed;
    o.jobs = jobs_opt;
    const Example2TestSummary s = run_example2_test(o);
    for (const auto& rep : s.reps)
      rows.push_back({{"ok", rep.ok}, {"p_value", rep.p_value}, {"t_observed", rep.t_observed}});
    summary = {{"reject_10", s.reject_10}, {"reject_05", s.reject_05}, {"failed", s.failed}};
    report["config"] = {{"experiment", experiment}, {"reps", s.options.reps},
                        {"rows", s.options.rows},  {"cols", s.options.cols},
                        {"n_boot", s.options.n_boot}, {"seed", seed},
                        {"jobs", jobs_opt}};
    header = {"p_value", "t_observed"};
    columns.resize(2);
    for (const auto& rep : s.reps) {
      columns[0].push_back(rep.p_value);
      columns[1].push_back(rep.t_observed);
    }
  } else {
    throw std::invalid_argument("unknown experiment: " + experiment);
  }

  report["summary"] = summary;
  report["replications"] = rows;
  write_json(report, out);
  if (!per_rep.empty()) write_curve_csv(per_rep, header, columns);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"additive approximation of lattice conditional means"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(version));

  // simulate
  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "draw a field from a built-in model");
  c_sim->add_option("--model", sim.model, "unilateral or autonormal")
      ->check(CLI::IsMember({"unilateral", "autonormal"}));
  c_sim->add_option("--rows", sim.rows)->required();
  c_sim->add_option("--cols", sim.cols)->required();
  c_sim->add_option("--seed", sim.seed, "RNG seed");
  c_sim->add_option("--out", sim.out, "output CSV path (sidecar JSON at <out>.json)")->required();
  c_sim->add_option("--theta1", sim.theta1, "vertical-neighbour coefficient");
  c_sim->add_option("--theta2", sim.theta2, "horizontal-neighbour coefficient");
  c_sim->add_option("--alpha", sim.alpha, "mean level");
  c_sim->add_option("--cond-var", sim.cond_var, "conditional variance");
  c_sim->add_option("--method", sim.method, "autonormal sampler: exact or gibbs")
      ->check(CLI::IsMember({"exact", "gibbs"}));
  c_sim->add_option("--gibbs-burnin", sim.gibbs_burnin, "gibbs burn-in sweeps");
  c_sim->add_option("--noise-sd", sim.noise_sd, "unilateral innovation sd");
  c_sim->add_option("--margin", sim.margin, "unilateral burn-in margin (discarded)");

  // fit
  InputOptions fit_in;
  EstimationOptions fit_est;
  std::string fit_out, fit_curves;
  auto* c_fit = app.add_subcommand("fit", "fit the additive approximation");
  add_input_options(c_fit, fit_in);
  add_estimation_options(c_fit, fit_est);
  c_fit->add_option("--bandwidth", fit_est.bandwidth, "kernel bandwidth")->required();
  c_fit->add_option("--out", fit_out, "JSON report path")->required();
  c_fit->add_option("--curves", fit_curves, "prefix for per-component CSV curves");

  // cv
  InputOptions cv_in;
  EstimationOptions cv_est;
  std::string cv_out, cv_candidates;
  int cv_stride = 1;
  auto* c_cv = app.add_subcommand("cv", "leave-one-out bandwidth selection");
  add_input_options(c_cv, cv_in);
  add_estimation_options(c_cv, cv_est);
  c_cv->add_option("--candidates", cv_candidates, "comma-separated bandwidths (default: rule of thumb)");
  c_cv->add_option("--stride", cv_stride, "hold out every stride-th observation");
  c_cv->add_option("--out", cv_out, "JSON report path")->required();

  // ci
  InputOptions ci_in;
  EstimationOptions ci_est;
  CiOptions ci_opts;
  std::string ci_out, ci_bands, ci_mult = "normal", ci_width = "rms";
  auto* c_ci = app.add_subcommand("ci", "wild-bootstrap pointwise confidence bands");
  add_input_options(c_ci, ci_in);
  add_estimation_options(c_ci, ci_est);
  c_ci->add_option("--bandwidth", ci_est.bandwidth, "kernel bandwidth")->required();
  c_ci->add_option("--level", ci_opts.level, "band level in (0,1)");
  c_ci->add_option("--boot", ci_opts.n_boot, "bootstrap replicates");
  c_ci->add_option("--seed", ci_opts.seed, "RNG seed");
  c_ci->add_option("--multiplier", ci_mult, "wild multiplier: normal or rademacher")
      ->check(CLI::IsMember({"normal", "rademacher"}));
  c_ci->add_option("--width", ci_width, "half-width estimator: rms or sd")
      ->check(CLI::IsMember({"rms", "sd"}));
  c_ci->add_option("--out", ci_out, "JSON report path")->required();
  c_ci->add_option("--bands", ci_bands, "prefix for per-component band CSVs");

  // test
  InputOptions test_in;
  LinearityTestOptions test_opts;
  std::string test_out, test_order = "componentwise";
  bool test_no_intercept = false, test_unit_variance = false;
  auto* c_test = app.add_subcommand("test", "parametric-bootstrap linearity test");
  add_input_options(c_test, test_in);
  c_test->add_option("--boot", test_opts.n_boot, "bootstrap replicates (>= 19)");
  c_test->add_option("--seed", test_opts.seed, "RNG seed");
  c_test->add_option("--order", test_order, "neighbour-vector order: componentwise or lexicographic")
      ->check(CLI::IsMember({"componentwise", "lexicographic"}));
  c_test->add_flag("--no-intercept", test_no_intercept, "fit without a mean level");
  c_test->add_flag("--unit-variance", test_unit_variance,
                   "simulate null fields with conditional variance 1");
  c_test->add_option("--out", test_out, "JSON report path")->required();

  // reproduce
  std::string rep_experiment, rep_out, rep_csv;
  int rep_reps = 0, rep_boot = 0, rep_stride = 0;
  std::uint64_t rep_seed = 0;
  int rep_jobs = static_cast<int>(std::thread::hardware_concurrency());
  auto* c_rep = app.add_subcommand("reproduce", "run a canned Monte Carlo study");
  c_rep->add_option("--experiment", rep_experiment,
                    "example1, example2-curves, or example2-test")
      ->required()
      ->check(CLI::IsMember({"example1", "example2-curves", "example2-test"}));
  c_rep->add_option("--reps", rep_reps, "Monte Carlo replications (0 = default)");
  c_rep->add_option("--boot", rep_boot, "bootstrap replicates per test (example2-test)");
  c_rep->add_option("--stride", rep_stride, "cross-validation stride (example1)");
  c_rep->add_option("--seed", rep_seed, "master seed");
  c_rep->add_option("--jobs", rep_jobs, "parallel workers");
  c_rep->add_option("--out", rep_out, "summary JSON path")->required();
  c_rep->add_option("--per-rep", rep_csv, "optional per-replication CSV path");

  try {
    app.parse(argc, argv);
    if (*c_sim) return cmd_simulate(sim);
    if (*c_fit) return cmd_fit(fit_in, fit_est, fit_out, fit_curves);
    if (*c_cv) return cmd_cv(cv_in, cv_est, cv_candidates, cv_stride, cv_out);
    if (*c_ci) return cmd_ci(ci_in, ci_est, ci_opts, ci_mult, ci_width, ci_out, ci_bands);
    if (*c_test)
      return cmd_test(test_in, test_opts, test_order, test_no_intercept, test_unit_variance,
                      test_out);
    if (*c_rep)
      return cmd_reproduce(rep_experiment, rep_reps, rep_boot, rep_stride, rep_seed, rep_jobs,
                           rep_out, rep_csv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    json err;
    err["error"] = {{"message", e.what()}};
    std::fprintf(stderr, "%s\n", err.dump().c_str());
    return 1;
  }
  return 0;
}
