#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "latadd/backfit.hpp"
#include "latadd/bandwidth.hpp"
#include "latadd/bootstrap.hpp"
#include "latadd/field_io.hpp"
#include "latadd/kernel.hpp"
#include "latadd/lattice.hpp"
#include "latadd/simulate.hpp"
#include "latadd/version.hpp"

namespace py = pybind11;
using namespace latadd;

namespace {

Kernel make_kernel(const std::string& family, double bandwidth) {
  Kernel k{parse_kernel_family(family), bandwidth};
  k.validate();
  return k;
}

NeighborScheme make_scheme(const py::object& spec) {
  if (py::isinstance<py::str>(spec)) return NeighborScheme::parse(spec.cast<std::string>());
  std::vector<Offset> offsets;
  for (const auto& item : spec.cast<py::sequence>()) {
    const auto pair = item.cast<std::pair<int, int>>();
    offsets.push_back({pair.first, pair.second});
  }
  return NeighborScheme(offsets);
}

LagSign parse_lag_sign(const std::string& s) {
  if (s == "printed") return LagSign::as_printed;
  if (s == "standard") return LagSign::standard;
  throw std::invalid_argument("lag_sign must be 'printed' or 'standard'");
}

BackfitOptions make_options(double tolerance, int max_cycles, const std::string& lag_sign) {
  BackfitOptions opts;
  opts.tolerance = tolerance;
  opts.max_cycles = max_cycles;
  opts.restricted_lag_sign = parse_lag_sign(lag_sign);
  return opts;
}

std::vector<EvalGrid> resolve_grids(const RegressionSample& sample,
                                    const std::optional<std::vector<std::tuple<double, double, int>>>& spec,
                                    double trim, int grid_points) {
  if (!spec) return make_default_grids(sample, trim, grid_points);
  std::vector<EvalGrid> grids;
  for (const auto& [lo, hi, n] : *spec) grids.emplace_back(lo, hi, n);
  return grids;
}

}  // namespace

PYBIND11_MODULE(_latadd, m) {
  m.doc() = "additive approximation of lattice conditional means";
  m.attr("__version__") = version;

  py::class_<LatticeField>(m, "LatticeField")
      .def(py::init<Eigen::MatrixXd>(), py::arg("values"))
      .def_property_readonly("values", &LatticeField::values)
      .def_property_readonly("shape",
                             [](const LatticeField& f) {
                               return std::make_pair(f.rows(), f.cols());
                             })
      .def("window", &LatticeField::window, py::arg("u0"), py::arg("v0"), py::arg("rows"),
           py::arg("cols"))
      .def("__repr__", [](const LatticeField& f) {
        return "LatticeField(" + std::to_string(f.rows()) + "x" + std::to_string(f.cols()) + ")";
      });

  py::class_<RegressionSample>(m, "RegressionSample")
      .def_readonly("responses", &RegressionSample::responses)
      .def_readonly("designs", &RegressionSample::designs)
      .def_readonly("sites", &RegressionSample::sites)
      .def_property_readonly("dim", &RegressionSample::dim)
      .def("__len__", &RegressionSample::size);

  py::class_<EvalGrid>(m, "EvalGrid")
      .def(py::init<double, double, int>(), py::arg("lower"), py::arg("upper"), py::arg("n_points"))
      .def_property_readonly("lower", &EvalGrid::lower)
      .def_property_readonly("upper", &EvalGrid::upper)
      .def_property_readonly("n_points", &EvalGrid::size)
      .def_property_readonly("points", &EvalGrid::points);

  py::class_<ComponentFunction>(m, "ComponentFunction")
      .def_readonly("grid", &ComponentFunction::grid)
      .def_readonly("values", &ComponentFunction::values)
      .def("__call__", &ComponentFunction::interpolate, py::arg("x"));

  py::class_<AdditiveFit>(m, "AdditiveFit")
      .def_readonly("m0", &AdditiveFit::m0)
      .def_readonly("components", &AdditiveFit::components)
      .def_readonly("bandwidth", &AdditiveFit::bandwidth)
      .def_readonly("iterations", &AdditiveFit::iterations)
      .def_readonly("final_delta", &AdditiveFit::final_delta)
      .def_readonly("converged", &AdditiveFit::converged)
      .def_readonly("cycle_deltas", &AdditiveFit::cycle_deltas)
      .def_property_readonly("mode",
                             [](const AdditiveFit& f) {
                               return f.mode == FitMode::plain ? "plain" : "restricted";
                             })
      .def("evaluate", [](const AdditiveFit& f, const Eigen::VectorXd& x) {
        return evaluate_fit(f, x);
      });

  py::class_<AutoNormalParams>(m, "AutoNormalParams")
      .def(py::init([](double alpha, double theta1, double theta2, double cond_var) {
             return AutoNormalParams{alpha, theta1, theta2, cond_var};
           }),
           py::arg("alpha") = 0.0, py::arg("theta1") = 0.0, py::arg("theta2") = 0.0,
           py::arg("cond_var") = 1.0)
      .def_readwrite("alpha", &AutoNormalParams::alpha)
      .def_readwrite("theta1", &AutoNormalParams::theta1)
      .def_readwrite("theta2", &AutoNormalParams::theta2)
      .def_readwrite("cond_var", &AutoNormalParams::cond_var)
      .def("__repr__", [](const AutoNormalParams& p) {
        return "AutoNormalParams(alpha=" + std::to_string(p.alpha) +
               ", theta1=" + std::to_string(p.theta1) + ", theta2=" + std::to_string(p.theta2) +
               ", cond_var=" + std::to_string(p.cond_var) + ")";
      });

  py::class_<ConfidenceBand>(m, "ConfidenceBand")
      .def_readonly("component", &ConfidenceBand::component)
      .def_readonly("grid", &ConfidenceBand::grid)
      .def_readonly("center", &ConfidenceBand::center)
      .def_readonly("lower", &ConfidenceBand::lower)
      .def_readonly("upper", &ConfidenceBand::upper)
      .def_readonly("level", &ConfidenceBand::level)
      .def_readonly("n_boot", &ConfidenceBand::n_boot);

  py::class_<CiResult>(m, "CiResult")
      .def_readonly("fit", &CiResult::fit)
      .def_readonly("bands", &CiResult::bands)
      .def_readonly("n_dropped", &CiResult::n_dropped);

  py::class_<LinearityTestResult>(m, "LinearityTestResult")
      .def_readonly("t_observed", &LinearityTestResult::t_observed)
      .def_readonly("t_boot", &LinearityTestResult::t_boot)
      .def_readonly("p_value", &LinearityTestResult::p_value)
      .def_readonly("fitted", &LinearityTestResult::fitted);

  py::class_<CvResult>(m, "CvResult")
      .def_readonly("candidates", &CvResult::candidates)
      .def_readonly("scores", &CvResult::scores)
      .def_readonly("chosen", &CvResult::chosen);

  m.def(
      "extract_samples",
      [](const LatticeField& field, const py::object& scheme) {
        return extract_samples(field, make_scheme(scheme));
      },
      py::arg("field"), py::arg("offsets"),
      "One (response, neighbour-design) row per site whose whole neighbourhood exists.");

  m.def(
      "kernel_value",
      [](const std::string& family, double t) { return kernel_value(make_kernel(family, 1.0), t); },
      py::arg("family"), py::arg("t"));
  m.def(
      "kh_value",
      [](const std::string& family, double bandwidth, double t) {
        return kh_value(make_kernel(family, bandwidth), t);
      },
      py::arg("family"), py::arg("bandwidth"), py::arg("t"));
  m.def(
      "density_1d",
      [](const RegressionSample& s, int j, const std::string& family, double bandwidth, double x) {
        return density_1d(s, j, make_kernel(family, bandwidth), x);
      },
      py::arg("sample"), py::arg("j"), py::arg("family"), py::arg("bandwidth"), py::arg("x"));
  m.def(
      "nw_regress_1d",
      [](const RegressionSample& s, int j, const std::string& family, double bandwidth, double x) {
        return nw_regress_1d(s, j, make_kernel(family, bandwidth), x);
      },
      py::arg("sample"), py::arg("j"), py::arg("family"), py::arg("bandwidth"), py::arg("x"));

  m.def(
      "backfit",
      [](const RegressionSample& sample, double bandwidth, const std::string& kernel,
         const std::optional<std::vector<std::tuple<double, double, int>>>& grids, double trim,
         int grid_points, double tolerance, int max_cycles, bool restricted,
         const std::string& lag_sign) {
        const Kernel k = make_kernel(kernel, bandwidth);
        const auto gs = resolve_grids(sample, grids, trim, grid_points);
        const BackfitOptions opts = make_options(tolerance, max_cycles, lag_sign);
        if (restricted)
          return backfit_restricted(sample, k, default_domain(sample, trim), gs, opts);
        return backfit(sample, k, gs, opts);
      },
      py::arg("sample"), py::arg("bandwidth"), py::arg("kernel") = "gaussian",
      py::arg("grids") = std::nullopt, py::arg("trim") = 0.0, py::arg("grid_points") = 101,
      py::arg("tolerance") = 1e-8, py::arg("max_cycles") = 100, py::arg("restricted") = false,
      py::arg("lag_sign") = "printed",
      "Smooth backfitting fit of the additive approximation. `grids` is an optional list of "
      "(lower, upper, n_points) triples, one per component.");

  m.def(
      "direct_additive_oracle",
      [](const RegressionSample& sample, double bandwidth, const std::string& kernel,
         const std::optional<std::vector<std::tuple<double, double, int>>>& grids, double trim,
         int grid_points) {
        return direct_additive_oracle(sample, make_kernel(kernel, bandwidth),
                                      resolve_grids(sample, grids, trim, grid_points));
      },
      py::arg("sample"), py::arg("bandwidth"), py::arg("kernel") = "gaussian",
      py::arg("grids") = std::nullopt, py::arg("trim") = 0.0, py::arg("grid_points") = 15);

  m.def(
      "select_bandwidth",
      [](const RegressionSample& sample, const std::vector<double>& candidates,
         const std::string& kernel, int stride, double trim, int grid_points, double tolerance,
         int max_cycles) {
        const auto grids = make_default_grids(sample, trim, grid_points);
        return select_bandwidth(sample, parse_kernel_family(kernel), candidates, grids,
                                make_options(tolerance, max_cycles, "printed"), stride);
      },
      py::arg("sample"), py::arg("candidates"), py::arg("kernel") = "gaussian",
      py::arg("stride") = 1, py::arg("trim") = 0.0, py::arg("grid_points") = 101,
      py::arg("tolerance") = 1e-8, py::arg("max_cycles") = 100,
      "Leave-one-out cross-validation over the candidate bandwidths.");

  m.def(
      "bootstrap_ci",
      [](const RegressionSample& sample, double bandwidth, const std::string& kernel, double level,
         int n_boot, std::uint64_t seed, const std::string& multiplier, const std::string& width,
         const std::optional<std::vector<std::tuple<double, double, int>>>& grids, double trim,
         int grid_points, double tolerance, int max_cycles) {
        CiOptions ci;
        ci.level = level;
        ci.n_boot = n_boot;
        ci.seed = seed;
        ci.multiplier = multiplier == "rademacher" ? Multiplier::rademacher : Multiplier::normal;
        ci.width = width == "sd" ? WidthEstimator::sample_sd : WidthEstimator::deviation_rms;
        return bootstrap_ci(sample, make_kernel(kernel, bandwidth),
                            resolve_grids(sample, grids, trim, grid_points),
                            make_options(tolerance, max_cycles, "printed"), ci);
      },
      py::arg("sample"), py::arg("bandwidth"), py::arg("kernel") = "gaussian",
      py::arg("level") = 0.95, py::arg("n_boot") = 100, py::arg("seed") = 0,
      py::arg("multiplier") = "normal", py::arg("width") = "rms", py::arg("grids") = std::nullopt,
      py::arg("trim") = 0.0, py::arg("grid_points") = 101, py::arg("tolerance") = 1e-8,
      py::arg("max_cycles") = 100,
      "Wild-bootstrap pointwise confidence bands for every component.");

  m.def(
      "wild_resample",
      [](const RegressionSample& sample, const AdditiveFit& fit, std::uint64_t seed,
         const std::string& multiplier) {
        return wild_resample(sample, fit, seed,
                             multiplier == "rademacher" ? Multiplier::rademacher
                                                        : Multiplier::normal);
      },
      py::arg("sample"), py::arg("fit"), py::arg("seed"), py::arg("multiplier") = "normal");

  m.def(
      "linearity_statistic",
      [](const LatticeField& field, const AutoNormalParams& params, const std::string& order) {
        return linearity_statistic(field, params,
                                   order == "lexicographic" ? OrderMode::lexicographic
                                                            : OrderMode::componentwise);
      },
      py::arg("field"), py::arg("params"), py::arg("order") = "componentwise");

  m.def(
      "linearity_test",
      [](const LatticeField& field, int n_boot, std::uint64_t seed, const std::string& order,
         bool with_intercept, bool force_unit_variance) {
        LinearityTestOptions opts;
        opts.n_boot = n_boot;
        opts.seed = seed;
        opts.order =
            order == "lexicographic" ? OrderMode::lexicographic : OrderMode::componentwise;
        opts.with_intercept = with_intercept;
        opts.force_unit_variance = force_unit_variance;
        return linearity_test(field, opts);
      },
      py::arg("field"), py::arg("n_boot") = 199, py::arg("seed") = 0,
      py::arg("order") = "componentwise", py::arg("with_intercept") = true,
      py::arg("force_unit_variance") = false,
      "Parametric-bootstrap test of the auto-normal conditional-mean form.");

  m.def(
      "simulate_unilateral",
      [](int rows, int cols, std::uint64_t seed, double noise_sd, int burn_in) {
        UnilateralModel model;
        model.noise_sd = noise_sd;
        model.burn_in = burn_in;
        return simulate_unilateral(model, rows, cols, seed);
      },
      py::arg("rows"), py::arg("cols"), py::arg("seed") = 0, py::arg("noise_sd") = 1.0,
      py::arg("burn_in") = 20,
      "Unilateral sin/cos recursion with Gaussian innovations.");

  m.def(
      "simulate_autonormal",
      [](const AutoNormalParams& params, int rows, int cols, std::uint64_t seed,
         const std::string& method, int gibbs_burnin) {
        return simulate_autonormal(params, rows, cols, seed,
                                   method == "gibbs" ? AutoNormalMethod::gibbs
                                                     : AutoNormalMethod::exact,
                                   gibbs_burnin);
      },
      py::arg("params"), py::arg("rows"), py::arg("cols"), py::arg("seed") = 0,
      py::arg("method") = "exact", py::arg("gibbs_burnin") = 200);

  m.def(
      "coding_fit",
      [](const LatticeField& field, bool with_intercept, const std::string& combine) {
        return coding_fit(field, with_intercept,
                          combine == "stacked" ? CodingCombine::stacked : CodingCombine::average);
      },
      py::arg("field"), py::arg("with_intercept") = true, py::arg("combine") = "average",
      "Coding-method estimate of the auto-normal parameters.");

  m.def("read_field_csv", [](const std::string& path) { return read_field_csv(path); },
        py::arg("path"));
  m.def("write_field_csv",
        [](const LatticeField& field, const std::string& path) { write_field_csv(field, path); },
        py::arg("field"), py::arg("path"));
  m.def("read_field_pgm", [](const std::string& path) { return read_field_pgm(path); },
        py::arg("path"));
}
