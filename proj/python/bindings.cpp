#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "vclda/benchmark.hpp"
#include "vclda/classify.hpp"
#include "vclda/csv.hpp"
#include "vclda/errors.hpp"
#include "vclda/select.hpp"
#include "vclda/simulate.hpp"

namespace py = pybind11;
using namespace vclda;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Varying-coefficient linear discriminant analysis";

  py::register_exception<DimensionError>(m, "DimensionError",
                                         PyExc_ValueError);
  py::register_exception<SingularError>(m, "SingularError",
                                        PyExc_ArithmeticError);
  py::register_exception<DegenerateScaleError>(m, "DegenerateScaleError",
                                               PyExc_ArithmeticError);
  py::register_exception<ZeroDirectionError>(m, "ZeroDirectionError",
                                             PyExc_ArithmeticError);
  py::register_exception<InfeasibleGridError>(m, "InfeasibleGridError",
                                              PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<PriorMode>(m, "PriorMode")
      .value("EQUAL", PriorMode::kEqual)
      .value("ESTIMATED", PriorMode::kEstimated);

  py::enum_<Regime>(m, "Regime")
      .value("LOW_DIM", Regime::kLowDim)
      .value("HIGH_DIM", Regime::kHighDim);

  py::class_<SplineBasis>(m, "SplineBasis")
      .def(py::init<int, int>(), py::arg("degree"), py::arg("num_basis"))
      .def_property_readonly("degree", &SplineBasis::degree)
      .def_property_readonly("num_basis", &SplineBasis::num_basis)
      .def_property_readonly("knots", &SplineBasis::knots)
      .def("eval_unscaled", &SplineBasis::eval_unscaled, py::arg("u"))
      .def("eval_scaled", &SplineBasis::eval_scaled, py::arg("u"));

  py::class_<MeanModel>(m, "MeanModel")
      .def_property_readonly("basis", &MeanModel::basis)
      .def_property_readonly("coeffs_class1", &MeanModel::coeffs_class1)
      .def_property_readonly("coeffs_class0", &MeanModel::coeffs_class0)
      .def_property_readonly("prior_class1", &MeanModel::prior_class1)
      .def_property_readonly("feature_count", &MeanModel::feature_count)
      .def("class_mean", &MeanModel::class_mean, py::arg("u"),
           py::arg("label"))
      .def("pooled_mean", &MeanModel::pooled_mean, py::arg("u"),
           py::arg("mode") = PriorMode::kEqual);

  m.def("fit_mean_model", &fit_mean_model, py::arg("X"), py::arg("U"),
        py::arg("Y"), py::arg("basis"));

  py::class_<DesignSystem>(m, "DesignSystem")
      .def_readonly("dn", &DesignSystem::dn)
      .def_readonly("bn", &DesignSystem::bn)
      .def_readonly("p", &DesignSystem::p)
      .def_readonly("ln", &DesignSystem::ln)
      .def_readonly("n_samples", &DesignSystem::n_samples);

  m.def("pseudo_response", &pseudo_response, py::arg("Y"), py::arg("mode"),
        py::arg("prior_class1") = 0.5);
  m.def("assemble", &assemble, py::arg("X"), py::arg("U"), py::arg("Z"),
        py::arg("mean_model"), py::arg("mode") = PriorMode::kEqual);

  py::class_<GammaCoefficients>(m, "GammaCoefficients")
      .def(py::init([](const Eigen::VectorXd& values, int p, int ln) {
             if (values.size() != static_cast<Eigen::Index>(p) * ln) {
               throw DimensionError("values must have length p*ln");
             }
             return GammaCoefficients{values, p, ln};
           }),
           py::arg("values"), py::arg("p"), py::arg("ln"))
      .def_readonly("values", &GammaCoefficients::values)
      .def_readonly("p", &GammaCoefficients::p)
      .def_readonly("ln", &GammaCoefficients::ln)
      .def("group",
           [](const GammaCoefficients& g, int j) -> Eigen::VectorXd {
             if (j < 0 || j >= g.p) throw DimensionError("group out of range");
             return g.group(j);
           },
           py::arg("j"));

  py::class_<IstaOptions>(m, "IstaOptions")
      .def(py::init<>())
      .def_readwrite("max_iters", &IstaOptions::max_iters)
      .def_readwrite("rel_tol", &IstaOptions::rel_tol)
      .def_readwrite("kkt_tol", &IstaOptions::kkt_tol)
      .def_readwrite("shrink_rate", &IstaOptions::shrink_rate)
      .def_readwrite("initial_step", &IstaOptions::initial_step);

  py::class_<IstaResult>(m, "IstaResult")
      .def_readonly("gamma", &IstaResult::gamma)
      .def_readonly("iterations", &IstaResult::iterations)
      .def_readonly("objective", &IstaResult::objective)
      .def_readonly("converged", &IstaResult::converged);

  m.def("solve_closed_form", &solve_closed_form, py::arg("system"));
  m.def("objective", &objective, py::arg("gamma"), py::arg("system"),
        py::arg("lam"));
  m.def("smooth_gradient", &smooth_gradient, py::arg("gamma"),
        py::arg("system"));
  m.def("group_soft_threshold", &group_soft_threshold, py::arg("v"),
        py::arg("t"));
  m.def(
      "ista_solve",
      [](const DesignSystem& sys, double lam, const IstaOptions& opts,
         const GammaCoefficients* warm) {
        return ista_solve(sys, lam, opts, warm);
      },
      py::arg("system"), py::arg("lam"), py::arg("options") = IstaOptions{},
      py::arg("warm_start") = nullptr);
  m.def("support", &support, py::arg("gamma"), py::arg("tol") = 1e-12);
  m.def("lambda_max", &lambda_max, py::arg("system"));
  m.def("kkt_residual", &kkt_residual, py::arg("gamma"), py::arg("system"),
        py::arg("lam"));

  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def("bayes_risk", &bayes_risk, py::arg("delta"));

  py::class_<ClassifierModel>(m, "ClassifierModel")
      .def(py::init<MeanModel, GammaCoefficients, PriorMode>(),
           py::arg("mean_model"), py::arg("gamma"),
           py::arg("mode") = PriorMode::kEqual)
      .def_property_readonly("mean_model", &ClassifierModel::mean_model)
      .def_property_readonly("gamma", &ClassifierModel::gamma)
      .def_property_readonly("mode", &ClassifierModel::mode)
      .def_property_readonly("feature_count", &ClassifierModel::feature_count)
      .def("eval_direction", &ClassifierModel::eval_direction, py::arg("u"))
      .def("score", &ClassifierModel::score, py::arg("x"), py::arg("u"))
      .def("predict", &ClassifierModel::predict, py::arg("x"), py::arg("u"))
      .def("predict_batch", &ClassifierModel::predict_batch, py::arg("X"),
           py::arg("U"))
      .def("empirical_risk", &ClassifierModel::empirical_risk, py::arg("X"),
           py::arg("U"), py::arg("Y"))
      .def("save",
           [](const ClassifierModel& mo, const std::string& path) {
             mo.save(path);
           },
           py::arg("path"))
      .def("dumps",
           [](const ClassifierModel& mo) {
             std::ostringstream os;
             mo.save(os);
             return os.str();
           })
      .def_static("load",
                  [](const std::string& path) {
                    return ClassifierModel::load(path);
                  },
                  py::arg("path"))
      .def_static("loads", [](const std::string& text) {
        std::istringstream is(text);
        return ClassifierModel::load(is);
      });

  m.def("conditional_risk", &conditional_risk, py::arg("model"),
        py::arg("truth"), py::arg("u"));
  m.def("oracle_predict", &oracle_predict, py::arg("x"), py::arg("mu1"),
        py::arg("mu2"), py::arg("sigma"));

  py::class_<StaticLda>(m, "StaticLda")
      .def_static("fit", &StaticLda::fit, py::arg("X"), py::arg("Y"))
      .def("predict", &StaticLda::predict, py::arg("x"))
      .def("empirical_risk", &StaticLda::empirical_risk, py::arg("X"),
           py::arg("Y"))
      .def_property_readonly("direction", &StaticLda::direction);

  py::class_<FitOptions>(m, "FitOptions")
      .def(py::init<>())
      .def_readwrite("degree", &FitOptions::degree)
      .def_readwrite("num_basis", &FitOptions::num_basis)
      .def_readwrite("lam", &FitOptions::lambda)
      .def_readwrite("mode", &FitOptions::mode)
      .def_readwrite("ista", &FitOptions::ista);

  m.def(
      "fit_vclda",
      [](const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
         const Eigen::VectorXi& Y, const FitOptions& opts) {
        return fit_vclda(X, U, Y, opts);
      },
      py::arg("X"), py::arg("U"), py::arg("Y"),
      py::arg("options") = FitOptions{});

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("n_per_class", &ScenarioConfig::n_per_class)
      .def_readwrite("p", &ScenarioConfig::p)
      .def_readwrite("s", &ScenarioConfig::s)
      .def_readwrite("direction_id", &ScenarioConfig::direction_id)
      .def_readwrite("covariance_id", &ScenarioConfig::covariance_id)
      .def_readwrite("test_size", &ScenarioConfig::test_size)
      .def_readwrite("seed", &ScenarioConfig::seed);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const Eigen::MatrixXd& X, const Eigen::VectorXd& U,
                       const Eigen::VectorXi& Y) {
             if (X.rows() != U.size() || X.rows() != Y.size()) {
               throw DimensionError("X, U, Y sizes must match");
             }
             return Dataset{X, U, Y};
           }),
           py::arg("X"), py::arg("U"), py::arg("Y"))
      .def_readonly("X", &Dataset::X)
      .def_readonly("U", &Dataset::U)
      .def_readonly("Y", &Dataset::Y)
      .def("__len__", &Dataset::size);

  m.def("direction_value", &direction_value, py::arg("direction_id"),
        py::arg("u"), py::arg("p"), py::arg("s"));
  m.def("covariance_value", &covariance_value, py::arg("covariance_id"),
        py::arg("u"), py::arg("p"));

  py::class_<ScenarioOracle>(m, "ScenarioOracle")
      .def(py::init<int, int, int, int>(), py::arg("direction_id"),
           py::arg("covariance_id"), py::arg("p"), py::arg("s"))
      .def("mean1", &ScenarioOracle::mean1, py::arg("u"))
      .def("mean2", &ScenarioOracle::mean2, py::arg("u"))
      .def("covariance", &ScenarioOracle::covariance, py::arg("u"))
      .def("bayes_direction", &ScenarioOracle::bayes_direction, py::arg("u"))
      .def("theta_star", &ScenarioOracle::theta_star, py::arg("u"))
      .def("delta", &ScenarioOracle::delta, py::arg("u"))
      .def("predict", &ScenarioOracle::predict, py::arg("x"), py::arg("u"));

  py::class_<GeneratedScenario>(m, "GeneratedScenario")
      .def_readonly("train", &GeneratedScenario::train)
      .def_readonly("test", &GeneratedScenario::test)
      .def_readonly("truth", &GeneratedScenario::truth);

  m.def("generate", &generate, py::arg("config"));

  m.def("write_dataset_csv",
        [](const std::string& path, const Dataset& d) {
          write_dataset_csv(path, d);
        },
        py::arg("path"), py::arg("dataset"));
  m.def("read_dataset_csv",
        [](const std::string& path) { return read_dataset_csv(path); },
        py::arg("path"));

  py::class_<CvPlan>(m, "CvPlan")
      .def(py::init<>())
      .def_readwrite("k_folds", &CvPlan::k_folds)
      .def_readwrite("degree", &CvPlan::degree)
      .def_readwrite("ln_grid", &CvPlan::ln_grid)
      .def_readwrite("lambda_grid", &CvPlan::lambda_grid)
      .def_readwrite("seed", &CvPlan::seed)
      .def_readwrite("ista", &CvPlan::ista);

  py::class_<CvCell>(m, "CvCell")
      .def_readonly("ln", &CvCell::ln)
      .def_readonly("lam", &CvCell::lambda)
      .def_readonly("fold", &CvCell::fold)
      .def_readonly("risk", &CvCell::risk);

  py::class_<CvResult>(m, "CvResult")
      .def_readonly("best_ln", &CvResult::best_ln)
      .def_readonly("best_lambda", &CvResult::best_lambda)
      .def_readonly("table", &CvResult::table);

  m.def("cross_validate", &cross_validate, py::arg("data"), py::arg("plan"),
        py::arg("regime"), py::arg("mode") = PriorMode::kEqual);

  m.def("fold_assignment", &fold_assignment, py::arg("data"),
        py::arg("k_folds"), py::arg("seed"));

  py::class_<ExperimentSpec>(m, "ExperimentSpec")
      .def(py::init<>())
      .def_readwrite("scenario", &ExperimentSpec::scenario)
      .def_readwrite("trials", &ExperimentSpec::trials)
      .def_readwrite("methods", &ExperimentSpec::methods)
      .def_readwrite("regime", &ExperimentSpec::regime)
      .def_readwrite("mode", &ExperimentSpec::mode)
      .def_readwrite("use_cv", &ExperimentSpec::use_cv)
      .def_readwrite("cv_plan", &ExperimentSpec::cv_plan)
      .def_readwrite("fixed_ln", &ExperimentSpec::fixed_ln)
      .def_readwrite("fixed_lambda", &ExperimentSpec::fixed_lambda)
      .def_readwrite("threads", &ExperimentSpec::threads)
      .def_readwrite("timing", &ExperimentSpec::timing);

  m.def(
      "run_benchmark_json",
      [](const ExperimentSpec& spec) {
        const BenchmarkResult result = run_benchmark(spec);
        return benchmark_to_json(spec, result).dump(2);
      },
      py::arg("spec"),
      "Run a benchmark and return the results JSON as a string.");

  m.attr("__version__") = "0.1.0";
}
