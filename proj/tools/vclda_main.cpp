// Command-line front end: dataset simulation, fitting, prediction,
// cross-validation and benchmark tables.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <string>

#include "vclda/benchmark.hpp"
#include "vclda/classify.hpp"
#include "vclda/csv.hpp"
#include "vclda/errors.hpp"
#include "vclda/select.hpp"
#include "vclda/simulate.hpp"

namespace {

using namespace vclda;

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

PriorMode parse_prior_mode(const std::string& s) {
  if (s == "equal") return PriorMode::kEqual;
  if (s == "estimated") return PriorMode::kEstimated;
  throw ParseError("--prior-mode must be 'equal' or 'estimated'");
}

Regime parse_regime(const std::string& s) {
  if (s == "low") return Regime::kLowDim;
  if (s == "high") return Regime::kHighDim;
  throw ParseError("--regime must be 'low' or 'high'");
}

int cmd_simulate(const ScenarioConfig& cfg, const std::string& train_path,
                 const std::string& test_path) {
  const GeneratedScenario scenario = generate(cfg);
  write_dataset_csv(train_path, scenario.train);
  write_dataset_csv(test_path, scenario.test);
  std::cerr << "wrote " << scenario.train.size() << " train rows to "
            << train_path << " and " << scenario.test.size()
            << " test rows to " << test_path << "\n";
  return 0;
}

struct FitCliOptions {
  std::string data_path;
  std::string out_path = "model.txt";
  std::string regime = "low";
  std::string prior_mode = "equal";
  int degree = 3;
  int ln = 0;          // 0 -> select by CV
  double lambda = -1;  // <0 -> CV in high regime, 0 in low regime
  std::vector<int> ln_grid = {4, 5, 6, 8, 10, 12};
  std::vector<double> lambda_grid;
  int k_folds = 5;
  std::uint64_t seed = 0;
  bool require_converged = false;
};

int cmd_fit(const FitCliOptions& o) {
  const Dataset data = read_dataset_csv(o.data_path);
  const Regime regime = parse_regime(o.regime);
  const PriorMode mode = parse_prior_mode(o.prior_mode);

  FitOptions fit;
  fit.degree = o.degree;
  fit.mode = mode;

  const bool need_cv =
      o.ln == 0 || (regime == Regime::kHighDim && o.lambda < 0);
  if (need_cv) {
    CvPlan plan;
    plan.k_folds = o.k_folds;
    plan.degree = o.degree;
    plan.ln_grid = o.ln == 0 ? o.ln_grid : std::vector<int>{o.ln};
    plan.lambda_grid = o.lambda_grid;
    if (regime == Regime::kHighDim && o.lambda >= 0) {
      plan.lambda_grid = {o.lambda};
    }
    plan.seed = o.seed;
    const CvResult cv = cross_validate(data, plan, regime, mode);
    fit.num_basis = cv.best_ln;
    fit.lambda = cv.best_lambda;
  } else {
    fit.num_basis = o.ln;
    fit.lambda = regime == Regime::kHighDim ? std::max(0.0, o.lambda) : 0.0;
  }

  FitInfo info;
  const ClassifierModel model = fit_vclda(data.X, data.U, data.Y, fit, &info);
  if (!info.converged) {
    std::cerr << "warning: solver did not converge within the iteration "
                 "budget\n";
    if (o.require_converged) {
      throw std::runtime_error("solver did not converge");
    }
  }
  model.save(o.out_path);

  const auto sup = support(model.gamma(), 1e-12);
  std::cerr << "fit: n=" << data.size() << " p=" << data.X.cols()
            << " ln=" << fit.num_basis << " lambda=" << fit.lambda
            << " support=" << sup.size() << "/" << data.X.cols()
            << " train_risk="
            << fmt3(model.empirical_risk(data.X, data.U, data.Y)) << "\n";
  std::cout << "selected ln=" << fit.num_basis << " lambda=" << fit.lambda
            << "\n";
  return 0;
}

// Prediction input may omit the label column (header "u,x1,...").
bool csv_has_labels(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open dataset file '" + path + "'");
  std::string header;
  if (!std::getline(is, header)) throw ParseError("empty dataset file");
  return header.rfind("u,y", 0) == 0;
}

Dataset read_features_csv(const std::string& path) {
  // Reuse the strict reader by inserting a dummy label column.
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open dataset file '" + path + "'");
  std::string line;
  std::string patched;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line.rfind("u,", 0) != 0) {
        throw ParseError("dataset header must start with 'u,'");
      }
      patched += "u,y," + line.substr(2) + "\n";
      first = false;
    } else if (!line.empty()) {
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw ParseError("malformed row in '" + path + "'");
      }
      patched += line.substr(0, comma) + ",0" + line.substr(comma) + "\n";
    }
  }
  std::istringstream ss(patched);
  return read_dataset_csv(ss);
}

int cmd_predict(const std::string& model_path, const std::string& data_path,
                const std::string& out_path) {
  const ClassifierModel model = ClassifierModel::load(model_path);
  const bool labeled = csv_has_labels(data_path);
  const Dataset data =
      labeled ? read_dataset_csv(data_path) : read_features_csv(data_path);
  if (data.X.cols() != model.feature_count()) {
    throw DimensionError("model expects p=" +
                         std::to_string(model.feature_count()) +
                         " features, dataset has " +
                         std::to_string(data.X.cols()));
  }

  const Eigen::VectorXi pred = model.predict_batch(data.X, data.U);
  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw ParseError("cannot open '" + out_path + "' for writing");
  os << "y_pred\n";
  for (Eigen::Index i = 0; i < pred.size(); ++i) os << pred[i] << "\n";

  if (labeled) {
    Eigen::Index wrong = 0;
    for (Eigen::Index i = 0; i < pred.size(); ++i) wrong += pred[i] != data.Y[i];
    const double risk =
        static_cast<double>(wrong) / static_cast<double>(pred.size());
    std::cout << "risk " << fmt3(risk) << "\n";
  }
  std::cerr << "wrote " << pred.size() << " predictions to " << out_path
            << "\n";
  return 0;
}

struct CvCliOptions {
  std::string data_path;
  std::string regime = "low";
  std::string prior_mode = "equal";
  std::string table_path;
  int degree = 3;
  std::vector<int> ln_grid = {4, 5, 6, 8, 10, 12};
  std::vector<double> lambda_grid;
  int k_folds = 5;
  std::uint64_t seed = 0;
};

int cmd_cv(const CvCliOptions& o) {
  const Dataset data = read_dataset_csv(o.data_path);
  CvPlan plan;
  plan.k_folds = o.k_folds;
  plan.degree = o.degree;
  plan.ln_grid = o.ln_grid;
  plan.lambda_grid = o.lambda_grid;
  plan.seed = o.seed;
  const CvResult cv = cross_validate(data, plan, parse_regime(o.regime),
                                     parse_prior_mode(o.prior_mode));

  if (!o.table_path.empty()) {
    std::ofstream os(o.table_path, std::ios::binary);
    if (!os) throw ParseError("cannot open '" + o.table_path + "'");
    os << "ln,lambda,fold,risk\n";
    char buf[64];
    for (const CvCell& c : cv.table) {
      std::snprintf(buf, sizeof(buf), "%d,%.17g,%d,%.17g\n", c.ln, c.lambda,
                    c.fold, c.risk);
      os << buf;
    }
  }
  std::cout << "best ln=" << cv.best_ln << " lambda=" << cv.best_lambda
            << "\n";
  return 0;
}

int cmd_benchmark(ExperimentSpec spec, bool print_table) {
  const BenchmarkResult result = run_benchmark(spec);
  const nlohmann::json j = benchmark_to_json(spec, result);
  if (!spec.output_path.empty()) {
    std::ofstream os(spec.output_path, std::ios::binary);
    if (!os) throw ParseError("cannot open '" + spec.output_path + "'");
    os << j.dump(2) << "\n";
  }
  if (print_table || spec.output_path.empty()) {
    std::cout << render_table(j);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Varying-coefficient linear discriminant analysis"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "Generate a synthetic scenario");
  ScenarioConfig sim_cfg;
  std::string sim_train = "train.csv", sim_test = "test.csv";
  sim->add_option("--direction", sim_cfg.direction_id, "Direction family 1-4");
  sim->add_option("--covariance", sim_cfg.covariance_id,
                  "Covariance family 1-3");
  sim->add_option("--p", sim_cfg.p, "Feature count");
  sim->add_option("--s", sim_cfg.s, "Active feature count (default: p)")
      ->default_val(-1);
  sim->add_option("--n", sim_cfg.n_per_class, "Training samples per class");
  sim->add_option("--test-size", sim_cfg.test_size, "Total test samples");
  sim->add_option("--seed", sim_cfg.seed, "RNG seed");
  sim->add_option("--train-out", sim_train, "Training CSV path");
  sim->add_option("--test-out", sim_test, "Test CSV path");

  // fit
  auto* fit = app.add_subcommand("fit", "Fit a model from a dataset CSV");
  FitCliOptions fit_opt;
  fit->add_option("--data", fit_opt.data_path, "Dataset CSV")->required();
  fit->add_option("--out", fit_opt.out_path, "Model file path");
  fit->add_option("--regime", fit_opt.regime, "low | high");
  fit->add_option("--prior-mode", fit_opt.prior_mode, "equal | estimated");
  fit->add_option("--degree", fit_opt.degree, "Spline degree");
  fit->add_option("--ln", fit_opt.ln, "Basis size (0: select by CV)");
  fit->add_option("--lambda", fit_opt.lambda,
                  "Group-lasso penalty (high regime; <0: select by CV)");
  fit->add_option("--ln-grid", fit_opt.ln_grid, "CV grid of basis sizes");
  fit->add_option("--lambda-grid", fit_opt.lambda_grid,
                  "CV grid of penalties (default: auto path)");
  fit->add_option("--k-folds", fit_opt.k_folds, "CV folds");
  fit->add_option("--seed", fit_opt.seed, "CV fold-shuffling seed");
  fit->add_flag("--require-converged", fit_opt.require_converged,
                "Fail when ISTA does not converge");

  // predict
  auto* predict = app.add_subcommand("predict", "Predict labels with a model");
  std::string pr_model, pr_data, pr_out = "predictions.csv";
  predict->add_option("--model", pr_model, "Model file")->required();
  predict->add_option("--data", pr_data, "Dataset CSV (y column optional)")
      ->required();
  predict->add_option("--out", pr_out, "Predictions CSV path");

  // cv
  auto* cv = app.add_subcommand("cv", "Cross-validate basis size and penalty");
  CvCliOptions cv_opt;
  cv->add_option("--data", cv_opt.data_path, "Dataset CSV")->required();
  cv->add_option("--regime", cv_opt.regime, "low | high");
  cv->add_option("--prior-mode", cv_opt.prior_mode, "equal | estimated");
  cv->add_option("--degree", cv_opt.degree, "Spline degree");
  cv->add_option("--ln-grid", cv_opt.ln_grid, "Grid of basis sizes");
  cv->add_option("--lambda-grid", cv_opt.lambda_grid,
                 "Grid of penalties (default: auto path)");
  cv->add_option("--k-folds", cv_opt.k_folds, "CV folds");
  cv->add_option("--seed", cv_opt.seed, "Fold-shuffling seed");
  cv->add_option("--cv-out", cv_opt.table_path, "CV table CSV path");

  // benchmark
  auto* bench = app.add_subcommand("benchmark",
                                   "Monte Carlo comparison of methods");
  std::string bench_config;
  std::string bench_out;
  int bench_trials = -1;
  int bench_threads = -1;
  std::int64_t bench_seed = -1;
  bool bench_table = false;
  bool bench_no_timing = false;
  bench->add_option("--config", bench_config, "Experiment config file")
      ->required();
  bench->add_option("--out", bench_out, "Results JSON path (overrides config)");
  bench->add_option("--trials", bench_trials, "Trial count (overrides config)");
  bench->add_option("--threads", bench_threads, "Worker threads (overrides config)");
  bench->add_option("--seed", bench_seed, "Master seed (overrides config)");
  bench->add_flag("--table", bench_table, "Print the summary table");
  bench->add_flag("--no-timing", bench_no_timing,
                  "Zero the wall-clock field for byte-reproducible output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      if (sim_cfg.s < 0) sim_cfg.s = sim_cfg.p;
      return cmd_simulate(sim_cfg, sim_train, sim_test);
    }
    if (fit->parsed()) return cmd_fit(fit_opt);
    if (predict->parsed()) return cmd_predict(pr_model, pr_data, pr_out);
    if (cv->parsed()) return cmd_cv(cv_opt);
    if (bench->parsed()) {
      ExperimentSpec spec = parse_experiment_spec_file(bench_config);
      if (!bench_out.empty()) spec.output_path = bench_out;
      if (bench_trials > 0) spec.trials = bench_trials;
      if (bench_threads > 0) spec.threads = bench_threads;
      if (bench_seed >= 0) spec.scenario.seed = static_cast<std::uint64_t>(bench_seed);
      if (bench_no_timing) spec.timing = false;
      return cmd_benchmark(std::move(spec), bench_table);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DimensionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
