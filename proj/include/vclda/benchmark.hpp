#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "vclda/select.hpp"
#include "vclda/simulate.hpp"

namespace vclda {

// One synthetic-data experiment: a scenario, a trial count, the methods to
// compare, and either a CV plan or fixed hyperparameters for the
// varying-coefficient fit.
struct ExperimentSpec {
  ScenarioConfig scenario;
  int trials = 100;
  std::vector<std::string> methods = {"vclda", "static-lda", "oracle"};
  Regime regime = Regime::kLowDim;
  PriorMode mode = PriorMode::kEqual;
  bool use_cv = true;
  CvPlan cv_plan;
  int fixed_ln = 6;
  double fixed_lambda = 0.0;
  int threads = 1;
  bool timing = true;  // include wall-clock in the JSON output
  std::string output_path;
};

struct MethodOutcome {
  bool present = false;
  double risk = 0.0;
  // vclda only:
  int selected_ln = 0;
  double selected_lambda = 0.0;
  int support_size = 0;
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;
  MethodOutcome vclda;
  MethodOutcome static_lda;
  MethodOutcome oracle;
};

struct MethodSummary {
  std::string method;
  double mean_risk = 0.0;
  double sd_risk = 0.0;
};

struct BenchmarkResult {
  std::vector<TrialRecord> trials;       // ordered by trial index
  std::vector<MethodSummary> summaries;  // ordered as spec.methods
  double wall_time_sec = 0.0;
};

// Runs every trial (worker pool of spec.threads, one derived RNG stream
// per trial index) and aggregates in trial order, so the result does not
// depend on the thread count.  A failing trial aborts the run with its
// seed in the error message.
BenchmarkResult run_benchmark(const ExperimentSpec& spec);

// Serialization used by the CLI; the table renderer reads the JSON
// re-parse, so re-rendering from a results file reproduces the printed
// table exactly.
nlohmann::json benchmark_to_json(const ExperimentSpec& spec,
                                 const BenchmarkResult& result);
std::string render_table(const nlohmann::json& results_json);

// Flat key/value config file mapping 1:1 onto ExperimentSpec; unknown keys
// are an error, missing keys fall back to the documented defaults.
ExperimentSpec parse_experiment_spec(std::istream& is);
ExperimentSpec parse_experiment_spec_file(const std::string& path);

}  // namespace vclda
