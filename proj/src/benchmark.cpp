#include "vclda/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "vclda/errors.hpp"
#include "vclda/rng.hpp"

namespace vclda {

namespace {

bool wants(const ExperimentSpec& spec, const std::string& method) {
  return std::find(spec.methods.begin(), spec.methods.end(), method) !=
         spec.methods.end();
}

TrialRecord run_trial(const ExperimentSpec& spec, int trial) {
  TrialRecord rec;
  rec.trial = trial;
  rec.seed = derive_stream_seed(spec.scenario.seed, static_cast<std::uint64_t>(trial));

  ScenarioConfig cfg = spec.scenario;
  cfg.seed = rec.seed;
  const GeneratedScenario scenario = generate(cfg);

  if (wants(spec, "vclda")) {
    FitOptions opts;
    opts.mode = spec.mode;
    if (spec.use_cv) {
      CvPlan plan = spec.cv_plan;
      plan.seed = rec.seed;
      const CvResult cv = cross_validate(scenario.train, plan, spec.regime,
                                         spec.mode);
      opts.degree = plan.degree;
      opts.num_basis = cv.best_ln;
      opts.lambda = cv.best_lambda;
      opts.ista = plan.ista;
    } else {
      opts.degree = spec.cv_plan.degree;
      opts.num_basis = spec.fixed_ln;
      opts.lambda = spec.fixed_lambda;
      opts.ista = spec.cv_plan.ista;
    }
    const ClassifierModel model = fit_vclda(scenario.train.X, scenario.train.U,
                                            scenario.train.Y, opts);
    rec.vclda.present = true;
    rec.vclda.risk = model.empirical_risk(scenario.test.X, scenario.test.U,
                                          scenario.test.Y);
    rec.vclda.selected_ln = opts.num_basis;
    rec.vclda.selected_lambda = opts.lambda;
    rec.vclda.support_size =
        static_cast<int>(support(model.gamma(), 1e-12).size());
  }

  if (wants(spec, "static-lda")) {
    const StaticLda lda = StaticLda::fit(scenario.train.X, scenario.train.Y);
    rec.static_lda.present = true;
    rec.static_lda.risk = lda.empirical_risk(scenario.test.X, scenario.test.Y);
  }

  if (wants(spec, "oracle")) {
    Eigen::Index wrong = 0;
    for (Eigen::Index i = 0; i < scenario.test.size(); ++i) {
      const int label = scenario.truth.predict(
          scenario.test.X.row(i).transpose(), scenario.test.U[i]);
      wrong += label != scenario.test.Y[i];
    }
    rec.oracle.present = true;
    rec.oracle.risk =
        static_cast<double>(wrong) / static_cast<double>(scenario.test.size());
  }

  return rec;
}

const MethodOutcome& outcome_for(const TrialRecord& rec,
                                 const std::string& method) {
  if (method == "vclda") return rec.vclda;
  if (method == "static-lda") return rec.static_lda;
  if (method == "oracle") return rec.oracle;
  throw DimensionError("unknown method '" + method + "'");
}

}  // namespace

BenchmarkResult run_benchmark(const ExperimentSpec& spec) {
  if (spec.trials < 1) throw DimensionError("trials must be >= 1");
  if (spec.methods.empty()) throw DimensionError("methods must be nonempty");
  for (const std::string& m : spec.methods) {
    if (m != "vclda" && m != "static-lda" && m != "oracle") {
      throw DimensionError("unknown method '" + m + "'");
    }
  }

  const auto t0 = std::chrono::steady_clock::now();

  BenchmarkResult result;
  result.trials.resize(static_cast<std::size_t>(spec.trials));
  std::atomic<int> next{0};
  std::mutex error_mutex;
  std::string first_error;

  const int n_workers = std::max(1, std::min(spec.threads, spec.trials));
  auto worker = [&]() {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= spec.trials) break;
      try {
        result.trials[static_cast<std::size_t>(t)] = run_trial(spec, t);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (first_error.empty()) {
          first_error = "trial " + std::to_string(t) + " (seed " +
                        std::to_string(derive_stream_seed(
                            spec.scenario.seed,
                            static_cast<std::uint64_t>(t))) +
                        ") failed: " + e.what();
        }
        next.store(spec.trials);  // stop handing out work
        break;
      }
    }
  };

  if (n_workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_workers));
    for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (!first_error.empty()) throw std::runtime_error(first_error);

  for (const std::string& method : spec.methods) {
    MethodSummary s;
    s.method = method;
    double sum = 0.0;
    for (const TrialRecord& rec : result.trials) {
      sum += outcome_for(rec, method).risk;
    }
    s.mean_risk = sum / spec.trials;
    double ss = 0.0;
    for (const TrialRecord& rec : result.trials) {
      const double d = outcome_for(rec, method).risk - s.mean_risk;
      ss += d * d;
    }
    s.sd_risk = spec.trials > 1 ? std::sqrt(ss / (spec.trials - 1)) : 0.0;
    result.summaries.push_back(std::move(s));
  }

  result.wall_time_sec =
      spec.timing
          ? std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                .count()
          : 0.0;
  return result;
}

namespace {

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

}  // namespace

nlohmann::json benchmark_to_json(const ExperimentSpec& spec,
                                 const BenchmarkResult& result) {
  nlohmann::json j;
  j["scenario"] = {{"n_per_class", spec.scenario.n_per_class},
                   {"p", spec.scenario.p},
                   {"s", spec.scenario.s},
                   {"direction", spec.scenario.direction_id},
                   {"covariance", spec.scenario.covariance_id},
                   {"test_size", spec.scenario.test_size},
                   {"seed", spec.scenario.seed}};
  j["trials"] = spec.trials;
  j["regime"] = spec.regime == Regime::kLowDim ? "low" : "high";
  j["prior_mode"] = spec.mode == PriorMode::kEqual ? "equal" : "estimated";
  j["selection"] = spec.use_cv ? "cv" : "fixed";
  j["methods"] = spec.methods;

  nlohmann::json summary = nlohmann::json::object();
  for (const MethodSummary& s : result.summaries) {
    summary[s.method] = {{"mean_risk", s.mean_risk},
                         {"sd_risk", s.sd_risk},
                         {"cell", fmt3(s.mean_risk) + "(" + fmt3(s.sd_risk) + ")"}};
  }
  j["summary"] = summary;

  nlohmann::json trials = nlohmann::json::array();
  for (const TrialRecord& rec : result.trials) {
    nlohmann::json t;
    t["trial"] = rec.trial;
    t["seed"] = rec.seed;
    if (rec.vclda.present) {
      t["vclda"] = {{"risk", rec.vclda.risk},
                    {"ln", rec.vclda.selected_ln},
                    {"lambda", rec.vclda.selected_lambda},
                    {"support_size", rec.vclda.support_size}};
    }
    if (rec.static_lda.present) {
      t["static-lda"] = {{"risk", rec.static_lda.risk}};
    }
    if (rec.oracle.present) {
      t["oracle"] = {{"risk", rec.oracle.risk}};
    }
    trials.push_back(std::move(t));
  }
  j["trial_results"] = std::move(trials);
  j["wall_time_sec"] = result.wall_time_sec;
  return j;
}

std::string render_table(const nlohmann::json& j) {
  std::ostringstream os;
  const auto& sc = j.at("scenario");
  os << "direction " << sc.at("direction").get<int>() << ", covariance "
     << sc.at("covariance").get<int>() << ", p=" << sc.at("p").get<int>()
     << ", s=" << sc.at("s").get<int>()
     << ", n=" << sc.at("n_per_class").get<int>() << ", trials="
     << j.at("trials").get<int>() << "\n";
  os << "method        risk\n";
  for (const auto& method : j.at("methods")) {
    const std::string name = method.get<std::string>();
    const auto& cell = j.at("summary").at(name).at("cell");
    os << name;
    for (std::size_t k = name.size(); k < 14; ++k) os << ' ';
    os << cell.get<std::string>() << "\n";
  }
  return os.str();
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    std::istringstream ws(item);
    std::string word;
    while (ws >> word) items.push_back(word);
  }
  return items;
}

int to_int(const std::string& v, const std::string& key) {
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': expected integer, got '" + v +
                     "'");
  }
}

double to_double(const std::string& v, const std::string& key) {
  try {
    return std::stod(v);
  } catch (const std::exception&) {
    throw ParseError("config key '" + key + "': expected number, got '" + v +
                     "'");
  }
}

}  // namespace

ExperimentSpec parse_experiment_spec(std::istream& is) {
  ExperimentSpec spec;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "direction") {
      spec.scenario.direction_id = to_int(value, key);
    } else if (key == "covariance") {
      spec.scenario.covariance_id = to_int(value, key);
    } else if (key == "p") {
      spec.scenario.p = to_int(value, key);
    } else if (key == "s") {
      spec.scenario.s = to_int(value, key);
    } else if (key == "n_per_class") {
      spec.scenario.n_per_class = to_int(value, key);
    } else if (key == "test_size") {
      spec.scenario.test_size = to_int(value, key);
    } else if (key == "seed") {
      try {
        spec.scenario.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw ParseError("config key 'seed': expected unsigned integer");
      }
    } else if (key == "trials") {
      spec.trials = to_int(value, key);
    } else if (key == "methods") {
      spec.methods = split_list(value);
    } else if (key == "regime") {
      if (value == "low") {
        spec.regime = Regime::kLowDim;
      } else if (value == "high") {
        spec.regime = Regime::kHighDim;
      } else {
        throw ParseError("config key 'regime': expected low|high");
      }
    } else if (key == "prior_mode") {
      if (value == "equal") {
        spec.mode = PriorMode::kEqual;
      } else if (value == "estimated") {
        spec.mode = PriorMode::kEstimated;
      } else {
        throw ParseError("config key 'prior_mode': expected equal|estimated");
      }
    } else if (key == "selection") {
      if (value == "cv") {
        spec.use_cv = true;
      } else if (value == "fixed") {
        spec.use_cv = false;
      } else {
        throw ParseError("config key 'selection': expected cv|fixed");
      }
    } else if (key == "k_folds") {
      spec.cv_plan.k_folds = to_int(value, key);
    } else if (key == "degree") {
      spec.cv_plan.degree = to_int(value, key);
    } else if (key == "ln_grid") {
      spec.cv_plan.ln_grid.clear();
      for (const std::string& v : split_list(value)) {
        spec.cv_plan.ln_grid.push_back(to_int(v, key));
      }
    } else if (key == "lambda_grid") {
      spec.cv_plan.lambda_grid.clear();
      for (const std::string& v : split_list(value)) {
        spec.cv_plan.lambda_grid.push_back(to_double(v, key));
      }
    } else if (key == "ln") {
      spec.fixed_ln = to_int(value, key);
    } else if (key == "lambda") {
      spec.fixed_lambda = to_double(value, key);
    } else if (key == "threads") {
      spec.threads = to_int(value, key);
    } else if (key == "timing") {
      if (value == "true" || value == "1") {
        spec.timing = true;
      } else if (value == "false" || value == "0") {
        spec.timing = false;
      } else {
        throw ParseError("config key 'timing': expected true|false");
      }
    } else if (key == "out") {
      spec.output_path = value;
    } else {
      throw ParseError("config line " + std::to_string(lineno) +
                       ": unknown key '" + key + "'");
    }
  }
  return spec;
}

ExperimentSpec parse_experiment_spec_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open config file '" + path + "'");
  return parse_experiment_spec(is);
}

}  // namespace vclda
