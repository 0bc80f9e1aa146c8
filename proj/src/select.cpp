#include "vclda/select.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "vclda/design.hpp"
#include "vclda/errors.hpp"

namespace vclda {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline std::uint64_t bits_of(double v) {
  std::uint64_t b;
  std::memcpy(&b, &v, sizeof(b));
  return b;
}

// Content hash of one sample; identical rows hash identically, so fold
// assignment does not depend on the input order.
std::uint64_t sample_key(std::uint64_t seed, const Dataset& data,
                         Eigen::Index i) {
  std::uint64_t h = mix64(seed ^ 0x853c49e6748fea9bULL);
  h = mix64(h ^ static_cast<std::uint64_t>(data.Y[i]));
  h = mix64(h ^ bits_of(data.U[i]));
  for (Eigen::Index j = 0; j < data.X.cols(); ++j) {
    h = mix64(h ^ bits_of(data.X(i, j)));
  }
  return h;
}

// Mean risk per (ln, lambda) cell with deterministic candidate ordering.
struct Candidate {
  int ln;
  double lambda;
  double mean_risk;
};

}  // namespace

std::vector<int> fold_assignment(const Dataset& data, int k_folds,
                                 std::uint64_t seed) {
  if (k_folds < 2) throw DimensionError("k_folds must be at least 2");
  const Eigen::Index n = data.size();
  std::vector<int> folds(static_cast<std::size_t>(n), 0);
  for (int cls : {0, 1}) {
    std::vector<std::pair<std::uint64_t, Eigen::Index>> keyed;
    for (Eigen::Index i = 0; i < n; ++i) {
      if ((data.Y[i] == 1) == (cls == 1)) {
        keyed.emplace_back(sample_key(seed, data, i), i);
      }
    }
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t r = 0; r < keyed.size(); ++r) {
      folds[static_cast<std::size_t>(keyed[r].second)] =
          static_cast<int>(r % static_cast<std::size_t>(k_folds));
    }
  }
  return folds;
}

namespace {

struct FoldSplit {
  Eigen::MatrixXd x_train, x_test;
  Eigen::VectorXd u_train, u_test;
  Eigen::VectorXi y_train, y_test;
  Eigen::Index train_count_class1 = 0;
  Eigen::Index train_count_class0 = 0;
};

FoldSplit make_split(const Dataset& data, const std::vector<int>& folds,
                     int fold) {
  const Eigen::Index n = data.size();
  const Eigen::Index p = data.X.cols();
  Eigen::Index n_test = 0;
  for (Eigen::Index i = 0; i < n; ++i) n_test += folds[i] == fold;
  const Eigen::Index n_train = n - n_test;

  FoldSplit s;
  s.x_train.resize(n_train, p);
  s.x_test.resize(n_test, p);
  s.u_train.resize(n_train);
  s.u_test.resize(n_test);
  s.y_train.resize(n_train);
  s.y_test.resize(n_test);
  Eigen::Index a = 0, b = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (folds[i] == fold) {
      s.x_test.row(b) = data.X.row(i);
      s.u_test[b] = data.U[i];
      s.y_test[b] = data.Y[i];
      ++b;
    } else {
      s.x_train.row(a) = data.X.row(i);
      s.u_train[a] = data.U[i];
      s.y_train[a] = data.Y[i];
      if (data.Y[i] == 1) {
        ++s.train_count_class1;
      } else {
        ++s.train_count_class0;
      }
      ++a;
    }
  }
  return s;
}

// Just bn of the design system; enough for the default lambda path.
double full_data_lambda_max(const Dataset& data, const SplineBasis& basis,
                            PriorMode mode) {
  const MeanModel mean_model =
      fit_mean_model(data.X, data.U, data.Y, basis);
  const Eigen::VectorXd z =
      pseudo_response(data.Y, mode, mean_model.prior_class1());
  const int p = static_cast<int>(data.X.cols());
  const int L = basis.num_basis();
  const int width = basis.degree() + 1;
  Eigen::VectorXd bn =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p) * L);
  std::vector<double> bw(static_cast<std::size_t>(width));
  for (Eigen::Index i = 0; i < data.size(); ++i) {
    const int first = basis.eval_scaled_local(data.U[i], bw.data());
    const Eigen::VectorXd v =
        data.X.row(i).transpose() - mean_model.pooled_mean(data.U[i], mode);
    for (int j = 0; j < p; ++j) {
      for (int a = 0; a < width; ++a) {
        bn[static_cast<Eigen::Index>(j) * L + first + a] +=
            v[j] * z[i] * bw[static_cast<std::size_t>(a)];
      }
    }
  }
  bn /= static_cast<double>(data.size());
  double m = 0.0;
  for (int j = 0; j < p; ++j) {
    m = std::max(m, bn.segment(static_cast<Eigen::Index>(j) * L, L).norm());
  }
  return m;
}

std::vector<double> default_lambda_path(double lmax) {
  std::vector<double> path;
  const int n_points = 20;
  const double lmin = 1e-3 * lmax;
  for (int i = 0; i < n_points; ++i) {
    const double t = static_cast<double>(i) / (n_points - 1);
    path.push_back(lmax * std::pow(lmin / lmax, t));
  }
  return path;
}

}  // namespace

CvResult cross_validate(const Dataset& data, const CvPlan& plan, Regime regime,
                        PriorMode mode) {
  if (plan.ln_grid.empty()) throw InfeasibleGridError("empty basis-size grid");
  Eigen::Index count1 = 0;
  for (Eigen::Index i = 0; i < data.size(); ++i) count1 += data.Y[i] == 1;
  const Eigen::Index min_class = std::min(count1, data.size() - count1);
  if (plan.k_folds > min_class) {
    throw DimensionError("k_folds exceeds the smaller class count");
  }

  const std::vector<int> folds = fold_assignment(data, plan.k_folds, plan.seed);
  std::vector<FoldSplit> splits;
  splits.reserve(static_cast<std::size_t>(plan.k_folds));
  for (int f = 0; f < plan.k_folds; ++f) {
    splits.push_back(make_split(data, folds, f));
  }

  std::vector<int> ln_grid = plan.ln_grid;
  std::sort(ln_grid.begin(), ln_grid.end());
  ln_grid.erase(std::unique(ln_grid.begin(), ln_grid.end()), ln_grid.end());

  CvResult result;
  std::vector<Candidate> candidates;

  for (int ln : ln_grid) {
    if (ln < plan.degree + 1) continue;
    const bool feasible = std::all_of(
        splits.begin(), splits.end(), [&](const FoldSplit& s) {
          return s.train_count_class1 >= ln && s.train_count_class0 >= ln;
        });
    if (!feasible) continue;

    const SplineBasis basis(plan.degree, ln);

    std::vector<double> lambdas;
    if (regime == Regime::kLowDim) {
      lambdas = {0.0};
    } else if (!plan.lambda_grid.empty()) {
      lambdas = plan.lambda_grid;
      std::sort(lambdas.rbegin(), lambdas.rend());
    } else {
      lambdas = default_lambda_path(full_data_lambda_max(data, basis, mode));
    }

    // risk sums per lambda across folds
    std::vector<double> risk_sum(lambdas.size(), 0.0);
    std::vector<CvCell> cells;
    bool candidate_ok = true;

    for (int f = 0; f < plan.k_folds && candidate_ok; ++f) {
      const FoldSplit& s = splits[static_cast<std::size_t>(f)];
      try {
        const MeanModel mean_model =
            fit_mean_model(s.x_train, s.u_train, s.y_train, basis);
        const Eigen::VectorXd z =
            pseudo_response(s.y_train, mode, mean_model.prior_class1());

        if (regime == Regime::kLowDim) {
          const DesignSystem sys =
              assemble(s.x_train, s.u_train, z, mean_model, mode);
          ClassifierModel model(mean_model, solve_closed_form(sys), mode);
          const double risk = model.empirical_risk(s.x_test, s.u_test, s.y_test);
          risk_sum[0] += risk;
          cells.push_back({ln, 0.0, f, risk});
        } else {
          const DesignSystem sys =
              assemble(s.x_train, s.u_train, z, mean_model, mode);
          GammaCoefficients warm{
              Eigen::VectorXd::Zero(sys.bn.size()), sys.p, sys.ln};
          for (std::size_t li = 0; li < lambdas.size(); ++li) {
            const IstaResult ista =
                ista_solve(sys, lambdas[li], plan.ista, &warm);
            warm = ista.gamma;
            ClassifierModel model(mean_model, ista.gamma, mode);
            const double risk =
                model.empirical_risk(s.x_test, s.u_test, s.y_test);
            risk_sum[li] += risk;
            cells.push_back({ln, lambdas[li], f, risk});
          }
        }
      } catch (const SingularError&) {
        candidate_ok = false;  // drop this basis size entirely
      }
    }
    if (!candidate_ok) continue;

    result.table.insert(result.table.end(), cells.begin(), cells.end());
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
      candidates.push_back(
          {ln, lambdas[li], risk_sum[li] / plan.k_folds});
    }
  }

  if (candidates.empty()) {
    throw InfeasibleGridError(
        "no grid candidate satisfies the per-fold sample requirements");
  }

  // Candidates are ordered (ln ascending, lambda descending); the first
  // strict improvement wins, so ties resolve to smaller ln, larger lambda.
  const Candidate* best = &candidates.front();
  for (const Candidate& c : candidates) {
    if (c.mean_risk < best->mean_risk) best = &c;
  }
  result.best_ln = best->ln;
  result.best_lambda = best->lambda;
  return result;
}

}  // namespace vclda
