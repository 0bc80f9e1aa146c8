#pragma once

#include <cstdint>
#include <vector>

#include "vclda/classify.hpp"
#include "vclda/simulate.hpp"

namespace vclda {

enum class Regime { kLowDim, kHighDim };

// Cross-validation plan over basis size (and penalty, in the
// high-dimensional regime).  An empty lambda_grid means 20 log-spaced
// points from lambda_max down to 1e-3 * lambda_max, where lambda_max is
// computed from the full-data design at each candidate basis size.
struct CvPlan {
  int k_folds = 5;
  int degree = 3;
  std::vector<int> ln_grid = {4, 5, 6, 8, 10, 12};
  std::vector<double> lambda_grid = {};
  std::uint64_t seed = 0;
  IstaOptions ista;
};

struct CvCell {
  int ln;
  double lambda;
  int fold;
  double risk;
};

struct CvResult {
  int best_ln = 0;
  double best_lambda = 0.0;
  std::vector<CvCell> table;
};

// Class-stratified fold labels in [0, k_folds).  The assignment is keyed
// by a content hash of (seed, y, u, x), so it is a deterministic function
// of (seed, data) and invariant under permutations of the sample order.
std::vector<int> fold_assignment(const Dataset& data, int k_folds,
                                 std::uint64_t seed);

// Grid search by K-fold CV: fits on K-1 folds, scores misclassification
// on the held-out fold, and averages.  Low-dim regime fixes lambda = 0 and
// searches only the basis size; high-dim sweeps the lambda path per basis
// size with warm starts.  Candidates whose basis size exceeds a training
// fold's class count are skipped; if none remain, InfeasibleGridError.
// Ties are broken toward smaller ln, then larger lambda.
CvResult cross_validate(const Dataset& data, const CvPlan& plan,
                        Regime regime, PriorMode mode = PriorMode::kEqual);

}  // namespace vclda
