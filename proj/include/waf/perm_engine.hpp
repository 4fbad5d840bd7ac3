#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "waf/af_engine.hpp"
#include "waf/comparators.hpp"
#include "waf/ranking.hpp"
#include "waf/score_engine.hpp"

namespace waf {

// Staged permutation budget: run b_initial permutations first, then rerun
// from scratch with 10x the budget (fresh streams) for any method whose
// p-value is still at most escalate_multiple/(B+1), until b_max.
struct PermutationPlan {
  int b_initial = 100;
  int b_max = 10000;
  double escalate_multiple = 5.0;
  std::uint64_t seed = 0;
};

// Observed-path diagnostics for the adaptive-Fisher methods, indexed over
// the tested (non-excluded) genotype columns in their original order.
struct PathDiagnostics {
  Eigen::VectorXd r;             // -log two-sided p per column
  Eigen::VectorXd weights;
  Eigen::VectorXd partial_sums;  // descending-sorted cumulative path
  std::vector<int> sort_order;   // tested-column index per path position
};

struct TestOutcome {
  MethodTag method;
  double statistic = 0.0;
  double p_value = 1.0;
  int b_used = 0;
  bool escalated = false;
  std::optional<PathDiagnostics> diagnostics;
};

// Final-stage tables, exposed for tests and diagnostics. s_star holds the
// weighted partial-sum path per permutation row; statistic_rows maps method
// names to their T(b) vectors.
struct PermutationDetail {
  int b = 0;
  Eigen::MatrixXd s_star;
  Eigen::MatrixXd rank_pvalues;
  std::map<std::string, Eigen::VectorXd> statistic_rows;
};

// The permutation procedure: permute the null residuals B times, score every
// permutation against the frozen kernel, evaluate all requested methods on
// the shared permutations, and return each method's rank p-value. Streams
// are derived from (plan.seed, stage, b), so results are independent of
// thread count and of which other methods were requested.
std::vector<TestOutcome> run_permutations(const ScoreKernel& kernel,
                                          const Eigen::VectorXd& observed_residuals,
                                          const WeightVector& weights,
                                          const std::vector<MethodTag>& methods,
                                          const PermutationPlan& plan,
                                          PermutationDetail* detail = nullptr);

}  // namespace waf
