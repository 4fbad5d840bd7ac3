#pragma once

#include <Eigen/Core>

namespace waf {

// Rank-based p-values within each column of an observed-plus-permutations
// matrix (rows b = 0..B, row 0 observed). Entry (b, k) is
//   #{b': s(b',k) >= s(b,k)} / (B+1),
// so every value lies in [1/(B+1), 1] and ties count both ways.
Eigen::MatrixXd column_rank_pvalues(const Eigen::MatrixXd& s);

// Row-wise minimum.
Eigen::VectorXd min_over_k(const Eigen::MatrixXd& p);

// Monte Carlo p-value of the observed statistic t(0) against rows 1..B,
// with the observed value included in its own reference set:
//   (1 + #{b >= 1 : t(b) at least as extreme as t(0)}) / (B+1).
double permutation_pvalue(const Eigen::VectorXd& t, bool smaller_is_extreme);

}  // namespace waf
