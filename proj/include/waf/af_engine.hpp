#pragma once

#include <vector>

#include <Eigen/Core>

#include "waf/data.hpp"

namespace waf {

enum class WeightScheme { Flat, MafSd, File };

std::string weight_scheme_name(WeightScheme scheme);

// Per-SNV weights applied to the -log p values before sorting. Flat weights
// reproduce the unweighted statistic; MafSd is sqrt(maf * (1 - maf)) from
// the sample MAF. Weights must be nonnegative with at least one positive.
struct WeightVector {
  Eigen::VectorXd w;
  WeightScheme scheme = WeightScheme::Flat;

  static WeightVector flat(int k);
  static WeightVector maf_sd(const GenotypeMatrix& g);
  static WeightVector from_values(Eigen::VectorXd w);  // File scheme
};

// R_k = -log(2 * sf(|u_k|)) for each standardized score.
Eigen::VectorXd r_values(const Eigen::VectorXd& u_std);

// Cumulative sums of w*R sorted in descending order. sort_order holds the
// original indices, ties broken by position so diagnostics are reproducible
// (the sums themselves are tie-invariant).
struct PartialSumPath {
  Eigen::VectorXd s_star;
  std::vector<int> sort_order;
};

PartialSumPath partial_sums(const Eigen::VectorXd& r, const Eigen::VectorXd& w);

// The adaptive-Fisher statistic: the minimum of the per-depth p-values along
// the partial-sum path. Smaller is more significant.
double af_statistic(const Eigen::VectorXd& path_pvalues);

}  // namespace waf
