#include "waf/ranking.hpp"

#include <algorithm>
#include <vector>

#include "waf/errors.hpp"

namespace waf {

Eigen::MatrixXd column_rank_pvalues(const Eigen::MatrixXd& s) {
  const auto rows = s.rows();
  const auto cols = s.cols();
  if (rows < 2) throw DimensionError("column_rank_pvalues: need B >= 1 permutation rows");

  Eigen::MatrixXd p(rows, cols);
  const double denom = static_cast<double>(rows);

#pragma omp parallel
  {
    std::vector<double> sorted(rows);
#pragma omp for schedule(static)
    for (Eigen::Index k = 0; k < cols; ++k) {
      for (Eigen::Index b = 0; b < rows; ++b) sorted[b] = s(b, k);
      std::sort(sorted.begin(), sorted.end());
      for (Eigen::Index b = 0; b < rows; ++b) {
        // #{values >= own} = rows - (first index not below own)
        const auto lb = std::lower_bound(sorted.begin(), sorted.end(), s(b, k));
        p(b, k) = static_cast<double>(rows - (lb - sorted.begin())) / denom;
      }
    }
  }
  return p;
}

Eigen::VectorXd min_over_k(const Eigen::MatrixXd& p) {
  if (p.cols() < 1) throw DimensionError("min_over_k: need at least one column");
  return p.rowwise().minCoeff();
}

double permutation_pvalue(const Eigen::VectorXd& t, bool smaller_is_extreme) {
  const auto b = t.size() - 1;
  if (b < 1) throw DimensionError("permutation_pvalue: need B >= 1 permutations");
  const double observed = t[0];
  Eigen::Index count = 0;
  for (Eigen::Index i = 1; i <= b; ++i) {
    if (smaller_is_extreme ? t[i] <= observed : t[i] >= observed) ++count;
  }
  return static_cast<double>(1 + count) / static_cast<double>(b + 1);
}

}  // namespace waf
