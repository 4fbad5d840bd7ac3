#pragma once

#include <vector>

#include <Eigen/Core>

#include "waf/data.hpp"
#include "waf/null_model.hpp"

namespace waf {

struct ScoreResult {
  Eigen::VectorXd u;       // length K; exactly 0 for excluded columns
  Eigen::VectorXd v_diag;  // length K; 0 marks a degenerate column
  Eigen::VectorXd u_std;   // u / sqrt(v); 0 placeholder at excluded columns
  std::vector<int> excluded;
};

// Precomputed score kernel: the centered/projected genotype residual matrix
// D = G - Ghat and the covariance diagonal V_kk = sigma2 * sum_i D_ik^2.
// Columns with V_kk = 0 (monomorphic after projection) are excluded from the
// test and only reported. V stays frozen across permutations; scoring a
// residual vector is then just K dot products, which is the operation that
// dominates the permutation loop.
class ScoreKernel {
 public:
  ScoreKernel(const GenotypeMatrix& g, const NullModel& nm);

  int n() const { return static_cast<int>(d_.rows()); }
  int snv_count() const { return static_cast<int>(v_diag_.size()); }
  int tested_count() const { return static_cast<int>(tested_.size()); }
  const std::vector<int>& tested() const { return tested_; }
  const std::vector<int>& excluded() const { return excluded_; }
  const Eigen::VectorXd& v_diag() const { return v_diag_; }
  const Eigen::VectorXd& inv_sqrt_v_tested() const { return inv_sqrt_v_; }
  // Sample standard deviation of the raw genotype columns (tested only).
  const Eigen::VectorXd& genotype_sd_tested() const { return sd_g_; }
  const std::vector<std::string>& snv_labels() const { return labels_; }
  double sigma2() const { return sigma2_; }

  ScoreResult score(const Eigen::VectorXd& residuals) const;

  // U restricted to the tested columns for one residual vector; score()
  // evaluates through this same path.
  Eigen::VectorXd scores_tested(const Eigen::VectorXd& residuals) const;

  // Batched scores for the permutation hot path: each column of
  // `residual_cols` is one residual vector; returns U restricted to the
  // tested columns, tested_count x cols. The matrix product may round
  // differently from the per-vector overload in the last bit.
  Eigen::MatrixXd scores_tested(const Eigen::MatrixXd& residual_cols) const;

 private:
  Eigen::MatrixXd d_;  // n x tested_count
  Eigen::VectorXd v_diag_;
  Eigen::VectorXd inv_sqrt_v_;
  Eigen::VectorXd sd_g_;
  std::vector<int> tested_;
  std::vector<int> excluded_;
  std::vector<std::string> labels_;
  double sigma2_ = 0.0;
};

}  // namespace waf
