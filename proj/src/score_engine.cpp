#include "waf/score_engine.hpp"

#include <cmath>

#include "waf/errors.hpp"

namespace waf {

namespace {

// A genuinely varying genotype column has centered sum of squares near 1 or
// larger; exact collinearity with the covariate design leaves only rounding
// noise, many orders of magnitude below this cutoff.
constexpr double kDegenerateSumSquares = 1e-8;

}  // namespace

ScoreKernel::ScoreKernel(const GenotypeMatrix& g, const NullModel& nm) {
  const auto n = g.n();
  if (nm.residuals.size() != n)
    throw DimensionError("score kernel: null model length != genotype rows");

  labels_ = g.snv_labels();
  sigma2_ = nm.sigma2;

  const Eigen::MatrixXd ghat = project_genotypes(g, nm.covariates);
  Eigen::MatrixXd d_full = g.counts() - ghat;

  const auto k = g.snv_count();
  v_diag_.resize(k);
  tested_.reserve(k);
  for (int col = 0; col < k; ++col) {
    const double ss = d_full.col(col).squaredNorm();
    if (ss > kDegenerateSumSquares) {
      v_diag_[col] = sigma2_ * ss;
      tested_.push_back(col);
    } else {
      v_diag_[col] = 0.0;
      excluded_.push_back(col);
    }
  }

  const auto kt = static_cast<int>(tested_.size());
  d_.resize(n, kt);
  inv_sqrt_v_.resize(kt);
  sd_g_.resize(kt);
  for (int t = 0; t < kt; ++t) {
    const int col = tested_[t];
    d_.col(t) = d_full.col(col);
    inv_sqrt_v_[t] = 1.0 / std::sqrt(v_diag_[col]);
    const Eigen::VectorXd raw = g.counts().col(col);
    sd_g_[t] = std::sqrt((raw.array() - raw.mean()).square().sum() /
                         static_cast<double>(n - 1));
  }
}

Eigen::VectorXd ScoreKernel::scores_tested(const Eigen::VectorXd& residuals) const {
  if (residuals.size() != d_.rows())
    throw DimensionError("scores_tested: residual length != subject count");
  return d_.transpose() * residuals;
}

ScoreResult ScoreKernel::score(const Eigen::VectorXd& residuals) const {
  if (residuals.size() != d_.rows())
    throw DimensionError("score: residual length != subject count");

  ScoreResult result;
  result.v_diag = v_diag_;
  result.excluded = excluded_;
  result.u = Eigen::VectorXd::Zero(snv_count());
  result.u_std = Eigen::VectorXd::Zero(snv_count());

  const Eigen::VectorXd u_tested = scores_tested(residuals);
  for (int t = 0; t < tested_count(); ++t) {
    const int col = tested_[t];
    result.u[col] = u_tested[t];
    result.u_std[col] = u_tested[t] * inv_sqrt_v_[t];
  }
  return result;
}

Eigen::MatrixXd ScoreKernel::scores_tested(const Eigen::MatrixXd& residual_cols) const {
  if (residual_cols.rows() != d_.rows())
    throw DimensionError("scores_tested: residual length != subject count");
  return d_.transpose() * residual_cols;
}

}  // namespace waf
