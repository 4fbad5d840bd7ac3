#pragma once

#include <optional>

#include <Eigen/Core>

#include "waf/data.hpp"

namespace waf {

enum class NullCase { BinaryNoCov, ContinuousNoCov, BinaryCov, ContinuousCov };

// Null fit of the trait on the intercept (and covariates, when present).
// The residuals drive the permutation engine; sigma2 is the case-specific
// variance scalar that enters the score covariance diagonal:
//   binary, no covariates:      ybar * (1 - ybar)
//   continuous, no covariates:  sum (y - ybar)^2 / (n - 1)
//   binary, covariates:         mean of muhat * (1 - muhat)
//   continuous, covariates:     sum (y - muhat)^2 / (n - 1)
struct NullModel {
  Eigen::VectorXd residuals;
  Eigen::VectorXd fitted_means;
  double sigma2 = 0.0;
  NullCase model_case = NullCase::BinaryNoCov;
  // Retained so genotype columns can be projected onto the same design.
  std::optional<CovariateMatrix> covariates;
};

NullModel fit_null(const PhenotypeVector& y,
                   const std::optional<CovariateMatrix>& c = std::nullopt);

// Per-column OLS fit of the genotypes on (1, C); without covariates this is
// column-mean centering. Returns the n x K matrix of fitted values.
Eigen::MatrixXd project_genotypes(const GenotypeMatrix& g,
                                  const std::optional<CovariateMatrix>& c);

}  // namespace waf
