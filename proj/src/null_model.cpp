#include "waf/null_model.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "waf/errors.hpp"

namespace waf {

namespace {

constexpr double kIrlsTargetGradient = 1e-12;  // aim well past the 1e-8 contract
constexpr double kIrlsRequiredGradient = 1e-8;
constexpr int kIrlsMaxIterations = 50;
constexpr double kSeparationEtaBound = 30.0;

Eigen::MatrixXd design_with_intercept(Eigen::Index n, const CovariateMatrix& c) {
  Eigen::MatrixXd x(n, c.count() + 1);
  x.col(0).setOnes();
  x.rightCols(c.count()) = c.values();
  return x;
}

void require_full_rank(const Eigen::MatrixXd& x, const char* what) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  qr.setThreshold(1e-10);
  if (qr.rank() < x.cols())
    throw RankDeficiencyError(std::string(what) + ": design matrix is rank deficient");
}

// Logistic null fit of y on (1, C) by iteratively reweighted least squares.
Eigen::VectorXd logistic_fitted_means(const Eigen::VectorXd& y, const Eigen::MatrixXd& x) {
  const auto n = y.size();
  const double ybar = y.mean();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(x.cols());
  beta[0] = std::log(ybar / (1.0 - ybar));

  Eigen::VectorXd mu(n);
  for (int iter = 0; iter < kIrlsMaxIterations; ++iter) {
    const Eigen::VectorXd eta = x * beta;
    if (eta.cwiseAbs().maxCoeff() > kSeparationEtaBound)
      throw FitError(
          "logistic null fit: diverging linear predictor (perfect or near-perfect separation)");
    mu = (1.0 + (-eta.array()).exp()).inverse();
    const Eigen::VectorXd gradient = x.transpose() * (y - mu);
    if (gradient.lpNorm<Eigen::Infinity>() <= kIrlsTargetGradient) return mu;
    const Eigen::VectorXd w = mu.array() * (1.0 - mu.array());
    const Eigen::MatrixXd hessian = x.transpose() * w.asDiagonal() * x;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(hessian);
    if (ldlt.info() != Eigen::Success)
      throw FitError("logistic null fit: singular weighted information matrix");
    beta += ldlt.solve(gradient);
  }

  const Eigen::VectorXd eta = x * beta;
  mu = (1.0 + (-eta.array()).exp()).inverse();
  const Eigen::VectorXd gradient = x.transpose() * (y - mu);
  if (gradient.lpNorm<Eigen::Infinity>() > kIrlsRequiredGradient)
    throw FitError("logistic null fit: IRLS did not converge in 50 iterations");
  return mu;
}

}  // namespace

NullModel fit_null(const PhenotypeVector& y, const std::optional<CovariateMatrix>& c) {
  const Eigen::VectorXd& values = y.values();
  const auto n = values.size();
  if (c && c->n() != n) throw DimensionError("fit_null: covariate rows != phenotype length");

  NullModel nm;
  nm.covariates = c;
  const double ybar = values.mean();

  if (!c) {
    nm.fitted_means = Eigen::VectorXd::Constant(n, ybar);
    nm.residuals = values.array() - ybar;
    if (y.kind() == TraitKind::Binary) {
      nm.model_case = NullCase::BinaryNoCov;
      nm.sigma2 = ybar * (1.0 - ybar);
    } else {
      nm.model_case = NullCase::ContinuousNoCov;
      nm.sigma2 = nm.residuals.squaredNorm() / static_cast<double>(n - 1);
    }
    return nm;
  }

  const Eigen::MatrixXd x = design_with_intercept(n, *c);
  require_full_rank(x, "fit_null");

  if (y.kind() == TraitKind::Binary) {
    nm.model_case = NullCase::BinaryCov;
    nm.fitted_means = logistic_fitted_means(values, x);
    nm.residuals = values - nm.fitted_means;
    nm.sigma2 =
        (nm.fitted_means.array() * (1.0 - nm.fitted_means.array())).sum() / static_cast<double>(n);
  } else {
    nm.model_case = NullCase::ContinuousCov;
    const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(values);
    nm.fitted_means = x * beta;
    nm.residuals = values - nm.fitted_means;
    nm.sigma2 = nm.residuals.squaredNorm() / static_cast<double>(n - 1);
  }
  return nm;
}

Eigen::MatrixXd project_genotypes(const GenotypeMatrix& g,
                                  const std::optional<CovariateMatrix>& c) {
  const Eigen::MatrixXd& counts = g.counts();
  if (!c) {
    Eigen::RowVectorXd means = counts.colwise().mean();
    return means.replicate(counts.rows(), 1);
  }
  if (c->n() != g.n()) throw DimensionError("project_genotypes: covariate rows != genotype rows");
  const Eigen::MatrixXd x = design_with_intercept(counts.rows(), *c);
  require_full_rank(x, "project_genotypes");
  const Eigen::MatrixXd coef = x.colPivHouseholderQr().solve(counts);
  return x * coef;
}

}  // namespace waf
