#include "waf/data.hpp"

#include <cmath>

#include "waf/errors.hpp"

namespace waf {

std::string trait_name(TraitKind kind) {
  return kind == TraitKind::Binary ? "binary" : "continuous";
}

TraitKind parse_trait(const std::string& token) {
  if (token == "binary") return TraitKind::Binary;
  if (token == "continuous") return TraitKind::Continuous;
  throw DomainError("unknown trait kind '" + token + "' (expected binary or continuous)");
}

PhenotypeVector::PhenotypeVector(Eigen::VectorXd values, TraitKind kind)
    : values_(std::move(values)), kind_(kind) {
  const auto n = values_.size();
  if (n < 2) throw DimensionError("phenotype: need at least 2 subjects");
  if (!values_.allFinite()) throw DomainError("phenotype: non-finite value");
  if (kind_ == TraitKind::Binary) {
    bool any0 = false, any1 = false;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (values_[i] == 0.0) {
        any0 = true;
      } else if (values_[i] == 1.0) {
        any1 = true;
      } else {
        throw DomainError("binary phenotype: values must be 0 or 1");
      }
    }
    if (!any0 || !any1) throw DegenerateInputError("binary phenotype: both classes must be present");
  } else {
    const double mean = values_.mean();
    const double ss = (values_.array() - mean).square().sum();
    if (!(ss > 0.0)) throw DegenerateInputError("continuous phenotype: sample variance must be positive");
  }
}

CovariateMatrix::CovariateMatrix(Eigen::MatrixXd values, std::vector<std::string> labels)
    : values_(std::move(values)), labels_(std::move(labels)) {
  const auto n = values_.rows();
  const auto j = values_.cols();
  if (j < 1) throw DimensionError("covariates: need at least one column");
  if (j >= n) throw DimensionError("covariates: need fewer columns than subjects");
  if (static_cast<Eigen::Index>(labels_.size()) != j)
    throw DimensionError("covariates: label count does not match columns");
  if (!values_.allFinite()) throw DomainError("covariates: non-finite value");
  for (Eigen::Index col = 0; col < j; ++col) {
    const double lo = values_.col(col).minCoeff();
    const double hi = values_.col(col).maxCoeff();
    if (lo == hi)
      throw DomainError("covariates: column '" + labels_[col] +
                        "' is constant (the intercept is implicit)");
  }
}

GenotypeMatrix::GenotypeMatrix(Eigen::MatrixXd counts, std::vector<std::string> snv_labels)
    : counts_(std::move(counts)), labels_(std::move(snv_labels)) {
  const auto n = counts_.rows();
  const auto k = counts_.cols();
  if (n < 2) throw DimensionError("genotypes: need at least 2 subjects");
  if (k < 1) throw DimensionError("genotypes: need at least 1 SNV");
  if (static_cast<Eigen::Index>(labels_.size()) != k)
    throw DimensionError("genotypes: label count does not match columns");
  for (Eigen::Index c = 0; c < k; ++c) {
    for (Eigen::Index r = 0; r < n; ++r) {
      const double v = counts_(r, c);
      if (v != 0.0 && v != 1.0 && v != 2.0)
        throw DomainError("genotypes: counts must be 0, 1 or 2 (column '" + labels_[c] + "')");
    }
  }
  maf_ = counts_.colwise().sum() / (2.0 * static_cast<double>(n));
}

}  // namespace waf
