#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace waf {

enum class TraitKind { Binary, Continuous };

std::string trait_name(TraitKind kind);
TraitKind parse_trait(const std::string& token);

// Trait vector for n subjects. Binary traits must be coded 0/1 with both
// classes present; continuous traits must be finite with positive variance.
class PhenotypeVector {
 public:
  PhenotypeVector(Eigen::VectorXd values, TraitKind kind);

  const Eigen::VectorXd& values() const { return values_; }
  TraitKind kind() const { return kind_; }
  int n() const { return static_cast<int>(values_.size()); }

 private:
  Eigen::VectorXd values_;
  TraitKind kind_;
};

// n x J covariate design (the intercept is implicit and must not be
// supplied). Constant columns are rejected at construction.
class CovariateMatrix {
 public:
  CovariateMatrix(Eigen::MatrixXd values, std::vector<std::string> labels);

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& labels() const { return labels_; }
  int n() const { return static_cast<int>(values_.rows()); }
  int count() const { return static_cast<int>(values_.cols()); }

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> labels_;
};

// n x K minor-allele counts in {0,1,2}. Column MAFs are the sample
// frequencies count_sum / (2n); minor-allele orientation is the caller's
// responsibility, so frequencies above 0.5 are possible on miscoded input.
class GenotypeMatrix {
 public:
  GenotypeMatrix(Eigen::MatrixXd counts, std::vector<std::string> snv_labels);

  const Eigen::MatrixXd& counts() const { return counts_; }
  const std::vector<std::string>& snv_labels() const { return labels_; }
  const Eigen::VectorXd& maf() const { return maf_; }
  int n() const { return static_cast<int>(counts_.rows()); }
  int snv_count() const { return static_cast<int>(counts_.cols()); }

 private:
  Eigen::MatrixXd counts_;
  std::vector<std::string> labels_;
  Eigen::VectorXd maf_;
};

}  // namespace waf
