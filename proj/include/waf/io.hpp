#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "waf/af_engine.hpp"
#include "waf/data.hpp"

namespace waf::io {

// Genotype files: header row of SNV labels, then one row per subject of
// comma- or tab-separated counts that must be exactly 0, 1 or 2. Missing
// values are not supported.
GenotypeMatrix parse_genotypes(const std::string& path);
void write_genotypes(const std::string& path, const GenotypeMatrix& g);

// Phenotype files: one value per line, no header. Binary traits are 0/1.
PhenotypeVector parse_phenotypes(const std::string& path, TraitKind kind);
void write_phenotypes(const std::string& path, const PhenotypeVector& y);

// Covariate files: header row of labels, then one row per subject of reals.
CovariateMatrix parse_covariates(const std::string& path);
void write_covariates(const std::string& path, const CovariateMatrix& c);

// Weight files: one nonnegative real per line, in genotype column order.
WeightVector parse_weights(const std::string& path, int expected_k);

// Simulation truth: snv,true_maf,beta per line with full precision.
void write_truth(const std::string& path, const std::vector<std::string>& labels,
                 const Eigen::VectorXd& true_mafs, const Eigen::VectorXd& beta);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace waf::io
