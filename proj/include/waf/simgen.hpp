#pragma once

#include <cstdint>
#include <optional>

#include <Eigen/Core>

#include "waf/data.hpp"
#include "waf/rng.hpp"

namespace waf {

// One simulation scenario: K loci on an AR(1) latent background, log-uniform
// MAFs, a proportion of nonzero effects drawn uniformly from
// [-effect_bound, effect_bound], and a binary or continuous trait. Optional
// standard-normal covariates enter the trait model with covariate_effect.
struct ScenarioConfig {
  int k = 50;
  int n = 1000;
  double ar1_corr = 0.9;
  double maf_min = 0.001;
  double maf_max = 0.05;
  double effect_proportion = 0.0;  // pi; 0 simulates the null
  double effect_bound = 0.0;       // delta
  TraitKind trait = TraitKind::Binary;
  int covariate_count = 0;
  double covariate_effect = 0.5;
  std::uint64_t seed = 0;
};

// round(pi * K), ties rounded up.
int nonzero_effect_count(const ScenarioConfig& config);

// log(MAF) ~ U(log maf_min, log maf_max), exponentiated back.
Eigen::VectorXd sample_mafs(int k, double maf_min, double maf_max, RngStream& rng);

// Two independent AR(1) latent vectors per subject, thresholded at the MAF
// quantile; entry = number of latents in the lower tail, so expected allele
// frequency equals the MAF and adjacent loci are positively correlated.
GenotypeMatrix sample_genotypes(const ScenarioConfig& config,
                                const Eigen::VectorXd& mafs, RngStream& rng);

// Exactly nonzero_effect_count entries nonzero, positions uniform without
// replacement, values U(-delta, delta); the rest exactly zero.
Eigen::VectorXd sample_effects(const ScenarioConfig& config, RngStream& rng);

// Binary: Y ~ Bernoulli(logistic(G beta + C gamma)); continuous:
// Y = G beta + C gamma + N(0,1). Intercept 0.
PhenotypeVector sample_trait(const Eigen::MatrixXd& genotype_counts,
                             const Eigen::VectorXd& beta, TraitKind kind,
                             RngStream& rng,
                             const Eigen::MatrixXd* covariates = nullptr,
                             double covariate_effect = 0.0);

struct ReplicateData {
  GenotypeMatrix genotypes;
  PhenotypeVector phenotype;
  std::optional<CovariateMatrix> covariates;
  Eigen::VectorXd true_mafs;
  Eigen::VectorXd beta;
};

// Full generation pipeline for one replicate, with all randomness derived
// from (config.seed, replicate_index).
ReplicateData generate_replicate(const ScenarioConfig& config,
                                 std::uint64_t replicate_index);

}  // namespace waf
