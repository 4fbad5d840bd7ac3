#include "waf/simgen.hpp"

#include <cmath>

#include "waf/errors.hpp"
#include "waf/stat_math.hpp"

namespace waf {

namespace {

void validate_config(const ScenarioConfig& config) {
  if (config.k < 1) throw DomainError("scenario: K must be >= 1");
  if (config.n < 2) throw DomainError("scenario: n must be >= 2");
  if (!(config.ar1_corr >= 0.0 && config.ar1_corr < 1.0))
    throw DomainError("scenario: AR(1) correlation must lie in [0, 1)");
  if (!(config.maf_min > 0.0 && config.maf_min <= config.maf_max && config.maf_max < 0.5))
    throw DomainError("scenario: MAF range must satisfy 0 < min <= max < 0.5");
  if (!(config.effect_proportion >= 0.0 && config.effect_proportion <= 1.0))
    throw DomainError("scenario: effect proportion must lie in [0, 1]");
  if (config.effect_bound < 0.0) throw DomainError("scenario: effect bound must be >= 0");
  if (config.covariate_count < 0) throw DomainError("scenario: covariate count must be >= 0");
}

}  // namespace

int nonzero_effect_count(const ScenarioConfig& config) {
  validate_config(config);
  return static_cast<int>(std::floor(config.effect_proportion * config.k + 0.5));
}

Eigen::VectorXd sample_mafs(int k, double maf_min, double maf_max, RngStream& rng) {
  if (k < 1) throw DomainError("sample_mafs: K must be >= 1");
  if (!(maf_min > 0.0 && maf_min <= maf_max))
    throw DomainError("sample_mafs: need 0 < maf_min <= maf_max");
  const double log_min = std::log(maf_min);
  const double log_max = std::log(maf_max);
  Eigen::VectorXd mafs(k);
  for (int i = 0; i < k; ++i)
    mafs[i] = std::exp(log_min + (log_max - log_min) * rng.next_unit());
  return mafs;
}

GenotypeMatrix sample_genotypes(const ScenarioConfig& config, const Eigen::VectorXd& mafs,
                                RngStream& rng) {
  validate_config(config);
  if (mafs.size() != config.k) throw DimensionError("sample_genotypes: MAF length != K");

  // Threshold at the MAF quantile of the latent normals; a latent in the
  // lower tail contributes one minor allele.
  Eigen::VectorXd thresholds(config.k);
  for (int k = 0; k < config.k; ++k) thresholds[k] = stat::normal_quantile(mafs[k]);

  Eigen::MatrixXd counts(config.n, config.k);
  Eigen::VectorXd z1(config.k), z2(config.k);
  for (int i = 0; i < config.n; ++i) {
    stat::sample_ar1(config.ar1_corr, rng, z1);
    stat::sample_ar1(config.ar1_corr, rng, z2);
    for (int k = 0; k < config.k; ++k) {
      counts(i, k) = (z1[k] <= thresholds[k] ? 1.0 : 0.0) +
                     (z2[k] <= thresholds[k] ? 1.0 : 0.0);
    }
  }

  std::vector<std::string> labels(config.k);
  for (int k = 0; k < config.k; ++k) labels[k] = "snv" + std::to_string(k + 1);
  return {std::move(counts), std::move(labels)};
}

Eigen::VectorXd sample_effects(const ScenarioConfig& config, RngStream& rng) {
  const int nonzero = nonzero_effect_count(config);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(config.k);
  if (nonzero == 0) return beta;

  // Partial Fisher-Yates: the first `nonzero` entries of `positions` are a
  // uniform draw without replacement.
  std::vector<int> positions(config.k);
  for (int k = 0; k < config.k; ++k) positions[k] = k;
  for (int i = 0; i < nonzero; ++i) {
    const auto j = i + static_cast<int>(rng.next_below(config.k - i));
    std::swap(positions[i], positions[j]);
  }
  for (int i = 0; i < nonzero; ++i)
    beta[positions[i]] = config.effect_bound * (2.0 * rng.next_unit() - 1.0);
  return beta;
}

PhenotypeVector sample_trait(const Eigen::MatrixXd& genotype_counts,
                             const Eigen::VectorXd& beta, TraitKind kind, RngStream& rng,
                             const Eigen::MatrixXd* covariates, double covariate_effect) {
  if (genotype_counts.cols() != beta.size())
    throw DimensionError("sample_trait: effect length != genotype columns");
  if (covariates && covariates->rows() != genotype_counts.rows())
    throw DimensionError("sample_trait: covariate rows != genotype rows");

  Eigen::VectorXd linear = genotype_counts * beta;
  if (covariates)
    linear += covariate_effect * covariates->rowwise().sum();

  const auto n = genotype_counts.rows();
  Eigen::VectorXd y(n);
  if (kind == TraitKind::Binary) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double prob = 1.0 / (1.0 + std::exp(-linear[i]));
      y[i] = rng.next_unit() < prob ? 1.0 : 0.0;
    }
  } else {
    for (Eigen::Index i = 0; i < n; ++i) y[i] = linear[i] + stat::standard_normal(rng);
  }
  return {std::move(y), kind};
}

ReplicateData generate_replicate(const ScenarioConfig& config, std::uint64_t replicate_index) {
  validate_config(config);

  RngStream maf_rng(config.seed, substream_id(stream_purpose::kMaf, replicate_index));
  Eigen::VectorXd mafs = sample_mafs(config.k, config.maf_min, config.maf_max, maf_rng);

  RngStream geno_rng(config.seed, substream_id(stream_purpose::kGenotype, replicate_index));
  GenotypeMatrix genotypes = sample_genotypes(config, mafs, geno_rng);

  RngStream effect_rng(config.seed, substream_id(stream_purpose::kEffects, replicate_index));
  Eigen::VectorXd beta = sample_effects(config, effect_rng);

  std::optional<CovariateMatrix> covariates;
  if (config.covariate_count > 0) {
    RngStream cov_rng(config.seed, substream_id(stream_purpose::kCovariate, replicate_index));
    Eigen::MatrixXd values(config.n, config.covariate_count);
    for (Eigen::Index i = 0; i < values.rows(); ++i)
      for (Eigen::Index j = 0; j < values.cols(); ++j)
        values(i, j) = stat::standard_normal(cov_rng);
    std::vector<std::string> labels(config.covariate_count);
    for (int j = 0; j < config.covariate_count; ++j) labels[j] = "cov" + std::to_string(j + 1);
    covariates.emplace(std::move(values), std::move(labels));
  }

  RngStream trait_rng(config.seed, substream_id(stream_purpose::kTrait, replicate_index));
  PhenotypeVector phenotype = sample_trait(
      genotypes.counts(), beta, config.trait, trait_rng,
      covariates ? &covariates->values() : nullptr, config.covariate_effect);

  return {std::move(genotypes), std::move(phenotype), std::move(covariates), std::move(mafs),
          std::move(beta)};
}

}  // namespace waf
