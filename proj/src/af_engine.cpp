#include "waf/af_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "waf/errors.hpp"
#include "waf/stat_math.hpp"

namespace waf {

std::string weight_scheme_name(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::Flat: return "flat";
    case WeightScheme::MafSd: return "maf";
    case WeightScheme::File: return "file";
  }
  return "?";
}

namespace {

void validate_weights(const Eigen::VectorXd& w) {
  if (w.size() < 1) throw DimensionError("weights: need at least one entry");
  if (!w.allFinite()) throw DomainError("weights: non-finite value");
  if ((w.array() < 0.0).any()) throw DomainError("weights: negative value");
  if (!(w.maxCoeff() > 0.0)) throw DomainError("weights: at least one must be positive");
}

}  // namespace

WeightVector WeightVector::flat(int k) {
  if (k < 1) throw DimensionError("weights: need at least one entry");
  return {Eigen::VectorXd::Ones(k), WeightScheme::Flat};
}

WeightVector WeightVector::maf_sd(const GenotypeMatrix& g) {
  Eigen::VectorXd w = (g.maf().array() * (1.0 - g.maf().array())).sqrt();
  validate_weights(w);
  return {std::move(w), WeightScheme::MafSd};
}

WeightVector WeightVector::from_values(Eigen::VectorXd w) {
  validate_weights(w);
  return {std::move(w), WeightScheme::File};
}

Eigen::VectorXd r_values(const Eigen::VectorXd& u_std) {
  Eigen::VectorXd r(u_std.size());
  for (Eigen::Index k = 0; k < u_std.size(); ++k) {
    r[k] = stat::neg_log_two_sided_p(u_std[k]);
  }
  return r;
}

PartialSumPath partial_sums(const Eigen::VectorXd& r, const Eigen::VectorXd& w) {
  if (r.size() != w.size()) throw DimensionError("partial_sums: lengths differ");
  if (r.size() < 1) throw DimensionError("partial_sums: empty input");

  const auto k = r.size();
  const Eigen::VectorXd x = w.array() * r.array();

  PartialSumPath path;
  path.sort_order.resize(k);
  std::iota(path.sort_order.begin(), path.sort_order.end(), 0);
  std::stable_sort(path.sort_order.begin(), path.sort_order.end(),
                   [&x](int a, int b) { return x[a] > x[b]; });

  path.s_star.resize(k);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < k; ++i) {
    acc += x[path.sort_order[i]];
    path.s_star[i] = acc;
  }
  return path;
}

double af_statistic(const Eigen::VectorXd& path_pvalues) {
  if (path_pvalues.size() < 1) throw DomainError("af_statistic: empty path");
  for (Eigen::Index i = 0; i < path_pvalues.size(); ++i) {
    if (!(path_pvalues[i] > 0.0 && path_pvalues[i] <= 1.0))
      throw DomainError("af_statistic: path p-values must lie in (0, 1]");
  }
  return path_pvalues.minCoeff();
}

}  // namespace waf
