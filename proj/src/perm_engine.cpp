#include "waf/perm_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

#include "waf/errors.hpp"
#include "waf/stat_math.hpp"

namespace waf {

namespace {

Eigen::VectorXd compact_to_tested(const Eigen::VectorXd& full, const std::vector<int>& tested) {
  Eigen::VectorXd out(tested.size());
  for (size_t t = 0; t < tested.size(); ++t) out[t] = full[tested[t]];
  return out;
}

void fisher_yates(double* data, int n, RngStream& rng) {
  for (int i = n - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
    std::swap(data[i], data[j]);
  }
}

// Residual matrix for one stage: column 0 observed, columns 1..B permuted.
// Each permutation draws from its own (seed, stage, b) stream, so the matrix
// is identical for any thread count and any requesting method set.
Eigen::MatrixXd permuted_residuals(const Eigen::VectorXd& observed, int b, int stage,
                                   std::uint64_t seed) {
  const auto n = observed.size();
  Eigen::MatrixXd e(n, b + 1);
  e.col(0) = observed;
#pragma omp parallel for schedule(static)
  for (int bi = 1; bi <= b; ++bi) {
    e.col(bi) = observed;
    RngStream rng(seed, substream_id(stream_purpose::kPermutation,
                                     static_cast<std::uint64_t>(stage),
                                     static_cast<std::uint64_t>(bi)));
    fisher_yates(e.col(bi).data(), static_cast<int>(n), rng);
  }
  return e;
}

// Partial-sum path statistics for all rows: sort w*R descending per row,
// accumulate, rank each depth across rows, take the row minimum.
Eigen::VectorXd path_statistics(const Eigen::MatrixXd& u_std, const Eigen::VectorXd& w,
                                Eigen::MatrixXd* s_star_out, Eigen::MatrixXd* rank_out) {
  const auto kt = u_std.rows();
  const auto rows = u_std.cols();
  Eigen::MatrixXd s_star(rows, kt);
#pragma omp parallel
  {
    std::vector<double> x(kt);
#pragma omp for schedule(static)
    for (Eigen::Index b = 0; b < rows; ++b) {
      for (Eigen::Index k = 0; k < kt; ++k)
        x[k] = w[k] * stat::neg_log_two_sided_p(u_std(k, b));
      std::sort(x.begin(), x.end(), std::greater<>());
      double acc = 0.0;
      for (Eigen::Index k = 0; k < kt; ++k) {
        acc += x[k];
        s_star(b, k) = acc;
      }
    }
  }
  Eigen::MatrixXd ranks = column_rank_pvalues(s_star);
  Eigen::VectorXd t = min_over_k(ranks);
  if (s_star_out) *s_star_out = std::move(s_star);
  if (rank_out) *rank_out = std::move(ranks);
  return t;
}

Eigen::VectorXd spu_statistics(const Eigen::MatrixXd& weighted_scores, int power) {
  if (power == MethodTag::kInfinitePower)
    return weighted_scores.cwiseAbs().colwise().maxCoeff().transpose();
  Eigen::ArrayXXd acc = weighted_scores.array();
  for (int i = 1; i < power; ++i) acc *= weighted_scores.array();
  return acc.colwise().sum().transpose();
}

bool ranks_smaller_as_extreme(const MethodTag& tag) {
  // Path methods and aSPU are minima of rank p-values; everything else is a
  // larger-is-more-extreme statistic (odd SPU after taking |T|).
  return tag.method == Method::WAF || tag.method == Method::AF || tag.method == Method::ASPU;
}

struct MethodState {
  MethodTag tag;
  bool done = false;
  TestOutcome outcome;
};

}  // namespace

std::vector<TestOutcome> run_permutations(const ScoreKernel& kernel,
                                          const Eigen::VectorXd& observed_residuals,
                                          const WeightVector& weights,
                                          const std::vector<MethodTag>& methods,
                                          const PermutationPlan& plan,
                                          PermutationDetail* detail) {
  if (methods.empty()) throw DomainError("run_permutations: no methods requested");
  if (observed_residuals.size() != kernel.n())
    throw DimensionError("run_permutations: residual length != subject count");
  if (!observed_residuals.allFinite())
    throw DomainError("run_permutations: non-finite residual");
  if (plan.b_initial < 19)
    throw DomainError("run_permutations: B_initial must be at least 19");
  if (plan.b_max < plan.b_initial)
    throw DomainError("run_permutations: B_max must be >= B_initial");
  if (weights.w.size() != kernel.snv_count())
    throw DimensionError("run_permutations: weight length != SNV count");
  if (kernel.tested_count() == 0)
    throw DegenerateInputError("run_permutations: every genotype column is degenerate");

  const double spread = observed_residuals.maxCoeff() - observed_residuals.minCoeff();
  if (spread <= 1e-12 * std::max(1.0, observed_residuals.cwiseAbs().maxCoeff()))
    throw DegenerateInputError("run_permutations: residuals carry no variation to permute");

  const Eigen::VectorXd w_tested = compact_to_tested(weights.w, kernel.tested());

  bool need_waf = false, need_af = false, need_minp = false, need_ssu = false, need_aspu = false;
  std::set<int> spu_powers;
  for (const auto& m : methods) {
    switch (m.method) {
      case Method::WAF: need_waf = true; break;
      case Method::AF: need_af = true; break;
      case Method::MinP: need_minp = true; break;
      case Method::SSU: need_ssu = true; break;
      case Method::SPU: spu_powers.insert(m.spu_power); break;
      case Method::ASPU: need_aspu = true; break;
    }
  }
  if (need_aspu)
    for (int p : aspu_power_set()) spu_powers.insert(p);
  if (need_waf && !(w_tested.maxCoeff() > 0.0))
    throw DegenerateInputError("run_permutations: all tested columns carry zero weight");

  std::vector<MethodState> states(methods.size());
  for (size_t i = 0; i < methods.size(); ++i) states[i].tag = methods[i];

  int b = plan.b_initial;
  int stage = 0;
  bool any_pending = true;

  while (any_pending) {
    const Eigen::MatrixXd e = permuted_residuals(observed_residuals, b, stage, plan.seed);
    Eigen::MatrixXd u = kernel.scores_tested(e);
    // The observed column flows through the same per-vector product as
    // score(), so table row 0 reproduces the observed path bit for bit.
    u.col(0) = kernel.scores_tested(observed_residuals);
    const Eigen::MatrixXd u_std = kernel.inv_sqrt_v_tested().asDiagonal() * u;

    std::map<std::string, Eigen::VectorXd> stat_rows;
    Eigen::MatrixXd s_star, rank_pvalues;
    if (need_waf)
      stat_rows["waf"] = path_statistics(u_std, w_tested, detail ? &s_star : nullptr,
                                         detail ? &rank_pvalues : nullptr);
    if (need_af)
      stat_rows["af"] = path_statistics(
          u_std, Eigen::VectorXd::Ones(kernel.tested_count()), nullptr, nullptr);
    if (need_minp)
      stat_rows["minp"] = u_std.cwiseAbs().colwise().maxCoeff().transpose();
    if (need_ssu) stat_rows["ssu"] = u.colwise().squaredNorm().transpose();

    Eigen::MatrixXd weighted_scores;
    if (!spu_powers.empty())
      weighted_scores = kernel.genotype_sd_tested().asDiagonal() * u_std;
    for (int power : spu_powers)
      stat_rows[MethodTag{Method::SPU, power}.name()] = spu_statistics(weighted_scores, power);
    if (need_aspu) {
      const auto& powers = aspu_power_set();
      Eigen::MatrixXd spu_table(b + 1, powers.size());
      for (size_t c = 0; c < powers.size(); ++c)
        spu_table.col(c) = stat_rows[MethodTag{Method::SPU, powers[c]}.name()];
      stat_rows["aspu"] = aspu_combine(spu_table, powers);
    }

    if (detail) {
      detail->b = b;
      detail->s_star = std::move(s_star);
      detail->rank_pvalues = std::move(rank_pvalues);
      detail->statistic_rows = stat_rows;
    }

    any_pending = false;
    for (auto& state : states) {
      if (state.done) continue;
      const Eigen::VectorXd& t = stat_rows.at(state.tag.name());
      const bool odd_spu = state.tag.method == Method::SPU &&
                           state.tag.spu_power != MethodTag::kInfinitePower &&
                           state.tag.spu_power % 2 == 1;
      const double p = odd_spu
                           ? permutation_pvalue(t.cwiseAbs(), false)
                           : permutation_pvalue(t, ranks_smaller_as_extreme(state.tag));

      const bool escalate = p <= plan.escalate_multiple / static_cast<double>(b + 1) &&
                            b < plan.b_max;
      if (escalate) {
        any_pending = true;
        continue;
      }
      state.done = true;
      state.outcome.method = state.tag;
      state.outcome.statistic = t[0];
      state.outcome.p_value = p;
      state.outcome.b_used = b;
      state.outcome.escalated = stage > 0;
      if (state.tag.method == Method::WAF || state.tag.method == Method::AF) {
        PathDiagnostics diag;
        diag.r = r_values(u_std.col(0));
        diag.weights = state.tag.method == Method::WAF
                           ? w_tested
                           : Eigen::VectorXd::Ones(kernel.tested_count());
        auto path = partial_sums(diag.r, diag.weights);
        diag.partial_sums = std::move(path.s_star);
        diag.sort_order = std::move(path.sort_order);
        state.outcome.diagnostics = std::move(diag);
      }
    }

    if (any_pending) {
      // Drop finished methods from the next, more expensive stage.
      need_waf = need_af = need_minp = need_ssu = need_aspu = false;
      spu_powers.clear();
      for (const auto& state : states) {
        if (state.done) continue;
        switch (state.tag.method) {
          case Method::WAF: need_waf = true; break;
          case Method::AF: need_af = true; break;
          case Method::MinP: need_minp = true; break;
          case Method::SSU: need_ssu = true; break;
          case Method::SPU: spu_powers.insert(state.tag.spu_power); break;
          case Method::ASPU: need_aspu = true; break;
        }
      }
      if (need_aspu)
        for (int p : aspu_power_set()) spu_powers.insert(p);
      b = b > plan.b_max / 10 ? plan.b_max : b * 10;
      ++stage;
    }
  }

  std::vector<TestOutcome> outcomes;
  outcomes.reserve(states.size());
  for (auto& state : states) outcomes.push_back(std::move(state.outcome));
  return outcomes;
}

}  // namespace waf
