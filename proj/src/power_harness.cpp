#include "waf/power_harness.hpp"

#include <cmath>
#include <cstdio>
#include <exception>

#include "waf/errors.hpp"
#include "waf/null_model.hpp"

namespace waf {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

ScenarioRun run_scenario(const ScenarioConfig& config, const std::vector<MethodTag>& methods,
                         int replicates, const PermutationPlan& plan, double alpha) {
  if (replicates < 1) throw DomainError("run_scenario: replicates must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("run_scenario: alpha must lie in (0, 1)");
  if (methods.empty()) throw DomainError("run_scenario: no methods requested");

  const auto m = methods.size();
  struct Slot {
    bool ok = false;
    std::vector<double> pvalues;
  };
  std::vector<Slot> slots(replicates);

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < replicates; ++r) {
    try {
      ReplicateData data = generate_replicate(config, static_cast<std::uint64_t>(r));
      NullModel nm = fit_null(data.phenotype, data.covariates);
      ScoreKernel kernel(data.genotypes, nm);
      WeightVector weights = WeightVector::maf_sd(data.genotypes);
      PermutationPlan replicate_plan = plan;
      replicate_plan.seed =
          mix64(plan.seed ^ substream_id(stream_purpose::kReplicatePlan,
                                         static_cast<std::uint64_t>(r)));
      auto outcomes = run_permutations(kernel, nm.residuals, weights, methods, replicate_plan);
      Slot slot;
      slot.ok = true;
      slot.pvalues.resize(m);
      for (size_t i = 0; i < m; ++i) slot.pvalues[i] = outcomes[i].p_value;
      slots[r] = std::move(slot);
    } catch (const std::exception&) {
      // Degenerate replicate (single-class trait, all columns excluded, ...).
      slots[r].ok = false;
    }
  }

  ScenarioRun run;
  run.scenario = config;
  for (const auto& slot : slots)
    if (!slot.ok) ++run.skipped;

  const int cap = static_cast<int>(std::floor(0.01 * replicates));
  if (run.skipped > cap)
    throw Error("run_scenario: " + std::to_string(run.skipped) + " of " +
                std::to_string(replicates) +
                " replicates were degenerate (allowed at most " + std::to_string(cap) + ")");

  const int used = replicates - run.skipped;
  run.per_method.resize(m);
  for (size_t i = 0; i < m; ++i) {
    PowerResult& result = run.per_method[i];
    result.scenario = config;
    result.method = methods[i];
    result.replicates = used;
    result.skipped = run.skipped;
    result.b = plan.b_initial;
    result.alpha = alpha;
    for (const auto& slot : slots)
      if (slot.ok && slot.pvalues[i] <= alpha) ++result.rejections;
    result.power = static_cast<double>(result.rejections) / used;
    result.mc_halfwidth = 1.96 * std::sqrt(result.power * (1.0 - result.power) / used);
  }
  return run;
}

std::vector<ScenarioRun> sweep_k(const ScenarioConfig& base, const std::vector<int>& k_values,
                                 const std::vector<MethodTag>& methods, int replicates,
                                 const PermutationPlan& plan, double alpha) {
  if (k_values.empty()) throw DomainError("sweep_k: empty K list");
  std::vector<ScenarioRun> runs;
  runs.reserve(k_values.size());
  for (int k : k_values) {
    ScenarioConfig config = base;
    config.k = k;
    runs.push_back(run_scenario(config, methods, replicates, plan, alpha));
  }
  return runs;
}

std::string scenario_label(const ScenarioConfig& config) {
  return "K" + std::to_string(config.k) + "_pi" + format_double(config.effect_proportion) +
         "_delta" + format_double(config.effect_bound) + "_" + trait_name(config.trait);
}

std::string power_csv(const std::vector<ScenarioRun>& runs) {
  std::string out =
      "scenario,trait,n,K,pi,delta,corr,covariates,method,alpha,B,replicates,skipped,"
      "rejections,power,mc_halfwidth,seed\n";
  for (const auto& run : runs) {
    for (const auto& r : run.per_method) {
      const ScenarioConfig& s = r.scenario;
      out += scenario_label(s) + "," + trait_name(s.trait) + "," + std::to_string(s.n) + "," +
             std::to_string(s.k) + "," + format_double(s.effect_proportion) + "," +
             format_double(s.effect_bound) + "," + format_double(s.ar1_corr) + "," +
             std::to_string(s.covariate_count) + "," + r.method.name() + "," +
             format_double(r.alpha) + "," + std::to_string(r.b) + "," +
             std::to_string(r.replicates) + "," + std::to_string(r.skipped) + "," +
             std::to_string(r.rejections) + "," + format_double(r.power) + "," +
             format_double(r.mc_halfwidth) + "," + std::to_string(s.seed) + "\n";
    }
  }
  return out;
}

std::string power_plot_csv(const std::vector<ScenarioRun>& runs) {
  if (runs.empty()) return "K\n";
  std::string out = "K";
  for (const auto& r : runs.front().per_method) out += "," + r.method.name();
  out += "\n";
  for (const auto& run : runs) {
    out += std::to_string(run.scenario.k);
    for (const auto& r : run.per_method) out += "," + format_double(r.power);
    out += "\n";
  }
  return out;
}

}  // namespace waf
