#pragma once

#include <string>
#include <vector>

#include "waf/comparators.hpp"
#include "waf/perm_engine.hpp"
#include "waf/simgen.hpp"

namespace waf {

struct PowerResult {
  ScenarioConfig scenario;
  MethodTag method;
  int replicates = 0;
  int skipped = 0;
  int b = 0;
  double alpha = 0.05;
  int rejections = 0;
  double power = 0.0;
  double mc_halfwidth = 0.0;  // 1.96 * sqrt(p(1-p)/replicates)
};

struct ScenarioRun {
  ScenarioConfig scenario;
  std::vector<PowerResult> per_method;
  int skipped = 0;
};

// Monte Carlo power (or type I error when effect_proportion = 0): fresh
// genotypes/effects/trait per replicate, all methods evaluated on shared
// permutations, rejection at p <= alpha. Replicates run in parallel with
// per-replicate streams; results are deterministic for a fixed seed at any
// thread count. Degenerate replicates are skipped and counted; more than 1%
// skipped fails the run.
ScenarioRun run_scenario(const ScenarioConfig& config,
                         const std::vector<MethodTag>& methods, int replicates,
                         const PermutationPlan& plan, double alpha);

std::vector<ScenarioRun> sweep_k(const ScenarioConfig& base,
                                 const std::vector<int>& k_values,
                                 const std::vector<MethodTag>& methods,
                                 int replicates, const PermutationPlan& plan,
                                 double alpha);

std::string scenario_label(const ScenarioConfig& config);

// Long-format CSV, one row per (scenario, method).
std::string power_csv(const std::vector<ScenarioRun>& runs);

// Wide per-figure series: one row per K, one power column per method.
std::string power_plot_csv(const std::vector<ScenarioRun>& runs);

}  // namespace waf
