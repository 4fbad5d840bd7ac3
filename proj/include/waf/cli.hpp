#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "waf/comparators.hpp"
#include "waf/data.hpp"
#include "waf/perm_engine.hpp"

namespace waf {

// A fully resolved `test` invocation.
struct AnalysisRequest {
  std::string genotype_path;
  std::string phenotype_path;
  std::optional<std::string> covariate_path;
  std::optional<std::string> weight_path;
  TraitKind trait = TraitKind::Binary;
  std::vector<MethodTag> methods;
  WeightScheme weight_scheme = WeightScheme::MafSd;
  PermutationPlan plan;
  double alpha = 0.05;
};

// Loads the request's files, runs the permutation engine and returns the
// result document: per-method statistic/p_value/b_used/escalated plus
// metadata (n, K, excluded SNVs, weight scheme, seed, wall time).
nlohmann::json run_test_command(const AnalysisRequest& request);

std::string test_result_csv(const nlohmann::json& doc);

// Entry point behind tools/waf: subcommands test, simulate, power.
int run_cli(int argc, const char* const* argv);

}  // namespace waf
