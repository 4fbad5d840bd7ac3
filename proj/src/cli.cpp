#include "waf/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "waf/errors.hpp"
#include "waf/io.hpp"
#include "waf/null_model.hpp"
#include "waf/power_harness.hpp"
#include "waf/simgen.hpp"

namespace waf {

namespace {

using nlohmann::json;

void apply_thread_env() {
#ifdef _OPENMP
  if (const char* env = std::getenv("WAF_THREADS")) {
    const int threads = std::atoi(env);
    if (threads > 0) omp_set_num_threads(threads);
  }
#endif
}

std::vector<MethodTag> parse_methods(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw DomainError("no methods requested");
  std::vector<MethodTag> methods;
  methods.reserve(tokens.size());
  for (const auto& t : tokens) {
    MethodTag tag = MethodTag::parse(t);
    for (const auto& existing : methods)
      if (existing == tag) throw DomainError("method '" + t + "' requested twice");
    methods.push_back(tag);
  }
  return methods;
}

json scenario_json(const ScenarioConfig& config) {
  return {{"K", config.k},
          {"n", config.n},
          {"corr", config.ar1_corr},
          {"maf_min", config.maf_min},
          {"maf_max", config.maf_max},
          {"pi", config.effect_proportion},
          {"delta", config.effect_bound},
          {"trait", trait_name(config.trait)},
          {"covariates", config.covariate_count},
          {"covariate_effect", config.covariate_effect},
          {"seed", config.seed}};
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    io::write_text_file(out_path, content);
  }
}

struct TestOptions {
  AnalysisRequest request;
  std::vector<std::string> method_tokens{"waf"};
  std::string weights = "maf";
  std::string trait = "binary";
  std::string covar_path;
  std::string out_path;
  std::string format = "json";
  int perms = 100;
  int perms_max = -1;
};

int run_test(TestOptions& opt, bool perms_given, bool perms_max_given) {
  AnalysisRequest& request = opt.request;
  request.trait = parse_trait(opt.trait);
  request.methods = parse_methods(opt.method_tokens);
  if (!opt.covar_path.empty()) request.covariate_path = opt.covar_path;

  if (opt.weights == "maf") {
    request.weight_scheme = WeightScheme::MafSd;
  } else if (opt.weights == "flat") {
    request.weight_scheme = WeightScheme::Flat;
  } else if (opt.weights.starts_with("file:")) {
    request.weight_scheme = WeightScheme::File;
    request.weight_path = opt.weights.substr(5);
    if (request.weight_path->empty()) throw DomainError("--weights file: path is empty");
  } else {
    throw DomainError("--weights must be maf, flat or file:PATH");
  }

  request.plan.b_initial = opt.perms;
  // An explicit --perms without --perms-max pins the budget: no escalation.
  if (perms_max_given) {
    request.plan.b_max = opt.perms_max;
  } else if (perms_given) {
    request.plan.b_max = opt.perms;
  } else {
    request.plan.b_max = 10000;
  }

  const json doc = run_test_command(request);
  if (opt.format == "csv") {
    emit(opt.out_path, test_result_csv(doc));
  } else {
    emit(opt.out_path, doc.dump(2) + "\n");
  }
  return 0;
}

struct SimulateOptions {
  ScenarioConfig config;
  std::string trait = "binary";
  std::string out_prefix;
  std::uint64_t replicate = 0;
};

int run_simulate(SimulateOptions& opt) {
  opt.config.trait = parse_trait(opt.trait);
  const ReplicateData data = generate_replicate(opt.config, opt.replicate);

  io::write_genotypes(opt.out_prefix + ".geno.csv", data.genotypes);
  io::write_phenotypes(opt.out_prefix + ".pheno.csv", data.phenotype);
  io::write_truth(opt.out_prefix + ".truth.csv", data.genotypes.snv_labels(), data.true_mafs,
                  data.beta);
  if (data.covariates)
    io::write_covariates(opt.out_prefix + ".covar.csv", *data.covariates);

  json meta = {{"config", scenario_json(opt.config)}, {"replicate", opt.replicate}};
  meta["files"] = {{"genotypes", opt.out_prefix + ".geno.csv"},
                   {"phenotypes", opt.out_prefix + ".pheno.csv"},
                   {"truth", opt.out_prefix + ".truth.csv"}};
  if (data.covariates) meta["files"]["covariates"] = opt.out_prefix + ".covar.csv";
  io::write_text_file(opt.out_prefix + ".meta.json", meta.dump(2) + "\n");

  std::cerr << "wrote " << opt.out_prefix << ".{geno,pheno,truth"
            << (data.covariates ? ",covar" : "") << "}.csv and meta.json\n";
  return 0;
}

struct PowerOptions {
  ScenarioConfig config;
  std::string trait = "binary";
  std::vector<int> k_values{50};
  std::vector<std::string> method_tokens{"waf", "af", "minp", "ssu", "aspu"};
  int replicates = 500;
  int perms = 200;
  int perms_max = -1;
  double alpha = 0.05;
  std::string out_prefix = "power_results";
  bool plot_data = false;
};

int run_power(PowerOptions& opt) {
  opt.config.trait = parse_trait(opt.trait);
  const auto methods = parse_methods(opt.method_tokens);

  PermutationPlan plan;
  plan.b_initial = opt.perms;
  plan.b_max = opt.perms_max > 0 ? opt.perms_max : opt.perms;  // fixed budget by default
  plan.seed = opt.config.seed;

  const auto runs = sweep_k(opt.config, opt.k_values, methods, opt.replicates, plan, opt.alpha);

  io::write_text_file(opt.out_prefix + ".csv", power_csv(runs));
  if (opt.plot_data) io::write_text_file(opt.out_prefix + ".plot.csv", power_plot_csv(runs));

  json summary;
  summary["config"] = scenario_json(opt.config);
  summary["config"].erase("K");
  summary["k_values"] = opt.k_values;
  summary["alpha"] = opt.alpha;
  summary["replicates"] = opt.replicates;
  summary["perms"] = plan.b_initial;
  summary["perms_max"] = plan.b_max;
  summary["results"] = json::array();
  for (const auto& run : runs) {
    for (const auto& r : run.per_method) {
      summary["results"].push_back({{"scenario", scenario_label(r.scenario)},
                                    {"K", r.scenario.k},
                                    {"method", r.method.name()},
                                    {"replicates", r.replicates},
                                    {"skipped", r.skipped},
                                    {"rejections", r.rejections},
                                    {"power", r.power},
                                    {"mc_halfwidth", r.mc_halfwidth}});
    }
  }
  io::write_text_file(opt.out_prefix + ".json", summary.dump(2) + "\n");

  std::cerr << "wrote " << opt.out_prefix << ".csv, " << opt.out_prefix << ".json"
            << (opt.plot_data ? ", " + opt.out_prefix + ".plot.csv" : "") << "\n";
  return 0;
}

}  // namespace

json run_test_command(const AnalysisRequest& request) {
  const auto start = std::chrono::steady_clock::now();

  const GenotypeMatrix genotypes = io::parse_genotypes(request.genotype_path);
  const PhenotypeVector phenotype = io::parse_phenotypes(request.phenotype_path, request.trait);
  if (phenotype.n() != genotypes.n())
    throw DimensionError("phenotype has " + std::to_string(phenotype.n()) +
                         " subjects but genotypes have " + std::to_string(genotypes.n()));

  std::optional<CovariateMatrix> covariates;
  if (request.covariate_path) {
    covariates = io::parse_covariates(*request.covariate_path);
    if (covariates->n() != genotypes.n())
      throw DimensionError("covariates have " + std::to_string(covariates->n()) +
                           " subjects but genotypes have " + std::to_string(genotypes.n()));
  }

  WeightVector weights = WeightVector::flat(genotypes.snv_count());
  switch (request.weight_scheme) {
    case WeightScheme::Flat: break;
    case WeightScheme::MafSd:
      weights = WeightVector::maf_sd(genotypes);
      break;
    case WeightScheme::File:
      if (!request.weight_path) throw DomainError("file weight scheme requires a weight path");
      weights = io::parse_weights(*request.weight_path, genotypes.snv_count());
      break;
  }

  const NullModel nm = fit_null(phenotype, covariates);
  const ScoreKernel kernel(genotypes, nm);
  const auto outcomes =
      run_permutations(kernel, nm.residuals, weights, request.methods, request.plan);

  json results = json::object();
  for (const auto& outcome : outcomes) {
    json entry = {{"statistic", outcome.statistic},
                  {"p_value", outcome.p_value},
                  {"b_used", outcome.b_used},
                  {"escalated", outcome.escalated}};
    if (outcome.diagnostics) {
      const PathDiagnostics& diag = *outcome.diagnostics;
      json d;
      d["r"] = std::vector<double>(diag.r.begin(), diag.r.end());
      d["weights"] = std::vector<double>(diag.weights.begin(), diag.weights.end());
      d["partial_sums"] =
          std::vector<double>(diag.partial_sums.begin(), diag.partial_sums.end());
      d["sort_order"] = diag.sort_order;
      entry["diagnostics"] = std::move(d);
    }
    results[outcome.method.name()] = std::move(entry);
  }

  std::vector<std::string> excluded_labels;
  for (int col : kernel.excluded()) excluded_labels.push_back(genotypes.snv_labels()[col]);
  std::vector<std::string> method_names;
  for (const auto& m : request.methods) method_names.push_back(m.name());

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json doc;
  doc["metadata"] = {{"n", genotypes.n()},
                     {"K", genotypes.snv_count()},
                     {"k_tested", kernel.tested_count()},
                     {"excluded_snvs", excluded_labels},
                     {"trait", trait_name(request.trait)},
                     {"methods", method_names},
                     {"weight_scheme", weight_scheme_name(request.weight_scheme)},
                     {"perms_initial", request.plan.b_initial},
                     {"perms_max", request.plan.b_max},
                     {"seed", request.plan.seed},
                     {"alpha", request.alpha},
                     {"wall_time_sec", wall}};
  doc["results"] = std::move(results);
  return doc;
}

std::string test_result_csv(const json& doc) {
  std::string out = "method,statistic,p_value,b_used,escalated\n";
  for (const auto& [name, entry] : doc.at("results").items()) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%d,%d\n", name.c_str(),
                  entry.at("statistic").get<double>(), entry.at("p_value").get<double>(),
                  entry.at("b_used").get<int>(), entry.at("escalated").get<bool>() ? 1 : 0);
    out += buf;
  }
  return out;
}

int run_cli(int argc, const char* const* argv) {
  apply_thread_env();

  CLI::App app{"Permutation-based SNV-set association tests (wAF and friends)"};
  app.require_subcommand(1);
  // key=value lines under a [subcommand] section mirror that subcommand's
  // flags; explicit flags win over config values
  app.set_config("--config", "", "Config file (INI: [subcommand] sections, key=value)");

  // ---- test ----
  TestOptions test_opt;
  auto* test_cmd = app.add_subcommand("test", "Test a genotype/phenotype pair");
  test_cmd->add_option("--geno", test_opt.request.genotype_path, "Genotype CSV/TSV")
      ->required()
      ->check(CLI::ExistingFile);
  test_cmd->add_option("--pheno", test_opt.request.phenotype_path, "Phenotype file")
      ->required()
      ->check(CLI::ExistingFile);
  test_cmd->add_option("--covar", test_opt.covar_path, "Covariate CSV/TSV")
      ->check(CLI::ExistingFile);
  test_cmd->add_option("--trait", test_opt.trait, "Trait kind")
      ->check(CLI::IsMember({"binary", "continuous"}))
      ->capture_default_str();
  test_cmd
      ->add_option("--method", test_opt.method_tokens,
                   "Method (repeatable): waf af minp ssu spu1..spu8 spuInf aspu")
      ->delimiter(',')
      ->capture_default_str();
  test_cmd->add_option("--weights", test_opt.weights, "maf | flat | file:PATH")
      ->capture_default_str();
  auto* perms_opt =
      test_cmd->add_option("--perms", test_opt.perms, "Initial permutation count B")
          ->check(CLI::PositiveNumber)
          ->capture_default_str();
  auto* perms_max_opt =
      test_cmd->add_option("--perms-max", test_opt.perms_max,
                           "Maximum B for adaptive escalation (default: 10000, or --perms "
                           "when --perms is given explicitly)");
  test_cmd->add_option("--seed", test_opt.request.plan.seed, "RNG seed")->capture_default_str();
  test_cmd->add_option("--alpha", test_opt.request.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  test_cmd->add_option("--out", test_opt.out_path, "Output path (default: stdout)");
  test_cmd->add_option("--format", test_opt.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  // ---- simulate ----
  SimulateOptions sim_opt;
  auto* sim_cmd = app.add_subcommand("simulate", "Write one simulated dataset");
  sim_cmd->add_option("--k", sim_opt.config.k, "Number of SNVs")->capture_default_str();
  sim_cmd->add_option("--n", sim_opt.config.n, "Number of subjects")->capture_default_str();
  sim_cmd->add_option("--corr", sim_opt.config.ar1_corr, "AR(1) latent correlation")
      ->capture_default_str();
  sim_cmd->add_option("--maf-min", sim_opt.config.maf_min, "Lower MAF bound")
      ->capture_default_str();
  sim_cmd->add_option("--maf-max", sim_opt.config.maf_max, "Upper MAF bound")
      ->capture_default_str();
  sim_cmd->add_option("--pi", sim_opt.config.effect_proportion, "Proportion of nonzero effects")
      ->capture_default_str();
  sim_cmd->add_option("--delta", sim_opt.config.effect_bound, "Effect size bound")
      ->capture_default_str();
  sim_cmd->add_option("--trait", sim_opt.trait, "Trait kind")
      ->check(CLI::IsMember({"binary", "continuous"}))
      ->capture_default_str();
  sim_cmd->add_option("--covariates", sim_opt.config.covariate_count,
                      "Number of standard-normal covariates")
      ->capture_default_str();
  sim_cmd->add_option("--covariate-effect", sim_opt.config.covariate_effect,
                      "Coefficient of each covariate in the trait model")
      ->capture_default_str();
  sim_cmd->add_option("--seed", sim_opt.config.seed, "RNG seed")->capture_default_str();
  sim_cmd->add_option("--replicate", sim_opt.replicate, "Replicate index within the seed")
      ->capture_default_str();
  sim_cmd->add_option("--out-prefix", sim_opt.out_prefix, "Output file prefix")->required();

  // ---- power ----
  PowerOptions power_opt;
  auto* power_cmd = app.add_subcommand("power", "Monte Carlo power / type I error study");
  power_cmd->add_option("--k-values", power_opt.k_values, "SNV-set sizes to sweep")
      ->delimiter(',')
      ->capture_default_str();
  power_cmd->add_option("--n", power_opt.config.n, "Subjects per replicate")
      ->capture_default_str();
  power_cmd->add_option("--corr", power_opt.config.ar1_corr, "AR(1) latent correlation")
      ->capture_default_str();
  power_cmd->add_option("--maf-min", power_opt.config.maf_min, "Lower MAF bound")
      ->capture_default_str();
  power_cmd->add_option("--maf-max", power_opt.config.maf_max, "Upper MAF bound")
      ->capture_default_str();
  power_cmd->add_option("--pi", power_opt.config.effect_proportion,
                        "Proportion of nonzero effects (0 = null)")
      ->capture_default_str();
  power_cmd->add_option("--delta", power_opt.config.effect_bound, "Effect size bound")
      ->capture_default_str();
  power_cmd->add_option("--trait", power_opt.trait, "Trait kind")
      ->check(CLI::IsMember({"binary", "continuous"}))
      ->capture_default_str();
  power_cmd->add_option("--covariates", power_opt.config.covariate_count,
                        "Number of standard-normal covariates")
      ->capture_default_str();
  power_cmd->add_option("--covariate-effect", power_opt.config.covariate_effect,
                        "Coefficient of each covariate in the trait model")
      ->capture_default_str();
  power_cmd->add_option("--replicates", power_opt.replicates, "Monte Carlo replicates")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  power_cmd->add_option("--perms", power_opt.perms, "Permutations per test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  power_cmd->add_option("--perms-max", power_opt.perms_max,
                        "Enable adaptive escalation up to this B (default: fixed at --perms)");
  power_cmd->add_option("--alpha", power_opt.alpha, "Significance level")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  power_cmd
      ->add_option("--method", power_opt.method_tokens,
                   "Method (repeatable): waf af minp ssu spu1..spu8 spuInf aspu")
      ->delimiter(',')
      ->capture_default_str();
  power_cmd->add_option("--seed", power_opt.config.seed, "RNG seed")->capture_default_str();
  power_cmd->add_option("--out", power_opt.out_prefix, "Output file prefix")
      ->capture_default_str();
  power_cmd->add_flag("--plot-data", power_opt.plot_data,
                      "Also write wide per-figure series (K x method)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (test_cmd->parsed())
      return run_test(test_opt, perms_opt->count() > 0, perms_max_opt->count() > 0);
    if (sim_cmd->parsed()) return run_simulate(sim_opt);
    if (power_cmd->parsed()) return run_power(power_opt);
  } catch (const std::exception& e) {
    json err = {{"error", {{"type", "runtime_error"}, {"message", e.what()}}}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace waf
