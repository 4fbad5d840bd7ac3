// Acceptance suite: end-to-end checks at desk scale, one pass/fail line per
// criterion. Monte Carlo criteria run under fixed seeds so the suite is
// deterministic; tolerances are pinned in code next to each check.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oracles.hpp"
#include "test_helpers.hpp"
#include "waf/cli.hpp"
#include "waf/errors.hpp"
#include "waf/io.hpp"
#include "waf/power_harness.hpp"

using namespace waf;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::vector<MethodTag> tags(std::initializer_list<const char*> tokens) {
  std::vector<MethodTag> out;
  for (const char* t : tokens) out.push_back(MethodTag::parse(t));
  return out;
}

PermutationPlan fixed_plan(int b, std::uint64_t seed) {
  PermutationPlan plan;
  plan.b_initial = plan.b_max = b;
  plan.seed = seed;
  return plan;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

double power_of(const ScenarioRun& run, const std::string& method) {
  for (const auto& r : run.per_method)
    if (r.method.name() == method) return r.power;
  throw Error("method not found in run: " + method);
}

// ---------------------------------------------------------------------------
// 1. Type I error calibration: null simulation, binary and continuous, with
//    and without one covariate; every method's rejection rate inside the
//    exact binomial 99% band around 0.05 at 1000 replicates.
// ---------------------------------------------------------------------------
void criterion_1() {
  const double lo = 0.033, hi = 0.069;
  const auto methods = tags({"waf", "af", "minp", "ssu", "spu1", "spu2", "spuInf", "aspu"});

  bool pass = true;
  std::string detail;
  int config_index = 0;
  for (TraitKind trait : {TraitKind::Binary, TraitKind::Continuous}) {
    for (int covariates : {0, 1}) {
      ScenarioConfig config;
      config.k = 50;
      config.n = 500;
      config.ar1_corr = 0.9;
      config.effect_proportion = 0.0;
      config.trait = trait;
      config.covariate_count = covariates;
      config.seed = 90210 + config_index;

      const ScenarioRun run =
          run_scenario(config, methods, 1000, fixed_plan(200, config.seed), 0.05);
      for (const auto& r : run.per_method) {
        const bool ok = r.power >= lo && r.power <= hi;
        pass = pass && ok;
        if (!ok)
          detail += trait_name(trait) + "/cov" + std::to_string(covariates) + " " +
                    r.method.name() + "=" + fmt(r.power) + " ";
      }
      if (detail.empty() && config_index == 0) {
        detail = trait_name(trait) + "/cov0 waf=" + fmt(power_of(run, "waf")) +
                 " minp=" + fmt(power_of(run, "minp")) + " ...";
      }
      ++config_index;
    }
  }
  report(1, "type I error within [0.033, 0.069] for all methods and model cases", pass,
         detail);
}

// ---------------------------------------------------------------------------
// 2. Dense binary scenario ordering.
// ---------------------------------------------------------------------------
void criterion_2() {
  ScenarioConfig config;
  config.k = 50;
  config.n = 1000;
  config.effect_proportion = 0.2;
  config.effect_bound = 0.25;
  config.trait = TraitKind::Binary;
  config.seed = 4242;

  const ScenarioRun run = run_scenario(config, tags({"waf", "minp", "aspu"}), 500,
                                       fixed_plan(200, config.seed), 0.05);
  const double waf_p = power_of(run, "waf");
  const double minp_p = power_of(run, "minp");
  const double aspu_p = power_of(run, "aspu");
  const bool pass = waf_p >= minp_p + 0.05 && waf_p >= aspu_p - 0.05;
  report(2, "dense binary: power(wAF) >= power(MinP)+0.05 and >= power(aSPU)-0.05", pass,
         "waf=" + fmt(waf_p) + " minp=" + fmt(minp_p) + " aspu=" + fmt(aspu_p));
}

// ---------------------------------------------------------------------------
// 3. Sparse binary scenario ordering.
// ---------------------------------------------------------------------------
void criterion_3() {
  ScenarioConfig config;
  config.k = 50;
  config.n = 1000;
  config.effect_proportion = 0.02;
  config.effect_bound = 1.0;
  config.trait = TraitKind::Binary;
  config.seed = 4343;

  const ScenarioRun run = run_scenario(config, tags({"waf", "minp", "ssu"}), 500,
                                       fixed_plan(200, config.seed), 0.05);
  const double waf_p = power_of(run, "waf");
  const double minp_p = power_of(run, "minp");
  const double ssu_p = power_of(run, "ssu");
  const bool pass = minp_p >= ssu_p && waf_p >= ssu_p - 0.02;
  report(3, "sparse binary: power(MinP) >= power(SSU) and power(wAF) >= power(SSU)-0.02",
         pass, "waf=" + fmt(waf_p) + " minp=" + fmt(minp_p) + " ssu=" + fmt(ssu_p));
}

// ---------------------------------------------------------------------------
// 4. Continuous-trait analogues of 2 and 3.
// ---------------------------------------------------------------------------
void criterion_4() {
  ScenarioConfig dense;
  dense.k = 50;
  dense.n = 1000;
  dense.effect_proportion = 0.2;
  dense.effect_bound = 0.15;
  dense.trait = TraitKind::Continuous;
  dense.seed = 4444;
  const ScenarioRun dense_run = run_scenario(dense, tags({"waf", "minp", "aspu"}), 500,
                                             fixed_plan(200, dense.seed), 0.05);
  const double dw = power_of(dense_run, "waf");
  const double dm = power_of(dense_run, "minp");
  const double da = power_of(dense_run, "aspu");
  const bool dense_ok = dw >= dm + 0.05 && dw >= da - 0.05;

  ScenarioConfig sparse = dense;
  sparse.effect_proportion = 0.02;
  sparse.effect_bound = 0.5;
  sparse.seed = 4545;
  const ScenarioRun sparse_run = run_scenario(sparse, tags({"waf", "minp", "ssu"}), 500,
                                              fixed_plan(200, sparse.seed), 0.05);
  const double sw = power_of(sparse_run, "waf");
  const double sm = power_of(sparse_run, "minp");
  const double ss = power_of(sparse_run, "ssu");
  const bool sparse_ok = sm >= ss && sw >= ss - 0.02;

  report(4, "continuous dense and sparse orderings", dense_ok && sparse_ok,
         "dense waf=" + fmt(dw) + " minp=" + fmt(dm) + " aspu=" + fmt(da) +
             "; sparse waf=" + fmt(sw) + " minp=" + fmt(sm) + " ssu=" + fmt(ss));
}

// ---------------------------------------------------------------------------
// 5. Exact equivalences on shared permutation streams.
// ---------------------------------------------------------------------------
void criterion_5() {
  // (a) K=1: wAF == Min-P on 50 random tiny datasets (continuous traits:
  // permuted scores are tie-free almost surely, making the identity exact
  // in floating point as well).
  bool a_ok = true;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto data = helpers::random_tiny_dataset(seed, TraitKind::Continuous);
    const NullModel nm = fit_null(data.phenotype);
    const ScoreKernel kernel(data.genotypes, nm);
    const auto outcomes =
        run_permutations(kernel, nm.residuals, WeightVector::maf_sd(data.genotypes),
                         tags({"waf", "minp"}), fixed_plan(99, seed * 3 + 1));
    a_ok = a_ok && outcomes[0].p_value == outcomes[1].p_value;
  }

  // (b) AF == wAF under flat weights, bit-identical.
  ScenarioConfig config;
  config.k = 10;
  config.n = 150;
  config.effect_proportion = 0.3;
  config.effect_bound = 0.6;
  config.trait = TraitKind::Binary;
  config.seed = 606;
  const ReplicateData data = generate_replicate(config, 0);
  const NullModel nm = fit_null(data.phenotype);
  const ScoreKernel kernel(data.genotypes, nm);
  const auto flat_run =
      run_permutations(kernel, nm.residuals, WeightVector::flat(config.k),
                       tags({"waf", "af"}), fixed_plan(200, 11));
  const bool b_ok = flat_run[0].p_value == flat_run[1].p_value &&
                    flat_run[0].statistic == flat_run[1].statistic;

  // (c) SPU(inf) == Min-P when the sd weights are flat (equal-sd columns).
  Eigen::MatrixXd counts(8, 3);
  counts.col(0) << 0, 0, 1, 1, 2, 0, 1, 0;
  counts.col(1) << 1, 0, 0, 2, 1, 0, 0, 1;
  counts.col(2) << 2, 1, 0, 0, 1, 1, 0, 0;
  Eigen::VectorXd yv(8);
  yv << 0.3, -1.2, 0.7, 2.1, -0.4, 0.9, -1.7, 0.2;
  const auto eq_g = helpers::make_genotypes(counts);
  const NullModel eq_nm = fit_null({yv, TraitKind::Continuous});
  const ScoreKernel eq_kernel(eq_g, eq_nm);
  const bool sds_equal = eq_kernel.genotype_sd_tested().maxCoeff() ==
                         eq_kernel.genotype_sd_tested().minCoeff();
  const auto eq_run = run_permutations(eq_kernel, eq_nm.residuals, WeightVector::flat(3),
                                       tags({"spuInf", "minp"}), fixed_plan(199, 21));
  const bool c_ok = sds_equal && eq_run[0].p_value == eq_run[1].p_value;

  // (d) w -> 2w leaves the wAF p-value unchanged.
  const WeightVector w = WeightVector::maf_sd(data.genotypes);
  WeightVector w2 = w;
  w2.w *= 2.0;
  const auto base = run_permutations(kernel, nm.residuals, w, tags({"waf"}),
                                     fixed_plan(200, 31));
  const auto doubled = run_permutations(kernel, nm.residuals, w2, tags({"waf"}),
                                        fixed_plan(200, 31));
  const bool d_ok = base[0].p_value == doubled[0].p_value;

  report(5, "exact equivalences (K=1 wAF=MinP; AF=wAF flat; SPUinf=MinP; w=2w)",
         a_ok && b_ok && c_ok && d_ok,
         std::string("a=") + (a_ok ? "ok" : "FAIL") + " b=" + (b_ok ? "ok" : "FAIL") +
             " c=" + (c_ok ? "ok" : "FAIL") + " d=" + (d_ok ? "ok" : "FAIL"));
}

// ---------------------------------------------------------------------------
// 6. Score oracle: U matches a brute-force GLM score within 1e-8 relative on
//    20 random datasets (n=50, K=3) in all four model cases.
// ---------------------------------------------------------------------------
void criterion_6() {
  RngStream rng(1999, 0);
  bool pass = true;
  int datasets = 0;
  double worst = 0.0;

  while (datasets < 20) {
    const int n = 50, k = 3;
    Eigen::MatrixXd counts(n, k);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < k; ++c) {
        const double u = rng.next_unit();
        counts(i, c) = u < 0.55 ? 0.0 : (u < 0.9 ? 1.0 : 2.0);
      }
    Eigen::MatrixXd cmat(n, 1);
    for (int i = 0; i < n; ++i) cmat(i, 0) = stat::standard_normal(rng);
    Eigen::VectorXd bin(n), cont(n);
    for (int i = 0; i < n; ++i) {
      const double eta = 0.2 + 0.5 * cmat(i, 0) + 0.3 * counts(i, 0);
      bin[i] = rng.next_unit() < 1.0 / (1.0 + std::exp(-eta)) ? 1.0 : 0.0;
      cont[i] = eta + stat::standard_normal(rng);
    }
    if (bin.sum() < 2 || bin.sum() > n - 2) continue;
    ++datasets;

    const auto g = helpers::make_genotypes(counts);
    std::vector<std::vector<double>> geno_cols(k);
    for (int c = 0; c < k; ++c)
      geno_cols[c].assign(counts.col(c).data(), counts.col(c).data() + n);
    const std::vector<std::vector<double>> cov_cols{
        std::vector<double>(cmat.col(0).data(), cmat.col(0).data() + n)};

    for (int model = 0; model < 4; ++model) {
      const bool binary = model % 2 == 0;
      const bool with_cov = model >= 2;
      const Eigen::VectorXd& yv = binary ? bin : cont;
      std::optional<CovariateMatrix> cov;
      if (with_cov) cov.emplace(cmat, std::vector<std::string>{"c1"});

      const NullModel nm =
          fit_null({yv, binary ? TraitKind::Binary : TraitKind::Continuous}, cov);
      const ScoreKernel kernel(g, nm);
      const Eigen::VectorXd u = kernel.score(nm.residuals).u;
      const auto expected =
          oracle::glm_score(std::vector<double>(yv.data(), yv.data() + n), geno_cols,
                            with_cov ? std::optional(cov_cols) : std::nullopt, binary);
      for (int c = 0; c < k; ++c) {
        const double scale = std::max({1.0, std::abs(u[c]), std::abs(expected[c])});
        const double rel = std::abs(u[c] - expected[c]) / scale;
        worst = std::max(worst, rel);
        pass = pass && rel <= 1e-8;
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "worst relative deviation %.2e", worst);
  report(6, "score vector matches the brute-force GLM oracle (4 model cases)", pass, buf);
}

// ---------------------------------------------------------------------------
// 7. Permutation arithmetic: hand-enumerated step-4/step-6 values and the
//    exact 1/(B+1) floor at B=99.
// ---------------------------------------------------------------------------
void criterion_7() {
  bool pass = true;

  Eigen::MatrixXd two(2, 1);
  two << 5, 3;
  const Eigen::MatrixXd p2 = column_rank_pvalues(two);
  pass = pass && p2(0, 0) == 0.5 && p2(1, 0) == 1.0;

  Eigen::MatrixXd three(3, 1);
  three << 1, 2, 3;
  const Eigen::MatrixXd p3 = column_rank_pvalues(three);
  pass = pass && p3(0, 0) == 1.0 && p3(1, 0) == 2.0 / 3.0 && p3(2, 0) == 1.0 / 3.0;

  Eigen::MatrixXd equal = Eigen::MatrixXd::Constant(3, 2, 4.0);
  pass = pass && column_rank_pvalues(equal) == Eigen::MatrixXd::Ones(3, 2);

  Eigen::VectorXd t(4);
  t << 5, 3, 4, 6;
  pass = pass && permutation_pvalue(t, true) == 0.75;
  pass = pass && permutation_pvalue(t, false) == 0.5;
  pass = pass && permutation_pvalue(Eigen::VectorXd::Constant(5, 1.0), true) == 1.0;

  const auto data = helpers::extreme_dataset();
  const NullModel nm = fit_null(data.phenotype);
  const ScoreKernel kernel(data.genotypes, nm);
  const Eigen::VectorXd d = data.genotypes.counts().col(0).array() -
                            data.genotypes.counts().col(0).mean();
  const double aligned = d.dot(nm.residuals);
  const double anti = d.dot(nm.residuals.reverse());
  pass = pass && aligned > 0.0 && std::abs(anti) < aligned;

  double floor_p = -1.0;
  const auto outcomes =
      run_permutations(kernel, nm.residuals, WeightVector::flat(1),
                       tags({"waf", "minp", "ssu"}), fixed_plan(99, 777));
  for (const auto& outcome : outcomes) {
    floor_p = outcome.p_value;
    pass = pass && outcome.p_value == 1.0 / 100.0;
  }
  report(7, "step-4/step-6 micro-cases and the exact 0.01 floor at B=99", pass,
         "floor p=" + fmt(floor_p));
}

// ---------------------------------------------------------------------------
// 8. Determinism: the power CLI run twice, at different thread counts,
//    produces identical CSV output.
// ---------------------------------------------------------------------------
void criterion_8() {
  const fs::path dir = fs::temp_directory_path() / "waf_acceptance_c8";
  fs::create_directories(dir);
  const std::string prefix1 = (dir / "sweep1").string();
  const std::string prefix2 = (dir / "sweep2").string();

  auto run_sweep = [&](const std::string& prefix, int threads) {
#ifdef _OPENMP
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    const std::vector<std::string> args = {
        "waf",  "power",      "--k-values", "10,20",   "--n",     "150",
        "--pi", "0.2",        "--delta",    "0.4",     "--trait", "binary",
        "--replicates", "100", "--perms",   "100",     "--seed",  "2718",
        "--method", "waf,minp,ssu", "--out", prefix,   "--plot-data"};
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
  };

  const int rc1 = run_sweep(prefix1, 1);
  const int rc2 = run_sweep(prefix2, 4);
#ifdef _OPENMP
  omp_set_num_threads(omp_get_num_procs());
#endif

  bool pass = rc1 == 0 && rc2 == 0;
  if (pass) {
    pass = io::read_text_file(prefix1 + ".csv") == io::read_text_file(prefix2 + ".csv") &&
           io::read_text_file(prefix1 + ".json") == io::read_text_file(prefix2 + ".json") &&
           io::read_text_file(prefix1 + ".plot.csv") ==
               io::read_text_file(prefix2 + ".plot.csv");
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  report(8, "power sweep output is byte-identical across runs and thread counts", pass, "");
}

// ---------------------------------------------------------------------------
// Supplementary (not a criterion): the figure orderings emerge once the
// configuration leaves the alpha-floor power regime. At the literal
// desk-scale parameters of criteria 2-4 (K=50 with the stated deltas) every
// method's power is 0.07-0.13, so ordering margins of 0.05 cannot separate
// there; raising K at the dense deltas (more causal variants, harsher
// multiplicity for Min-P) or the sparse delta reproduces the claimed
// orderings clearly. Printed for diagnosis alongside the strict criteria.
// ---------------------------------------------------------------------------
void supplementary_orderings() {
  {
    ScenarioConfig config;
    config.k = 200;
    config.n = 1000;
    config.effect_proportion = 0.2;
    config.effect_bound = 0.25;
    config.trait = TraitKind::Binary;
    config.seed = 8888;
    const ScenarioRun run = run_scenario(config, tags({"waf", "minp", "ssu"}), 300,
                                         fixed_plan(200, config.seed), 0.05);
    std::printf(
        "[INFO] supplementary dense binary K=200 (literal delta=0.25): "
        "waf=%s ssu=%s minp=%s (Min-P clearly behind)\n",
        fmt(power_of(run, "waf")).c_str(), fmt(power_of(run, "ssu")).c_str(),
        fmt(power_of(run, "minp")).c_str());
  }
  {
    ScenarioConfig config;
    config.k = 50;
    config.n = 1000;
    config.effect_proportion = 0.02;
    config.effect_bound = 1.0;
    config.trait = TraitKind::Continuous;
    config.seed = 8889;
    const ScenarioRun run = run_scenario(config, tags({"waf", "minp", "ssu"}), 500,
                                         fixed_plan(200, config.seed), 0.05);
    std::printf(
        "[INFO] supplementary sparse continuous delta=1.0: minp=%s waf=%s ssu=%s "
        "(Min-P first, wAF second)\n",
        fmt(power_of(run, "minp")).c_str(), fmt(power_of(run, "waf")).c_str(),
        fmt(power_of(run, "ssu")).c_str());
  }
  std::fflush(stdout);
}

}  // namespace

int main() {
  std::printf("acceptance suite: permutation SNV-set association tests\n");
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#endif
  criterion_7();  // cheap exactness checks first
  criterion_5();
  criterion_6();
  criterion_8();
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  supplementary_orderings();
  std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILURES",
              g_failures);
  return g_failures == 0 ? 0 : 1;
}
