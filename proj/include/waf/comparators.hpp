#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace waf {

enum class Method { WAF, AF, MinP, SSU, SPU, ASPU };

// Method selector. SPU carries its power c in {1..8} or kInfinitePower.
struct MethodTag {
  Method method = Method::WAF;
  int spu_power = 0;

  static constexpr int kInfinitePower = -1;

  static MethodTag parse(const std::string& token);
  std::string name() const;

  bool operator==(const MethodTag&) const = default;
};

// Powers entering the adaptive SPU combination: 1..8 and infinity.
const std::vector<int>& aspu_power_set();

// max_k |u_k|: the most extreme standardized score (equivalent to ranking by
// the minimal marginal p-value).
double minp_statistic(const Eigen::VectorXd& u_std);

// Sum of squared (unstandardized) scores.
double ssu_statistic(const Eigen::VectorXd& u);

// Sum of powered weighted scores, sum_k (sd_k * u_k)^c, or max_k |sd_k * u_k|
// for the infinite power. Odd powers are signed; their significance is
// ranked by absolute value.
double spu_statistic(const Eigen::VectorXd& u_std, const Eigen::VectorXd& sd_g,
                     int power);

// Adaptive SPU path over a shared permutation table. `spu_stat_rows` holds
// the raw SPU statistics, one row per permutation (row 0 observed) and one
// column per power. Returns T(b) = min over powers of the rank p-value of
// row b; the final p-value is the step-6 rank of T(0) with smaller extreme.
Eigen::VectorXd aspu_combine(const Eigen::MatrixXd& spu_stat_rows,
                             const std::vector<int>& powers);

}  // namespace waf
