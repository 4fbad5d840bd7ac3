#include "waf/comparators.hpp"

#include <cmath>

#include "waf/errors.hpp"
#include "waf/ranking.hpp"

namespace waf {

MethodTag MethodTag::parse(const std::string& token) {
  if (token == "waf") return {Method::WAF, 0};
  if (token == "af") return {Method::AF, 0};
  if (token == "minp") return {Method::MinP, 0};
  if (token == "ssu") return {Method::SSU, 0};
  if (token == "aspu") return {Method::ASPU, 0};
  if (token == "spuInf") return {Method::SPU, kInfinitePower};
  if (token.size() == 4 && token.starts_with("spu") && token[3] >= '1' && token[3] <= '8')
    return {Method::SPU, token[3] - '0'};
  throw DomainError("unknown method token '" + token +
                    "' (expected waf, af, minp, ssu, spu1..spu8, spuInf or aspu)");
}

std::string MethodTag::name() const {
  switch (method) {
    case Method::WAF: return "waf";
    case Method::AF: return "af";
    case Method::MinP: return "minp";
    case Method::SSU: return "ssu";
    case Method::ASPU: return "aspu";
    case Method::SPU:
      return spu_power == kInfinitePower ? "spuInf" : "spu" + std::to_string(spu_power);
  }
  return "?";
}

const std::vector<int>& aspu_power_set() {
  static const std::vector<int> powers = {1, 2, 3, 4, 5, 6, 7, 8, MethodTag::kInfinitePower};
  return powers;
}

double minp_statistic(const Eigen::VectorXd& u_std) {
  if (u_std.size() < 1) throw DimensionError("minp_statistic: empty input");
  return u_std.cwiseAbs().maxCoeff();
}

double ssu_statistic(const Eigen::VectorXd& u) {
  if (u.size() < 1) throw DimensionError("ssu_statistic: empty input");
  return u.squaredNorm();
}

double spu_statistic(const Eigen::VectorXd& u_std, const Eigen::VectorXd& sd_g, int power) {
  if (u_std.size() < 1) throw DimensionError("spu_statistic: empty input");
  if (u_std.size() != sd_g.size()) throw DimensionError("spu_statistic: lengths differ");
  if (power != MethodTag::kInfinitePower && (power < 1 || power > 8))
    throw DomainError("spu_statistic: power must be 1..8 or infinite");

  const Eigen::ArrayXd weighted = u_std.array() * sd_g.array();
  if (power == MethodTag::kInfinitePower) return weighted.abs().maxCoeff();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < weighted.size(); ++k) {
    double term = weighted[k];
    for (int i = 1; i < power; ++i) term *= weighted[k];
    sum += term;
  }
  return sum;
}

Eigen::VectorXd aspu_combine(const Eigen::MatrixXd& spu_stat_rows,
                             const std::vector<int>& powers) {
  if (spu_stat_rows.cols() != static_cast<Eigen::Index>(powers.size()))
    throw DimensionError("aspu_combine: one column per power required");

  // Odd powers are two-sided: rank by |T|. Even and infinite powers are
  // already larger-is-more-extreme.
  Eigen::MatrixXd adjusted = spu_stat_rows;
  for (Eigen::Index c = 0; c < adjusted.cols(); ++c) {
    const int power = powers[c];
    if (power != MethodTag::kInfinitePower && power % 2 == 1)
      adjusted.col(c) = adjusted.col(c).cwiseAbs();
  }
  return min_over_k(column_rank_pvalues(adjusted));
}

}  // namespace waf
