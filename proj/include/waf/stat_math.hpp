#pragma once

#include <Eigen/Core>

#include "waf/rng.hpp"

namespace waf::stat {

// Standard normal CDF / survival function.
double normal_cdf(double z);
double normal_sf(double z);

// log of the upper-tail probability, for z >= 0. Uses erfc up to z = 8 and
// the divergent-series tail expansion beyond, so the result stays finite and
// accurate for arbitrarily large z (where the probability itself underflows).
double normal_sf_log(double z);

// Standard normal quantile (Wichura's PPND16 rational approximation),
// p strictly inside (0, 1).
double normal_quantile(double p);

// R = -log p with p = 2 * sf(|z|), the two-sided tail mass of z. Computed in
// log space; finite and nonnegative for every finite z.
double neg_log_two_sided_p(double z);

double standard_normal(RngStream& rng);

// Fills `out` with one draw of a zero-mean Gaussian vector whose covariance
// is corr^|i-j| (first-order autoregressive), using the O(K) recursion
// z_1 = e_1, z_k = corr * z_{k-1} + sqrt(1 - corr^2) * e_k.
void sample_ar1(double corr, RngStream& rng, Eigen::Ref<Eigen::VectorXd> out);
Eigen::VectorXd sample_ar1_vector(int k, double corr, RngStream& rng);

}  // namespace waf::stat
