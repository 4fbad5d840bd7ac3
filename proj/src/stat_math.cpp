#include "waf/stat_math.hpp"

#include <cmath>

#include "waf/errors.hpp"

namespace waf::stat {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244;
constexpr double kLn2 = 0.6931471805599453094;
constexpr double kHalfLn2Pi = 0.9189385332046727418;  // log(2*pi)/2

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite input");
}

}  // namespace

double normal_cdf(double z) {
  require_finite(z, "normal_cdf");
  return 0.5 * std::erfc(-z * kInvSqrt2);
}

double normal_sf(double z) {
  require_finite(z, "normal_sf");
  return 0.5 * std::erfc(z * kInvSqrt2);
}

double normal_sf_log(double z) {
  require_finite(z, "normal_sf_log");
  if (z < 0.0) throw DomainError("normal_sf_log: z must be >= 0");
  if (z <= 8.0) return std::log(0.5 * std::erfc(z * kInvSqrt2));

  // Tail expansion sf(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - ...), summed to
  // its smallest term. The truncation error at z = 8 is below 1e-13
  // relative and shrinks rapidly with z.
  const double inv_z2 = 1.0 / (z * z);
  double term = 1.0;
  double sum = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int m = 1; m < 200; ++m) {
    term *= -(2.0 * m - 1.0) * inv_z2;
    const double mag = std::abs(term);
    if (mag >= prev) break;  // divergent part reached
    sum += term;
    prev = mag;
    if (mag < 1e-18 * sum) break;
  }
  return -0.5 * z * z - std::log(z) - kHalfLn2Pi + std::log(sum);
}

double neg_log_two_sided_p(double z) {
  require_finite(z, "neg_log_two_sided_p");
  const double r = -(kLn2 + normal_sf_log(std::abs(z)));
  return r > 0.0 ? r : 0.0;
}

// Wichura's PPND16 rational approximation, accurate to ~1e-15 over (0, 1).
double normal_quantile(double p) {
  require_finite(p, "normal_quantile");
  if (p <= 0.0 || p >= 1.0) throw DomainError("normal_quantile: p must be in (0, 1)");

  static const double a[8] = {
      3.3871328727963666080e0,  1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4,  4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4,  2.5090809287301226727e3};
  static const double b[8] = {
      1.0,                      4.2313330701600911252e1, 6.8718700749205790830e2,
      5.3941960214247511077e3,  2.1213794301586595867e4, 3.9307895800092710610e4,
      2.8729085735721942674e4,  5.2264952788528545610e3};
  static const double c[8] = {
      1.42343711074968357734e0, 4.63033784615654529590e0,
      5.76949722146069140550e0, 3.64784832476320460504e0,
      1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4};
  static const double d[8] = {
      1.0,                      2.05319162663775882187e0,
      1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2,
      5.47593808499534494600e-4, 1.05075007164441684324e-9};
  static const double e[8] = {
      6.65790464350110377720e0, 5.46378491116411436990e0,
      1.78482653991729133580e0, 2.96560571828504891230e-1,
      2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7};
  static const double f[8] = {
      1.0,                      5.99832206555887937690e-1,
      1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5,
      1.42151175831644588870e-7, 2.04426310338993978564e-15};

  auto ratio = [](const double* num, const double* den, double r) {
    double n = num[7], m = den[7];
    for (int i = 6; i >= 0; --i) {
      n = n * r + num[i];
      m = m * r + den[i];
    }
    return n / m;
  };

  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q * ratio(a, b, r);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    x = ratio(c, d, r - 1.6);
  } else {
    x = ratio(e, f, r - 5.0);
  }
  return q < 0.0 ? -x : x;
}

double standard_normal(RngStream& rng) { return normal_quantile(rng.next_unit_open()); }

void sample_ar1(double corr, RngStream& rng, Eigen::Ref<Eigen::VectorXd> out) {
  if (!(corr >= 0.0 && corr < 1.0)) throw DomainError("sample_ar1: corr must lie in [0, 1)");
  const auto k = out.size();
  if (k < 1) throw DomainError("sample_ar1: need at least one element");
  const double innovation_sd = std::sqrt(1.0 - corr * corr);
  out[0] = standard_normal(rng);
  for (Eigen::Index i = 1; i < k; ++i) {
    out[i] = corr * out[i - 1] + innovation_sd * standard_normal(rng);
  }
}

Eigen::VectorXd sample_ar1_vector(int k, double corr, RngStream& rng) {
  if (k < 1) throw DomainError("sample_ar1_vector: K must be >= 1");
  Eigen::VectorXd z(k);
  sample_ar1(corr, rng, z);
  return z;
}

}  // namespace waf::stat
