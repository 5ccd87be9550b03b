// l^p norms of coefficient sequences, paired-min norms, and scaling-exponent fits.

#pragma once

#include "core.hpp"
#include "exact.hpp"
#include "fit.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace blaschke {

inline constexpr double infinity_p = std::numeric_limits<double>::infinity();

struct NormValue {
  double value = 0;
  double error_estimate = 0;  // from the sequence's uniform coefficient error
};

inline void check_p(double p) {
  if (!(p > 0)) throw domain_error("p must lie in (0, inf]");
}

/// (sum |c_k|^p)^{1/p}, or max |c_k| for p = inf.
inline NormValue lp_norm(const CoeffSequence& seq, double p) {
  check_p(p);
  const double e = seq.error_bound;
  const double count = static_cast<double>(seq.size());
  NormValue r;
  if (std::isinf(p)) {
    for (double c : seq.values) r.value = std::max(r.value, std::fabs(c));
    r.error_estimate = e;
    return r;
  }
  // scale by the maximum to keep |c|^p in range
  double peak = 0;
  for (double c : seq.values) peak = std::max(peak, std::fabs(c));
  if (peak == 0) {
    r.error_estimate = p >= 1 ? e * std::pow(count, 1 / p) : std::pow(count * std::pow(e, p), 1 / p);
    return r;
  }
  double s = 0;
  for (double c : seq.values) s += std::pow(std::fabs(c) / peak, p);
  r.value = peak * std::pow(s, 1 / p);
  if (p >= 1) {
    r.error_estimate = e * std::pow(count, 1 / p);
  } else {
    // |x + d|^p <= |x|^p + |d|^p for p < 1
    const double ds = count * std::pow(e, p), vs = std::pow(r.value, p);
    r.error_estimate = std::pow(vs + ds, 1 / p) - r.value;
  }
  return r;
}

/// (sum_k min(|c_{2k}|^p, |c_{2k+1}|^p))^{1/p}; a trailing unpaired entry pairs with 0.
inline double paired_min_norm(const CoeffSequence& seq, double p) {
  check_p(p);
  const std::size_t m = seq.size();
  double peak = 0;
  std::vector<double> mins;
  mins.reserve(m / 2 + 1);
  for (std::size_t k = 0; k < m; k += 2) {
    const double v = std::min(std::fabs(seq[k]), std::fabs(seq[k + 1]));
    mins.push_back(v);
    peak = std::max(peak, v);
  }
  if (std::isinf(p)) return peak;
  if (peak == 0) return 0;
  double s = 0;
  for (double v : mins) s += std::pow(v / peak, p);
  return peak * std::pow(s, 1 / p);
}

/// N^{1/p - 1/2} for 2 <= p < 4, (log N)^{1/4} N^{-1/4} for p = 4, N^{1/(3p) - 1/3} for p > 4.
inline double u_p(double N, double p) {
  if (!(N >= 2)) throw domain_error("u_p needs N >= 2");
  if (!(p >= 2)) throw domain_error("u_p needs p >= 2");
  if (p < 4) return std::pow(N, 1 / p - 0.5);
  if (p == 4) return std::pow(std::log(N), 0.25) * std::pow(N, -0.25);
  if (std::isinf(p)) return std::pow(N, -1.0 / 3);
  return std::pow(N, 1 / (3 * p) - 1.0 / 3);
}

/// 1/2 - 1/r for 2 <= r < 4, 1/3 - 1/(3r) for r > 4.
inline double v_r(double r) {
  if (!(r >= 2)) throw domain_error("v_r needs r >= 2");
  if (r == 4) throw domain_error("v_r is undefined at r = 4");
  if (r < 4) return 0.5 - 1 / r;
  return 1.0 / 3 - 1 / (3 * r);
}

/// Exponent of n in the growth of the l^p norm of the coefficients of b^n.
inline double predicted_norm_exponent(double p) {
  check_p(p);
  if (std::isinf(p)) return -1.0 / 3;
  if (p < 4) return (2 - p) / (2 * p);
  if (p == 4) return -0.25;  // against n / log n
  return -(p - 1) / (3 * p);
}

struct NormReport {
  double lambda = 0;
  double p = 2;
  std::vector<std::int64_t> n_values;
  std::vector<double> norms;
  std::vector<double> errors;
  double fitted_exponent = 0;
  double predicted_exponent = 0;
  double r_squared = 0;
  bool log_correction = false;  // p = 4: abscissa is n / log n
  /// norm / n^{predicted}; empirical constant per n (p = 4 uses (n / log n)).
  std::vector<double> normalized;
};

/// Least-squares slope of log ||c||_p against log n (log(n / log n) for p = 4), coefficients by DFT.
inline NormReport exponent_fit(double lambda, double p, const std::vector<std::int64_t>& n_values) {
  check_p(p);
  if (n_values.size() < 2) throw config_error("exponent_fit needs at least two n values");
  NormReport rep;
  rep.lambda = lambda;
  rep.p = p;
  rep.n_values = n_values;
  rep.log_correction = (p == 4);
  rep.predicted_exponent = predicted_norm_exponent(p);
  std::vector<double> xs;
  for (std::int64_t n : n_values) {
    const CoeffSequence seq = coeff_dft_auto(lambda, n);
    const NormValue v = lp_norm(seq, p);
    if (!(v.value > 0)) throw numerical_refusal("exponent_fit: zero norm");
    rep.norms.push_back(v.value);
    rep.errors.push_back(v.error_estimate);
    const double nn = static_cast<double>(n);
    const double x = rep.log_correction ? nn / std::log(nn) : nn;
    xs.push_back(x);
    rep.normalized.push_back(v.value / std::pow(x, rep.predicted_exponent));
  }
  const LineFit f = fit_loglog(xs, rep.norms);
  rep.fitted_exponent = f.slope;
  rep.r_squared = f.r_squared;
  return rep;
}

inline nlohmann::json to_json(const NormReport& r) {
  nlohmann::json j;
  j["lambda"] = r.lambda;
  if (std::isinf(r.p)) j["p"] = "inf";
  else j["p"] = r.p;
  j["n_values"] = r.n_values;
  j["norms"] = r.norms;
  j["error_estimates"] = r.errors;
  j["normalized"] = r.normalized;
  j["fitted_exponent"] = r.fitted_exponent;
  j["predicted_exponent"] = r.predicted_exponent;
  j["r_squared"] = r.r_squared;
  j["log_correction"] = r.log_correction;
  return j;
}

}  // namespace blaschke
