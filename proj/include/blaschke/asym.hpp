// Asymptotic formulas for the coefficients of b_lambda^n, one per regime of the region
// map, a dispatcher, and an error harness against the exact oracles.

#pragma once

#include "airy.hpp"
#include "core.hpp"
#include "exact.hpp"
#include "fit.hpp"
#include "saddle.hpp"
#include "signed_log.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace blaschke {

/// A regime formula was asked for outside the band where it applies.
struct wrong_regime : numerical_refusal {
  using numerical_refusal::numerical_refusal;
};

namespace detail {

inline int parity_sign(std::int64_t m) { return (m % 2 == 0) ? 1 : -1; }

inline double ratio(std::int64_t n, std::int64_t k) { return static_cast<double>(k) / static_cast<double>(n); }

/// Minimal distance of a from an edge for the saddle formulas: n^{-2/3}.
inline double edge_margin(std::int64_t n) { return std::pow(static_cast<double>(n), -2.0 / 3.0); }

inline SignedLog signed_log_of(int sign, double log_abs) { return {sign, log_abs}; }

/// Ai(x) as sign and log magnitude, beyond double underflow for large x.
inline SignedLog airy_signed_log(double x) {
  if (x > 8) return {1, ai_log(x)};
  return SignedLog::from_value(ai(x).ai);
}

}  // namespace detail

/// (-lambda)^{n-k} (n(1 - lambda^2))^k / k!, for small k.
inline SignedLog asym_region_I(double lambda, std::int64_t n, std::int64_t k) {
  detail::check_lambda(lambda);
  if (n < 1 || k < 0) throw domain_error("need n >= 1, k >= 0");
  const double cap = std::max(20.0, std::pow(static_cast<double>(n), 0.25));
  if (static_cast<double>(k) > cap) throw wrong_regime("region I formula needs k <= max(20, n^{1/4})");
  if (k > n) throw wrong_regime("region I formula needs k <= n");
  const double lg = static_cast<double>(n - k) * std::log(lambda) +
                    static_cast<double>(k) * std::log(static_cast<double>(n) * (1 - lambda * lambda)) -
                    std::lgamma(static_cast<double>(k) + 1);
  return {detail::parity_sign(n - k), lg};
}

/// (2 k pi)^{-1/2} [(alpha0 - a)(1/alpha0 - a)]^{-1/4} (b(z_+) / z_+^a)^n, log-space.
inline SignedLog asym_region_II_VIII(double lambda, std::int64_t n, std::int64_t k) {
  detail::check_lambda(lambda);
  if (n < 1 || k < 1) throw domain_error("need n >= 1, k >= 1");
  const double a = detail::ratio(n, k), a0 = (1 - lambda) / (1 + lambda), m = detail::edge_margin(n);
  const bool left = a <= a0 - m, right = a >= 1 / a0 + m;
  if (!left && !right) throw wrong_regime("regions II/VIII need k/n outside [alpha0, 1/alpha0] by n^{-2/3}");
  const cplx zp = z_pm(lambda, a).plus;
  const double re_phi = std::log(std::abs(blaschke_factor(lambda, zp))) - a * std::log(std::abs(zp));
  const double lg = -0.5 * std::log(2 * static_cast<double>(k) * pi) - 0.25 * std::log((a0 - a) * (1 / a0 - a)) +
                    static_cast<double>(n) * re_phi;
  return {left ? detail::parity_sign(n - k) : 1, lg};
}

namespace detail {
inline SignedLog region_III_VII(double lambda, std::int64_t n, std::int64_t k, bool left) {
  check_lambda(lambda);
  if (n < 1 || k < 1) throw domain_error("need n >= 1, k >= 1");
  const double a = ratio(n, k), a0 = (1 - lambda) / (1 + lambda), m = edge_margin(n);
  if (left && !(a <= a0 - m)) throw wrong_regime("region III needs k/n < alpha0 - n^{-2/3}");
  if (!left && !(a >= 1 / a0 + m)) throw wrong_regime("region VII needs k/n > 1/alpha0 + n^{-2/3}");
  const auto g = gamma_quantities(lambda, a, left ? Side::LeftEdge : Side::RightEdge);
  const double nn = static_cast<double>(n);
  const double lg = -0.5 * std::log(2 * nn * pi) - 0.5 * std::log(a) -
                    0.25 * std::log(std::fabs((1 / a0 - a) * (a0 - a))) - 2.0 / 3.0 * nn * std::abs(g.gamma_cubed);
  return {left ? parity_sign(n - k) : 1, lg};
}
}  // namespace detail

/// (-1)^{n-k} (2 n pi)^{-1/2} a^{-1/2} [(1/alpha0 - a)(alpha0 - a)]^{-1/4} exp(-(2/3) n |gamma|^3).
inline SignedLog asym_region_III(double lambda, std::int64_t n, std::int64_t k) {
  return detail::region_III_VII(lambda, n, k, true);
}

/// (2 n pi)^{-1/2} a^{-1/2} [(a - 1/alpha0)(a - alpha0)]^{-1/4} exp(-(2/3) n |gamma|^3).
inline SignedLog asym_region_VII(double lambda, std::int64_t n, std::int64_t k) {
  return detail::region_III_VII(lambda, n, k, false);
}

/// sqrt(2/(n pi)) / (sqrt(a) Delta^{1/4}): the Region V amplitude without the cosine.
inline double region_V_envelope(double lambda, std::int64_t n, std::int64_t k) {
  const double a = detail::ratio(n, k);
  return std::sqrt(2 / (static_cast<double>(n) * pi)) / (std::sqrt(a) * std::pow(std::fabs(delta_of(lambda, a)), 0.25));
}

/// sqrt(2/(n pi)) cos(n h(phi_+) - pi/4) / (sqrt(a) Delta^{1/4}).
inline double asym_region_V(double lambda, std::int64_t n, std::int64_t k) {
  detail::check_lambda(lambda);
  if (n < 1 || k < 1) throw domain_error("need n >= 1, k >= 1");
  const double a = detail::ratio(n, k), a0 = (1 - lambda) / (1 + lambda), m = detail::edge_margin(n);
  if (!(a >= a0 + m && a <= 1 / a0 - m)) throw wrong_regime("region V needs k/n inside (alpha0, 1/alpha0) by n^{-2/3}");
  const double vp = varphi_plus(lambda, a);
  // n h(phi_+) with the integer part (n - k) phi_+ kept separate
  const double nh = static_cast<double>(n - k) * vp +
                    2 * static_cast<double>(n) * std::atan2(lambda * std::sin(vp), 1 - lambda * std::cos(vp));
  return region_V_envelope(lambda, n, k) * std::cos(std::remainder(nh, 2 * pi) - pi / 4);
}

struct AiryEvaluation {
  SignedLog value;
  double airy_arg = 0;
  double amplitude = 0;  // factor multiplying Ai(airy_arg)
};

/// Uniform Airy formula (-1)^{n-k} sqrt(2|gamma|/a) |Delta|^{-1/4} Ai(n^{2/3} gamma^2) / n^{1/3}
/// (no sign factor on the right side), gamma^2 from the exact gamma^3.
inline AiryEvaluation asym_airy_uniform_eval(double lambda, std::int64_t n, std::int64_t k, const Thresholds& t,
                                             Side side = Side::Auto) {
  detail::check_lambda(lambda);
  if (n < 1 || k < 1) throw domain_error("need n >= 1, k >= 1");
  const double a = detail::ratio(n, k), a0 = (1 - lambda) / (1 + lambda);
  const bool in_left = a >= t.alpha && a <= t.beta, in_right = a >= 1 / t.beta && a <= 1 / t.alpha;
  if (!in_left && !in_right) throw wrong_regime("uniform Airy formula needs k/n in [alpha, beta] or [1/beta, 1/alpha]");
  if (side == Side::Auto) side = in_left ? Side::LeftEdge : Side::RightEdge;
  const auto g = gamma_quantities(lambda, a, side);
  double ratio;  // |gamma^2| / |Delta|, finite at the edge
  if (g.leading_order) {
    ratio = side == Side::LeftEdge ? (1 + lambda) / std::cbrt(lambda * (1 - lambda)) / (1 / a0 - a)
                                   : (1 - lambda) / std::cbrt(lambda * (1 + lambda)) / (a - a0);
  } else {
    ratio = std::fabs(g.gamma_sq) / std::fabs(delta_of(lambda, a));
  }
  const double nn = static_cast<double>(n);
  AiryEvaluation e;
  e.airy_arg = std::cbrt(nn * nn) * g.gamma_sq;
  e.amplitude = std::sqrt(2 / a) * std::pow(ratio, 0.25) / std::cbrt(nn);
  const SignedLog ai_v = detail::airy_signed_log(e.airy_arg);
  e.value = {ai_v.sign * (side == Side::LeftEdge ? detail::parity_sign(n - k) : 1), ai_v.log_abs + std::log(e.amplitude)};
  return e;
}

inline SignedLog asym_airy_uniform(double lambda, std::int64_t n, std::int64_t k, Side side = Side::Auto) {
  const auto t = Thresholds::defaults(BlaschkeParam::from_real(lambda), n);
  return asym_airy_uniform_eval(lambda, n, k, t, side).value;
}

namespace detail {
inline AiryEvaluation region_IV_VI(double lambda, std::int64_t n, std::int64_t k, bool left, double omega) {
  check_lambda(lambda);
  if (n < 1 || k < 1) throw domain_error("need n >= 1, k >= 1");
  const double a = ratio(n, k), a0 = (1 - lambda) / (1 + lambda), nn = static_cast<double>(n);
  const double edge = left ? a0 : 1 / a0;
  if (std::fabs(static_cast<double>(k) - edge * nn) > omega)
    throw wrong_regime(std::string("region ") + (left ? "IV" : "VI") + " needs |k - edge n| <= omega");
  AiryEvaluation e;
  const double g2 = gamma_sq_leading(lambda, a, left ? Side::LeftEdge : Side::RightEdge);
  e.airy_arg = std::cbrt(nn * nn) * g2;
  if (left)
    e.amplitude = std::sqrt(2.0) / std::cbrt(nn) * std::pow(1 + lambda, 0.25) / std::pow(lambda * (1 - lambda), 1.0 / 12) /
                  (std::sqrt(a) * std::pow(1 / a0 - a, 0.25));
  else
    e.amplitude = std::sqrt(2.0) / std::cbrt(nn) * std::pow(1 - lambda, 0.25) / std::pow(lambda * (1 + lambda), 1.0 / 12) /
                  (std::sqrt(a) * std::pow(a - a0, 0.25));
  const SignedLog ai_v = airy_signed_log(e.airy_arg);
  e.value = {ai_v.sign * (left ? parity_sign(n - k) : 1), ai_v.log_abs + std::log(e.amplitude)};
  return e;
}
}  // namespace detail

/// Explicit-prefactor Airy formula at the left transition, leading-order gamma^2.
inline SignedLog asym_region_IV(double lambda, std::int64_t n, std::int64_t k) {
  const auto t = Thresholds::defaults(BlaschkeParam::from_real(lambda), n);
  return detail::region_IV_VI(lambda, n, k, true, t.omega).value;
}

/// Explicit-prefactor Airy formula at the right transition, leading-order gamma^2.
inline SignedLog asym_region_VI(double lambda, std::int64_t n, std::int64_t k) {
  const auto t = Thresholds::defaults(BlaschkeParam::from_real(lambda), n);
  return detail::region_IV_VI(lambda, n, k, false, t.omega).value;
}

// ---------------------------------------------------------------------------
// Dispatcher

enum class AsymFormula { RegionI, RegionII_VIII, RegionIII, RegionV, RegionVII, AiryUniform, AiryLeading };

inline const char* to_string(AsymFormula f) {
  switch (f) {
    case AsymFormula::RegionI: return "region_I";
    case AsymFormula::RegionII_VIII: return "region_II_VIII";
    case AsymFormula::RegionIII: return "region_III";
    case AsymFormula::RegionV: return "region_V";
    case AsymFormula::RegionVII: return "region_VII";
    case AsymFormula::AiryUniform: return "airy_uniform";
    case AsymFormula::AiryLeading: return "airy_leading";
  }
  return "?";
}

struct AsymResult {
  double value = 0;
  SignedLog log_value;
  RegionLabel region;
  AsymFormula formula = AsymFormula::RegionI;
  std::optional<SaddleData> ingredients;  // absent for k = 0
  std::optional<double> airy_arg;
  double envelope = 0;  // amplitude without the oscillating factor, where one exists
};

struct AsymOptions {
  bool uniform_airy = true;  // Regions IV/VI: exact-gamma uniform formula instead of the leading-order one
};

inline AsymResult asym_auto(const BlaschkeParam& param, std::int64_t n, std::int64_t k, const Thresholds& t,
                            AsymOptions opt = {}) {
  const CoeffQuery q(param, n, k);
  AsymResult r{0, {}, classify_region(q, t), AsymFormula::RegionI, std::nullopt, std::nullopt, 0};
  const double lambda = param.lambda();
  const double a = q.a();
  if (k > 0) r.ingredients = saddle_data(lambda, a);
  switch (r.region.region) {
    case Region::I:
      r.formula = AsymFormula::RegionI;
      r.log_value = asym_region_I(lambda, n, k);
      break;
    case Region::II:
    case Region::VIII:
      r.formula = AsymFormula::RegionII_VIII;
      r.log_value = asym_region_II_VIII(lambda, n, k);
      break;
    case Region::III:
      r.formula = AsymFormula::RegionIII;
      r.log_value = asym_region_III(lambda, n, k);
      break;
    case Region::VII:
      r.formula = AsymFormula::RegionVII;
      r.log_value = asym_region_VII(lambda, n, k);
      break;
    case Region::V:
      r.formula = AsymFormula::RegionV;
      r.value = asym_region_V(lambda, n, k);
      r.log_value = SignedLog::from_value(r.value);
      r.envelope = region_V_envelope(lambda, n, k);
      return r;
    case Region::IV:
    case Region::VI: {
      const bool left = r.region.region == Region::IV;
      const bool uniform_ok = left ? (a >= t.alpha && a <= t.beta) : (a >= 1 / t.beta && a <= 1 / t.alpha);
      AiryEvaluation e;
      if (opt.uniform_airy && uniform_ok) {
        r.formula = AsymFormula::AiryUniform;
        e = asym_airy_uniform_eval(lambda, n, k, t, left ? Side::LeftEdge : Side::RightEdge);
      } else {
        r.formula = AsymFormula::AiryLeading;
        e = detail::region_IV_VI(lambda, n, k, left, t.omega);
      }
      r.log_value = e.value;
      r.airy_arg = e.airy_arg;
      const double x = e.airy_arg;
      r.envelope = e.amplitude * (x <= 0 ? 1 / (std::sqrt(pi) * std::pow(std::max(-x, 1.0), 0.25)) : ai(x).ai);
      break;
    }
  }
  r.value = r.log_value.value();
  return r;
}

inline AsymResult asym_auto(const BlaschkeParam& param, std::int64_t n, std::int64_t k, AsymOptions opt = {}) {
  return asym_auto(param, n, k, Thresholds::defaults(param, n), opt);
}

// ---------------------------------------------------------------------------
// Error harness

/// Exact coefficients for a sweep: dense values plus log-space values for the tiny ones.
class ExactSource {
 public:
  ExactSource(const BlaschkeParam& param, std::int64_t n, std::int64_t k_max) : param_(param), n_(n) {
    if (param.is_exact() && rational_affordable(n, k_max)) {
      rational_ = coeff_rational_sequence(*param.exact(), n, k_max);
      seq_.n = n;
      seq_.lambda = param.lambda();
      seq_.lambda_text = param.to_string();
      seq_.provenance = Provenance::RationalConvolution;
      seq_.precision = "exact";
      for (std::int64_t k = 0; k <= k_max; ++k) seq_.values.push_back(rational_->to_double(k));
    } else {
      seq_ = coeff_reference(param, n, k_max);
    }
  }

  const CoeffSequence& sequence() const { return seq_; }

  /// Resolves values below the DFT noise floor with a Cauchy sum on the saddle circle.
  SignedLog log_value(std::int64_t k) const {
    if (rational_) return rational_->log_value(static_cast<std::size_t>(k));
    const double v = seq_[static_cast<std::size_t>(k)];
    if (std::fabs(v) > 1e4 * seq_.error_bound) return SignedLog::from_value(v);
    return coeff_saddle_circle(param_.lambda(), n_, k, 1e-12).value;
  }

  std::string provenance() const { return to_string(seq_.provenance); }

 private:
  BlaschkeParam param_;
  std::int64_t n_;
  CoeffSequence seq_;
  std::optional<RationalCoeffs> rational_;
};

struct SweepRow {
  std::int64_t k = 0;
  Region region = Region::I;
  AsymFormula formula = AsymFormula::RegionI;
  double exact = 0, asym = 0;
  double abs_err = 0, rel_err = 0, env_err = 0;
  double log_err = 0;  // |log|asym| - log|exact||
  bool sign_match = true;
};

struct RegionSummary {
  std::size_t count = 0;
  double max_rel = 0, med_rel = 0, max_abs = 0, max_env = 0, max_log = 0;
};

struct SweepReport {
  std::string lambda_text;
  std::int64_t n = 0;
  std::string exact_provenance;
  std::vector<SweepRow> rows;
  std::map<Region, RegionSummary> summary;
};

inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline SweepReport error_sweep(const BlaschkeParam& param, std::int64_t n, const std::vector<std::int64_t>& ks,
                               const Thresholds& t, AsymOptions opt = {}) {
  SweepReport rep;
  rep.lambda_text = param.to_string();
  rep.n = n;
  if (ks.empty()) return rep;
  const std::int64_t kmax = *std::max_element(ks.begin(), ks.end());
  const ExactSource ex(param, n, kmax);
  rep.exact_provenance = ex.provenance();
  std::map<Region, std::vector<double>> rels;
  for (std::int64_t k : ks) {
    const AsymResult a = asym_auto(param, n, k, t, opt);
    SweepRow row;
    row.k = k;
    row.region = a.region.region;
    row.formula = a.formula;
    const SignedLog le = ex.log_value(k);
    row.exact = le.value();
    row.asym = a.value;
    row.abs_err = std::fabs(row.asym - row.exact);
    row.log_err = std::fabs(a.log_value.log_abs - le.log_abs);
    row.sign_match = a.log_value.sign == le.sign;
    // relative error from log-space values so that underflowed magnitudes still compare
    row.rel_err = row.sign_match ? std::fabs(std::expm1(a.log_value.log_abs - le.log_abs))
                                 : 1 + std::exp(a.log_value.log_abs - le.log_abs);
    row.env_err = a.envelope > 0 ? row.abs_err / a.envelope : row.rel_err;
    rep.rows.push_back(row);
    auto& s = rep.summary[row.region];
    ++s.count;
    s.max_rel = std::max(s.max_rel, row.rel_err);
    s.max_abs = std::max(s.max_abs, row.abs_err);
    s.max_env = std::max(s.max_env, row.env_err);
    s.max_log = std::max(s.max_log, row.log_err);
    rels[row.region].push_back(row.rel_err);
  }
  for (auto& [r, v] : rels) rep.summary[r].med_rel = median(v);
  return rep;
}

inline SweepReport error_sweep(const BlaschkeParam& param, std::int64_t n, const std::vector<std::int64_t>& ks,
                               AsymOptions opt = {}) {
  return error_sweep(param, n, ks, Thresholds::defaults(param, n), opt);
}

struct ExponentFit {
  std::vector<std::int64_t> n_values;
  std::vector<double> max_abs, max_env;
  LineFit abs_fit, env_fit;
};

/// Max Region V errors over k/n in [a_lo, a_hi] for each n, with log-log slopes against n.
inline ExponentFit region_V_error_exponent(double lambda, const std::vector<std::int64_t>& n_values, double a_lo,
                                           double a_hi) {
  ExponentFit f;
  f.n_values = n_values;
  std::vector<double> xs;
  for (std::int64_t n : n_values) {
    const std::int64_t k0 = static_cast<std::int64_t>(std::ceil(a_lo * n)), k1 = static_cast<std::int64_t>(std::floor(a_hi * n));
    const auto seq = coeff_dft_auto(lambda, n);
    double mabs = 0, menv = 0;
    for (std::int64_t k = k0; k <= k1; ++k) {
      const double e = std::fabs(asym_region_V(lambda, n, k) - seq.values[k]);
      mabs = std::max(mabs, e);
      menv = std::max(menv, e / region_V_envelope(lambda, n, k));
    }
    f.max_abs.push_back(mabs);
    f.max_env.push_back(menv);
    xs.push_back(static_cast<double>(n));
  }
  f.abs_fit = fit_loglog(xs, f.max_abs);
  f.env_fit = fit_loglog(xs, f.max_env);
  return f;
}

inline nlohmann::json summary_json(const SweepReport& rep) {
  nlohmann::json j;
  for (const auto& [r, s] : rep.summary)
    j[to_string(r)] = {{"count", s.count}, {"max_rel", s.max_rel}, {"med_rel", s.med_rel},
                       {"max_abs", s.max_abs}, {"max_env", s.max_env}, {"max_log", s.max_log}};
  return j;
}

}  // namespace blaschke
