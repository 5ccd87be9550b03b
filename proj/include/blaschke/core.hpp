// Domain parameters for powers of a Blaschke factor b(z) = (z - lambda) / (1 - lambda z)
// and the region classifier that routes an index pair (n, k) to its asymptotic regime.

#pragma once

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace blaschke {

/// Raised for arguments outside the mathematical domain of an operation.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Raised for inconsistent configuration (thresholds, specs, CLI options).
struct config_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when a computation would exceed its configured work budget.
struct budget_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a numerical method declines to produce a value it cannot certify
/// (aliasing not controlled, truncation tail too large, formula used off-regime).
struct numerical_refusal : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Fraction = boost::rational<std::int64_t>;

inline constexpr double pi = 3.141592653589793238462643383279502884;

/// Real parameter lambda in (0, 1), optionally carried as an exact fraction.
class BlaschkeParam {
 public:
  static BlaschkeParam from_real(double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0))
      throw domain_error("lambda must lie in (0, 1), got " + std::to_string(lambda));
    BlaschkeParam p;
    p.lambda_ = lambda;
    return p;
  }

  static BlaschkeParam from_fraction(Fraction f) {
    if (!(f > 0 && f < 1))
      throw domain_error("lambda must lie in (0, 1)");
    BlaschkeParam p;
    p.exact_ = f;
    p.lambda_ = static_cast<double>(f.numerator()) / static_cast<double>(f.denominator());
    return p;
  }

  /// Accepts "p/q" (exact) or a decimal literal (float only).
  static BlaschkeParam parse(std::string_view text) {
    const std::string s(text);
    if (auto slash = s.find('/'); slash != std::string::npos) {
      std::size_t used_num = 0, used_den = 0;
      std::int64_t num = 0, den = 0;
      try {
        num = std::stoll(s.substr(0, slash), &used_num);
        den = std::stoll(s.substr(slash + 1), &used_den);
      } catch (const std::exception&) {
        throw config_error("cannot parse lambda '" + s + "'");
      }
      if (used_num != slash || used_den != s.size() - slash - 1 || den == 0)
        throw config_error("cannot parse lambda '" + s + "'");
      return from_fraction(Fraction(num, den));
    }
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw config_error("cannot parse lambda '" + s + "'");
    }
    if (used != s.size()) throw config_error("cannot parse lambda '" + s + "'");
    return from_real(v);
  }

  double lambda() const { return lambda_; }
  const std::optional<Fraction>& exact() const { return exact_; }
  bool is_exact() const { return exact_.has_value(); }

  /// Transition ratio (1 - lambda) / (1 + lambda).
  double alpha0() const { return (1.0 - lambda_) / (1.0 + lambda_); }
  double alpha0_inv() const { return (1.0 + lambda_) / (1.0 - lambda_); }

  std::string to_string() const {
    if (exact_)
      return std::to_string(exact_->numerator()) + "/" + std::to_string(exact_->denominator());
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", lambda_);
    return buf;
  }

 private:
  double lambda_ = 0.5;
  std::optional<Fraction> exact_;
};

inline double alpha0(const BlaschkeParam& p) { return p.alpha0(); }

inline Fraction alpha0_exact(const Fraction& lambda) {
  return (Fraction(1) - lambda) / (Fraction(1) + lambda);
}

/// Result of moving a complex lambda onto the positive axis.
struct PhaseReduction {
  double modulus;
  std::complex<double> phase;  // multiply the real-lambda coefficient by this
};

/// coeff(b_lambda^n, k) = coeff(b_|lambda|^n, k) * exp(i (n - k) arg lambda).
inline PhaseReduction reduce_phase(std::complex<double> lambda, std::int64_t n, std::int64_t k) {
  const double r = std::abs(lambda);
  if (!(r < 1.0)) throw domain_error("|lambda| must be < 1");
  const double theta = (r == 0.0) ? 0.0 : std::arg(lambda);
  const double angle = static_cast<double>(n - k) * theta;
  return {r, std::polar(1.0, angle)};
}

/// (lambda, n, k) with the ratio a = k/n in exact and floating views.
struct CoeffQuery {
  BlaschkeParam param;
  std::int64_t n = 1;
  std::int64_t k = 0;

  CoeffQuery(BlaschkeParam p, std::int64_t n_, std::int64_t k_) : param(p), n(n_), k(k_) {
    if (n < 1) throw domain_error("n must be >= 1");
    if (k < 0) throw domain_error("k must be >= 0");
  }

  Fraction ratio() const { return Fraction(k, n); }
  double a() const { return static_cast<double>(k) / static_cast<double>(n); }

  /// Sign of k/n - alpha0, exact whenever lambda is a fraction.
  int compare_alpha0() const { return compare_edge(false); }
  /// Sign of k/n - 1/alpha0, exact whenever lambda is a fraction.
  int compare_alpha0_inv() const { return compare_edge(true); }

 private:
  int compare_edge(bool right) const {
    if (const auto& f = param.exact()) {
      // lambda = p/q: alpha0 = (q-p)/(q+p)
      const __int128 p = f->numerator(), q = f->denominator();
      const __int128 lhs = static_cast<__int128>(k) * (right ? (q - p) : (q + p));
      const __int128 rhs = static_cast<__int128>(n) * (right ? (q + p) : (q - p));
      return (lhs > rhs) - (lhs < rhs);
    }
    const double edge = right ? param.alpha0_inv() : param.alpha0();
    const double diff = a() - edge;
    return (diff > 0) - (diff < 0);
  }
};

enum class Region { I = 1, II, III, IV, V, VI, VII, VIII };

inline const char* to_string(Region r) {
  switch (r) {
    case Region::I: return "I";
    case Region::II: return "II";
    case Region::III: return "III";
    case Region::IV: return "IV";
    case Region::V: return "V";
    case Region::VI: return "VI";
    case Region::VII: return "VII";
    case Region::VIII: return "VIII";
  }
  return "?";
}

/// Region-map thresholds: alpha in (0, alpha0), beta in (alpha0, 1), omega the Airy half-width in k.
struct Thresholds {
  double alpha;
  double beta;
  double omega;

  /// alpha = alpha0/2, beta = (alpha0+1)/2, omega = n^{1/3} ln(max(n, 3)).
  /// For small n omega is clamped to (alpha0 - alpha) n so the bands stay nested.
  static Thresholds defaults(const BlaschkeParam& p, std::int64_t n) {
    const double a0 = p.alpha0();
    const double nn = static_cast<double>(n);
    const double omega = std::cbrt(nn) * std::log(std::max(nn, 3.0));
    const double cap = std::min(a0 / 2.0, (p.alpha0_inv() - a0) / 2.0) * nn;
    return {a0 / 2.0, (a0 + 1.0) / 2.0, std::min(omega, cap)};
  }

  /// Region I is "k fixed"; it is cut off at n^{1/4} inside [0, alpha n].
  static double region_one_limit(std::int64_t n) { return std::floor(std::pow(static_cast<double>(n), 0.25)); }

  void validate(const BlaschkeParam& p, std::int64_t n) const {
    const double a0 = p.alpha0(), a0i = p.alpha0_inv(), nn = static_cast<double>(n);
    if (!(alpha > 0 && alpha < a0)) throw config_error("alpha must lie in (0, alpha0)");
    if (!(beta > a0 && beta < 1)) throw config_error("beta must lie in (alpha0, 1)");
    if (!(omega > 0)) throw config_error("omega must be positive");
    const double e[] = {0.0, alpha * nn, a0 * nn - omega, a0 * nn + omega,
                        a0i * nn - omega, a0i * nn + omega, nn / alpha};
    for (int i = 0; i + 1 < 7; ++i)
      if (!(e[i] <= e[i + 1]))
        throw config_error("thresholds are not nested for n = " + std::to_string(n) +
                           " (omega too large relative to n?)");
  }
};

struct RegionLabel {
  Region region;
  Thresholds thresholds;
};

/// Boundaries resolve to the lower-indexed region.
inline RegionLabel classify_region(const CoeffQuery& q, const Thresholds& t) {
  t.validate(q.param, q.n);
  const double nn = static_cast<double>(q.n), k = static_cast<double>(q.k);
  const double a0 = q.param.alpha0(), a0i = q.param.alpha0_inv();
  const double alpha_n = t.alpha * nn;
  Region r;
  if (k <= alpha_n)
    r = (k <= Thresholds::region_one_limit(q.n)) ? Region::I : Region::II;
  else if (k <= a0 * nn - t.omega)
    r = Region::III;
  else if (k <= a0 * nn + t.omega)
    r = Region::IV;
  else if (k <= a0i * nn - t.omega)
    r = Region::V;
  else if (k <= a0i * nn + t.omega)
    r = Region::VI;
  else if (k <= nn / t.alpha)
    r = Region::VII;
  else
    r = Region::VIII;
  return {r, t};
}

inline RegionLabel classify_region(const CoeffQuery& q) {
  return classify_region(q, Thresholds::defaults(q.param, q.n));
}

}  // namespace blaschke
