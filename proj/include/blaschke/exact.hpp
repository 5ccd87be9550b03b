// Independent oracles for the Taylor coefficients of b_lambda^n:
// exact rational expansion, FFT sampling on a circle, and adaptive quadrature of the
// real phase integral.

#pragma once

#include "core.hpp"
#include "fft.hpp"
#include "fit.hpp"
#include "signed_log.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace blaschke {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

enum class Provenance { RationalConvolution, DftSampling, Quadrature };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::RationalConvolution: return "RationalConvolution";
    case Provenance::DftSampling: return "DftSampling";
    case Provenance::Quadrature: return "Quadrature";
  }
  return "?";
}

struct CoeffSequence {
  std::vector<double> values;
  std::int64_t n = 0;
  double lambda = 0;
  std::string lambda_text;
  Provenance provenance = Provenance::DftSampling;
  double error_bound = 0;       // absolute, uniform in k
  std::string precision;        // "exact", "binary64", "binary80"

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t k) const { return k < values.size() ? values[k] : 0.0; }
};

// ---------------------------------------------------------------------------
// Work budget

inline constexpr double default_work_limit = 2e6;

/// Limit on n*k for the rational oracle; BLASCHKE_WORK_LIMIT overrides the default.
inline double work_limit() {
  if (const char* env = std::getenv("BLASCHKE_WORK_LIMIT")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end != env && v > 0) return v;
  }
  return default_work_limit;
}

inline bool rational_affordable(std::int64_t n, std::int64_t k, double limit = work_limit()) {
  return static_cast<double>(n) * static_cast<double>(std::max<std::int64_t>(k, 1)) <= limit;
}

// ---------------------------------------------------------------------------
// Rational oracle

namespace detail {

inline void check_rational_lambda(const Fraction& lambda) {
  if (!(lambda > 0 && lambda < 1)) throw domain_error("lambda must lie in (0, 1)");
}

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= (n - k + i);
    r /= i;
  }
  return r;
}

}  // namespace detail

/// Coefficients of b^n as integers N_k over q^(n+k), lambda = p/q.
struct RationalCoeffs {
  std::int64_t p = 0, q = 1, n = 0;
  std::vector<BigInt> numer;

  std::size_t size() const { return numer.size(); }

  BigRational value(std::size_t k) const {
    return BigRational(numer.at(k), boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(n + static_cast<std::int64_t>(k))));
  }

  BigFloat big(std::size_t k) const {
    if (numer.at(k) == 0) return 0;
    BigFloat v(numer[k]);
    return v / boost::multiprecision::pow(BigFloat(q), static_cast<int>(n + static_cast<std::int64_t>(k)));
  }

  /// Underflows to a signed zero for very small values; see log_value().
  double to_double(std::size_t k) const { return static_cast<double>(big(k)); }

  SignedLog log_value(std::size_t k) const {
    if (numer.at(k) == 0) return {};
    const int s = numer[k] < 0 ? -1 : 1;
    BigFloat mag(boost::multiprecision::abs(numer[k]));
    const double lg = static_cast<double>(boost::multiprecision::log(mag)) -
                      static_cast<double>(n + static_cast<std::int64_t>(k)) * std::log(static_cast<double>(q));
    return {s, lg};
  }
};

/// Direct convolution of (z - lambda)^n with (1 - lambda z)^(-n), single index.
inline BigRational coeff_rational(const Fraction& lambda, std::int64_t n, std::int64_t k,
                                  double limit = work_limit()) {
  detail::check_rational_lambda(lambda);
  if (n < 1) throw domain_error("n must be >= 1");
  if (k < 0) throw domain_error("k must be >= 0");
  if (!rational_affordable(n, k, limit))
    throw budget_exceeded("coeff_rational: n*k = " + std::to_string(static_cast<double>(n) * k) +
                          " exceeds work limit " + std::to_string(limit));
  const BigInt p = lambda.numerator(), q = lambda.denominator();
  BigInt sum = 0;
  for (std::int64_t j = 0; j <= std::min(k, n); ++j) {
    BigInt term = detail::binomial(n, j) * detail::binomial(k - j + n - 1, n - 1) *
                  boost::multiprecision::pow(p, static_cast<unsigned>(n + k - 2 * j)) *
                  boost::multiprecision::pow(q, static_cast<unsigned>(2 * j));
    if ((n - j) % 2) sum -= term;
    else sum += term;
  }
  return BigRational(sum, boost::multiprecision::pow(q, static_cast<unsigned>(n + k)));
}

/// All coefficients 0..K via the three-term recurrence of b^n; exact integer arithmetic.
inline RationalCoeffs coeff_rational_sequence(const Fraction& lambda, std::int64_t n, std::int64_t K,
                                              double limit = work_limit()) {
  detail::check_rational_lambda(lambda);
  if (n < 1) throw domain_error("n must be >= 1");
  if (K < 0) throw domain_error("K must be >= 0");
  if (!rational_affordable(n, K, limit))
    throw budget_exceeded("coeff_rational_sequence: n*K exceeds work limit " + std::to_string(limit));
  RationalCoeffs r;
  r.p = lambda.numerator();
  r.q = lambda.denominator();
  r.n = n;
  r.numer.resize(static_cast<std::size_t>(K) + 1);
  const BigInt p = r.p, q = r.q;
  // N_0 = (-p)^n; N_1 = n (q^2 - p^2) (-p)^(n-1)
  r.numer[0] = boost::multiprecision::pow(p, static_cast<unsigned>(n));
  if (n % 2) r.numer[0] = -r.numer[0];
  if (K >= 1) {
    BigInt t = boost::multiprecision::pow(p, static_cast<unsigned>(n - 1)) * (q * q - p * p) * n;
    r.numer[1] = ((n - 1) % 2) ? BigInt(-t) : t;
  }
  const BigInt s = q * q + p * p, d = q * q - p * p;
  for (std::int64_t k = 1; k < K; ++k) {
    BigInt num = (s * k - d * n) * r.numer[k] - p * q * q * (k - 1) * r.numer[k - 1];
    r.numer[k + 1] = num / (p * (k + 1));
  }
  return r;
}

// ---------------------------------------------------------------------------
// DFT oracle

/// Smallest power of two >= max(8n, 2(1/alpha0 + 1)n).
inline std::int64_t default_dft_size(double lambda, std::int64_t n) {
  const double a0i = (1 + lambda) / (1 - lambda);
  // beyond n / alpha0 the coefficients decay like lambda^k; leave room for 1e-18 of that decay
  const double decay = a0i * n + std::log(1e-18) / std::log(lambda);
  const double need = std::max({8.0 * n, 2.0 * (a0i + 1.0) * n, decay});
  std::int64_t m = 1;
  while (static_cast<double>(m) < need) m <<= 1;
  return m;
}

namespace detail {

/// Aliasing estimate: fit exp(-delta k) to the tail window, halve delta, extrapolate to M.
inline double aliasing_bound(const std::vector<double>& v, double lambda, std::int64_t n, double floor_abs) {
  const std::int64_t m = static_cast<std::int64_t>(v.size());
  const double a0i = (1 + lambda) / (1 - lambda);
  const std::int64_t lo = std::max<std::int64_t>(static_cast<std::int64_t>(a0i * n + 2 * std::cbrt(n) + 1), m / 4);
  const std::int64_t hi = std::min(m, std::max(m / 2, lo + (m - lo) / 2));
  std::vector<double> xs, ys;
  for (std::int64_t k = lo; k < hi; ++k) {
    const double a = std::fabs(v[k]);
    if (a <= floor_abs) break;
    xs.push_back(static_cast<double>(k));
    ys.push_back(std::log(a));
  }
  if (xs.size() < 8) {
    if (xs.empty()) return floor_abs * std::exp(-0.5 * static_cast<double>(m - lo) / std::max<double>(n, 1));
    return std::exp(ys.back());  // tail is too short to fit; report the last resolved magnitude
  }
  const LineFit f = fit_line(xs, ys);
  const double delta = -f.slope / 2.0;
  if (!(delta > 0)) return std::numeric_limits<double>::infinity();
  const double kstar = xs.back();
  const double at_m = std::exp(ys.back() - delta * (static_cast<double>(m) - kstar));
  return at_m / (-std::expm1(-delta * static_cast<double>(m)));
}

}  // namespace detail

/// All M bins of the DFT of b(e^{2 pi i j/M})^n; bin k holds sum_j c(k + jM).
template <class T = double>
CoeffSequence coeff_dft(double lambda, std::int64_t n, std::int64_t m) {
  if (!(lambda > 0 && lambda < 1)) throw domain_error("lambda must lie in (0, 1)");
  if (n < 1) throw domain_error("n must be >= 1");
  if (m < 4 * n) throw numerical_refusal("coeff_dft: M = " + std::to_string(m) + " < 4n, aliasing not controlled");
  if (m > (std::int64_t{1} << 30)) throw budget_exceeded("coeff_dft: M too large");
  const T lam = static_cast<T>(lambda);
  const T two_pi = static_cast<T>(2) * std::acos(static_cast<T>(-1));
  std::vector<std::complex<T>> s(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < m; ++j) {
    const T theta = two_pi * static_cast<T>(j) / static_cast<T>(m);
    const T lin = two_pi * static_cast<T>((static_cast<__int128>(n) * j) % m) / static_cast<T>(m);
    const T ang = lin + static_cast<T>(2 * n) * std::atan2(lam * std::sin(theta), 1 - lam * std::cos(theta));
    s[j] = std::polar(static_cast<T>(1), ang);
  }
  const auto c = detail::fft<T>(s);
  CoeffSequence out;
  out.n = n;
  out.lambda = lambda;
  out.lambda_text = BlaschkeParam::from_real(lambda).to_string();
  out.provenance = Provenance::DftSampling;
  out.precision = std::is_same_v<T, double> ? "binary64" : "binary80";
  out.values.resize(static_cast<std::size_t>(m));
  for (std::int64_t k = 0; k < m; ++k) out.values[k] = static_cast<double>(c[k].real() / static_cast<T>(m));
  const double eps = static_cast<double>(std::numeric_limits<T>::epsilon());
  // phase error grows like n eps per sample and averages down by sqrt(M)
  const double rounding = 10.0 * eps * (std::log2(static_cast<double>(m)) + static_cast<double>(n) / std::sqrt(static_cast<double>(m)));
  const double floor_abs = std::max(1e3 * eps, 1e-16) * std::log2(static_cast<double>(m));
  out.error_bound = detail::aliasing_bound(out.values, lambda, n, floor_abs) + rounding;
  return out;
}

/// Picks extended precision above n = 1e4.
inline CoeffSequence coeff_dft_auto(double lambda, std::int64_t n, std::int64_t m = 0) {
  if (m == 0) m = default_dft_size(lambda, n);
  return n > 10000 ? coeff_dft<long double>(lambda, n, m) : coeff_dft<double>(lambda, n, m);
}

// ---------------------------------------------------------------------------
// Cauchy sum on the saddle circle (exponentially small coefficients)

namespace detail {

/// |z_+| for a outside [alpha0, 1/alpha0], else 1.
inline double saddle_radius(double lambda, double a) {
  const double a0 = (1 - lambda) / (1 + lambda);
  if (a <= a0 * (1 + 1e-12) && a > 0) {
    const double cm1 = (1 + lambda) * (1 + lambda) * (a - a0) / (2 * lambda * a);  // c + 1
    const double c = cm1 - 1;
    return std::fabs(c + std::sqrt(std::max(c * c - 1, 0.0)));
  }
  if (a >= (1 / a0) * (1 - 1e-12)) {
    const double cp1 = (1 - lambda) * (1 - lambda) * (a - 1 / a0) / (2 * lambda * a);  // c - 1
    const double c = cp1 + 1;
    return c + std::sqrt(std::max(c * c - 1, 0.0));
  }
  return 1.0;
}

}  // namespace detail

struct CauchyResult {
  SignedLog value;
  double radius = 1;
  std::int64_t samples = 0;
  double rel_change = 0;  // between the last two sample counts
};

/// c(k) = r^{-k} mean_j b(r w_j)^n w_j^{-k}, accumulated in long double and scaled in log space.
inline CauchyResult coeff_at_radius(double lambda, std::int64_t n, std::int64_t k, double r,
                                    double rel_tol = 1e-13, std::int64_t max_samples = std::int64_t{1} << 22) {
  if (!(lambda > 0 && lambda < 1)) throw domain_error("lambda must lie in (0, 1)");
  if (!(r > 0 && r < 1 / lambda)) throw domain_error("radius must lie in (0, 1/lambda)");
  using L = long double;
  const L lam = lambda, rr = r, nn = static_cast<L>(n), kk = static_cast<L>(k);
  const L two_pi = 2 * std::acos(L(-1));
  auto log_term = [&](L theta) {
    const std::complex<L> z = std::polar(rr, theta);
    const std::complex<L> w = (z - lam) / (L(1) - lam * z);
    return std::complex<L>(nn * std::log(std::abs(w)), nn * std::arg(w));
  };
  // the modulus is largest on the real axis (theta = 0 or pi)
  const L s0 = log_term(0).real(), s1 = log_term(two_pi / 2).real();
  const L shift = std::max(s0, s1) - kk * std::log(rr);
  auto sum_with = [&](std::int64_t m) {
    std::complex<L> acc = 0;
    for (std::int64_t j = 0; j < m; ++j) {
      const L theta = two_pi * static_cast<L>(j) / static_cast<L>(m);
      const L ktheta = two_pi * static_cast<L>((static_cast<__int128>(k) * j) % m) / static_cast<L>(m);
      const std::complex<L> e = log_term(theta);
      const L mag = e.real() - kk * std::log(rr) - shift;
      acc += std::polar(std::exp(mag), e.imag() - ktheta);
    }
    return acc.real() / static_cast<L>(m);
  };
  CauchyResult res;
  res.radius = r;
  std::int64_t m = 512;
  L prev = sum_with(m);
  for (;;) {
    const std::int64_t m2 = m * 2;
    const L cur = sum_with(m2);
    const L diff = std::fabs(cur - prev), scale = std::max(std::fabs(cur), std::numeric_limits<L>::min());
    res.samples = m2;
    res.rel_change = static_cast<double>(diff / scale);
    if (diff <= static_cast<L>(rel_tol) * scale || m2 >= max_samples) {
      if (diff > static_cast<L>(rel_tol) * scale && diff > 1e-6L * scale)
        throw numerical_refusal("coeff_at_radius: sample doubling did not converge");
      res.value = cur == 0 ? SignedLog{} : SignedLog{cur > 0 ? 1 : -1, static_cast<double>(std::log(std::fabs(cur)) + shift)};
      return res;
    }
    prev = cur;
    m = m2;
  }
}

/// Cauchy sum on the circle through the dominant saddle point.
inline CauchyResult coeff_saddle_circle(double lambda, std::int64_t n, std::int64_t k, double rel_tol = 1e-13) {
  const double a = static_cast<double>(k) / static_cast<double>(n);
  const double r = k == 0 ? 1.0 : detail::saddle_radius(lambda, a);
  return coeff_at_radius(lambda, n, k, r, rel_tol);
}

// ---------------------------------------------------------------------------
// Quadrature oracle

struct QuadResult {
  double value = 0;
  double error_estimate = 0;
  bool converged = true;
};

namespace detail {

/// Gauss-Kronrod 61 with bisection against an absolute tolerance.
template <class F>
double gk_abs(const F& f, double lo, double hi, double abs_tol, int depth, double& err) {
  double e = 0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 0, 0.0, &e);
  e *= 0.5 * (hi - lo);  // the single-panel estimate comes back in [-1, 1] units
  if (e <= abs_tol || depth == 0) {
    err += e;
    return v;
  }
  const double mid = 0.5 * (lo + hi);
  return gk_abs(f, lo, mid, abs_tol / 2, depth - 1, err) + gk_abs(f, mid, hi, abs_tol / 2, depth - 1, err);
}

/// Integrates f over [0, pi] in pieces carrying about one radian of phase at `phase_rate`.
template <class F>
QuadResult chunked_gk(const F& f, double phase_rate, double tol) {
  const int chunks = std::max(1, static_cast<int>(std::ceil(phase_rate * pi / 4.0)));
  const double w = pi / chunks;
  QuadResult r;
  const double per_chunk_tol = tol / chunks;
  for (int i = 0; i < chunks; ++i) {
    const double lo = i * w, hi = (i + 1 == chunks) ? pi : (i + 1) * w;
    double err = 0;
    r.value += gk_abs(f, lo, hi, per_chunk_tol, 8, err);
    r.error_estimate += err;
  }
  r.converged = r.error_estimate <= tol;
  return r;
}

}  // namespace detail

/// (1/pi) int_0^pi cos(n h(phi)) dphi with h(phi) = (1 - k/n) phi + 2 atan(lambda sin phi / (1 - lambda cos phi)).
inline QuadResult coeff_quadrature(double lambda, std::int64_t n, std::int64_t k, double tol = 1e-12) {
  if (!(lambda > 0 && lambda < 1)) throw domain_error("lambda must lie in (0, 1)");
  if (n < 1 || k < 0) throw domain_error("need n >= 1 and k >= 0");
  if (!(tol > 0)) throw config_error("tol must be positive");
  const double nk = static_cast<double>(n - k), tn = 2.0 * static_cast<double>(n);
  auto f = [=](double phi) {
    return std::cos(nk * phi + tn * std::atan2(lambda * std::sin(phi), 1 - lambda * std::cos(phi))) / pi;
  };
  const double a0i = (1 + lambda) / (1 - lambda);
  const double rate = static_cast<double>(n) * std::max(static_cast<double>(k) / n, a0i) + std::abs(nk);
  QuadResult r = detail::chunked_gk(f, rate, tol);
  return r;
}

// ---------------------------------------------------------------------------
// Reference sequences

/// Rational values when lambda is a fraction and n*K is affordable, DFT otherwise.
inline CoeffSequence coeff_reference(const BlaschkeParam& param, std::int64_t n, std::int64_t K) {
  if (param.is_exact() && rational_affordable(n, K)) {
    const RationalCoeffs rc = coeff_rational_sequence(*param.exact(), n, K);
    CoeffSequence s;
    s.n = n;
    s.lambda = param.lambda();
    s.lambda_text = param.to_string();
    s.provenance = Provenance::RationalConvolution;
    s.precision = "exact";
    s.values.resize(static_cast<std::size_t>(K) + 1);
    for (std::int64_t k = 0; k <= K; ++k) s.values[k] = rc.to_double(k);
    return s;
  }
  std::int64_t m = default_dft_size(param.lambda(), n);
  while (m < 2 * (K + 1)) m <<= 1;
  CoeffSequence s = coeff_dft_auto(param.lambda(), n, m);
  s.lambda_text = param.to_string();
  s.values.resize(static_cast<std::size_t>(K) + 1);
  return s;
}

/// |RHS - c(k)| for the dual representation
/// c(k) = (-1)^{n-k}/pi int_0^pi P(t) cos(k arg b(e^{it}) - n t) dt, P the Poisson kernel at lambda.
inline double duality_check(const BlaschkeParam& param, std::int64_t n, std::int64_t k, double tol = 1e-12) {
  if (k < 1) throw domain_error("duality_check needs k >= 1");
  if (n < 1) throw domain_error("n must be >= 1");
  const double lambda = param.lambda();
  const double kk = static_cast<double>(k), nn = static_cast<double>(n);
  auto f = [=](double t) {
    const double d = 1 - 2 * lambda * std::cos(t) + lambda * lambda;
    const double arg_b = t + 2 * std::atan2(lambda * std::sin(t), 1 - lambda * std::cos(t));
    return (1 - lambda * lambda) / d * std::cos(kk * arg_b - nn * t) / pi;
  };
  const double a0i = (1 + lambda) / (1 - lambda);
  const QuadResult q = detail::chunked_gk(f, kk * a0i + nn, tol);
  const double rhs = ((n - k) % 2 ? -1.0 : 1.0) * q.value;
  double ref;
  if (param.is_exact() && rational_affordable(n, k))
    ref = static_cast<double>(coeff_rational(*param.exact(), n, k));
  else {
    std::int64_t m = default_dft_size(lambda, n);
    while (m < 4 * (k + 1)) m <<= 1;
    ref = coeff_dft_auto(lambda, n, m).values[static_cast<std::size_t>(k)];
  }
  return std::fabs(rhs - ref);
}

// ---------------------------------------------------------------------------
// Serialization

inline void write_csv(std::ostream& os, const CoeffSequence& s, std::size_t count) {
  os << "# lambda=" << s.lambda_text << " n=" << s.n << " provenance=" << to_string(s.provenance)
     << " precision=" << s.precision << "\n";
  os << "k,value,abs_error_bound\n";
  char buf[96];
  for (std::size_t k = 0; k < std::min(count, s.values.size()); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.3g\n", k, s.values[k], s.error_bound);
    os << buf;
  }
}

inline nlohmann::json to_json(const CoeffSequence& s, std::size_t count) {
  nlohmann::json j;
  j["lambda"] = s.lambda_text;
  j["n"] = s.n;
  j["provenance"] = to_string(s.provenance);
  j["precision"] = s.precision;
  j["error_bound"] = s.error_bound;
  std::vector<double> v(s.values.begin(), s.values.begin() + static_cast<std::ptrdiff_t>(std::min(count, s.values.size())));
  j["values"] = v;
  return j;
}

}  // namespace blaschke
