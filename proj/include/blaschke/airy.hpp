// Airy function Ai on the real line: 50-digit Maclaurin series near the origin,
// Poincare-type expansions beyond |x| = 8, and a quadrature of the defining integral.

#pragma once

#include "core.hpp"
#include "signed_log.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>

namespace blaschke {

enum class AiryMethod { Maclaurin, AsymptoticNeg, AsymptoticPos, Quadrature };

inline const char* to_string(AiryMethod m) {
  switch (m) {
    case AiryMethod::Maclaurin: return "Maclaurin";
    case AiryMethod::AsymptoticNeg: return "AsymptoticNeg";
    case AiryMethod::AsymptoticPos: return "AsymptoticPos";
    case AiryMethod::Quadrature: return "Quadrature";
  }
  return "?";
}

struct AiryValue {
  double x = 0;
  double ai = 0;
  AiryMethod method = AiryMethod::Maclaurin;
  double est_error = 0;  // absolute
  bool underflow = false;
};

inline constexpr double airy_series_limit = 8.0;

/// Ai(x) = c1 f(x) - c2 g(x) with f = sum 3^k (1/3)_k x^{3k}/(3k)!, g = sum 3^k (2/3)_k x^{3k+1}/(3k+1)!.
inline AiryValue ai_maclaurin(double x) {
  using F = boost::multiprecision::cpp_bin_float_50;
  const F xx = x, x3 = xx * xx * xx;
  const F c1 = F(1) / (boost::multiprecision::pow(F(3), F(2) / 3) * boost::math::tgamma(F(2) / 3));
  const F c2 = F(1) / (boost::multiprecision::pow(F(3), F(1) / 3) * boost::math::tgamma(F(1) / 3));
  F f = 1, g = xx, tf = 1, tg = xx;
  const F stop = F("1e-40");
  for (int k = 0; k < 400; ++k) {
    tf *= x3 / F((3 * k + 2) * (3 * k + 3));
    tg *= x3 / F((3 * k + 3) * (3 * k + 4));
    f += tf;
    g += tg;
    if (abs(tf) < stop * abs(f) && abs(tg) < stop * (abs(g) + 1)) break;
  }
  AiryValue v;
  v.x = x;
  v.ai = static_cast<double>(c1 * f - c2 * g);
  v.method = AiryMethod::Maclaurin;
  v.est_error = std::numeric_limits<double>::epsilon() * std::fabs(v.ai) + 1e-40;
  return v;
}

namespace detail {

/// u_k of the Airy asymptotic expansions, u_0 = 1.
inline double airy_u(int k) {
  double u = 1;
  for (int j = 1; j <= k; ++j) u *= (6.0 * j - 5) * (6.0 * j - 3) * (6.0 * j - 1) / ((2.0 * j - 1) * 216.0 * j);
  return u;
}

/// Sum of (-1)^k u_k / zeta^k truncated at its smallest term; returns (sum, first omitted term).
inline std::pair<double, double> airy_pos_series(double zeta) {
  double sum = 1, term = 1, u = 1;
  for (int k = 1; k < 60; ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
    const double next = u / std::pow(zeta, k);
    if (next > std::fabs(term) || next < 1e-18) return {sum, next};
    term = (k % 2 ? -1 : 1) * next;
    sum += term;
  }
  return {sum, 0};
}

}  // namespace detail

/// log Ai(x) for x > 0 (Ai is positive there); valid far past the double underflow point.
inline double ai_log(double x) {
  if (!(x > 0)) throw domain_error("ai_log needs x > 0");
  if (x <= airy_series_limit) return std::log(ai_maclaurin(x).ai);
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const auto [s, err] = detail::airy_pos_series(zeta);
  (void)err;
  return -zeta - std::log(2 * std::sqrt(pi)) - 0.25 * std::log(x) + std::log(s);
}

/// Large-x expansion of Ai(x) with correction terms; est_error from the first omitted term.
inline AiryValue ai_asymptotic_pos(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  const auto [s, omitted] = detail::airy_pos_series(zeta);
  AiryValue v;
  v.x = x;
  v.method = AiryMethod::AsymptoticPos;
  const double lg = -zeta - std::log(2 * std::sqrt(pi)) - 0.25 * std::log(x);
  const double env = std::exp(lg);
  v.ai = env * s;
  v.est_error = env * (omitted + 4 * std::numeric_limits<double>::epsilon() * (1 + zeta));
  if (v.ai == 0) {
    v.underflow = true;
    v.est_error = std::numeric_limits<double>::denorm_min();
  }
  return v;
}

/// Ai(-x) = pi^{-1/2} x^{-1/4} [cos(zeta - pi/4) P + sin(zeta - pi/4) Q] for x > 0.
inline AiryValue ai_asymptotic_neg(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double p = 1, q = 0, u = 1, last = 1, prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    u *= (6.0 * k - 5) * (6.0 * k - 3) * (6.0 * k - 1) / ((2.0 * k - 1) * 216.0 * k);
    const double t = u / std::pow(zeta, k);
    if (t > prev || t < 1e-18) {
      last = t;
      break;
    }
    // k odd feeds Q with sign (-1)^{(k-1)/2}; k even feeds P with sign (-1)^{k/2}
    if (k % 2) q += ((k / 2) % 2 ? -1 : 1) * t;
    else p += ((k / 2) % 2 ? -1 : 1) * t;
    prev = t;
    last = t;
  }
  const double env = 1.0 / (std::sqrt(pi) * std::pow(x, 0.25));
  const double th = std::remainder(zeta, 2 * pi) - pi / 4;
  AiryValue v;
  v.x = -x;
  v.method = AiryMethod::AsymptoticNeg;
  v.ai = env * (std::cos(th) * p + std::sin(th) * q);
  v.est_error = env * (last + std::numeric_limits<double>::epsilon() * (2 + zeta));
  return v;
}

inline AiryValue ai(double x) {
  if (!(std::fabs(x) <= 1e6)) throw domain_error("ai: |x| must be <= 1e6");
  if (std::fabs(x) <= airy_series_limit) return ai_maclaurin(x);
  if (x > 0) return ai_asymptotic_pos(x);
  return ai_asymptotic_neg(-x);
}

/// Leading oscillatory form x^{-1/4} pi^{-1/2} cos((2/3) x^{3/2} - pi/4), approximating Ai(-x).
inline double ai_asym_neg(double x) {
  if (!(x > 0)) throw domain_error("ai_asym_neg needs x > 0");
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  return std::cos(std::remainder(zeta, 2 * pi) - pi / 4) / (std::pow(x, 0.25) * std::sqrt(pi));
}

/// Leading exponential form exp(-(2/3) x^{3/2}) / (2 x^{1/4} sqrt(pi)), approximating Ai(x).
inline double ai_asym_pos(double x) {
  if (!(x > 0)) throw domain_error("ai_asym_pos needs x > 0");
  return std::exp(-2.0 / 3.0 * x * std::sqrt(x)) / (2 * std::pow(x, 0.25) * std::sqrt(pi));
}

/// (1/pi) int_0^inf cos(t^3/3 + x t) dt: Gauss-Kronrod on [0, T] plus an integrated-by-parts tail.
inline AiryValue ai_quadrature(double x, double T = 40.0) {
  if (!(T * T + x > 100)) throw domain_error("ai_quadrature: cutoff too small for x");
  auto g = [x](double t) { return t * t * t / 3 + x * t; };
  auto f = [&](double t) { return std::cos(g(t)); };
  // pieces of about one radian of phase
  double value = 0, err = 0;
  double lo = 0;
  while (lo < T) {
    const double rate = lo * lo + std::fabs(x) + 1;
    const double hi = std::min(T, lo + std::min(1.0, 2.0 / rate));
    double e = 0;
    value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 0, 0.0, &e);
    err += e * 0.5 * (hi - lo);
    lo = hi;
  }
  const double p = T * T + x;
  const std::complex<double> I(0, 1);
  const std::complex<double> s = -I / p - 2 * T / (p * p * p) - 2.0 * I * (x - 5 * T * T) / std::pow(p, 5) -
                                 40 * T * (x - 2 * T * T) / std::pow(p, 7);
  const std::complex<double> tail = -std::polar(1.0, std::fmod(g(T), 2 * pi)) * s;
  AiryValue v;
  v.x = x;
  v.method = AiryMethod::Quadrature;
  v.ai = (value + tail.real()) / pi;
  v.est_error = (err + 40 * std::pow(T, 4) / std::pow(p, 9) * 22) / pi;
  return v;
}

}  // namespace blaschke
