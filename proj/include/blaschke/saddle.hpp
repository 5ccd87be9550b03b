// Saddle-point geometry of the phase Phi(z) = log(z^{-a} b(z)):
// stationary points, derivatives, the real phase h on the unit circle and the
// cubic normal-form parameters gamma^2, gamma^3 near the two transition points.

#pragma once

#include "core.hpp"

#include <json.hpp>

#include <cmath>
#include <complex>
#include <optional>
#include <string>

namespace blaschke {

using cplx = std::complex<double>;

enum class Branch { CutPositiveAxis, Principal };
enum class Side { LeftEdge, RightEdge, Auto };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::LeftEdge: return "LeftEdge";
    case Side::RightEdge: return "RightEdge";
    case Side::Auto: return "Auto";
  }
  return "?";
}

namespace detail {

inline void check_lambda(double lambda) {
  if (!(lambda > 0 && lambda < 1)) throw domain_error("lambda must lie in (0, 1)");
}

/// c - 1 and c + 1 for c = (a(1+l^2) - (1-l^2)) / (2 l a), in cancellation-free form.
struct SaddleCenter {
  double c, cm1, cp1;
};

inline SaddleCenter saddle_center(double lambda, double a) {
  const double a0 = (1 - lambda) / (1 + lambda);
  const double cp1 = (1 + lambda) * (1 + lambda) * (a - a0) / (2 * lambda * a);
  const double cm1 = (1 - lambda) * (1 - lambda) * (a - 1 / a0) / (2 * lambda * a);
  const double c = (a * (1 + lambda * lambda) - (1 - lambda * lambda)) / (2 * lambda * a);
  return {c, cm1, cp1};
}

/// log with arg in [0, 2 pi).
inline cplx log_cut_positive(cplx z) {
  double t = std::arg(z);
  if (t < 0) t += 2 * pi;
  return {std::log(std::abs(z)), t};
}

}  // namespace detail

struct SaddlePair {
  cplx plus, minus;
};

/// Roots of a l z^2 - (a(1+l^2) - (1-l^2)) z + a l = 0 with Im z_+ >= 0.
inline SaddlePair z_pm(double lambda, double a) {
  detail::check_lambda(lambda);
  if (!(a > 0)) throw domain_error("z_pm: a must be positive");
  const auto s = detail::saddle_center(lambda, a);
  const double rad = s.cm1 * s.cp1;
  if (s.cp1 <= 0) {
    // c <= -1: both roots negative, z_+ in [-1, 0)
    const double r = std::sqrt(std::max(rad, 0.0));
    const double zm = s.c - r;
    return {cplx(1.0 / zm, 0.0), cplx(zm, 0.0)};
  }
  if (s.cm1 >= 0) {
    const double r = std::sqrt(std::max(rad, 0.0));
    const double zp = s.c + r;
    return {cplx(zp, 0.0), cplx(1.0 / zp, 0.0)};
  }
  const double im = std::sqrt(-rad);
  return {cplx(s.c, im), cplx(s.c, -im)};
}

inline cplx blaschke_factor(double lambda, cplx z) { return (z - lambda) / (1.0 - lambda * z); }

namespace detail {
inline void check_regular(double lambda, cplx z, bool include_zero_of_b) {
  const double d0 = std::abs(z), dp = std::abs(1.0 - lambda * z), dz = std::abs(z - lambda);
  if (d0 < 1e-300) throw domain_error("z = 0 is a singular point");
  if (dp < 1e-14) throw domain_error("z is within " + std::to_string(dp / lambda) + " of the pole 1/lambda");
  if (include_zero_of_b && dz < 1e-14) throw domain_error("z is within " + std::to_string(dz) + " of the zero lambda");
}
}  // namespace detail

/// Phi(z) = log b(z) - a log z on the requested branch.
inline cplx phi(double lambda, double a, cplx z, Branch branch = Branch::CutPositiveAxis) {
  detail::check_lambda(lambda);
  detail::check_regular(lambda, z, true);
  const cplx b = blaschke_factor(lambda, z);
  if (branch == Branch::Principal) return std::log(b) - a * std::log(z);
  return detail::log_cut_positive(b) - a * detail::log_cut_positive(z);
}

struct PhiDerivs {
  cplx d1, d2, d3;
};

inline PhiDerivs phi_derivs(double lambda, double a, cplx z) {
  detail::check_lambda(lambda);
  detail::check_regular(lambda, z, true);
  const cplx u = 1.0 / (z - lambda), v = lambda / (1.0 - lambda * z), w = 1.0 / z;
  return {u + v - a * w, -u * u + v * v + a * w * w, 2.0 * (u * u * u + v * v * v) - 2.0 * a * w * w * w};
}

/// h(phi) = (1 - a) phi + 2 atan(l sin phi / (1 - l cos phi)); Phi(e^{i phi}) = i h(phi).
inline double h_func(double lambda, double a, double varphi) {
  return (1 - a) * varphi + 2 * std::atan2(lambda * std::sin(varphi), 1 - lambda * std::cos(varphi));
}

inline double h1(double lambda, double a, double varphi) {
  const double d = 1 - 2 * lambda * std::cos(varphi) + lambda * lambda;
  return (1 - lambda * lambda) / d - a;
}

inline double h2(double lambda, double /*a*/, double varphi) {
  const double d = 1 - 2 * lambda * std::cos(varphi) + lambda * lambda;
  return -2 * lambda * (1 - lambda * lambda) * std::sin(varphi) / (d * d);
}

/// Angle of the unimodular saddle z_+ = e^{i phi_+}; a must lie in [alpha0, 1/alpha0].
inline double varphi_plus(double lambda, double a) {
  detail::check_lambda(lambda);
  const double a0 = (1 - lambda) / (1 + lambda);
  const double slack = 1e-12;
  if (!(a >= a0 * (1 - slack) && a <= (1 / a0) * (1 + slack)))
    throw domain_error("varphi_plus: a = " + std::to_string(a) + " outside [alpha0, 1/alpha0]");
  const auto s = detail::saddle_center(lambda, a);
  const double num = std::max(-s.cm1, 0.0), den = std::max(s.cp1, 0.0);
  if (den == 0) return pi;
  return 2 * std::atan(std::sqrt(num / den));
}

/// Delta = (a - alpha0)(1/alpha0 - a).
inline double delta_of(double lambda, double a) {
  const double a0 = (1 - lambda) / (1 + lambda);
  return (a - a0) * (1 / a0 - a);
}

/// Leading-order gamma^2 near the left and right transition points.
inline double gamma_sq_leading(double lambda, double a, Side side) {
  const double a0 = (1 - lambda) / (1 + lambda);
  if (side == Side::LeftEdge) return (a0 - a) * (1 + lambda) / std::cbrt(lambda * (1 - lambda));
  return (a - 1 / a0) * (1 - lambda) / std::cbrt(lambda * (1 + lambda));
}

struct GammaQuantities {
  double gamma_sq = 0;
  cplx gamma_cubed = 0;
  cplx eta = 0;
  Side side = Side::LeftEdge;
  bool leading_order = false;  // near-coalescence guard fired
};

inline Side resolve_side(double lambda, double a, Side side) {
  if (side != Side::Auto) return side;
  const double a0 = (1 - lambda) / (1 + lambda);
  // a = 1 is equidistant in log scale; ties go right
  return std::fabs(std::log(a / a0)) < std::fabs(std::log(a * a0)) ? Side::LeftEdge : Side::RightEdge;
}

inline constexpr double coalescence_guard = 1e-8;

/// gamma^3 = (3/4)(Phi(z_+) - Phi(z_-)) on the side's branch; gamma^2 real with
/// gamma^2 > 0 outside [alpha0, 1/alpha0] and gamma^2 < 0 inside.
inline GammaQuantities gamma_quantities(double lambda, double a, Side side = Side::Auto) {
  detail::check_lambda(lambda);
  if (!(a > 0)) throw domain_error("gamma_quantities: a must be positive");
  GammaQuantities g;
  g.side = resolve_side(lambda, a, side);
  const double a0 = (1 - lambda) / (1 + lambda);
  const double edge = g.side == Side::LeftEdge ? a0 : 1 / a0;
  const auto zs = z_pm(lambda, a);
  const Branch br = g.side == Side::LeftEdge ? Branch::CutPositiveAxis : Branch::Principal;
  if (std::fabs(a - edge) < coalescence_guard) {
    g.leading_order = true;
    g.gamma_sq = gamma_sq_leading(lambda, a, g.side);
    const double mag = std::pow(std::fabs(g.gamma_sq), 1.5);
    g.gamma_cubed = g.gamma_sq >= 0 ? cplx(-mag, 0) : cplx(0, mag);
    const cplx z0 = g.side == Side::LeftEdge ? cplx(-1, 0) : cplx(1, 0);
    g.eta = phi(lambda, a, z0, br);
    return g;
  }
  const bool inside = a > a0 && a < 1 / a0;
  cplx pp, pm;
  if (inside) {
    const double vp = varphi_plus(lambda, a);
    const double hp = h_func(lambda, a, vp);
    pp = cplx(0, hp);
    // z_- = conj(z_+): Principal gives -i h, the positive-axis cut gives i(2 pi (1 - a) - h)
    pm = g.side == Side::LeftEdge ? cplx(0, 2 * pi * (1 - a) - hp) : cplx(0, -hp);
  } else {
    pp = phi(lambda, a, zs.plus, br);
    pm = phi(lambda, a, zs.minus, br);
  }
  g.gamma_cubed = 0.75 * (pp - pm);
  g.eta = 0.5 * (pp + pm);
  const double mag23 = std::pow(std::abs(g.gamma_cubed), 2.0 / 3.0);
  g.gamma_sq = inside ? -mag23 : mag23;
  return g;
}

struct SaddleData {
  double lambda = 0;
  double a = 0;
  cplx z_plus, z_minus;
  cplx phi_plus, phi_minus;
  cplx phi2_plus;
  std::optional<double> varphi_plus;
  double h_at_plus = 0;
  double gamma_sq = 0;
  cplx gamma_cubed;
  double delta = 0;
  cplx eta;
  Side side = Side::Auto;
  bool leading_order = false;
};

inline SaddleData saddle_data(double lambda, double a, Side side = Side::Auto) {
  SaddleData d;
  d.lambda = lambda;
  d.a = a;
  const auto zs = z_pm(lambda, a);
  d.z_plus = zs.plus;
  d.z_minus = zs.minus;
  const auto g = gamma_quantities(lambda, a, side);
  d.side = g.side;
  d.leading_order = g.leading_order;
  d.gamma_sq = g.gamma_sq;
  d.gamma_cubed = g.gamma_cubed;
  d.eta = g.eta;
  d.delta = delta_of(lambda, a);
  const Branch br = g.side == Side::LeftEdge ? Branch::CutPositiveAxis : Branch::Principal;
  d.phi_plus = phi(lambda, a, zs.plus, br);
  d.phi_minus = phi(lambda, a, zs.minus, br);
  d.phi2_plus = phi_derivs(lambda, a, zs.plus).d2;
  const double a0 = (1 - lambda) / (1 + lambda);
  if (a >= a0 && a <= 1 / a0) {
    d.varphi_plus = varphi_plus(lambda, a);
    d.h_at_plus = h_func(lambda, a, *d.varphi_plus);
  }
  return d;
}

inline nlohmann::json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

inline nlohmann::json to_json(const SaddleData& d) {
  nlohmann::json j;
  j["lambda"] = d.lambda;
  j["a"] = d.a;
  j["z_plus"] = cplx_json(d.z_plus);
  j["z_minus"] = cplx_json(d.z_minus);
  j["phi_plus"] = cplx_json(d.phi_plus);
  j["phi_minus"] = cplx_json(d.phi_minus);
  j["phi2_plus"] = cplx_json(d.phi2_plus);
  j["varphi_plus"] = d.varphi_plus ? nlohmann::json(*d.varphi_plus) : nlohmann::json(nullptr);
  j["h_at_plus"] = d.h_at_plus;
  j["gamma_sq"] = d.gamma_sq;
  j["gamma_cubed"] = cplx_json(d.gamma_cubed);
  j["delta"] = d.delta;
  j["eta"] = cplx_json(d.eta);
  j["side"] = to_string(d.side);
  j["leading_order"] = d.leading_order;
  return j;
}

}  // namespace blaschke
