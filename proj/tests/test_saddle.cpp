#include <blaschke/saddle.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

using namespace blaschke;

namespace {
constexpr double L = 0.5;
const double A0 = 1.0 / 3.0;

std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> g;
  for (int i = 0; i < count; ++i) g.push_back(lo * std::pow(hi / lo, (i + 0.5) / count));
  return g;
}
}  // namespace

TEST(Saddle, ZpmExamples) {
  auto z = z_pm(L, 1.0 / 3.0);
  EXPECT_NEAR(std::abs(z.plus - cplx(-1, 0)), 0, 1e-7);
  EXPECT_NEAR(std::abs(z.minus - cplx(-1, 0)), 0, 1e-7);
  z = z_pm(L, 3.0);
  EXPECT_NEAR(std::abs(z.plus - cplx(1, 0)), 0, 1e-7);
  z = z_pm(L, 2.0);
  EXPECT_NEAR(z.plus.real(), 0.875, 1e-15);
  EXPECT_NEAR(z.plus.imag(), 0.484122918275927, 1e-14);
  EXPECT_NEAR(std::abs(z.minus - std::conj(z.plus)), 0, 1e-15);
  EXPECT_NEAR(std::abs(z.plus), 1.0, 1e-15);
  EXPECT_THROW(z_pm(L, 0.0), domain_error);
  EXPECT_THROW(z_pm(L, -1.0), domain_error);
}

TEST(Saddle, ZpmProducts) {
  for (double lam : {0.2, 0.5, 0.8})
    for (double a : log_grid(0.01, 100, 97)) {
      const auto z = z_pm(lam, a);
      const double a0 = (1 - lam) / (1 + lam);
      if (a > a0 && a < 1 / a0) {
        EXPECT_NEAR(std::norm(z.plus), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(z.minus - std::conj(z.plus)), 0, 1e-12);
        EXPECT_GE(z.plus.imag(), 0);
      } else {
        EXPECT_NEAR(std::abs(z.plus * z.minus - 1.0), 0, 1e-12);
        EXPECT_EQ(z.plus.imag(), 0);
      }
      const cplx diff = (1 - lam * lam) / (a * lam) * std::sqrt(cplx((a - 1 / a0) * (a - a0), 0));
      EXPECT_NEAR(std::abs(z.plus - z.minus - diff), 0, 1e-10 * std::max(1.0, std::abs(diff)));
      EXPECT_NEAR(std::abs((z.plus - lam) * (z.minus - lam) - (1 - lam * lam) / a), 0, 1e-10 * (1 + 1 / a));
    }
}

TEST(Saddle, PhiExamples) {
  EXPECT_NEAR(std::abs(phi(L, 3, cplx(1, 0))), 0, 1e-15);
  const cplx p = phi(L, 1, std::polar(1.0, pi / 3));
  EXPECT_NEAR(p.real(), 0, 1e-15);
  EXPECT_NEAR(p.imag(), pi / 3, 1e-15);
  const cplx m = phi(L, 1.0 / 3.0, cplx(-1, 0), Branch::CutPositiveAxis);
  EXPECT_NEAR(m.real(), 0, 1e-15);
  EXPECT_NEAR(m.imag(), 2 * pi / 3, 1e-15);
  EXPECT_THROW(phi(L, 1, cplx(0.5, 0)), domain_error);
  EXPECT_THROW(phi(L, 1, cplx(2, 0)), domain_error);
  EXPECT_THROW(phi(L, 1, cplx(0, 0)), domain_error);
}

TEST(Saddle, PhiOnCircleIsIh) {
  for (double a : {0.2, 1.0, 2.5})
    for (double t = 0.05; t < pi; t += 0.1) {
      const cplx z = std::polar(1.0, t);
      for (Branch b : {Branch::CutPositiveAxis, Branch::Principal}) {
        const cplx v = phi(L, a, z, b);
        EXPECT_NEAR(v.real(), 0, 1e-14);
        EXPECT_NEAR(v.imag(), h_func(L, a, t), 1e-13);
      }
    }
}

TEST(Saddle, NegativeAxisPhase) {
  // exp(n Phi(z_+)) = (-1)^{n-k} (|b(z_+)| / |z_+|^a)^n for z_+ < 0
  const double a = 0.1;
  const auto z = z_pm(L, a).plus;
  ASSERT_LT(z.real(), 0);
  const cplx v = phi(L, a, z, Branch::CutPositiveAxis);
  EXPECT_NEAR(v.imag(), pi * (1 - a), 1e-14);
  EXPECT_NEAR(v.real(), std::log(std::abs(blaschke_factor(L, z))) - a * std::log(std::abs(z)), 1e-14);
}

TEST(Saddle, DerivExamples) {
  EXPECT_NEAR(phi_derivs(L, 1.0 / 3.0, cplx(-1, 0)).d3.real(), 4.0 / 27.0, 1e-15);
  EXPECT_NEAR(phi_derivs(L, 3.0, cplx(1, 0)).d3.real(), 12.0, 1e-13);
  EXPECT_LE(std::abs(phi_derivs(L, 2.0, z_pm(L, 2.0).plus).d1), 1e-12);
  EXPECT_THROW(phi_derivs(L, 1, cplx(0.5, 0)), domain_error);
}

TEST(Saddle, StationaryAndSecondDerivative) {
  for (double lam : {0.3, 0.5, 0.7})
    for (double a : log_grid(0.01, 100, 61)) {
      const double a0 = (1 - lam) / (1 + lam);
      if (std::fabs(a - a0) < 1e-6 || std::fabs(a - 1 / a0) < 1e-6) continue;
      const auto z = z_pm(lam, a);
      for (cplx zz : {z.plus, z.minus}) {
        const auto d = phi_derivs(lam, a, zz);
        EXPECT_LE(std::abs(d.d1), 1e-10 * std::max(1.0, std::abs(d.d2))) << a;
        const cplx other = zz == z.plus ? z.minus : z.plus;
        const cplx want = (1 - lam * lam) * (zz - other) * lam / ((zz - lam) * (zz - lam) * (1.0 - lam * zz) * (1.0 - lam * zz));
        EXPECT_NEAR(std::abs(d.d2 - want), 0, 1e-9 * std::max(1.0, std::abs(want))) << a;
      }
    }
}

TEST(Saddle, FiniteDifferences) {
  const double hstep = 1e-4;
  for (double a : {0.2, 1.0, 4.0})
    for (cplx z : {cplx(0.3, 0.8), cplx(-0.7, 0.2), cplx(1.5, 0.5), cplx(-2.0, 0.4)}) {
      auto f = [&](cplx w) { return phi(L, a, w, Branch::Principal); };
      const auto d = phi_derivs(L, a, z);
      const cplx fd1 = (f(z + hstep) - f(z - hstep)) / (2 * hstep);
      const cplx fd2 = (f(z + hstep) - 2.0 * f(z) + f(z - hstep)) / (hstep * hstep);
      // third derivative from a symmetric 64-point difference stencil on a small circle
      cplx fd3 = 0;
      const double rho = 0.02;
      for (int m = 0; m < 64; ++m) {
        const cplx w = std::polar(rho, 2 * pi * m / 64);
        fd3 += f(z + w) / (w * w * w);
      }
      fd3 *= 6.0 / 64.0;
      EXPECT_NEAR(std::abs(fd1 - d.d1) / std::abs(d.d1), 0, 1e-6);
      EXPECT_NEAR(std::abs(fd2 - d.d2) / std::abs(d.d2), 0, 1e-6);
      EXPECT_NEAR(std::abs(fd3 - d.d3) / std::abs(d.d3), 0, 1e-6);
    }
}

TEST(Saddle, HExamples) {
  EXPECT_NEAR(h_func(L, 1, pi), 0, 1e-15);
  EXPECT_NEAR(h_func(L, 0.3, 0), 0, 1e-15);
  EXPECT_NEAR(h_func(L, 0.3, pi), 0.7 * pi, 1e-14);
  EXPECT_NEAR(std::fabs(h2(L, 1, pi / 3)), std::sqrt(4.0 / 3.0), 1e-14);
  EXPECT_NEAR(h_func(L, 1, pi / 3), pi / 3, 1e-15);
  EXPECT_NEAR(h1(L, 1, pi / 3), 0, 1e-15);
}

TEST(Saddle, HDerivativesByDifferences) {
  const double s = 1e-5;
  for (double a : {0.5, 1.3, 2.9})
    for (double t = 0.1; t < 3.1; t += 0.3) {
      EXPECT_NEAR((h_func(L, a, t + s) - h_func(L, a, t - s)) / (2 * s), h1(L, a, t), 1e-8);
      EXPECT_NEAR((h1(L, a, t + s) - h1(L, a, t - s)) / (2 * s), h2(L, a, t), 1e-8);
    }
}

TEST(Saddle, SecondDerivativeAtStationaryAngle) {
  for (double lam : {0.25, 0.5, 0.75}) {
    const double a0 = (1 - lam) / (1 + lam);
    for (int i = 1; i < 40; ++i) {
      const double a = a0 + (1 / a0 - a0) * i / 40.0;
      const double vp = varphi_plus(lam, a);
      EXPECT_NEAR(h1(lam, a, vp), 0, 1e-12);
      EXPECT_NEAR(h2(lam, a, vp), -a * std::sqrt(delta_of(lam, a)), 1e-10);
    }
  }
}

TEST(Saddle, VarphiPlusExamples) {
  EXPECT_NEAR(varphi_plus(L, 1), pi / 3, 1e-15);
  EXPECT_NEAR(varphi_plus(L, 1.0 / 3.0), pi, 1e-7);
  EXPECT_NEAR(varphi_plus(L, 3), 0, 1e-7);
  EXPECT_THROW(varphi_plus(L, 0.2), domain_error);
  EXPECT_THROW(varphi_plus(L, 3.5), domain_error);
}

TEST(Saddle, SeparationIdentities) {
  for (double lam : {0.2, 0.5, 0.9}) {
    const double a0 = (1 - lam) / (1 + lam);
    for (int i = 1; i < 100; ++i) {
      const double a = a0 + (1 / a0 - a0) * i / 100.0;
      const cplx e = std::polar(1.0, varphi_plus(lam, a));
      EXPECT_NEAR(std::norm(e - 1.0), (1 - lam) * (1 - lam) * (1 / a0 - a) / (a * lam), 1e-10);
      EXPECT_NEAR(std::norm(e + 1.0), (1 + lam) * (1 + lam) * (a - a0) / (a * lam), 1e-10);
    }
  }
}

TEST(Saddle, GammaExamples) {
  auto g = gamma_quantities(L, 1.0 / 3.0, Side::LeftEdge);
  EXPECT_NEAR(g.gamma_sq, 0, 1e-12);
  EXPECT_NEAR(std::abs(g.gamma_cubed), 0, 1e-15);

  const double lead_l = 1.5 / std::cbrt(0.25);
  g = gamma_quantities(L, 1.0 / 3.0 - 0.001, Side::LeftEdge);
  EXPECT_NEAR(g.gamma_sq / (lead_l * 0.001), 1.0, 5e-3);
  EXPECT_GT(g.gamma_sq, 0);
  EXPECT_LT(g.gamma_cubed.real(), 0);

  g = gamma_quantities(L, 3.01, Side::RightEdge);
  EXPECT_NEAR(g.gamma_sq / (0.01 * 0.5 / std::cbrt(0.75)), 1.0, 5e-3);
  EXPECT_FALSE(g.leading_order);
}

TEST(Saddle, GammaSignsAndSides) {
  EXPECT_EQ(resolve_side(L, 1.0, Side::Auto), Side::RightEdge);
  EXPECT_EQ(resolve_side(L, 0.9, Side::Auto), Side::LeftEdge);
  EXPECT_EQ(resolve_side(L, 1.1, Side::Auto), Side::RightEdge);
  for (double a : {0.1, 0.3, 0.5, 1.0, 2.0, 2.9, 3.2, 6.0}) {
    const auto g = gamma_quantities(L, a);
    const bool inside = a > A0 && a < 3;
    EXPECT_EQ(g.gamma_sq < 0, inside) << a;
    if (inside) {
      EXPECT_NEAR(g.gamma_cubed.real(), 0, 1e-14);
      EXPECT_GT(g.gamma_cubed.imag(), 0);
    } else {
      EXPECT_NEAR(g.gamma_cubed.imag(), 0, 1e-14);
      EXPECT_LT(g.gamma_cubed.real(), 0);
    }
  }
}

TEST(Saddle, GammaReductionsMatchGeneralForm) {
  // left: (3/2)(Phi(z_+) - i pi (1-a)); right: (3/2) Phi(z_+)
  for (double a : {0.1, 0.25, 0.5, 0.9}) {
    const auto g = gamma_quantities(L, a, Side::LeftEdge);
    const cplx zp = z_pm(L, a).plus;
    const cplx pp = phi(L, a, zp, Branch::CutPositiveAxis);
    const cplx red = 1.5 * (pp - cplx(0, pi * (1 - a)));
    EXPECT_NEAR(std::abs(g.gamma_cubed - red), 0, 1e-12) << a;
  }
  for (double a : {1.2, 2.5, 3.5, 8.0}) {
    const auto g = gamma_quantities(L, a, Side::RightEdge);
    const cplx red = 1.5 * phi(L, a, z_pm(L, a).plus, Branch::Principal);
    EXPECT_NEAR(std::abs(g.gamma_cubed - red), 0, 1e-12) << a;
  }
}

TEST(Saddle, GammaApproachesLeadingOrder) {
  for (double lam : {0.5, 0.3}) {
    const double a0 = (1 - lam) / (1 + lam);
    for (Side side : {Side::LeftEdge, Side::RightEdge}) {
      const double edge = side == Side::LeftEdge ? a0 : 1 / a0;
      for (int sgn : {-1, 1}) {
        double prev = 1e9;
        for (int j = 1; j <= 6; ++j) {
          const double a = edge + sgn * std::pow(10.0, -j);
          const double r = gamma_quantities(lam, a, side).gamma_sq / gamma_sq_leading(lam, a, side);
          const double dev = std::fabs(r - 1);
          EXPECT_LT(dev, prev) << "j=" << j;
          prev = dev;
        }
        EXPECT_LT(prev, 1e-5);
      }
    }
  }
}

TEST(Saddle, CoalescenceGuard) {
  const auto g = gamma_quantities(L, 1.0 / 3.0 + 1e-10, Side::LeftEdge);
  EXPECT_TRUE(g.leading_order);
  EXPECT_LT(g.gamma_sq, 0);
  EXPECT_NEAR(g.gamma_sq, gamma_sq_leading(L, 1.0 / 3.0 + 1e-10, Side::LeftEdge), 1e-20);
}

TEST(Saddle, DataJson) {
  const auto d = saddle_data(L, 1.0);
  const auto j = to_json(d);
  EXPECT_NEAR(j["varphi_plus"].get<double>(), pi / 3, 1e-15);
  EXPECT_NEAR(j["h_at_plus"].get<double>(), pi / 3, 1e-15);
  EXPECT_EQ(j["side"], "RightEdge");
  const auto out = to_json(saddle_data(L, 5.0));
  EXPECT_TRUE(out["varphi_plus"].is_null());
}
