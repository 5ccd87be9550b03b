#include <blaschke/exact.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace blaschke;

namespace {
const Fraction half(1, 2);
double rat(const Fraction& l, std::int64_t n, std::int64_t k) { return static_cast<double>(coeff_rational(l, n, k)); }
}  // namespace

TEST(Rational, SmallExamples) {
  EXPECT_EQ(coeff_rational(half, 3, 0), BigRational(-1, 8));
  EXPECT_EQ(coeff_rational(half, 1, 1), BigRational(3, 4));
  EXPECT_EQ(coeff_rational(half, 2, 2), BigRational(3, 16));
  EXPECT_EQ(coeff_rational(half, 3, 3), BigRational(-9, 32));
  EXPECT_EQ(coeff_rational(Fraction(1, 3), 5, 8), BigRational(59240, 177147));
  EXPECT_EQ(coeff_rational(Fraction(3, 4), 4, 6), BigRational(-1827, 262144));
}

TEST(Rational, SeriesTable) {
  // series expansion of ((z - 1/3)/(1 - z/3))^5
  const BigRational want[] = {{-1, 243}, {40, 729}, {-200, 729}, {3880, 6561}, {-7000, 19683},
                              {-776, 2187}, {2360, 59049}, {51640, 177147}, {59240, 177147}};
  const auto seq = coeff_rational_sequence(Fraction(1, 3), 5, 8);
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(seq.value(k), want[k]) << k;
    EXPECT_EQ(coeff_rational(Fraction(1, 3), 5, k), want[k]) << k;
  }
}

TEST(Rational, RecurrenceMatchesConvolution) {
  for (auto l : {Fraction(1, 2), Fraction(2, 7), Fraction(5, 6)})
    for (std::int64_t n : {1, 2, 7, 30}) {
      const auto seq = coeff_rational_sequence(l, n, 6 * n);
      for (std::int64_t k = 0; k <= 6 * n; k += 1 + k / 7) EXPECT_EQ(seq.value(k), coeff_rational(l, n, k));
    }
}

TEST(Rational, LargerValues) {
  EXPECT_NEAR(rat(half, 50, 50), 0.027616839860665092533, 1e-17);
  EXPECT_NEAR(rat(half, 100, 33), -0.16025785370171268726, 1e-16);
  const auto s = coeff_rational_sequence(half, 400, 2);
  EXPECT_NEAR(s.to_double(2) / 6.941621007367403004e-116, 1.0, 1e-14);
  const auto lv = coeff_rational_sequence(half, 200, 1).log_value(1);
  EXPECT_EQ(lv.sign, -1);
  EXPECT_NEAR(lv.log_abs, std::log(1.8669045833583425121e-58), 1e-12);
}

TEST(Rational, ConstantTermAndBudget) {
  for (std::int64_t n = 1; n < 40; ++n)
    EXPECT_EQ(coeff_rational(half, n, 0), BigRational((n % 2 ? -1 : 1), BigInt(1) << n));
  EXPECT_THROW(coeff_rational(half, 100000, 100000), budget_exceeded);
  EXPECT_NO_THROW(coeff_rational(half, 100000, 1, 1e6));
  EXPECT_THROW(coeff_rational(Fraction(3, 2), 1, 1), domain_error);
}

TEST(Dft, MatchesRational) {
  const auto s = coeff_dft(0.5, 3, 64);
  for (int k = 0; k <= 20; ++k) EXPECT_NEAR(s.values[k], rat(half, 3, k), 1e-13) << k;
  EXPECT_EQ(s.provenance, Provenance::DftSampling);
}

TEST(Dft, ParsevalAndEvaluations) {
  const auto s = coeff_dft(0.5, 100, 1024);
  double s2 = 0, s1 = 0, sm = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    s2 += s.values[k] * s.values[k];
    s1 += s.values[k];
    sm += (k % 2 ? -1 : 1) * s.values[k];
  }
  EXPECT_NEAR(s2, 1, 1e-12);
  EXPECT_NEAR(s1, 1, 1e-12);
  EXPECT_NEAR(sm, 1, 1e-12);
  EXPECT_LT(s.error_bound, 1e-12);
}

TEST(Dft, RefusesUndersampling) {
  EXPECT_THROW(coeff_dft(0.5, 100, 399), numerical_refusal);
  EXPECT_NO_THROW(coeff_dft(0.5, 100, 400));
}

TEST(Dft, AliasingBoundCoversObservedError) {
  // M = 4n is the smallest accepted size; aliasing is visible there
  for (std::int64_t n : {20, 40}) {
    const auto s = coeff_dft(0.5, n, 4 * n);
    const auto exact = coeff_rational_sequence(half, n, 4 * n - 1);
    double worst = 0;
    for (std::int64_t k = 0; k < 4 * n; ++k) worst = std::max(worst, std::fabs(s.values[k] - exact.to_double(k)));
    EXPECT_LE(worst, s.error_bound) << n;
  }
}

TEST(Dft, LongDoubleAgrees) {
  const auto a = coeff_dft<double>(0.3, 200, 2048);
  const auto b = coeff_dft<long double>(0.3, 200, 2048);
  for (std::size_t k = 0; k < 2048; ++k) EXPECT_NEAR(a.values[k], b.values[k], 1e-13);
  EXPECT_EQ(b.precision, "binary80");
}

TEST(Quadrature, Examples) {
  EXPECT_NEAR(coeff_quadrature(0.5, 1, 1, 1e-12).value, 0.75, 1e-12);
  EXPECT_NEAR(coeff_quadrature(0.5, 10, 0, 1e-12).value, 1.0 / 1024, 1e-12);
  const auto d = coeff_dft(0.5, 50, 512);
  EXPECT_NEAR(coeff_quadrature(0.5, 50, 50, 1e-10).value, d.values[50], 1e-9);
}

TEST(Quadrature, CrossOracleSmallN) {
  for (std::int64_t n : {1, 5, 17, 40}) {
    const auto seq = coeff_rational_sequence(half, n, 8 * n);
    for (std::int64_t k = 0; k <= 8 * n; k += 3) {
      const auto q = coeff_quadrature(0.5, n, k, 1e-12);
      EXPECT_NEAR(q.value, seq.to_double(k), 1e-11) << n << "," << k;
    }
  }
}

TEST(Cauchy, MatchesRationalInExponentialRegions) {
  const std::int64_t n = 400;
  for (std::int64_t k : {4, 20, 60, 110, 1500, 2400}) {
    const auto c = coeff_saddle_circle(0.5, n, k);
    const auto e = coeff_rational(half, n, k, 1e9);
    const double lg = std::log(std::fabs(static_cast<double>(BigFloat(e))));
    EXPECT_EQ(c.value.sign, e < 0 ? -1 : 1) << k;
    EXPECT_NEAR(c.value.log_abs, lg, 1e-10) << k;
  }
}

TEST(Cauchy, UnitRadiusInsideInterval) {
  const auto c = coeff_saddle_circle(0.5, 1000, 1000);
  EXPECT_DOUBLE_EQ(c.radius, 1.0);
  EXPECT_NEAR(c.value.value(), -0.022681634047220665483, 1e-13);
}

TEST(Duality, Examples) {
  const auto p = BlaschkeParam::parse("1/2");
  EXPECT_LE(duality_check(p, 4, 4), 1e-10);
  EXPECT_LE(duality_check(p, 6, 2), 1e-10);
  EXPECT_LE(duality_check(p, 2, 6), 1e-10);
  EXPECT_THROW(duality_check(p, 2, 0), domain_error);
}

TEST(Reference, SwitchesOracle) {
  const auto small = coeff_reference(BlaschkeParam::parse("1/2"), 100, 300);
  EXPECT_EQ(small.provenance, Provenance::RationalConvolution);
  EXPECT_EQ(small.error_bound, 0.0);
  const auto big = coeff_reference(BlaschkeParam::parse("1/2"), 3000, 9000);
  EXPECT_EQ(big.provenance, Provenance::DftSampling);
  EXPECT_EQ(big.size(), 9001u);
  const auto flt = coeff_reference(BlaschkeParam::parse("0.5"), 10, 20);
  EXPECT_EQ(flt.provenance, Provenance::DftSampling);
}

TEST(Serialization, CsvAndJson) {
  const auto s = coeff_reference(BlaschkeParam::parse("1/2"), 3, 4);
  std::ostringstream os;
  write_csv(os, s, 3);
  EXPECT_EQ(os.str(),
            "# lambda=1/2 n=3 provenance=RationalConvolution precision=exact\n"
            "k,value,abs_error_bound\n0,-0.125,0\n1,0.5625,0\n2,-0.5625,0\n");
  const auto j = to_json(s, 5);
  EXPECT_EQ(j["lambda"], "1/2");
  EXPECT_EQ(j["values"].size(), 5u);
  EXPECT_EQ(j["provenance"], "RationalConvolution");
}
