#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace tempered;

TEST(Prime, RejectsComposites) {
  EXPECT_NO_THROW(Prime(2));
  EXPECT_NO_THROW(Prime(97));
  EXPECT_THROW(Prime(1), DomainError);
  EXPECT_THROW(Prime(0), DomainError);
  EXPECT_THROW(Prime(91), DomainError);
  EXPECT_THROW(Prime(-3), DomainError);
}

TEST(Valuation, HandChecked) {
  EXPECT_EQ(valuation(Scalar(0), Prime(5)), std::nullopt);
  EXPECT_EQ(valuation(Scalar(50), Prime(5)), 2);
  EXPECT_EQ(valuation(Scalar(3, 20), Prime(2)), -2);
  EXPECT_EQ(valuation(Scalar(-7, 9), Prime(3)), -2);
}

TEST(AbsValue, HandChecked) {
  EXPECT_EQ(abs_value(Scalar(0), Prime(3)), NormValue(0));
  EXPECT_EQ(abs_value(Scalar(1), Prime(3)), NormValue(1));
  EXPECT_EQ(abs_value(Scalar(1, 8), Prime(2)), NormValue(8));
  EXPECT_EQ(abs_value(Scalar(18), Prime(3)), NormValue(mpq_class(1, 9)));
  EXPECT_TRUE(is_unit(Scalar(2, 7), Prime(3)));
  EXPECT_FALSE(is_unit(Scalar(6, 7), Prime(3)));
  EXPECT_FALSE(is_unit(Scalar(0), Prime(3)));
}

TEST(AbsValue, AgreesWithTrialDivision) {
  oracle::Random rng(11);
  for (long p : {2L, 3L, 5L, 7L}) {
    for (int i = 0; i < 300; ++i) {
      Scalar x = rng.scalar(p, 6);
      EXPECT_EQ(abs_value(x, Prime(p)).value(), oracle::absp(x, p));
    }
  }
}

TEST(AbsValue, MultiplicativeAndUltrametric) {
  oracle::Random rng(12);
  for (long p : {2L, 3L, 5L}) {
    Prime pr(p);
    for (int i = 0; i < 300; ++i) {
      Scalar x = rng.scalar(p), y = rng.scalar(p);
      EXPECT_EQ(abs_value(x * y, pr), abs_value(x, pr) * abs_value(y, pr));
      EXPECT_LE(abs_value(x + y, pr), max(abs_value(x, pr), abs_value(y, pr)));
    }
  }
}

TEST(Scalar, ParseAndPrint) {
  EXPECT_EQ(Scalar::parse("3/6").str(), "1/2");
  EXPECT_EQ(Scalar::parse("-4").str(), "-4");
  EXPECT_EQ(Scalar::parse("+10/4").str(), "5/2");
  EXPECT_EQ(Scalar::parse("0/7").str(), "0");
  for (const char* bad : {"", "1/0", "1/-2", "x", "1.5", "/3", "3/"}) {
    EXPECT_THROW(Scalar::parse(bad), ParseError) << bad;
  }
}

TEST(Scalar, DivisionByZero) {
  EXPECT_THROW(Scalar(1) / Scalar(0), DomainError);
  EXPECT_THROW(Scalar(1, 0), DomainError);
}

TEST(NormValue, PowersAndOrder) {
  EXPECT_EQ(NormValue::power(2, 3), NormValue(8));
  EXPECT_EQ(NormValue::power(3, -2).str(), "1/9");
  EXPECT_LT(NormValue::power(5, -1), NormValue(1));
  EXPECT_THROW(NormValue(-1), DomainError);
}
