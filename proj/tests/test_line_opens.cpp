#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"

using namespace tempered;

namespace {

GrowthSeries seq_series(long p, int lo, int hi, const std::function<Scalar(int)>& a) {
  GrowthSeries f(SeriesSpec::univariate(Prime(p), "t", hi, lo));
  for (int i = lo; i <= hi; ++i) f.set({i}, a(i));
  return f;
}

MembershipReport check(const GrowthSeries& f, ClassKind k, int n_max = 8, int radius = 0) {
  return membership(f, GrowthClass{k, radius}, n_max);
}

}  // namespace

TEST(ClassNames, RoundTrip) {
  for (const char* name : {"tate", "bounded", "tempered", "open-disk", "fast", "temp-at-infinity",
                           "fast-over-temp-infinity", "amice"}) {
    auto k = parse_class_name(name);
    ASSERT_TRUE(k) << name;
    EXPECT_EQ(class_name(*k), name);
  }
  EXPECT_FALSE(parse_class_name("tempered-disk"));
}

TEST(Profiles, DoublingTruncations) {
  EXPECT_EQ(doubling_truncations(65), (std::vector<int>{8, 16, 32, 65}));
  EXPECT_EQ(doubling_truncations(64), (std::vector<int>{8, 16, 32, 64}));
  EXPECT_EQ(doubling_truncations(8), (std::vector<int>{8}));
  EXPECT_EQ(doubling_truncations(5), (std::vector<int>{5}));
}

TEST(Membership, ConstantOneIsInEveryPowerSeriesClass) {
  auto one = seq_series(3, 0, 32, [](int i) { return Scalar(i == 0 ? 1 : 0); });
  for (auto k : {ClassKind::tate, ClassKind::bounded, ClassKind::tempered, ClassKind::open_disk, ClassKind::fast}) {
    EXPECT_TRUE(check(one, k).member) << class_name(k);
  }
  EXPECT_EQ(check(one, ClassKind::tempered).witness, 0);
  EXPECT_EQ(check(one, ClassKind::bounded).witness, 0);
}

TEST(Membership, HarmonicSeriesIsTemperedOfOrderOne) {
  // |1/i|_2 = 2^{v2(i)}: block maxima at weight 0 are 4, 8, 16, 64 (ratios 2, 4),
  // at weight 1 they are 4/5, 8/9, 16/17, 64/65 (ratios below 5/4).
  auto f = seq_series(2, 0, 64, [](int i) { return i == 0 ? Scalar(0) : Scalar(1, i); });
  auto rep = check(f, ClassKind::tempered);
  EXPECT_TRUE(rep.member);
  EXPECT_EQ(rep.witness, 1);
  ASSERT_GE(rep.profiles.size(), 2u);
  const auto& w0 = rep.profiles[0].profile;
  ASSERT_EQ(w0.points.size(), 4u);
  EXPECT_EQ(w0.points[0].norm, NormValue(4));
  EXPECT_EQ(w0.points[1].norm, NormValue(8));
  EXPECT_EQ(w0.points[2].norm, NormValue(16));
  EXPECT_EQ(w0.points[3].norm, NormValue(64));
  const auto& w1 = rep.profiles[1].profile;
  EXPECT_EQ(w1.points[3].norm, NormValue(mpq_class(64, 65)));
  EXPECT_FALSE(check(f, ClassKind::bounded).member);
  EXPECT_FALSE(check(f, ClassKind::tate).member);
  EXPECT_TRUE(check(f, ClassKind::open_disk).member);
}

TEST(Membership, ExponentialIsRejected) {
  auto f = seq_series(2, 0, 32, [](int i) { return Scalar(1) / oracle::factorial(i); });
  auto rep = check(f, ClassKind::tempered);
  EXPECT_FALSE(rep.member);
  EXPECT_FALSE(rep.witness);
  EXPECT_EQ(rep.profiles.size(), 9u);
  EXPECT_FALSE(check(f, ClassKind::open_disk).member);
}

TEST(Membership, FastAndTateDecay) {
  auto f = seq_series(3, 0, 40, [](int i) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 3, static_cast<unsigned long>(i));
    return Scalar(mpq_class(pw));
  });
  EXPECT_TRUE(check(f, ClassKind::tate).member);
  EXPECT_TRUE(check(f, ClassKind::fast).member);
  auto ones = seq_series(3, 0, 40, [](int) { return Scalar(1); });
  EXPECT_FALSE(check(ones, ClassKind::tate).member);
  EXPECT_FALSE(check(ones, ClassKind::fast).member);
  EXPECT_TRUE(check(ones, ClassKind::bounded).member);
}

TEST(Membership, LaurentTermsRejectedByDiskClasses) {
  auto f = seq_series(3, -2, 8, [](int i) { return Scalar(i == -1 ? 1 : 0); });
  EXPECT_THROW(check(f, ClassKind::tempered), DomainError);
  EXPECT_NO_THROW(check(f, ClassKind::temp_at_infinity));
}

TEST(SplitCover, IndexConvention) {
  auto f = seq_series(3, -4, 4, [](int i) { return Scalar(i == -2 ? 1 : i == 0 ? 3 : i == 1 ? 1 : 0); });
  auto s = split_cover(f);
  EXPECT_EQ(s.at_infinity.size(), 1u);
  EXPECT_EQ(s.at_infinity.coeff({-2}), Scalar(1));
  EXPECT_EQ(s.fast_part.size(), 2u);
  EXPECT_EQ(s.fast_part.coeff({0}), Scalar(3));
  EXPECT_EQ(s.fast_part.coeff({1}), Scalar(1));
  auto z = split_cover(GrowthSeries(f.spec()));
  EXPECT_TRUE(z.at_infinity.is_zero());
  EXPECT_TRUE(z.fast_part.is_zero());
}

TEST(SplitCover, FactorialNegativeSide) {
  // |1/|i|!|_3 grows geometrically in |i|, so the negative side is not even
  // tempered at infinity; the constant positive side is bounded but not fast.
  // A window of 33 nonnegative indices gives three profile blocks.
  auto f = seq_series(3, -32, 32, [](int i) { return i < 0 ? Scalar(1) / oracle::factorial(-i) : Scalar(1); });
  auto s = split_cover(f);
  EXPECT_TRUE(check(s.fast_part, ClassKind::bounded).member);
  EXPECT_FALSE(s.fast_report.member);
  EXPECT_FALSE(s.at_infinity_report.member);
  EXPECT_EQ(s.at_infinity.size(), 32u);
  EXPECT_EQ(s.fast_part.size(), 33u);
}

TEST(Pairing, Examples) {
  auto f = seq_series(5, 0, 6, [](int) { return Scalar(1); });
  auto g = seq_series(5, 0, 6, [](int i) {
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), 5, static_cast<unsigned long>(i));
    return Scalar(mpq_class(pw));
  });
  auto pr = pair_dual(f, g, 0);
  EXPECT_EQ(pr.value, Scalar(19531));
  EXPECT_EQ(pr.lhs, NormValue(1));
  EXPECT_TRUE(pr.holds());
  EXPECT_TRUE(pair_dual(f, GrowthSeries(f.spec()), 2).value.is_zero());
}

TEST(Pairing, DualityBoundOnRandomInputs) {
  oracle::Random rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    long p = trial % 2 ? 2 : 5;
    auto s = SeriesSpec::univariate(Prime(p), "t", 20, -rng.uniform(0, 20));
    auto f = rng.series(s, 8), g = rng.series(s, 8);
    for (int n = -2; n <= 2; ++n) EXPECT_TRUE(pair_dual(f, g, n).holds());
  }
}

TEST(Lattice, Queries) {
  EXPECT_TRUE(lattice_query("open-disk", "tempered"));
  EXPECT_FALSE(lattice_query("tempered", "open-disk"));
  EXPECT_TRUE(lattice_query("tempered", "tempered"));
  EXPECT_TRUE(lattice_query("open-disk", "tate"));
  EXPECT_FALSE(lattice_query("tate", "bounded"));
  EXPECT_TRUE(lattice_query("fast-over-temp-infinity", "fast"));
  auto covers = lattice_covers();
  ASSERT_EQ(covers.size(), 1u);
  EXPECT_EQ(covers[0].first, "temp-at-infinity");
  EXPECT_EQ(covers[0].second, "fast");
}
