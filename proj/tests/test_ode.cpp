#include <gtest/gtest.h>

#include <functional>

#include "oracles.hpp"

using namespace tempered;

namespace {

DiffSystem scalar_system(long p, int hi, const std::function<Scalar(int)>& coeff) {
  GrowthSeries g(SeriesSpec::univariate(Prime(p), "t", hi));
  for (int i = 0; i <= hi; ++i) g.set({i}, coeff(i));
  return DiffSystem(1, {g});
}

}  // namespace

TEST(CauchySolve, ZeroSystemGivesIdentity) {
  auto spec = SeriesSpec::univariate(Prime(3), "t", 6);
  DiffSystem sys(2, std::vector<GrowthSeries>(4, GrowthSeries(spec)));
  auto sol = cauchy_solve(sys, 5);
  for (int k = 0; k <= 5; ++k) {
    for (int e = 0; e < 4; ++e) EXPECT_EQ(sol.origin[k][e], Scalar(k == 0 && (e == 0 || e == 3) ? 1 : 0));
  }
  EXPECT_TRUE(sol.residual_ok);
}

TEST(CauchySolve, ConstantSystemGivesPowersOverFactorials) {
  for (long c : {1L, 2L, -3L}) {
    auto sys = scalar_system(2, 33, [c](int i) { return Scalar(i == 0 ? c : 0); });
    auto sol = cauchy_solve(sys, 32);
    for (int m = 0; m <= 32; ++m) {
      mpz_class cm;
      mpz_pow_ui(cm.get_mpz_t(), mpz_class(c).get_mpz_t(), static_cast<unsigned long>(m));
      EXPECT_EQ(sol.origin[m][0], Scalar(mpq_class(cm)) / oracle::factorial(m)) << m;
    }
    EXPECT_TRUE(sol.residual_ok);
  }
}

TEST(CauchySolve, GeometricSystemGivesOnes) {
  auto sys = scalar_system(3, 32, [](int) { return Scalar(1); });
  auto sol = cauchy_solve(sys, 32);
  for (int m = 0; m <= 32; ++m) EXPECT_EQ(sol.origin[m][0], Scalar(1)) << m;
}

TEST(CauchySolve, GenericWindowsShrink) {
  auto sys = scalar_system(3, 10, [](int) { return Scalar(1); });
  auto sol = cauchy_solve(sys, 11);
  EXPECT_EQ(sol.generic[1][0].spec().var(0).hi, 10);
  EXPECT_EQ(sol.generic[4][0].spec().var(0).hi, 7);
  EXPECT_EQ(sol.generic[11][0].spec().var(0).hi, 0);
  EXPECT_THROW(cauchy_solve(sys, 12), DomainError);
}

TEST(CauchySolve, MatchesNaiveRecursionOnRandomSystems) {
  oracle::Random rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    long p = trial % 2 ? 3 : 5;
    int m = rng.uniform(1, 3), deg = rng.uniform(0, 4);
    auto spec = SeriesSpec::univariate(Prime(p), "t", 12);
    std::vector<GrowthSeries> entries;
    for (int e = 0; e < m * m; ++e) {
      GrowthSeries g(spec);
      for (int i = 0; i <= deg; ++i) {
        if (rng.coin(0.6)) g.set({i}, rng.scalar(p, 1));
      }
      entries.push_back(g);
    }
    DiffSystem sys(m, entries);
    auto sol = cauchy_solve(sys, 12);
    auto y = oracle::naive_cauchy(sys, 12);
    for (int k = 0; k <= 12; ++k) EXPECT_EQ(sol.origin[k], y[k]) << "trial " << trial << " k " << k;
    EXPECT_TRUE(sol.residual_ok);
  }
}

TEST(TaylorGeneric, Binomials) {
  auto s = SeriesSpec::univariate(Prime(3), "t", 2);
  GrowthSeries t(s), t2(s);
  t.set({1}, Scalar(1));
  t2.set({2}, Scalar(1));
  auto a = taylor_generic(t, 2, Exactness::polynomial);
  EXPECT_EQ(a.size(), 2u);
  EXPECT_EQ(a.coeff({1, 0}), Scalar(1));
  EXPECT_EQ(a.coeff({0, 1}), Scalar(1));
  auto b = taylor_generic(t2, 2, Exactness::polynomial);
  EXPECT_EQ(b.size(), 3u);
  EXPECT_EQ(b.coeff({2, 0}), Scalar(1));
  EXPECT_EQ(b.coeff({1, 1}), Scalar(2));
  EXPECT_EQ(b.coeff({0, 2}), Scalar(1));
}

TEST(TaylorGeneric, GeometricSeries) {
  // coefficient of w^i in tau(1/(1-t)) is (1-t)^{-(i+1)} = sum_k C(k+i, i) t^k
  auto s = SeriesSpec::univariate(Prime(5), "t", 6);
  GrowthSeries f(s);
  for (int i = 0; i <= 6; ++i) f.set({i}, Scalar(1));
  auto tau = taylor_generic(f, 6, Exactness::polynomial);
  for (int i = 0; i <= 6; ++i) {
    for (int k = 0; k + i <= 6; ++k) EXPECT_EQ(tau.coeff({k, i}), oracle::binomial(k + i, i));
  }
  auto tr = taylor_generic(f, 2);
  EXPECT_EQ(tr.spec().var(0).hi, 4);
  EXPECT_THROW(taylor_generic(f, 7), DomainError);
}

TEST(TaylorGeneric, RingMorphismOnWindow) {
  oracle::Random rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    auto s = SeriesSpec::univariate(Prime(3), "t", 8);
    auto f = rng.series(s, 5, 1), g = rng.series(s, 5, 1);
    auto tf = taylor_generic(f, 8, Exactness::polynomial);
    auto tg = taylor_generic(g, 8, Exactness::polynomial);
    auto tfg = taylor_generic(mul(f, g), 8, Exactness::polynomial);
    auto prod = mul(tf, tg);
    // the product is exact for total degree <= 8
    for (const auto& [j, c] : tfg.terms()) {
      if (j[0] + j[1] <= 8) {
        EXPECT_EQ(prod.coeff(j), c);
      }
    }
    for (const auto& [j, c] : prod.terms()) {
      if (j[0] + j[1] <= 8 && tfg.spec().contains(j)) {
        EXPECT_EQ(tfg.coeff(j), c);
      }
    }
    // setting t = 0 and renaming w -> t recovers f
    auto back = rename(set_to_zero(tf, "t"), "w", "t");
    EXPECT_EQ(back, f);
  }
}

TEST(LogGrowth, Sequences) {
  std::vector<Scalar> harmonic, ones, inv_fact;
  harmonic.push_back(Scalar(0));
  for (int i = 1; i < 64; ++i) harmonic.push_back(Scalar(1, i));
  for (int i = 0; i < 64; ++i) ones.push_back(Scalar(1));
  for (int i = 0; i < 32; ++i) inv_fact.push_back(Scalar(1) / oracle::factorial(i));
  EXPECT_EQ(log_growth_estimate(harmonic, Prime(2), 8).order, 1);
  EXPECT_EQ(log_growth_estimate(ones, Prime(2), 8).order, 0);
  auto r = log_growth_estimate(inv_fact, Prime(2), 8);
  EXPECT_FALSE(r.order);
  EXPECT_EQ(r.order_str(), "exceeds n_max");
  EXPECT_THROW(log_growth_estimate(std::vector<Scalar>(7, Scalar(1)), Prime(2), 8), DomainError);
}

TEST(Transfer, CuratedSystems) {
  auto zero = scalar_system(3, 40, [](int) { return Scalar(0); });
  auto r0 = transfer_experiment(zero, 32, 8);
  EXPECT_EQ(r0.generic.order, 0);
  EXPECT_EQ(r0.origin.order, 0);
  EXPECT_EQ(r0.verdict, TransferVerdict::consistent);

  auto geo = scalar_system(3, 40, [](int) { return Scalar(1); });
  auto rg = transfer_experiment(geo, 32, 8);
  EXPECT_EQ(rg.generic.order, 0);
  EXPECT_EQ(rg.origin.order, 0);
  EXPECT_TRUE(rg.pointwise_ok);
  EXPECT_EQ(rg.verdict, TransferVerdict::consistent);

  auto ex = scalar_system(2, 40, [](int i) { return Scalar(i == 0 ? 1 : 0); });
  auto re = transfer_experiment(ex, 32, 8);
  EXPECT_FALSE(re.generic.order);
  EXPECT_FALSE(re.origin.order);
  EXPECT_EQ(verdict_text(re.verdict), "hypothesis of transfer theorem not met");
}
