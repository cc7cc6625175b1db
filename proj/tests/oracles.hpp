#pragma once

// Independent reference computations for the test suites. Everything here is
// written from first principles (plain integer arithmetic, naive loops) and
// shares no code path with the library beyond the value types.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "tempered/tempered.hpp"

namespace oracle {

using tempered::GrowthSeries;
using tempered::MultiIndex;
using tempered::Scalar;
using tempered::SeriesSpec;

/// v_p of a nonzero integer by repeated division.
inline long vp_int(mpz_class n, long p) {
  long v = 0;
  if (n < 0) n = -n;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline long vp(const Scalar& x, long p) {
  mpq_class q = x.value();
  return vp_int(q.get_num(), p) - vp_int(q.get_den(), p);
}

/// |x|_p as an exact rational (0 for x = 0).
inline mpq_class absp(const Scalar& x, long p) {
  if (x.is_zero()) return 0;
  long v = vp(x, p);
  mpz_class pp;
  mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(v < 0 ? -v : v));
  return v < 0 ? mpq_class(pp) : mpq_class(1, 1) / mpq_class(pp);
}

/// (k+1)^(-n) for integer n of any sign.
inline mpq_class weight_factor(long k, int n) {
  mpz_class b = k + 1, r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n < 0 ? -n : n));
  return n < 0 ? mpq_class(r) : mpq_class(1, 1) / mpq_class(r);
}

/// sup_J |a_J| prod_i (|j_i|+1)^(-n).
inline mpq_class norm(const GrowthSeries& f, int n) {
  mpq_class best = 0;
  for (const auto& [j, c] : f.terms()) {
    mpq_class v = absp(c, f.prime().value());
    for (int e : j) v *= weight_factor(e < 0 ? -e : e, n);
    if (v > best) best = v;
  }
  return best;
}

/// Schoolbook product keeping only indices inside the window of `spec`.
inline GrowthSeries naive_mul(const GrowthSeries& f, const GrowthSeries& g, const SeriesSpec& spec) {
  std::map<MultiIndex, Scalar> acc;
  for (const auto& [a, x] : f.terms()) {
    for (const auto& [b, y] : g.terms()) {
      MultiIndex k(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) k[i] = a[i] + b[i];
      if (!spec.contains(k)) continue;
      auto [it, fresh] = acc.try_emplace(k, x * y);
      if (!fresh) it->second += x * y;
    }
  }
  GrowthSeries out(spec);
  for (const auto& [k, c] : acc) {
    if (!c.is_zero()) out.set(k, c);
  }
  return out;
}

inline Scalar factorial(int m) {
  mpz_class r = 1;
  for (int i = 2; i <= m; ++i) r *= i;
  return Scalar(mpq_class(r));
}

inline Scalar binomial(int n, int k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Scalar(mpq_class(r));
}

class Random {
 public:
  explicit Random(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }

  /// Rational with numerator and denominator carrying random powers of p.
  Scalar scalar(long p, int max_val = 3) {
    long num = uniform(1, 30) * (coin() ? 1 : -1);
    long den = uniform(1, 30);
    mpq_class q(num, den);
    int e = uniform(-max_val, max_val);
    mpz_class pp;
    mpz_ui_pow_ui(pp.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e < 0 ? -e : e));
    if (e >= 0) {
      q *= pp;
    } else {
      q /= pp;
    }
    q.canonicalize();
    return Scalar(q);
  }

  Scalar unit(long p) {
    for (;;) {
      long num = uniform(1, 40) * (coin() ? 1 : -1);
      long den = uniform(1, 40);
      if (num % p != 0 && den % p != 0) return Scalar(num, den);
    }
  }

  GrowthSeries series(const SeriesSpec& spec, int terms, int max_val = 3) {
    GrowthSeries f(spec);
    if (spec.empty()) return f;
    for (int t = 0; t < terms; ++t) {
      MultiIndex j;
      for (const auto& v : spec.vars()) j.push_back(uniform(v.lo, v.hi));
      f.set(j, scalar(spec.prime().value(), max_val));
    }
    return f;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

inline std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

/// Y(t) = sum_k Y_k t^k solving Y' = Y G, Y(0) = Id, by the naive recursion
/// (k+1) Y_{k+1} = sum_{a+b=k} Y_b G_a on matrices of rationals.
inline std::vector<std::vector<Scalar>> naive_cauchy(const tempered::DiffSystem& sys, int n) {
  const int m = sys.dim();
  std::vector<std::vector<Scalar>> y(static_cast<std::size_t>(n) + 1,
                                     std::vector<Scalar>(static_cast<std::size_t>(m) * m, Scalar(0)));
  for (int i = 0; i < m; ++i) y[0][static_cast<std::size_t>(i) * m + i] = Scalar(1);
  const int hi = sys.spec().var(0).hi;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        Scalar acc(0);
        for (int a = 0; a <= std::min(k, hi); ++a) {
          for (int l = 0; l < m; ++l) acc += y[k - a][static_cast<std::size_t>(i) * m + l] * sys.at(l, j).coeff({a});
        }
        y[k + 1][static_cast<std::size_t>(i) * m + j] = acc / Scalar(k + 1);
      }
    }
  }
  return y;
}

}  // namespace oracle
