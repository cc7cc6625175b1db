#pragma once

/**
 * Exact scalars for a discretely valued field.
 *
 * Elements of K = Q_p are modelled by rationals (Q is dense in Q_p and every
 * algorithm in this library is exact on rational input). Absolute values and
 * weighted norms are exact nonnegative rationals, so every comparison between
 * norms is decided without rounding.
 */

#include <gmpxx.h>

#include <cctype>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

#include "tempered/error.hpp"

namespace tempered {

class Prime {
 public:
  explicit Prime(long p) : p_(p) {
    if (p < 2) throw DomainError("prime must be >= 2, got " + std::to_string(p));
    for (long d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw DomainError(std::to_string(p) + " is not prime");
    }
  }

  long value() const noexcept { return p_; }
  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  long p_;
};

class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den) {
    if (den == 0) throw DomainError("zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
  }
  explicit Scalar(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "a/b" or "a" (optional leading sign on a; b > 0).
  static Scalar parse(std::string_view text) {
    auto bad = [&] { return ParseError("malformed rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto num = text.substr(0, slash);
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) s.remove_prefix(1);
      if (s.empty()) return false;
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      }
      return true;
    };
    if (!digits_ok(num, true)) throw bad();
    std::string num_s(num);
    if (num_s[0] == '+') num_s.erase(0, 1);
    mpz_class n(num_s, 10);
    mpz_class d = 1;
    if (slash != std::string_view::npos) {
      auto den = text.substr(slash + 1);
      if (!digits_ok(den, false)) throw bad();
      d = mpz_class(std::string(den), 10);
      if (d == 0) throw bad();
    }
    return Scalar(mpq_class(n, d));
  }

  const mpq_class& value() const noexcept { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Scalar& operator+=(const Scalar& o) { v_ += o.v_; return *this; }
  Scalar& operator-=(const Scalar& o) { v_ -= o.v_; return *this; }
  Scalar& operator*=(const Scalar& o) { v_ *= o.v_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(mpq_class(-a.v_)); }
  friend bool operator==(const Scalar& a, const Scalar& b) { return a.v_ == b.v_; }

 private:
  mpq_class v_{0};
};

/// Exact nonnegative real used for absolute values and weighted norms.
class NormValue {
 public:
  NormValue() = default;
  NormValue(long v) : v_(v) { check(); }  // NOLINT(google-explicit-constructor)
  explicit NormValue(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); check(); }

  /// base^exponent for an integer base >= 1 and any integer exponent.
  static NormValue power(long base, long exponent) {
    mpz_class b = base;
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    if (exponent >= 0) return NormValue(mpq_class(r));
    return NormValue(mpq_class(mpz_class(1), r));
  }

  const mpq_class& value() const noexcept { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }
  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  NormValue& operator*=(const NormValue& o) { v_ *= o.v_; return *this; }
  friend NormValue operator*(NormValue a, const NormValue& b) { return a *= b; }
  friend NormValue operator/(const NormValue& a, const NormValue& b) {
    if (b.is_zero()) throw DomainError("division by zero norm");
    return NormValue(mpq_class(a.v_ / b.v_));
  }
  friend bool operator==(const NormValue& a, const NormValue& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const NormValue& a, const NormValue& b) {
    int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  void check() const {
    if (sgn(v_) < 0) throw DomainError("norm values are nonnegative");
  }
  mpq_class v_{0};
};

inline const NormValue& max(const NormValue& a, const NormValue& b) { return a < b ? b : a; }

/// p-adic valuation; std::nullopt stands for +infinity (the zero scalar).
using Valuation = std::optional<long>;

inline Valuation valuation(const Scalar& x, const Prime& p) {
  if (x.is_zero()) return std::nullopt;
  mpz_class prime = p.value();
  mpz_class rest;
  long up = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), x.value().get_num_mpz_t(), prime.get_mpz_t()));
  long down = static_cast<long>(
      mpz_remove(rest.get_mpz_t(), x.value().get_den_mpz_t(), prime.get_mpz_t()));
  return up - down;
}

/// |x|_p = p^(-v_p(x)), exactly; 0 for x = 0.
inline NormValue abs_value(const Scalar& x, const Prime& p) {
  auto v = valuation(x, p);
  if (!v) return NormValue(0);
  return NormValue::power(p.value(), -*v);
}

/// True when |x|_p = 1.
inline bool is_unit(const Scalar& x, const Prime& p) {
  auto v = valuation(x, p);
  return v && *v == 0;
}

}  // namespace tempered
