#pragma once

/**
 * Truncated multivariate power and Laurent series over exact scalars.
 *
 * A series carries a box window per variable. Below `lo` every coefficient is
 * zero; above `hi` coefficients are unknown. Operations compute the largest
 * box on which their result is exact and return it in the output spec, so a
 * consumer never reads a coefficient that truncation has made meaningless.
 *
 * Some operations depend on coefficients beyond the window (substitution,
 * generic-point development, division quotients). They take an `Exactness`
 * flag: `truncated` keeps the window semantics above, `polynomial` declares
 * that the stored terms are the whole element (all unknown terms are zero).
 */

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "tempered/error.hpp"
#include "tempered/padic.hpp"

namespace tempered {

using MultiIndex = std::vector<int>;

enum class Exactness { truncated, polynomial };

struct VarWindow {
  std::string name;
  int lo = 0;
  int hi = 0;

  bool empty() const noexcept { return hi < lo; }
  bool contains(int j) const noexcept { return lo <= j && j <= hi; }
  friend bool operator==(const VarWindow&, const VarWindow&) = default;
};

class SeriesSpec {
 public:
  SeriesSpec(Prime prime, std::vector<VarWindow> vars) : prime_(prime), vars_(std::move(vars)) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      const auto& v = vars_[i];
      if (v.name.empty()) throw DomainError("empty variable name");
      if (v.lo > 0) throw DomainError("window of '" + v.name + "' must have lo <= 0");
      if (v.hi < v.lo - 1) throw DomainError("window of '" + v.name + "' is malformed");
      for (std::size_t j = 0; j < i; ++j) {
        if (vars_[j].name == v.name) throw DomainError("duplicate variable '" + v.name + "'");
      }
    }
  }

  static SeriesSpec univariate(Prime p, std::string name, int hi, int lo = 0) {
    return SeriesSpec(p, {VarWindow{std::move(name), lo, hi}});
  }

  const Prime& prime() const noexcept { return prime_; }
  const std::vector<VarWindow>& vars() const noexcept { return vars_; }
  std::size_t arity() const noexcept { return vars_.size(); }
  const VarWindow& var(std::size_t i) const { return vars_.at(i); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name == name) return i;
    }
    return std::nullopt;
  }
  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw DomainError("unknown variable '" + std::string(name) + "'");
  }

  bool empty() const {
    return std::any_of(vars_.begin(), vars_.end(), [](const VarWindow& v) { return v.empty(); });
  }
  bool contains(const MultiIndex& j) const {
    if (j.size() != vars_.size()) return false;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!vars_[i].contains(j[i])) return false;
    }
    return true;
  }
  /// Same prime and same ordered variable names; windows may differ.
  bool same_variables(const SeriesSpec& o) const {
    if (!(prime_ == o.prime_) || vars_.size() != o.vars_.size()) return false;
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name != o.vars_[i].name) return false;
    }
    return true;
  }
  SeriesSpec with_window(std::size_t i, int lo, int hi) const {
    auto vars = vars_;
    vars.at(i).lo = lo;
    vars.at(i).hi = hi;
    return SeriesSpec(prime_, std::move(vars));
  }
  bool is_power_series() const {
    return std::all_of(vars_.begin(), vars_.end(), [](const VarWindow& v) { return v.lo == 0; });
  }

  friend bool operator==(const SeriesSpec&, const SeriesSpec&) = default;

 private:
  Prime prime_;
  std::vector<VarWindow> vars_;
};

class GrowthSeries {
 public:
  using Terms = std::map<MultiIndex, Scalar>;

  explicit GrowthSeries(SeriesSpec spec) : spec_(std::move(spec)) {}

  static GrowthSeries constant(const SeriesSpec& spec, const Scalar& c) {
    GrowthSeries f(spec);
    if (!spec.empty()) f.set(MultiIndex(spec.arity(), 0), c);
    return f;
  }
  static GrowthSeries monomial(const SeriesSpec& spec, MultiIndex j, const Scalar& c) {
    GrowthSeries f(spec);
    f.set(std::move(j), c);
    return f;
  }
  static GrowthSeries variable(const SeriesSpec& spec, std::string_view name) {
    MultiIndex j(spec.arity(), 0);
    j[spec.index_of(name)] = 1;
    return monomial(spec, std::move(j), Scalar(1));
  }

  const SeriesSpec& spec() const noexcept { return spec_; }
  const Prime& prime() const noexcept { return spec_.prime(); }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  Scalar coeff(const MultiIndex& j) const {
    if (!spec_.contains(j)) throw DomainError("coefficient index outside the exact window");
    auto it = terms_.find(j);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  void set(MultiIndex j, Scalar c) {
    if (!spec_.contains(j)) throw DomainError("coefficient index outside the window");
    if (c.is_zero()) {
      terms_.erase(j);
    } else {
      terms_[std::move(j)] = std::move(c);
    }
  }

  void add_to(const MultiIndex& j, const Scalar& c) {
    if (c.is_zero()) return;
    if (!spec_.contains(j)) throw DomainError("coefficient index outside the window");
    auto [it, inserted] = terms_.try_emplace(j, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Largest stored exponent of variable `i`; nullopt for the zero series.
  std::optional<int> degree(std::size_t i) const {
    std::optional<int> d;
    for (const auto& [j, c] : terms_) d = d ? std::max(*d, j[i]) : j[i];
    return d;
  }

  /// Same variables, narrower (or equal) window; terms outside are dropped.
  GrowthSeries restricted(const SeriesSpec& narrower) const {
    if (!spec_.same_variables(narrower)) throw DomainError("spec mismatch");
    GrowthSeries out(narrower);
    for (const auto& [j, c] : terms_) {
      if (narrower.contains(j)) out.terms_.emplace(j, c);
    }
    return out;
  }

  GrowthSeries& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [j, a] : terms_) a *= c;
    return *this;
  }

  friend bool operator==(const GrowthSeries&, const GrowthSeries&) = default;

 private:
  SeriesSpec spec_;
  Terms terms_;
};

namespace detail {

inline void require_same_variables(const GrowthSeries& f, const GrowthSeries& g) {
  if (!f.spec().same_variables(g.spec())) throw DomainError("spec mismatch");
}

/// prod (|j_l|+1)^(-weights_l) as an exact rational.
inline mpq_class index_weight(const MultiIndex& j, std::span<const int> weights) {
  mpz_class num = 1, den = 1;
  mpz_class base;
  for (std::size_t l = 0; l < j.size(); ++l) {
    int w = weights[l];
    if (w == 0) continue;
    base = std::abs(j[l]) + 1;
    mpz_class pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(std::abs(w)));
    if (w > 0) {
      den *= pw;
    } else {
      num *= pw;
    }
  }
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

inline mpq_class abs_rational(const Scalar& a, const Prime& p) { return abs_value(a, p).value(); }

}  // namespace detail

inline GrowthSeries operator+(const GrowthSeries& f, const GrowthSeries& g) {
  detail::require_same_variables(f, g);
  std::vector<VarWindow> vars = f.spec().vars();
  for (std::size_t i = 0; i < vars.size(); ++i) {
    vars[i].lo = std::min(vars[i].lo, g.spec().var(i).lo);
    vars[i].hi = std::min(vars[i].hi, g.spec().var(i).hi);
  }
  GrowthSeries out(SeriesSpec(f.prime(), std::move(vars)));
  for (const auto* h : {&f, &g}) {
    for (const auto& [j, c] : h->terms()) {
      if (out.spec().contains(j)) out.add_to(j, c);
    }
  }
  return out;
}

inline GrowthSeries operator-(const GrowthSeries& f) {
  GrowthSeries out = f;
  out *= Scalar(-1);
  return out;
}
inline GrowthSeries operator-(const GrowthSeries& f, const GrowthSeries& g) { return f + (-g); }
inline GrowthSeries operator*(const Scalar& c, GrowthSeries f) { return f *= c; }

/// sup_J |a_J| * prod_l (|j_l|+1)^(-weights_l); weight 0 on a variable gives
/// the Gauss (sup) norm in that direction.
inline NormValue norm_mixed(const GrowthSeries& f, std::span<const int> weights) {
  if (weights.size() != f.spec().arity()) throw DomainError("weight vector has wrong length");
  mpq_class best = 0;
  for (const auto& [j, c] : f.terms()) {
    mpq_class v = detail::abs_rational(c, f.prime()) * detail::index_weight(j, weights);
    if (v > best) best = v;
  }
  return NormValue(best);
}

/// The log-growth norm ||f||_n; a negative n gives the fast-decay norm.
inline NormValue norm_weighted(const GrowthSeries& f, int n) {
  std::vector<int> w(f.spec().arity(), n);
  return norm_mixed(f, w);
}

inline NormValue gauss_norm(const GrowthSeries& f) { return norm_weighted(f, 0); }

/// Cauchy product. The result window is the largest box on which the product
/// is determined by the known coefficients of both factors.
inline GrowthSeries mul(const GrowthSeries& f, const GrowthSeries& g) {
  detail::require_same_variables(f, g);
  const std::size_t m = f.spec().arity();
  std::vector<VarWindow> vars = f.spec().vars();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = f.spec().var(i);
    const auto& b = g.spec().var(i);
    vars[i].lo = a.lo + b.lo;
    vars[i].hi = std::min(a.hi + b.lo, b.hi + a.lo);
    if (a.empty() || b.empty()) vars[i].hi = vars[i].lo - 1;
  }
  SeriesSpec spec(f.prime(), std::move(vars));
  GrowthSeries out(spec);
  if (spec.empty() || f.is_zero() || g.is_zero()) return out;

  std::size_t box = 1;
  std::vector<std::size_t> stride(m);
  for (std::size_t i = m; i-- > 0;) {
    stride[i] = box;
    box *= static_cast<std::size_t>(spec.var(i).hi - spec.var(i).lo + 1);
    if (box > (std::size_t{1} << 22)) break;
  }
  if (box <= (std::size_t{1} << 22)) {
    std::vector<mpq_class> acc(box);
    std::vector<char> touched(box, 0);
    MultiIndex k(m);
    for (const auto& [jf, cf] : f.terms()) {
      for (const auto& [jg, cg] : g.terms()) {
        std::size_t pos = 0;
        bool inside = true;
        for (std::size_t i = 0; i < m; ++i) {
          int e = jf[i] + jg[i];
          if (e > spec.var(i).hi) {
            inside = false;
            break;
          }
          pos += static_cast<std::size_t>(e - spec.var(i).lo) * stride[i];
        }
        if (!inside) continue;
        acc[pos] += cf.value() * cg.value();
        touched[pos] = 1;
      }
    }
    for (std::size_t pos = 0; pos < box; ++pos) {
      if (!touched[pos] || sgn(acc[pos]) == 0) continue;
      std::size_t rest = pos;
      for (std::size_t i = 0; i < m; ++i) {
        k[i] = static_cast<int>(rest / stride[i]) + spec.var(i).lo;
        rest %= stride[i];
      }
      out.set(k, Scalar(std::move(acc[pos])));
    }
    return out;
  }
  MultiIndex k(m);
  for (const auto& [jf, cf] : f.terms()) {
    for (const auto& [jg, cg] : g.terms()) {
      for (std::size_t i = 0; i < m; ++i) k[i] = jf[i] + jg[i];
      if (spec.contains(k)) out.add_to(k, cf * cg);
    }
  }
  return out;
}

inline GrowthSeries derivative(const GrowthSeries& f, std::string_view var) {
  const std::size_t v = f.spec().index_of(var);
  const auto& w = f.spec().var(v);
  GrowthSeries out(f.spec().with_window(v, w.lo < 0 ? w.lo - 1 : 0, w.hi - 1));
  for (const auto& [j, c] : f.terms()) {
    if (j[v] == 0) continue;
    MultiIndex k = j;
    k[v] -= 1;
    out.add_to(k, c * Scalar(j[v]));
  }
  return out;
}

/// Formal antiderivative with zero constant term.
inline GrowthSeries integrate(const GrowthSeries& f, std::string_view var) {
  const std::size_t v = f.spec().index_of(var);
  const auto& w = f.spec().var(v);
  GrowthSeries out(f.spec().with_window(v, w.lo < 0 ? w.lo + 1 : 0, w.hi + 1));
  for (const auto& [j, c] : f.terms()) {
    if (j[v] == -1) throw DomainError("a t^-1 term has no formal antiderivative");
    MultiIndex k = j;
    k[v] += 1;
    out.add_to(k, c / Scalar(k[v]));
  }
  return out;
}

/// Re-expresses f in a spec whose variables are a superset of f's (matched
/// by name). Terms outside the target window are dropped.
inline GrowthSeries reindex(const GrowthSeries& f, const SeriesSpec& target) {
  if (!(f.prime() == target.prime())) throw DomainError("prime mismatch");
  std::vector<std::size_t> map(f.spec().arity());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = target.index_of(f.spec().var(i).name);
  GrowthSeries out(target);
  MultiIndex k(target.arity(), 0);
  for (const auto& [j, c] : f.terms()) {
    std::fill(k.begin(), k.end(), 0);
    for (std::size_t i = 0; i < map.size(); ++i) k[map[i]] = j[i];
    if (target.contains(k)) out.add_to(k, c);
  }
  return out;
}

/// f with `var` set to zero, as a series in the remaining variables.
inline GrowthSeries set_to_zero(const GrowthSeries& f, std::string_view var) {
  const std::size_t v = f.spec().index_of(var);
  if (f.spec().var(v).lo < 0) throw DomainError("cannot evaluate a Laurent variable at 0");
  std::vector<VarWindow> vars;
  for (std::size_t i = 0; i < f.spec().arity(); ++i) {
    if (i != v) vars.push_back(f.spec().var(i));
  }
  GrowthSeries out(SeriesSpec(f.prime(), std::move(vars)));
  for (const auto& [j, c] : f.terms()) {
    if (j[v] != 0) continue;
    MultiIndex k;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i != v) k.push_back(j[i]);
    }
    out.add_to(k, c);
  }
  return out;
}

inline Scalar constant_term(const GrowthSeries& f) {
  MultiIndex zero(f.spec().arity(), 0);
  auto it = f.terms().find(zero);
  return it == f.terms().end() ? Scalar(0) : it->second;
}

struct NormCertificate {
  int weight = 0;
  NormValue lhs;
  NormValue rhs;
  bool holds() const { return lhs <= rhs; }
};

struct DiagonalQuotient {
  GrowthSeries quotient;
  /// ||q||_{2n} <= 2^n ||f||_n
  NormCertificate certificate;
};

/**
 * (f(t,x) - f(x,x)) / (t - x) for a bivariate power series f in (t, x),
 * using q_{h,s} = sum_{l=0..s} a_{h+1+l, s-l}.
 *
 * In truncated mode q_{h,s} needs a_{i,*} up to i = h+s+1, so the exact part
 * is the triangle h+s <= N_t - 1; the returned window is the box inside it
 * with s <= min(N_x, (N_t-1)/2).
 */
inline DiagonalQuotient divide_diagonal(const GrowthSeries& f, int n,
                                        Exactness mode = Exactness::truncated) {
  if (f.spec().arity() != 2 || !f.spec().is_power_series()) {
    throw DomainError("diagonal division needs a bivariate power series");
  }
  if (n < 0) throw DomainError("diagonal division weight must be >= 0");
  const int nt = f.spec().var(0).hi;
  const int nx = f.spec().var(1).hi;
  int a_hi, b_hi;
  if (mode == Exactness::polynomial) {
    a_hi = nt - 1;
    b_hi = nx + nt - 1;
  } else {
    b_hi = nt >= 1 ? std::min(nx, (nt - 1) / 2) : -1;
    a_hi = nt - 1 - b_hi;
    if (nt < 1) a_hi = -1;
  }
  std::vector<VarWindow> vars = f.spec().vars();
  vars[0].hi = a_hi;
  vars[1].hi = b_hi;
  if (a_hi < 0 || b_hi < 0) vars[0].hi = vars[1].hi = -1;
  GrowthSeries q(SeriesSpec(f.prime(), std::move(vars)));
  MultiIndex k(2);
  for (const auto& [j, c] : f.terms()) {
    for (int l = 0; l <= j[0] - 1; ++l) {
      k[0] = j[0] - 1 - l;
      k[1] = j[1] + l;
      if (q.spec().contains(k)) q.add_to(k, c);
    }
  }
  NormCertificate cert{n, norm_weighted(q, 2 * n),
                       NormValue::power(2, n) * norm_weighted(f, n)};
  return {std::move(q), std::move(cert)};
}

struct LinearQuotient {
  GrowthSeries quotient;
  /// ||h||_n <= ||(g t - g') h||_n for each requested n.
  std::vector<NormCertificate> certificates;
};

/**
 * Solves (g t - g') h = h' on the window by the forward recursion
 * a_i = (g a_{i-1} - b_i) / g'. g and g' must be p-adic units.
 *
 * In polynomial mode h' is a polynomial; the division must then leave no
 * remainder, i.e. the recursion must vanish at the top of the window.
 */
inline LinearQuotient divide_linear(const GrowthSeries& h_prime, const Scalar& g,
                                    const Scalar& g_prime, std::span<const int> weights,
                                    Exactness mode = Exactness::truncated) {
  const auto& spec = h_prime.spec();
  if (spec.arity() != 1 || !spec.is_power_series()) {
    throw DomainError("linear division needs a univariate power series");
  }
  if (!is_unit(g, spec.prime()) || !is_unit(g_prime, spec.prime())) {
    throw DomainError("linear division needs unit coefficients |g| = |g'| = 1");
  }
  const int top = spec.var(0).hi;
  GrowthSeries h(spec);
  Scalar prev(0);
  for (int i = 0; i <= top; ++i) {
    Scalar cur = (g * prev - h_prime.coeff({i})) / g_prime;
    h.set({i}, cur);
    prev = std::move(cur);
  }
  if (mode == Exactness::polynomial && top >= 0 && !prev.is_zero()) {
    throw DomainError("not divisible at this truncation");
  }
  LinearQuotient out{std::move(h), {}};
  for (int n : weights) {
    out.certificates.push_back({n, norm_weighted(out.quotient, n), norm_weighted(h_prime, n)});
  }
  return out;
}

/**
 * Formal composition f|_{var = g}. The result lives in f's remaining
 * variables followed by g's variables (shared names are identified).
 *
 * Truncated mode needs ||g||_0 <= 1 (otherwise the substitution diverges) and
 * g(0) = 0 (otherwise unknown high terms of f reach every output degree). The
 * output window is then clipped so every kept monomial has total g-degree at
 * most the window of `var`. Polynomial mode treats f as a polynomial in var.
 */
inline GrowthSeries substitute(const GrowthSeries& f, std::string_view var, const GrowthSeries& g,
                               Exactness mode = Exactness::truncated) {
  if (!(f.prime() == g.prime())) throw DomainError("prime mismatch");
  const std::size_t v = f.spec().index_of(var);
  if (f.spec().var(v).lo < 0) throw DomainError("cannot substitute into a Laurent variable");
  if (!g.spec().is_power_series()) throw DomainError("substituted series must be a power series");

  // Every term of g has degree >= 1 in the variables it uses, so g^e only
  // reaches monomials of degree >= e in them. Splitting the exact degree
  // budget var.hi evenly over those variables keeps the box exact.
  std::vector<bool> used(g.spec().arity(), false);
  int clip = std::numeric_limits<int>::max();
  if (mode == Exactness::truncated) {
    if (gauss_norm(g) > NormValue(1)) throw DomainError("divergent substitution: ||g||_0 > 1");
    if (!constant_term(g).is_zero()) {
      throw DomainError("substitution of a series with a constant term is exact only for polynomial input");
    }
    for (const auto& [j, c] : g.terms()) {
      for (std::size_t i = 0; i < j.size(); ++i) used[i] = used[i] || j[i] != 0;
    }
    const auto n_used = std::count(used.begin(), used.end(), true);
    if (n_used > 0) clip = f.spec().var(v).hi / static_cast<int>(n_used);
  }

  std::vector<VarWindow> vars;
  for (std::size_t i = 0; i < f.spec().arity(); ++i) {
    if (i != v) vars.push_back(f.spec().var(i));
  }
  for (std::size_t gi = 0; gi < g.spec().arity(); ++gi) {
    const VarWindow& w = g.spec().var(gi);
    VarWindow gw = w;
    if (used[gi]) gw.hi = std::min(gw.hi, clip);
    auto it = std::find_if(vars.begin(), vars.end(), [&](const VarWindow& x) { return x.name == w.name; });
    if (it == vars.end()) {
      vars.push_back(gw);
    } else {
      it->lo = std::min(it->lo, gw.lo);
      it->hi = std::min(it->hi, gw.hi);
    }
  }
  SeriesSpec out_spec(f.prime(), std::move(vars));
  GrowthSeries out(out_spec);
  if (out_spec.empty()) return out;

  // f = sum_k c_k(other vars) var^k; accumulate c_k * g^k.
  std::map<int, GrowthSeries> slices;
  for (const auto& [j, c] : f.terms()) {
    MultiIndex k(out_spec.arity(), 0);
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i == v) continue;
      k[out_spec.index_of(f.spec().var(i).name)] = j[i];
    }
    auto [it, inserted] = slices.try_emplace(j[v], out_spec);
    if (out_spec.contains(k)) it->second.add_to(k, c);
  }
  GrowthSeries g_out = reindex(g, out_spec);
  GrowthSeries power = GrowthSeries::constant(out_spec, Scalar(1));
  int reached = 0;
  for (const auto& [e, slice] : slices) {
    while (reached < e) {
      power = mul(power, g_out).restricted(out_spec);
      ++reached;
    }
    GrowthSeries term = mul(slice, power);
    for (const auto& [k, c] : term.terms()) {
      if (out_spec.contains(k)) out.add_to(k, c);
    }
  }
  return out;
}

/// Renames one variable; windows are kept.
inline GrowthSeries rename(const GrowthSeries& f, std::string_view from, std::string to) {
  auto vars = f.spec().vars();
  vars.at(f.spec().index_of(from)).name = std::move(to);
  GrowthSeries out{SeriesSpec(f.prime(), std::move(vars))};
  for (const auto& [j, c] : f.terms()) out.set(j, c);
  return out;
}

}  // namespace tempered
