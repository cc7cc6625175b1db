#pragma once

/**
 * Named growth classes of one-variable (Laurent) series, the opens of the
 * affine line they define, membership tests up to truncation, the splitting
 * along the cover by the tempered-at-infinity and fast-disk opens, the
 * duality pairing, and the inclusion facts between the opens.
 */

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tempered/growth_profile.hpp"
#include "tempered/series.hpp"

namespace tempered {

enum class ClassKind {
  tate,
  bounded,
  tempered,
  open_disk,
  fast,
  temp_at_infinity,
  fast_over_temp_infinity,
  amice,
};

inline constexpr std::array<std::pair<ClassKind, std::string_view>, 8> kClassNames{{
    {ClassKind::tate, "tate"},
    {ClassKind::bounded, "bounded"},
    {ClassKind::tempered, "tempered"},
    {ClassKind::open_disk, "open-disk"},
    {ClassKind::fast, "fast"},
    {ClassKind::temp_at_infinity, "temp-at-infinity"},
    {ClassKind::fast_over_temp_infinity, "fast-over-temp-infinity"},
    {ClassKind::amice, "amice"},
}};

inline std::string_view class_name(ClassKind k) {
  for (const auto& [kind, name] : kClassNames) {
    if (kind == k) return name;
  }
  return "?";
}

inline std::optional<ClassKind> parse_class_name(std::string_view s) {
  for (const auto& [kind, name] : kClassNames) {
    if (name == s) return kind;
  }
  return std::nullopt;
}

inline bool is_laurent_class(ClassKind k) {
  return k == ClassKind::temp_at_infinity || k == ClassKind::fast_over_temp_infinity || k == ClassKind::amice;
}

struct GrowthClass {
  ClassKind kind = ClassKind::tempered;
  /// open_disk only: radius p^(-radius_exponent); 0 is the open unit disk.
  int radius_exponent = 0;
};

struct LabelledProfile {
  std::string side;  // "nonnegative" or "negative"
  Profile profile;
};

struct MembershipReport {
  bool member = false;
  std::optional<int> witness;
  std::vector<LabelledProfile> profiles;
  std::optional<long> violating_index;  // set whenever member is false
  std::string detail;
};

namespace detail {

struct Sides {
  std::vector<NormValue> nonneg;  // |a_i|, i = 0..hi
  std::vector<NormValue> neg;     // |a_{-k}|, k = 0..-lo, slot 0 unused (zero)
};

inline Sides split_sides(const GrowthSeries& f) {
  if (f.spec().arity() != 1) throw DomainError("membership needs a univariate series");
  const auto& w = f.spec().var(0);
  Sides s;
  s.nonneg.assign(static_cast<std::size_t>(std::max(w.hi + 1, 0)), NormValue(0));
  s.neg.assign(static_cast<std::size_t>(w.lo < 0 ? 1 - w.lo : 0), NormValue(0));
  for (const auto& [j, c] : f.terms()) {
    if (j[0] >= 0) {
      s.nonneg[j[0]] = abs_value(c, f.prime());
    } else {
      s.neg[-j[0]] = abs_value(c, f.prime());
    }
  }
  return s;
}

/// Least stabilizing weight; records each profile examined.
inline std::optional<int> least_stable(std::span<const NormValue> mags, int n_max, const char* side,
                                       MembershipReport& rep, long sign) {
  for (int n = 0; n <= n_max; ++n) {
    Profile prof = block_profile(mags, n);
    bool ok = stabilizes(prof);
    rep.profiles.push_back({side, prof});
    if (ok) return n;
    if (n == n_max) rep.violating_index = sign * worst_index(prof);
  }
  return std::nullopt;
}

inline bool decays_at(std::span<const NormValue> mags, int weight, const char* side, MembershipReport& rep,
                      long sign) {
  Profile prof = block_profile(mags, weight);
  bool ok = decays(prof);
  rep.profiles.push_back({side, prof});
  if (!ok) rep.violating_index = sign * worst_index(prof);
  return ok;
}

inline bool fast_decay(std::span<const NormValue> mags, int n_max, const char* side, MembershipReport& rep,
                       long sign) {
  for (int n = 0; n <= n_max; ++n) {
    if (!decays_at(mags, -n, side, rep, sign)) {
      rep.detail = std::string(side) + " side fails to decay at weight -" + std::to_string(n);
      return false;
    }
  }
  return true;
}

/// Block maxima of -v(a_i) - e*i must grow by at most eps per index.
inline bool subexponential(const GrowthSeries& f, int e, MembershipReport& rep) {
  const int len = f.spec().var(0).hi + 1;
  auto cuts = doubling_truncations(len);
  std::vector<std::optional<mpq_class>> best(cuts.size());
  std::vector<long> arg(cuts.size(), -1);
  for (const auto& [j, c] : f.terms()) {
    long i = j[0];
    std::size_t b = 0;
    while (cuts[b] <= i) ++b;
    mpq_class score = -*valuation(c, f.prime()) - static_cast<long>(e) * i;
    if (!best[b] || score > *best[b]) {
      best[b] = score;
      arg[b] = i;
    }
  }
  const std::size_t k = cuts.size();
  for (std::size_t r = (k >= 3 ? k - 2 : 1); r < k; ++r) {
    if (!best[r]) continue;
    if (!best[r - 1]) {
      rep.violating_index = arg[r];
      return false;
    }
    long span = cuts[r] - (r >= 2 ? cuts[r - 2] : 0);
    if (*best[r] - *best[r - 1] > default_epsilon() * span) {
      rep.violating_index = arg[r];
      return false;
    }
  }
  return true;
}

}  // namespace detail

/**
 * Membership of a univariate series in a growth class, up to truncation.
 * Non-Laurent classes reject series with stored negative-index terms.
 */
inline MembershipReport membership(const GrowthSeries& f, const GrowthClass& cls, int n_max) {
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  auto sides = detail::split_sides(f);
  if (!is_laurent_class(cls.kind)) {
    for (const auto& m : sides.neg) {
      if (!m.is_zero()) throw DomainError("window/class mismatch: Laurent terms in a disk class");
    }
  }
  MembershipReport rep;
  const char* pos = "nonnegative";
  const char* neg = "negative";
  switch (cls.kind) {
    case ClassKind::tate:
      rep.member = detail::decays_at(sides.nonneg, 0, pos, rep, 1);
      if (!rep.member) rep.detail = "coefficients do not tend to 0";
      break;
    case ClassKind::bounded: {
      Profile prof = block_profile(sides.nonneg, 0);
      rep.profiles.push_back({pos, prof});
      rep.member = stabilizes(prof);
      if (rep.member) {
        rep.witness = 0;
      } else {
        rep.violating_index = worst_index(prof);
        rep.detail = "weight-0 profile keeps growing";
      }
      break;
    }
    case ClassKind::tempered:
      rep.witness = detail::least_stable(sides.nonneg, n_max, pos, rep, 1);
      rep.member = rep.witness.has_value();
      if (!rep.member) rep.detail = "no weight n <= n_max stabilizes";
      break;
    case ClassKind::open_disk:
      rep.profiles.push_back({pos, block_profile(sides.nonneg, 0)});
      rep.member = detail::subexponential(f, cls.radius_exponent, rep);
      if (!rep.member) rep.detail = "coefficients grow exponentially against the radius";
      break;
    case ClassKind::fast:
      rep.member = detail::fast_decay(sides.nonneg, n_max, pos, rep, 1);
      break;
    case ClassKind::temp_at_infinity:
      rep.witness = detail::least_stable(sides.neg, n_max, neg, rep, -1);
      rep.member = rep.witness.has_value();
      if (!rep.member) rep.detail = "negative side is not tempered in |i|";
      break;
    case ClassKind::fast_over_temp_infinity:
      rep.member = detail::fast_decay(sides.neg, n_max, neg, rep, -1);
      if (rep.member) {
        rep.witness = detail::least_stable(sides.nonneg, n_max, pos, rep, 1);
        rep.member = rep.witness.has_value();
        if (!rep.member) rep.detail = "nonnegative side is not tempered";
      }
      break;
    case ClassKind::amice:
      rep.member = detail::decays_at(sides.neg, 0, neg, rep, -1);
      if (!rep.member) {
        rep.detail = "negative side does not tend to 0";
        break;
      }
      {
        Profile prof = block_profile(sides.nonneg, 0);
        rep.profiles.push_back({pos, prof});
        rep.member = stabilizes(prof);
        if (!rep.member) {
          rep.violating_index = worst_index(prof);
          rep.detail = "nonnegative side is unbounded";
        }
      }
      break;
  }
  if (rep.member) rep.violating_index.reset();
  return rep;
}

struct CoverSplit {
  GrowthSeries at_infinity;  // strictly negative indices
  GrowthSeries fast_part;    // indices >= 0, constants included
  MembershipReport at_infinity_report;
  MembershipReport fast_report;
};

/// Splits a Laurent series along the cover of the line by the
/// tempered-at-infinity open and the fast disk. Both parts keep f's window.
inline CoverSplit split_cover(const GrowthSeries& f, int n_max = 8) {
  if (f.spec().arity() != 1) throw DomainError("split_cover needs a univariate series");
  GrowthSeries inf(f.spec()), fast(f.spec());
  for (const auto& [j, c] : f.terms()) (j[0] < 0 ? inf : fast).set(j, c);
  auto r_inf = membership(inf, {ClassKind::temp_at_infinity}, n_max);
  auto r_fast = membership(fast, {ClassKind::fast}, n_max);
  return {std::move(inf), std::move(fast), std::move(r_inf), std::move(r_fast)};
}

struct Pairing {
  Scalar value;
  NormValue lhs;  // |value|
  NormValue rhs;  // ||f||_n * ||g||_{-n}
  bool holds() const { return lhs <= rhs; }
};

/// sum_i a_i b_i over the common window, with the duality bound.
inline Pairing pair_dual(const GrowthSeries& f, const GrowthSeries& g, int n) {
  if (f.spec().arity() != 1 || !(f.spec() == g.spec())) throw DomainError("window mismatch");
  Scalar sum(0);
  for (const auto& [j, a] : f.terms()) {
    auto it = g.terms().find(j);
    if (it != g.terms().end()) sum += a * it->second;
  }
  NormValue lhs = abs_value(sum, f.prime());
  return {sum, lhs, norm_weighted(f, n) * norm_weighted(g, -n)};
}

struct LatticeFact {
  std::string smaller;
  std::string larger;
  std::string reason;
};

/// Inclusions between the opens of the line cut out by the classes
/// (an inclusion of opens is an inclusion of their function classes reversed;
/// facts are stated for the opens).
inline const std::vector<LatticeFact>& lattice_relations() {
  static const std::vector<LatticeFact> facts{
      {"open-disk", "tempered", "the open unit disk lies in the tempered open"},
      {"tempered", "bounded", "tempered open lies in the bounded open"},
      {"bounded", "tate", "bounded open lies in the closed unit disk"},
      {"fast-over-temp-infinity", "temp-at-infinity", "intersection of the cover lies in each member"},
      {"fast-over-temp-infinity", "fast", "intersection of the cover lies in each member"},
      {"amice", "bounded", "the Amice open lies in the bounded open"},
  };
  return facts;
}

/// Opens whose union is the whole line.
inline std::vector<std::pair<std::string, std::string>> lattice_covers() {
  return {{"temp-at-infinity", "fast"}};
}

/// Reflexive-transitive closure of the inclusion facts.
inline bool lattice_query(std::string_view smaller, std::string_view larger) {
  if (!parse_class_name(smaller) || !parse_class_name(larger)) {
    throw DomainError("unknown class name");
  }
  std::vector<std::string> frontier{std::string(smaller)}, seen;
  while (!frontier.empty()) {
    std::string cur = frontier.back();
    frontier.pop_back();
    if (cur == larger) return true;
    if (std::find(seen.begin(), seen.end(), cur) != seen.end()) continue;
    seen.push_back(cur);
    for (const auto& f : lattice_relations()) {
      if (f.smaller == cur) frontier.push_back(f.larger);
    }
  }
  return false;
}

}  // namespace tempered
