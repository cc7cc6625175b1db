#pragma once

/**
 * Finite-window growth diagnostics for coefficient sequences.
 *
 * A sequence |a_0|, |a_1|, ... of length L is cut at doubling truncations
 * 8, 16, 32, ... (the last one replaced by L). The profile at weight n is the
 * list of block norms max_{T_{k-1} <= i < T_k} |a_i| (i+1)^(-n). A profile
 * stabilizes when each of the last two consecutive block ratios is below
 * 1 + eps (a zero block followed by a zero block counts as stable), and
 * decays when those ratios are below 1.
 */

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tempered/padic.hpp"

namespace tempered {

inline const mpq_class& default_epsilon() {
  static const mpq_class eps(1, 4);
  return eps;
}

struct ProfilePoint {
  int truncation = 0;  // block is [previous truncation, truncation)
  NormValue norm;
  long argmax = -1;  // index attaining the block norm, -1 for a zero block
};

struct Profile {
  int weight = 0;
  std::vector<ProfilePoint> points;
};

inline std::vector<int> doubling_truncations(int length) {
  std::vector<int> t;
  if (length <= 0) return t;
  if (length < 8) return {length};
  t.push_back(8);
  while (2L * t.back() <= length) t.push_back(2 * t.back());
  t.back() = length;
  return t;
}

/// (i+1)^(-weight) as an exact rational.
inline mpq_class index_weight(long i, int weight) {
  mpz_class base = i + 1;
  mpz_class pw;
  mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(weight < 0 ? -weight : weight));
  return weight >= 0 ? mpq_class(mpz_class(1), pw) : mpq_class(pw);
}

inline Profile block_profile(std::span<const NormValue> mags, int weight) {
  Profile prof{weight, {}};
  int start = 0;
  for (int stop : doubling_truncations(static_cast<int>(mags.size()))) {
    ProfilePoint pt{stop, NormValue(0), -1};
    for (int i = start; i < stop; ++i) {
      if (mags[i].is_zero()) continue;
      NormValue v(mags[i].value() * index_weight(i, weight));
      if (v > pt.norm) {
        pt.norm = v;
        pt.argmax = i;
      }
    }
    prof.points.push_back(std::move(pt));
    start = stop;
  }
  return prof;
}

namespace detail {

/// Checks the last two consecutive block ratios against `limit`
/// (strictly below). Zero-to-zero passes; zero-to-positive fails.
inline bool last_ratios_below(const Profile& prof, const mpq_class& limit) {
  const auto& pts = prof.points;
  const std::size_t k = pts.size();
  for (std::size_t r = (k >= 3 ? k - 2 : 1); r < k; ++r) {
    const auto& prev = pts[r - 1].norm;
    const auto& cur = pts[r].norm;
    if (cur.is_zero()) continue;
    if (prev.is_zero()) return false;
    if (!(cur.value() < prev.value() * limit)) return false;
  }
  return true;
}

}  // namespace detail

inline bool stabilizes(const Profile& prof, const mpq_class& eps = default_epsilon()) {
  return detail::last_ratios_below(prof, 1 + eps);
}

inline bool decays(const Profile& prof) { return detail::last_ratios_below(prof, mpq_class(1)); }

/// Index attaining the last block norm, the natural witness of a rejection.
inline long worst_index(const Profile& prof) {
  return prof.points.empty() ? -1 : prof.points.back().argmax;
}

struct GrowthReport {
  std::optional<int> order;  // nullopt: exceeds n_max
  int n_max = 0;
  std::vector<int> truncations;
  std::vector<Profile> profiles;  // one per weight 0..n_max examined

  std::string order_str() const { return order ? std::to_string(*order) : std::string("exceeds n_max"); }
};

/// Least n <= n_max whose weighted profile stabilizes.
inline GrowthReport log_growth(std::span<const NormValue> mags, int n_max,
                               const mpq_class& eps = default_epsilon()) {
  GrowthReport rep;
  rep.n_max = n_max;
  rep.truncations = doubling_truncations(static_cast<int>(mags.size()));
  for (int n = 0; n <= n_max; ++n) {
    rep.profiles.push_back(block_profile(mags, n));
    if (stabilizes(rep.profiles.back(), eps)) {
      rep.order = n;
      break;
    }
  }
  return rep;
}

inline std::vector<NormValue> magnitudes(std::span<const Scalar> seq, const Prime& p) {
  std::vector<NormValue> out;
  out.reserve(seq.size());
  for (const auto& a : seq) out.push_back(abs_value(a, p));
  return out;
}

}  // namespace tempered
