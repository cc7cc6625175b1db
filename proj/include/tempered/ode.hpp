#pragma once

/**
 * Linear differential systems over truncated series in t, with solutions of dY/dt = Y G.
 *
 * The fundamental solution around a base point x is Y(x; u) = sum_m G_[m](x) u^m
 * with G_[0] = Id, G_[1] = G and G_[m] = (G_[m-1]' + G G_[m-1]) / m. Keeping x
 * symbolic gives the solution at the generic point; x = 0 gives the solution
 * at the origin.
 */

#include <algorithm>
#include <string>
#include <vector>

#include "tempered/growth_profile.hpp"
#include "tempered/series.hpp"

namespace tempered {

class DiffSystem {
 public:
  /// `entries` is row-major, dim*dim series sharing one univariate spec.
  DiffSystem(int dim, std::vector<GrowthSeries> entries) : dim_(dim), entries_(std::move(entries)) {
    if (dim < 1) throw DomainError("system dimension must be >= 1");
    if (entries_.size() != static_cast<std::size_t>(dim) * dim) throw DomainError("system needs dim*dim entries");
    const auto& s = entries_.front().spec();
    if (s.arity() != 1 || !s.is_power_series()) throw DomainError("system entries must be power series in one variable");
    for (const auto& e : entries_) {
      if (!(e.spec() == s)) throw DomainError("system entries must share one spec");
    }
  }

  int dim() const noexcept { return dim_; }
  const SeriesSpec& spec() const { return entries_.front().spec(); }
  const GrowthSeries& at(int i, int j) const { return entries_.at(static_cast<std::size_t>(i) * dim_ + j); }
  const std::vector<GrowthSeries>& entries() const noexcept { return entries_; }

 private:
  int dim_;
  std::vector<GrowthSeries> entries_;
};

using SeriesMatrix = std::vector<GrowthSeries>;  // row-major
using ScalarMatrix = std::vector<Scalar>;        // row-major

struct FundamentalSolution {
  int order = 0;                      // N
  std::vector<SeriesMatrix> generic;  // G_[m], m = 0..N
  std::vector<ScalarMatrix> origin;   // G_[m](0)
  bool residual_ok = false;           // dY/dt = Y G through the checked degree
  int residual_degree = -1;           // last degree checked
};

namespace detail {

inline SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b, int m, const SeriesSpec& out) {
  SeriesMatrix r(static_cast<std::size_t>(m) * m, GrowthSeries(out));
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k < m; ++k) {
      const auto& aik = a[static_cast<std::size_t>(i) * m + k];
      if (aik.is_zero()) continue;
      for (int j = 0; j < m; ++j) {
        const auto& bkj = b[static_cast<std::size_t>(k) * m + j];
        if (bkj.is_zero()) continue;
        auto prod = mul(aik, bkj);
        auto& dst = r[static_cast<std::size_t>(i) * m + j];
        for (const auto& [idx, c] : prod.terms()) {
          if (out.contains(idx)) dst.add_to(idx, c);
        }
      }
    }
  }
  return r;
}

}  // namespace detail

/// Largest N for which every G_[m], m <= N, keeps a nonempty window.
inline int max_solution_order(const DiffSystem& sys) { return sys.spec().var(0).hi + 1; }

inline FundamentalSolution cauchy_solve(const DiffSystem& sys, int N) {
  if (N < 0) throw DomainError("solution order must be >= 0");
  if (N > max_solution_order(sys)) {
    throw DomainError("window exhausted: order " + std::to_string(N) + " needs a window of at least " +
                      std::to_string(N - 1) + ", have " + std::to_string(sys.spec().var(0).hi));
  }
  const int m = sys.dim();
  const std::string t = sys.spec().var(0).name;
  const int hi = sys.spec().var(0).hi;
  FundamentalSolution sol;
  sol.order = N;

  SeriesMatrix id(static_cast<std::size_t>(m) * m, GrowthSeries(sys.spec()));
  for (int i = 0; i < m; ++i) id[static_cast<std::size_t>(i) * m + i] = GrowthSeries::constant(sys.spec(), Scalar(1));
  sol.generic.push_back(std::move(id));
  if (N >= 1) sol.generic.push_back(sys.entries());
  for (int k = 2; k <= N; ++k) {
    const auto& prev = sol.generic.back();
    SeriesSpec out = sys.spec().with_window(0, 0, hi - k + 1);
    SeriesMatrix next = detail::mat_mul(sys.entries(), prev, m, out);
    const Scalar inv(1, k);
    for (std::size_t e = 0; e < next.size(); ++e) {
      const auto dprev = derivative(prev[e], t);
      for (const auto& [idx, c] : dprev.terms()) {
        if (out.contains(idx)) next[e].add_to(idx, c);
      }
      next[e] *= inv;
    }
    sol.generic.push_back(std::move(next));
  }
  for (const auto& g : sol.generic) {
    ScalarMatrix at0;
    at0.reserve(g.size());
    for (const auto& e : g) at0.push_back(constant_term(e));
    sol.origin.push_back(std::move(at0));
  }

  // The recursion multiplies by G on the left, so Y = sum G_[m](0) t^m solves
  // Y' = Y G: (k+1) Y_{k+1} = sum_{a+b=k} Y_b G_a for k <= min(N-1, hi).
  sol.residual_degree = std::min(N - 1, hi);
  sol.residual_ok = true;
  for (int k = 0; k <= sol.residual_degree && sol.residual_ok; ++k) {
    for (int i = 0; i < m && sol.residual_ok; ++i) {
      for (int j = 0; j < m; ++j) {
        Scalar lhs = Scalar(k + 1) * sol.origin[k + 1][static_cast<std::size_t>(i) * m + j];
        Scalar rhs(0);
        for (int a = 0; a <= k; ++a) {
          for (int l = 0; l < m; ++l) {
            rhs += sol.origin[k - a][static_cast<std::size_t>(i) * m + l] * sys.at(l, j).coeff({a});
          }
        }
        if (!(lhs == rhs)) {
          sol.residual_ok = false;
          break;
        }
      }
    }
  }
  return sol;
}

/**
 * Development at the generic point: tau(f) = sum_i (f^(i)/i!) w^i, with
 * coefficient of t^k w^i equal to C(k+i, i) a_{k+i}. In truncated mode the
 * output window is t <= hi - N, w <= N; polynomial mode keeps t <= hi.
 */
inline GrowthSeries taylor_generic(const GrowthSeries& f, int N, Exactness mode = Exactness::truncated,
                                   const std::string& w = "w") {
  if (f.spec().arity() != 1 || !f.spec().is_power_series()) {
    throw DomainError("generic development needs a univariate power series");
  }
  if (N < 0) throw DomainError("development order must be >= 0");
  const auto& tv = f.spec().var(0);
  if (tv.name == w) throw DomainError("variable name '" + w + "' already in use");
  int t_hi = tv.hi;
  if (mode == Exactness::truncated) {
    if (tv.hi < N) throw DomainError("window exhausted: " + std::to_string(N) + " derivatives need a window of " +
                                     std::to_string(N) + ", have " + std::to_string(tv.hi));
    t_hi = tv.hi - N;
  }
  SeriesSpec spec(f.prime(), {VarWindow{tv.name, 0, t_hi}, VarWindow{w, 0, N}});
  GrowthSeries out(spec);
  for (const auto& [j, c] : f.terms()) {
    const int n = j[0];
    mpz_class binom;
    for (int i = 0; i <= std::min(n, N); ++i) {
      const int k = n - i;
      if (k > t_hi) continue;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(i));
      out.set({k, i}, c * Scalar(mpq_class(binom)));
    }
  }
  return out;
}

/// Log-growth order of a coefficient sequence (least stabilizing weight).
inline GrowthReport log_growth_estimate(const std::vector<Scalar>& seq, const Prime& p, int n_max) {
  if (seq.size() < 8) throw DomainError("sequence too short: need at least 8 terms");
  if (n_max < 0) throw DomainError("n_max must be >= 0");
  auto mags = magnitudes(seq, p);
  return log_growth(mags, n_max);
}

enum class TransferVerdict { consistent, hypothesis_not_met, inconsistent };

inline std::string_view verdict_text(TransferVerdict v) {
  switch (v) {
    case TransferVerdict::consistent: return "transfer consistent";
    case TransferVerdict::hypothesis_not_met: return "hypothesis of transfer theorem not met";
    case TransferVerdict::inconsistent: return "inconsistent";
  }
  return "";
}

struct TransferReport {
  FundamentalSolution solution;
  std::vector<NormValue> generic_norms;  // max_ij ||G_[m]_ij||_Gauss
  std::vector<NormValue> origin_norms;   // max_ij |G_[m]_ij(0)|
  bool pointwise_ok = false;             // |G_[m](0)| <= ||G_[m]||_Gauss entrywise, all m
  GrowthReport generic;
  GrowthReport origin;
  TransferVerdict verdict = TransferVerdict::inconsistent;
};

inline TransferReport transfer_experiment(const DiffSystem& sys, int N, int n_max) {
  TransferReport rep;
  rep.solution = cauchy_solve(sys, N);
  rep.pointwise_ok = true;
  const Prime& p = sys.spec().prime();
  for (int m = 0; m <= N; ++m) {
    NormValue gen(0), org(0);
    for (std::size_t e = 0; e < rep.solution.generic[m].size(); ++e) {
      NormValue g = gauss_norm(rep.solution.generic[m][e]);
      NormValue o = abs_value(rep.solution.origin[m][e], p);
      if (o > g) rep.pointwise_ok = false;
      gen = max(gen, g);
      org = max(org, o);
    }
    rep.generic_norms.push_back(gen);
    rep.origin_norms.push_back(org);
  }
  if (rep.generic_norms.size() < 8) throw DomainError("sequence too short: need order N >= 7");
  rep.generic = log_growth(rep.generic_norms, n_max);
  rep.origin = log_growth(rep.origin_norms, n_max);
  if (!rep.generic.order) {
    rep.verdict = TransferVerdict::hypothesis_not_met;
  } else if (rep.origin.order && *rep.origin.order <= *rep.generic.order && rep.pointwise_ok) {
    rep.verdict = TransferVerdict::consistent;
  } else {
    rep.verdict = TransferVerdict::inconsistent;
  }
  return rep;
}

}  // namespace tempered
