#pragma once

/**
 * Tempered tubes of a closed subscheme cut out by a regular sequence.
 *
 * A presentation fixes ambient variables x (Tate windows), lifts f_i(x) with
 * integral coefficients, and tube variables y_i (window [0, N]). The tube
 * algebra is the tempered algebra in (x, y) modulo the ideal (y_i - f_i).
 *
 * psi(z) = sum_i (y_i - f_i) z_i, and for a pair a < b the syzygy
 * phi_ab(v) adds (y_a - f_a) v to component b and subtracts (y_b - f_b) v
 * from component a, so psi o phi = 0.
 */

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempered/growth_profile.hpp"
#include "tempered/linalg.hpp"
#include "tempered/series.hpp"

namespace tempered {

class TubePresentation {
 public:
  TubePresentation(Prime prime, std::vector<VarWindow> ambient, std::vector<std::string> tube_vars, int trunc,
                   std::vector<GrowthSeries> lifts)
      : prime_(prime),
        ambient_(std::move(ambient)),
        tube_vars_(std::move(tube_vars)),
        trunc_(trunc),
        lifts_(std::move(lifts)) {
    if (tube_vars_.empty()) throw DomainError("a presentation needs at least one tube variable");
    if (lifts_.size() != tube_vars_.size()) throw DomainError("need one lift per tube variable");
    if (trunc_ < 0) throw DomainError("tube truncation must be >= 0");
    SeriesSpec amb = ambient_spec();
    if (!amb.is_power_series()) throw DomainError("ambient windows must start at 0");
    joint_spec();  // rejects name clashes between x and y
    for (const auto& f : lifts_) {
      if (!(f.spec() == amb)) throw DomainError("spec mismatch: lifts must live in the ambient spec");
      if (gauss_norm(f) > NormValue(1)) throw DomainError("lift coefficients must be integral (||f||_0 <= 1)");
    }
  }

  const Prime& prime() const noexcept { return prime_; }
  const std::vector<VarWindow>& ambient() const noexcept { return ambient_; }
  const std::vector<std::string>& tube_vars() const noexcept { return tube_vars_; }
  int trunc() const noexcept { return trunc_; }
  const std::vector<GrowthSeries>& lifts() const noexcept { return lifts_; }
  std::size_t s() const noexcept { return tube_vars_.size(); }
  std::size_t m() const noexcept { return ambient_.size(); }

  SeriesSpec ambient_spec() const { return SeriesSpec(prime_, ambient_); }
  SeriesSpec joint_spec() const {
    auto vars = ambient_;
    for (const auto& y : tube_vars_) vars.push_back({y, 0, trunc_});
    return SeriesSpec(prime_, std::move(vars));
  }
  /// y_i - f_i in the joint spec.
  GrowthSeries relation(std::size_t i) const {
    auto js = joint_spec();
    return GrowthSeries::variable(js, tube_vars_.at(i)) - reindex(lifts_.at(i), js);
  }

 private:
  Prime prime_;
  std::vector<VarWindow> ambient_;
  std::vector<std::string> tube_vars_;
  int trunc_;
  std::vector<GrowthSeries> lifts_;
};

using KoszulVector = std::vector<GrowthSeries>;

namespace detail {

inline void check_vector(const KoszulVector& h, const TubePresentation& pres) {
  if (h.size() != pres.s()) throw DomainError("spec mismatch: Koszul vector has wrong length");
  auto js = pres.joint_spec();
  for (const auto& c : h) {
    if (!(c.spec() == js)) throw DomainError("spec mismatch: Koszul components must use the joint spec");
  }
}

inline void accumulate(GrowthSeries& dst, const GrowthSeries& src) {
  for (const auto& [j, c] : src.terms()) {
    if (dst.spec().contains(j)) dst.add_to(j, c);
  }
}

inline std::vector<int> joint_weights(const TubePresentation& pres, int n) {
  std::vector<int> w(pres.m() + pres.s(), 0);
  std::fill(w.begin() + static_cast<long>(pres.m()), w.end(), n);
  return w;
}

}  // namespace detail

inline GrowthSeries psi_apply(const KoszulVector& h, const TubePresentation& pres) {
  detail::check_vector(h, pres);
  GrowthSeries out(pres.joint_spec());
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!h[i].is_zero()) detail::accumulate(out, mul(pres.relation(i), h[i]));
  }
  return out;
}

/// phi_ab(v) as a Koszul vector (a < b, zero-based).
inline KoszulVector phi_apply(const TubePresentation& pres, std::size_t a, std::size_t b, const GrowthSeries& v) {
  if (a >= b || b >= pres.s()) throw DomainError("syzygy needs a pair a < b of tube indices");
  auto js = pres.joint_spec();
  if (!(v.spec() == js)) throw DomainError("spec mismatch");
  KoszulVector out(pres.s(), GrowthSeries(js));
  detail::accumulate(out[b], mul(pres.relation(a), v));
  detail::accumulate(out[a], -mul(pres.relation(b), v));
  return out;
}

/// Weighted norm of a Koszul vector: x-weight 0, y-weight n, max over components.
inline NormValue koszul_norm(const KoszulVector& h, const TubePresentation& pres, int n) {
  auto w = detail::joint_weights(pres, n);
  NormValue best(0);
  for (const auto& c : h) best = max(best, norm_mixed(c, w));
  return best;
}

struct ReductionCertificate {
  int weight = 0;
  Scalar scale{1};            // lambda = p^k applied before the sweep
  NormValue psi_norm;         // ||lambda psi(H)||, at most 1
  NormValue input_norm;       // ||lambda H||
  NormValue output_norm;      // ||lambda D||, at most 1 on success
  bool residual_zero = false; // psi(D) == psi(H) on the window
  std::vector<std::pair<MultiIndex, NormValue>> ledger;  // y-index -> correction size
};

struct KoszulReduction {
  KoszulVector reduced;  // D, in the original (unscaled) units
  ReductionCertificate certificate;
};

namespace detail {

using XPoly = std::map<MultiIndex, Scalar>;
using XResidue = std::map<MultiIndex, std::int64_t>;

inline std::int64_t residue_mod_p(const Scalar& c, std::int64_t p) {
  mpz_class pz = p, num, den, inv;
  mpz_mod(num.get_mpz_t(), c.value().get_num_mpz_t(), pz.get_mpz_t());
  mpz_mod(den.get_mpz_t(), c.value().get_den_mpz_t(), pz.get_mpz_t());
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), pz.get_mpz_t()) == 0) {
    throw DomainError("coefficient is not p-integral");
  }
  mpz_class r = (num * inv) % pz;
  return r.get_si();
}

inline bool in_box(const MultiIndex& j, const std::vector<int>& hi) {
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (j[i] < 0 || j[i] > hi[i]) return false;
  }
  return true;
}

inline void add_term(XPoly& p, const MultiIndex& j, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.try_emplace(j, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

/// p += sign * f * v, truncated to the x-box.
inline void add_product(XPoly& p, const XPoly& f, const XPoly& v, const Scalar& sign, const std::vector<int>& hi) {
  MultiIndex k(hi.size());
  for (const auto& [jf, cf] : f) {
    for (const auto& [jv, cv] : v) {
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = jf[i] + jv[i];
      if (in_box(k, hi)) add_term(p, k, sign * cf * cv);
    }
  }
}

/// Enumerates the box [0, cap] in lexicographic order.
inline std::vector<MultiIndex> box_monomials(const std::vector<int>& cap) {
  std::vector<MultiIndex> out;
  MultiIndex j(cap.size(), 0);
  for (;;) {
    out.push_back(j);
    std::size_t i = cap.size();
    while (i > 0) {
      --i;
      if (j[i] < cap[i]) {
        ++j[i];
        std::fill(j.begin() + static_cast<long>(i) + 1, j.end(), 0);
        break;
      }
      if (i == 0) return out;
    }
    if (cap.empty()) return out;
  }
}

/**
 * Finds a = (a_kb)_{k<b} with Kosz(a) = u in F_p[x] truncated to the x-box,
 * where Kosz(a)_b = sum_{k<b} f_k a_kb - sum_{k>b} f_k a_bk. Unknown
 * monomials are capped per variable by `cap`.
 */
inline std::optional<std::vector<XResidue>> koszul_solve(const std::vector<XResidue>& f, const std::vector<XResidue>& u,
                                                         const std::vector<int>& cap, const std::vector<int>& hi,
                                                         std::int64_t p) {
  const std::size_t s = f.size();
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) pairs.emplace_back(a, b);
  }
  const auto monos = box_monomials(cap);
  const std::size_t cols = pairs.size() * monos.size();
  std::map<std::pair<std::size_t, MultiIndex>, std::size_t> row_of;
  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> entries;
  auto row = [&](std::size_t comp, const MultiIndex& m) {
    auto [it, inserted] = row_of.try_emplace({comp, m}, entries.size());
    if (inserted) entries.emplace_back();
    return it->second;
  };
  MultiIndex k(cap.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    auto [a, b] = pairs[q];
    for (std::size_t mi = 0; mi < monos.size(); ++mi) {
      const std::size_t col = q * monos.size() + mi;
      for (auto [comp, other, sign] : {std::tuple{b, a, 1L}, std::tuple{a, b, -1L}}) {
        for (const auto& [jf, cf] : f[other]) {
          for (std::size_t i = 0; i < k.size(); ++i) k[i] = jf[i] + monos[mi][i];
          if (!in_box(k, hi)) continue;
          entries[row(comp, k)].emplace_back(col, sign * cf);
        }
      }
    }
  }
  for (std::size_t comp = 0; comp < s; ++comp) {
    for (const auto& [j, c] : u[comp]) row(comp, j);
  }
  std::vector<std::vector<std::int64_t>> mat(entries.size(), std::vector<std::int64_t>(cols, 0));
  std::vector<std::int64_t> rhs(entries.size(), 0);
  for (std::size_t r = 0; r < entries.size(); ++r) {
    for (auto [c, v] : entries[r]) mat[r][c] = (mat[r][c] + v) % p;
  }
  for (std::size_t comp = 0; comp < s; ++comp) {
    for (const auto& [j, c] : u[comp]) rhs[row_of.at({comp, j})] = c;
  }
  auto sol = solve_mod_p(std::move(mat), std::move(rhs), p);
  if (!sol) return std::nullopt;
  std::vector<XResidue> out(pairs.size());
  for (std::size_t q = 0; q < pairs.size(); ++q) {
    for (std::size_t mi = 0; mi < monos.size(); ++mi) {
      auto v = (*sol)[q * monos.size() + mi];
      if (v != 0) out[q][monos[mi]] = v;
    }
  }
  return out;
}

inline int degree_in(const XResidue& f, std::size_t var) {
  int d = -1;
  for (const auto& [j, c] : f) d = std::max(d, j[var]);
  return d;
}

}  // namespace detail

/**
 * Replaces H by D = H + (element of ker psi) with ||D||_n <= 1 after scaling
 * by lambda = p^k, the least power making ||lambda psi(H)||_n <= 1.
 *
 * Sweep: y-indices J in lexicographic order. At J let b_J be the coefficient
 * tuple (polynomials in x). While max |b_J| exceeds prod (J_l+1)^n, divide by
 * t = p^v (v the least valuation), reduce mod p, solve the Koszul relation
 * over F_p, lift with symmetric residues and subtract phi(t * lift * y^J).
 * Each pass must shrink max |b_J| by at least p.
 */
inline KoszulReduction koszul_reduce(const KoszulVector& h, const TubePresentation& pres, int n) {
  detail::check_vector(h, pres);
  if (n < 0) throw DomainError("reduction weight must be >= 0");
  const std::size_t m = pres.m(), s = pres.s();
  const std::int64_t p = pres.prime().value();
  const auto w = detail::joint_weights(pres, n);

  ReductionCertificate cert;
  cert.weight = n;
  const GrowthSeries psi_h = psi_apply(h, pres);
  NormValue psi_norm = norm_mixed(psi_h, w);
  Scalar lambda(1);
  while (psi_norm > NormValue(1)) {
    psi_norm = NormValue(psi_norm.value() / p);
    lambda *= Scalar(p);
  }
  cert.scale = lambda;
  cert.psi_norm = psi_norm;

  std::vector<int> xhi(m);
  for (std::size_t i = 0; i < m; ++i) xhi[i] = pres.ambient()[i].hi;
  std::vector<detail::XPoly> lift(s);
  std::vector<detail::XResidue> lift_bar(s);
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& [j, c] : pres.lifts()[i].terms()) {
      lift[i][j] = c;
      auto r = detail::residue_mod_p(c, p);
      if (r != 0) lift_bar[i][j] = r;
    }
  }

  // y-index -> per-component x-polynomial
  std::map<MultiIndex, std::vector<detail::XPoly>> data;
  for (std::size_t i = 0; i < s; ++i) {
    for (const auto& [j, c] : h[i].terms()) {
      MultiIndex x(j.begin(), j.begin() + static_cast<long>(m));
      MultiIndex y(j.begin() + static_cast<long>(m), j.end());
      auto [it, ins] = data.try_emplace(y, s);
      it->second[i][x] = c * lambda;
    }
  }
  {
    KoszulVector scaled = h;
    for (auto& c : scaled) c *= lambda;
    cert.input_norm = koszul_norm(scaled, pres, n);
  }

  auto local_norm = [&](const std::vector<detail::XPoly>& comps) {
    NormValue r(0);
    for (const auto& poly : comps) {
      for (const auto& [j, c] : poly) r = max(r, abs_value(c, pres.prime()));
    }
    return r;
  };

  for (auto it = data.begin(); it != data.end(); ++it) {
    const MultiIndex J = it->first;
    mpz_class bound_z = 1;
    for (int jl : J) {
      mpz_class f;
      mpz_ui_pow_ui(f.get_mpz_t(), static_cast<unsigned long>(jl + 1), static_cast<unsigned long>(n));
      bound_z *= f;
    }
    const NormValue bound{mpq_class(bound_z)};
    NormValue r = local_norm(it->second);
    while (r > bound) {
      auto& comps = it->second;
      long vmin = 0;
      bool first = true;
      for (const auto& poly : comps) {
        for (const auto& [j, c] : poly) {
          long v = *valuation(c, pres.prime());
          if (first || v < vmin) vmin = v;
          first = false;
        }
      }
      const Scalar tval(NormValue::power(p, vmin).value());

      std::vector<detail::XResidue> u(s);
      std::vector<int> cap(m, 0);
      for (std::size_t i = 0; i < s; ++i) {
        for (const auto& [j, c] : comps[i]) {
          auto rr = detail::residue_mod_p(c / tval, p);
          if (rr == 0) continue;
          u[i][j] = rr;
          for (std::size_t v = 0; v < m; ++v) cap[v] = std::max(cap[v], j[v]);
        }
      }
      auto sol = detail::koszul_solve(lift_bar, u, cap, xhi, p);
      if (!sol) sol = detail::koszul_solve(lift_bar, u, xhi, xhi, p);
      if (!sol) {
        bool edge = false;
        for (std::size_t v = 0; v < m; ++v) {
          int du = -1, df = -1;
          for (const auto& ui : u) du = std::max(du, detail::degree_in(ui, v));
          for (const auto& fi : lift_bar) df = std::max(df, detail::degree_in(fi, v));
          if (du >= 0 && df >= 0 && du + df > xhi[v]) edge = true;
        }
        if (edge) {
          throw DomainError("window exhausted: Koszul correction needs x-degree beyond the ambient window");
        }
        throw DomainError("residual Koszul solve failed: presentation defect (lifts not regular mod p)");
      }

      std::size_t q = 0;
      NormValue corr(0);
      for (std::size_t a = 0; a < s; ++a) {
        for (std::size_t b = a + 1; b < s; ++b, ++q) {
          if ((*sol)[q].empty()) continue;
          detail::XPoly v;
          for (const auto& [j, res] : (*sol)[q]) {
            std::int64_t sym = res > p / 2 ? res - p : res;
            if (sym != 0) v[j] = tval * Scalar(sym);
          }
          if (v.empty()) continue;
          corr = max(corr, abs_value(tval, pres.prime()));
          detail::add_product(comps[b], lift[a], v, Scalar(-1), xhi);
          detail::add_product(comps[a], lift[b], v, Scalar(1), xhi);
          for (auto [comp, dir, sign] : {std::tuple{b, a, 1L}, std::tuple{a, b, -1L}}) {
            MultiIndex J2 = J;
            J2[dir] += 1;
            if (J2[dir] > pres.trunc()) continue;
            auto [jt, ins] = data.try_emplace(J2, s);
            for (const auto& [j, c] : v) detail::add_term(jt->second[comp], j, Scalar(sign) * c);
          }
        }
      }
      NormValue r_new = local_norm(comps);
      if (!(r_new.value() * p <= r.value())) {
        throw DomainError("presentation defect: Koszul correction did not shrink the norm by p");
      }
      cert.ledger.emplace_back(J, corr);
      r = r_new;
    }
  }

  auto js = pres.joint_spec();
  KoszulVector scaled_d(s, GrowthSeries(js));
  for (const auto& [y, comps] : data) {
    for (std::size_t i = 0; i < s; ++i) {
      for (const auto& [x, c] : comps[i]) {
        MultiIndex j = x;
        j.insert(j.end(), y.begin(), y.end());
        scaled_d[i].set(std::move(j), c);
      }
    }
  }
  cert.output_norm = koszul_norm(scaled_d, pres, n);
  KoszulVector d = scaled_d;
  const Scalar inv = Scalar(1) / lambda;
  for (auto& c : d) c *= inv;
  cert.residual_zero = psi_apply(d, pres) == psi_h;
  return {std::move(d), std::move(cert)};
}

/**
 * Image in the tube algebra: substitute y_i -> f_i. Truncated mode needs
 * lifts without constant term; polynomial mode treats g as a polynomial.
 * Result is a series in the ambient variables.
 */
inline GrowthSeries tube_normal_form(const GrowthSeries& g, const TubePresentation& pres,
                                     Exactness mode = Exactness::truncated) {
  if (!g.spec().same_variables(pres.joint_spec())) throw DomainError("spec mismatch: expected the joint (x, y) spec");
  GrowthSeries cur = g;
  for (std::size_t i = 0; i < pres.s(); ++i) cur = substitute(cur, pres.tube_vars()[i], pres.lifts()[i], mode);
  return cur;
}

struct IdealCofactors {
  KoszulVector cofactors;  // C with psi(C) = g - NF(g)
  GrowthSeries normal_form;  // NF(g) in the joint spec (no y-dependence)
};

/// Cofactors of g - NF(g) in the ideal (y - f), by divided differences,
/// treating g as a polynomial.
inline IdealCofactors ideal_cofactors(const GrowthSeries& g, const TubePresentation& pres) {
  const auto js = pres.joint_spec();
  if (!(g.spec() == js)) throw DomainError("spec mismatch: expected the joint (x, y) spec");
  const std::size_t m = pres.m();
  GrowthSeries cur = g;
  KoszulVector cof(pres.s(), GrowthSeries(js));
  for (std::size_t i = 0; i < pres.s(); ++i) {
    const std::size_t yi = m + i;
    const GrowthSeries f = reindex(pres.lifts()[i], js);
    std::map<int, GrowthSeries> slices;
    for (const auto& [j, c] : cur.terms()) {
      MultiIndex k = j;
      k[yi] = 0;
      slices.try_emplace(j[yi], js).first->second.set(k, c);
    }
    const int top = slices.empty() ? 0 : slices.rbegin()->first;
    std::vector<GrowthSeries> fpow{GrowthSeries::constant(js, Scalar(1))};
    std::vector<GrowthSeries> ypow{GrowthSeries::constant(js, Scalar(1))};
    for (int e = 1; e <= top; ++e) {
      fpow.push_back(mul(fpow.back(), f).restricted(js));
      MultiIndex k(js.arity(), 0);
      k[yi] = e;
      ypow.push_back(js.contains(k) ? GrowthSeries::monomial(js, k, Scalar(1)) : GrowthSeries(js));
    }
    GrowthSeries next(js);
    for (const auto& [k, slice] : slices) {
      detail::accumulate(next, mul(slice, fpow[k]));
      GrowthSeries dd(js);  // (y^k - f^k) / (y - f)
      for (int l = 0; l < k; ++l) detail::accumulate(dd, mul(ypow[l], fpow[k - 1 - l]));
      detail::accumulate(cof[i], mul(slice, dd));
    }
    cur = std::move(next);
  }
  return {std::move(cof), std::move(cur)};
}

/// f_i = sum_j h_ij g_j + alpha_i between two presentations of one subscheme.
class PresentationRelation {
 public:
  PresentationRelation(Prime prime, std::vector<std::string> source, std::vector<std::string> target,
                       std::vector<std::vector<Scalar>> h, std::vector<Scalar> alpha)
      : prime_(prime), source_(std::move(source)), target_(std::move(target)), h_(std::move(h)), alpha_(std::move(alpha)) {
    if (source_.empty() || target_.empty()) throw DomainError("relation needs source and target variables");
    if (h_.size() != source_.size() || alpha_.size() != source_.size()) throw DomainError("relation has wrong shape");
    for (const auto& row : h_) {
      if (row.size() != target_.size()) throw DomainError("relation has wrong shape");
      for (const auto& v : row) {
        if (!v.is_zero() && !is_unit(v, prime_)) throw DomainError("relation coefficients h must be 0 or units");
      }
    }
    for (const auto& a : alpha_) {
      if (!(abs_value(a, prime_) < NormValue(1))) throw DomainError("relation constants must satisfy |alpha| < 1");
    }
    for (const auto& n : source_) {
      if (std::find(target_.begin(), target_.end(), n) != target_.end()) {
        throw DomainError("source and target variable names must differ");
      }
    }
  }

  const Prime& prime() const noexcept { return prime_; }
  const std::vector<std::string>& source() const noexcept { return source_; }
  const std::vector<std::string>& target() const noexcept { return target_; }
  const std::vector<std::vector<Scalar>>& h() const noexcept { return h_; }
  const std::vector<Scalar>& alpha() const noexcept { return alpha_; }
  std::size_t s() const noexcept { return source_.size(); }
  std::size_t l() const noexcept { return target_.size(); }

 private:
  Prime prime_;
  std::vector<std::string> source_, target_;
  std::vector<std::vector<Scalar>> h_;
  std::vector<Scalar> alpha_;
};

struct PresentationChange {
  GrowthSeries family;  // coefficients in target monomials
  int weight = 0;       // n*s*l
  NormValue input_norm;  // ||a||_n
  NormValue attained;    // ||out||_{nsl}
  NormValue bound;       // ||a||_n * sup_k (k+1)^{ns} alpha^k
  bool holds() const { return attained <= bound; }
};

namespace detail {

/// sup_{k>=0} (k+1)^e * alpha^k for 0 <= alpha < 1.
inline NormValue contraction_sup(const NormValue& alpha, int e) {
  if (alpha.is_zero()) return NormValue(1);
  mpq_class term = 1;
  for (long k = 0;; ++k) {
    mpq_class ratio = tempered::index_weight(k + 1, -e) / tempered::index_weight(k, -e) * alpha.value();
    if (ratio <= 1) return NormValue(term);
    term *= ratio;
  }
}

}  // namespace detail

/**
 * Rewrites sum_J a_J f^J as a family in target monomials by substituting
 * f_i -> sum_j h_ij g_j + alpha_i (exact multinomial expansion; the family
 * is finite). Each output coefficient is an ultrametric sum of terms
 * a_J * (integer) * alpha^k with |J| = |M| + k, which gives the bound above.
 */
inline PresentationChange change_presentation(const GrowthSeries& a, const PresentationRelation& rel, int n) {
  if (n < 0) throw DomainError("weight must be >= 0");
  if (!(a.prime() == rel.prime())) throw DomainError("prime mismatch");
  if (a.spec().arity() != rel.s() || !a.spec().is_power_series()) {
    throw DomainError("family must be a power series in the source variables");
  }
  for (std::size_t i = 0; i < rel.s(); ++i) {
    if (a.spec().var(i).name != rel.source()[i]) throw DomainError("family variables must match the relation source");
  }
  // every output monomial has total degree at most the family's degree
  int total = 1;
  for (const auto& [j, c] : a.terms()) total = std::max(total, std::accumulate(j.begin(), j.end(), 0));
  std::vector<VarWindow> tv;
  for (const auto& name : rel.target()) tv.push_back({name, 0, total});
  SeriesSpec target(rel.prime(), tv);

  GrowthSeries cur = a;
  for (std::size_t i = 0; i < rel.s(); ++i) {
    GrowthSeries lin = GrowthSeries::constant(target, rel.alpha()[i]);
    for (std::size_t j = 0; j < rel.l(); ++j) {
      lin = lin + rel.h()[i][j] * GrowthSeries::variable(target, rel.target()[j]);
    }
    cur = substitute(cur, rel.source()[i], lin, Exactness::polynomial);
  }
  NormValue alpha(0);
  for (const auto& x : rel.alpha()) alpha = max(alpha, abs_value(x, rel.prime()));
  const int s = static_cast<int>(rel.s()), l = static_cast<int>(rel.l());
  PresentationChange out{std::move(cur), n * s * l, norm_weighted(a, n), NormValue(0), NormValue(0)};
  out.attained = norm_weighted(out.family, out.weight);
  out.bound = out.input_norm * detail::contraction_sup(alpha, n * s);
  return out;
}

/// g = h^{-1} (f - alpha) for a square relation; h^{-1} must again have
/// entries in {0} and units.
inline PresentationRelation invert_relation(const PresentationRelation& rel) {
  const std::size_t k = rel.s();
  if (rel.l() != k) throw DomainError("only square relations can be inverted");
  std::vector<std::vector<Scalar>> a = rel.h();
  std::vector<std::vector<Scalar>> inv(k, std::vector<Scalar>(k, Scalar(0)));
  for (std::size_t i = 0; i < k; ++i) inv[i][i] = Scalar(1);
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t r = c;
    while (r < k && a[r][c].is_zero()) ++r;
    if (r == k) throw DomainError("relation matrix is singular");
    std::swap(a[r], a[c]);
    std::swap(inv[r], inv[c]);
    const Scalar piv = a[c][c];
    for (std::size_t j = 0; j < k; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (std::size_t o = 0; o < k; ++o) {
      if (o == c || a[o][c].is_zero()) continue;
      const Scalar f = a[o][c];
      for (std::size_t j = 0; j < k; ++j) {
        a[o][j] -= f * a[c][j];
        inv[o][j] -= f * inv[c][j];
      }
    }
  }
  std::vector<Scalar> beta(k, Scalar(0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) beta[i] -= inv[i][j] * rel.alpha()[j];
  }
  return PresentationRelation(rel.prime(), rel.target(), rel.source(), std::move(inv), std::move(beta));
}

namespace detail {

inline std::string fresh_name(const std::string& base, int index, const std::vector<std::string>& taken) {
  std::string name = base + std::to_string(index);
  while (std::find(taken.begin(), taken.end(), name) != taken.end()) name += "_";
  return name;
}

}  // namespace detail

/**
 * Adds d ambient coordinates t_1..t_d and the lifts t_i (zero section), so the
 * tube becomes the original tube times a tempered polydisk of dimension d.
 */
inline TubePresentation weak_fibration_data(const TubePresentation& pres, int d) {
  if (d < 0) throw DomainError("fibre dimension must be >= 0");
  std::vector<std::string> taken;
  for (const auto& v : pres.ambient()) taken.push_back(v.name);
  taken.insert(taken.end(), pres.tube_vars().begin(), pres.tube_vars().end());
  auto ambient = pres.ambient();
  auto tube = pres.tube_vars();
  const int win = ambient.empty() ? pres.trunc() : ambient.front().hi;
  std::vector<std::string> new_t;
  for (int i = 1; i <= d; ++i) {
    auto t = detail::fresh_name("t", i, taken);
    taken.push_back(t);
    ambient.push_back({t, 0, win});
    new_t.push_back(t);
  }
  for (int i = 1; i <= d; ++i) {
    auto y = detail::fresh_name("y", static_cast<int>(pres.s()) + i, taken);
    taken.push_back(y);
    tube.push_back(y);
  }
  SeriesSpec amb(pres.prime(), ambient);
  std::vector<GrowthSeries> lifts;
  for (const auto& f : pres.lifts()) lifts.push_back(reindex(f, amb));
  for (const auto& t : new_t) lifts.push_back(GrowthSeries::variable(amb, t));
  return TubePresentation(pres.prime(), std::move(ambient), std::move(tube), pres.trunc(), std::move(lifts));
}

}  // namespace tempered
