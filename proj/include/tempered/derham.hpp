#pragma once

/**
 * Truncated de Rham and Cech-de Rham complexes with exact ranks.
 *
 * A chart is a box of monomials x^J (per-variable window [lo, hi]). A k-form
 * basis element is x^J dx_I with I increasing; for variables in I the window
 * is [lo - 1 (Laurent only), hi - 1], so d maps every basis element inside
 * the next space. Covers have at most three charts and pairwise overlaps;
 * restrictions are monomial substitutions x_v -> c_v u^{E_v}.
 */

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tempered/linalg.hpp"
#include "tempered/series.hpp"
#include "tempered/tube.hpp"

namespace tempered {

struct Chart {
  std::string label;
  std::vector<VarWindow> vars;
};

struct Form {
  MultiIndex exponents;
  std::vector<int> wedge;  // increasing variable positions
  friend auto operator<=>(const Form&, const Form&) = default;
};

class FormSpace {
 public:
  explicit FormSpace(Chart chart) : chart_(std::move(chart)) {
    const int n = static_cast<int>(chart_.vars.size());
    basis_.resize(static_cast<std::size_t>(n) + 1);
    index_.resize(static_cast<std::size_t>(n) + 1);
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> wedge;
      for (int v = 0; v < n; ++v) {
        if (mask & (1 << v)) wedge.push_back(v);
      }
      std::vector<int> lo(n), hi(n);
      bool empty = false;
      for (int v = 0; v < n; ++v) {
        auto [l, h] = window(v, (mask & (1 << v)) != 0);
        lo[v] = l;
        hi[v] = h;
        if (h < l) empty = true;
      }
      if (empty) continue;
      MultiIndex j = lo;
      auto& bucket = basis_[wedge.size()];
      for (;;) {
        bucket.push_back({j, wedge});
        int v = n - 1;
        while (v >= 0 && j[v] == hi[v]) {
          j[v] = lo[v];
          --v;
        }
        if (v < 0) break;
        ++j[v];
      }
    }
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      std::sort(basis_[k].begin(), basis_[k].end(), [](const Form& a, const Form& b) {
        return std::tie(a.wedge, a.exponents) < std::tie(b.wedge, b.exponents);
      });
      for (std::size_t i = 0; i < basis_[k].size(); ++i) index_[k].emplace(basis_[k][i], static_cast<int>(i));
    }
  }

  const Chart& chart() const noexcept { return chart_; }
  int dimension() const noexcept { return static_cast<int>(chart_.vars.size()); }
  int size(int k) const { return k < 0 || k > dimension() ? 0 : static_cast<int>(basis_[k].size()); }
  const Form& form(int k, int i) const { return basis_.at(k).at(i); }

  std::optional<int> index(const Form& f) const {
    const auto k = f.wedge.size();
    if (k >= index_.size()) return std::nullopt;
    auto it = index_[k].find(f);
    return it == index_[k].end() ? std::nullopt : std::optional<int>(it->second);
  }

  /// Exponent window of variable v for a function (false) or inside a wedge (true).
  std::pair<int, int> window(int v, bool in_wedge) const {
    const auto& w = chart_.vars.at(v);
    if (!in_wedge) return {w.lo, w.hi};
    return {w.lo < 0 ? w.lo - 1 : 0, w.hi - 1};
  }

  /// d(x^J dx_I) as (index in degree k+1, coefficient).
  std::vector<std::pair<int, Scalar>> d(const Form& f) const {
    std::vector<std::pair<int, Scalar>> out;
    for (int v = 0; v < dimension(); ++v) {
      if (f.exponents[v] == 0) continue;
      auto pos = std::lower_bound(f.wedge.begin(), f.wedge.end(), v);
      if (pos != f.wedge.end() && *pos == v) continue;
      Form g = f;
      g.exponents[v] -= 1;
      const long before = pos - f.wedge.begin();
      g.wedge.insert(g.wedge.begin() + before, v);
      auto idx = index(g);
      if (!idx) throw DomainError("internal: exterior derivative left the form window");
      out.emplace_back(*idx, Scalar(before % 2 == 0 ? f.exponents[v] : -f.exponents[v]));
    }
    return out;
  }

  std::string describe(const Form& f) const {
    std::string s = chart_.label + ":";
    bool any = false;
    for (int v = 0; v < dimension(); ++v) {
      if (f.exponents[v] == 0) continue;
      s += (any ? "*" : "") + chart_.vars[v].name + "^" + std::to_string(f.exponents[v]);
      any = true;
    }
    if (!any) s += "1";
    for (int v : f.wedge) s += " d" + chart_.vars[v].name;
    return s;
  }

 private:
  Chart chart_;
  std::vector<std::vector<Form>> basis_;
  std::vector<std::map<Form, int>> index_;
};

class CochainComplex {
 public:
  /// d[k] maps degree k to degree k+1 (rows: dims[k+1], cols: dims[k]).
  CochainComplex(std::vector<std::vector<std::string>> basis, std::vector<SparseMatrix> d)
      : basis_(std::move(basis)), d_(std::move(d)) {
    if (d_.size() + 1 != basis_.size() && !(basis_.empty() && d_.empty())) {
      throw DomainError("complex needs one differential between consecutive degrees");
    }
    for (std::size_t k = 0; k < d_.size(); ++k) {
      if (d_[k].cols() != dim(static_cast<int>(k)) || d_[k].rows() != dim(static_cast<int>(k) + 1)) {
        throw DomainError("differential has the wrong shape");
      }
    }
    for (std::size_t k = 0; k + 1 < d_.size(); ++k) {
      if (!multiply(d_[k + 1], d_[k]).is_zero()) throw DomainError("d o d != 0 in degree " + std::to_string(k));
    }
  }

  int top_degree() const noexcept { return static_cast<int>(basis_.size()) - 1; }
  int dim(int k) const { return k < 0 || k > top_degree() ? 0 : static_cast<int>(basis_[k].size()); }
  const std::vector<std::string>& basis(int k) const { return basis_.at(k); }
  const SparseMatrix& d(int k) const { return d_.at(k); }

 private:
  std::vector<std::vector<std::string>> basis_;
  std::vector<SparseMatrix> d_;
};

inline std::vector<int> cohomology_dims(const CochainComplex& cx) {
  std::vector<int> ranks(static_cast<std::size_t>(cx.top_degree() + 1), 0);
  for (int k = 0; k < cx.top_degree(); ++k) ranks[k] = rank(cx.d(k));
  std::vector<int> out;
  for (int k = 0; k <= cx.top_degree(); ++k) out.push_back(cx.dim(k) - ranks[k] - (k > 0 ? ranks[k - 1] : 0));
  return out;
}

/// x_v -> coeff * prod_w u_w^{exponents[w]} on an overlap with variables u.
struct MonomialImage {
  Scalar coeff{1};
  MultiIndex exponents;
};

struct Overlap {
  int a = 0;  // chart indices, a < b
  int b = 1;
  Chart model;
  std::vector<MonomialImage> from_a;  // one image per variable of chart a
  std::vector<MonomialImage> from_b;
};

struct CoverSpec {
  std::vector<Chart> charts;
  std::vector<Overlap> overlaps;
};

namespace detail {

/// Pullback of a basis form along a monomial map, as (index, coefficient).
inline std::vector<std::pair<int, Scalar>> pullback(const Form& f, const std::vector<MonomialImage>& map,
                                                    const FormSpace& target) {
  const std::size_t nu = target.chart().vars.size();
  struct Term {
    Scalar c;
    MultiIndex k;
    std::vector<int> wedge;
  };
  Term base{Scalar(1), MultiIndex(nu, 0), {}};
  for (std::size_t v = 0; v < f.exponents.size(); ++v) {
    const int e = f.exponents[v];
    if (e == 0) continue;
    Scalar c = map[v].coeff;
    Scalar pw(1);
    for (int i = 0; i < std::abs(e); ++i) pw *= c;
    base.c *= e > 0 ? pw : Scalar(1) / pw;
    for (std::size_t w = 0; w < nu; ++w) base.k[w] += e * map[v].exponents[w];
  }
  std::vector<Term> terms{base};
  for (int v : f.wedge) {
    std::vector<Term> next;
    const auto& img = map[v];
    for (const auto& t : terms) {
      for (std::size_t w = 0; w < nu; ++w) {
        if (img.exponents[w] == 0) continue;
        auto pos = std::lower_bound(t.wedge.begin(), t.wedge.end(), static_cast<int>(w));
        if (pos != t.wedge.end() && *pos == static_cast<int>(w)) continue;
        Term n = t;
        const long greater = t.wedge.end() - pos;
        n.c *= img.coeff * Scalar(img.exponents[w]) * Scalar(greater % 2 == 0 ? 1 : -1);
        for (std::size_t x = 0; x < nu; ++x) n.k[x] += img.exponents[x];
        n.k[w] -= 1;
        n.wedge.insert(n.wedge.begin() + (pos - t.wedge.begin()), static_cast<int>(w));
        next.push_back(std::move(n));
      }
    }
    terms = std::move(next);
  }
  std::map<int, Scalar> acc;
  for (const auto& t : terms) {
    if (t.c.is_zero()) continue;
    auto idx = target.index(Form{t.k, t.wedge});
    if (!idx) throw DomainError("incompatible windows: restriction to " + target.chart().label + " leaves its window");
    acc[*idx] += t.c;
  }
  std::vector<std::pair<int, Scalar>> out;
  for (auto& [i, c] : acc) {
    if (!c.is_zero()) out.emplace_back(i, std::move(c));
  }
  return out;
}

inline void check_map(const Chart& source, const std::vector<MonomialImage>& map, const Chart& target) {
  if (map.size() != source.vars.size()) {
    throw DomainError("restriction from " + source.label + " must map every chart variable");
  }
  for (const auto& img : map) {
    if (img.exponents.size() != target.vars.size()) throw DomainError("restriction image has wrong arity");
    if (img.coeff.is_zero()) throw DomainError("restriction image coefficient must be nonzero");
  }
}

}  // namespace detail

/**
 * Total complex of the Cech-de Rham double complex: degree k is
 * (+)_a Omega^k(U_a) (+) (+)_{a<b} Omega^{k-1}(U_ab), and
 * D = d + (-1)^q delta on Omega^q(U_a), with (delta w)_ab = w_b| - w_a|.
 */
inline CochainComplex cech_de_rham(const CoverSpec& cover) {
  const int nc = static_cast<int>(cover.charts.size());
  if (nc < 1 || nc > 3) throw DomainError("covers must have 1 to 3 charts");
  if (nc == 3 && cover.overlaps.size() == 3) throw DomainError("triple overlaps are not supported");
  std::vector<FormSpace> charts;
  for (const auto& c : cover.charts) charts.emplace_back(c);
  std::vector<FormSpace> overlaps;
  for (const auto& o : cover.overlaps) {
    if (o.a < 0 || o.b >= nc || o.a >= o.b) throw DomainError("overlap must name two distinct charts in order");
    for (const auto& p : cover.overlaps) {
      if (&p != &o && p.a == o.a && p.b == o.b) throw DomainError("duplicate overlap");
    }
    detail::check_map(cover.charts[o.a], o.from_a, o.model);
    detail::check_map(cover.charts[o.b], o.from_b, o.model);
    overlaps.emplace_back(o.model);
  }
  int top = 0;
  for (const auto& c : charts) top = std::max(top, c.dimension());
  for (const auto& o : overlaps) top = std::max(top, o.dimension() + 1);

  // offsets[k]: chart blocks then overlap blocks
  std::vector<std::vector<int>> chart_off(top + 2), over_off(top + 2);
  std::vector<std::vector<std::string>> basis(static_cast<std::size_t>(top) + 1);
  for (int k = 0; k <= top + 1; ++k) {
    int off = 0;
    for (const auto& c : charts) {
      chart_off[k].push_back(off);
      if (k <= top) {
        for (int i = 0; i < c.size(k); ++i) basis[k].push_back(c.describe(c.form(k, i)));
      }
      off += c.size(k);
    }
    for (const auto& o : overlaps) {
      over_off[k].push_back(off);
      if (k <= top) {
        for (int i = 0; i < o.size(k - 1); ++i) basis[k].push_back(o.describe(o.form(k - 1, i)));
      }
      off += o.size(k - 1);
    }
  }
  auto total = [&](int k) { return k > top ? 0 : static_cast<int>(basis[k].size()); };

  std::vector<SparseMatrix> d;
  for (int k = 0; k < top; ++k) {
    SparseMatrix m(total(k + 1), total(k));
    for (int a = 0; a < nc; ++a) {
      const auto& c = charts[a];
      for (int i = 0; i < c.size(k); ++i) {
        const int col = chart_off[k][a] + i;
        const Form& f = c.form(k, i);
        for (const auto& [r, v] : c.d(f)) m.add(chart_off[k + 1][a] + r, col, v);
        const Scalar sign(k % 2 == 0 ? 1 : -1);
        for (std::size_t q = 0; q < cover.overlaps.size(); ++q) {
          const auto& o = cover.overlaps[q];
          if (o.a != a && o.b != a) continue;
          const Scalar s = o.b == a ? sign : -sign;
          for (const auto& [r, v] : detail::pullback(f, o.b == a ? o.from_b : o.from_a, overlaps[q])) {
            m.add(over_off[k + 1][q] + r, col, s * v);
          }
        }
      }
    }
    for (std::size_t q = 0; q < overlaps.size(); ++q) {
      const auto& o = overlaps[q];
      for (int i = 0; i < o.size(k - 1); ++i) {
        const int col = over_off[k][q] + i;
        for (const auto& [r, v] : o.d(o.form(k - 1, i))) m.add(over_off[k + 1][q] + r, col, v);
      }
    }
    d.push_back(std::move(m));
  }
  return CochainComplex(std::move(basis), std::move(d));
}

inline CochainComplex de_rham_complex(const Chart& chart) { return cech_de_rham(CoverSpec{{chart}, {}}); }

enum class AlgebraKind { tempered_polydisk, tate_polydisk, laurent_annulus, tube };

struct AlgebraModel {
  AlgebraKind kind = AlgebraKind::tempered_polydisk;
  int dim = 1;    // polydisks only
  int trunc = 8;  // window N
  std::optional<TubePresentation> presentation;  // tube only
};

namespace detail {

inline std::vector<std::int64_t> reduce_univariate(const GrowthSeries& f, std::size_t var, std::int64_t p) {
  std::vector<std::int64_t> c;
  for (const auto& [j, a] : f.terms()) {
    if (static_cast<std::size_t>(j[var]) >= c.size()) c.resize(static_cast<std::size_t>(j[var]) + 1, 0);
    c[j[var]] = residue_mod_p(a, p);
  }
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

inline std::int64_t eval_mod(const std::vector<std::int64_t>& c, std::int64_t x, std::int64_t p) {
  std::int64_t r = 0;
  for (std::size_t i = c.size(); i-- > 0;) r = (r * x + c[i]) % p;
  return r;
}

}  // namespace detail

/**
 * Charts of a tube whose lifts are univariate in distinct ambient variables
 * with reductions that split into simple roots over F_p. The tube is then a
 * disjoint union of polydisks, one per choice of roots.
 */
inline std::vector<Chart> tube_charts(const TubePresentation& pres, int trunc) {
  const std::int64_t p = pres.prime().value();
  std::vector<std::vector<std::int64_t>> roots;
  std::vector<std::size_t> used;
  for (const auto& f : pres.lifts()) {
    std::optional<std::size_t> var;
    for (const auto& [j, c] : f.terms()) {
      for (std::size_t v = 0; v < j.size(); ++v) {
        if (j[v] == 0) continue;
        if (var && *var != v) throw DomainError("tube model needs each lift to involve a single ambient variable");
        var = v;
      }
    }
    if (!var) throw DomainError("tube model needs non-constant lifts");
    if (std::find(used.begin(), used.end(), *var) != used.end()) {
      throw DomainError("tube model needs lifts in distinct ambient variables");
    }
    used.push_back(*var);
    auto c = detail::reduce_univariate(f, *var, p);
    std::vector<std::int64_t> deriv;
    for (std::size_t i = 1; i < c.size(); ++i) deriv.push_back(c[i] * static_cast<std::int64_t>(i) % p);
    std::vector<std::int64_t> r;
    for (std::int64_t x = 0; x < p; ++x) {
      if (detail::eval_mod(c, x, p) != 0) continue;
      if (detail::eval_mod(deriv, x, p) == 0) throw DomainError("tube model needs simple roots mod p");
      r.push_back(x);
    }
    if (c.size() < 2 || static_cast<std::size_t>(r.size()) != c.size() - 1) {
      throw DomainError("tube model needs reductions that split into simple roots mod p");
    }
    roots.push_back(std::move(r));
  }
  std::vector<Chart> charts;
  std::vector<std::size_t> pick(roots.size(), 0);
  for (;;) {
    Chart ch;
    ch.label = "root(";
    for (std::size_t i = 0; i < pick.size(); ++i) ch.label += (i ? "," : "") + std::to_string(roots[i][pick[i]]);
    ch.label += ")";
    for (const auto& v : pres.ambient()) ch.vars.push_back({v.name, 0, trunc});
    charts.push_back(std::move(ch));
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == roots[i].size()) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  return charts;
}

inline CochainComplex de_rham_complex(const AlgebraModel& alg) {
  if (alg.trunc < 0) throw DomainError("window must be >= 0");
  auto poly = [&](const char* label) {
    if (alg.dim < 1) throw DomainError("polydisk dimension must be >= 1");
    Chart c{label, {}};
    for (int i = 1; i <= alg.dim; ++i) c.vars.push_back({alg.dim == 1 ? "t" : "x" + std::to_string(i), 0, alg.trunc});
    return c;
  };
  switch (alg.kind) {
    case AlgebraKind::tempered_polydisk: return de_rham_complex(poly("tempered"));
    case AlgebraKind::tate_polydisk: return de_rham_complex(poly("tate"));
    case AlgebraKind::laurent_annulus: return de_rham_complex(Chart{"annulus", {{"t", -alg.trunc, alg.trunc}}});
    case AlgebraKind::tube: {
      if (!alg.presentation) throw DomainError("tube model needs a presentation");
      CoverSpec cover{tube_charts(*alg.presentation, alg.trunc), {}};
      if (cover.charts.size() > 3) {
        // Disjoint charts: the complex is a direct sum, so build it chart by chart.
        std::vector<CochainComplex> parts;
        for (const auto& c : cover.charts) parts.push_back(de_rham_complex(c));
        const int top = parts.front().top_degree();
        std::vector<std::vector<std::string>> basis(static_cast<std::size_t>(top) + 1);
        std::vector<SparseMatrix> d;
        for (int k = 0; k <= top; ++k) {
          for (const auto& p : parts) basis[k].insert(basis[k].end(), p.basis(k).begin(), p.basis(k).end());
        }
        for (int k = 0; k < top; ++k) {
          SparseMatrix m(static_cast<int>(basis[k + 1].size()), static_cast<int>(basis[k].size()));
          int ro = 0, co = 0;
          for (const auto& p : parts) {
            for (int r = 0; r < p.dim(k + 1); ++r) {
              for (const auto& [c, v] : p.d(k).row(r)) m.add(ro + r, co + c, v);
            }
            ro += p.dim(k + 1);
            co += p.dim(k);
          }
          d.push_back(std::move(m));
        }
        return CochainComplex(std::move(basis), std::move(d));
      }
      return cech_de_rham(cover);
    }
  }
  throw DomainError("unknown algebra kind");
}

struct FibrationComparison {
  std::vector<int> base_dims;
  std::vector<int> extended_dims;
  bool consistent = false;
};

inline FibrationComparison compare_weak_fibration(const TubePresentation& pres, int d, int trunc) {
  AlgebraModel base{AlgebraKind::tube, 1, trunc, pres};
  AlgebraModel ext{AlgebraKind::tube, 1, trunc, weak_fibration_data(pres, d)};
  FibrationComparison out{cohomology_dims(de_rham_complex(base)), cohomology_dims(de_rham_complex(ext)), true};
  const std::size_t n = std::max(out.base_dims.size(), out.extended_dims.size());
  for (std::size_t k = 0; k < n; ++k) {
    const int a = k < out.base_dims.size() ? out.base_dims[k] : 0;
    const int b = k < out.extended_dims.size() ? out.extended_dims[k] : 0;
    if (a != b) out.consistent = false;
  }
  return out;
}

}  // namespace tempered
