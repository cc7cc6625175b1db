#pragma once

// Random problem instances shared by the unit and acceptance suites.

#include <string>
#include <vector>

#include "oracles.hpp"

namespace instances {

using namespace tempered;

/// x_i + p * r_i(x) with integral r_i (r_i = 0 when `perturb` is false).
inline TubePresentation coordinate_presentation(oracle::Random& rng, long p, int s, int x_hi, int trunc,
                                                bool perturb) {
  std::vector<VarWindow> ambient;
  std::vector<std::string> tube;
  for (int i = 1; i <= s; ++i) {
    ambient.push_back({"x" + std::to_string(i), 0, x_hi});
    tube.push_back("y" + std::to_string(i));
  }
  SeriesSpec amb(Prime(p), ambient);
  std::vector<GrowthSeries> lifts;
  for (int i = 0; i < s; ++i) {
    auto f = GrowthSeries::variable(amb, ambient[i].name);
    if (perturb) {
      for (int k = 0; k < 2; ++k) {
        MultiIndex j(s, 0);
        for (auto& e : j) e = rng.uniform(0, 2);
        f.add_to(j, Scalar(p) * Scalar(rng.uniform(-3, 3)));
      }
    }
    lifts.push_back(f);
  }
  return TubePresentation(Prime(p), ambient, tube, trunc, lifts);
}

/// H = G + sum phi_ab(v_ab): G small and integral, v_ab with denominators p^k.
/// Correction terms are kept to low x-degree so they stay inside the window.
inline KoszulVector koszul_instance(oracle::Random& rng, const TubePresentation& pres, int max_den) {
  const auto js = pres.joint_spec();
  const std::size_t s = pres.s(), m = pres.m();
  const long p = pres.prime().value();
  KoszulVector h(s, GrowthSeries(js));
  for (std::size_t i = 0; i < s; ++i) {
    for (int k = 0; k < 3; ++k) {
      MultiIndex j(m + s, 0);
      for (std::size_t v = 0; v < m; ++v) j[v] = rng.uniform(0, 2);
      for (std::size_t v = m; v < m + s; ++v) j[v] = rng.uniform(0, 1);
      h[i].add_to(j, Scalar(rng.uniform(-4, 4)));
    }
  }
  for (std::size_t a = 0; a < s; ++a) {
    for (std::size_t b = a + 1; b < s; ++b) {
      GrowthSeries v(js);
      for (int k = 0; k < 2; ++k) {
        MultiIndex j(m + s, 0);
        for (std::size_t x = 0; x < m; ++x) j[x] = rng.uniform(0, 1);
        for (std::size_t y = m; y < m + s; ++y) j[y] = rng.uniform(0, std::max(0, pres.trunc() - 1));
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(rng.uniform(0, max_den)));
        v.add_to(j, Scalar(mpq_class(mpz_class(rng.unit(p).value().get_num()), den)));
      }
      auto phi = phi_apply(pres, a, b, v);
      for (std::size_t i = 0; i < s; ++i) h[i] = h[i] + phi[i];
    }
  }
  return h;
}

/// psi(H) computed by schoolbook products, independent of the library's psi.
inline GrowthSeries naive_psi(const KoszulVector& h, const TubePresentation& pres) {
  const auto js = pres.joint_spec();
  GrowthSeries out(js);
  for (std::size_t i = 0; i < h.size(); ++i) {
    GrowthSeries rel(js);
    MultiIndex yj(js.arity(), 0);
    yj[pres.m() + i] = 1;
    rel.add_to(yj, Scalar(1));
    for (const auto& [x, c] : pres.lifts()[i].terms()) {
      MultiIndex j = x;
      j.resize(js.arity(), 0);
      rel.add_to(j, -c);
    }
    auto prod = oracle::naive_mul(rel, h[i], js);
    out = out + prod;
  }
  return out;
}

/// max_i sup |c| prod_{y} (j_y + 1)^(-n), x-weight 0.
inline mpq_class naive_koszul_norm(const KoszulVector& h, const TubePresentation& pres, int n, const Scalar& scale) {
  mpq_class best = 0;
  for (const auto& comp : h) {
    for (const auto& [j, c] : comp.terms()) {
      mpq_class v = oracle::absp(c * scale, pres.prime().value());
      for (std::size_t y = pres.m(); y < j.size(); ++y) v *= oracle::weight_factor(j[y], n);
      if (v > best) best = v;
    }
  }
  return best;
}

}  // namespace instances
