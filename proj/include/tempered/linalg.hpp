#pragma once

// Exact linear algebra: sparse rational matrices with fraction-free rank, and
// dense solves over F_p.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tempered/error.hpp"
#include "tempered/padic.hpp"

namespace tempered {

class SparseMatrix {
 public:
  SparseMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

  int rows() const noexcept { return static_cast<int>(rows_.size()); }
  int cols() const noexcept { return cols_; }
  const std::map<int, Scalar>& row(int r) const { return rows_.at(r); }

  void add(int r, int c, const Scalar& v) {
    if (v.is_zero()) return;
    if (c < 0 || c >= cols_) throw DomainError("matrix column out of range");
    auto& row = rows_.at(r);
    auto [it, inserted] = row.try_emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second.is_zero()) row.erase(it);
    }
  }

  Scalar at(int r, int c) const {
    const auto& row = rows_.at(r);
    auto it = row.find(c);
    return it == row.end() ? Scalar(0) : it->second;
  }

  bool is_zero() const {
    for (const auto& r : rows_) {
      if (!r.empty()) return false;
    }
    return true;
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
  }

 private:
  int cols_;
  std::vector<std::map<int, Scalar>> rows_;
};

inline SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shapes do not compose");
  SparseMatrix out(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (const auto& [k, v] : a.row(r)) {
      for (const auto& [c, w] : b.row(k)) out.add(r, c, v * w);
    }
  }
  return out;
}

namespace detail {

using IntRow = std::vector<std::pair<int, mpz_class>>;  // sorted by column

inline void normalize(IntRow& row) {
  mpz_class g = 0;
  for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  if (g == 0) return;
  if (sgn(row.front().second) < 0) g = -g;
  if (g == 1) return;
  for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y, dropping zeros.
inline IntRow combine(const mpz_class& a, const IntRow& x, const mpz_class& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      mpz_class v = a * x[i].second - b * y[j].second;
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Exact rank over Q by fraction-free elimination with content removal.
inline int rank(const SparseMatrix& m) {
  std::map<int, detail::IntRow> pivots;
  for (int r = 0; r < m.rows(); ++r) {
    const auto& src = m.row(r);
    if (src.empty()) continue;
    mpz_class l = 1;
    for (const auto& [c, v] : src) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.value().get_den_mpz_t());
    detail::IntRow row;
    row.reserve(src.size());
    for (const auto& [c, v] : src) row.emplace_back(c, mpz_class(v.value().get_num() * (l / v.value().get_den())));
    detail::normalize(row);
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        pivots.emplace(row.front().first, std::move(row));
        break;
      }
      const auto& piv = it->second;
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), piv.front().second.get_mpz_t(), row.front().second.get_mpz_t());
      row = detail::combine(piv.front().second / g, row, row.front().second / g, piv);
      if (!row.empty()) detail::normalize(row);
    }
  }
  return static_cast<int>(pivots.size());
}

/**
 * Solves A x = b over F_p. Pivots are taken in column order, first nonzero
 * row first; free variables are set to 0. Returns nullopt if inconsistent.
 */
inline std::optional<std::vector<std::int64_t>> solve_mod_p(std::vector<std::vector<std::int64_t>> a,
                                                            std::vector<std::int64_t> b, std::int64_t p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a.front().size() : 0;
  auto md = [p](std::int64_t v) { return ((v % p) + p) % p; };
  auto inv = [&](std::int64_t v) {
    std::int64_t r = 1, base = md(v), e = p - 2;
    while (e > 0) {
      if (e & 1) r = r * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return r;
  };
  for (auto& row : a) {
    for (auto& v : row) v = md(v);
  }
  for (auto& v : b) v = md(v);
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && a[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[r]);
    std::swap(b[sel], b[r]);
    const std::int64_t s = inv(a[r][c]);
    for (std::size_t k = c; k < cols; ++k) a[r][k] = a[r][k] * s % p;
    b[r] = b[r] * s % p;
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == r || a[o][c] == 0) continue;
      const std::int64_t f = a[o][c];
      for (std::size_t k = c; k < cols; ++k) a[o][k] = md(a[o][k] - f * a[r][k]);
      b[o] = md(b[o] - f * b[r]);
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t o = r; o < rows; ++o) {
    if (b[o] != 0) return std::nullopt;
  }
  std::vector<std::int64_t> x(cols, 0);
  for (std::size_t i = 0; i < pivot_col.size(); ++i) x[pivot_col[i]] = b[i];
  return x;
}

}  // namespace tempered
