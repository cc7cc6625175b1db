#pragma once

/**
 * Readers and writers for systems, presentations, Koszul vectors,
 * presentation relations and covers. All build on the series format and
 * write canonical text that re-reads to an identical value.
 *
 * System:        series header + "dim: m", blocks "entry i j:" (1-based)
 * Presentation:  series header (ambient) + "tube-vars: y1,...", optional
 *                "trunc: N", blocks "lift i:"
 * Koszul vector: series header over the joint variables, blocks "component i:"
 * Relation:      "prime:", "source-vars:", "target-vars:", "h i j: r", "alpha i: r"
 * Cover:         optional "prime:", "chart A: <kind> <vars>",
 *                blocks "overlap A B: <kind> <vars>" with lines "A: x -> <monomial>"
 */

#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tempered/derham.hpp"
#include "tempered/ode.hpp"
#include "tempered/series_io.hpp"
#include "tempered/tube.hpp"

namespace tempered {

namespace text {

inline std::vector<int> parse_label_ints(const Entry& e, std::size_t count) {
  std::istringstream words(e.label);
  std::vector<int> out;
  std::string w;
  while (words >> w) out.push_back(parse_int(w, e.line));
  if (out.size() != count) throw ParseError("'" + e.kind + "' needs " + std::to_string(count) + " indices", e.line);
  return out;
}

inline void require_empty_value(const Entry& e) {
  if (!e.value.empty()) throw ParseError("unexpected text after '" + e.kind + " " + e.label + ":'", e.line);
}

/// Reads 1-based indexed blocks of series bodies; missing blocks stay zero.
template <class Store>
void read_blocks(const std::vector<Section>& sections, std::size_t count, std::size_t arity, const SeriesSpec& spec,
                 Store&& store) {
  std::vector<bool> seen(count * arity, false);
  for (const auto& sec : sections) {
    require_empty_value(sec.head);
    if (!sec.entries.empty()) throw ParseError("unknown key '" + sec.entries.front().kind + "'", sec.entries.front().line);
    auto idx = parse_label_ints(sec.head, arity);
    std::size_t flat = 0;
    for (int i : idx) {
      if (i < 1 || static_cast<std::size_t>(i) > count) throw ParseError("block index out of range", sec.head.line);
      flat = flat * count + static_cast<std::size_t>(i - 1);
    }
    if (seen[flat]) throw ParseError("duplicate block", sec.head.line);
    seen[flat] = true;
    store(idx, parse_body(sec.body, spec));
  }
}

}  // namespace text

// ---- differential systems -------------------------------------------------

inline DiffSystem read_system(std::istream& in) {
  auto doc = text::read_document(in, {"entry"});
  doc.top.allow_only({"prime", "vars", "window", "dim"});
  doc.top.forbid_body();
  const auto spec = text::parse_spec(doc.top);
  const auto& de = doc.top.require("dim");
  const int dim = text::parse_int(de.value, de.line);
  if (dim < 1 || dim > 64) throw ParseError("dim must be between 1 and 64", de.line);
  std::vector<GrowthSeries> entries(static_cast<std::size_t>(dim) * dim, GrowthSeries(spec));
  text::read_blocks(doc.sections, static_cast<std::size_t>(dim), 2, spec, [&](const std::vector<int>& ij, GrowthSeries f) {
    entries[static_cast<std::size_t>(ij[0] - 1) * dim + (ij[1] - 1)] = std::move(f);
  });
  try {
    return DiffSystem(dim, std::move(entries));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), de.line);
  }
}

inline void write_system(std::ostream& os, const DiffSystem& sys) {
  text::write_spec(os, sys.spec());
  os << "dim: " << sys.dim() << '\n';
  for (int i = 0; i < sys.dim(); ++i) {
    for (int j = 0; j < sys.dim(); ++j) {
      if (sys.at(i, j).is_zero()) continue;
      os << "entry " << i + 1 << ' ' << j + 1 << ":\n";
      text::write_body(os, sys.at(i, j));
    }
  }
}

// ---- tube presentations ---------------------------------------------------

inline TubePresentation read_presentation(std::istream& in) {
  auto doc = text::read_document(in, {"lift"});
  doc.top.allow_only({"prime", "vars", "window", "tube-vars", "trunc"});
  doc.top.forbid_body();
  const auto spec = text::parse_spec(doc.top);
  const auto& te = doc.top.require("tube-vars");
  auto tube = text::parse_names(te);
  int trunc = spec.arity() ? spec.var(0).hi : 0;
  if (const auto* tr = doc.top.find("trunc")) trunc = text::parse_int(tr->value, tr->line);
  std::vector<GrowthSeries> lifts(tube.size(), GrowthSeries(spec));
  text::read_blocks(doc.sections, tube.size(), 1, spec,
                    [&](const std::vector<int>& i, GrowthSeries f) { lifts[i[0] - 1] = std::move(f); });
  try {
    return TubePresentation(spec.prime(), spec.vars(), std::move(tube), trunc, std::move(lifts));
  } catch (const DomainError& e) {
    throw ParseError(e.what(), te.line);
  }
}

inline void write_presentation(std::ostream& os, const TubePresentation& pres) {
  text::write_spec(os, pres.ambient_spec());
  os << "tube-vars: " << text::join_names(pres.tube_vars()) << '\n';
  os << "trunc: " << pres.trunc() << '\n';
  for (std::size_t i = 0; i < pres.s(); ++i) {
    os << "lift " << i + 1 << ":\n";
    text::write_body(os, pres.lifts()[i]);
  }
}

// ---- Koszul vectors -------------------------------------------------------

inline KoszulVector read_koszul_vector(std::istream& in) {
  auto doc = text::read_document(in, {"component"});
  doc.top.allow_only({"prime", "vars", "window", "components"});
  doc.top.forbid_body();
  const auto spec = text::parse_spec(doc.top);
  const auto& ce = doc.top.require("components");
  const int count = text::parse_int(ce.value, ce.line);
  if (count < 1 || count > 64) throw ParseError("components must be between 1 and 64", ce.line);
  KoszulVector h(static_cast<std::size_t>(count), GrowthSeries(spec));
  text::read_blocks(doc.sections, h.size(), 1, spec,
                    [&](const std::vector<int>& i, GrowthSeries f) { h[i[0] - 1] = std::move(f); });
  return h;
}

inline void write_koszul_vector(std::ostream& os, const KoszulVector& h) {
  if (h.empty()) throw DomainError("empty Koszul vector");
  text::write_spec(os, h.front().spec());
  os << "components: " << h.size() << '\n';
  for (std::size_t i = 0; i < h.size(); ++i) {
    os << "component " << i + 1 << ":\n";
    text::write_body(os, h[i]);
  }
}

// ---- presentation relations -----------------------------------------------

inline PresentationRelation read_relation(std::istream& in) {
  auto doc = text::read_document(in, {});
  doc.top.allow_only({"prime", "source-vars", "target-vars", "h", "alpha"});
  doc.top.forbid_body();
  Prime p = text::parse_prime(doc.top.require("prime"));
  auto source = text::parse_names(doc.top.require("source-vars"));
  auto target = text::parse_names(doc.top.require("target-vars"));
  std::vector<std::vector<Scalar>> h(source.size(), std::vector<Scalar>(target.size(), Scalar(0)));
  std::vector<Scalar> alpha(source.size(), Scalar(0));
  std::set<std::vector<int>> seen;
  for (const auto& e : doc.top.entries) {
    if (e.kind != "h" && e.kind != "alpha") {
      if (!e.label.empty()) throw ParseError("unexpected label on '" + e.kind + "'", e.line);
      continue;
    }
    auto idx = text::parse_label_ints(e, e.kind == "h" ? 2 : 1);
    if (idx[0] < 1 || static_cast<std::size_t>(idx[0]) > source.size() ||
        (e.kind == "h" && (idx[1] < 1 || static_cast<std::size_t>(idx[1]) > target.size()))) {
      throw ParseError("index out of range", e.line);
    }
    auto key = idx;
    key.insert(key.begin(), e.kind == "h" ? 0 : 1);
    if (!seen.insert(key).second) throw ParseError("duplicate entry", e.line);
    Scalar v;
    try {
      v = Scalar::parse(e.value);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), e.line);
    }
    (e.kind == "h" ? h[idx[0] - 1][idx[1] - 1] : alpha[idx[0] - 1]) = v;
  }
  return PresentationRelation(p, std::move(source), std::move(target), std::move(h), std::move(alpha));
}

inline void write_relation(std::ostream& os, const PresentationRelation& rel) {
  os << "prime: " << rel.prime().value() << '\n';
  os << "source-vars: " << text::join_names(rel.source()) << '\n';
  os << "target-vars: " << text::join_names(rel.target()) << '\n';
  for (std::size_t i = 0; i < rel.s(); ++i) {
    for (std::size_t j = 0; j < rel.l(); ++j) {
      if (!rel.h()[i][j].is_zero()) os << "h " << i + 1 << ' ' << j + 1 << ": " << rel.h()[i][j].str() << '\n';
    }
  }
  for (std::size_t i = 0; i < rel.s(); ++i) {
    if (!rel.alpha()[i].is_zero()) os << "alpha " << i + 1 << ": " << rel.alpha()[i].str() << '\n';
  }
}

// ---- covers ----------------------------------------------------------------

enum class ChartKind { tate_disk, tempered_disk, tate_polydisk, tempered_polydisk, annulus };

inline constexpr std::array<std::pair<ChartKind, std::string_view>, 5> kChartKinds{{
    {ChartKind::tate_disk, "tate-disk"},
    {ChartKind::tempered_disk, "tempered-disk"},
    {ChartKind::tate_polydisk, "tate-polydisk"},
    {ChartKind::tempered_polydisk, "tempered-polydisk"},
    {ChartKind::annulus, "annulus"},
}};

struct ChartDesc {
  std::string label;
  ChartKind kind = ChartKind::tate_disk;
  std::vector<std::string> vars;
  friend bool operator==(const ChartDesc&, const ChartDesc&) = default;
};

struct MapLine {
  std::string chart;  // label of chart a or b
  std::string var;    // chart variable
  Scalar coeff{1};
  MultiIndex exponents;  // over the overlap variables
  friend bool operator==(const MapLine&, const MapLine&) = default;
};

struct OverlapDesc {
  std::string a, b;
  ChartKind kind = ChartKind::annulus;
  std::vector<std::string> vars;
  std::vector<MapLine> maps;
  friend bool operator==(const OverlapDesc&, const OverlapDesc&) = default;
};

struct CoverDescription {
  std::optional<long> prime;
  std::vector<ChartDesc> charts;
  std::vector<OverlapDesc> overlaps;
  friend bool operator==(const CoverDescription&, const CoverDescription&) = default;
};

namespace text {

inline std::pair<ChartKind, std::vector<std::string>> parse_chart_value(const Entry& e) {
  std::istringstream words(e.value);
  std::string kind, vars, extra;
  words >> kind >> vars;
  if (kind.empty() || vars.empty() || (words >> extra)) throw ParseError("expected '<kind> <vars>'", e.line);
  std::optional<ChartKind> k;
  for (const auto& [ck, name] : kChartKinds) {
    if (name == kind) k = ck;
  }
  if (!k) throw ParseError("unknown chart kind '" + kind + "'", e.line);
  Entry names = e;
  names.value = vars;
  auto list = parse_names(names);
  if ((*k == ChartKind::tate_disk || *k == ChartKind::tempered_disk) && list.size() != 1) {
    throw ParseError("a disk chart has exactly one variable", e.line);
  }
  return {*k, list};
}

inline std::string_view chart_kind_name(ChartKind k) {
  for (const auto& [ck, name] : kChartKinds) {
    if (ck == k) return name;
  }
  return "?";
}

/// "[coeff*]v^e*w^f..." over the given variables.
inline MapLine parse_monomial(const std::string& s, const std::vector<std::string>& vars, int line) {
  MapLine out;
  out.exponents.assign(vars.size(), 0);
  bool first = true;
  for (const auto& factor : split(s, '*')) {
    if (factor.empty()) throw ParseError("empty factor in monomial", line);
    unsigned char c0 = static_cast<unsigned char>(factor[0]);
    if (first && (std::isdigit(c0) || factor[0] == '-' || factor[0] == '+')) {
      try {
        out.coeff = Scalar::parse(factor);
      } catch (const ParseError& e) {
        throw ParseError(e.what(), line);
      }
      if (out.coeff.is_zero()) throw ParseError("zero coefficient in monomial", line);
      first = false;
      continue;
    }
    first = false;
    auto caret = factor.find('^');
    std::string name = trim(factor.substr(0, caret));
    int e = caret == std::string::npos ? 1 : parse_int(factor.substr(caret + 1), line);
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) throw ParseError("unknown overlap variable '" + name + "'", line);
    out.exponents[it - vars.begin()] += e;
  }
  return out;
}

inline std::string monomial_str(const MapLine& m, const std::vector<std::string>& vars) {
  std::string s;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m.exponents[i] == 0) continue;
    s += (s.empty() ? "" : "*") + vars[i];
    if (m.exponents[i] != 1) s += "^" + std::to_string(m.exponents[i]);
  }
  if (s.empty()) return m.coeff.str();
  if (!(m.coeff == Scalar(1))) s = m.coeff.str() + "*" + s;
  return s;
}

}  // namespace text

inline CoverDescription read_cover(std::istream& in) {
  auto doc = text::read_document(in, {"overlap"});
  doc.top.allow_only({"prime", "chart"});
  doc.top.forbid_body();
  CoverDescription cov;
  if (const auto* p = doc.top.find("prime")) cov.prime = text::parse_prime(*p).value();
  for (const auto& e : doc.top.entries) {
    if (e.kind != "chart") continue;
    if (!text::valid_name(e.label)) throw ParseError("bad chart label '" + e.label + "'", e.line);
    for (const auto& c : cov.charts) {
      if (c.label == e.label) throw ParseError("duplicate chart '" + e.label + "'", e.line);
    }
    auto [kind, vars] = text::parse_chart_value(e);
    cov.charts.push_back({e.label, kind, std::move(vars)});
  }
  auto chart_of = [&](const std::string& label, int line) -> const ChartDesc& {
    for (const auto& c : cov.charts) {
      if (c.label == label) return c;
    }
    throw ParseError("unknown chart '" + label + "'", line);
  };
  for (const auto& sec : doc.sections) {
    sec.forbid_body();
    std::istringstream words(sec.head.label);
    OverlapDesc o;
    std::string extra;
    words >> o.a >> o.b;
    if (o.a.empty() || o.b.empty() || (words >> extra)) throw ParseError("overlap needs two chart labels", sec.head.line);
    const auto& ca = chart_of(o.a, sec.head.line);
    const auto& cb = chart_of(o.b, sec.head.line);
    std::tie(o.kind, o.vars) = text::parse_chart_value(sec.head);
    for (const auto& e : sec.entries) {
      if (!e.label.empty() || (e.kind != o.a && e.kind != o.b)) {
        throw ParseError("expected a map line '" + o.a + ": v -> monomial' or '" + o.b + ": ...'", e.line);
      }
      auto arrow = e.value.find("->");
      if (arrow == std::string::npos) throw ParseError("map line needs '->'", e.line);
      MapLine m = text::parse_monomial(text::trim(e.value.substr(arrow + 2)), o.vars, e.line);
      m.chart = e.kind;
      m.var = text::trim(e.value.substr(0, arrow));
      const auto& src = e.kind == o.a ? ca : cb;
      if (std::find(src.vars.begin(), src.vars.end(), m.var) == src.vars.end()) {
        throw ParseError("'" + m.var + "' is not a variable of chart " + e.kind, e.line);
      }
      for (const auto& prev : o.maps) {
        if (prev.chart == m.chart && prev.var == m.var) throw ParseError("duplicate map line", e.line);
      }
      o.maps.push_back(std::move(m));
    }
    cov.overlaps.push_back(std::move(o));
  }
  return cov;
}

inline void write_cover(std::ostream& os, const CoverDescription& cov) {
  if (cov.prime) os << "prime: " << *cov.prime << '\n';
  for (const auto& c : cov.charts) {
    os << "chart " << c.label << ": " << text::chart_kind_name(c.kind) << ' ' << text::join_names(c.vars) << '\n';
  }
  for (const auto& o : cov.overlaps) {
    os << "overlap " << o.a << ' ' << o.b << ": " << text::chart_kind_name(o.kind) << ' ' << text::join_names(o.vars)
       << '\n';
    for (const auto& m : o.maps) os << m.chart << ": " << m.var << " -> " << text::monomial_str(m, o.vars) << '\n';
  }
}

/// Instantiates the cover at window N (disks [0, N], annuli [-N, N]).
inline CoverSpec instantiate_cover(const CoverDescription& cov, int trunc) {
  if (trunc < 0) throw DomainError("window must be >= 0");
  auto chart = [&](const std::string& label, ChartKind kind, const std::vector<std::string>& vars) {
    Chart c{label, {}};
    for (const auto& v : vars) c.vars.push_back({v, kind == ChartKind::annulus ? -trunc : 0, trunc});
    return c;
  };
  CoverSpec spec;
  std::map<std::string, int> index;
  for (const auto& c : cov.charts) {
    index[c.label] = static_cast<int>(spec.charts.size());
    spec.charts.push_back(chart(c.label, c.kind, c.vars));
  }
  for (const auto& o : cov.overlaps) {
    Overlap ov;
    ov.a = index.at(o.a);
    ov.b = index.at(o.b);
    bool swapped = ov.a > ov.b;
    if (swapped) std::swap(ov.a, ov.b);
    ov.model = chart(o.a + "|" + o.b, o.kind, o.vars);
    const auto& la = spec.charts[ov.a];
    const auto& lb = spec.charts[ov.b];
    auto images = [&](const Chart& src) {
      std::vector<MonomialImage> out;
      for (const auto& v : src.vars) {
        auto it = std::find_if(o.maps.begin(), o.maps.end(),
                               [&](const MapLine& m) { return m.chart == src.label && m.var == v.name; });
        if (it == o.maps.end()) throw DomainError("restriction from " + src.label + " does not map '" + v.name + "'");
        out.push_back({it->coeff, it->exponents});
      }
      return out;
    };
    ov.from_a = images(la);
    ov.from_b = images(lb);
    spec.overlaps.push_back(std::move(ov));
  }
  return spec;
}

inline CoverDescription read_cover_file(const std::string& path) {
  auto in = text::open_input(path);
  return read_cover(in);
}

}  // namespace tempered
