#pragma once

// Series text format:
//   prime: <p>
//   vars: <v1>,<v2>,...
//   window: <lo1>..<hi1>,<lo2>..<hi2>,...
//   <j1>,<j2>,... : <rational>
// '#' starts a comment. The writer emits terms in lexicographic index order,
// so written files re-read to identical values.

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tempered/series.hpp"
#include "tempered/text_format.hpp"

namespace tempered {

namespace text {

inline bool valid_name(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  }
  return true;
}

inline std::vector<std::string> parse_names(const Entry& e) {
  auto names = split(e.value, ',');
  for (const auto& n : names) {
    if (!valid_name(n)) throw ParseError("bad variable name '" + n + "'", e.line);
  }
  return names;
}

inline Prime parse_prime(const Entry& e) {
  int p = parse_int(e.value, e.line);
  try {
    return Prime(p);
  } catch (const DomainError& err) {
    throw ParseError(err.what(), e.line);
  }
}

inline std::vector<std::pair<int, int>> parse_windows(const Entry& e) {
  std::vector<std::pair<int, int>> out;
  for (const auto& part : split(e.value, ',')) {
    auto dots = part.find("..");
    if (dots == std::string::npos) throw ParseError("window must be lo..hi", e.line);
    out.emplace_back(parse_int(part.substr(0, dots), e.line), parse_int(part.substr(dots + 2), e.line));
  }
  return out;
}

inline SeriesSpec make_spec(const Prime& p, const std::vector<std::string>& names,
                            const std::vector<std::pair<int, int>>& windows, int line) {
  if (names.size() != windows.size()) throw ParseError("vars and window lengths differ", line);
  std::vector<VarWindow> vars;
  for (std::size_t i = 0; i < names.size(); ++i) vars.push_back({names[i], windows[i].first, windows[i].second});
  try {
    return SeriesSpec(p, std::move(vars));
  } catch (const DomainError& err) {
    throw ParseError(err.what(), line);
  }
}

/// Reads prime/vars/window entries of a section into a spec.
inline SeriesSpec parse_spec(const Section& s, std::string_view vars_key = "vars") {
  Prime p = parse_prime(s.require("prime"));
  const auto& vars = s.require(vars_key);
  const auto& win = s.require("window");
  return make_spec(p, parse_names(vars), parse_windows(win), win.line);
}

inline GrowthSeries parse_body(const std::vector<BodyLine>& body, const SeriesSpec& spec) {
  GrowthSeries f(spec);
  for (const auto& b : body) {
    auto colon = b.text.find(':');
    if (colon == std::string::npos) throw ParseError("expected '<indices> : <rational>'", b.line);
    auto idx = split(std::string_view(b.text).substr(0, colon), ',');
    if (idx.size() != spec.arity()) throw ParseError("index has wrong arity", b.line);
    MultiIndex j;
    for (const auto& s : idx) j.push_back(parse_int(s, b.line));
    if (!spec.contains(j)) throw ParseError("index outside the window", b.line);
    if (f.terms().contains(j)) throw ParseError("duplicate index", b.line);
    Scalar c;
    try {
      c = Scalar::parse(trim(std::string_view(b.text).substr(colon + 1)));
    } catch (const ParseError& err) {
      throw ParseError(err.what(), b.line);
    }
    f.set(std::move(j), std::move(c));
  }
  return f;
}

inline std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ",") + n;
  return out;
}

inline void write_spec(std::ostream& os, const SeriesSpec& spec, std::string_view vars_key = "vars") {
  os << "prime: " << spec.prime().value() << '\n' << vars_key << ": ";
  for (std::size_t i = 0; i < spec.arity(); ++i) os << (i ? "," : "") << spec.var(i).name;
  os << "\nwindow: ";
  for (std::size_t i = 0; i < spec.arity(); ++i) os << (i ? "," : "") << spec.var(i).lo << ".." << spec.var(i).hi;
  os << '\n';
}

inline void write_body(std::ostream& os, const GrowthSeries& f) {
  for (const auto& [j, c] : f.terms()) {
    for (std::size_t i = 0; i < j.size(); ++i) os << (i ? "," : "") << j[i];
    os << " : " << c.str() << '\n';
  }
}

inline std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace text

inline GrowthSeries read_series(std::istream& in) {
  auto doc = text::read_document(in, {});
  doc.top.allow_only({"prime", "vars", "window"});
  return text::parse_body(doc.top.body, text::parse_spec(doc.top));
}

inline GrowthSeries read_series_file(const std::string& path) {
  auto in = text::open_input(path);
  return read_series(in);
}

inline GrowthSeries parse_series(const std::string& s) {
  std::istringstream in(s);
  return read_series(in);
}

inline void write_series(std::ostream& os, const GrowthSeries& f) {
  text::write_spec(os, f.spec());
  text::write_body(os, f);
}

inline std::string to_string(const GrowthSeries& f) {
  std::ostringstream os;
  write_series(os, f);
  return os.str();
}

}  // namespace tempered
