#pragma once

/**
 * Line-oriented reader shared by every file format.
 *
 * A line is either blank/comment, an entry ("kind [label]: value"), or a body
 * line (starts with a digit or a sign). Entries whose kind is a registered
 * section kind open a new section; other entries and body lines attach to
 * the current section (or the top-level section before the first one).
 */

#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "tempered/error.hpp"

namespace tempered::text {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int parse_int(std::string_view s, int line) {
  std::string t = trim(s);
  if (t.empty()) throw ParseError("expected an integer", line);
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(t, &used);
  } catch (const std::exception&) {
    throw ParseError("malformed integer '" + t + "'", line);
  }
  if (used != t.size() || v < -1000000 || v > 1000000) throw ParseError("malformed integer '" + t + "'", line);
  return static_cast<int>(v);
}

struct Entry {
  std::string kind;
  std::string label;  // words after the kind, before ':'
  std::string value;  // text after ':'
  int line = 0;
};

struct BodyLine {
  std::string text;
  int line = 0;
};

struct Section {
  Entry head;  // empty kind for the top-level section
  std::vector<Entry> entries;
  std::vector<BodyLine> body;

  const Entry* find(std::string_view kind) const {
    const Entry* hit = nullptr;
    for (const auto& e : entries) {
      if (e.kind == kind) {
        if (hit) throw ParseError("duplicate key '" + std::string(kind) + "'", e.line);
        hit = &e;
      }
    }
    return hit;
  }
  const Entry& require(std::string_view kind) const {
    if (const auto* e = find(kind)) return *e;
    throw ParseError("missing key '" + std::string(kind) + "'", head.line);
  }
  void allow_only(const std::set<std::string>& kinds) const {
    for (const auto& e : entries) {
      if (!kinds.contains(e.kind)) throw ParseError("unknown key '" + e.kind + "'", e.line);
    }
  }
  void forbid_body() const {
    if (!body.empty()) throw ParseError("unexpected coefficient line", body.front().line);
  }
};

struct Document {
  Section top;
  std::vector<Section> sections;
};

inline Document read_document(std::istream& in, const std::set<std::string>& section_kinds) {
  Document doc;
  Section* current = &doc.top;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    std::string s = trim(std::string_view(raw).substr(0, hash));
    if (s.empty()) continue;
    unsigned char c0 = static_cast<unsigned char>(s[0]);
    if (std::isdigit(c0) || s[0] == '-' || s[0] == '+') {
      current->body.push_back({s, number});
      continue;
    }
    auto colon = s.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", number);
    std::istringstream words(s.substr(0, colon));
    Entry e;
    e.line = number;
    words >> e.kind;
    std::string w;
    while (words >> w) e.label += (e.label.empty() ? "" : " ") + w;
    e.value = trim(std::string_view(s).substr(colon + 1));
    if (e.kind.empty()) throw ParseError("empty key", number);
    if (section_kinds.contains(e.kind)) {
      doc.sections.push_back(Section{e, {}, {}});
      current = &doc.sections.back();
    } else {
      current->entries.push_back(std::move(e));
    }
  }
  return doc;
}

}  // namespace tempered::text
