#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

using namespace tempered;

namespace {

template <class Read, class Write>
void expect_stable(const std::string& name, Read read, Write write) {
  auto in = text::open_input(oracle::fixture(name));
  auto v = read(in);
  std::ostringstream once;
  write(once, v);
  std::istringstream back(once.str());
  auto w = read(back);
  std::ostringstream twice;
  write(twice, w);
  EXPECT_EQ(once.str(), twice.str()) << name;
}

}  // namespace

TEST(SeriesFormat, ParsesHeaderAndBody) {
  auto f = parse_series("# comment\nprime: 5\nvars: t,x\nwindow: -2..3,0..1\n-2,1 : 3/10\n0,0 : -1 # trailing\n");
  EXPECT_EQ(f.prime().value(), 5);
  EXPECT_EQ(f.spec().var(0).lo, -2);
  EXPECT_EQ(f.coeff({-2, 1}), Scalar(3, 10));
  EXPECT_EQ(f.coeff({0, 0}), Scalar(-1));
  EXPECT_EQ(f.size(), 2u);
}

TEST(SeriesFormat, RandomRoundTrip) {
  oracle::Random rng(71);
  for (int trial = 0; trial < 200; ++trial) {
    long p = trial % 3 == 0 ? 2 : trial % 3 == 1 ? 3 : 5;
    std::vector<VarWindow> vars;
    int k = rng.uniform(1, 3);
    for (int i = 0; i < k; ++i) vars.push_back({"v" + std::to_string(i), -rng.uniform(0, 4), rng.uniform(-1, 8)});
    SeriesSpec s(Prime(p), vars);
    auto f = rng.series(s, rng.uniform(0, 10), 5);
    EXPECT_EQ(parse_series(to_string(f)), f);
  }
}

TEST(SeriesFormat, ErrorsCarryLineNumbers) {
  try {
    parse_series("prime: 3\nvars: t\nwindow: 0..2\n5 : 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_series("prime: 3\nvars: t\n"), ParseError);
  EXPECT_THROW(parse_series("prime: 3\nvars: 1t\nwindow: 0..2\n"), ParseError);
  EXPECT_THROW(parse_series("prime: 3\nvars: t\nwindow: 1..2\n"), ParseError);
  EXPECT_THROW(parse_series("prime: 3\nvars: t\nwindow: 0..2\n1 1\n"), ParseError);
}

TEST(Fixtures, AllRoundTrip) {
  for (const char* s : {"log_series.series", "geometric.series", "laurent.series", "bivariate.series",
                        "family.series", "tube_element.series"}) {
    expect_stable(s, [](std::istream& in) { return read_series(in); },
                  [](std::ostream& os, const GrowthSeries& f) { write_series(os, f); });
    auto f = read_series_file(oracle::fixture(s));
    EXPECT_EQ(parse_series(to_string(f)), f);
  }
  for (const char* s : {"exp.sys", "zero.sys", "geometric.sys", "logtype.sys"}) {
    expect_stable(s, [](std::istream& in) { return read_system(in); },
                  [](std::ostream& os, const DiffSystem& d) { write_system(os, d); });
  }
  for (const char* s : {"point.pres", "two_point.pres", "coordinate.pres"}) {
    expect_stable(s, [](std::istream& in) { return read_presentation(in); },
                  [](std::ostream& os, const TubePresentation& p) { write_presentation(os, p); });
  }
  for (const char* s : {"phi_inverse_p.kv", "koszul.kv"}) {
    expect_stable(s, [](std::istream& in) { return read_koszul_vector(in); },
                  [](std::ostream& os, const KoszulVector& h) { write_koszul_vector(os, h); });
  }
  expect_stable("relation.rel", [](std::istream& in) { return read_relation(in); },
                [](std::ostream& os, const PresentationRelation& r) { write_relation(os, r); });
  for (const char* s : {"p1.cover", "two_disks.cover"}) {
    auto c = read_cover_file(oracle::fixture(s));
    std::ostringstream os;
    write_cover(os, c);
    std::istringstream in(os.str());
    EXPECT_EQ(read_cover(in), c) << s;
  }
}

TEST(Fixtures, SystemValues) {
  auto in = text::open_input(oracle::fixture("logtype.sys"));
  auto sys = read_system(in);
  EXPECT_EQ(sys.dim(), 2);
  EXPECT_TRUE(sys.at(0, 0).is_zero());
  EXPECT_EQ(sys.at(0, 1).coeff({17}), Scalar(1));
}

TEST(Fixtures, CoverValues) {
  auto c = read_cover_file(oracle::fixture("p1.cover"));
  ASSERT_EQ(c.charts.size(), 2u);
  ASSERT_EQ(c.overlaps.size(), 1u);
  EXPECT_EQ(c.prime, 3);
  const auto& o = c.overlaps[0];
  ASSERT_EQ(o.maps.size(), 2u);
  EXPECT_EQ(o.maps[1].exponents, (MultiIndex{-1}));
  EXPECT_EQ(text::monomial_str(o.maps[1], o.vars), "u^-1");
  MapLine m = text::parse_monomial("-3/2*u^2*v", {"u", "v"}, 1);
  EXPECT_EQ(m.coeff, Scalar(-3, 2));
  EXPECT_EQ(m.exponents, (MultiIndex{2, 1}));
  EXPECT_EQ(text::monomial_str(m, {"u", "v"}), "-3/2*u^2*v");
}

TEST(Fixtures, ErrorFilesAreRejected) {
  namespace fs = std::filesystem;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(oracle::fixture("errors"))) {
    const auto path = entry.path().string();
    const auto ext = entry.path().extension().string();
    auto attempt = [&] {
      auto in = text::open_input(path);
      if (ext == ".series") {
        auto f = read_series(in);
        // semantic failure: Laurent terms given to a disk class
        (void)membership(f, {ClassKind::tempered}, 8);
      } else if (ext == ".sys") {
        auto sys = read_system(in);
        (void)cauchy_solve(sys, max_solution_order(sys) + 1);
      } else if (ext == ".pres") {
        (void)read_presentation(in);
      } else if (ext == ".rel") {
        (void)read_relation(in);
      } else if (ext == ".cover") {
        (void)cech_de_rham(instantiate_cover(read_cover(in), 6));
      }
    };
    EXPECT_ANY_THROW(attempt()) << path;
    ++seen;
  }
  EXPECT_GE(seen, 15);
}
