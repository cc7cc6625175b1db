#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "contract.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = tempered::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string f(const std::string& name) { return oracle::fixture(name); }

}  // namespace

TEST(Cli, NormOfLogSeries) {
  auto r = run({"norm", "--input", f("log_series.series"), "--weight", "1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "8/9\n");
}

TEST(Cli, DerhamDiskCsv) {
  auto r = run({"derham", "--algebra", "tempered-disk", "--trunc", "16"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0,1\n1,0\n");
}

TEST(Cli, CechProjectiveLine) {
  auto r = run({"cech", "--cover", f("p1.cover"), "--trunc", "8"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "0,1\n1,0\n2,1\n");
}

TEST(Cli, SweepPrependsN) {
  auto r = run({"derham", "--algebra", "tempered-disk", "--trunc-sweep", "8,16"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "8,0,1\n8,1,0\n16,0,1\n16,1,0\n");
}

TEST(Cli, TransferVerdicts) {
  auto geo = run({"transfer", "--input", f("geometric.sys"), "--format", "csv"});
  EXPECT_EQ(geo.out, "0,0,1,transfer consistent\n");
  auto ex = run({"transfer", "--input", f("exp.sys"), "--format", "csv"});
  EXPECT_EQ(ex.out, "exceeds n_max,exceeds n_max,1,hypothesis of transfer theorem not met\n");
}

TEST(Cli, OutputFileRoundTrips) {
  auto path = (std::filesystem::temp_directory_path() / "tempered_cli_tau.series").string();
  auto r = run({"tau", "--input", f("geometric.series"), "--trunc", "3", "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto tau = tempered::read_series_file(path);
  EXPECT_EQ(tau.spec().var(1).name, "w");
  EXPECT_EQ(tau.coeff({2, 3}), tempered::Scalar(10));  // C(5, 3) * a_5
  std::remove(path.c_str());
}

TEST(Cli, KoszulOutputReparses) {
  auto path = (std::filesystem::temp_directory_path() / "tempered_cli_kv.kv").string();
  auto r = run({"koszul-reduce", "--input", f("coordinate.pres"), "--vector", f("phi_inverse_p.kv"), "--output", path});
  ASSERT_EQ(r.code, 0) << r.err;
  auto in = tempered::text::open_input(path);
  auto d = tempered::read_koszul_vector(in);
  for (const auto& c : d) EXPECT_TRUE(c.is_zero());
  EXPECT_NE(r.out.find("residual zero: yes"), std::string::npos);
  std::remove(path.c_str());
}

TEST(Cli, ExitCodeContract) {
  auto cases = contract::load();
  ASSERT_GE(cases.size(), 40u);
  for (const auto& c : cases) {
    auto r = run(c.args);
    EXPECT_EQ(r.code, c.expected) << c.line << "\n" << r.err;
    if (c.expected != 0) {
      EXPECT_FALSE(r.err.empty()) << c.line;
    }
  }
}
