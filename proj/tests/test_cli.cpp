#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "invdom/cli.hpp"
#include "invdom/io.hpp"
#include "oracles.hpp"
#include "testing.hpp"
#include "json.hpp"

using namespace invdom;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("invdom_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "invdom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    out_.str("");
    err_.str("");
    return run_cli(static_cast<int>(argv.size()), argv.data(), out_, err_);
  }

  std::string write(const std::string& name, const std::string& text) {
    write_text_file_atomic(path(name), text);
    return path(name);
  }

  std::string constant_sigma(const std::string& name, const std::string& op, double v) {
    SigmaTable t;
    t.op = op;
    t.data.push_back({1, theta_grid(t.n_theta), std::vector<double>(t.n_theta, v)});
    return write(name, format_sigma_table(t));
  }

  std::filesystem::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(Cli, ForwardMembraneDisk) {
  const auto dom = write("disk.json", R"({"a0": 1.0})");
  ASSERT_EQ(run({"forward", "--domain", dom, "--jmax", "2", "--spacing", "0.02", "--out", path("s.tsv")}), 0)
      << err_.str();
  const SigmaTable t = parse_sigma_table(read_text_file(path("s.tsv")));
  ASSERT_EQ(t.data.size(), 2u);
  EXPECT_EQ(t.op, "membrane");
  for (double v : t.data[0].sigma) EXPECT_NEAR(v, 1.0 / oracle::pi, 0.02 / oracle::pi);
}

TEST_F(Cli, ForwardPlateDisk) {
  const auto dom = write("disk.json", R"({"a0": 1.0})");
  ASSERT_EQ(run({"forward", "--domain", dom, "--operator", "plate", "--jmax", "1", "--spacing", "0.02", "--out",
                 path("s.tsv")}),
            0)
      << err_.str();
  const SigmaTable t = parse_sigma_table(read_text_file(path("s.tsv")));
  EXPECT_EQ(t.op, "plate");
  for (double v : t.data[0].sigma) EXPECT_NEAR(v, 2.0 / oracle::pi, 0.04 / oracle::pi);
}

TEST_F(Cli, BadInputExitsTwo) {
  const auto bad = write("bad.json", R"({"a0": 1.0, "modes": [{"k": "two", "a": 0.1, "b": 0}]})");
  EXPECT_EQ(run({"forward", "--domain", bad, "--out", path("s.tsv")}), 2);
  EXPECT_NE(err_.str().find("k"), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(path("s.tsv")));
  EXPECT_EQ(run({"forward", "--domain", path("missing.json"), "--out", path("s.tsv")}), 2);
  EXPECT_EQ(run({"forward"}), 2);
  EXPECT_EQ(run({"nonsense"}), 2);
  const auto dom = write("disk.json", R"({"a0": 1.0})");
  EXPECT_EQ(run({"forward", "--domain", dom, "--c", "1", "--out", path("s.tsv")}), 2);
  EXPECT_NE(err_.str().find("OriginInsideDomain"), std::string::npos);
}

TEST_F(Cli, InvertDiskTable) {
  const auto sig = constant_sigma("disk.tsv", "membrane", 1.0 / oracle::pi);
  ASSERT_EQ(run({"invert", "--sigma", sig, "--basis-order", "0", "--out", path("inv.json")}), 0) << err_.str();
  const auto j = nlohmann::json::parse(read_text_file(path("inv.json")));
  ASSERT_EQ(j.at("solutions").size(), 1u);
  EXPECT_NEAR(j["solutions"][0]["alpha"][0].get<double>(), 1.0, 1e-6);
  EXPECT_TRUE(std::filesystem::exists(path("inv.json.polyline.tsv")));
}

TEST_F(Cli, InvertPlateTable) {
  const double r = 1.3;
  const auto sig = constant_sigma("plate.tsv", "plate", 2.0 / (oracle::pi * r * r));
  ASSERT_EQ(run({"invert", "--sigma", sig, "--basis-order", "0", "--rhs", "4", "--out", path("inv.json")}), 0);
  const auto j = nlohmann::json::parse(read_text_file(path("inv.json")));
  EXPECT_NEAR(j["solutions"][0]["alpha"][0].get<double>(), r, 1e-6);
  EXPECT_EQ(run({"invert", "--sigma", sig, "--rhs", "2", "--out", path("inv2.json")}), 2);
}

TEST_F(Cli, InvertZeroTableHasNoSolution) {
  const auto sig = constant_sigma("zero.tsv", "membrane", 0.0);
  EXPECT_EQ(run({"invert", "--sigma", sig, "--basis-order", "1", "--out", path("inv.json")}), 4);
  const auto j = nlohmann::json::parse(read_text_file(path("inv.json")));
  EXPECT_TRUE(j.at("solutions").empty());
}

TEST_F(Cli, InvertIsReproducible) {
  const auto sig = constant_sigma("disk.tsv", "membrane", 1.0 / oracle::pi);
  ASSERT_EQ(run({"invert", "--sigma", sig, "--basis-order", "2", "--seed", "7", "--out", path("a.json")}), 0);
  ASSERT_EQ(run({"invert", "--sigma", sig, "--basis-order", "2", "--seed", "7", "--out", path("b.json")}), 0);
  EXPECT_EQ(read_text_file(path("a.json")), read_text_file(path("b.json")));
  EXPECT_EQ(read_text_file(path("a.json.polyline.tsv")), read_text_file(path("b.json.polyline.tsv")));
}

TEST_F(Cli, VerifyIntervalAndQuadrature) {
  ASSERT_EQ(run({"verify", "--identities", "interval-endpoint,additivity,mixed-symmetry", "--interval", "0,1", "--out",
                 path("r.tsv")}),
            0)
      << out_.str() << err_.str();
  const std::string rep = read_text_file(path("r.tsv"));
  EXPECT_NE(rep.find("interval-endpoint"), std::string::npos);
  EXPECT_NE(rep.find("additivity"), std::string::npos);
  EXPECT_EQ(run({"verify", "--identities", "bogus", "--out", path("r2.tsv")}), 2);
  EXPECT_EQ(run({"verify", "--identities", "interval-endpoint", "--tolerance-profile", "sloppy", "--out",
                 path("r3.tsv")}),
            2);
}

TEST_F(Cli, VerifyDiskBasicRelationConverges) {
  ASSERT_EQ(run({"verify", "--identities", "basic-relation", "--resolutions", "0.04,0.02", "--jmax", "1", "--out",
                 path("r.tsv")}),
            0);
  std::istringstream is(read_text_file(path("r.tsv")));
  std::string line;
  std::getline(is, line);
  std::vector<double> res;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string f;
    std::vector<std::string> cols;
    while (std::getline(ls, f, '\t')) cols.push_back(f);
    res.push_back(std::abs(std::stod(cols.at(5))));
  }
  ASSERT_EQ(res.size(), 2u);
  EXPECT_LT(res[1], res[0]);
}

TEST_F(Cli, ConvertAndSweep) {
  std::ostringstream locus;
  locus.precision(17);
  for (int i = 0; i < 200; ++i) {
    const double t = 2.0 * oracle::pi * i / 200.0;
    locus << 2.0 * std::cos(t) << " " << 2.0 * std::sin(t) << " " << 1.0 / (4.0 * oracle::pi) << "\n";
  }
  const auto src = write("locus.txt", locus.str());
  ASSERT_EQ(run({"convert", "--samples", src, "--ntheta", "64", "--out", path("c.tsv")}), 0) << err_.str();
  const SigmaTable t = parse_sigma_table(read_text_file(path("c.tsv")));
  EXPECT_EQ(t.n_theta, 64u);
  for (double v : t.data[0].sigma) EXPECT_NEAR(v, 1.0 / (4.0 * oracle::pi), 1e-12);

  ASSERT_EQ(run({"sweep-1d", "--b-values", "1", "--c-values", "0,2", "--jmax", "2", "--out", path("w.tsv")}), 0);
  std::istringstream is(read_text_file(path("w.tsv")));
  std::string line;
  int rows = -1;
  while (std::getline(is, line)) ++rows;
  EXPECT_EQ(rows, 4);
}
