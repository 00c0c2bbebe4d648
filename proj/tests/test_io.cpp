#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include "invdom/io.hpp"
#include "oracles.hpp"
#include "testing.hpp"

using namespace invdom;

namespace {

std::string message_of(const std::string& spec) {
  try {
    parse_domain_spec(spec);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

SigmaTable constant_table(std::size_t n, double v) {
  SigmaTable t;
  t.n_theta = n;
  t.lambdas = {5.78};
  t.data.push_back({1, theta_grid(n), std::vector<double>(n, v)});
  return t;
}

std::vector<LocusSample> circle_locus(double r, std::size_t n, bool clockwise,
                                      double (*s)(double, double)) {
  std::vector<LocusSample> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (clockwise ? -1.0 : 1.0) * 2.0 * oracle::pi * (i + 0.5) / n;
    const Point x{r * std::cos(t), r * std::sin(t)};
    out.push_back({x, {s(x.x, x.y)}});
  }
  return out;
}

}  // namespace

TEST(DomainSpec, ParsesAndRoundTrips) {
  const auto d = parse_domain_spec(R"({"a0": 1.0, "modes": [{"k": 2, "a": 0.2, "b": 0.0}], "ntheta": 256})");
  EXPECT_DOUBLE_EQ(d.support.a0(), 1.0);
  EXPECT_DOUBLE_EQ(d.support.mode(2).a, 0.2);
  EXPECT_EQ(d.n_theta, 256u);
  const auto again = parse_domain_spec(format_domain_spec(d));
  EXPECT_DOUBLE_EQ(again.support.mode(2).a, 0.2);
  EXPECT_EQ(again.n_theta, 256u);
  EXPECT_EQ(parse_domain_spec(R"({"a0": 2})").n_theta, kDefaultNTheta);
}

TEST(DomainSpec, ErrorsNameTheField) {
  EXPECT_ERROR_KIND(parse_domain_spec("{not json"), InvalidInput);
  EXPECT_NE(message_of(R"({"modes": []})").find("a0"), std::string::npos);
  EXPECT_NE(message_of(R"({"a0": "one"})").find("a0"), std::string::npos);
  EXPECT_NE(message_of(R"({"a0": 1, "modes": [{"k": 0, "a": 1, "b": 0}]})").find("k"), std::string::npos);
  EXPECT_NE(message_of(R"({"a0": 1, "modes": [{"k": 2, "a": [0.1]}]})").find("modes[0].a"), std::string::npos);
  // Omitted coefficients are zero.
  EXPECT_DOUBLE_EQ(parse_domain_spec(R"({"a0": 1, "modes": [{"k": 2, "b": 0.1}]})").support.mode(2).a, 0.0);
  EXPECT_NE(message_of(R"({"a0": 1, "ntheta": 3})").find("ntheta"), std::string::npos);
  EXPECT_ERROR_KIND(parse_domain_spec(R"({"a0": 1, "modes": [{"k": 2, "a": 0.5, "b": 0}]})"), ConvexityViolation);
}

TEST(SigmaTable, RoundTripExact) {
  SigmaTable t = constant_table(64, 1.0 / oracle::pi);
  t.op = "plate";
  t.c = 0.0;
  t.data.push_back({2, theta_grid(64), std::vector<double>(64, 0.123456789012345678)});
  const SigmaTable u = parse_sigma_table(format_sigma_table(t));
  EXPECT_EQ(u.op, "plate");
  EXPECT_EQ(u.n_theta, 64u);
  ASSERT_EQ(u.data.size(), 2u);
  EXPECT_EQ(u.data[1].sigma, t.data[1].sigma);
  EXPECT_EQ(u.data[0].thetas, t.data[0].thetas);
  EXPECT_EQ(u.lambdas, t.lambdas);
  EXPECT_EQ(format_sigma_table(u), format_sigma_table(t));
}

TEST(SigmaTable, RejectsBadInput) {
  const std::string good = format_sigma_table(constant_table(16, 0.3));
  // negative sigma
  std::string neg = good;
  neg.replace(neg.rfind("0.29999"), 3, "-0.");
  EXPECT_ERROR_KIND(parse_sigma_table(neg), InvalidInput);
  // missing row
  const std::string cut = good.substr(0, good.rfind("1\t"));
  EXPECT_ERROR_KIND(parse_sigma_table(cut), InvalidInput);
  // missing metadata
  EXPECT_ERROR_KIND(parse_sigma_table(good.substr(good.find('\n') + 1)), InvalidInput);
  EXPECT_ERROR_KIND(parse_sigma_table(good + "1\tabc\t0.3\n"), InvalidInput);
}

TEST(Report, HeaderAndSignedResiduals) {
  const std::string s = format_report({{"basic-relation", "disk", 1, 1.99, 2.0, -0.01, 0.01, 0.05, true}});
  std::istringstream is(s);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_NE(header.find("identity"), std::string::npos);
  EXPECT_NE(header.find("residual"), std::string::npos);
  EXPECT_NE(row.find("basic-relation"), std::string::npos);
  EXPECT_NE(row.find("-0.01"), std::string::npos);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "invdom_io_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "out.txt").string();
  write_text_file_atomic(path, "first\n");
  write_text_file_atomic(path, "second\n");
  EXPECT_EQ(read_text_file(path), "second\n");
  for (const auto& e : std::filesystem::directory_iterator(dir)) EXPECT_EQ(e.path().filename(), "out.txt");
  std::filesystem::remove_all(dir);
  EXPECT_ERROR_KIND(read_text_file((dir / "missing").string()), InvalidInput);
}

TEST(Extension, Names) {
  for (auto m : {ExtensionMode::None, ExtensionMode::DegreeMinus2, ExtensionMode::ConstantRay}) {
    EXPECT_EQ(parse_extension_mode(to_string(m)), m);
  }
  EXPECT_ERROR_KIND(parse_extension_mode("linear"), InvalidInput);
}

TEST(Convert, ConstantOnUnitCircle) {
  const auto samples = circle_locus(1.0, 360, false, [](double, double) { return 1.0 / oracle::pi; });
  const SigmaTable t = convert_pointwise_to_directional(samples, 128, ExtensionMode::None);
  ASSERT_EQ(t.data.size(), 1u);
  for (double v : t.data[0].sigma) EXPECT_NEAR(v, 1.0 / oracle::pi, 1e-12);
  EXPECT_EQ(t.extension, "none");
}

TEST(Convert, InverseSquareOnRadiusTwo) {
  const auto s = [](double x, double y) { return 1.0 / (oracle::pi * (x * x + y * y)); };
  for (bool cw : {false, true}) {
    const auto samples = circle_locus(2.0, 400, cw, s);
    const SigmaTable t = convert_pointwise_to_directional(samples, 64, ExtensionMode::DegreeMinus2);
    for (double v : t.data[0].sigma) EXPECT_NEAR(v, 1.0 / (4.0 * oracle::pi), 1e-12);
    EXPECT_EQ(t.extension, "degree-2");
  }
}

TEST(Convert, FollowsTheNormalNotThePoint) {
  // Ellipse x = 2 cos t, y = sin t; s = x + 3. At normal angle 0 the point is (2, 0).
  std::vector<LocusSample> samples;
  for (int i = 0; i < 2000; ++i) {
    const double t = 2.0 * oracle::pi * i / 2000.0;
    samples.push_back({{2.0 * std::cos(t), std::sin(t)}, {2.0 * std::cos(t) + 3.0}});
  }
  const SigmaTable tab = convert_pointwise_to_directional(samples, 8, ExtensionMode::None);
  EXPECT_NEAR(tab.data[0].sigma[0], 5.0, 1e-4);
  EXPECT_NEAR(tab.data[0].sigma[4], 1.0, 1e-4);
  // Normal angle pi/4 on the ellipse: the point is (4 / sqrt 5, 1 / sqrt 5).
  EXPECT_NEAR(tab.data[0].sigma[1], 3.0 + 4.0 / std::sqrt(5.0), 1e-4);
}

TEST(Convert, FlatEdgeRejected) {
  // Square locus: collinear runs have no unique normal.
  std::vector<LocusSample> samples;
  for (int i = 0; i < 10; ++i) samples.push_back({{-1.0 + 0.2 * i, -1.0}, {0.1}});
  for (int i = 0; i < 10; ++i) samples.push_back({{1.0, -1.0 + 0.2 * i}, {0.1}});
  for (int i = 0; i < 10; ++i) samples.push_back({{1.0 - 0.2 * i, 1.0}, {0.1}});
  for (int i = 0; i < 10; ++i) samples.push_back({{-1.0, 1.0 - 0.2 * i}, {0.1}});
  EXPECT_ERROR_KIND(convert_pointwise_to_directional(samples, 64, ExtensionMode::None), NonMonotoneNormals);
}

TEST(Convert, ParseLocusText) {
  const auto s = parse_locus_samples("# x y s1 s2\n1 0 0.5 0.25\n0 1 0.5 0.25  # note\n\n-1 0 0.5 0.25\n");
  ASSERT_EQ(s.size(), 3u);
  EXPECT_DOUBLE_EQ(s[1].x.y, 1.0);
  EXPECT_EQ(s[2].values.size(), 2u);
  EXPECT_ERROR_KIND(parse_locus_samples("1 0\n"), InvalidInput);
}
