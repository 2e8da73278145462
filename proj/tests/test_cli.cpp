#include <gtest/gtest.h>

#include <sstream>

#include "nevlab/cli.hpp"
#include "nevlab/io.hpp"

using namespace nevlab;

namespace {

const std::string kData = NEVLAB_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "nevlab");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

}  // namespace

TEST(Cli, TfrMatchesClosedForm) {
  const auto r = cli({"tfr", "--curve", data("line.json"), "--rmin", "1", "--rmax", "10", "--grid", "64"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "r,value,label");
  int rows = 0;
  while (std::getline(in, line)) {
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double rr = std::stod(line.substr(0, c1));
    const double v = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    EXPECT_NEAR(v, 0.5 * std::log(1 + rr * rr), 1e-9);
    EXPECT_EQ(line.substr(c2 + 1), "T");
    ++rows;
  }
  EXPECT_EQ(rows, 64);
}

TEST(Cli, DegreeBoundJson) {
  const auto r = cli({"degree-bound", "--n", "2", "--c", "3", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["r0"], "19602");
  EXPECT_EQ(j["threshold"], "215677");
  EXPECT_EQ(j["degree_bound"], "14348907/32");
  ASSERT_EQ(j["checks"].size(), 4u);
  EXPECT_TRUE(j["checks"][0]["pass"].get<bool>());
  EXPECT_TRUE(j["checks"][1]["pass"].get<bool>());
  EXPECT_FALSE(j["checks"][2]["pass"].get<bool>());
  EXPECT_TRUE(j["checks"][3]["pass"].get<bool>());
  EXPECT_EQ(j["alpha"]["alpha_min"], "1");
}

TEST(Cli, SmtCartanOnExp) {
  const auto r = cli({"smt", "--cartan", "--curve", data("exp.json"), "--divisor", data("three_points.json"), "--rmin",
                      "2", "--rmax", "30", "--grid", "29", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rep = smt_report_from_json(Json::parse(r.out)["report"]);
  EXPECT_TRUE(rep.tail_clean);
}

TEST(Cli, JsonRoundTrip) {
  const auto r = cli({"smt", "--cartan", "--curve", data("conic.json"), "--divisor", data("five_lines.json"), "--rmin",
                      "2", "--rmax", "12", "--grid", "8", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out)["report"];
  EXPECT_EQ(to_json(smt_report_from_json(j)), j);

  const auto d = cli({"defect", "--curve", data("exp.json"), "--divisor", data("x1.json"), "--rmin", "2", "--rmax",
                      "20", "--grid", "10", "--format", "json"});
  ASSERT_EQ(d.code, 0) << d.err;
  const auto e = Json::parse(d.out)["estimates"][0]["estimate"];
  EXPECT_EQ(to_json(defect_estimate_from_json(e)), e);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"count", "--curve", data("exp.json"), "--divisor", data("x0_plus_x1.json"),
                                      "--rmax", "15", "--grid", "8", "--trunc", "1", "--format", "json"};
  const auto a = cli(args);
  const auto b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, PrecisionFlag) {
  const auto r = cli({"tfr", "--curve", data("line.json"), "--grid", "8", "--precision", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("0.346574,T"), std::string::npos) << r.out;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"tfr", "--curve", data("missing.json")}).code, kExitUsage);
  EXPECT_EQ(cli({"bogus"}).code, kExitUsage);
  EXPECT_EQ(cli({"tfr", "--curve", data("line.json"), "--rmin", "0.5"}).code, kExitHypothesis);
  EXPECT_EQ(cli({"tfr", "--curve", data("line.json"), "--grid", "4"}).code, kExitHypothesis);
  // zero of e^z + 1 at i pi sits on the scan circle
  const auto b = cli({"count", "--curve", data("exp.json"), "--divisor", data("x0_plus_x1.json"), "--rmax",
                      "3.14159265358979323846"});
  EXPECT_EQ(b.code, kExitNumeric) << b.err;
  EXPECT_NE(b.err.find("BoundaryZero"), std::string::npos);
  const auto h = cli({"defect", "--curve", data("quadric.json"), "--divisor", data("x1.json"), "--rmin", "2", "--rmax",
                      "20", "--mu", "2"});
  EXPECT_EQ(h.code, kExitHypothesis);
  EXPECT_NE(h.err.find("MultiplicityHypothesisFailed"), std::string::npos);
  EXPECT_TRUE(h.out.empty());
}

TEST(Cli, LogLemmaSweep) {
  const auto r = cli({"loglemma", "--phi", "z^3 - 1", "--t", "0.2", "--p", "0.5", "--rmin", "2", "--rmax", "21",
                      "--grid", "20", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["ratio"]["values"].size(), 20u);
  EXPECT_EQ(j["R"]["values"][0], 3.0);
}

TEST(Cli, JetDiffFileParses) {
  const auto P = jetdiff_from_json(load_json(data("log_wronskian.json")));
  EXPECT_EQ(P.k, 1u);
  EXPECT_EQ(P.twist.a, -1);
  EXPECT_EQ(P.log_components, std::vector<unsigned>{1});
}

TEST(Cli, CurveSchemaErrors) {
  try {
    curve_from_json(Json::parse(R"({"n": 1, "coords": ["1"]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DimensionMismatch);
  }
  try {
    curve_from_json(Json::parse(R"({"coords": ["1", "z"]})"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParseError);
  }
}
