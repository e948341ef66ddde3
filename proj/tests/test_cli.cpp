#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gburn/cli.hpp"

using namespace gburn;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream o, e;
  int c = cli::run(args, o, e);
  return {c, o.str(), e.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("gburn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& f) const { return (dir_ / f).string(); }
  static Json read_json(const std::string& p) {
    std::ifstream f(p);
    return Json::parse(f);
  }
  static std::string slurp(const std::string& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenErdosRenyi) {
  auto r = run({"gen", "er", "--n", "9", "--p", "0.333", "--seed", "7", "-o", path("g.edges")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto side = read_json(path("g.edges.json"));
  EXPECT_EQ(side["n"], 9);
  EXPECT_EQ(side["family"], "er");
  EXPECT_EQ(side["seed"], 7);
  EXPECT_EQ(load_graph(path("g.edges")).num_vertices(), 9u);
}

TEST_F(CliTest, GenGridAndGeometric) {
  ASSERT_EQ(run({"gen", "grid", "--rows", "50", "--cols", "50", "-o", path("grid.edges")}).code, 0);
  EXPECT_EQ(read_json(path("grid.edges.json"))["m"], 4900);
  ASSERT_EQ(run({"gen", "geo", "--n", "15", "--r", "0.45", "--seed", "1", "-o", path("geo.edges")}).code, 0);
  EXPECT_EQ(read_json(path("geo.edges.json"))["parameters"]["r"], 0.45);
}

TEST_F(CliTest, GenBadSpecIsUsage) {
  EXPECT_EQ(run({"gen", "er", "--n", "9", "-o", path("x")}).code, 2);
  EXPECT_EQ(run({"gen", "blob", "--n", "9"}).code, 2);
  EXPECT_EQ(run({"gen", "path", "--n", "9", "--rows", "3"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, EmitManifests) {
  auto r = run({"emit", "cov-csp", "--gen", "path:n=9", "--g", "3", "-o", path("m.lp")});
  ASSERT_EQ(r.code, 0) << r.err;
  auto m = read_json(path("m.lp.json"));
  EXPECT_EQ(m["variables"], 27);
  EXPECT_EQ(m["constraints"], 12);
  EXPECT_TRUE(m["counts_match"].get<bool>());

  ASSERT_EQ(run({"emit", "squbo", "--gen", "path:n=9", "--g", "3", "-o", path("s.qubo")}).code, 0);
  EXPECT_EQ(read_json(path("s.qubo.json"))["dim"], 45);
  ASSERT_EQ(run({"emit", "gbp-ilp", "--gen", "path:n=9", "--U", "5", "-o", path("b.lp")}).code, 0);
  EXPECT_EQ(read_json(path("b.lp.json"))["variables"], 45);
  ASSERT_EQ(run({"emit", "uqubo", "--gen", "path:n=9", "--g", "3", "--penalties", "uniform", "-o", path("u.qubo")}).code, 0);
  auto u = read_json(path("u.qubo.json"));
  EXPECT_EQ(u["dim"], 27);
  EXPECT_EQ(u["penalties"]["lambda2"][0], "1/2");
}

TEST_F(CliTest, EmitMissingParameterIsUsage) {
  EXPECT_EQ(run({"emit", "cov-csp", "--gen", "path:n=9"}).code, 2);
  EXPECT_EQ(run({"emit", "prop-milp", "--gen", "path:n=9", "--g", "3"}).code, 2);
  EXPECT_EQ(run({"emit", "cov-csp", "--g", "3"}).code, 2);  // no graph
}

TEST_F(CliTest, EmitIsByteStable) {
  for (const char* f : {"a", "b"})
    ASSERT_EQ(run({"emit", "prop-milp", "--gen", "grid:rows=3,cols=3", "--U", "auto", "-o", path(std::string(f) + ".lp")}).code, 0);
  EXPECT_EQ(slurp(path("a.lp")), slurp(path("b.lp")));
}

TEST_F(CliTest, SolveMethods) {
  auto o = run({"solve", "--gen", "path:n=9", "--method", "oracle"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(Json::parse(o.out)["burning_number"], 3);

  auto b = run({"solve", "--gen", "path:n=49", "--method", "binary-search:cmcp"});
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(Json::parse(b.out)["burning_number"], 7);

  auto rg = run({"solve", "--gen", "path:n=9", "--method", "row-generation", "--U", "auto"});
  ASSERT_EQ(rg.code, 0) << rg.err;
  auto j = Json::parse(rg.out);
  EXPECT_EQ(j["burning_number"], 3);
  EXPECT_EQ(j["objective"], 3);
  EXPECT_TRUE(j.contains("cc"));

  auto d = run({"solve", "--gen", "path:n=9", "--method", "direct:gbp-ilp", "--U", "5", "-o", path("r.json")});
  ASSERT_EQ(d.code, 0) << d.err;
  EXPECT_EQ(read_json(path("r.json"))["objective"], 3);
}

TEST_F(CliTest, SolveExitCodes) {
  // SA cannot certify: upper-bound-only -> 1
  EXPECT_EQ(run({"solve", "--gen", "path:n=9", "--method", "binary-search:squbo", "--backend", "sa"}).code, 1);
  // infeasible direct model -> 1
  EXPECT_EQ(run({"solve", "--gen", "path:n=5", "--method", "direct:cov-csp", "--g", "2"}).code, 1);
  // capacity
  EXPECT_EQ(run({"solve", "--gen", "path:n=20", "--method", "oracle"}).code, 3);
  EXPECT_EQ(run({"solve", "--gen", "path:n=9", "--method", "direct:squbo", "--g", "3"}).code, 3);
  // usage
  EXPECT_EQ(run({"solve", "--gen", "path:n=9", "--method", "magic"}).code, 2);
  EXPECT_EQ(run({"solve", "--gen", "path:n=9", "--method", "binary-search:cmcp", "--backend", "sa"}).code, 2);
  EXPECT_EQ(run({"solve", "--graph", path("missing.edges")}).code, 2);
  // backend failure
  EXPECT_EQ(run({"solve", "--gen", "path:n=9", "--method", "binary-search:cov-csp", "--backend", "external",
                 "--external-cmd", "/bin/false {in} {out}"})
                .code,
            4);
}

TEST_F(CliTest, ValidateVerdicts) {
  std::ofstream(path("p5.edges")) << "1 2\n2 3\n3 4\n4 5\n";
  auto ok = run({"validate", "--graph", path("p5.edges"), "--seq", "1,5,3"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.substr(0, 5), "valid");
  auto bad = run({"validate", "--graph", path("p5.edges"), "--seq", "1 2", "--json"});
  EXPECT_EQ(bad.code, 1);
  auto j = Json::parse(bad.out);
  EXPECT_FALSE(j["valid"].get<bool>());
  EXPECT_EQ(j["uncovered"], Json::parse("[3,4,5]"));
  EXPECT_EQ(run({"validate", "--graph", path("p5.edges"), "--seq", ""}).code, 1);
  EXPECT_EQ(run({"validate", "--graph", path("p5.edges"), "--seq", "1,9"}).code, 2);
  std::ofstream(path("s.json")) << "[3, 2, 3]";
  EXPECT_EQ(run({"validate", "--graph", path("p5.edges"), "--sequence", path("s.json")}).code, 0);
}

// Any witness solve prints passes validate.
TEST_F(CliTest, SolveAndValidateCompose) {
  for (const char* spec : {"er:n=10,p=0.2,seed=3", "grid:rows=4,cols=5", "geo:n=12,r=0.3,seed=2"}) {
    auto s = run({"solve", "--gen", spec, "--method", "binary-search:cov-ilp"});
    ASSERT_EQ(s.code, 0) << s.err;
    auto w = Json::parse(s.out)["witness"];
    std::ofstream(path("w.json")) << w.dump();
    EXPECT_EQ(run({"validate", "--gen", spec, "--sequence", path("w.json")}).code, 0) << spec;
  }
}

TEST_F(CliTest, BenchTsvAndReplay) {
  std::vector<std::string> args{"bench", "--n", "7", "--reps", "4", "--params", "2/n,5/n", "--methods",
                                "uqubo-guided,cmcp", "--jobs", "3"};
  auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("p\tuqubo-guided_%\tcmcp_%\tmean_components"), std::string::npos);
  auto j = run({"bench", "--n", "7", "--reps", "2", "--params", "3/n", "--format", "json"});
  ASSERT_EQ(j.code, 0);
  EXPECT_EQ(Json::parse(j.out)["cells"][0]["instances"].size(), 2u);
  EXPECT_EQ(run({"bench", "--reps", "0"}).code, 2);
  EXPECT_EQ(run({"bench", "--n", "20"}).code, 2);
}
