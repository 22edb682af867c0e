#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "nilaffine/cli.hpp"
#include "support.hpp"

using namespace nilaffine;
using namespace testing_support;
using nilaffine::io::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string c(const std::string& rel) { return corpus(rel).string(); }

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("nilaffine_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                              ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, CatalogList) {
  auto r = run({"catalog", "list"});
  EXPECT_EQ(r.code, 0);
  auto j = json::parse(run({"--json", "catalog", "list"}).out);
  EXPECT_EQ(j["algebras"].size(), 12u);
}

TEST(Cli, CatalogShow) {
  auto r = run({"catalog", "show", "h3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("[X1,X2]=X3"), std::string::npos);
  EXPECT_EQ(run({"catalog", "show", "nope"}).code, 3);
}

TEST(Cli, ExportThenCheckLie) {
  TempDir dir;
  EXPECT_EQ(run({"--quiet", "catalog", "export", "g6_18", dir.file("g.json")}).code, 0);
  auto r = run({"check-lie", dir.file("g.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("two-step solvable: no"), std::string::npos);
}

TEST(Cli, CheckLieReportsViolatedTriple) {
  TempDir dir;
  io::write_text(dir.file("bad.json"),
                 R"({"name":"bad","dim":6,"brackets":[{"i":1,"j":2,"terms":[{"k":3,"c":1}]},{"i":1,"j":3,"terms":[{"k":4,"c":1}]},)"
                 R"({"i":1,"j":4,"terms":[{"k":5,"c":1}]},{"i":2,"j":5,"terms":[{"k":6,"c":1}]},{"i":3,"j":4,"terms":[{"k":6,"c":1}]}]})");
  auto r = run({"check-lie", dir.file("bad.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("Jac(1,2,4)"), std::string::npos) << r.out;
  auto j = json::parse(run({"--json", "check-lie", dir.file("bad.json")}).out);
  EXPECT_EQ(j["jacobi"]["violations"][0]["triple"], json({1, 2, 4}));
  EXPECT_EQ(run({"obstruct-abelian", dir.file("bad.json")}).code, 3);
}

TEST(Cli, Derivations) {
  auto j = json::parse(run({"--json", "derivations", "g6_18"}).out);
  EXPECT_EQ(j["derivation_dim"], 9);
  EXPECT_EQ(j["basis"].size(), 9u);
}

TEST(Cli, CheckRepOnCorpus) {
  for (const auto& f : corpus_reps()) EXPECT_EQ(run({"--quiet", "check-rep", c(f)}).code, 0) << f;
}

TEST(Cli, ObstructG618) {
  auto r = run({"obstruct-abelian", c("algebras/g6_18.json")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("eps_41 = 1/2"), std::string::npos);
  EXPECT_NE(r.out.find("of [D1,D2]"), std::string::npos);
  auto j = json::parse(run({"--json", "obstruct-abelian", "g6_18"}).out);
  EXPECT_EQ(j["verdict"], "Obstructed");
  EXPECT_EQ(j["certificate"]["type"], "commutator");
  EXPECT_EQ(j["certificate"]["pair"], json({1, 2}));
  EXPECT_EQ(j["verified"], true);
}

TEST(Cli, ObstructFoundWritesWitness) {
  TempDir dir;
  auto r = run({"--quiet", "obstruct-abelian", "f4", "--write-witness", dir.file("w")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(run({"--quiet", "check-rep", dir.file("w/rep.json")}).code, 0);
  EXPECT_EQ(run({"--quiet", "check-lr", dir.file("w/lr.json")}).code, 0);
}

TEST(Cli, ObstructRejectsIrrationalAlgebra) {
  TempDir dir;
  io::write_text(dir.file("q.json"), R"({"name":"q","dim":2,"d":3,"brackets":[]})");
  auto r = run({"obstruct-abelian", dir.file("q.json")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("d = 1"), std::string::npos);
}

TEST(Cli, RepLRRoundTripThroughFiles) {
  TempDir dir;
  EXPECT_EQ(run({"--quiet", "rep-to-lr", c("reps/R4_to_f4.json"), "-o", dir.file("lr.json")}).code, 0);
  EXPECT_EQ(run({"--quiet", "check-lr", dir.file("lr.json")}).code, 0);
  EXPECT_EQ(run({"--quiet", "lr-to-rep", dir.file("lr.json"), "-o", dir.file("rep.json")}).code, 0);
  EXPECT_EQ(io::load_rep(dir.file("rep.json")), io::load_rep(c("reps/R4_to_f4.json")));
  EXPECT_EQ(run({"rep-to-lr", c("reps/h3_to_R3.json")}).code, 1);
}

TEST(Cli, CheckLrExitSemantics) {
  TempDir dir;
  // Identities hold, completeness fails: exit 0, completeness reported.
  io::write_text(dir.file("id.json"), R"({"algebra":"R1","product":[{"i":1,"j":1,"terms":[{"k":1,"c":1}]}]})");
  auto r = run({"--json", "check-lr", dir.file("id.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["complete"]["ok"], false);
  EXPECT_EQ(run({"lr-to-rep", dir.file("id.json")}).code, 1);
  io::write_text(dir.file("bad.json"), R"({"algebra":"h3","product":[{"i":1,"j":2,"terms":[{"k":3,"c":1}]},{"i":3,"j":1,"terms":[{"k":1,"c":1}]}]})");
  EXPECT_EQ(run({"check-lr", dir.file("bad.json")}).code, 1);
}

TEST(Cli, BundledLRFilesPass) {
  for (const char* f : {"lr/h3.json", "lr/h3+R.json", "lr/f4.json", "lr/h3+R2.json"}) {
    EXPECT_EQ(run({"--quiet", "check-lr", c(f)}).code, 0) << f;
    EXPECT_EQ(run({"--quiet", "lr-to-rep", c(f)}).code, 0) << f;
  }
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 3);
  EXPECT_EQ(run({"frobnicate"}).code, 3);
  EXPECT_EQ(run({"check-lie"}).code, 3);
  EXPECT_EQ(run({"obstruct-abelian", "h3", "--samples", "-1"}).code, 3);
  EXPECT_EQ(run({"check-rep", c("reps/missing.json")}).code, 3);
  auto r = run({"check-lie", "g7"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("h3+R2"), std::string::npos);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, QuietPrintsNothing) {
  auto r = run({"--quiet", "obstruct-abelian", "g6_18"});
  EXPECT_EQ(r.code, 1);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, JsonIsRepeatable) {
  const std::vector<std::vector<std::string>> commands = {
      {"check-lie", "g5_6"},        {"derivations", "f4"},          {"check-rep", c("reps/h3+R2_to_g5_6.json")},
      {"rep-to-lr", c("reps/R3_to_h3.json")}, {"lr-to-rep", c("lr/h3.json")}, {"check-lr", c("lr/f4.json")},
      {"obstruct-abelian", "g6_18"}, {"obstruct-abelian", "h3+R2", "--seed", "5", "--samples", "4"}, {"catalog", "show", "g6_18"}};
  for (auto args : commands) {
    args.insert(args.begin(), "--json");
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
    EXPECT_NO_THROW(json::parse(a.out));
  }
}
