#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "fcgrid/cli.hpp"
#include "fcgrid/grid_io.hpp"
#include "fcgrid/gridgen.hpp"

using namespace fcgrid;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fcgrid_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string fixture() const {
    const std::string p = path("fixture.txt");
    EXPECT_EQ(run({"gen", "--paper-example", "--out", p}).code, 0);
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenIsDeterministic) {
  const std::vector<std::string> base{"gen", "--k", "3", "--min-size", "8", "--max-size", "8", "--seed", "42"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", path("a.txt")});
  b.insert(b.end(), {"--out", path("b.txt")});
  ASSERT_EQ(run(a).code, 0);
  ASSERT_EQ(run(b).code, 0);
  EXPECT_EQ(read_file(path("a.txt")), read_file(path("b.txt")));
  EXPECT_EQ(parse_gridset(read_file(path("a.txt"))).k(), 3u);
}

TEST_F(CliTest, GenRejectsBadFlags) {
  EXPECT_EQ(run({"gen", "--k", "0", "--out", path("x.txt")}).code, 2);
  EXPECT_EQ(run({"gen", "--k", "three"}).code, 2);
  EXPECT_EQ(run({"gen", "--bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, GenFixture) {
  fixture();
  EXPECT_EQ(parse_gridset(read_file(path("fixture.txt"))), paper_example_gridset());
}

TEST_F(CliTest, BuildFixture) {
  const CliRun r = run({"build", "--grids", fixture(), "--out", path("c.fcg")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("total entries: 21"), std::string::npos);
  EXPECT_NE(r.out.find("ratio:         1.4"), std::string::npos);
  const std::string raw = read_file(path("c.fcg"));
  const CascadeGrid decoded = decode_cascade(std::vector<std::uint8_t>(raw.begin(), raw.end()));
  EXPECT_TRUE(validate_structure(decoded, paper_example_gridset()).empty());
}

TEST_F(CliTest, BuildUnsortedInput) {
  write_file(path("bad.txt"), "1\n2\n3.0 2.0\n");
  const CliRun r = run({"build", "--grids", path("bad.txt"), "--out", path("c.fcg")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos);
  EXPECT_NE(r.err.find("grid 1 not sorted at position 1"), std::string::npos);
  EXPECT_EQ(run({"build", "--grids", path("missing.txt"), "--out", path("c.fcg")}).code, 2);
}

TEST_F(CliTest, Query) {
  const std::string grids = fixture();
  CliRun r = run({"query", "--grids", grids, "--key", "2.0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "grid 1: fc 1, naive 1\ngrid 2: fc 0, naive 0\ngrid 3: fc 1, naive 1\nagreement\n");

  r = run({"query", "--grids", grids, "--key", "0.0"});
  EXPECT_EQ(r.out, "grid 1: fc 0, naive 0\ngrid 2: fc 0, naive 0\ngrid 3: fc 0, naive 0\nagreement\n");

  r = run({"query", "--grids", grids, "--key", "nan"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("invalid argument"), std::string::npos);
  EXPECT_EQ(run({"query", "--grids", grids, "--key", "abc"}).code, 2);

  r = run({"query", "--grids", grids, "--key", "3.2", "--stats"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("binary search comparisons: 4"), std::string::npos);
  EXPECT_NE(r.out.find("level comparisons:"), std::string::npos);
}

TEST_F(CliTest, QueryWithSnapshotAndSigma) {
  write_file(path("s.txt"), "2\n2\n1 2\n3\n0 2 4\nsigma\n2\n10 20\n3\n1 1 3\n");
  ASSERT_EQ(run({"build", "--grids", path("s.txt"), "--out", path("s.fcg")}).code, 0);
  const CliRun r = run({"query", "--grids", path("s.txt"), "--cascade", path("s.fcg"), "--key", "1.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "grid 1: fc 0, naive 0, sigma 15\ngrid 2: fc 0, naive 0, sigma 1\nagreement\n");

  // Snapshot built for other grids.
  ASSERT_EQ(run({"build", "--grids", fixture(), "--out", path("p.fcg")}).code, 0);
  EXPECT_EQ(run({"query", "--grids", path("s.txt"), "--cascade", path("p.fcg"), "--key", "1"}).code, 2);
}

TEST_F(CliTest, VerifyFixtureKeys) {
  const CliRun r = run({"verify", "--grids", fixture(), "--keys", "0", "--key", "0.0", "--key", "1.4", "--key", "2.0",
                     "--key", "3.2", "--key", "4.7", "--key", "6.0", "--key", "7.0"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("mismatches:             0"), std::string::npos);
}

TEST_F(CliTest, VerifyRandom) {
  const CliRun r = run({"verify", "--random", "20", "--keys", "200", "--seed", "7", "--tsv"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.rfind("gridsets\tkeys", 0), 0u);
  EXPECT_EQ(run({"verify"}).code, 2);
  EXPECT_EQ(run({"verify", "--random", "2", "--grids", fixture()}).code, 2);
}

TEST_F(CliTest, VerifyInjectedBadBridge) {
  const CascadeGrid good = build_cascade(paper_example_gridset());
  std::vector<CascadeLevel> levels = good.levels();
  levels[1].p2[5] += 2;
  const auto bytes = encode_cascade(CascadeGrid(levels, good.grid_sizes()));
  write_file(path("bad.fcg"), std::string(bytes.begin(), bytes.end()));
  const CliRun r = run({"verify", "--grids", fixture(), "--cascade", path("bad.fcg")});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("level 2, entry 5: p2"), std::string::npos);

  write_file(path("junk.fcg"), "junk");
  EXPECT_EQ(run({"verify", "--grids", fixture(), "--cascade", path("junk.fcg")}).code, 2);
}

TEST_F(CliTest, Bench) {
  CliRun r = run({"bench", "--k", "8", "--n", "1024", "--queries", "2000", "--seed", "1", "--tsv"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\t19\t"), std::string::npos);
  EXPECT_NE(r.out.find("\t88\t"), std::string::npos);
  r = run({"bench", "--grids", fixture(), "--queries", "100"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("comparison bound: PASS"), std::string::npos);
}

TEST_F(CliTest, Stats) {
  CliRun r = run({"stats", "--grids", fixture()});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("ratio:         1.4"), std::string::npos);
  EXPECT_NE(r.out.find("bound:         PASS (21 <= 30)"), std::string::npos);

  write_file(path("ones.txt"), write_gridset(gridset_with_sizes(std::vector<std::size_t>(8, 1))));
  r = run({"stats", "--grids", path("ones.txt")});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("total entries: 8"), std::string::npos);

  write_file(path("one.txt"), "1\n4\n1 2 3 4\n");
  r = run({"stats", "--grids", path("one.txt"), "--tsv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("\t1\t96\tPASS"), std::string::npos);
}

// Exercises the installed binary end to end.
TEST_F(CliTest, BinaryExitCodes) {
  const std::string bin = FCGRID_CLI_PATH;
  const std::string grids = fixture();
  EXPECT_EQ(std::system((bin + " query --grids " + grids + " --key 4.7 > /dev/null").c_str()), 0);
  const int nan = std::system((bin + " query --grids " + grids + " --key nan > /dev/null 2>&1").c_str());
  EXPECT_TRUE(WIFEXITED(nan));
  EXPECT_EQ(WEXITSTATUS(nan), 2);
}
