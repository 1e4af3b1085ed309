#ifdef UNSHUFFLE_HAVE_CLI

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "unshuffle/corpus_io.hpp"
#include "unshuffle/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "unshuffle");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = unshuffle::cli::cli_main(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("unshuffle_cli_" +
            std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenThenUnshuffle2) {
  const CliRun gen = run({"--seed", "7", "--out", path("c.bin"), "gen", "--q", "3", "--lengths",
                       "40,60", "--n", "80", "--lambda", "0.5", "--nu", "0.3"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  EXPECT_TRUE(fs::exists(path("c.bin")));
  EXPECT_TRUE(fs::exists(path("c.bin.truth.json")));
  EXPECT_EQ(fs::file_size(path("c.bin")), 8000u);

  const CliRun u = run({"--record-len", "100", "--json-report", path("r.json"), "unshuffle2",
                     path("c.bin"), "--truth", path("c.bin.truth.json"), "--aligned-out",
                     path("aligned.bin")});
  ASSERT_EQ(u.code, 0) << u.err;
  const auto report = unshuffle::read_report(path("r.json"));
  EXPECT_TRUE(report.success);
  EXPECT_EQ(report.command, "unshuffle2");
  const std::size_t l1 = report.result.at("l1_hat").get<std::size_t>();
  const std::size_t l2 = report.result.at("l2_hat").get<std::size_t>();
  EXPECT_TRUE(l1 == 40 || l2 == 40);

  const auto input = unshuffle::load_corpus({path("c.bin"), 100, 1});
  const auto aligned = unshuffle::load_corpus({path("aligned.bin"), 100, 1});
  const auto direct = unshuffle::unshuffle2(input);
  for (std::size_t n = 0; n < 80; ++n) {
    EXPECT_TRUE(std::equal(aligned.column(n).begin(), aligned.column(n).end(),
                           direct.aligned.column(n).begin()));
  }
}

TEST_F(CliTest, ByteIdenticalRepeats) {
  const std::vector<std::string> args{"--seed", "11", "--out", path("a.bin"), "gen", "--q",
                                      "256", "--lengths", "3,4,5", "--n", "12", "--lambda",
                                      "0.3", "--multiplicities", "4,4,4", "--restricted-prefix"};
  const CliRun first = run(args);
  ASSERT_EQ(first.code, 0) << first.err;
  const std::string corpus = unshuffle::read_file(path("a.bin"));
  const std::string truth = unshuffle::read_file(path("a.bin.truth.json"));
  const CliRun second = run(args);
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(corpus, unshuffle::read_file(path("a.bin")));
  EXPECT_EQ(truth, unshuffle::read_file(path("a.bin.truth.json")));

  const std::vector<std::string> solve{"--record-len", "12", "unshuffle", path("a.bin")};
  const CliRun s1 = run(solve);
  const CliRun s2 = run(solve);
  EXPECT_EQ(s1.out, s2.out);
  EXPECT_NE(s1.code, 2) << s1.err;
}

TEST_F(CliTest, UnshuffleSixBlocks) {
  const CliRun gen = run({"--seed", "3", "--out", path("f6.bin"), "gen", "--q", "256", "--lengths",
                       "11,11,12,12,16,20", "--n", "80", "--lambda", "0.5", "--multiplicities",
                       "16,8,8,4,4,4,4,2,2,2,2,2,2,2,2,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1,1",
                       "--restricted-prefix"});
  ASSERT_EQ(gen.code, 0) << gen.err;
  const CliRun u = run({"--record-len", "82", "unshuffle", path("f6.bin"), "--truth",
                     path("f6.bin.truth.json")});
  ASSERT_EQ(u.code, 0) << u.err;
  const auto j = json::parse(u.out);
  EXPECT_EQ(j["result"]["m_hat"], 6);
  auto lengths = j["result"]["lengths"].get<std::vector<std::size_t>>();
  std::sort(lengths.begin(), lengths.end());
  EXPECT_EQ(lengths, (std::vector<std::size_t>{11, 11, 12, 12, 16, 20}));
}

TEST_F(CliTest, AnalyzeWritesProfile) {
  ASSERT_EQ(run({"--seed", "1", "--out", path("p.bin"), "gen", "--q", "256", "--lengths",
                 "3,5,6,7", "--all-perms"})
                .code,
            0);
  const CliRun a = run({"--record-len", "21", "--out", path("profile.csv"), "analyze",
                     path("p.bin"), "--lengths", "3,5,6,7"});
  ASSERT_EQ(a.code, 0) << a.err;
  const std::string csv = unshuffle::read_file(path("profile.csv"));
  EXPECT_EQ(csv.rfind("row,size\n1,", 0), 0u);
}

TEST_F(CliTest, VerifyProb) {
  const CliRun r = run({"--seed", "2", "verify-prob", "p_n", "--q", "3", "--n", "20", "--lambda",
                     "0.5", "--nu", "0.3", "--trials", "20000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["result"]["agrees"].get<bool>());
  EXPECT_EQ(j["seed"], 2);
}

TEST_F(CliTest, SyncDemo) {
  const CliRun r = run({"--seed", "4", "sync-demo"});
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"gen", "--q", "3"}).code, 2);
  EXPECT_EQ(run({"gen", "--q", "3", "--lengths", "2,2", "--n", "4", "--frobnicate"}).code, 2);
  EXPECT_EQ(run({"--word-bytes", "3", "sync-demo"}).code, 2);
  EXPECT_EQ(run({"unshuffle2", path("missing.bin")}).code, 2);
  EXPECT_EQ(run({"--record-len", "4", "unshuffle2", path("missing.bin")}).code, 2);
}

TEST_F(CliTest, SolverFailureExitsOne) {
  // A corpus with no shuffle has no two-valued rows.
  unshuffle::write_file_atomic(path("flat.bin"), std::string(12, '\x05'));
  const CliRun r = run({"--record-len", "4", "unshuffle2", path("flat.bin")});
  EXPECT_EQ(r.code, 1) << r.err;
}

#endif
