#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace cli = ctxbounds::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("ctxbounds_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

std::vector<double> values(const std::string& out) {
  std::vector<double> v;
  const auto doc = json::parse(out);
  for (const auto& r : doc.at("reports")) v.push_back(r["value"].get<double>());
  return v;
}

}  // namespace

TEST(CliBounds, Pentagon) {
  const auto r = run({"bounds", "--builtin", "ncycle:5", "--which", "all", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto v = values(r.out);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 2.0);
  EXPECT_NEAR(v[1], 2.2360680, 1e-7);
  EXPECT_NEAR(v[2], 2.5, 1e-9);
}

TEST(CliBounds, Chsh) {
  const auto r = run({"bounds", "--builtin", "chsh", "--which", "classical,ns,qm1", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto v = values(r.out);
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[0], 3.0);
  EXPECT_NEAR(v[1], 4.0, 1e-9);
  EXPECT_NEAR(v[2], 3.4142136, 1e-7);
}

TEST(CliBounds, I3322) {
  const auto r = run({"bounds", "--builtin", "i3322", "--which", "qm1", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NEAR(values(r.out).at(0), 6.2515, 5e-5);
}

TEST(CliBounds, DeterministicBytes) {
  const std::vector<std::string> args{"bounds", "--builtin", "chsh", "--which", "all", "--json"};
  EXPECT_EQ(run(args).out, run(args).out);
  EXPECT_EQ(run(args).out.find("wall_time"), std::string::npos);
  EXPECT_NE(run({"bounds", "--builtin", "ncycle:5", "--json", "--timing"}).out.find("wall_time"),
            std::string::npos);
}

TEST(CliBounds, GraphFile) {
  const auto path = write_temp("c5.json", R"({"n": 5, "edges": [[0,1],[1,2],[2,3],[3,4],[4,0]]})");
  const auto r = run({"bounds", "--graph", path, "--which", "theta", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NEAR(values(r.out).at(0), 2.2360680, 1e-7);
  const auto table = run({"bounds", "--graph", path});
  EXPECT_EQ(table.code, cli::kOk);
  EXPECT_NE(table.out.find("theta"), std::string::npos);
}

TEST(CliBounds, InputErrors) {
  EXPECT_EQ(run({"bounds", "--builtin", "nope"}).code, cli::kInputError);
  EXPECT_EQ(run({"bounds"}).code, cli::kInputError);
  EXPECT_EQ(run({"bounds", "--graph", "/nonexistent.json"}).code, cli::kInputError);
  EXPECT_EQ(run({"bounds", "--builtin", "ncycle:5", "--which", "qm1"}).code, cli::kInputError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kInputError);
  const auto bad = write_temp("bad.json", R"({"n": 3, "edges": [[0, 7]]})");
  const auto r = run({"bounds", "--graph", bad});
  EXPECT_EQ(r.code, cli::kInputError);
  EXPECT_FALSE(r.err.empty());
}

TEST(CliMembership, Pentagon) {
  const auto half = write_temp("half.json", R"({"p": [0.5, 0.5, 0.5, 0.5, 0.5]})");
  const auto zero = write_temp("zero.json", "[0, 0, 0, 0, 0]");
  auto member = [](const Outcome& r) { return json::parse(r.out)["member"].get<bool>(); };
  const auto gpt = run({"membership", "--builtin", "ncycle:5", "--set", "GPT", half, "--json"});
  ASSERT_EQ(gpt.code, cli::kOk) << gpt.err;
  EXPECT_TRUE(member(gpt));
  EXPECT_FALSE(member(run({"membership", "--builtin", "ncycle:5", "--set", "QM", half, "--json"})));
  EXPECT_FALSE(member(run({"membership", "--builtin", "ncycle:5", "--set", "C", half, "--json"})));
  for (const char* set : {"C", "QM", "GPT"})
    EXPECT_TRUE(member(run({"membership", "--builtin", "ncycle:5", "--set", set, zero, "--json"}))) << set;
  EXPECT_EQ(run({"membership", "--builtin", "ncycle:5", "--set", "XYZ", half}).code, cli::kInputError);
  EXPECT_EQ(run({"membership", "--builtin", "ncycle:5", "--set", "NS", half}).code, cli::kInputError);
}

TEST(CliReproduce, FilteredAndTightened) {
  const auto r = run({"reproduce", "--only", "kcbs", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto doc = json::parse(r.out);
  ASSERT_EQ(doc.size(), 2u);
  EXPECT_EQ(doc[0]["id"], 1);
  EXPECT_EQ(doc[1]["id"], 3);
  for (const auto& c : doc) EXPECT_TRUE(c["pass"].get<bool>());
  EXPECT_EQ(run({"reproduce", "--only", "2", "--tol", "1e-12"}).code, cli::kAcceptanceFailure);
}

TEST(CliHelpers, Sha256AndRounding) {
  EXPECT_EQ(cli::sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_DOUBLE_EQ(cli::round9(2.23606797749979), 2.23606798);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}
