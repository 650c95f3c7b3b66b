#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <regex>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Invocation {
  int code = -1;
  std::string out;
};

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

Invocation run(const std::string& args) {
  const std::string cmd = std::string(BRATTELI_EXE) + " " + args + " 2>&1";
  Invocation r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const Invocation& r) { return nlohmann::json::parse(r.out); }

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("bratteli_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("validate " + fixture("morse_example.json")).code, 0);
  EXPECT_EQ(run("validate " + fixture("morse_example.json") + " --no-such-flag").code, 2);
  const Invocation missing = run("validate " + fixture("missing.json"));
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(parse(missing)["error"], "ParseError");
  const Invocation big = run("measure exact-g " + fixture("corollary_1.json") + " -k 1 -n 2");
  EXPECT_EQ(big.code, 1);
  EXPECT_EQ(parse(big)["error"], "RankTooLarge");
}

TEST(Cli, MorseIsImperfect) {
  const Invocation r = run("check-perfect " + fixture("morse_example.json") + " " + fixture("morse_example.ordering_ab.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = parse(r);
  EXPECT_EQ(j["status"], "Imperfect");
  EXPECT_EQ(j["witness"]["kind"], "two_successors");
  EXPECT_TRUE(j["manifest"]["inputs"][0]["sha256"].is_string());
}

TEST(Cli, SynthesizeThenCheck) {
  const auto dir = scratch_dir();
  const std::string order = (dir / "looped.ordering.json").string();
  const Invocation s = run("-o " + order + " synthesize " + fixture("looped_example.json") + " " +
                    fixture("looped_example.skeleton.json"));
  ASSERT_EQ(s.code, 0) << s.out;
  const Invocation c = run("check-perfect " + fixture("looped_example.json") + " " + order);
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_EQ(parse(c)["status"], "Perfect");
  std::filesystem::remove_all(dir);
}

TEST(Cli, TelescopeProduct) {
  const Invocation r = run("telescope " + fixture("morse_example.json") + " --cuts 0,1,3");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = parse(r);
  EXPECT_EQ(j["schedule"]["matrices"][0], nlohmann::json::parse("[[2,2],[2,2]]"));
}

TEST(Cli, OutputIsReproducible) {
  const std::string args = "measure estimate-j " + fixture("morse_example.json") + " --depth 12 --samples 50 --seed 4";
  const std::regex stamp("\"timestamp\": \"[^\"]*\"");
  const Invocation a = run(args), b = run("--threads 3 " + args);
  ASSERT_EQ(a.code, 0) << a.out;
  auto strip = [&](const std::string& s) {
    auto j = nlohmann::json::parse(s);
    j.erase("manifest");
    return j.dump();
  };
  EXPECT_EQ(strip(a.out), strip(b.out));
  EXPECT_EQ(std::regex_replace(a.out, stamp, ""), std::regex_replace(run(args).out, stamp, ""));
}

TEST(Cli, PrettyTable) {
  const Invocation r = run("--pretty heights " + fixture("morse_example.json") + " -n 3");
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("command: heights"), std::string::npos);
}
