#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

const std::string kCli = REEDYQH_PATH;
const std::string kRoot = REEDY_SOURCE_DIR;

std::pair<int, std::string> run(const std::string& args, bool merge_stderr = false) {
  std::string out;
  FILE* pipe = popen((kCli + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null")).c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string ex(const std::string& name) { return kRoot + "/examples/" + name; }

}  // namespace

TEST_CASE("check prints the hom table and verdict") {
  auto [code, out] = run("check " + ex("qh.reedy"));
  CHECK(code == 0);
  CHECK(out.find("verdict: pass") != std::string::npos);
  CHECK(out.find("hom_dimensions") != std::string::npos);
  CHECK(out.find("reedy: pass") != std::string::npos);
}

TEST_CASE("json report shape") {
  auto [code, out] = run("tor-table " + ex("qh.reedy") + " --max-n 3 --json");
  CHECK(code == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["schema"] == "reedyqh-report/1");
  CHECK(j["verdict"] == "pass");
  CHECK(j["payload"]["tor"]["columns"].size() == 6);
  CHECK(j["payload"]["tor"]["rows"].size() == 4);
  CHECK(j["timing_ms"].is_number());
}

TEST_CASE("json output re-renders to the text output") {
  for (const std::string cmd : {"qh", "ext-table", "sk", "latching --samples 3"}) {
    auto [c1, text] = run(cmd + " " + ex("qh.reedy"));
    auto [c2, json] = run(cmd + " " + ex("qh.reedy") + " --json");
    const std::string path = "cli_roundtrip.json";
    FILE* f = std::fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    std::fputs(json.c_str(), f);
    std::fclose(f);
    auto [c3, rendered] = run("render " + path);
    std::remove(path.c_str());
    CHECK(c1 == c2);
    CHECK(c3 == 0);
    CHECK(rendered == text);
  }
}

TEST_CASE("randomized subcommands are deterministic for a seed") {
  const std::string args = "lift-test " + ex("qh.reedy") + " --coeff " + ex("a2.reedy") + " --samples 4 --seed 9";
  CHECK(run(args).second == run(args).second);
  CHECK(run(args).first == 0);
}

TEST_CASE("approx on the x1 fixture") {
  auto [code, out] = run("approx " + ex("qh.reedy") + " --diagram " + kRoot + "/fixtures/x1.diag --pair proj-all --json");
  CHECK(code == 0);
  auto j = nlohmann::json::parse(out);
  CHECK(j["payload"]["sequence"]["exact"] == true);
  CHECK(j["payload"]["sequence"]["Y_in_phi"] == true);
  CHECK(j["payload"]["sequence"]["Z_in_psi"] == true);
}

TEST_CASE("exit codes") {
  CHECK(run("check " + ex("qh_swapped.reedy")).first == 1);
  CHECK(run("check " + ex("qh_free.reedy")).first == 1);
  CHECK(run("check " + ex("qh.reedy") + " --perturb").first == 1);
  CHECK(run("check /nonexistent.reedy").first == 2);
  CHECK(run("qh " + ex("a2.reedy")).first == 2);
  CHECK(run("frobnicate").first == 2);
  auto [code, out] = run("check " + ex("qh.reedy") + " --perturb", true);
  CHECK(out.find("associativity fails") != std::string::npos);
}

TEST_CASE("approx on the A2-valued fixture for both pairs") {
  for (const std::string pair : {"proj-all", "all-inj"}) {
    auto [code, out] = run("approx " + ex("qh.reedy") + " --coeff " + ex("a2.reedy") + " --diagram " + kRoot +
                           "/fixtures/x2_a2.diag --pair " + pair);
    CHECK(code == 0);
    CHECK(out.find("exact: true") != std::string::npos);
  }
}
