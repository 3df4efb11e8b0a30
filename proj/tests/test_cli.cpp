#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("dsqr_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path(const std::string& name) { return (workdir() / name).string(); }

// Runs the CLI with stdout and stderr captured to files; returns the exit code.
int run(const std::string& args, const std::string& tag = "last") {
  const std::string cmd = std::string(DSQR_CLI) + " " + args + " >" + path(tag + ".out") + " 2>" +
                          path(tag + ".err");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("mirror then verify") {
  CHECK(run("mirror HARRY BOVIK -o " + path("hb.pbm") + " --report " + path("hb.json")) == 0);
  CHECK(run("verify " + path("hb.pbm") + " --expect-a HARRY --expect-b BOVIK") == 0);
  CHECK(run("verify " + path("hb.pbm") + " --expect-a HARRY --expect-b BOVIX") == 1);
  CHECK(slurp(path("last.err")).find("decode mismatch") != std::string::npos);

  const auto report = nlohmann::json::parse(slurp(path("hb.json")));
  for (const char* key : {"method", "format_witness", "mask_id", "allocation", "free_vars",
                          "side_a_corrections", "side_b_corrections", "trials"}) {
    CHECK(report.contains(key));
  }
  CHECK(report["method"] == "analytic");
}

TEST_CASE("verify --json output") {
  CHECK(run("mirror HARRY BOVIK -o " + path("hb.pbm")) == 0);
  CHECK(run("verify " + path("hb.pbm") + " --json", "v") == 0);
  const auto j = nlohmann::json::parse(slurp(path("v.out")));
  CHECK(j["straight"]["text"] == "HARRY");
  CHECK(j["transposed"]["text"] == "BOVIK");
  CHECK(j["ok"] == true);
}

TEST_CASE("encode an empty message") {
  CHECK(run("encode \"\" -o " + path("empty.pbm")) == 0);
  CHECK(run("verify " + path("empty.pbm") + " --expect-a \"\"") == 0);
}

TEST_CASE("output format follows the extension") {
  CHECK(run("encode HELLO -o " + path("h.svg")) == 0);
  CHECK(slurp(path("h.svg")).find("<svg") != std::string::npos);
  CHECK(run("encode HELLO -o " + path("h.txt")) == 0);
  CHECK(slurp(path("h.txt")).find("##") != std::string::npos);
  CHECK(run("encode HELLO --mode byte --mask 5 --scale 3 -o " + path("h.pbm")) == 0);
  CHECK(slurp(path("h.pbm")).rfind("P1\n87 87\n", 0) == 0);
}

TEST_CASE("infeasible pair exits 1 with a stage diagnostic") {
  CHECK(run("mirror ABCDEFGHIJK ABCDEFGHIJKL -o " + path("x.pbm")) == 1);
  CHECK(slurp(path("last.err")).find("system infeasible") != std::string::npos);
  CHECK(run("--json mirror ABCDEFGHIJK ABCDEFGHIJKL -o " + path("x.pbm"), "j") == 1);
  const auto j = nlohmann::json::parse(slurp(path("j.err")));
  CHECK(j["stage"] == "system infeasible");
  CHECK(j["report"].contains("uncapped_allocation"));
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("") == 2);
  CHECK(run("mirror HARRY") == 2);
  CHECK(run("encode HELLO --mask 9 -o " + path("x.pbm")) == 2);
  CHECK(run("mirror A B --method magic -o " + path("x.pbm")) == 2);
  CHECK(run("encode hello --mode numeric -o " + path("x.pbm")) == 2);
  CHECK(run("verify " + path("missing.pbm")) == 2);
  CHECK(run("--help") == 0);
}

TEST_CASE("flipgraph and inspect") {
  CHECK(run("flipgraph --domain raw --dot " + path("g.dot"), "fg") == 0);
  CHECK(slurp(path("g.dot")).rfind("graph flip_raw", 0) == 0);
  const auto j = nlohmann::json::parse(slurp(path("fg.out")));
  CHECK(j["nodes"] == 32);
  CHECK(j["shell_candidates"] == 14560);

  CHECK(run("mirror HARRY BOVIK -o " + path("hb.pbm")) == 0);
  CHECK(run("inspect " + path("hb.pbm"), "ins") == 0);
  const auto ins = nlohmann::json::parse(slurp(path("ins.out")));
  CHECK(ins["straight"]["decode"]["text"] == "HARRY");
  CHECK(ins["transposed"]["decode"]["text"] == "BOVIK");
  CHECK(ins["zones"]["counts"]["a"] == 4);
}

TEST_CASE("identical invocations give identical bytes") {
  for (const std::string args : {"mirror HARRY BOVIK --seed 7", "mirror AB CD --method auto --trials 300 --seed 9",
                                 "mirror HI YO --fill random --seed 3"}) {
    run(args + " -o " + path("d1.pbm") + " --report " + path("d1.json"));
    run(args + " -o " + path("d2.pbm") + " --report " + path("d2.json"));
    CHECK(slurp(path("d1.pbm")) == slurp(path("d2.pbm")));
    CHECK(slurp(path("d1.json")) == slurp(path("d2.json")));
    CHECK(!slurp(path("d1.json")).empty());
  }
}
