// End-to-end tests of the CLI binary (path passed as the first argument).
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <string>

using nlohmann::json;

namespace {

std::string g_cli;

struct CmdResult {
  int code;
  std::string out;
};

CmdResult run_cmd(const std::string& cmd) {
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  REQUIRE(f.good());
  f << content;
}

}  // namespace

TEST_CASE("generate piped into analyze reproduces the grid counts") {
  CmdResult res = run_cmd(g_cli + " generate axis-grid --n 3 --N 3 | " + g_cli +
                          " analyze joints kakeya --kakeya 3/2");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("joint_count") == 27);
  double ratio = rep.at("kakeya")[0].at("ratio").get<double>();
  CHECK(std::abs(ratio - 1.0) < 1e-9);
}

TEST_CASE("finite-field counterexample analysis") {
  CmdResult res =
      run_cmd(g_cli + " generate ff-counterexample --p 5 | " + g_cli + " analyze joints");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("joint_count") == 25);
  for (const json& j : rep.at("joints")) CHECK(j.at("m") == 7);
}

TEST_CASE("verify structure accepts the loomis-whitney hint") {
  CmdResult res = run_cmd(g_cli + " generate loomis-whitney --N 2 | " + g_cli +
                          " verify structure --c1 1/2");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("structure").at("accepted") == true);
}

TEST_CASE("vanish subcommand") {
  write_file("/tmp/jk_spec.json",
             R"({"n":2,"field":"Q",
                 "points":[{"x":["0","0"],"order":1},{"x":["1","1"],"order":1},
                           {"x":["2","2"],"order":1}]})");
  CmdResult res = run_cmd(g_cli + " vanish --spec /tmp/jk_spec.json --dmax 4");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("vanish").at("degree") == 1);
}

TEST_CASE("census subcommand") {
  write_file("/tmp/jk_variety.json",
             R"({"field":"Q","factors":[{"poly":"1 * x3^1","mult":1},
                                        {"poly":"1 * x1^1","mult":1}]})");
  write_file("/tmp/jk_lines.json", R"([{"x0":["0","0","0"],"dirs":[["0","1","0"]]}])");
  CmdResult res = run_cmd(g_cli +
                          " census --variety /tmp/jk_variety.json --lines /tmp/jk_lines.json");
  REQUIRE(res.code == 0);
  json rep = json::parse(res.out);
  CHECK(rep.at("census").at("critical") == 1);
}

TEST_CASE("sweep is byte-identical across runs") {
  write_file("/tmp/jk_sweep.json",
             R"({"sweep":{"generator":{"kind":"axis-grid","n":3,"N":[2,3,4],"field":"Q"},
                          "analyses":["joints","kakeya","levels"]}})");
  CmdResult a = run_cmd(g_cli + " sweep --config /tmp/jk_sweep.json");
  CmdResult b = run_cmd(g_cli + " sweep --config /tmp/jk_sweep.json");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("axis-grid") != std::string::npos);
}

TEST_CASE("full experiment via --config with assertion-driven exit codes") {
  write_file("/tmp/jk_exp.json",
             R"({"generator":{"kind":"axis-grid","n":3,"N":2,"field":"Q"},
                 "analyses":["joints"],"assert":{"joints":8}})");
  CHECK(run_cmd(g_cli + " --config /tmp/jk_exp.json").code == 0);

  write_file("/tmp/jk_exp_bad.json",
             R"({"generator":{"kind":"axis-grid","n":3,"N":2,"field":"Q"},
                 "analyses":["joints"],"assert":{"joints":9}})");
  CHECK(run_cmd(g_cli + " --config /tmp/jk_exp_bad.json").code == 1);
}

TEST_CASE("usage errors exit with status 2") {
  CHECK(run_cmd(g_cli + " generate no-such-kind").code == 2);
  CHECK(run_cmd("echo '{bogus' | " + g_cli + " analyze joints").code == 2);
}

TEST_CASE("cap overrides are honored") {
  CmdResult res = run_cmd(g_cli + " --cap max_lines=10 generate axis-grid --n 3 --N 3");
  CHECK(res.code == 3);
}

int main(int argc, char** argv) {
  if (argc >= 2 && argv[1][0] != '-') {
    g_cli = argv[1];
    // hide the binary path from doctest's parser
    for (int i = 1; i + 1 < argc; ++i) argv[i] = argv[i + 1];
    --argc;
  }
  if (g_cli.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-jointkit-binary> [doctest args]\n");
    return 1;
  }
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
