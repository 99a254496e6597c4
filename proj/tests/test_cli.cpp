// Integration tests of the monodyn binary (path supplied via MONODYN_CLI).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

using nlohmann::json;

std::string cli_path() {
  const char* env = std::getenv("MONODYN_CLI");
  REQUIRE(env != nullptr);
  return env;
}

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = cli_path() + " " + args + " 2>/dev/null";
  std::FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult result;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) result.output.append(buf, got);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

}  // namespace

TEST_CASE("dyndeg subcommand") {
  RunResult r = run("dyndeg -M \"2\" -N \"2\"");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  REQUIRE(report["lambda"].size() == 2);
  CHECK(report["lambda"][0].get<double>() == doctest::Approx(2.0));
  CHECK(report["lambda"][1].get<double>() == doctest::Approx(2.0));

  r = run("dyndeg -M \"2 0; 0 1\" -N \"1 1; 0 1\"");
  CHECK(r.exit_code == 0);
  report = json::parse(r.output);
  CHECK(report["lambda"][1].get<double>() == doctest::Approx(2.0));
  CHECK(report["lambda"][2].get<double>() == doctest::Approx(1.0));

  r = run("dyndeg -M \"1 0; 0 1\" -N \"1 0; 0 1\"");
  report = json::parse(r.output);
  for (const auto& l : report["lambda"]) CHECK(l.get<double>() == doctest::Approx(1.0));
}

TEST_CASE("degrees subcommand") {
  RunResult r = run("degrees -M \"2\" -N \"2\" --pmax 3 --format csv -k 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "p,k,deg\n1,1,2\n2,1,4\n3,1,8\n");

  r = run("degrees -M \"2 0; 0 1\" -N \"1 1; 0 1\" --pmax 3 -k 1 --format csv");
  CHECK(r.output == "p,k,deg\n1,1,3\n2,1,7\n3,1,15\n");

  r = run("degrees -M \"1 0; 0 1\" -N \"1 0; 0 1\" --pmax 2");
  json report = json::parse(r.output);
  for (const auto& e : report["entries"]) CHECK(e["deg"] == "1");

  // -l switches to the asymptotics report
  r = run("degrees -M \"2 0; 0 1\" -N \"1 1; 0 1\" --pmax 10 -l 1");
  CHECK(r.exit_code == 0);
  report = json::parse(r.output);
  CHECK(report["verdict"] == "converged");
  CHECK(report["c_final"].get<double>() == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("orbit subcommand") {
  RunResult r = run("orbit -M \"1\" -N \"3\" -x \"2\" --pmax 20");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["alpha"].get<double>() == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(report["candidate"].get<double>() == doctest::Approx(3.0).epsilon(1e-6));

  r = run("orbit -M \"2\" -N \"1\" -x \"1\" --pmax 8");
  report = json::parse(r.output);
  CHECK(report["alpha"].get<double>() == doctest::Approx(1.0));
  CHECK(report["flag"] == "torsion-orbit");

  r = run("orbit -M \"2\" -N \"2\" -x \"4\" --check --pmax 4");
  CHECK(r.exit_code == 0);
  report = json::parse(r.output);
  CHECK(report["identity_holds"] == true);

  r = run("orbit -M \"2\" -N \"2\" -x \"4\" --bruteforce --pmax 4 --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.output.substr(0, 9) == "p,height\n");
}

TEST_CASE("ensemble subcommand is deterministic") {
  std::string args = "ensemble --dim 2 --count 3 --bound 3 --seed 1 --pmax 6 --orbit-pmax 25";
  RunResult a = run(args);
  RunResult b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  json report = json::parse(a.output);
  CHECK(report["all_pass"] == true);
  CHECK(report["samples"].size() == 3);

  // seed 11 draws a slowly-converging spectrum; the ratio check reports it
  // and the exit code reflects the failure
  RunResult failing = run("ensemble --dim 2 --count 3 --bound 3 --seed 11 --pmax 6 --orbit-pmax 25");
  CHECK(failing.exit_code == 1);
  CHECK(json::parse(failing.output)["all_pass"] == false);

  RunResult empty = run("ensemble --count 0");
  CHECK(empty.exit_code == 0);
  CHECK(json::parse(empty.output)["samples"].empty());
}

TEST_CASE("check subcommand") {
  RunResult r = run("check -M \"2 0; 0 1\" -N \"1 1; 0 1\" -x \"2, 3\" --pmax 6");
  CHECK(r.exit_code == 0);
  json report = json::parse(r.output);
  CHECK(report["all_pass"] == true);
  bool saw_identity = false;
  for (const auto& c : report["checks"])
    if (c["name"] == "orbit-height-identity") saw_identity = c["pass"].get<bool>();
  CHECK(saw_identity);
}

TEST_CASE("MONODYN_PRECISION environment override") {
  RunResult r = run("dyndeg -M \"2 1; 1 1\" -N \"2 1; 1 1\"");
  std::string cmd_env = "MONODYN_PRECISION=256 " + cli_path() +
                        " dyndeg -M \"2 1; 1 1\" -N \"2 1; 1 1\" 2>/dev/null";
  std::FILE* pipe = popen(cmd_env.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) output.append(buf, got);
  int status = pclose(pipe);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  json hi = json::parse(output);
  json lo = json::parse(r.output);
  // same lambdas, tighter error radius at 256 bits
  CHECK(hi["lambda"][1].get<double>() == doctest::Approx(lo["lambda"][1].get<double>()));
  CHECK(hi["error_radius"].get<double>() < lo["error_radius"].get<double>());
}

TEST_CASE("documented error exit codes") {
  CHECK(run("dyndeg -M \"1 2; 2 4\" -N \"1 0; 0 1\"").exit_code == 2);   // singular
  CHECK(run("dyndeg -M \"1 x; 2 3\" -N \"1 0; 0 1\"").exit_code == 3);   // parse
  CHECK(run("degrees -M \"2\" -N \"2\" --pmax 0").exit_code == 8);       // invalid argument
  CHECK(run("orbit -M \"2\" -N \"1\" -x \"0\"").exit_code == 8);         // zero coordinate
  CHECK(run("nonsense").exit_code == 64);                                // usage
}

TEST_CASE("atomic file output matches stdout") {
  std::string path = "cli_test_output.json";
  std::remove(path.c_str());
  RunResult direct = run("dyndeg -M \"2\" -N \"2\"");
  RunResult filed = run("dyndeg -M \"2\" -N \"2\" -o " + path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.output.empty());
  std::ifstream in(path);
  REQUIRE(in.good());
  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(contents == direct.output);
  std::remove(path.c_str());

  // a failing run must not leave the output file behind
  std::string bad_path = "cli_test_bad.json";
  std::remove(bad_path.c_str());
  RunResult bad = run("dyndeg -M \"1 2; 2 4\" -N \"1 0; 0 1\" -o " + bad_path);
  CHECK(bad.exit_code == 2);
  std::ifstream bad_in(bad_path);
  CHECK(!bad_in.good());
}
