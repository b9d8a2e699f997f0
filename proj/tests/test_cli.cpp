#include <catch2/catch.hpp>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#ifndef COSMIN_CLI_PATH
#error "COSMIN_CLI_PATH must point at the cosmin binary"
#endif

namespace {

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CliResult run_cli(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / ("cosmin_out_" + std::to_string(::getpid()) + ".txt");
  const auto err_path = dir / ("cosmin_err_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string(COSMIN_CLI_PATH) + " " + args + " > " +
                          out_path.string() + " 2> " + err_path.string();
  const int status = std::system(cmd.c_str());
  CliResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  std::filesystem::remove(out_path);
  std::filesystem::remove(err_path);
  return r;
}

}  // namespace

TEST_CASE("min subcommand text output", "[cli]") {
  const CliResult r = run_cli("min --cosine 1,2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("-1.125000") != std::string::npos);
  CHECK(r.out.find("L(1,2)") != std::string::npos);

  const CliResult m = run_cli("min --newman 0,1,3");
  CHECK(m.exit_code == 0);
  CHECK(m.out.find("0.607346") != std::string::npos);

  const CliResult single = run_cli("min --cosine 7");
  CHECK(single.exit_code == 0);
  CHECK(single.out.find("-1.000000") != std::string::npos);
  CHECK(single.out.find("0.448799") != std::string::npos);  // pi/7
}

TEST_CASE("min subcommand json output", "[cli]") {
  const CliResult r = run_cli("min --cosine 1,2,3 --output json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "cosine");
  CHECK(j["set"] == nlohmann::json::parse("[1,2,3]"));
  CHECK(j["result"]["value"].get<double>() == Approx(-1.3155651547).margin(1e-8));
  CHECK(j["result"].contains("error_radius"));
  CHECK(j["result"].contains("grid_size"));

  const CliResult c = run_cli("min --cosine 1,2 --output csv");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out.rfind("theta,value,error_radius,grid_size,refined\n", 0) == 0);
}

TEST_CASE("usage errors exit with code 2", "[cli]") {
  CHECK(run_cli("min").exit_code == 2);
  CHECK(run_cli("min --cosine 1,2 --newman 0,1").exit_code == 2);
  CHECK(run_cli("min --cosine 1,x").exit_code == 2);
  CHECK(run_cli("min --cosine 1,2 --bogus-flag").exit_code == 2);
  CHECK(run_cli("search nope --n 2 --max 4").exit_code == 2);
  CHECK(run_cli("verify nonsense").exit_code == 2);

  const CliResult dup = run_cli("min --cosine 1,2,2");
  CHECK(dup.exit_code == 2);
  CHECK(dup.err.find("duplicate exponent 2") != std::string::npos);
}

TEST_CASE("unreachable tolerance exits with code 3", "[cli]") {
  CHECK(run_cli("min --cosine 1 --tol 1e-18").exit_code == 3);

  // per-set failures are listed and the search still completes
  const CliResult r = run_cli("search lambda --n 2 --max 3 --tol 1e-16");
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("FAILED") != std::string::npos);
  CHECK(r.out.find("sets evaluated: 3") != std::string::npos);
}

TEST_CASE("search subcommand output and determinism", "[cli]") {
  const CliResult r = run_cli("search lambda --n 2 --max 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("1.125000") != std::string::npos);
  CHECK(r.out.find("1,2") != std::string::npos);

  const CliResult j1 = run_cli("search lambda --n 3 --max 10 --output json --jobs 1");
  const CliResult j2 = run_cli("search lambda --n 3 --max 10 --output json --jobs 2");
  REQUIRE(j1.exit_code == 0);
  REQUIRE(j2.exit_code == 0);
  CHECK(j1.out == j2.out);
  const nlohmann::json doc = nlohmann::json::parse(j1.out);
  CHECK(doc["records"][0]["set"] == nlohmann::json::parse("[1,2,3]"));

  const CliResult csv = run_cli("search mu --n 3 --max 6 --output csv");
  REQUIRE(csv.exit_code == 0);
  CHECK(csv.out.rfind("set,objective,theta\n", 0) == 0);
}

TEST_CASE("search writes report files", "[cli]") {
  const auto path = std::filesystem::temp_directory_path() /
                    ("cosmin_report_" + std::to_string(::getpid()) + ".json");
  const CliResult r =
      run_cli("search mu --n 3 --max 8 --report " + path.string());
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(slurp(path));
  CHECK(doc["spec"]["problem"] == "mu");
  CHECK(doc["records"].is_array());
  std::filesystem::remove(path);
}

TEST_CASE("corrupt checkpoint exits with code 4", "[cli]") {
  const auto path = std::filesystem::temp_directory_path() /
                    ("cosmin_ckcli_" + std::to_string(::getpid()) + ".jsonl");
  {
    std::ofstream out(path, std::ios::trunc);
    out << "garbage\n";
  }
  const CliResult r =
      run_cli("search mu --n 3 --max 6 --checkpoint " + path.string() + " --resume");
  CHECK(r.exit_code == 4);
  std::filesystem::remove(path);
}

TEST_CASE("verify subcommand claims", "[cli]") {
  const CliResult l1 = run_cli("verify lemma1");
  CHECK(l1.exit_code == 0);
  CHECK(l1.out.find("all pass") != std::string::npos);

  const CliResult t2 = run_cli("verify thm2 --max-a2 40 --output json");
  REQUIRE(t2.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(t2.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["claims"][0]["claim"] == "thm2");
  CHECK(doc["claims"][0]["failed"] == 0);
  CHECK(doc["claims"][0].contains("witness"));
  CHECK(doc["claims"][0].contains("inputs"));

  const CliResult l2 = run_cli("verify lemma2 --output json");
  REQUIRE(l2.exit_code == 0);
  const nlohmann::json l2doc = nlohmann::json::parse(l2.out);
  CHECK(l2doc["claims"][0]["witness"]["value"].get<double>() ==
        Approx(-1.3155651547).margin(1e-8));

  const CliResult cs = run_cli("verify cosinesum --count 500 --seed 0");
  CHECK(cs.exit_code == 0);

  const CliResult va = run_cli("verify variance --count 200");
  CHECK(va.exit_code == 0);

  const CliResult mu = run_cli("verify mu-sqrt-bound --count 40 --seed 1 --tol 1e-6");
  CHECK(mu.exit_code == 0);
}

TEST_CASE("COSMIN_JOBS environment variable is honored", "[cli]") {
  const CliResult r = run_cli("search lambda --n 2 --max 6 --output json");
  const auto dir = std::filesystem::temp_directory_path();
  const auto out_path = dir / ("cosmin_env_" + std::to_string(::getpid()) + ".txt");
  const std::string cmd = std::string("COSMIN_JOBS=2 ") + COSMIN_CLI_PATH +
                          " search lambda --n 2 --max 6 --output json > " + out_path.string() +
                          " 2> /dev/null";
  REQUIRE(std::system(cmd.c_str()) == 0);
  CHECK(slurp(out_path) == r.out);
  std::filesystem::remove(out_path);
}

TEST_CASE("tables --quick reproduces the small rows", "[cli]") {
  const CliResult r = run_cli("tables --quick --output json");
  REQUIRE(r.exit_code == 0);
  const nlohmann::json doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["lambda"].is_array());
  REQUIRE(doc["mu"].is_array());
  CHECK(doc["lambda"].size() == 3);  // n = 2, 3, 4
  CHECK(doc["mu"].size() == 2);      // n = 3, 4
  for (const auto& row : doc["lambda"]) CHECK(row["match"] == true);
  for (const auto& row : doc["mu"]) CHECK(row["match"] == true);
  CHECK(doc["lambda"][0]["computed"]["set"] == nlohmann::json::parse("[1,2]"));
  CHECK(doc["mu"][0]["computed"]["set"] == nlohmann::json::parse("[0,1,3]"));
}

TEST_CASE("verify json output is deterministic under jobs", "[cli]") {
  const CliResult a = run_cli("verify thm3 --max-a3 20 --output json --jobs 1");
  const CliResult b = run_cli("verify thm3 --max-a3 20 --output json --jobs 2");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
}
