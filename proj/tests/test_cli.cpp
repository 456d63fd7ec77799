#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, bool merge_stderr = false) {
  const std::string cmd = std::string(LICURV_CLI_PATH) + " " + args + (merge_stderr ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version and help") {
  const auto v = run("--version");
  CHECK(v.code == 0);
  CHECK(v.out == "licurv 0.1.0\n");
  const auto h = run("--help");
  CHECK(h.code == 0);
  for (const char* sub : {"classify", "report", "scan", "cheeger", "audit", "crosscheck"})
    CHECK(h.out.find(sub) != std::string::npos);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("classify exit codes") {
  auto r = run("classify --algebra so3 --lambdas 1,1,1");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("status") == "StrictlyNonnegative");

  r = run("classify --algebra so3 --lambdas 0.8660254037844386,0.8660254037844386,1");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("status") == "Boundary");

  r = run("classify --algebra so3 --lambdas 0.5,0.5,1");
  CHECK(r.code == 1);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("status") == "Violated");
  CHECK(doc.at("witness").at("plane_curvature").get<double>() < 0.0);

  r = run("classify --algebra u1su2 --lambdas 1,1,1 --e0 1,0.3,0.2,0.1");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("status") == "StrictlyNonnegative");

  r = run("classify --algebra so3 --lambdas -1,1,1", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("NonPositiveLambda") != std::string::npos);
}

TEST_CASE("malformed input") {
  write_file("cli_bad.json", "{not json");
  auto r = run("classify -i cli_bad.json", true);
  CHECK(r.code == 2);
  CHECK(r.out.rfind("licurv: ParseError", 0) == 0);

  write_file("cli_asym.json", R"({"algebra":"so3","phi":[[1,0.5,0],[0,1,0],[0,0,1]]})");
  r = run("report -i cli_asym.json", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("NotSymmetric") != std::string::npos);

  r = run("classify -i does_not_exist.json", true);
  CHECK(r.code == 2);
  r = run("scan --l1-range 0,1,0.1 -o cli_x.csv", true);
  CHECK(r.code == 2);
  CHECK(r.out.find("InvalidArgument") != std::string::npos);
  r = run("crosscheck --algebra so3 --input cli_bad.json", true);
  CHECK(r.code == 2);
}

TEST_CASE("cheeger output feeds report and classify") {
  write_file("cli_chain.json", R"({"algebra":"so3","chain":[{"basis":[[0,0,1]],"lambda":1}]})");
  const auto c = run("cheeger -i cli_chain.json");
  REQUIRE(c.code == 0);
  const auto metric = nlohmann::json::parse(c.out);
  const auto ev = metric.at("eigenvalues").get<std::vector<double>>();
  REQUIRE(ev.size() == 3);
  CHECK(std::abs(ev[0] - 0.5) < 1e-12);
  CHECK(std::abs(ev[2] - 1.0) < 1e-12);
  write_file("cli_deformed.json", c.out);

  const auto rep = run("report -i cli_deformed.json --samples 200 --seed 1");
  REQUIRE(rep.code == 0);
  const auto doc = nlohmann::json::parse(rep.out);
  CHECK(std::abs(doc.at("scalar").get<double>() - 1.75) < 1e-12);
  CHECK(std::abs(doc.at("sampled_min_sectional").get<double>() - 0.125) < 1e-9);

  const auto cls = run("classify -i cli_deformed.json");
  CHECK(cls.code == 0);
  CHECK(nlohmann::json::parse(cls.out).at("status") == "StrictlyNonnegative");

  write_file("cli_badchain.json", R"({"algebra":"so3","chain":[{"basis":[[1,0,0],[0,1,0]],"lambda":1}]})");
  const auto bad = run("cheeger -i cli_badchain.json", true);
  CHECK(bad.code == 2);
  CHECK(bad.out.find("NotSubalgebra") != std::string::npos);
}

TEST_CASE("scan output and sidecar") {
  const auto r = run("scan --l1-range 0.5,1,0.25 --l2-range 0.5,1,0.25 -o cli_scan.csv");
  REQUIRE(r.code == 0);
  const std::string csv = read_file("cli_scan.csv");
  CHECK(csv.rfind("l1,l2,status,min_inequality_value\n0.5,0.5,Violated,", 0) == 0);
  int lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 10);
  const auto meta = nlohmann::json::parse(read_file("cli_scan.csv.meta.json"));
  CHECK(meta.at("l3") == 1);
  CHECK(meta.at("version") == "0.1.0");

  const auto s = run("scan --l1-range 0.5,1,0.25 --l2-range 0.5,1,0.25");
  CHECK(s.out == csv);
}

TEST_CASE("audit and crosscheck") {
  auto r = run("audit --group u2 --points 60 --seed 4 --samples 200");
  CHECK(r.code == 0);
  CHECK(nlohmann::json::parse(r.out).at("failures") == 0);
  r = run("audit --group so3 --points 60 --seed 4 --samples 200");
  CHECK(r.code == 0);
  r = run("audit --group so4", true);
  CHECK(r.code == 2);

  r = run("crosscheck --algebra u1su2 --metrics 10 --pairs 10");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc.at("passed") == true);
  CHECK(doc.at("max_discrepancy").get<double>() < 1e-9);
}

TEST_CASE("byte-identical reruns") {
  for (const char* args : {"scan --l1-range 0.1,2,0.1 --l2-range 0.1,2,0.1",
                           "report -i cli_deformed.json --samples 300 --seed 9",
                           "audit --group u2 --points 40 --seed 2 --samples 100",
                           "crosscheck --algebra so3 --metrics 5 --pairs 5 --seed 3"}) {
    CAPTURE(args);
    const auto a = run(args), b = run(args);
    CHECK(a.code == b.code);
    CHECK(!a.out.empty());
    CHECK(a.out == b.out);
  }
}
