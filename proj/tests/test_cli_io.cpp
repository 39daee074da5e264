#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "littlewood/json_io.hpp"

using namespace lw;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  int rc = std::system(("./littlewood " + args).c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

}  // namespace

TEST_CASE("json round trips") {
  BigInt big("123456789012345678901234567890");
  CHECK(bigint_from_json(to_json(big)) == big);
  CHECK(bigint_from_json(to_json(BigInt(-7))) == -7);

  BigRat r = make_rat(-22, 7);
  CHECK(bigrat_from_json(to_json(r)) == r);
  // canonicalized on the way out
  CHECK(to_json(make_rat(2, 4)).get<std::string>() == "1/2");

  Enclosure e(make_rat(1, 3), make_rat(2, 3));
  Enclosure back = enclosure_from_json(to_json(e));
  CHECK(back.lo == e.lo);
  CHECK(back.hi == e.hi);

  DirichletPoint p;
  p.N = BigInt(100);
  p.x = BigInt(29);
  p.y = BigInt(41);
  p.z = BigInt(50);
  p.res_alpha = Enclosure(make_rat(-1, 100), make_rat(1, 100));
  p.res_beta = Enclosure(make_rat(1, 200), make_rat(1, 100));
  DirichletPoint p2 = dirichlet_point_from_json(to_json(p));
  CHECK(p2.N == p.N);
  CHECK(p2.x == p.x);
  CHECK(p2.y == p.y);
  CHECK(p2.z == p.z);
  CHECK(p2.res_alpha.lo == p.res_alpha.lo);
  CHECK(p2.res_beta.hi == p.res_beta.hi);

  WitnessCertificate c;
  c.x = BigInt(3);
  c.y = BigInt(4);
  c.z = BigInt(5);
  c.f_value = Enclosure(make_rat(14, 100), make_rat(15, 100));
  c.epsilon = make_rat(1, 5);
  c.t = BigInt(0);
  c.n = 1;
  c.l = BigInt(2);
  c.k = BigInt(0);
  WitnessCertificate c2 = certificate_from_json(to_json(c));
  CHECK(c2.x == c.x);
  CHECK(c2.epsilon == c.epsilon);
  CHECK(c2.n == c.n);
  CHECK(c2.f_value.lo == c.f_value.lo);

  // malformed inputs are rejected
  CHECK_THROWS(bigint_from_json(json("12x4")));
}

TEST_CASE("cli cf subcommand") {
  REQUIRE(run_cli("cf --sqrt 2 --count 5 --out cli_cf.json") == 0);
  json j = json::parse(slurp("cli_cf.json"));
  REQUIRE(j["quotients"].size() == 5);
  CHECK(j["quotients"][0] == "1");
  for (int k = 1; k < 5; ++k) CHECK(j["quotients"][k] == "2");
  CHECK(j.contains("period"));

  REQUIRE(run_cli("cf --metallic 7 --count 10 --out cli_cf7.json") == 0);
  json j7 = json::parse(slurp("cli_cf7.json"));
  for (auto& q : j7["quotients"]) CHECK(q == "7");

  REQUIRE(run_cli("cf --literal 0.5 --count 5 --out cli_cfl.json") == 0);
  json jl = json::parse(slurp("cli_cfl.json"));
  CHECK(jl["quotients"][0] == "0");
  CHECK(jl["quotients"][1] == "2");

  // usage error: no target
  CHECK(run_cli("cf --count 3 2>/dev/null") == 1);
}

TEST_CASE("cli bc-table") {
  REQUIRE(run_cli("bc-table --etas 0 0.25 --tol 0.0001 --out cli_bc.csv") == 0);
  std::string csv = slurp("cli_bc.csv");
  CHECK(csv.find("eta,b_c_lo,b_c_hi") != std::string::npos);
  CHECK(csv.find("6.78") != std::string::npos);
  CHECK(csv.find("17.33") != std::string::npos);
}

TEST_CASE("cli liminf") {
  REQUIRE(run_cli("liminf --alpha sqrt2 --beta sqrt3 --Q 3 --out cli_lim.csv "
                  "--plot cli_lim.dat") == 0);
  std::string csv = slurp("cli_lim.csv");
  CHECK(csv.find("0.1109") != std::string::npos);
  // plot data: two whitespace-separated columns, one row per n
  std::istringstream plot(slurp("cli_lim.dat"));
  long n;
  double v;
  int rows = 0;
  while (plot >> n >> v) ++rows;
  CHECK(rows == 3);

  // rational input hits an exact zero
  REQUIRE(run_cli("liminf --alpha 1/3 --beta sqrt2 --Q 3 --out cli_lim0.csv") == 0);
  CHECK(slurp("cli_lim0.csv").find(",0,") != std::string::npos);

  CHECK(run_cli("liminf --alpha sqrt2 --beta sqrt3 --Q 0 2>/dev/null") == 1);
}

TEST_CASE("cli pair-scan") {
  REQUIRE(run_cli("pair-scan --eta 0 --bmax 8 --n 1..2 --out cli_ps.jsonl "
                  "--csv cli_ps.csv") == 0);
  std::istringstream lines(slurp("cli_ps.jsonl"));
  std::string line;
  bool saw67 = false;
  int count = 0;
  while (std::getline(lines, line)) {
    json j = json::parse(line);
    ++count;
    if (j["a"] == "6" && j["b"] == "7") {
      saw67 = true;
      CHECK(j["cond1"].get<bool>());
    }
  }
  CHECK(saw67);
  CHECK(count >= 2);
  CHECK(slurp("cli_ps.csv").find("6,7,1,true") != std::string::npos);

  // empty scan below the threshold
  REQUIRE(run_cli("pair-scan --eta 0 --bmax 6 --out cli_ps6.jsonl") == 0);
  CHECK(slurp("cli_ps6.jsonl").empty());

  // eta out of range is a usage error
  CHECK(run_cli("pair-scan --eta 1/3 --bmax 8 2>/dev/null") == 1);
}

TEST_CASE("cli witness exit codes") {
  // sqrt2/sqrt2 at eps 0.2, n=1: the Dirichlet point itself is a witness
  int rc = run_cli("witness --alpha sqrt2 --beta sqrt2 --eps 0.2 --eta 0 "
                   "--n 1..1 --out cli_wit.jsonl");
  CHECK(rc == 0);
  json j = json::parse(slurp("cli_wit.jsonl"));
  CHECK(j["stage"]["immediate"].get<bool>());
  CHECK(j["stage"].contains("witness"));

  // sqrt2/sqrt3 fails cond1 at n=1 (q_2(sqrt2)=5 > q_2(sqrt3)=3): no witness
  CHECK(run_cli("witness --alpha sqrt2 --beta sqrt3 --eps 0.2 --n 1..1 "
                "--out cli_wit2.jsonl") == 2);
  json j2 = json::parse(slurp("cli_wit2.jsonl"));
  CHECK(j2.contains("error"));

  // missing required flags
  CHECK(run_cli("witness --eps 0.1 2>/dev/null") == 1);
}

TEST_CASE("cli cartan-check") {
  REQUIRE(run_cli("cartan-check --count 5 --seed 7 --eps 0.5 --out cli_ca.json") == 0);
  json j = json::parse(slurp("cli_ca.json"));
  CHECK(j["checked"] == 5);
  CHECK(j["violations"] == 0);
}
