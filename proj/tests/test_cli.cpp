#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#ifndef ITMLAB_BIN
#define ITMLAB_BIN "./itmlab"
#endif

namespace {

struct RunResult {
  int status = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  RunResult r;
  std::string cmd = std::string(ITMLAB_BIN) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, got);
  int rc = pclose(p);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

nlohmann::json parsed(const RunResult& r) {
  nlohmann::json j = nlohmann::json::parse(r.out);
  j.erase("timestamp");
  return j;
}

}  // namespace

TEST_CASE("classify command") {
  RunResult rot = run("classify --alpha 1/3 --beta 1/3 --depth 5");
  CHECK(rot.status == 0);
  nlohmann::json j = parsed(rot);
  CHECK(j["pass"] == true);
  CHECK(j["checks"][0]["data"]["type"] == "finite");
  CHECK(j["checks"][0]["data"]["depth"] == 0);
  CHECK(j["checks"][0]["data"]["degenerate_branches"] == true);

  RunResult bt = run("classify --alpha 2/3 --beta 1/3 --depth 10");
  CHECK(bt.status == 0);
  CHECK(parsed(bt)["checks"][0]["data"]["depth"] == 1);

  RunResult bruin = run("classify --lambda 1/4,1/4,1/4,1/4 --d 4 --depth 8");
  CHECK(bruin.status == 0);
  CHECK(parsed(bruin)["schema_version"] == 1);

  CHECK(run("classify --alpha nonsense --beta 1/3").status == 2);
  CHECK(run("classify --alpha 1/4 --beta 1/2 --depth 3").status == 2);  // outside U_2
}

TEST_CASE("verify command exit codes") {
  RunResult pf = run("verify --suite pf");
  CHECK(pf.status == 0);
  CHECK(parsed(pf)["pass"] == true);
  CHECK(run("verify --suite bogus").status != 0);
  CHECK(run("verify --suite steinberg --d 4").status == 0);
}

TEST_CASE("deterministic reports modulo timestamp") {
  std::string cmd = "verify --suite column-growth --seed 7 --kmax 6";
  RunResult a = run(cmd), b = run(cmd);
  CHECK(a.status == 0);
  CHECK(parsed(a).dump() == parsed(b).dump());

  std::string ly = "lyapunov --mode spectrum --d 3 --dist geometric:0.5 --steps 2000 "
                   "--samples 4 --seed 99 --threads 2";
  RunResult c = run(ly), d = run(ly);
  CHECK(c.status == 0);
  CHECK(parsed(c).dump() == parsed(d).dump());
}

TEST_CASE("lyapunov csv output") {
  std::string csv = "/tmp/itmlab_test_sweep.csv";
  std::remove(csv.c_str());
  RunResult r = run("lyapunov --mode spectrum --d 3 --dist periodic:2 --steps 2000 "
                    "--samples 1 --csv " + csv);
  CHECK(r.status == 0);
  std::ifstream f(csv);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  CHECK(line == "family,d,steps,samples,seed,exp_index,estimate,ci95");
  int rows = 0;
  while (std::getline(f, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 3);
}

TEST_CASE("failing checks give exit code 1") {
  // the all-ones cocycle has all exponents zero, so the positivity check fails
  RunResult r = run("lyapunov --mode second --d 3 --dist periodic:1 --steps 200 --samples 1");
  CHECK(r.status == 1);
  CHECK(parsed(r)["pass"] == false);
}

TEST_CASE("config file dispatch") {
  std::string path = "/tmp/itmlab_test_config.json";
  {
    std::ofstream f(path);
    f << R"({"command":"verify","args":{"suite":"pf"}})";
  }
  RunResult ok = run("--config " + path);
  CHECK(ok.status == 0);
  CHECK(parsed(ok)["command"] == "verify/pf");

  {
    std::ofstream f(path);
    f << R"({"command":"verify","args":{"suite":"pf","bogus_field":1}})";
  }
  CHECK(run("--config " + path).status == 2);  // unknown fields rejected

  {
    std::ofstream f(path);
    f << R"({"command":"verify","extra":{}})";
  }
  CHECK(run("--config " + path).status == 2);
}

TEST_CASE("output files and the default directory variable") {
  std::string dir = "/tmp/itmlab_test_outdir";
  std::string mk = "mkdir -p " + dir;
  REQUIRE(std::system(mk.c_str()) == 0);

  std::string abs_target = dir + "/absolute.json";
  std::remove(abs_target.c_str());
  RunResult r = run("veech --ks 3,1,4,1 --t 1/2 --n 4 --out " + abs_target);
  CHECK(r.status == 0);
  CHECK(std::ifstream(abs_target).good());

  // a relative --out resolves under ITMLAB_OUT_DIR when it is set
  std::string target = dir + "/report.json";
  std::remove(target.c_str());
  std::string with_env = "ITMLAB_OUT_DIR=" + dir + " " + std::string(ITMLAB_BIN) +
                         " veech --ks 3,1,4,1 --t 1/2 --n 4 --out report.json >/dev/null 2>&1";
  REQUIRE(std::system(with_env.c_str()) == 0);
  std::ifstream f(target);
  REQUIRE(f.good());
  nlohmann::json j = nlohmann::json::parse(f);
  CHECK(j["checks"][0]["data"]["residuals"].size() == 5);
}

TEST_CASE("towers and top-exponent modes") {
  RunResult t = run("towers --ks 2,2,2");
  CHECK(t.status == 0);
  nlohmann::json j = parsed(t);
  CHECK(j["checks"][0]["data"]["heights"] == nlohmann::json({"4", "9", "6"}));
  CHECK(j["checks"][0]["data"]["names"][0] == "3122");

  RunResult top = run("lyapunov --mode top --family B --d 3 --dist periodic:2 "
                      "--steps 5000 --samples 1");
  CHECK(top.status == 0);
  double est = parsed(top)["checks"][0]["data"]["exponents"][0].get<double>();
  CHECK(std::abs(est - 0.8095880) < 1e-4);  // log of the dominant root
}

TEST_CASE("construct command") {
  RunResult m1 = run("construct minus-one --blocks 3 --points 100");
  CHECK(m1.status == 0);
  nlohmann::json j = parsed(m1);
  CHECK(j["pass"] == true);
  CHECK(j["checks"][0]["data"]["parity_certificate"] == true);

  RunResult ir = run("construct irrational --blocks 2 --points 50 --precision 1/100");
  CHECK(ir.status == 0);
  CHECK(parsed(ir)["pass"] == true);
}
