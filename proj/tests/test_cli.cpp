#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "geoalg/cli.hpp"

using namespace geoalg;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "geoalg");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> lines(const std::string& s) {
  std::vector<nlohmann::json> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(nlohmann::json::parse(l));
  return v;
}

std::string drop_timing(std::string s) {
  auto v = lines(s);
  std::string r;
  for (auto& j : v) {
    j.erase("ms");
    r += j.dump() + "\n";
  }
  return r;
}

}  // namespace

TEST_CASE("verify jacobi passes") {
  auto r = run({"verify", "--suite", "jacobi", "--n", "3", "--level", "2"});
  CHECK(r.code == 0);
  auto v = lines(r.out);
  REQUIRE(!v.empty());
  for (auto& j : v) {
    CHECK(j["suite"] == "jacobi");
    CHECK(j["status"] == "pass");
    CHECK(j.contains("ms"));
    CHECK(j["seed"] == 1);
  }
}

TEST_CASE("reports are ordered by case and deterministic for a seed") {
  auto a = run({"verify", "--suite", "frobenius", "--points", "3", "--seed", "7"});
  auto b = run({"verify", "--suite", "frobenius", "--points", "3", "--seed", "7"});
  CHECK(drop_timing(a.out) == drop_timing(b.out));
  auto v = lines(a.out);
  REQUIRE(v.size() > 3);
  CHECK(v[0]["case"] == "block structure symbolic n=3");
}

TEST_CASE("a failing case carries both sides and exit code 1") {
  auto r = run({"verify", "--suite", "yangian", "--n", "2", "--level", "3"});
  CHECK(r.code == 1);
  int fails = 0;
  for (auto& j : lines(r.out))
    if (j["status"] == "fail") {
      ++fails;
      CHECK(j.contains("lhs"));
      CHECK(j.contains("rhs"));
    }
  CHECK(fails == 1);
}

TEST_CASE("stokes at the A_3 point") {
  auto r = run({"stokes", "--point", "a3star"});
  CHECK(r.code == 0);
  auto j = lines(r.out).at(0);
  CHECK(j["S"] == "[[1,3,3],[0,1,3],[0,0,1]]");
  auto t = run({"stokes", "--point", "a4star", "--format", "text"});
  CHECK(t.out.find("[[1,4,6,4],[0,1,4,6],[0,0,1,4],[0,0,0,1]]") != std::string::npos);
}

TEST_CASE("bracket with oracles") {
  auto r = run({"bracket", "--alg", "an", "G[1,3,0]", "G[2,4,0]", "--n", "4"});
  CHECK(r.code == 0);
  CHECK(lines(r.out).at(0)["bracket"] == "2*G[1,2,0]*G[3,4,0] - 2*G[1,4,0]*G[2,3,0]");
  for (std::string oracle : {"goldman", "ks"}) {
    auto o = run({"bracket", "--alg", "an", "G[1,2,0]*G[3,4,0]", "G[2,3,0] + 1", "--n", "4", "--oracle", oracle});
    CHECK(o.code == 0);
    CHECK(lines(o.out).at(0)["agrees"] == true);
  }
  auto d = run({"bracket", "--alg", "dn", "G[1,2,1]", "G[3,1,2]", "--n", "3", "--oracle", "ks"});
  CHECK(d.code == 0);
  CHECK(lines(d.out).at(0)["agrees"] == true);
}

TEST_CASE("braid words") {
  auto r = run({"braid", "--alg", "an", "--n", "3", "--word", "b23 b12 b23 b12 b23 b12"});
  CHECK(r.code == 0);
  auto m = lines(r.out).at(0)["matrix"];
  CHECK(m[0] == "[1, G[1,2,0], G[1,3,0]]");
  auto x = run({"braid", "--alg", "dn", "--n", "3", "--word", "b12 b23 b12", "--level", "3"});
  auto y = run({"braid", "--alg", "dn", "--n", "3", "--word", "b23 b12 b23", "--level", "3"});
  CHECK(x.code == 0);
  CHECK(lines(x.out).at(0)["matrix"] == lines(y.out).at(0)["matrix"]);
  auto p = run({"braid", "--alg", "dnp", "--n", "2", "--p", "2", "--word", "b12 b12^-1"});
  CHECK(lines(p.out).at(0)["matrix"][0] == "[1 + lam^-1*G[1,1,1] + lam^-2, G[1,2,0] + lam^-1*G[1,2,1]]");
}

TEST_CASE("centers, reduce and geodesic") {
  auto c = run({"centers", "--alg", "dnp", "--n", "2", "--p", "2"});
  CHECK(c.code == 0);
  CHECK(lines(c.out).at(0)["expected"] == 2);
  auto k = run({"reduce", "--dn", "--k", "1"});
  CHECK(k.code == 0);
  CHECK(lines(k.out).at(0).contains("Rhat"));
  auto lp = run({"reduce", "--level-p", "3", "--n", "2"});
  CHECK(lp.code == 0);
  CHECK(lines(lp.out).at(0)["generating_identity"] == true);
  auto g = run({"geodesic", "--n", "3", "--i", "1", "--j", "2", "--at", "z1=0"});
  CHECK(lines(g.out).at(0)["value"] == "3");
  auto h = run({"geodesic", "--n", "3", "--i", "1", "--j", "2", "--at", "Z1=1.0"});
  CHECK(lines(h.out).at(0)["value"].get<double>() > 3);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"bracket", "--alg", "an", "G[1,", "G[2,4,0]", "--n", "4"}).code == 2);
  CHECK(run({"bracket", "--alg", "dnp", "G[1,2,0]", "G[1,2,1]", "--n", "2"}).code == 2);
  CHECK(run({"braid", "--alg", "an", "--n", "3", "--word", "b99"}).code == 2);
  CHECK(run({"geodesic", "--n", "3", "--at", "W7=1"}).code == 2);
  CHECK(run({"stokes", "--format", "xml"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("config file supplies defaults") {
  std::string path = "geoalg_test_config.ini";
  {
    std::ofstream f(path);
    f << "format=text\n";
  }
  auto r = run({"--config", path, "stokes", "--point", "a3star"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("command: stokes", 0) == 0);
  {
    std::ofstream f(path);
    f << "[verify]\nsuite=goldman\nn=3\n";
  }
  auto v = run({"--config", path, "verify"});
  CHECK(v.code == 0);
  auto ls = lines(v.out);
  CHECK(ls.size() == 7);
  for (auto& j : ls) CHECK(j["suite"] == "goldman");
  std::remove(path.c_str());
}
