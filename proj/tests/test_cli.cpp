#include "doctest.h"
#include "json.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hurwitz/criteria.hpp"
#include "hurwitz/oracle.hpp"

using namespace hurwitz;
using nlohmann::json;

namespace {

struct Run {
  std::string out;
  int code = -1;
};

std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) q += c == '\'' ? std::string("'\\''") : std::string(1, c);
  return q + "'";
}

Run run(const std::vector<std::string>& args) {
  std::string cmd = quote(HURWITZ_CLI);
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("hurwitz_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string data_file(const char* name) { return std::string(HURWITZ_DATA_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

}  // namespace

TEST_CASE("check") {
  auto r = run({"check", "(2,2 | 2,2 | 1,3)"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "verdict: NonRealizable"));
  CHECK(contains(r.out, "T1-bad"));

  r = run({"check", "(5 | 5)"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "verdict: Realizable"));
  CHECK(contains(r.out, "witness: "));

  r = run({"--format", "json", "check", "(4,2^7 | 3^6 | 3^6)"});
  CHECK(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j.at("verdict") == "NonRealizable");
  CHECK(j.at("certificate").at("kind") == "T0-divisibility");
  CHECK(j.contains("elapsed_ms"));
  CHECK(j.at("datum") == "(4,2^7 | 3^6 | 3^6) n=18 g=0");

  r = run({"--format", "csv", "check", "(5 | 5)"});
  CHECK(lines(r.out).at(0) == "datum,verdict,cert_kind,elapsed_ms");
  CHECK(lines(r.out).at(1).rfind("(5 | 5) n=5 g=0,Realizable,,", 0) == 0);
}

TEST_CASE("exit codes") {
  CHECK(run({"check", "(2,2 | 3)"}).code == 2);
  CHECK(run({"check", "(2,2 | 2,2"}).code == 2);
  CHECK(run({"check", "(1 | 1)"}).code == 2);
  CHECK(run({"check", "(2 | 2) g=1"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"--format", "xml", "check", "(5 | 5)"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"--timeout", "0", "oracle", "(2^5 | 2^3,1,3 | 5,5)"}).code == 3);
  CHECK(run({"--timeout", "0", "check", "(3,3 | 3,3 | 3,3)"}).code == 3);
  CHECK(run({"check", "--no-oracle", "(5 | 5)"}).code == 3);
  CHECK(run({"oracle", "(2,2 | 2,2 | 1,3)"}).code == 0);
  CHECK(run({"generate", "prop", "2", "2", "3", "--k", "3"}).code == 2);
  CHECK(run({"generate", "series", "nosuch", "1"}).code == 2);
  CHECK(run({"generate", "series", "thd", "x"}).code == 2);
  CHECK(run({"dessin", "check", "/nonexistent/file.map"}).code == 2);
  CHECK(run({"dessin", "check", "edge"}).code == 2);
  CHECK(run({"halphen", "verify", "/nonexistent.cov"}).code == 2);
  CHECK(run({"scan", "--n", "20"}).code == 2);
}

TEST_CASE("json verdicts re-verify") {
  CriteriaOptions opt;
  for (const char* d : {"(2,2 | 2,2 | 1,3)", "(9,3^5 | 3^8 | 2^12)", "(2^15 | 3^10 | 5^5,1,4)", "(2^4 | 2^2,1,3 | 4,4)",
                        "(3,3 | 3,3 | 3,3)", "(3,2 | 5 | 4,1)"}) {
    INFO(std::string(d));
    const Run r = run({"--format", "json", "check", d});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    const BranchDatum datum = parse_datum(j.at("datum").get<std::string>());
    CHECK(datum == parse_datum(d));
    if (j.at("verdict") == "NonRealizable") {
      CHECK(verify_certificate(datum, certificate_from_json(j.at("certificate")), opt));
    } else {
      REQUIRE(j.at("verdict") == "Realizable");
      const auto c = parse_constellation(j.at("witness").get<std::string>(), datum.n());
      CHECK(verify_constellation(c.perms, datum));
    }
  }
}

TEST_CASE("oracle") {
  auto r = run({"oracle", "(2^4 | 2^2,1,3 | 4,4)"});
  CHECK(contains(r.out, "status: Exhausted"));
  r = run({"--format", "json", "oracle", "(3,3 | 3,3 | 3,3)"});
  const json j = json::parse(r.out);
  CHECK(j.at("status") == "Found");
  const auto c = parse_constellation(j.at("witness").get<std::string>(), 6);
  CHECK(verify_constellation(c.perms, parse_datum("(3,3 | 3,3 | 3,3)")));
}

TEST_CASE("scan") {
  auto r = run({"scan", "--n", "4", "--g", "0"});
  CHECK(r.code == 0);
  bool found = false;
  for (const auto& l : lines(r.out)) {
    if (l.rfind("(3,1 | 2^2 | 2^2) n=4 g=0", 0) == 0) found = contains(l, "NonRealizable");
  }
  CHECK(found);
  CHECK(contains(r.out, "summary: n=4 g=0 total=14 NonRealizable=1 Realizable=13 Unknown=0"));

  r = run({"--format", "csv", "scan", "--n", "2"});
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 2);
  CHECK(ls[1].rfind("(2 | 2) n=2 g=0,Realizable,,", 0) == 0);

  r = run({"--format", "json", "--threads", "4", "scan", "--n", "7", "--oracle"});
  const auto js = lines(r.out);
  const json summary = json::parse(js.back()).at("summary");
  CHECK(summary.at("total") == static_cast<int>(js.size()) - 1);
  CHECK(summary.at("counts").at("Realizable") == summary.at("total"));
  CHECK_FALSE(summary.at("counts").contains("NonRealizable"));
}

TEST_CASE("scan resumed from cache is byte identical") {
  const auto full = scratch("full.jsonl");
  const auto part = scratch("part.jsonl");
  std::filesystem::remove(full);
  std::filesystem::remove(part);
  const std::vector<std::string> base{"--no-timing", "--format", "csv", "--threads", "2"};
  auto args = [&](const std::filesystem::path& cache) {
    auto a = base;
    for (const char* s : {"--cache", "", "scan", "--n", "6", "--g", "0"}) a.push_back(s);
    a[base.size() + 1] = cache.string();
    return a;
  };
  const Run reference = run(args(full));
  CHECK(reference.code == 0);
  // Simulate an interrupted run: keep half the entries and a torn line.
  std::ifstream in(full);
  std::ofstream out(part);
  const auto entries = lines(std::string(std::istreambuf_iterator<char>(in), {}));
  REQUIRE(entries.size() > 4);
  for (std::size_t i = 0; i < entries.size() / 2; ++i) out << entries[i] << "\n";
  out << entries.back().substr(0, entries.back().size() / 2);
  out.close();
  const Run resumed = run(args(part));
  CHECK(resumed.out == reference.out);
  const Run cached = run(args(full));
  CHECK(cached.out == reference.out);
  auto plain = base;
  for (const char* s : {"scan", "--n", "6"}) plain.push_back(s);
  CHECK(run(plain).out == reference.out);
}

TEST_CASE("generate") {
  auto r = run({"generate", "prop", "2", "3", "3", "--k", "3"});
  CHECK(r.code == 0);
  CHECK(r.out == "(4,2^7 | 3^6 | 3^6) n=18 g=0\n");
  r = run({"generate", "prop", "2", "3", "3", "--k", "3", "--extra", "2,1^16"});
  CHECK(r.out == "(3^6 | 3^6 | 2^9 | 2,1^16) n=18 g=0\n");
  r = run({"generate", "series", "thd", "4"});
  CHECK(r.out == "(4^2 | 3,2^2,1 | 2^4) n=8 g=0\n");
  r = run({"--format", "json", "generate", "series", "koro", "1"});
  CHECK(json::parse(r.out).at("g") == 1);
}

TEST_CASE("dessin and halphen") {
  auto r = run({"dessin", "check", data_file("tetrahedron.map")});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(3^4 | 3^4 | 2^6) n=12 g=0"));
  CHECK(contains(r.out, "verdict: Realizable"));
  r = run({"dessin", "check", "triangle", "--k", "3", "--l", "2"});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "forbidden: no"));

  for (const char* f : {"dihedral_d2.cov", "tetrahedral.cov", "octahedral.cov", "icosahedral.cov"}) {
    r = run({"halphen", "verify", data_file(f)});
    CHECK(r.code == 0);
    CHECK(r.out == "OK\n");
  }
  const auto bad = scratch("bad.cov");
  std::ofstream(bad) << "D=1 a=2 b=2 c=2\nP: -1, 0, 1\nQ: 3/4, 5/2, 3/4\nR: 5/4, 3/2, 7/4\n";
  r = run({"halphen", "verify", bad.string()});
  CHECK(r.code == 1);
  CHECK(r.out == "FAIL\n");
  r = run({"halphen", "dihedral", "3"});
  const auto cov = scratch("d3.cov");
  std::ofstream(cov) << r.out;
  CHECK(run({"halphen", "verify", cov.string()}).out == "OK\n");
}
