// Command line front end: check, scan, oracle, generate, dessin, halphen.
//
// Exit codes: 0 success (including NonRealizable verdicts), 1 a verification
// that ran and failed, 2 unparseable or out of range input, 3 Unknown or timeout.

#include "CLI11.hpp"
#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/criteria.hpp"
#include "hurwitz/dessins.hpp"
#include "hurwitz/generators.hpp"
#include "hurwitz/halphen.hpp"
#include "hurwitz/oracle.hpp"

using namespace hurwitz;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitUnknown = 3;

// Bumped whenever the criteria or the oracle change what they report.
constexpr const char* kCacheVersion = "criteria-3/oracle-2";
constexpr double kScanTimeout = 60.0;
// Without --oracle a scan still tries a short search on each datum.
constexpr double kQuickTimeout = 1.0;
constexpr std::size_t kScanChunk = 256;

struct Global {
  std::string format = "text";
  std::optional<double> timeout;
  std::string cache;
  int threads = 1;
  bool no_timing = false;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::string fixed3(double v) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3) << v;
  return out.str();
}

struct Record {
  BranchDatum datum;
  Verdict verdict;
  double elapsed_ms = 0;
};

json record_to_json(const Record& r, bool timing) {
  json j;
  j["datum"] = format_datum(r.datum);
  j["verdict"] = to_string(r.verdict.status);
  if (r.verdict.certificate) j["certificate"] = certificate_to_json(*r.verdict.certificate);
  if (r.verdict.witness) j["witness"] = format_constellation(*r.verdict.witness);
  if (!r.verdict.notes.empty()) j["notes"] = r.verdict.notes;
  j["elapsed_ms"] = timing ? std::round(r.elapsed_ms * 1000) / 1000 : 0.0;
  return j;
}

Record record_from_json(const json& j) {
  Record r{parse_datum(j.at("datum").get<std::string>()), {}, j.at("elapsed_ms").get<double>()};
  const auto status = j.at("verdict").get<std::string>();
  if (status == "NonRealizable") {
    r.verdict = Verdict::non_realizable(certificate_from_json(j.at("certificate")));
  } else if (status == "Realizable") {
    r.verdict = Verdict::realizable(parse_constellation(j.at("witness").get<std::string>(), r.datum.n()));
  } else {
    r.verdict = Verdict::unknown(j.value("notes", std::vector<std::string>{}));
  }
  return r;
}

std::string cert_kind(const Verdict& v) { return v.certificate ? to_string(v.certificate->kind) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void print_verdict_text(std::ostream& out, const Record& r, bool timing) {
  out << format_datum(r.datum) << "\n";
  out << "verdict: " << to_string(r.verdict.status) << "\n";
  if (r.verdict.certificate) out << "certificate:\n" << describe(*r.verdict.certificate, 2);
  if (r.verdict.witness) out << "witness: " << format_constellation(*r.verdict.witness) << "\n";
  for (const auto& note : r.verdict.notes) out << "note: " << note << "\n";
  if (timing) out << "elapsed_ms: " << fixed3(r.elapsed_ms) << "\n";
}

void print_record(const Global& g, const Record& r) {
  if (g.format == "json") {
    std::cout << record_to_json(r, !g.no_timing).dump() << "\n";
  } else if (g.format == "csv") {
    std::cout << "datum,verdict,cert_kind,elapsed_ms\n";
    std::cout << csv_field(format_datum(r.datum)) << "," << to_string(r.verdict.status) << "," << cert_kind(r.verdict)
              << "," << fixed3(g.no_timing ? 0 : r.elapsed_ms) << "\n";
  } else {
    print_verdict_text(std::cout, r, !g.no_timing);
  }
}

int exit_for(const Verdict& v) { return v.status == Verdict::Status::Unknown ? kExitUnknown : kExitOk; }

CriteriaOptions criteria_options(bool oracle, std::optional<double> timeout, int threads) {
  CriteriaOptions opt;
  opt.use_oracle = oracle;
  opt.oracle.timeout_seconds = timeout;
  opt.oracle.threads = threads;
  opt.oracle.max_n = std::max(opt.oracle.max_n, 14);
  return opt;
}

Record classify(const BranchDatum& d, const CriteriaOptions& opt) {
  const auto start = Clock::now();
  Verdict v = certify(d, opt);
  return {d, std::move(v), ms_since(start)};
}

// JSONL verdict cache. Entries from another version or mode are ignored.
class Cache {
 public:
  Cache(const std::string& path, std::string mode) : path_(path), mode_(std::move(mode)) {
    if (path_.empty()) return;
    std::ifstream in(path_);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        const json j = json::parse(line);
        if (j.value("version", "") != kCacheVersion || j.value("mode", "") != mode_) continue;
        Record r = record_from_json(j);
        entries_.insert_or_assign(format_datum(r.datum), std::move(r));
      } catch (const std::exception&) {
        // A torn final line from an interrupted run is skipped.
      }
    }
    out_.open(path_, std::ios::app);
  }

  const Record* find(const BranchDatum& d) const {
    auto it = entries_.find(format_datum(d));
    return it == entries_.end() ? nullptr : &it->second;
  }

  void store(const Record& r) {
    if (path_.empty() || r.verdict.status == Verdict::Status::Unknown) return;
    json j = record_to_json(r, true);
    j["version"] = kCacheVersion;
    j["mode"] = mode_;
    out_ << j.dump() << "\n";
    out_.flush();
  }

 private:
  std::string path_;
  std::string mode_;
  std::unordered_map<std::string, Record> entries_;
  std::ofstream out_;
};

BranchDatum read_datum(const std::string& text) {
  try {
    return parse_datum(text);
  } catch (const DatumError& e) {
    throw InputError(std::string("cannot parse datum: ") + e.what());
  }
}

int cmd_check(const Global& g, const std::string& text, bool no_oracle) {
  const BranchDatum d = read_datum(text);
  const Record r = classify(d, criteria_options(!no_oracle, g.timeout, g.threads));
  print_record(g, r);
  return exit_for(r.verdict);
}

int cmd_oracle(const Global& g, const std::string& text) {
  const BranchDatum d = read_datum(text);
  OracleLimits lim;
  lim.timeout_seconds = g.timeout;
  lim.threads = g.threads;
  lim.max_n = std::max(lim.max_n, 14);
  const auto start = Clock::now();
  const OracleResult res = find_constellation(d, lim);
  const double ms = ms_since(start);
  if (g.format == "json") {
    json j{{"datum", format_datum(d)}, {"status", to_string(res.status)}, {"nodes", res.nodes}};
    if (res.witness) j["witness"] = format_constellation(*res.witness);
    if (!res.reason.empty()) j["reason"] = res.reason;
    j["elapsed_ms"] = g.no_timing ? 0.0 : std::round(ms * 1000) / 1000;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << format_datum(d) << "\n" << "status: " << to_string(res.status) << "\n";
    if (res.witness) std::cout << "witness: " << format_constellation(*res.witness) << "\n";
    if (!res.reason.empty()) std::cout << "reason: " << res.reason << "\n";
    std::cout << "nodes: " << res.nodes << "\n";
    if (!g.no_timing) std::cout << "elapsed_ms: " << fixed3(ms) << "\n";
  }
  return res.status == OracleResult::Status::Aborted ? kExitUnknown : kExitOk;
}

struct ScanArgs {
  int n = 0;
  int g = 0;
  int q_max = kUnboundedQ;
  bool oracle = false;
  int max_n = 12;
};

int cmd_scan(const Global& g, const ScanArgs& a) {
  if (a.n < 1 || a.g < 0 || a.q_max < 2) throw InputError("scan needs n >= 1, g >= 0, q-max >= 2");
  if (a.n > a.max_n) throw InputError("n=" + std::to_string(a.n) + " exceeds --max-n " + std::to_string(a.max_n));
  double timeout = g.timeout.value_or(kScanTimeout);
  if (!a.oracle) timeout = std::min(timeout, kQuickTimeout);
  const CriteriaOptions opt = criteria_options(true, timeout, 1);
  Cache cache(g.cache, a.oracle ? "oracle" : "quick");
  const bool timing = !g.no_timing;

  std::map<std::string, int> counts;
  std::map<std::string, int> kinds;
  if (g.format == "csv") std::cout << "datum,verdict,cert_kind,elapsed_ms\n";
  const auto emit = [&](const Record& r) {
    ++counts[to_string(r.verdict.status)];
    if (r.verdict.certificate) ++kinds[cert_kind(r.verdict)];
    if (g.format == "json") {
      std::cout << record_to_json(r, timing).dump() << "\n";
    } else if (g.format == "csv") {
      std::cout << csv_field(format_datum(r.datum)) << "," << to_string(r.verdict.status) << ","
                << cert_kind(r.verdict) << "," << fixed3(timing ? r.elapsed_ms : 0) << "\n";
    } else {
      std::cout << std::left << std::setw(40) << format_datum(r.datum) << " " << std::setw(14)
                << to_string(r.verdict.status) << " " << std::setw(16) << cert_kind(r.verdict);
      if (timing) std::cout << " " << fixed3(r.elapsed_ms);
      std::cout << "\n";
    }
  };

  // Data are classified chunk by chunk; workers fill slots and the main
  // thread alone writes the report and the cache.
  std::vector<BranchDatum> chunk;
  const auto flush = [&]() {
    std::vector<std::optional<Record>> slots(chunk.size());
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (const Record* hit = cache.find(chunk[i])) {
        slots[i] = *hit;
      } else {
        todo.push_back(i);
      }
    }
    std::atomic<std::size_t> next{0};
    const auto work = [&]() {
      for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) slots[todo[k]] = classify(chunk[todo[k]], opt);
    };
    const int workers = std::max(1, std::min<int>(g.threads, static_cast<int>(todo.size())));
    std::vector<std::thread> pool;
    for (int t = 1; t < workers; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    for (std::size_t k : todo) cache.store(*slots[k]);
    for (const auto& s : slots) emit(*s);
    std::cout.flush();
    chunk.clear();
  };
  enumerate_data(a.n, a.g, a.q_max, [&](const BranchDatum& d) {
    chunk.push_back(d);
    if (chunk.size() == kScanChunk) flush();
    return true;
  });
  flush();

  int total = 0;
  for (const auto& [_, c] : counts) total += c;
  if (g.format == "json") {
    json s{{"n", a.n}, {"g", a.g}, {"total", total}, {"counts", counts}, {"cert_kinds", kinds}};
    std::cout << json{{"summary", s}}.dump() << "\n";
  } else if (g.format == "text") {
    std::cout << "summary: n=" << a.n << " g=" << a.g << " total=" << total;
    for (const char* st : {"NonRealizable", "Realizable", "Unknown"}) std::cout << " " << st << "=" << counts[st];
    std::cout << "\n";
    for (const auto& [k, c] : kinds) std::cout << "  " << k << ": " << c << "\n";
  }
  return kExitOk;
}

std::vector<int> parse_ints(const std::vector<std::string>& words) {
  std::vector<int> out;
  for (const auto& w : words) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(w, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != w.size()) throw InputError("not an integer: " + w);
    out.push_back(v);
  }
  return out;
}

void print_datum(const Global& g, const BranchDatum& d) {
  if (g.format == "json") {
    std::cout << json{{"datum", format_datum(d)}, {"n", d.n()}, {"g", d.g()}}.dump() << "\n";
  } else {
    std::cout << format_datum(d) << "\n";
  }
}

int cmd_generate_prop(const Global& g, const std::vector<std::string>& abc, int k,
                      const std::vector<std::string>& extras) {
  const auto v = parse_ints(abc);
  if (v.size() != 3) throw InputError("prop needs three integers a b c");
  std::vector<Partition> parts;
  for (const auto& e : extras) {
    try {
      parts.push_back(parse_partition(e));
    } catch (const DatumError& err) {
      throw InputError(std::string("cannot parse partition: ") + err.what());
    }
  }
  try {
    print_datum(g, gen_prop_family(v[0], v[1], v[2], k, parts));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kExitOk;
}

int cmd_generate_series(const Global& g, const std::string& name, const std::vector<std::string>& params) {
  try {
    print_datum(g, gen_series(name, parse_ints(params)));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kExitOk;
}

CombinatorialMap read_map(const std::string& source) {
  try {
    if (std::filesystem::exists(source)) return load_map(source);
    return named_map(source);
  } catch (const MapError& e) {
    throw InputError(std::string("cannot read map: ") + e.what());
  }
}

int cmd_dessin(const Global& g, const std::string& source, std::optional<int> k, std::optional<int> l) {
  const CombinatorialMap map = read_map(source);
  const BranchDatum d = [&] {
    try {
      return map_to_datum(map);
    } catch (const std::exception& e) {
      throw InputError(std::string("map has no branch datum: ") + e.what());
    }
  }();
  const Record r = classify(d, criteria_options(true, g.timeout, g.threads));
  std::optional<GraphReport> hyp;
  if (k || l) {
    if (!k || !l) throw InputError("--k and --l go together");
    hyp = check_graph_hypotheses(map, *k, *l);
  }
  if (g.format == "json") {
    json j = record_to_json(r, !g.no_timing);
    j["vertices"] = map.vertex_degrees().parts();
    j["faces"] = faces(map);
    if (hyp) j["forbidden"] = hyp->forbidden;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "vertices: " << map.vertex_degrees().to_string() << "\n";
    std::cout << "edges: " << map.edges() << "\n";
    std::cout << "faces: " << Partition(faces(map)).to_string() << "\n";
    if (hyp) {
      std::cout << "bad vertices: " << hyp->bad_vertices.size() << ", bad faces: " << hyp->bad_faces.size() << "\n";
      std::cout << "forbidden: " << (hyp->forbidden ? "yes" : "no") << "\n";
    }
    print_verdict_text(std::cout, r, !g.no_timing);
  }
  return exit_for(r.verdict);
}

int cmd_halphen_verify(const Global& g, const std::string& path) {
  CoveringData cov;
  try {
    cov = load_covering(path);
  } catch (const std::exception& e) {
    throw InputError(std::string("cannot read covering: ") + e.what());
  }
  const bool ok = verify_covering_data(cov.P, cov.Q, cov.R, cov.a, cov.b, cov.c);
  if (g.format == "json") {
    std::cout << json{{"file", path}, {"a", cov.a}, {"b", cov.b}, {"c", cov.c}, {"D", cov.D}, {"ok", ok}}.dump()
              << "\n";
  } else {
    std::cout << (ok ? "OK" : "FAIL") << "\n";
  }
  return ok ? kExitOk : kExitFailed;
}

int cmd_halphen_dihedral(int d) {
  try {
    std::cout << format_covering(dihedral_covering(d));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Realizability of branch data for rational and genus-one branched coverings."};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  double timeout = -1;
  app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--timeout", timeout, "Oracle time limit per datum in seconds");
  app.add_option("--cache", g.cache, "JSONL verdict cache used by scan");
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-timing", g.no_timing, "Report elapsed_ms as 0");

  std::function<int()> run;

  auto* check = app.add_subcommand("check", "Classify one branch datum");
  std::string datum_text;
  bool no_oracle = false;
  check->add_option("datum", datum_text, "Datum such as \"(2,2 | 2,2 | 3,1)\"")->required();
  check->add_flag("--no-oracle", no_oracle, "Stop after the criteria");
  check->callback([&] { run = [&] { return cmd_check(g, datum_text, no_oracle); }; });

  auto* oracle = app.add_subcommand("oracle", "Search for a constellation");
  oracle->add_option("datum", datum_text, "Branch datum")->required();
  oracle->callback([&] { run = [&] { return cmd_oracle(g, datum_text); }; });

  auto* scan = app.add_subcommand("scan", "Classify every datum of a given degree and genus");
  ScanArgs sa;
  scan->add_option("--n", sa.n, "Degree")->required();
  scan->add_option("--g", sa.g, "Genus");
  scan->add_option("--q-max", sa.q_max, "Largest number of branch points");
  scan->add_option("--max-n", sa.max_n, "Largest degree accepted");
  scan->add_flag("--oracle", sa.oracle, "Give the search the full per-datum budget");
  scan->callback([&] { run = [&] { return cmd_scan(g, sa); }; });

  auto* gen = app.add_subcommand("generate", "Instantiate a family of non-realizable data");
  gen->require_subcommand(1);
  auto* prop = gen->add_subcommand("prop", "Divisibility family for a spherical triple");
  std::vector<std::string> abc;
  std::vector<std::string> extras;
  int k = 3;
  prop->add_option("abc", abc, "a b c")->required()->expected(3);
  prop->add_option("--k", k, "Multiplier k")->required();
  prop->add_option("--extra", extras, "Additional partition, repeatable");
  prop->callback([&] { run = [&] { return cmd_generate_prop(g, abc, k, extras); }; });
  auto* series = gen->add_subcommand("series", "Named series");
  std::string series_name;
  std::vector<std::string> params;
  std::string names;
  for (const auto& s : series_names()) names += (names.empty() ? "" : ", ") + s;
  series->add_option("name", series_name, "One of: " + names)->required();
  series->add_option("params", params, "Integer parameters");
  series->callback([&] { run = [&] { return cmd_generate_series(g, series_name, params); }; });

  auto* dessin = app.add_subcommand("dessin", "Planar maps");
  dessin->require_subcommand(1);
  auto* dcheck = dessin->add_subcommand("check", "Datum and verdict of a map");
  std::string source;
  std::optional<int> dk, dl;
  dcheck->add_option("map", source, "Map file or a named map")->required();
  dcheck->add_option("--k", dk, "Face modulus for the graph hypotheses");
  dcheck->add_option("--l", dl, "Vertex modulus for the graph hypotheses");
  dcheck->callback([&] { run = [&] { return cmd_dessin(g, source, dk, dl); }; });

  auto* halphen = app.add_subcommand("halphen", "Covering data and polynomial Fermat identities");
  halphen->require_subcommand(1);
  auto* hverify = halphen->add_subcommand("verify", "Check Q^a + P^b = R^c by exact expansion");
  std::string cov_path;
  hverify->add_option("file", cov_path, "Covering file")->required();
  hverify->callback([&] { run = [&] { return cmd_halphen_verify(g, cov_path); }; });
  auto* hdih = halphen->add_subcommand("dihedral", "Print the dihedral covering of order d");
  int dih = 2;
  hdih->add_option("d", dih, "d >= 2")->required();
  hdih->callback([&] { run = [&] { return cmd_halphen_dihedral(dih); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (timeout >= 0) g.timeout = timeout;
  try {
    return run();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const DatumError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
