#include "hurwitz/dessins.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "hurwitz/criteria.hpp"

namespace hurwitz {

namespace {

int count_cycles(const Perm& p) { return cycle_type(p).size(); }

}  // namespace

CombinatorialMap::CombinatorialMap(Perm alpha, Perm sigma) : alpha_(std::move(alpha)), sigma_(std::move(sigma)) {
  if (alpha_.size() != sigma_.size()) throw MapError("alpha and sigma act on different dart sets");
  if (alpha_.empty() || alpha_.size() % 2 != 0) throw MapError("a map needs a positive even number of darts");
  if (!is_permutation(alpha_) || !is_permutation(sigma_)) throw MapError("alpha and sigma must be permutations");
  for (int d = 0; d < darts(); ++d) {
    if (alpha_[d] == d || alpha_[alpha_[d]] != d) throw MapError("alpha must be a fixed-point-free involution");
  }
}

int CombinatorialMap::vertices() const { return count_cycles(sigma_); }

int CombinatorialMap::face_count() const { return count_cycles(face_perm()); }

bool CombinatorialMap::connected() const {
  std::vector<char> seen(static_cast<std::size_t>(darts()), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int d = stack.back();
    stack.pop_back();
    for (int e : {alpha_[d], sigma_[d]}) {
      if (!seen[e]) {
        seen[e] = 1;
        ++reached;
        stack.push_back(e);
      }
    }
  }
  return reached == darts();
}

int CombinatorialMap::genus() const {
  if (!connected()) throw MapError("genus is defined here for connected maps only");
  const int euler = vertices() - edges() + face_count();
  return (2 - euler) / 2;
}

std::vector<int> faces(const CombinatorialMap& map) { return cycle_type(map.face_perm()).parts(); }

CombinatorialMap subdivide_to_bipartite(const CombinatorialMap& map) {
  const int m = map.darts();
  Perm alpha(static_cast<std::size_t>(2 * m));
  Perm sigma(static_cast<std::size_t>(2 * m));
  for (int d = 0; d < m; ++d) {
    alpha[d] = d + m;
    alpha[d + m] = d;
    sigma[d] = map.sigma()[d];
    sigma[d + m] = map.alpha()[d] + m;
  }
  return CombinatorialMap(std::move(alpha), std::move(sigma));
}

BranchDatum map_to_datum(const CombinatorialMap& map) {
  if (!map.connected()) throw MapError("map is disconnected");
  if (map.genus() != 0) throw MapError("map is not planar (genus " + std::to_string(map.genus()) + ")");
  const int e = map.edges();
  std::vector<Partition> parts{map.vertex_degrees(), Partition(std::vector<int>(static_cast<std::size_t>(e), 2)),
                               Partition(faces(map))};
  for (const auto& p : parts) {
    if (p.trivial()) throw DatumError(DatumError::Kind::TrivialPartition, "map gives a trivial partition");
  }
  return BranchDatum::make(std::move(parts), 2 * e, 0);
}

namespace {

std::vector<int> not_divisible(const std::vector<int>& degrees, int m) {
  std::vector<int> out;
  for (int d : degrees) {
    if (d % m != 0) out.push_back(d);
  }
  return out;
}

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

// Patterns for "X degrees divisible by k, Y degrees divisible by l" where
// the exceptions are bad_x and bad_y. Returns whether a forbidden one holds.
bool classify(const std::vector<int>& bad_x, const std::vector<int>& bad_y, int k, int l, const std::string& x,
              const std::string& y, std::vector<std::string>& patterns) {
  const std::string prefix = x + " mod " + std::to_string(k) + ", " + y + " mod " + std::to_string(l) + ": ";
  if (bad_x.empty() && bad_y.empty()) {
    patterns.push_back(prefix + "all divisible (allowed)");
    return false;
  }
  if (bad_x.empty() && bad_y.size() == 1) {
    patterns.push_back(prefix + "one exceptional " + y + " " + join(bad_y) + " (forbidden)");
    return true;
  }
  if (bad_x.empty() && bad_y.size() == 2) {
    const bool equal = std::gcd(bad_y[0], l) == std::gcd(bad_y[1], l);
    patterns.push_back(prefix + "two exceptional " + y + "s " + join(bad_y) +
                       (equal ? " with equal gcd (allowed)" : " with distinct gcd (forbidden)"));
    return !equal;
  }
  // The same statements for the dual graph.
  if (bad_x.size() == 1 && bad_y.empty()) {
    patterns.push_back(prefix + "one exceptional " + x + " " + join(bad_x) + " (forbidden)");
    return true;
  }
  if (bad_x.size() == 2 && bad_y.empty()) {
    const bool equal = std::gcd(bad_x[0], k) == std::gcd(bad_x[1], k);
    patterns.push_back(prefix + "two exceptional " + x + "s " + join(bad_x) +
                       (equal ? " with equal gcd (allowed)" : " with distinct gcd (forbidden)"));
    return !equal;
  }
  if (bad_x.size() == 1 && bad_y.size() == 1) {
    const bool equal = k / std::gcd(bad_x[0], k) == l / std::gcd(bad_y[0], l);
    patterns.push_back(prefix + "one exceptional " + x + " " + join(bad_x) + " and " + y + " " + join(bad_y) +
                       (equal ? " with matching orders (allowed)" : " with distinct orders (forbidden)"));
    return !equal;
  }
  return false;
}

}  // namespace

GraphReport check_graph_hypotheses(const CombinatorialMap& map, int k, int l) {
  if (k < 2 || l < 2) throw std::invalid_argument("check_graph_hypotheses: k and l must be at least 2");
  if (!map.connected()) throw MapError("map is disconnected");
  if (map.genus() != 0) throw MapError("map is not planar");

  GraphReport r;
  r.k = k;
  r.l = l;
  const std::vector<int> face_deg = faces(map);
  const std::vector<int> vertex_deg = map.vertex_degrees().parts();
  r.bad_faces = not_divisible(face_deg, k);
  r.bad_vertices = not_divisible(vertex_deg, l);
  r.forbidden = classify(r.bad_faces, r.bad_vertices, k, l, "face", "vertex", r.patterns);
  // Dual reading: vertex degrees modulo k, face degrees modulo l.
  const bool dual = classify(not_divisible(vertex_deg, k), not_divisible(face_deg, l), k, l, "vertex", "face",
                             r.patterns);
  r.forbidden = r.forbidden || dual;
  try {
    r.t1_certified = check_t1_bad(map_to_datum(map)).has_value();
  } catch (const DatumError&) {
    r.t1_certified = false;
  }
  return r;
}

CombinatorialMap parse_map(std::string_view text) {
  std::map<long long, int> ids;
  auto id = [&](long long label) {
    auto [it, inserted] = ids.emplace(label, static_cast<int>(ids.size()));
    return it->second;
  };
  std::vector<std::vector<int>> rotations;
  std::vector<std::pair<int, int>> edges;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    std::vector<long long> labels;
    long long x = 0;
    while (ls >> x) labels.push_back(x);
    if (!ls.eof()) throw MapError("line " + std::to_string(line_no) + ": expected integer dart labels");
    if (tag == "v:") {
      if (labels.empty()) throw MapError("line " + std::to_string(line_no) + ": vertex without darts");
      std::vector<int> rot;
      for (long long lab : labels) rot.push_back(id(lab));
      rotations.push_back(std::move(rot));
    } else if (tag == "e:") {
      if (labels.size() != 2) throw MapError("line " + std::to_string(line_no) + ": an edge pairs two darts");
      edges.emplace_back(id(labels[0]), id(labels[1]));
    } else {
      throw MapError("line " + std::to_string(line_no) + ": unknown record '" + tag + "'");
    }
  }
  const int m = static_cast<int>(ids.size());
  if (m == 0) throw MapError("empty map");
  Perm sigma(static_cast<std::size_t>(m), -1);
  Perm alpha(static_cast<std::size_t>(m), -1);
  for (const auto& rot : rotations) {
    for (std::size_t i = 0; i < rot.size(); ++i) {
      if (sigma[rot[i]] != -1) throw MapError("dart listed at two vertices");
      sigma[rot[i]] = rot[(i + 1) % rot.size()];
    }
  }
  for (const auto& [a, b] : edges) {
    if (a == b || alpha[a] != -1 || alpha[b] != -1) throw MapError("edge pairing is not an involution");
    alpha[a] = b;
    alpha[b] = a;
  }
  for (int d = 0; d < m; ++d) {
    if (sigma[d] == -1) throw MapError("dart missing from the vertex rotations");
    if (alpha[d] == -1) throw MapError("dart missing from the edge pairing");
  }
  return CombinatorialMap(std::move(alpha), std::move(sigma));
}

CombinatorialMap load_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MapError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_map(buf.str());
}

std::string format_map(const CombinatorialMap& map) {
  std::ostringstream out;
  std::vector<char> seen(static_cast<std::size_t>(map.darts()), 0);
  for (int d = 0; d < map.darts(); ++d) {
    if (seen[d]) continue;
    out << "v:";
    for (int e = d; !seen[e]; e = map.sigma()[e]) {
      seen[e] = 1;
      out << ' ' << e + 1;
    }
    out << '\n';
  }
  for (int d = 0; d < map.darts(); ++d) {
    if (d < map.alpha()[d]) out << "e: " << d + 1 << ' ' << map.alpha()[d] + 1 << '\n';
  }
  return out.str();
}

std::vector<int> canonical_code(const CombinatorialMap& map) {
  const int m = map.darts();
  std::vector<int> best;
  std::vector<int> label(static_cast<std::size_t>(m));
  std::vector<int> order;
  std::vector<int> code;
  for (int root = 0; root < m; ++root) {
    std::fill(label.begin(), label.end(), -1);
    order.clear();
    code.clear();
    label[root] = 0;
    order.push_back(root);
    bool worse = false;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const int d = order[i];
      for (int e : {map.alpha()[d], map.sigma()[d]}) {
        if (label[e] < 0) {
          label[e] = static_cast<int>(order.size());
          order.push_back(e);
        }
        code.push_back(label[e]);
        // The code is built left to right, so a prefix comparison prunes.
        if (!best.empty() && !worse) {
          const std::size_t j = code.size() - 1;
          if (code[j] > best[j]) {
            worse = true;
          } else if (code[j] < best[j]) {
            best.clear();
          }
        }
      }
      if (worse) break;
    }
    if (!worse && (best.empty() || code < best)) best = code;
  }
  return best;
}

std::vector<CombinatorialMap> planar_maps(int max_edges) {
  std::vector<CombinatorialMap> all;
  if (max_edges < 1) return all;
  std::vector<CombinatorialMap> level{CombinatorialMap({1, 0}, {0, 1}), CombinatorialMap({1, 0}, {1, 0})};
  all = level;
  for (int e = 2; e <= max_edges; ++e) {
    std::set<std::vector<int>> seen;
    std::vector<CombinatorialMap> next;
    auto offer = [&](Perm alpha, Perm sigma) {
      CombinatorialMap cand(std::move(alpha), std::move(sigma));
      if (cand.genus() != 0) return;
      if (seen.insert(canonical_code(cand)).second) next.push_back(std::move(cand));
    };
    for (const auto& map : level) {
      const int m = map.darts();
      const int x = m;
      const int y = m + 1;
      Perm alpha = map.alpha();
      alpha.push_back(y);
      alpha.push_back(x);
      for (int c1 = 0; c1 < m; ++c1) {
        // Pendant edge in the corner after c1.
        Perm sigma = map.sigma();
        sigma.push_back(sigma[c1]);
        sigma.push_back(y);
        sigma[c1] = x;
        offer(alpha, sigma);
        // Edge joining the corners after c1 and c2.
        for (int c2 = 0; c2 < m; ++c2) {
          Perm s = map.sigma();
          s.resize(static_cast<std::size_t>(m + 2));
          s[x] = s[c1];
          s[c1] = x;
          s[y] = s[c2];
          s[c2] = y;
          offer(alpha, s);
        }
      }
    }
    all.insert(all.end(), next.begin(), next.end());
    level = std::move(next);
  }
  return all;
}

namespace {

// Rotation system from straight-line coordinates.
CombinatorialMap from_embedding(const std::vector<std::pair<double, double>>& pts,
                                const std::vector<std::pair<int, int>>& edges) {
  const int m = static_cast<int>(2 * edges.size());
  Perm alpha(static_cast<std::size_t>(m));
  std::vector<std::vector<std::pair<double, int>>> around(pts.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    const int du = static_cast<int>(2 * i);
    const int dv = du + 1;
    alpha[du] = dv;
    alpha[dv] = du;
    around[u].emplace_back(std::atan2(pts[v].second - pts[u].second, pts[v].first - pts[u].first), du);
    around[v].emplace_back(std::atan2(pts[u].second - pts[v].second, pts[u].first - pts[v].first), dv);
  }
  Perm sigma(static_cast<std::size_t>(m));
  for (auto& list : around) {
    std::sort(list.begin(), list.end());
    for (std::size_t i = 0; i < list.size(); ++i) sigma[list[i].second] = list[(i + 1) % list.size()].second;
  }
  return CombinatorialMap(std::move(alpha), std::move(sigma));
}

std::vector<std::pair<double, double>> circle(int n) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < n; ++i) {
    const double t = 2 * M_PI * i / n;
    pts.emplace_back(std::cos(t), std::sin(t));
  }
  return pts;
}

}  // namespace

CombinatorialMap named_map(const std::string& name) {
  if (name == "edge") return CombinatorialMap({1, 0}, {0, 1});
  if (name == "loop") return CombinatorialMap({1, 0}, {1, 0});
  if (name == "triangle") return named_map("cycle3");
  if (name == "tetrahedron") {
    auto pts = circle(3);
    pts.emplace_back(0.0, 0.0);
    return from_embedding(pts, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}});
  }
  auto suffix = [&](const std::string& prefix) -> int {
    if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return -1;
    return std::stoi(name.substr(prefix.size()));
  };
  if (int n = suffix("cycle"); n >= 2) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return from_embedding(circle(n), edges);
  }
  if (int n = suffix("star"); n >= 1) {
    auto pts = circle(n);
    pts.emplace_back(0.0, 0.0);
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(n, i);
    return from_embedding(pts, edges);
  }
  throw MapError("unknown named map: " + name);
}

}  // namespace hurwitz
