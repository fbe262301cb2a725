#include "hurwitz/generators.hpp"

#include <algorithm>
#include <stdexcept>

#include "hurwitz/orbifold.hpp"

namespace hurwitz {

namespace {

std::vector<int> run(int value, int count) {
  if (count < 0) throw std::invalid_argument("negative repetition count");
  return std::vector<int>(static_cast<std::size_t>(count), value);
}

std::vector<int> operator+(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

BranchDatum build(const std::vector<std::vector<int>>& partitions, std::optional<int> g = std::nullopt) {
  std::vector<Partition> parts;
  for (const auto& p : partitions) parts.emplace_back(p);
  return BranchDatum::make(std::move(parts), g);
}

int param(const std::vector<int>& params, std::size_t count, const std::string& name) {
  if (params.size() != count) {
    throw std::invalid_argument(name + " takes " + std::to_string(count) + " parameter(s)");
  }
  return params.front();
}

}  // namespace

BranchDatum gen_prop_family(int a, int b, int c, int k, const std::vector<Partition>& extras) {
  const TripleInvariants t = triple_invariants(a, b, c);
  if (!t.n_abc) throw std::invalid_argument("gen_prop_family: chi(a,b,c) must be positive");
  std::vector<int> sorted{a, b, c};
  std::sort(sorted.begin(), sorted.end());
  if (sorted[0] == 2 && sorted[1] == 2 && sorted[2] % 2 == 1) {
    throw std::invalid_argument("gen_prop_family: (2,2,d) with d odd is excluded");
  }
  if (k < 2) throw std::invalid_argument("gen_prop_family: k must be at least 2");
  if ((*t.n_abc * k) % 2 != 0) throw std::invalid_argument("gen_prop_family: n(a,b,c) k / 2 is not an integer");
  const std::int64_t n64 = *t.n_abc * k / 2;
  if (n64 > kMaxDegree) throw std::invalid_argument("gen_prop_family: degree out of range");
  const int n = static_cast<int>(n64);
  int d = 0;
  for (const auto& e : extras) {
    if (e.n() != n) throw std::invalid_argument("gen_prop_family: extras must be partitions of " + std::to_string(n));
    d += defect(e);
  }
  if (d > k - 2) throw std::invalid_argument("gen_prop_family: total defect of extras exceeds k - 2");
  const int u = k - d - 1;
  std::vector<Partition> parts{Partition(std::vector<int>{a * u} + run(a, n / a - u)), Partition(run(b, n / b)),
                               Partition(run(c, n / c))};
  parts.insert(parts.end(), extras.begin(), extras.end());
  return BranchDatum::make(std::move(parts), n, 0);
}

std::vector<std::string> series_names() { return {"iz0", "iz", "such", "thd", "wbd", "koro"}; }

BranchDatum gen_series(const std::string& name, const std::vector<int>& params) {
  if (name == "iz0") {
    if (params.size() != 2) throw std::invalid_argument("iz0 takes 2 parameters");
    const int k = params[0];
    const int l = params[1];
    if (k < 2 || l < 1 || l >= 2 * k || l == k) throw std::invalid_argument("iz0 needs k >= 2, 0 < l < 2k, l != k");
    return build({run(2, k), run(2, k), {l, 2 * k - l}}, 0);
  }
  if (name == "iz") {
    const int s = param(params, 1, name);
    if (s < 1 || s % 5 == 0) throw std::invalid_argument("iz needs s >= 1 not divisible by 5");
    const int n = 6 * (s + 5);
    return build({run(2, n / 2), run(3, n / 3), run(5, s + 6) + std::vector<int>{s}}, 0);
  }
  if (name == "such") {
    const int l = param(params, 1, name);
    if (l < 2 || l % 2 != 0) throw std::invalid_argument("such needs an even l >= 2");
    return build({run(2, 3 * l + 3), run(3, 2 * l + 2), run(5, l + 1) + std::vector<int>{1, l}}, 0);
  }
  if (name == "thd") {
    const int k = param(params, 1, name);
    if (k < 2) throw std::invalid_argument("thd needs k >= 2");
    return build({run(2, k), run(2, k - 2) + std::vector<int>{1, 3}, {k, k}}, 0);
  }
  if (name == "wbd") {
    const int k = param(params, 1, name);
    if (k < 1 || k % 4 != 1) throw std::invalid_argument("wbd needs k = 1 mod 4");
    return build({run(2, k) + std::vector<int>{k + 3}, run(3, k + 1), run(3, k + 1)}, 1);
  }
  if (name == "koro") {
    const int k = param(params, 1, name);
    if (k < 1 || k % 2 != 1) throw std::invalid_argument("koro needs an odd k >= 1");
    return build({run(2, 3 * k + 6), run(3, 2 * k + 4), std::vector<int>{3, 9} + run(6, k)}, 1);
  }
  throw std::invalid_argument("unknown series: " + name);
}

std::vector<Partition> nontrivial_partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  // Descending parts, generated in descending lexicographic order.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      Partition p(cur);
      if (!p.trivial()) out.push_back(std::move(p));
      return;
    }
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, remaining - part, part);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

void enumerate_data(int n, int g, int q_max, const std::function<bool(const BranchDatum&)>& visit) {
  if (n < 1 || g < 0) throw std::invalid_argument("enumerate_data: need n >= 1 and g >= 0");
  if (n == 1) {
    if (g == 0) visit(BranchDatum::make({}, 1, 0));
    return;
  }
  const std::vector<Partition> parts = nontrivial_partitions(n);
  std::vector<int> defects;
  for (const auto& p : parts) defects.push_back(defect(p));
  // Riemann-Hurwitz: the defects of the q partitions sum to 2n - 2 + 2g.
  const std::int64_t total = 2 * static_cast<std::int64_t>(n) - 2 + 2 * static_cast<std::int64_t>(g);
  const std::int64_t q_hi = std::min<std::int64_t>(q_max, total);
  std::vector<int> chosen;
  bool stopped = false;

  for (std::int64_t q = 2; q <= q_hi && !stopped; ++q) {
    auto rec = [&](auto&& self, std::size_t from, std::int64_t left, std::int64_t slots) -> void {
      if (stopped) return;
      if (slots == 0) {
        if (left != 0) return;
        std::vector<Partition> datum;
        for (int i : chosen) datum.push_back(parts[i]);
        if (!visit(BranchDatum::make(std::move(datum), n, g))) stopped = true;
        return;
      }
      for (std::size_t i = from; i < parts.size(); ++i) {
        const std::int64_t rest = left - defects[i];
        if (rest < slots - 1 || rest > (slots - 1) * (n - 1)) continue;
        chosen.push_back(static_cast<int>(i));
        self(self, i, rest, slots - 1);
        chosen.pop_back();
        if (stopped) return;
      }
    };
    rec(rec, 0, total, q);
  }
}

std::vector<BranchDatum> enumerate_data(int n, int g, int q_max) {
  std::vector<BranchDatum> out;
  enumerate_data(n, g, q_max, [&](const BranchDatum& d) {
    out.push_back(d);
    return true;
  });
  return out;
}

}  // namespace hurwitz
