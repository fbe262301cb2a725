#include "hurwitz/orbifold.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace hurwitz {

OrbifoldSignature::OrbifoldSignature(std::vector<int> values) : values_(std::move(values)) {
  for (int v : values_) {
    if (v < 2) throw std::invalid_argument("orbifold values must be at least 2");
  }
  std::sort(values_.begin(), values_.end());
}

OrbifoldSignature::Class OrbifoldSignature::classify() const noexcept {
  if (values_.empty()) return Class::NonRamified;
  if (values_.size() == 1) return Class::Bad;
  if (values_.size() == 2 && values_[0] != values_[1]) return Class::Bad;
  return Class::Good;
}

std::string OrbifoldSignature::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i != 0) out += ',';
    out += std::to_string(values_[i]);
  }
  return out + "}";
}

Rational chi_of(const OrbifoldSignature& sig) {
  Rational chi(2);
  for (int v : sig.values()) chi += Rational(1, v) - 1;
  return chi;
}

bool spherical(const OrbifoldSignature& sig) {
  const auto& v = sig.values();
  switch (v.size()) {
    case 0:
      return true;
    case 2:
      return v[0] == v[1];
    case 3:
      if (v[0] != 2) return false;
      if (v[1] == 2) return true;
      return v[1] == 3 && v[2] <= 5;
    default:
      return false;
  }
}

std::int64_t theta_degree(const OrbifoldSignature& sig) {
  if (!sig.good()) throw std::domain_error("theta_degree: bad signature " + sig.to_string());
  if (!spherical(sig)) throw std::domain_error("theta_degree: chi <= 0 for " + sig.to_string());
  const auto& v = sig.values();
  if (v.empty()) return 1;
  if (v.size() == 2) return v[0];
  if (v[1] == 2) return 2 * static_cast<std::int64_t>(v[2]);
  switch (v[2]) {
    case 3:
      return 12;
    case 4:
      return 24;
    default:
      return 60;
  }
}

TripleInvariants triple_invariants(int a, int b, int c) {
  if (a < 2 || b < 2 || c < 2) throw std::invalid_argument("triple_invariants: entries must be >= 2");
  TripleInvariants t;
  t.a = a;
  t.b = b;
  t.c = c;
  t.chi = Rational(1, a) + Rational(1, b) + Rational(1, c) - 1;
  if (t.chi > 0) {
    const Rational n = Rational(2) / t.chi;
    t.n_abc = n.numerator();
  }
  const std::int64_t ab = std::lcm<std::int64_t>(a, b);
  t.l_abc = std::lcm<std::int64_t>(ab, c);
  return t;
}

OrbifoldAssignment::OrbifoldAssignment(std::vector<std::pair<int, int>> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].first < 0) throw std::invalid_argument("assignment index must be non-negative");
    if (entries_[i].second < 2) throw std::invalid_argument("assignment values must be at least 2");
    if (i > 0 && entries_[i].first == entries_[i - 1].first) {
      throw std::invalid_argument("assignment uses a partition twice");
    }
  }
}

OrbifoldSignature OrbifoldAssignment::signature() const {
  std::vector<int> values;
  for (const auto& [index, nu] : entries_) values.push_back(nu);
  return OrbifoldSignature(std::move(values));
}

int OrbifoldAssignment::nu(int index) const noexcept {
  for (const auto& [i, v] : entries_) {
    if (i == index) return v;
  }
  return 1;
}

std::string OrbifoldAssignment::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i != 0) out += ", ";
    out += std::to_string(entries_[i].first + 1) + "->" + std::to_string(entries_[i].second);
  }
  return out + "}";
}

bool assignment_before(const OrbifoldAssignment& a, const OrbifoldAssignment& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (int i = 0; i < a.size(); ++i) {
    if (a.entries()[i].first != b.entries()[i].first) return a.entries()[i].first < b.entries()[i].first;
  }
  for (int i = 0; i < a.size(); ++i) {
    if (a.entries()[i].second != b.entries()[i].second) return a.entries()[i].second < b.entries()[i].second;
  }
  return false;
}

std::string to_string(PullbackResult::Kind kind) {
  switch (kind) {
    case PullbackResult::Kind::NonRamified:
      return "non-ramified";
    case PullbackResult::Kind::Bad:
      return "bad";
    case PullbackResult::Kind::GoodPositive:
      return "good-positive";
    case PullbackResult::Kind::GoodNonpositive:
      return "good-nonpositive";
  }
  return "?";
}

PullbackResult pullback(const BranchDatum& datum, const OrbifoldAssignment& asg) {
  if (!asg.signature().good()) throw std::invalid_argument("pullback: induced orbifold is bad");
  std::vector<int> values;
  for (const auto& [index, nu] : asg.entries()) {
    if (index >= datum.q()) throw std::invalid_argument("pullback: assignment index outside the datum");
    for (int e : datum[index].parts()) {
      const int v = nu / std::gcd(e, nu);
      if (v > 1) values.push_back(v);
    }
  }
  PullbackResult r;
  r.signature = OrbifoldSignature(std::move(values));
  r.chi = chi_of(r.signature);
  switch (r.signature.classify()) {
    case OrbifoldSignature::Class::NonRamified:
      r.kind = PullbackResult::Kind::NonRamified;
      break;
    case OrbifoldSignature::Class::Bad:
      r.kind = PullbackResult::Kind::Bad;
      break;
    case OrbifoldSignature::Class::Good:
      r.kind = r.chi > 0 ? PullbackResult::Kind::GoodPositive : PullbackResult::Kind::GoodNonpositive;
      break;
  }
  return r;
}

namespace {

int singular_count(const Partition& p, int nu) {
  int count = 0;
  for (int e : p.parts()) count += (e % nu != 0);
  return count;
}

// Signatures with positive chi on three points, as ascending value lists.
std::vector<std::vector<int>> triple_templates(int n) {
  std::vector<std::vector<int>> out;
  for (int d = 2; d <= n; ++d) out.push_back({2, 2, d});
  for (int c = 3; c <= 5 && c <= n; ++c) out.push_back({2, 3, c});
  return out;
}

}  // namespace

std::vector<OrbifoldAssignment> enumerate_assignments(const BranchDatum& datum, int max_singular) {
  const int q = datum.q();
  const int n = datum.n();
  std::vector<OrbifoldAssignment> out;
  std::set<std::vector<std::pair<std::vector<int>, int>>> seen;

  auto emit = [&](std::vector<std::pair<int, int>> entries) {
    int singular = 0;
    for (const auto& [i, nu] : entries) singular += singular_count(datum[i], nu);
    if (singular > max_singular) return;
    std::vector<std::pair<std::vector<int>, int>> key;
    for (const auto& [i, nu] : entries) key.emplace_back(datum[i].parts(), nu);
    std::sort(key.begin(), key.end());
    if (!seen.insert(std::move(key)).second) return;
    out.emplace_back(std::move(entries));
  };

  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      for (int d = 2; d <= n; ++d) emit({{i, d}, {j, d}});
    }
  }
  const auto templates = triple_templates(n);
  for (int i = 0; i < q; ++i) {
    for (int j = i + 1; j < q; ++j) {
      for (int k = j + 1; k < q; ++k) {
        for (auto values : templates) {
          do {
            emit({{i, values[0]}, {j, values[1]}, {k, values[2]}});
          } while (std::next_permutation(values.begin(), values.end()));
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), assignment_before);
  return out;
}

}  // namespace hurwitz
