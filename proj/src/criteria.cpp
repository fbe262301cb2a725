#include "hurwitz/criteria.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace hurwitz {

namespace {

using Fibers = std::vector<Partition>;

// Splits a multiset of entries into groups: group g takes entries divisible
// by es[g] whose quotients by es[g] sum to m. The quotients form a fiber of
// t. Groups sharing a value of e are produced in non-increasing order of
// their choice vectors so every split is visited once.
class Splitter {
 public:
  Splitter(const Partition& entries, std::vector<int> es, int m) : es_(std::move(es)), m_(m) {
    std::sort(es_.begin(), es_.end(), std::greater<>());
    const auto& parts = entries.parts();
    for (std::size_t i = 0; i < parts.size();) {
      std::size_t j = i;
      while (j < parts.size() && parts[j] == parts[i]) ++j;
      vals_.push_back(parts[i]);
      cnt_.push_back(static_cast<int>(j - i));
      i = j;
    }
    choice_.assign(es_.size(), std::vector<int>(vals_.size(), 0));
  }

  std::vector<Fibers> all() {
    std::set<Fibers> out;
    visit_ = [&](const Fibers& f) {
      Fibers sorted = f;
      std::sort(sorted.begin(), sorted.end(), canonical_before);
      out.insert(std::move(sorted));
      return false;
    };
    group(0);
    return {out.begin(), out.end()};
  }

 private:
  bool group(std::size_t g) {
    if (g == es_.size()) {
      for (int c : cnt_) {
        if (c != 0) return false;
      }
      Fibers fibers;
      for (std::size_t k = 0; k < es_.size(); ++k) {
        std::vector<int> tau;
        for (std::size_t v = 0; v < vals_.size(); ++v) tau.insert(tau.end(), choice_[k][v], vals_[v] / es_[k]);
        fibers.emplace_back(std::move(tau));
      }
      return visit_(fibers);
    }
    const bool tight = g > 0 && es_[g] == es_[g - 1];
    return pick(g, 0, m_, tight);
  }

  bool pick(std::size_t g, std::size_t v, int rem, bool tight) {
    if (rem == 0) {
      for (std::size_t u = v; u < vals_.size(); ++u) choice_[g][u] = 0;
      return group(g + 1);
    }
    if (v == vals_.size()) return false;
    const int e = es_[g];
    int max_x = 0;
    if (vals_[v] % e == 0) max_x = std::min(cnt_[v], rem / (vals_[v] / e));
    if (tight) max_x = std::min(max_x, choice_[g - 1][v]);
    for (int x = max_x; x >= 0; --x) {
      choice_[g][v] = x;
      cnt_[v] -= x;
      const bool stop = pick(g, v + 1, rem - x * (vals_[v] / e), tight && x == choice_[g - 1][v]);
      cnt_[v] += x;
      if (stop) return true;
    }
    choice_[g][v] = 0;
    return false;
  }

  std::vector<int> es_;
  int m_;
  std::vector<int> vals_, cnt_;
  std::vector<std::vector<int>> choice_;
  std::function<bool(const Fibers&)> visit_;
};

std::optional<BranchDatum> residual_of(const std::vector<Fibers>& fibers, int m, int genus) {
  std::vector<Partition> parts;
  for (const auto& over_point : fibers) {
    for (const auto& tau : over_point) {
      if (!tau.trivial()) parts.push_back(tau);
    }
  }
  try {
    BranchDatum d = BranchDatum::make(std::move(parts), m);
    if (d.g() != genus) return std::nullopt;
    return d;
  } catch (const DatumError&) {
    return std::nullopt;
  }
}

// Calls visit for every placement of w's critical values among the target
// points together with every compatible choice of t-fibers.
template <typename Visit>
void for_each_match(const BranchDatum& w, int m, const BranchDatum& target, int max_t_degree, Visit&& visit) {
  if (m < 1) throw std::invalid_argument("compose: t degree must be positive");
  if (m > max_t_degree) {
    throw ComposeBoundError("compose: t degree " + std::to_string(m) + " exceeds bound " +
                            std::to_string(max_t_degree));
  }
  const int k = w.n();
  if (static_cast<std::int64_t>(k) * m != target.n()) return;
  const int r = w.q();
  const int q = target.q();
  if (r > q) return;

  // Splits of each target partition, indexed by the w partition placed over
  // it (r means no critical value of w there).
  std::map<std::pair<int, int>, std::vector<Fibers>> memo;
  auto splits = [&](int j, int i) -> const std::vector<Fibers>& {
    auto key = std::make_pair(j, i);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<int> es = i < r ? w[i].parts() : std::vector<int>(static_cast<std::size_t>(k), 1);
    return memo.emplace(key, Splitter(target[j], std::move(es), m).all()).first->second;
  };

  std::vector<int> placement(static_cast<std::size_t>(r), -1);
  std::vector<int> owner(static_cast<std::size_t>(q), r);
  bool stop = false;

  auto product = [&](auto&& self, int j, std::vector<Fibers>& chosen) -> void {
    if (stop) return;
    if (j == q) {
      if (visit(placement, chosen)) stop = true;
      return;
    }
    for (const auto& f : splits(j, owner[j])) {
      chosen.push_back(f);
      self(self, j + 1, chosen);
      chosen.pop_back();
      if (stop) return;
    }
  };

  auto place = [&](auto&& self, int i) -> void {
    if (stop) return;
    if (i == r) {
      for (int j = 0; j < q; ++j) {
        if (splits(j, owner[j]).empty()) return;
      }
      std::vector<Fibers> chosen;
      product(product, 0, chosen);
      return;
    }
    for (int j = 0; j < q; ++j) {
      if (owner[j] != r) continue;
      if (splits(j, i).empty()) continue;
      owner[j] = i;
      placement[i] = j;
      self(self, i + 1);
      owner[j] = r;
      placement[i] = -1;
      if (stop) return;
    }
  };
  place(place, 0);
}

const BranchDatum& trivial_datum() {
  static const BranchDatum d = BranchDatum::make({}, 1);
  return d;
}

}  // namespace

ForcedFactor forced_factor(const BranchDatum& datum, const OrbifoldAssignment& asg) {
  const OrbifoldSignature sig = asg.signature();
  const Rational chi_o = chi_of(sig);
  if (!(chi_o > 0)) throw std::invalid_argument("forced_factor: orbifold chi must be positive");
  const PullbackResult pb = pullback(datum, asg);
  if (pb.kind != PullbackResult::Kind::GoodPositive && pb.kind != PullbackResult::Kind::NonRamified) {
    throw std::invalid_argument("forced_factor: pullback is not good with positive chi");
  }
  ForcedFactor f;
  f.deg_w = pb.chi / chi_o;
  f.deg_t = Rational(datum.n()) / f.deg_w;
  return f;
}

std::optional<MatchWitness> compose_feasible(const BranchDatum& w_datum, int t_degree, const BranchDatum& target,
                                             int max_t_degree) {
  std::optional<MatchWitness> out;
  for_each_match(w_datum, t_degree, target, max_t_degree,
                 [&](const std::vector<int>& placement, const std::vector<Fibers>& fibers) {
                   auto residual = t_degree == 1 ? std::optional<BranchDatum>(trivial_datum())
                                                 : residual_of(fibers, t_degree, target.g());
                   if (!residual) return false;
                   out = MatchWitness{placement, fibers, *residual};
                   return true;
                 });
  return out;
}

std::vector<BranchDatum> enumerate_compositions(const BranchDatum& w_datum, int t_degree, const BranchDatum& target,
                                                int max_t_degree) {
  std::set<BranchDatum> out;
  for_each_match(w_datum, t_degree, target, max_t_degree,
                 [&](const std::vector<int>&, const std::vector<Fibers>& fibers) {
                   auto residual = t_degree == 1 ? std::optional<BranchDatum>(trivial_datum())
                                                 : residual_of(fibers, t_degree, target.g());
                   if (residual) out.insert(*residual);
                   return false;
                 });
  std::vector<BranchDatum> v(out.begin(), out.end());
  std::sort(v.begin(), v.end(), datum_before);
  return v;
}

namespace {

std::vector<int> run(int value, int count) { return std::vector<int>(static_cast<std::size_t>(count), value); }

std::vector<int> concat(std::vector<int> a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

void add_datum(std::vector<BranchDatum>& out, const std::vector<std::vector<int>>& partitions, int n) {
  std::vector<Partition> parts;
  for (const auto& p : partitions) {
    Partition part(p);
    if (!part.trivial()) parts.push_back(std::move(part));
  }
  try {
    BranchDatum d = BranchDatum::make(std::move(parts), n);
    if (d.g() == 0 && std::find(out.begin(), out.end(), d) == out.end()) out.push_back(std::move(d));
  } catch (const DatumError&) {
  }
}

}  // namespace

std::vector<BranchDatum> dihedral_left_factors(int k) {
  if (k < 2) throw std::invalid_argument("dihedral_left_factors: k must be at least 2");
  std::vector<BranchDatum> out;
  if (k % 2 == 0) {
    add_datum(out, {run(2, k / 2), concat(run(2, k / 2 - 1), {1, 1}), {k}}, k);
    add_datum(out, {run(2, k / 2), run(2, k / 2), {k / 2, k / 2}}, k);
  } else {
    add_datum(out, {concat(run(2, (k - 1) / 2), {1}), concat(run(2, (k - 1) / 2), {1}), {k}}, k);
  }
  return out;
}

std::vector<BranchDatum> covering_left_factors(const OrbifoldSignature& orbifold, const OrbifoldSignature& pulled,
                                               int degree) {
  const auto& nus = orbifold.values();
  const auto& mus = pulled.values();
  std::vector<BranchDatum> out;
  if (degree < 1) return out;
  std::vector<int> where(mus.size(), -1);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == mus.size()) {
      std::vector<std::vector<int>> partitions(nus.size());
      for (std::size_t j = 0; j < mus.size(); ++j) partitions[where[j]].push_back(nus[where[j]] / mus[j]);
      for (std::size_t p = 0; p < nus.size(); ++p) {
        const int used = std::accumulate(partitions[p].begin(), partitions[p].end(), 0);
        const int rest = degree - used;
        if (rest < 0 || rest % nus[p] != 0) return;
        partitions[p].insert(partitions[p].end(), static_cast<std::size_t>(rest / nus[p]), nus[p]);
      }
      add_datum(out, partitions, degree);
      return;
    }
    const std::size_t start = (i > 0 && mus[i] == mus[i - 1]) ? static_cast<std::size_t>(where[i - 1]) : 0;
    for (std::size_t p = start; p < nus.size(); ++p) {
      if (nus[p] % mus[i] != 0) continue;
      where[i] = static_cast<int>(p);
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end(), datum_before);
  return out;
}

std::vector<BranchDatum> genus_one_left_factors(const OrbifoldSignature& orbifold, int n) {
  const std::int64_t theta = theta_degree(orbifold);
  const bool tetrahedral = orbifold.values() == std::vector<int>{2, 3, 3};
  std::vector<std::pair<OrbifoldSignature, std::int64_t>> targets;
  for (std::int64_t m = 1; m <= theta; ++m) {
    if (theta % m != 0) continue;
    targets.emplace_back(m == 1 ? OrbifoldSignature() : OrbifoldSignature({static_cast<int>(m), static_cast<int>(m)}),
                         theta / m);
  }
  if (theta % 4 == 0) targets.emplace_back(OrbifoldSignature({2, 2, 2}), theta / 4);
  std::vector<BranchDatum> out;
  for (const auto& [sig, deg] : targets) {
    if (deg < 2 || 2 * deg > n || n % deg != 0) continue;
    // Every left factor of the tetrahedral covering starts with one of
    // degree 3 or 4, so larger ones are covered by those.
    if (tetrahedral && deg != 3 && deg != 4) continue;
    for (auto& w : covering_left_factors(orbifold, sig, static_cast<int>(deg))) {
      if (std::find(out.begin(), out.end(), w) == out.end()) out.push_back(std::move(w));
    }
  }
  std::sort(out.begin(), out.end(), datum_before);
  return out;
}

namespace {

struct Context {
  const CriteriaOptions& options;
  int depth = 0;
  std::vector<std::string>* notes = nullptr;

  void note(const std::string& s) const {
    if (notes) notes->push_back(s);
  }
};

Verdict certify_at(const BranchDatum& datum, const Context& ctx);

struct Candidate {
  OrbifoldAssignment asg;
  OrbifoldSignature sig;
  PullbackResult pb;
};

std::vector<Candidate> candidates(const BranchDatum& datum) {
  std::vector<Candidate> out;
  for (auto& asg : enumerate_assignments(datum, 3)) {
    OrbifoldSignature sig = asg.signature();
    PullbackResult pb = pullback(datum, asg);
    out.push_back({std::move(asg), std::move(sig), std::move(pb)});
  }
  return out;
}

Certificate base(CertKind kind, const Candidate& c) {
  Certificate cert;
  cert.kind = kind;
  cert.assignment = c.asg;
  cert.pullback = c.pb.signature;
  return cert;
}

std::optional<Certificate> t1(const BranchDatum& datum, const std::vector<Candidate>& cs) {
  if (datum.g() != 0) return std::nullopt;
  for (const auto& c : cs) {
    if (c.pb.kind == PullbackResult::Kind::Bad) return base(CertKind::T1Bad, c);
  }
  return std::nullopt;
}

std::optional<Certificate> t0(const BranchDatum& datum, const std::vector<Candidate>& cs) {
  if (datum.g() != 0) return std::nullopt;
  for (const auto& c : cs) {
    if (c.pb.kind != PullbackResult::Kind::NonRamified) continue;
    const std::int64_t theta = theta_degree(c.sig);
    if (datum.n() % theta != 0) {
      Certificate cert = base(CertKind::T0Divisibility, c);
      cert.modulus = theta;
      cert.value = datum.n();
      return cert;
    }
  }
  return std::nullopt;
}

std::optional<Certificate> t0_chain(const BranchDatum& datum, const std::vector<Candidate>& cs) {
  if (datum.g() != 0) return std::nullopt;
  for (const auto& c : cs) {
    if (c.pb.kind != PullbackResult::Kind::NonRamified) continue;
    const std::int64_t theta = theta_degree(c.sig);
    if (datum.n() % theta != 0) continue;
    const std::int64_t deg_q = datum.n() / theta;
    for (const auto& [index, nu] : c.asg.entries()) {
      for (int e : datum[index].parts()) {
        if (e / nu > deg_q) {
          Certificate cert = base(CertKind::T0ChainRule, c);
          cert.modulus = theta;
          cert.value = deg_q;
          cert.entry = e;
          cert.entry_index = index;
          return cert;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<Certificate> t2(const BranchDatum& datum, const std::vector<Candidate>& cs) {
  if (datum.g() != 0) return std::nullopt;
  for (const auto& c : cs) {
    if (c.pb.kind != PullbackResult::Kind::GoodPositive) continue;
    const std::int64_t modulus = theta_degree(c.sig);
    const std::int64_t value = theta_degree(c.pb.signature) * datum.n();
    if (value % modulus != 0) {
      Certificate cert = base(CertKind::T2Divisibility, c);
      cert.modulus = modulus;
      cert.value = value;
      return cert;
    }
  }
  return std::nullopt;
}

// Facts behind a decomposition certificate for one candidate; empty when the
// candidate does not rule the datum out (or the matcher abstains).
std::optional<Certificate> t2_dec_one(const BranchDatum& datum, const Candidate& c, const Context& ctx) {
  if (c.pb.kind != PullbackResult::Kind::GoodPositive || c.pb.signature == c.sig) return std::nullopt;
  const ForcedFactor ff = forced_factor(datum, c.asg);
  Certificate cert = base(CertKind::T2Decomposition, c);
  if (ff.deg_w.denominator() != 1) {
    cert.reason = "deg w = chi(f*O)/chi(O) is not an integer";
    return cert;
  }
  cert.deg_w = static_cast<int>(ff.deg_w.numerator());
  if (ff.deg_t.denominator() != 1) {
    cert.reason = "deg w does not divide n";
    return cert;
  }
  cert.deg_t = static_cast<int>(ff.deg_t.numerator());
  if (cert.deg_w == 1) {
    cert.reason = "deg w = 1 but the signatures of O and f*O differ";
    return cert;
  }
  const auto& v = c.sig.values();
  const bool dihedral = v.size() == 3 && v[0] == 2 && v[1] == 2;
  if (!dihedral || c.pb.signature != OrbifoldSignature({2, 2})) return std::nullopt;
  if (cert.deg_t > ctx.options.max_t_degree) {
    ctx.note("T2-decomposition: deg t " + std::to_string(cert.deg_t) + " exceeds compose bound");
    return std::nullopt;
  }
  cert.left_factors = dihedral_left_factors(v[2]);
  for (const auto& w : cert.left_factors) {
    if (compose_feasible(w, cert.deg_t, datum, ctx.options.max_t_degree)) return std::nullopt;
  }
  cert.reason = "no dihedral left factor composes to the datum";
  return cert;
}

std::optional<Certificate> t2_dec(const BranchDatum& datum, const std::vector<Candidate>& cs, const Context& ctx) {
  if (datum.g() != 0) return std::nullopt;
  for (const auto& c : cs) {
    if (auto cert = t2_dec_one(datum, c, ctx)) return cert;
  }
  return std::nullopt;
}

bool exempt(const OrbifoldSignature& sig) {
  const auto& v = sig.values();
  return (v.size() == 2 && v[0] == v[1]) || v == std::vector<int>{2, 2, 2};
}

std::optional<Certificate> t3_one(const BranchDatum& datum, const Candidate& c, const Context& ctx) {
  if (c.pb.kind != PullbackResult::Kind::NonRamified || c.sig.size() != 3 || exempt(c.sig)) return std::nullopt;
  Certificate cert = base(CertKind::T3Decomposition, c);
  cert.left_factors = genus_one_left_factors(c.sig, datum.n());
  if (cert.left_factors.size() == 1) {
    cert.deg_w = cert.left_factors.front().n();
    cert.deg_t = datum.n() / cert.deg_w;
  }
  std::set<BranchDatum> residuals;
  for (const auto& w : cert.left_factors) {
    const int deg_t = datum.n() / w.n();
    if (deg_t > ctx.options.max_t_degree) {
      ctx.note("T3: deg t " + std::to_string(deg_t) + " exceeds compose bound");
      return std::nullopt;
    }
    for (auto& r : enumerate_compositions(w, deg_t, datum, ctx.options.max_t_degree)) residuals.insert(r);
  }
  if (residuals.empty()) {
    cert.reason = cert.left_factors.empty() ? "no admissible left factor has a degree dividing n"
                                            : "no admissible left factor composes to the datum";
    return cert;
  }
  if (ctx.depth + 1 > ctx.options.max_recursion) {
    ctx.note("T3: recursion depth exhausted");
    return std::nullopt;
  }
  std::vector<BranchDatum> ordered(residuals.begin(), residuals.end());
  std::sort(ordered.begin(), ordered.end(), datum_before);
  Context inner{ctx.options, ctx.depth + 1, nullptr};
  for (const auto& r : ordered) {
    Verdict v = certify_at(r, inner);
    if (v.status != Verdict::Status::NonRealizable) {
      ctx.note("T3: residual " + format_datum(r) + " not certified");
      return std::nullopt;
    }
    cert.residuals.push_back(Residual{r, std::move(*v.certificate)});
  }
  cert.kind = CertKind::Recursive;
  cert.reason = "every forced right factor is non-realizable";
  return cert;
}

std::optional<Certificate> t3(const BranchDatum& datum, const std::vector<Candidate>& cs, const Context& ctx) {
  if (datum.g() != 1) return std::nullopt;
  for (const auto& c : cs) {
    if (auto cert = t3_one(datum, c, ctx)) return cert;
  }
  return std::nullopt;
}

Verdict certify_at(const BranchDatum& datum, const Context& ctx) {
  std::vector<std::string> notes;
  Context local{ctx.options, ctx.depth, &notes};
  const auto cs = candidates(datum);
  std::optional<Certificate> cert;
  if (datum.g() == 0) {
    if (!cert) cert = t1(datum, cs);
    if (!cert) cert = t0(datum, cs);
    if (!cert) cert = t0_chain(datum, cs);
    if (!cert) cert = t2(datum, cs);
    if (!cert) cert = t2_dec(datum, cs, local);
  } else if (datum.g() == 1) {
    cert = t3(datum, cs, local);
  }
  if (cert) return Verdict::non_realizable(std::move(*cert));

  if (!ctx.options.use_oracle) {
    notes.push_back("no criterion applies; oracle disabled");
    return Verdict::unknown(std::move(notes));
  }
  Verdict v = decide(datum, ctx.options.oracle);
  if (v.status == Verdict::Status::Unknown) {
    notes.insert(notes.begin(), "no criterion applies");
    notes.insert(notes.end(), v.notes.begin(), v.notes.end());
    v.notes = std::move(notes);
  }
  return v;
}

}  // namespace

std::optional<Certificate> check_t1_bad(const BranchDatum& datum) { return t1(datum, candidates(datum)); }

std::optional<Certificate> check_t0_divisibility(const BranchDatum& datum) { return t0(datum, candidates(datum)); }

std::optional<Certificate> check_t0_chainrule(const BranchDatum& datum) { return t0_chain(datum, candidates(datum)); }

std::optional<Certificate> check_t2_divisibility(const BranchDatum& datum) { return t2(datum, candidates(datum)); }

std::optional<Certificate> check_t2_decomposition(const BranchDatum& datum, const CriteriaOptions& options) {
  return t2_dec(datum, candidates(datum), Context{options});
}

std::optional<Certificate> check_t3(const BranchDatum& datum, const CriteriaOptions& options) {
  return t3(datum, candidates(datum), Context{options});
}

Verdict certify(const BranchDatum& datum, const CriteriaOptions& options) {
  return certify_at(datum, Context{options});
}

namespace {

bool verify_at(const BranchDatum& datum, const Certificate& cert, const CriteriaOptions& options, int depth);

bool same_facts(const Certificate& a, const Certificate& b) {
  return a.kind == b.kind && a.assignment == b.assignment && a.pullback == b.pullback && a.modulus == b.modulus &&
         a.value == b.value && a.entry == b.entry && a.entry_index == b.entry_index && a.deg_w == b.deg_w &&
         a.deg_t == b.deg_t && a.left_factors == b.left_factors;
}

bool verify_at(const BranchDatum& datum, const Certificate& cert, const CriteriaOptions& options, int depth) {
  if (cert.kind == CertKind::OracleExhausted) {
    if (!options.use_oracle) return false;
    return find_constellation(datum, options.oracle).status == OracleResult::Status::Exhausted;
  }
  for (const auto& [index, nu] : cert.assignment.entries()) {
    if (index >= datum.q() || nu > datum.n()) return false;
  }
  const OrbifoldSignature sig = cert.assignment.signature();
  if (cert.assignment.size() < 2 || !sig.good() || !spherical(sig)) return false;
  const Candidate c{cert.assignment, sig, pullback(datum, cert.assignment)};
  if (c.pb.signature != cert.pullback) return false;
  const Context ctx{options, depth};

  std::optional<Certificate> redo;
  switch (cert.kind) {
    case CertKind::T1Bad:
      return datum.g() == 0 && c.pb.kind == PullbackResult::Kind::Bad;
    case CertKind::T0Divisibility:
      redo = t0(datum, {c});
      break;
    case CertKind::T0ChainRule:
      if (datum.g() != 0 || c.pb.kind != PullbackResult::Kind::NonRamified) return false;
      if (cert.modulus != theta_degree(sig) || datum.n() % cert.modulus != 0) return false;
      if (cert.value != datum.n() / cert.modulus) return false;
      if (cert.entry_index < 0 || cert.entry_index >= datum.q()) return false;
      {
        const auto& parts = datum[cert.entry_index].parts();
        if (std::find(parts.begin(), parts.end(), cert.entry) == parts.end()) return false;
        const int nu = cert.assignment.nu(cert.entry_index);
        return nu > 1 && cert.entry / nu > cert.value;
      }
    case CertKind::T2Divisibility:
      redo = t2(datum, {c});
      break;
    case CertKind::T2Decomposition:
      if (datum.g() != 0) return false;
      redo = t2_dec_one(datum, c, ctx);
      break;
    case CertKind::T3Decomposition:
    case CertKind::Recursive: {
      if (datum.g() != 1 || c.pb.kind != PullbackResult::Kind::NonRamified || c.sig.size() != 3 || exempt(c.sig)) {
        return false;
      }
      const auto factors = genus_one_left_factors(sig, datum.n());
      if (factors != cert.left_factors) return false;
      std::set<BranchDatum> residuals;
      for (const auto& w : factors) {
        const int deg_t = datum.n() / w.n();
        if (deg_t > options.max_t_degree) return false;
        for (auto& r : enumerate_compositions(w, deg_t, datum, options.max_t_degree)) residuals.insert(r);
      }
      if (residuals.size() != cert.residuals.size()) return false;
      if (cert.kind == CertKind::T3Decomposition) return residuals.empty();
      if (residuals.empty() || depth + 1 > options.max_recursion) return false;
      for (const auto& r : cert.residuals) {
        if (!residuals.count(r.datum)) return false;
        if (!verify_at(r.datum, r.certificate, options, depth + 1)) return false;
      }
      return true;
    }
    case CertKind::OracleExhausted:
      break;
  }
  return redo && same_facts(*redo, cert);
}

}  // namespace

bool verify_certificate(const BranchDatum& datum, const Certificate& cert, const CriteriaOptions& options) {
  return verify_at(datum, cert, options, 0);
}

}  // namespace hurwitz
