#include "hurwitz/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

namespace hurwitz {

std::string to_string(OracleResult::Status status) {
  switch (status) {
    case OracleResult::Status::Found:
      return "Found";
    case OracleResult::Status::Exhausted:
      return "Exhausted";
    case OracleResult::Status::Aborted:
      return "Aborted";
  }
  return "?";
}

bool verify_constellation(const std::vector<Perm>& perms, const BranchDatum& datum) {
  for (const auto& p : perms) {
    if (static_cast<int>(p.size()) != datum.n()) throw std::invalid_argument("permutation degree differs from n");
    if (!is_permutation(p)) throw std::invalid_argument("not a permutation");
  }
  if (static_cast<int>(perms.size()) != datum.q()) return false;
  const int n = datum.n();

  Perm product = identity_perm(n);
  for (const auto& p : perms) product = compose(product, p);
  if (product != identity_perm(n)) return false;

  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& p : perms) {
    for (int x = 0; x < n; ++x) {
      const int a = find(x);
      const int b = find(p[x]);
      if (a != b) {
        parent[a] = b;
        --components;
      }
    }
  }
  if (components != 1) return false;

  std::vector<Partition> types;
  std::int64_t cycles = 0;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    Partition t = cycle_type(perms[i]);
    if (t != datum[i]) return false;
    cycles += t.size();
  }
  // Riemann-Hurwitz from the cycle counts.
  const std::int64_t twice_g = (static_cast<std::int64_t>(perms.size()) - 2) * n + 2 - cycles;
  return twice_g == 2 * static_cast<std::int64_t>(datum.g());
}

namespace {

constexpr int kSplitDepth = 3;
constexpr std::uint64_t kCheckInterval = 4096;
constexpr std::size_t kMemoLimit = 4'000'000;

struct Shared {
  std::atomic<bool> stop{false};
  std::atomic<bool> aborted{false};
  std::atomic<std::uint64_t> next_task{0};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mutex;
  std::optional<std::vector<Perm>> witness;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Searches perms for `types` (search order) with types[0] fixed to its
// canonical representative, types[1..q-2] built cycle by cycle and the last
// permutation determined by the product. On the last searched level the
// cycles of T = prefix * s are tracked as chains so that the determined
// permutation keeps the right type.
class Searcher {
 public:
  Searcher(const std::vector<Partition>& types, Shared& shared, bool parallel)
      : n_(types.front().n()),
        q_(static_cast<int>(types.size())),
        last_(q_ - 2),
        types_(types),
        shared_(shared),
        parallel_(parallel) {
    perm_.assign(static_cast<std::size_t>(q_ - 1), Perm(static_cast<std::size_t>(n_), -1));
    taken_.assign(static_cast<std::size_t>(q_ - 1), std::vector<char>(static_cast<std::size_t>(n_), 0));
    cnt_.assign(static_cast<std::size_t>(q_ - 1), std::vector<int>(static_cast<std::size_t>(n_ + 1), 0));
    nonclosing_left_.assign(static_cast<std::size_t>(q_ - 1), 0);
    future_defect_.assign(static_cast<std::size_t>(q_ - 1), 0);
    for (int l = 1; l <= last_; ++l) {
      for (int part : types_[l].parts()) ++cnt_[l][part];
      nonclosing_left_[l] = defect(types_[l]);
    }
    for (int l = last_ - 1; l >= 0; --l) future_defect_[l] = future_defect_[l + 1] + defect(types_[l + 1]);

    parent_.resize(static_cast<std::size_t>(n_));
    std::iota(parent_.begin(), parent_.end(), 0);
    size_.assign(static_cast<std::size_t>(n_), 1);
    comps_ = n_;
    perm_[0] = canonical_representative(types_[0]);
    for (int x = 0; x < n_; ++x) unite(x, perm_[0][x]);
    uf_log_.clear();

    head_of_.resize(static_cast<std::size_t>(n_));
    tail_of_.resize(static_cast<std::size_t>(n_));
    std::iota(head_of_.begin(), head_of_.end(), 0);
    std::iota(tail_of_.begin(), tail_of_.end(), 0);
    len_.assign(static_cast<std::size_t>(n_), 1);
    rem_.assign(static_cast<std::size_t>(n_ + 1), 0);
    for (int part : types_[q_ - 1].parts()) ++rem_[part];
    rem_cycles_ = types_[q_ - 1].size();
    max_rem_ = types_[q_ - 1].max_part();
    open_chains_ = n_;
  }

  void run() {
    if (parallel_) my_task_ = shared_.next_task.fetch_add(1);
    if (comps_ - 1 > future_defect_[0]) return;
    prefix_stack_.assign(static_cast<std::size_t>(q_ - 1), Perm());
    prefix_stack_[0] = perm_[0];
    failed_.assign(static_cast<std::size_t>(q_ - 1), {});
    if (!genus_feasible(0)) return;
    if (last_ == 1) prefix_ = perm_[0];
    next_cycle(1, 0);
    shared_.nodes.fetch_add(local_nodes_ % kCheckInterval);
  }

 private:
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      uf_log_.push_back(-1);
      return;
    }
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    uf_log_.push_back(b);
    --comps_;
  }

  void uf_undo() {
    const int b = uf_log_.back();
    uf_log_.pop_back();
    if (b < 0) return;
    const int a = parent_[b];
    size_[a] -= size_[b];
    parent_[b] = b;
    ++comps_;
  }

  // T gains the edge u -> v; u is a chain tail and v a chain head.
  bool t_add(int u, int v) {
    const int h = head_of_[u];
    if (h == v) {
      const int len = len_[v];
      if (rem_[len] == 0) return false;
      t_log_.push_back({h, v, -1, u, len, true, max_rem_});
      --rem_[len];
      --rem_cycles_;
      --open_chains_;
      while (max_rem_ > 0 && rem_[max_rem_] == 0) --max_rem_;
    } else {
      const int len = len_[h] + len_[v];
      if (len > max_rem_) return false;
      const int t = tail_of_[v];
      t_log_.push_back({h, v, t, u, len_[h], false, max_rem_});
      tail_of_[h] = t;
      head_of_[t] = h;
      len_[h] = len;
      --open_chains_;
    }
    if (open_chains_ < rem_cycles_) {
      t_undo();
      return false;
    }
    return true;
  }

  void t_undo() {
    const TUndo r = t_log_.back();
    t_log_.pop_back();
    ++open_chains_;
    if (r.closed) {
      ++rem_[r.old_len];
      ++rem_cycles_;
      max_rem_ = r.old_max;
    } else {
      tail_of_[r.h] = r.u;
      head_of_[r.t] = r.v;
      len_[r.h] = r.old_len;
    }
  }

  bool claim() {
    const std::uint64_t id = task_seen_++;
    if (id != my_task_) return false;
    my_task_ = shared_.next_task.fetch_add(1);
    return true;
  }

  void tick() {
    ++local_nodes_;
    if (local_nodes_ % kCheckInterval == 0) {
      shared_.nodes.fetch_add(kCheckInterval, std::memory_order_relaxed);
    } else if (local_nodes_ != 1) {
      return;
    }
    if (shared_.deadline && std::chrono::steady_clock::now() > *shared_.deadline) {
      shared_.aborted.store(true);
      shared_.stop.store(true);
    }
  }

  bool assign(int level, int u, int v, bool closing) {
    if (level == last_ && !t_add(u, prefix_[v])) return false;
    perm_[level][u] = v;
    unite(u, v);
    if (!closing) --nonclosing_left_[level];
    bool ok = comps_ - 1 <= nonclosing_left_[level] + future_defect_[level];
    if (ok && parallel_ && depth_ + 1 == kSplitDepth) ok = claim();
    if (!ok) {
      if (!closing) ++nonclosing_left_[level];
      uf_undo();
      perm_[level][u] = -1;
      if (level == last_) t_undo();
      return false;
    }
    ++depth_;
    tick();
    return true;
  }

  void unassign(int level, int u, bool closing) {
    --depth_;
    if (!closing) ++nonclosing_left_[level];
    uf_undo();
    perm_[level][u] = -1;
    if (level == last_) t_undo();
  }

  // Cutting the covering after `level` splits it into the prefix part with
  // product P and the rest; Riemann-Hurwitz on both sides requires the
  // remaining defect to undo P and to merge the prefix components.
  bool genus_feasible(int level) const {
    const Perm& p = prefix_stack_[level];
    int cycles = 0;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (int x = 0; x < n_; ++x) {
      if (seen[x]) continue;
      ++cycles;
      for (int y = x; !seen[y]; y = p[y]) seen[y] = 1;
    }
    const int remaining = future_defect_[level] + defect(types_[q_ - 1]);
    return remaining >= (n_ - cycles) + 2 * (comps_ - 1);
  }

  // Same bound in the middle of a level: the cycles still to be built form
  // one more factor whose defect is known.
  bool partial_feasible(int level) const {
    const Perm& prev = prefix_stack_[level - 1];
    const Perm& cur = perm_[level];
    int rest = 0;
    for (int len = 2; len <= n_; ++len) rest += (len - 1) * cnt_[level][len];
    int cycles = 0;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    for (int x = 0; x < n_; ++x) {
      if (seen[x]) continue;
      ++cycles;
      for (int y = x; !seen[y];) {
        seen[y] = 1;
        y = prev[cur[y] < 0 ? y : cur[y]];
      }
    }
    const int remaining = future_defect_[level] + rest + defect(types_[q_ - 1]);
    return remaining >= (n_ - cycles) + 2 * (comps_ - 1);
  }

  std::string state_key(int level) const {
    std::string key(static_cast<std::size_t>(2 * n_), '\0');
    std::vector<int> min_of(static_cast<std::size_t>(n_), -1);
    for (int x = 0; x < n_; ++x) {
      key[x] = static_cast<char>(prefix_stack_[level][x]);
      const int r = find(x);
      if (min_of[r] < 0) min_of[r] = x;
      key[n_ + x] = static_cast<char>(min_of[r]);
    }
    return key;
  }

  bool stopped() const { return shared_.stop.load(std::memory_order_relaxed); }

  bool next_cycle(int level, int from) {
    auto& taken = taken_[level];
    int x = from;
    while (x < n_ && taken[x]) ++x;
    if (x == n_) return level_done(level);
    auto& cnt = cnt_[level];
    for (int len = n_; len >= 1; --len) {
      if (cnt[len] == 0) continue;
      --cnt[len];
      taken[x] = 1;
      bool found = false;
      if (len == 1) {
        if (assign(level, x, x, true)) {
          found = next_cycle(level, x + 1);
          unassign(level, x, true);
        }
      } else {
        found = extend(level, x, x, len - 1);
      }
      taken[x] = 0;
      ++cnt[len];
      if (found || stopped()) return found;
    }
    return false;
  }

  bool extend(int level, int start, int cur, int remaining) {
    if (remaining == 0) {
      if (!assign(level, cur, start, true)) return false;
      const bool found = partial_feasible(level) && next_cycle(level, start + 1);
      unassign(level, cur, true);
      return found;
    }
    auto& taken = taken_[level];
    for (int y = start + 1; y < n_; ++y) {
      if (taken[y]) continue;
      taken[y] = 1;
      bool found = false;
      if (assign(level, cur, y, false)) {
        found = extend(level, start, y, remaining - 1);
        unassign(level, cur, false);
      }
      taken[y] = 0;
      if (found || stopped()) return found;
    }
    return false;
  }

  bool level_done(int level) {
    if (level == last_) {
      std::vector<Perm> perms(perm_.begin(), perm_.end());
      Perm t = identity_perm(n_);
      for (const auto& p : perms) t = compose(t, p);
      perms.push_back(inverse(t));
      std::lock_guard lock(shared_.mutex);
      if (!shared_.witness) shared_.witness = std::move(perms);
      shared_.stop.store(true);
      return true;
    }
    prefix_stack_[level] = compose(prefix_stack_[level - 1], perm_[level]);
    if (!genus_feasible(level)) return false;
    if (level + 1 == last_) prefix_ = prefix_stack_[level];
    // The rest of the search depends only on the prefix product and the
    // orbit partition, so failed states are remembered. Under parallel
    // search only subtrees owned entirely by this thread are recorded.
    const bool memo = !parallel_ || depth_ >= kSplitDepth;
    std::string key;
    if (memo) {
      key = state_key(level);
      if (failed_[level].count(key)) return false;
    }
    const bool found = next_cycle(level + 1, 0);
    if (!found && memo && !stopped() && memo_size_ < kMemoLimit) {
      failed_[level].insert(std::move(key));
      ++memo_size_;
    }
    return found;
  }

  struct TUndo {
    int h, v, t, u, old_len;
    bool closed;
    int old_max;
  };

  int n_, q_, last_;
  std::vector<Partition> types_;
  Shared& shared_;
  bool parallel_;

  std::vector<Perm> perm_;
  std::vector<std::vector<char>> taken_;
  std::vector<std::vector<int>> cnt_;
  std::vector<int> nonclosing_left_;
  std::vector<int> future_defect_;

  std::vector<int> parent_, size_, uf_log_;
  int comps_ = 0;

  Perm prefix_;
  std::vector<Perm> prefix_stack_;
  std::vector<std::unordered_set<std::string>> failed_;
  std::size_t memo_size_ = 0;
  std::vector<int> head_of_, tail_of_, len_, rem_;
  int rem_cycles_ = 0, max_rem_ = 0, open_chains_ = 0;
  std::vector<TUndo> t_log_;

  int depth_ = 0;
  std::uint64_t task_seen_ = 0, my_task_ = 0, local_nodes_ = 0;
};

long double log_class_size(const Partition& p) {
  long double s = std::lgamma(static_cast<long double>(p.n()) + 1);
  const auto& parts = p.parts();
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    const long double m = static_cast<long double>(j - i);
    s -= m * std::log(static_cast<long double>(parts[i])) + std::lgamma(m + 1);
    i = j;
  }
  return s;
}

// Search order: the largest class is fixed, the second largest is
// determined by the product, the rest are searched smallest first.
std::vector<int> search_order(const BranchDatum& datum) {
  std::vector<int> idx(static_cast<std::size_t>(datum.q()));
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<long double> size(idx.size());
  for (int i = 0; i < datum.q(); ++i) size[i] = log_class_size(datum[i]);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return size[a] > size[b]; });
  std::vector<int> order{idx[0]};
  for (std::size_t i = idx.size() - 1; i >= 2; --i) order.push_back(idx[i]);
  order.push_back(idx[1]);
  return order;
}

// Hurwitz moves (a, b) -> (b, b^-1 a b) keep the product, the cycle types
// and the generated group, so they sort a witness back into datum order.
std::vector<Perm> to_datum_order(std::vector<Perm> perms, std::vector<int> order) {
  for (std::size_t pass = 0; pass < order.size(); ++pass) {
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      if (order[i] <= order[i + 1]) continue;
      Perm a = perms[i];
      const Perm& b = perms[i + 1];
      Perm conj = compose(inverse(b), compose(a, b));
      perms[i] = b;
      perms[i + 1] = std::move(conj);
      std::swap(order[i], order[i + 1]);
    }
  }
  return perms;
}

}  // namespace

OracleResult find_constellation(const BranchDatum& datum, const OracleLimits& limits) {
  OracleResult result;
  const int n = datum.n();
  if (n > limits.max_n) {
    result.status = OracleResult::Status::Aborted;
    result.reason = "n=" + std::to_string(n) + " exceeds max_n=" + std::to_string(limits.max_n);
    return result;
  }
  if (datum.q() == 0) {
    result.status = OracleResult::Status::Found;
    result.witness = Constellation{1, {}};
    return result;
  }
  if (datum.q() == 2) {
    // sigma_2 = sigma_1^-1 and transitivity forces an n-cycle.
    if (datum[0].size() == 1 && datum[1].size() == 1) {
      Perm c = canonical_representative(datum[0]);
      result.status = OracleResult::Status::Found;
      result.witness = Constellation{n, {c, inverse(c)}};
    } else {
      result.status = OracleResult::Status::Exhausted;
    }
    return result;
  }

  const std::vector<int> order = search_order(datum);
  std::vector<Partition> types;
  for (int i : order) types.push_back(datum[i]);

  Shared shared;
  if (limits.timeout_seconds) {
    shared.deadline = std::chrono::steady_clock::now() +
                      std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                          std::chrono::duration<double>(*limits.timeout_seconds));
  }
  const int threads = std::max(1, limits.threads);
  if (threads == 1) {
    Searcher(types, shared, false).run();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&] { Searcher(types, shared, true).run(); });
    }
    for (auto& th : pool) th.join();
  }
  result.nodes = shared.nodes.load();

  if (shared.witness) {
    Constellation c{n, to_datum_order(std::move(*shared.witness), order)};
    if (!verify_constellation(c.perms, datum)) {
      throw std::logic_error("oracle produced an invalid constellation for " + format_datum(datum));
    }
    result.status = OracleResult::Status::Found;
    result.witness = std::move(c);
  } else if (shared.aborted.load()) {
    result.status = OracleResult::Status::Aborted;
    result.reason = "timeout";
  } else {
    result.status = OracleResult::Status::Exhausted;
  }
  return result;
}

Verdict decide(const BranchDatum& datum, const OracleLimits& limits) {
  OracleResult r = find_constellation(datum, limits);
  switch (r.status) {
    case OracleResult::Status::Found:
      return Verdict::realizable(std::move(*r.witness));
    case OracleResult::Status::Exhausted: {
      Certificate c;
      c.kind = CertKind::OracleExhausted;
      return Verdict::non_realizable(std::move(c));
    }
    case OracleResult::Status::Aborted:
      break;
  }
  return Verdict::unknown({"oracle aborted: " + r.reason});
}

}  // namespace hurwitz
