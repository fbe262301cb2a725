#pragma once

// Brute-force composite data: datum D of degree m k admits a constellation
// preserving the blocks {k i, ..., k i + k - 1} whose action on the m blocks
// has the nontrivial cycle types of w exactly once each. Such constellations
// are the monodromy of compositions w o t with deg t = k.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/permutation.hpp"
#include "support/reference_oracle.hpp"

namespace block_oracle {

struct Element {
  hurwitz::Perm perm;
  hurwitz::Partition type;
  hurwitz::Partition block_type;
};

inline std::vector<Element> block_preserving(int m, int k) {
  const int n = m * k;
  std::vector<Element> out;
  hurwitz::Perm p = hurwitz::identity_perm(n);
  do {
    bool ok = true;
    hurwitz::Perm blocks(static_cast<std::size_t>(m), -1);
    for (int x = 0; x < n && ok; ++x) {
      const int b = x / k;
      const int img = p[x] / k;
      if (blocks[b] < 0) {
        blocks[b] = img;
      } else if (blocks[b] != img) {
        ok = false;
      }
    }
    if (ok) out.push_back({p, hurwitz::cycle_type(p), hurwitz::cycle_type(blocks)});
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// True when `target` arises as w o t over the block structure.
inline bool composite(const hurwitz::BranchDatum& w, int k, const hurwitz::BranchDatum& target,
                      const std::vector<Element>& group) {
  const int m = w.n();
  const int n = target.n();
  if (n != m * k) return false;
  const hurwitz::Partition trivial_blocks(std::vector<int>(static_cast<std::size_t>(m), 1));
  const int r = w.q();
  // State: product, orbit labels, mask of w partitions used.
  using State = std::tuple<hurwitz::Perm, std::vector<int>, unsigned>;
  std::set<State> states;
  std::vector<int> discrete(static_cast<std::size_t>(n));
  std::iota(discrete.begin(), discrete.end(), 0);
  states.insert({hurwitz::identity_perm(n), discrete, 0u});
  for (int level = 0; level < target.q(); ++level) {
    std::set<State> next;
    for (const auto& [prod, labels, mask] : states) {
      for (const auto& e : group) {
        if (e.type != target[level]) continue;
        unsigned new_mask = mask;
        if (e.block_type != trivial_blocks) {
          int slot = -1;
          for (int j = 0; j < r; ++j) {
            if (!(mask & (1u << j)) && w[j] == e.block_type) {
              slot = j;
              break;
            }
          }
          if (slot < 0) continue;
          new_mask |= 1u << slot;
        }
        next.insert({hurwitz::compose(prod, e.perm), reference::merge_orbits(labels, e.perm), new_mask});
      }
    }
    states = std::move(next);
  }
  const std::vector<int> single(static_cast<std::size_t>(n), 0);
  return states.count({hurwitz::identity_perm(n), single, (1u << r) - 1}) > 0;
}

}  // namespace block_oracle
