#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hurwitz/core.hpp"

namespace hurwitz {

/// One-line permutation of {0..n-1}: perm[x] is the image of x.
using Perm = std::vector<int>;

Perm identity_perm(int n);
bool is_permutation(const Perm& p);
/// (a * b)(x) = a(b(x)).
Perm compose(const Perm& a, const Perm& b);
Perm inverse(const Perm& p);
Partition cycle_type(const Perm& p);
/// Cycles in decreasing length on consecutive integers.
Perm canonical_representative(const Partition& type);

/// "(1 2)(3 4)", fixed points omitted, 1-based. The identity prints as "()".
std::string cycle_notation(const Perm& p);
/// Inverse of cycle_notation; throws std::invalid_argument.
Perm parse_cycles(std::string_view text, int n);

}  // namespace hurwitz

namespace hurwitz {

/// Permutations whose composite perms[0] * ... * perms[q-1] is the identity,
/// listed in the partition order of the datum they realize.
struct Constellation {
  int n = 1;
  std::vector<Perm> perms;
};

/// "(1 2)(3 4) | (1 3)(2 4) | (1 4)(2 3)".
std::string format_constellation(const Constellation& c);
Constellation parse_constellation(std::string_view text, int n);

}  // namespace hurwitz
