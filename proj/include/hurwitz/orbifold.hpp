#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hurwitz/core.hpp"

namespace hurwitz {

using Rational = boost::rational<std::int64_t>;

/// Multiset of ramification values >= 2 on the sphere.
class OrbifoldSignature {
 public:
  enum class Class { NonRamified, Bad, Good };

  OrbifoldSignature() = default;
  /// Values may come in any order; throws std::invalid_argument on a value < 2.
  explicit OrbifoldSignature(std::vector<int> values);

  const std::vector<int>& values() const noexcept { return values_; }
  int size() const noexcept { return static_cast<int>(values_.size()); }
  bool empty() const noexcept { return values_.empty(); }
  Class classify() const noexcept;
  bool good() const noexcept { return classify() != Class::Bad; }
  /// "{2,3,5}".
  std::string to_string() const;

  auto operator<=>(const OrbifoldSignature&) const = default;

 private:
  std::vector<int> values_;  // ascending
};

Rational chi_of(const OrbifoldSignature& sig);

/// Degree of the universal covering for a good signature with positive chi.
/// Throws std::domain_error otherwise.
std::int64_t theta_degree(const OrbifoldSignature& sig);

/// True for {}, {d,d}, {2,2,d}, {2,3,3}, {2,3,4}, {2,3,5}.
bool spherical(const OrbifoldSignature& sig);

struct TripleInvariants {
  int a = 2;
  int b = 2;
  int c = 2;
  Rational chi;
  std::optional<std::int64_t> n_abc;
  std::int64_t l_abc = 0;
};

TripleInvariants triple_invariants(int a, int b, int c);

/// Ramification values placed on partitions of a datum. Indices are 0-based
/// here and 1-based in every text or JSON rendering.
class OrbifoldAssignment {
 public:
  OrbifoldAssignment() = default;
  /// Throws std::invalid_argument on a repeated index or a value < 2.
  explicit OrbifoldAssignment(std::vector<std::pair<int, int>> entries);

  const std::vector<std::pair<int, int>>& entries() const noexcept { return entries_; }
  int size() const noexcept { return static_cast<int>(entries_.size()); }
  OrbifoldSignature signature() const;
  /// nu at a partition index, 1 when unassigned.
  int nu(int index) const noexcept;
  /// "{1->2, 2->3, 3->3}".
  std::string to_string() const;

  auto operator<=>(const OrbifoldAssignment&) const = default;

 private:
  std::vector<std::pair<int, int>> entries_;  // sorted by index
};

/// Canonical emission order: size, then indices, then values.
bool assignment_before(const OrbifoldAssignment& a, const OrbifoldAssignment& b);

struct PullbackResult {
  enum class Kind { NonRamified, Bad, GoodPositive, GoodNonpositive };

  OrbifoldSignature signature;
  Rational chi;
  Kind kind = Kind::NonRamified;
};

std::string to_string(PullbackResult::Kind kind);

/// Throws std::invalid_argument on an index outside the datum or a bad
/// induced signature.
PullbackResult pullback(const BranchDatum& datum, const OrbifoldAssignment& asg);

/// Every assignment on 2 or 3 partitions whose induced signature has
/// positive chi and whose pullback has at most max_singular singular points.
/// Values are capped at n. Pairs of identical partitions are treated as
/// interchangeable, so each assignment is reported once up to that symmetry.
std::vector<OrbifoldAssignment> enumerate_assignments(const BranchDatum& datum, int max_singular);

}  // namespace hurwitz
