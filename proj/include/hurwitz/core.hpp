#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hurwitz {

/// Largest degree accepted anywhere in the toolkit. Keeps every sum of
/// entries, cycle counts and Riemann-Hurwitz terms inside 64 bits.
inline constexpr std::int64_t kMaxDegree = 1'000'000;

class DatumError : public std::runtime_error {
 public:
  enum class Kind { Syntax, InconsistentSum, BadGenus, TrivialPartition, OutOfRange };

  DatumError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// A partition of n, parts stored in non-increasing order.
class Partition {
 public:
  Partition() = default;
  /// Parts may be given in any order; throws DatumError on a part < 1.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const noexcept { return parts_; }
  int n() const noexcept { return n_; }
  int size() const noexcept { return static_cast<int>(parts_.size()); }
  bool trivial() const noexcept { return n_ == size(); }
  int max_part() const noexcept { return parts_.empty() ? 0 : parts_.front(); }

  /// Run-length text, e.g. "4,2^7".
  std::string to_string() const;

  auto operator<=>(const Partition& other) const { return parts_ <=> other.parts_; }
  bool operator==(const Partition& other) const { return parts_ == other.parts_; }

 private:
  std::vector<int> parts_;
  int n_ = 0;
};

/// d(Pi) = n - p.
inline int defect(const Partition& p) { return p.n() - p.size(); }

/// Genus forced by the Riemann-Hurwitz relation for q partitions of n.
/// Throws DatumError::BadGenus when the value is negative or not an integer.
int rh_genus(std::span<const Partition> partitions, int n);
/// Same, inferring n from the first partition (requires a non-empty list).
int rh_genus(std::span<const Partition> partitions);

/// Canonical order on partitions inside a datum: descending lexicographic.
inline bool canonical_before(const Partition& a, const Partition& b) { return b < a; }

/// A branch datum (Pi_1, ..., Pi_q, n, g) over the sphere, canonically sorted.
class BranchDatum {
 public:
  /// Validates sums, triviality and the Riemann-Hurwitz relation. If g is omitted it is inferred.
  static BranchDatum make(std::vector<Partition> partitions, int n,
                          std::optional<int> g = std::nullopt);
  /// n inferred from the partitions (at least one partition required).
  static BranchDatum make(std::vector<Partition> partitions, std::optional<int> g = std::nullopt);

  const std::vector<Partition>& partitions() const noexcept { return partitions_; }
  const Partition& operator[](std::size_t i) const { return partitions_[i]; }
  int q() const noexcept { return static_cast<int>(partitions_.size()); }
  int n() const noexcept { return n_; }
  int g() const noexcept { return g_; }

  auto operator<=>(const BranchDatum& other) const = default;

 private:
  BranchDatum() = default;
  std::vector<Partition> partitions_;
  int n_ = 1;
  int g_ = 0;
};

/// Lexicographic order of canonical partition lists (the enumeration order).
bool datum_before(const BranchDatum& a, const BranchDatum& b);

Partition parse_partition(std::string_view text);
BranchDatum parse_datum(std::string_view text);
std::string format_datum(const BranchDatum& datum);
/// "(4,2^7 | 3^6 | 3^6)" without the n/g suffix.
std::string format_partitions(const BranchDatum& datum);

}  // namespace hurwitz
