#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/permutation.hpp"
#include "hurwitz/verdict.hpp"

namespace hurwitz {

struct OracleLimits {
  /// Wall-clock budget; unlimited when empty.
  std::optional<double> timeout_seconds;
  int max_n = 12;
  int threads = 1;
};

struct OracleResult {
  enum class Status { Found, Exhausted, Aborted };

  Status status = Status::Aborted;
  std::optional<Constellation> witness;
  std::string reason;
  std::uint64_t nodes = 0;
};

std::string to_string(OracleResult::Status status);

/// Product identity, transitivity, cycle types and genus. Throws
/// std::invalid_argument when a permutation has the wrong degree.
bool verify_constellation(const std::vector<Perm>& perms, const BranchDatum& datum);

/// Complete backtracking search for a constellation realizing the datum.
OracleResult find_constellation(const BranchDatum& datum, const OracleLimits& limits = {});

/// find_constellation mapped onto a Verdict.
Verdict decide(const BranchDatum& datum, const OracleLimits& limits = {});

}  // namespace hurwitz
