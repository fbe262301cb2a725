#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/orbifold.hpp"
#include "hurwitz/permutation.hpp"

namespace hurwitz {

enum class CertKind {
  T1Bad,
  T0Divisibility,
  T0ChainRule,
  T2Divisibility,
  T2Decomposition,
  T3Decomposition,
  Recursive,
  OracleExhausted,
};

std::string to_string(CertKind kind);
/// Throws std::invalid_argument for an unknown name.
CertKind cert_kind_from_string(const std::string& name);

struct Residual;

/// Witness of non-realizability. Only the fields relevant to `kind` are set.
struct Certificate {
  CertKind kind = CertKind::T1Bad;
  OrbifoldAssignment assignment;
  OrbifoldSignature pullback;
  /// Divisibility kinds: `value` is not divisible by `modulus`.
  std::int64_t modulus = 0;
  std::int64_t value = 0;
  /// Chain rule: entry of partition `entry_index` (0-based) and the bound it exceeds.
  int entry = 0;
  int entry_index = -1;
  int deg_w = 0;
  int deg_t = 0;
  /// Decomposition kinds: why the forced factorization is impossible.
  std::string reason;
  std::vector<BranchDatum> left_factors;
  std::vector<Residual> residuals;
};

/// A forced right factor and the certificate that rules it out.
struct Residual {
  BranchDatum datum;
  Certificate certificate;
};

struct Verdict {
  enum class Status { NonRealizable, Realizable, Unknown };

  Status status = Status::Unknown;
  std::optional<Certificate> certificate;
  std::optional<Constellation> witness;
  std::vector<std::string> notes;

  static Verdict non_realizable(Certificate c);
  static Verdict realizable(Constellation c);
  static Verdict unknown(std::vector<std::string> notes);
};

std::string to_string(Verdict::Status status);

nlohmann::json certificate_to_json(const Certificate& c);
/// Throws std::invalid_argument or nlohmann::json::exception on malformed input.
Certificate certificate_from_json(const nlohmann::json& j);

/// Multi-line human readable rendering, indented by `indent` spaces.
std::string describe(const Certificate& c, int indent = 0);

}  // namespace hurwitz
