#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hurwitz/core.hpp"
#include "hurwitz/oracle.hpp"
#include "hurwitz/orbifold.hpp"
#include "hurwitz/verdict.hpp"

namespace hurwitz {

struct CriteriaOptions {
  bool use_oracle = true;
  OracleLimits oracle;
  /// Largest right-factor degree the composition matcher will exhaust.
  int max_t_degree = 6;
  /// Depth bound for certifying residual right factors.
  int max_recursion = 3;
};

/// Raised by the composition matcher beyond its exhaustion bound.
class ComposeBoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degrees forced on f = w o t by a good pullback with positive chi.
struct ForcedFactor {
  Rational deg_w;
  Rational deg_t;
  bool integral() const { return deg_w.denominator() == 1 && deg_t.denominator() == 1; }
};

/// Throws std::invalid_argument unless the pullback is good with positive chi
/// and the orbifold itself has positive chi.
ForcedFactor forced_factor(const BranchDatum& datum, const OrbifoldAssignment& asg);

/// How the fibers of t sit inside the fibers of f = w o t.
struct MatchWitness {
  /// Target partition index (0-based) receiving each partition of w.
  std::vector<int> placement;
  /// Local degrees of t over each target point, trivial ones included.
  std::vector<std::vector<Partition>> fibers;
  /// Branch datum of t (the nontrivial fibers), or "() n=1" for degree 1.
  BranchDatum residual;
};

/// First match found, or none when no right factor of degree t_degree can
/// compose with w to the target datum. Throws ComposeBoundError when
/// t_degree exceeds max_t_degree.
std::optional<MatchWitness> compose_feasible(const BranchDatum& w_datum, int t_degree, const BranchDatum& target,
                                             int max_t_degree = 6);

/// Every distinct residual t datum over all matches.
std::vector<BranchDatum> enumerate_compositions(const BranchDatum& w_datum, int t_degree, const BranchDatum& target,
                                                int max_t_degree = 6);

/// Left factors of degree k of the dihedral covering for {2,2,k} whose
/// pullback is {2,2}.
std::vector<BranchDatum> dihedral_left_factors(int k);

/// Genus-0 branch data of coverings w with w^*(O) = P and deg w = degree.
std::vector<BranchDatum> covering_left_factors(const OrbifoldSignature& orbifold, const OrbifoldSignature& pulled,
                                               int degree);

/// Candidate left factors w with signature of w^*(O) equal to {m,m} or
/// {2,2,2}, 2 <= deg w <= n/2 and deg w | n.
std::vector<BranchDatum> genus_one_left_factors(const OrbifoldSignature& orbifold, int n);

std::optional<Certificate> check_t1_bad(const BranchDatum& datum);
std::optional<Certificate> check_t0_divisibility(const BranchDatum& datum);
std::optional<Certificate> check_t0_chainrule(const BranchDatum& datum);
std::optional<Certificate> check_t2_divisibility(const BranchDatum& datum);
std::optional<Certificate> check_t2_decomposition(const BranchDatum& datum, const CriteriaOptions& options = {});
std::optional<Certificate> check_t3(const BranchDatum& datum, const CriteriaOptions& options = {});

/// Cascade T1 -> T0 -> T0 chain rule -> T2 -> T2 decomposition -> T3 -> oracle.
Verdict certify(const BranchDatum& datum, const CriteriaOptions& options = {});

/// Recomputes every fact a certificate claims from the datum alone.
/// Oracle-exhaustion certificates are rechecked by a fresh search when
/// options.use_oracle is set and rejected otherwise.
bool verify_certificate(const BranchDatum& datum, const Certificate& cert, const CriteriaOptions& options = {});

}  // namespace hurwitz
