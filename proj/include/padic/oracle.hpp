#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padic/automorph.hpp"

// Brute-force automorphism groups of the quotient systems <Z/p^k, ops, mod p^j>.
namespace padic::oracle {

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t budget, std::uint64_t nodes);
  std::uint64_t budget;
  std::uint64_t nodes;
};

inline constexpr std::uint64_t kDefaultBudget = 50'000'000;

struct EnumerationResult {
  std::uint32_t p;
  unsigned k;
  std::vector<OpKind> ops;
  std::vector<Table> automorphisms;  // lexicographic order
  std::uint64_t nodes = 0;           // sub-function assignments tried

  std::uint64_t count() const { return automorphisms.size(); }
};

/**
 * Depth-first search over the sub-coordinate form: a permutation phi_0,
 * then phi_{j,a} for every level j and prefix a in increasing order.  After
 * each assignment, every pair (x, y) whose images f(x), f(y), f(x o y) mod
 * p^(j+1) are all determined is tested, and failing branches are cut.
 * Built-in operations only.
 */
EnumerationResult enumerate_automorphisms(std::uint32_t p, unsigned k, const std::vector<OpKind>& ops,
                                          std::uint64_t budget = kDefaultBudget);

/// All valid family parameters mod p^k, realized and deduplicated, sorted.
std::vector<Table> family_tables(OpTag family, std::uint32_t p, unsigned k);

/// Number of parameter tuples the family enumeration visits (before dedup).
std::uint64_t family_parameter_count(OpTag family, std::uint32_t p, unsigned k);

struct SetComparison {
  bool equal = false;
  std::uint64_t family_count = 0;
  std::uint64_t enumerated_count = 0;
  std::uint64_t missing_count = 0;  // realized by the family, not enumerated
  std::uint64_t extra_count = 0;    // enumerated, not realized by the family
  std::vector<Table> missing;       // first few witnesses
  std::vector<Table> extra;
};

SetComparison compare_with_family(const EnumerationResult& result, OpTag family);
/// Same comparison for an arbitrary sorted, deduplicated table set mod p^k.
SetComparison compare_with_family(const std::vector<Table>& tables, OpTag family, std::uint32_t p, unsigned k);

/// Reductions mod p^k of the automorphisms at level k + 1, sorted and
/// deduplicated.  Every automorphism of the Z_p system reduces into this set,
/// while automorphisms that only exist mod p^k do not.
std::vector<Table> lifted_automorphisms(std::uint32_t p, unsigned k, const std::vector<OpKind>& ops,
                                        std::uint64_t budget = kDefaultBudget);

struct PairVerdict {
  OpKind first;
  OpKind second;
  std::uint64_t count = 0;
  std::uint64_t nodes = 0;
  bool identity_only = false;
  std::optional<Table> witness;  // a non-identity automorphism, if any
  std::uint64_t lifted_count = 0;  // size of lifted_automorphisms
  bool lifted_identity_only = false;
};

struct TrivialPairsReport {
  std::uint32_t p;
  unsigned k;
  std::vector<PairVerdict> pairs;
  bool all_trivial() const;
  bool all_lift_trivial() const;
};

TrivialPairsReport verify_trivial_pairs(std::uint32_t p, unsigned k,
                                        std::uint64_t budget = kDefaultBudget);

/// Expected |Aut| mod p^k of the single-operation systems as far as the
/// families predict: phi(p^k), (p-1)^k p^(k(k-1)/2), phi(p-1)^k.
std::uint64_t predicted_count(OpTag op, std::uint32_t p, unsigned k);

}  // namespace padic::oracle
