#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "padic/core.hpp"
#include "padic/lipschitz.hpp"

/**
 * Automorphism families of Z_p with one operation from {+, *, XOR, AND},
 * the homomorphism/automorphism checkers, and the analyzer for operations
 * G(x, y) = c + a x + b y + sum c_ij x^i y^j.
 *
 *   Add:  f(x) = A x,                                A a unit
 *   Mul:  f(p^k theta (1+pt)) = p^k A^k theta^s (1+pt)^a,  f(0) = 0,
 *         gcd(s, p-1) = 1, a and A units (s = 1 when p = 2)
 *   Xor:  digit k of f(x) = sum_{i<=k} alpha[k][i] x_i mod p,  alpha[k][k] != 0
 *   And:  digit k of f(x) = x_k^{s_k} mod p,                  gcd(s_k, p-1) = 1
 */
namespace padic {

struct AddSpec {
  PadicInt A;
};

struct MulSpec {
  unsigned s;
  PadicInt a;
  PadicInt A;
};

struct XorSpec {
  /// Lower-triangular: alpha[k] has k+1 entries.
  std::vector<std::vector<Digit>> alpha;
};

struct AndSpec {
  std::vector<unsigned> s_list;
};

using AutSpec = std::variant<AddSpec, MulSpec, XorSpec, AndSpec>;

/// Throws DomainError unless the parameters satisfy the family's constraints
/// at the given context.
void validate(const AutSpec& spec, const PrimeContext& ctx);

std::string family_name(const AutSpec& spec);

/// Truncated G(x, y) = c + a x + b y + sum c_ij x^i y^j, i + j >= 2.
struct GTerm {
  unsigned i;
  unsigned j;
  PadicInt coeff;
};

struct GSpec {
  PadicInt c;
  PadicInt a;
  PadicInt b;
  std::vector<GTerm> terms;

  /// Degrees i + j of the terms with c_ij != 0 mod p^K, ascending.
  std::vector<unsigned> degrees() const;
};

enum class OpTag { Plus, Times, Xor, And, Custom };

struct OpKind {
  OpTag tag;
  std::shared_ptr<const GSpec> g;  // set for Custom

  static OpKind plus() { return {OpTag::Plus, nullptr}; }
  static OpKind times() { return {OpTag::Times, nullptr}; }
  static OpKind xor_op() { return {OpTag::Xor, nullptr}; }
  static OpKind and_op() { return {OpTag::And, nullptr}; }
  static OpKind custom(GSpec g) { return {OpTag::Custom, std::make_shared<const GSpec>(std::move(g))}; }
};

std::string op_name(const OpKind& op);
/// Parses "plus" / "+", "times" / "*", "xor", "and".
OpKind parse_op(const std::string& name);

/// Binary operation on residues mod p^K (machine-word path).
class ResidueOp {
 public:
  ResidueOp(const OpKind& op, const ResidueRing& ring);
  Residue operator()(Residue x, Residue y) const;

 private:
  OpTag tag_;
  const ResidueRing* ring_;
  Residue c_ = 0, a_ = 0, b_ = 0;
  struct Term {
    unsigned i, j;
    Residue coeff;
  };
  std::vector<Term> terms_;
};

/// G(x, y) on PadicInt.
PadicInt eval_g(const GSpec& g, const PadicInt& x, const PadicInt& y);

LipschitzFn realize(const AutSpec& spec, const PrimeContext& ctx);

/// f at a single point, through core arithmetic (works beyond table sizes).
PadicInt evaluate(const AutSpec& spec, const PadicInt& x);

struct HomReport {
  bool holds = true;
  bool exhaustive = true;
  std::uint64_t pairs_checked = 0;
  std::optional<std::pair<Residue, Residue>> counterexample;
};

/// Pairs above which is_homomorphism switches from exhaustive to sampled.
inline constexpr std::uint64_t kExhaustiveHomLimit = std::uint64_t{1} << 10;
inline constexpr std::uint64_t kSampledHomPairs = 100000;

HomReport is_homomorphism(const LipschitzFn& f, const OpKind& op, std::uint64_t seed = 0);
HomReport is_homomorphism_serial(const LipschitzFn& f, const OpKind& op, std::uint64_t seed = 0);

bool is_automorphism(const LipschitzFn& f, const std::vector<OpKind>& ops, std::uint64_t seed = 0);

struct MulParams {
  unsigned s;
  PadicInt a;
  PadicInt A;
};

/// Parameters of lhs o rhs: (s d, a b, A theta_B^s (1 + p B_1)^a).
MulParams compose_mul_params(const MulParams& lhs, const MulParams& rhs);

struct GReport {
  std::vector<unsigned> degrees;  // N_G
  std::optional<unsigned> d;      // gcd(n_k - 1); nullopt when N_G is empty
  bool trivial = true;
  std::uint64_t group_order = 0;  // automorphisms A x found mod p^K
  std::vector<PadicInt> witnesses;
  /// Group order over Z_p predicted from the structure of G; nullopt when
  /// the group is infinite (the linear case).
  std::optional<std::uint64_t> zp_order;
  /// Whether solutions mod p^K lift uniquely to Z_p (p does not divide d,
  /// or the linear case), so group_order must equal zp_order.
  bool lifts_uniquely = false;
  bool consistent = true;
};

GReport analyze_g(const GSpec& g, const PrimeContext& ctx);

}  // namespace padic
