#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

/**
 * Fixed-precision p-adic integers.
 *
 * A PadicInt is an element of Z/p^K, read as the truncation [x]_K of a
 * p-adic integer x = x_0 + x_1 p + x_2 p^2 + ...  Every operation is exact
 * mod p^K.  Digits are kept little-endian next to the aggregate residue so
 * that both digit access (XOR/AND, delta_k) and ring arithmetic stay cheap.
 */
namespace padic {

using BigInt = boost::multiprecision::cpp_int;
using Digit = std::uint32_t;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands built under different (p, K).
class ContextMismatch : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of the operation (non-unit, bad series argument, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: digit out of range, too many digits, residue >= p^K.
class RangeError : public Error {
 public:
  using Error::Error;
};

bool is_prime(std::uint64_t n);

/**
 * The pair (p, K).  Cheap to copy: the power table p^0..p^K is shared.
 */
class PrimeContext {
 public:
  static constexpr unsigned kDefaultMaxPrecision = 32;
  static constexpr std::uint32_t kMaxPrime = 1u << 16;

  PrimeContext(std::uint32_t p, unsigned K, unsigned max_precision = kDefaultMaxPrecision);

  std::uint32_t p() const { return p_; }
  unsigned K() const { return K_; }
  const BigInt& modulus() const { return (*powers_)[K_]; }
  /// p^i for 0 <= i <= K.
  const BigInt& power(unsigned i) const;

  /// Same prime, different precision.
  PrimeContext with_precision(unsigned K) const;

  /// p^K as a machine integer, if it fits in 63 bits.
  std::optional<std::uint64_t> small_modulus() const;

  friend bool operator==(const PrimeContext& a, const PrimeContext& b) {
    return a.p_ == b.p_ && a.K_ == b.K_;
  }

 private:
  std::uint32_t p_;
  unsigned K_;
  std::shared_ptr<const std::vector<BigInt>> powers_;
};

void require_same(const PrimeContext& a, const PrimeContext& b);

/// Smallest index of a nonzero digit; std::nullopt means "zero to precision K".
using Valuation = std::optional<unsigned>;

class PadicInt {
 public:
  /// Residue reduced into [0, p^K); negative values wrap.
  static PadicInt from_integer(const PrimeContext& ctx, const BigInt& value);
  static PadicInt from_integer(const PrimeContext& ctx, long long value) {
    return from_integer(ctx, BigInt(value));
  }
  /// Strict: digits in {0..p-1}, at most K of them, zero padded.
  static PadicInt from_digits(const PrimeContext& ctx, std::span<const Digit> digits);
  /// Strict: the decimal string must denote a residue in [0, p^K).
  static PadicInt from_decimal(const PrimeContext& ctx, std::string_view text);

  static PadicInt zero(const PrimeContext& ctx) { return from_integer(ctx, 0); }
  static PadicInt one(const PrimeContext& ctx) { return from_integer(ctx, 1); }

  const PrimeContext& ctx() const { return ctx_; }
  const BigInt& residue() const { return value_; }
  const std::vector<Digit>& digits() const { return digits_; }
  Digit digit(unsigned i) const { return digits_.at(i); }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return digits_[0] != 0; }

  /// [x]_k: the residue mod p^k as an integer.
  BigInt truncated(unsigned k) const;

  std::string to_string() const { return value_.str(); }

  friend bool operator==(const PadicInt& a, const PadicInt& b) {
    return a.ctx_ == b.ctx_ && a.value_ == b.value_;
  }

 private:
  PadicInt(PrimeContext ctx, BigInt value);

  PrimeContext ctx_;
  BigInt value_;
  std::vector<Digit> digits_;
};

std::vector<Digit> to_digits(const PadicInt& x);

PadicInt add(const PadicInt& x, const PadicInt& y);
PadicInt sub(const PadicInt& x, const PadicInt& y);
PadicInt mul(const PadicInt& x, const PadicInt& y);
PadicInt neg(const PadicInt& x);

/// Carry-free digit-wise sum mod p.
PadicInt digit_xor(const PadicInt& x, const PadicInt& y);
/// Carry-free digit-wise product mod p.
PadicInt digit_and(const PadicInt& x, const PadicInt& y);

inline PadicInt operator+(const PadicInt& x, const PadicInt& y) { return add(x, y); }
inline PadicInt operator-(const PadicInt& x, const PadicInt& y) { return sub(x, y); }
inline PadicInt operator*(const PadicInt& x, const PadicInt& y) { return mul(x, y); }
inline PadicInt operator-(const PadicInt& x) { return neg(x); }

Valuation valuation(const PadicInt& x);

/// Newton iteration y <- y(2 - xy), starting from the inverse mod p.
PadicInt inverse_unit(const PadicInt& x);

/// x^e by square-and-multiply, e >= 0.
PadicInt pow_int(const PadicInt& x, const BigInt& e);

/// The (p-1)-th root of unity congruent to u mod p: z -> z^p applied K times.
PadicInt teichmuller(const PadicInt& u);

/// x = p^k * theta * (1 + p t).
struct UnitDecomposition {
  unsigned valuation;
  PadicInt theta;
  PadicInt one_plus_pt;
  PadicInt t;
};

UnitDecomposition unit_decompose(const PadicInt& x);

/// Domain checks shared by exp/ln/pow.
bool in_exp_domain(const PadicInt& t);
bool in_ln_domain(const PadicInt& x);

PadicInt exp_p(const PadicInt& t);
PadicInt ln_p(const PadicInt& x);

/// Number of series terms exp_p/ln_p use at this precision for an argument of valuation v.
unsigned exp_terms(std::uint32_t p, unsigned K, unsigned v);
unsigned ln_terms(std::uint32_t p, unsigned K, unsigned v);

/// (1+pt)^a = sum C(a,n) (pt)^n, valid on all of 1 + pZ_p.
PadicInt pow_unit_binomial(const PadicInt& x, const PadicInt& a);
/// exp_p(a ln_p x); nullopt outside the exp/ln domain (1 + 4Z_2 for p = 2).
std::optional<PadicInt> pow_unit_explog(const PadicInt& x, const PadicInt& a);

/**
 * (1+pt)^a computed by the binomial series and cross-checked against
 * square-and-multiply on the residue of a and, where defined, against
 * exp_p(a ln_p x).  Throws std::logic_error if the routes disagree.
 */
PadicInt pow_unit(const PadicInt& x, const PadicInt& a);

/**
 * Machine-word arithmetic on Z/p^K for table-sized moduli (p^K <= 2^32).
 * Used by the table kernels; values are plain residues.
 */
class ResidueRing {
 public:
  explicit ResidueRing(const PrimeContext& ctx);
  ResidueRing(std::uint32_t p, unsigned K);

  std::uint32_t p() const { return p_; }
  unsigned K() const { return K_; }
  std::uint64_t modulus() const { return pow_[K_]; }
  std::uint64_t power(unsigned i) const { return pow_[i]; }

  std::uint64_t add(std::uint64_t x, std::uint64_t y) const {
    std::uint64_t s = x + y;
    return s >= modulus() ? s - modulus() : s;
  }
  std::uint64_t sub(std::uint64_t x, std::uint64_t y) const {
    return x >= y ? x - y : x + modulus() - y;
  }
  std::uint64_t mul(std::uint64_t x, std::uint64_t y) const { return (x * y) % modulus(); }
  std::uint64_t pow(std::uint64_t x, std::uint64_t e) const;
  std::uint64_t digit_xor(std::uint64_t x, std::uint64_t y) const;
  std::uint64_t digit_and(std::uint64_t x, std::uint64_t y) const;

  Digit digit(std::uint64_t x, unsigned i) const {
    return static_cast<Digit>((x / pow_[i]) % p_);
  }

 private:
  std::uint32_t p_;
  unsigned K_;
  std::vector<std::uint64_t> pow_;
};

}  // namespace padic
