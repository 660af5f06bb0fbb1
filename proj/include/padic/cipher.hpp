#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "padic/automorph.hpp"
#include "padic/lipschitz.hpp"

/**
 * Length-preserving ciphers on words over {0..p-1} and their 1-Lipschitz
 * models on Z_p.  A word (x_1, ..., x_k) is identified with the residue
 * tau_k(x) = x_1 + x_2 p + ... + x_k p^(k-1), so symbols()[0] is the least
 * significant digit.
 */
namespace padic::cipher {

class Word {
 public:
  Word(std::uint32_t p, std::vector<Digit> symbols);

  std::uint32_t p() const { return p_; }
  std::size_t size() const { return symbols_.size(); }
  const std::vector<Digit>& symbols() const { return symbols_; }
  Digit operator[](std::size_t i) const { return symbols_[i]; }

  Word prefix(std::size_t length) const;

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::uint32_t p_;
  std::vector<Digit> symbols_;
};

BigInt tau(const Word& w);
Word tau_inverse(const BigInt& value, unsigned k, std::uint32_t p);

/// tau^-1(tau(x) o tau(y) mod p^k) for the four built-in operations.
Word word_op(const Word& x, const Word& y, const OpKind& op);

/// Symbol i -> g_i(x_i).
struct SubstStreamKey {
  std::vector<std::vector<Digit>> perms;
};
/// Symbol i -> x_i + gamma_i mod p.
struct KeystreamKey {
  std::vector<Digit> gamma;
};
/// Symbol i -> g(x_i).
struct SubstKey {
  std::vector<Digit> perm;
};

using CipherKey = std::variant<SubstStreamKey, KeystreamKey, SubstKey>;

/// Throws DomainError for non-permutations or out-of-range symbols.
void validate(const CipherKey& key, std::uint32_t p);
/// Positions covered by the key; nullopt for the position-independent Subst.
std::optional<std::size_t> key_length(const CipherKey& key);
const char* kind_name(const CipherKey& key);

Word encrypt(const Word& w, const CipherKey& key);
Word decrypt(const Word& w, const CipherKey& key);

/// The induced map on Z/p^K: table[tau(w)] = tau(encrypt(w)) for |w| = K.
LipschitzFn model_fn(const CipherKey& key, const PrimeContext& ctx);

struct FormulaNode;
using Formula = std::shared_ptr<const FormulaNode>;

struct FormulaNode {
  struct Leaf {
    std::size_t index;
  };
  struct Apply {
    OpKind op;
    Formula left;
    Formula right;
  };
  std::variant<Leaf, Apply> node;
};

Formula leaf(std::size_t index);
Formula apply(const OpKind& op, Formula left, Formula right);

Word evaluate(const Formula& formula, const std::vector<Word>& data);
std::vector<OpKind> formula_ops(const Formula& formula);

/// Both sides of f(W(d_1..d_n)) = W(f(d_1)..f(d_n)).
struct DemoRecord {
  Word plain_result;         // W(d)
  Word encrypted_result;     // f(W(d))
  Word computed_on_cipher;   // W(f(d))
  bool equal;
  std::optional<std::size_t> first_difference;  // symbol index
};

DemoRecord homomorphic_eval(const Formula& formula, const std::vector<Word>& data, const CipherKey& key);

/// Random valid key of the given kind covering `length` positions.
enum class KeyKind { SubstStream, Keystream, Subst };
CipherKey random_key(KeyKind kind, std::uint32_t p, std::size_t length, std::mt19937_64& rng);
Word random_word(std::uint32_t p, std::size_t length, std::mt19937_64& rng);

}  // namespace padic::cipher
