#include "padic/cipher.hpp"

#include <algorithm>
#include <numeric>

namespace padic::cipher {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_permutation(const std::vector<Digit>& g, std::uint32_t p) {
  if (g.size() != p) throw DomainError("permutation must have p entries");
  std::vector<bool> hit(p, false);
  for (auto v : g) {
    if (v >= p || hit[v]) throw DomainError("key substitution is not a permutation of {0..p-1}");
    hit[v] = true;
  }
}

std::vector<Digit> invert(const std::vector<Digit>& g) {
  std::vector<Digit> inv(g.size());
  for (Digit i = 0; i < g.size(); ++i) inv[g[i]] = i;
  return inv;
}

void require_cover(const CipherKey& key, std::size_t length) {
  if (auto n = key_length(key); n && *n < length)
    throw DomainError("key covers " + std::to_string(*n) + " positions, word has " +
                      std::to_string(length));
}

template <bool Forward>
Word transform(const Word& w, const CipherKey& key) {
  validate(key, w.p());
  require_cover(key, w.size());
  const auto p = w.p();
  std::vector<Digit> out(w.size());
  std::visit(overloaded{
                 [&](const SubstStreamKey& k) {
                   for (std::size_t i = 0; i < w.size(); ++i)
                     out[i] = Forward ? k.perms[i][w[i]] : invert(k.perms[i])[w[i]];
                 },
                 [&](const KeystreamKey& k) {
                   for (std::size_t i = 0; i < w.size(); ++i)
                     out[i] = Forward ? (w[i] + k.gamma[i]) % p : (w[i] + p - k.gamma[i]) % p;
                 },
                 [&](const SubstKey& k) {
                   const auto g = Forward ? k.perm : invert(k.perm);
                   for (std::size_t i = 0; i < w.size(); ++i) out[i] = g[w[i]];
                 },
             },
             key);
  return Word(p, std::move(out));
}

}  // namespace

Word::Word(std::uint32_t p, std::vector<Digit> symbols) : p_(p), symbols_(std::move(symbols)) {
  if (symbols_.empty()) throw DomainError("words have length >= 1");
  for (auto s : symbols_)
    if (s >= p_) throw RangeError("symbol " + std::to_string(s) + " outside {0..p-1}");
}

Word Word::prefix(std::size_t length) const {
  if (length < 1 || length > symbols_.size()) throw DomainError("prefix length out of range");
  return Word(p_, {symbols_.begin(), symbols_.begin() + length});
}

BigInt tau(const Word& w) {
  BigInt v = 0;
  for (std::size_t i = w.size(); i-- > 0;) v = v * w.p() + w[i];
  return v;
}

Word tau_inverse(const BigInt& value, unsigned k, std::uint32_t p) {
  BigInt pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  if (k < 1 || value < 0 || value >= pk)
    throw RangeError("tau_inverse: " + value.str() + " is not a residue mod p^k");
  std::vector<Digit> s(k);
  BigInt rest = value;
  for (unsigned i = 0; i < k; ++i) {
    s[i] = static_cast<Digit>(rest % p);
    rest /= p;
  }
  return Word(p, std::move(s));
}

Word word_op(const Word& x, const Word& y, const OpKind& op) {
  if (x.size() != y.size()) throw DomainError("word_op: length mismatch");
  if (x.p() != y.p()) throw ContextMismatch("word_op: alphabet mismatch");
  const PrimeContext ctx(x.p(), static_cast<unsigned>(x.size()), std::max<unsigned>(x.size(), 32));
  const auto a = PadicInt::from_integer(ctx, tau(x));
  const auto b = PadicInt::from_integer(ctx, tau(y));
  PadicInt r = a;
  switch (op.tag) {
    case OpTag::Plus: r = a + b; break;
    case OpTag::Times: r = a * b; break;
    case OpTag::Xor: r = digit_xor(a, b); break;
    case OpTag::And: r = digit_and(a, b); break;
    case OpTag::Custom: throw DomainError("word_op: custom operations are not word operations");
  }
  return tau_inverse(r.residue(), ctx.K(), ctx.p());
}

void validate(const CipherKey& key, std::uint32_t p) {
  std::visit(overloaded{
                 [&](const SubstStreamKey& k) {
                   for (const auto& g : k.perms) check_permutation(g, p);
                 },
                 [&](const KeystreamKey& k) {
                   for (auto g : k.gamma)
                     if (g >= p) throw DomainError("keystream symbol outside {0..p-1}");
                 },
                 [&](const SubstKey& k) { check_permutation(k.perm, p); },
             },
             key);
}

std::optional<std::size_t> key_length(const CipherKey& key) {
  return std::visit(overloaded{
                        [](const SubstStreamKey& k) -> std::optional<std::size_t> { return k.perms.size(); },
                        [](const KeystreamKey& k) -> std::optional<std::size_t> { return k.gamma.size(); },
                        [](const SubstKey&) -> std::optional<std::size_t> { return std::nullopt; },
                    },
                    key);
}

const char* kind_name(const CipherKey& key) {
  static const char* names[] = {"subst_stream", "keystream", "subst"};
  return names[key.index()];
}

Word encrypt(const Word& w, const CipherKey& key) { return transform<true>(w, key); }
Word decrypt(const Word& w, const CipherKey& key) { return transform<false>(w, key); }

LipschitzFn model_fn(const CipherKey& key, const PrimeContext& ctx) {
  validate(key, ctx.p());
  require_cover(key, ctx.K());
  const auto n = table_size(ctx);
  const ResidueRing ring(ctx);
  Table t(n);
  std::vector<Digit> symbols(ctx.K());
  for (Residue x = 0; x < n; ++x) {
    for (unsigned i = 0; i < ctx.K(); ++i) symbols[i] = ring.digit(x, i);
    t[x] = tau(encrypt(Word(ctx.p(), symbols), key)).convert_to<Residue>();
  }
  return LipschitzFn::from_table(ctx, std::move(t), kind_name(key));
}

Formula leaf(std::size_t index) {
  return std::make_shared<const FormulaNode>(FormulaNode{FormulaNode::Leaf{index}});
}

Formula apply(const OpKind& op, Formula left, Formula right) {
  if (!left || !right) throw DomainError("formula node with a missing operand");
  return std::make_shared<const FormulaNode>(
      FormulaNode{FormulaNode::Apply{op, std::move(left), std::move(right)}});
}

Word evaluate(const Formula& formula, const std::vector<Word>& data) {
  return std::visit(overloaded{
                        [&](const FormulaNode::Leaf& l) {
                          if (l.index >= data.size())
                            throw DomainError("formula leaf index " + std::to_string(l.index) +
                                              " outside the data list");
                          return data[l.index];
                        },
                        [&](const FormulaNode::Apply& a) {
                          return word_op(evaluate(a.left, data), evaluate(a.right, data), a.op);
                        },
                    },
                    formula->node);
}

std::vector<OpKind> formula_ops(const Formula& formula) {
  std::vector<OpKind> out;
  auto add = [&](const OpKind& op) {
    if (std::none_of(out.begin(), out.end(), [&](const OpKind& o) { return o.tag == op.tag; }))
      out.push_back(op);
  };
  std::vector<Formula> stack{formula};
  while (!stack.empty()) {
    auto f = stack.back();
    stack.pop_back();
    if (auto* a = std::get_if<FormulaNode::Apply>(&f->node)) {
      add(a->op);
      stack.push_back(a->left);
      stack.push_back(a->right);
    }
  }
  return out;
}

DemoRecord homomorphic_eval(const Formula& formula, const std::vector<Word>& data, const CipherKey& key) {
  if (data.empty()) throw DomainError("homomorphic_eval: no data");
  for (const auto& d : data)
    if (d.size() != data.front().size() || d.p() != data.front().p())
      throw DomainError("homomorphic_eval: data words must share length and alphabet");
  Word plain = evaluate(formula, data);
  Word enc = encrypt(plain, key);
  std::vector<Word> enc_data;
  enc_data.reserve(data.size());
  for (const auto& d : data) enc_data.push_back(encrypt(d, key));
  Word on_cipher = evaluate(formula, enc_data);
  DemoRecord rec{plain, enc, on_cipher, enc == on_cipher, std::nullopt};
  for (std::size_t i = 0; i < enc.size() && !rec.equal; ++i)
    if (enc[i] != on_cipher[i]) {
      rec.first_difference = i;
      break;
    }
  return rec;
}

CipherKey random_key(KeyKind kind, std::uint32_t p, std::size_t length, std::mt19937_64& rng) {
  std::vector<Digit> id(p);
  std::iota(id.begin(), id.end(), Digit{0});
  auto perm = [&] {
    auto g = id;
    std::shuffle(g.begin(), g.end(), rng);
    return g;
  };
  switch (kind) {
    case KeyKind::SubstStream: {
      SubstStreamKey k;
      for (std::size_t i = 0; i < length; ++i) k.perms.push_back(perm());
      return k;
    }
    case KeyKind::Keystream: {
      std::uniform_int_distribution<Digit> d(0, p - 1);
      KeystreamKey k;
      for (std::size_t i = 0; i < length; ++i) k.gamma.push_back(d(rng));
      return k;
    }
    case KeyKind::Subst: return SubstKey{perm()};
  }
  throw DomainError("unknown key kind");
}

Word random_word(std::uint32_t p, std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<Digit> d(0, p - 1);
  std::vector<Digit> s(length);
  for (auto& v : s) v = d(rng);
  return Word(p, std::move(s));
}

}  // namespace padic::cipher
