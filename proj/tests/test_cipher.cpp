#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "padic/cipher.hpp"
#include "padic/json_io.hpp"

using namespace padic;
using namespace padic::cipher;

namespace {

const KeyKind kKinds[] = {KeyKind::SubstStream, KeyKind::Keystream, KeyKind::Subst};
const OpKind kOps[] = {OpKind::plus(), OpKind::times(), OpKind::xor_op(), OpKind::and_op()};

Formula random_formula(std::mt19937_64& rng, unsigned depth, std::size_t leaves, const std::vector<OpKind>& ops) {
  if (depth == 0 || rng() % 4 == 0) return leaf(rng() % leaves);
  const auto& op = ops[rng() % ops.size()];
  return apply(op, random_formula(rng, depth - 1, leaves, ops), random_formula(rng, depth - 1, leaves, ops));
}

}  // namespace

TEST(Words, TauExamples) {
  EXPECT_EQ(tau(Word(3, {1, 2})), 7);
  EXPECT_EQ(tau(Word(2, {0, 0, 1})), 4);
  EXPECT_EQ(tau_inverse(7, 2, 3), Word(3, {1, 2}));
  EXPECT_THROW(tau_inverse(9, 2, 3), RangeError);
  EXPECT_THROW(Word(3, {3}), RangeError);
  EXPECT_THROW(Word(3, {}), DomainError);
}

TEST(Words, WordOpExamples) {
  EXPECT_EQ(word_op(Word(3, {1, 2}), Word(3, {2, 0}), OpKind::plus()), Word(3, {0, 0}));
  const Word w(5, {4, 0, 3});
  EXPECT_EQ(word_op(w, Word(5, {0, 0, 0}), OpKind::xor_op()), w);
  EXPECT_EQ(word_op(Word(2, {1, 1}), Word(2, {1, 0}), OpKind::and_op()), Word(2, {1, 0}));
  EXPECT_THROW(word_op(Word(3, {1}), Word(3, {1, 2}), OpKind::plus()), DomainError);
}

TEST(Words, WordOpAgreesWithNaiveDigits) {
  for (auto [p, k] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 2u}}) {
    const Residue n = static_cast<Residue>(testoracle::ipow(p, k));
    for (const auto& op : kOps)
      for (Residue x = 0; x < n; ++x)
        for (Residue y = 0; y < n; ++y) {
          const auto w = word_op(tau_inverse(x, k, p), tau_inverse(y, k, p), op);
          ASSERT_EQ(tau(w), testoracle::naive_op(op.tag, x, y, p, k));
        }
  }
}

TEST(Keys, EncryptExamples) {
  EXPECT_EQ(encrypt(Word(3, {2, 1}), KeystreamKey{{1, 0}}), Word(3, {0, 1}));
  const Word w(5, {3, 1, 4, 1});
  EXPECT_EQ(encrypt(w, SubstKey{{0, 1, 2, 3, 4}}), w);
  EXPECT_THROW(encrypt(w, KeystreamKey{{1, 0}}), DomainError);
  EXPECT_THROW(validate(SubstKey{{0, 0, 1}}, 3), DomainError);
  EXPECT_THROW(validate(SubstStreamKey{{{0, 1}}}, 3), DomainError);
  EXPECT_THROW(validate(KeystreamKey{{3}}, 3), DomainError);
  EXPECT_FALSE(key_length(SubstKey{{1, 0}}).has_value());
  EXPECT_EQ(key_length(KeystreamKey{{1, 0, 1}}), 3u);
}

TEST(Keys, ModelExamples) {
  const PrimeContext c2(2, 2), c5(5, 3);
  EXPECT_EQ(model_fn(KeystreamKey{{0, 0, 0}}, c5), LipschitzFn::identity(c5));
  EXPECT_EQ(model_fn(SubstKey{{1, 0}}, c2).table(), (Table{3, 2, 1, 0}));

  // g_k(x) = c_k x is the XOR family with a diagonal alpha.
  const std::vector<Digit> c = {2, 4, 3};
  SubstStreamKey key;
  XorSpec spec;
  for (unsigned k = 0; k < 3; ++k) {
    std::vector<Digit> g(5);
    for (Digit x = 0; x < 5; ++x) g[x] = static_cast<Digit>(c[k] * x % 5);
    key.perms.push_back(g);
    spec.alpha.emplace_back(k + 1, 0);
    spec.alpha[k][k] = c[k];
  }
  EXPECT_EQ(model_fn(key, c5), realize(spec, c5));
}

TEST(Keys, RoundTripPrefixAndMeasure) {
  std::mt19937_64 rng(40);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (auto kind : kKinds) {
      for (int rep = 0; rep < 50; ++rep) {
        const std::size_t len = 1 + rng() % 8;
        const auto key = random_key(kind, p, len, rng);
        const auto w = random_word(p, len, rng);
        const auto e = encrypt(w, key);
        ASSERT_EQ(e.size(), w.size());
        ASSERT_EQ(decrypt(e, key), w);
        for (std::size_t s = 1; s <= len; ++s) ASSERT_EQ(encrypt(w.prefix(s), key), e.prefix(s));
      }
      const unsigned K = p == 2 ? 6 : 3;
      const PrimeContext ctx(p, K);
      for (int rep = 0; rep < 10; ++rep) {
        const auto key = random_key(kind, p, K, rng);
        const auto f = model_fn(key, ctx);
        ASSERT_TRUE(preserves_measure_vdp(f).holds);
        ASSERT_TRUE(preserves_measure_coord(f).holds);
        ASSERT_TRUE(is_bijective_all(f));
        for (Residue x = 0; x < f.size(); ++x) ASSERT_EQ(BigInt(f(x)), tau(encrypt(tau_inverse(x, K, p), key)));
      }
    }
  }
}

TEST(Demo, Examples) {
  std::mt19937_64 rng(41);
  const auto xy = apply(OpKind::xor_op(), leaf(0), leaf(1));
  const std::vector<Word> data = {Word(3, {2, 1, 0}), Word(3, {1, 1, 2})};

  SubstStreamKey linear{{{0, 2, 1}, {0, 1, 2}, {0, 2, 1}}};
  const auto ok = homomorphic_eval(xy, data, linear);
  EXPECT_TRUE(ok.equal);
  EXPECT_FALSE(ok.first_difference.has_value());
  EXPECT_EQ(ok.plain_result, word_op(data[0], data[1], OpKind::xor_op()));

  const auto bad = homomorphic_eval(xy, data, KeystreamKey{{1, 0, 0}});
  EXPECT_FALSE(bad.equal);
  ASSERT_TRUE(bad.first_difference.has_value());
  EXPECT_EQ(*bad.first_difference, 0u);
  EXPECT_NE(bad.encrypted_result, bad.computed_on_cipher);

  for (auto kind : kKinds) {
    const auto key = random_key(kind, 3, 3, rng);
    EXPECT_TRUE(homomorphic_eval(leaf(1), data, key).equal);
  }
  EXPECT_THROW(homomorphic_eval(leaf(2), data, linear), DomainError);
}

TEST(Demo, SingleOpEqualityIsExactlyHomomorphism) {
  // One op node over two leaves, all data pairs: the sides agree everywhere
  // iff the model is a homomorphism for that op.
  std::mt19937_64 rng(42);
  for (auto [p, K] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}}) {
    const PrimeContext ctx(p, K);
    const Residue n = static_cast<Residue>(testoracle::ipow(p, K));
    for (auto kind : kKinds) {
      for (int rep = 0; rep < 4; ++rep) {
        const auto key = random_key(kind, p, K, rng);
        const auto f = model_fn(key, ctx);
        for (const auto& op : kOps) {
          const auto formula = apply(op, leaf(0), leaf(1));
          bool all_equal = true;
          for (Residue x = 0; x < n && all_equal; ++x)
            for (Residue y = 0; y < n && all_equal; ++y)
              all_equal = homomorphic_eval(formula, {tau_inverse(x, K, p), tau_inverse(y, K, p)}, key).equal;
          ASSERT_EQ(all_equal, is_homomorphism(f, op).holds) << kind_name(key) << " " << op_name(op);
        }
      }
    }
  }
}

TEST(Demo, RandomFormulasRespectHomomorphisms) {
  // Depth <= 4 over random op subsets: homomorphic keys always give equal
  // sides, and a difference always involves a non-homomorphic op.
  std::mt19937_64 rng(43);
  const std::uint32_t p = 3;
  const unsigned K = 3;
  const PrimeContext ctx(p, K);
  int differences = 0;
  for (int rep = 0; rep < 400; ++rep) {
    std::vector<OpKind> ops;
    for (const auto& op : kOps)
      if (rng() % 2) ops.push_back(op);
    if (ops.empty()) ops.push_back(OpKind::xor_op());
    const auto key = random_key(kKinds[rep % 3], p, K, rng);
    const auto f = model_fn(key, ctx);
    const auto formula = random_formula(rng, 4, 3, ops);
    const std::vector<Word> data = {random_word(p, K, rng), random_word(p, K, rng), random_word(p, K, rng)};
    bool all_hom = true;
    for (const auto& op : formula_ops(formula)) all_hom = all_hom && is_homomorphism(f, op).holds;
    const auto rec = homomorphic_eval(formula, data, key);
    if (all_hom) {
      ASSERT_TRUE(rec.equal);
    }
    if (!rec.equal) {
      ASSERT_FALSE(all_hom);
      ++differences;
    }
  }
  EXPECT_GT(differences, 0);
}

TEST(Json, RoundTrips) {
  namespace jio = padic::json_io;
  std::mt19937_64 rng(44);
  const Word w(5, {1, 4, 0});
  EXPECT_EQ(jio::word_from_json(jio::to_json(w)), w);
  for (auto kind : kKinds) {
    const auto key = random_key(kind, 5, 4, rng);
    const auto back = jio::key_from_json(jio::to_json(key));
    EXPECT_EQ(jio::to_json(back), jio::to_json(key));
    EXPECT_EQ(encrypt(Word(5, {1, 2, 3, 4}), back), encrypt(Word(5, {1, 2, 3, 4}), key));
  }
  const auto f = random_formula(rng, 4, 3, {OpKind::plus(), OpKind::xor_op(), OpKind::and_op()});
  EXPECT_EQ(jio::to_json(jio::formula_from_json(jio::to_json(f))), jio::to_json(f));
  const auto parsed = jio::formula_from_json(jio::json::parse(R"(["xor", ["leaf", 0], ["leaf", 1]])"));
  EXPECT_EQ(evaluate(parsed, {Word(3, {1, 2}), Word(3, {2, 2})}), Word(3, {0, 1}));
  EXPECT_EQ(std::get<KeystreamKey>(jio::key_from_json(jio::json::parse(R"({"kind":"keystream","gamma":[1,0]})"))).gamma,
            (std::vector<Digit>{1, 0}));
}
