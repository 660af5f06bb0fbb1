#include <gtest/gtest.h>

#include "oracles.hpp"
#include "padic/core.hpp"

using namespace padic;
using testoracle::cpp_int;

namespace {

PadicInt P(const PrimeContext& ctx, long long v) { return PadicInt::from_integer(ctx, v); }

std::vector<PadicInt> all_residues(const PrimeContext& ctx) {
  std::vector<PadicInt> out;
  const auto n = ctx.small_modulus().value();
  for (std::uint64_t v = 0; v < n; ++v) out.push_back(P(ctx, static_cast<long long>(v)));
  return out;
}

unsigned vp(std::uint64_t n, std::uint32_t p) {
  unsigned v = 0;
  while (n % p == 0) n /= p, ++v;
  return v;
}

}  // namespace

TEST(Digits, Examples) {
  const Digit a[] = {1, 2};
  EXPECT_EQ(PadicInt::from_digits(PrimeContext(3, 3), a).residue(), 7);
  EXPECT_EQ(PadicInt::from_digits(PrimeContext(2, 4), {}).residue(), 0);
  const Digit b[] = {2, 1, 4};
  EXPECT_EQ(PadicInt::from_digits(PrimeContext(5, 3), b).residue(), 107);
}

TEST(Digits, Errors) {
  const PrimeContext ctx(3, 2);
  const Digit bad[] = {3};
  EXPECT_THROW(PadicInt::from_digits(ctx, bad), RangeError);
  const Digit longer[] = {1, 1, 1};
  EXPECT_THROW(PadicInt::from_digits(ctx, longer), RangeError);
  EXPECT_THROW(PadicInt::from_decimal(ctx, "9"), RangeError);
  EXPECT_THROW(PadicInt::from_decimal(ctx, "-1"), RangeError);
  EXPECT_EQ(PadicInt::from_decimal(ctx, "8").residue(), 8);
  EXPECT_THROW(PrimeContext(4, 2), DomainError);
  EXPECT_THROW(PrimeContext(3, 0), DomainError);
}

TEST(Digits, RoundTrip) {
  for (auto [p, K] : {std::pair{2u, 5u}, {3u, 3u}, {5u, 2u}}) {
    const PrimeContext ctx(p, K);
    for (const auto& x : all_residues(ctx)) {
      const auto d = to_digits(x);
      ASSERT_EQ(d.size(), K);
      EXPECT_EQ(PadicInt::from_digits(ctx, d), x);
    }
  }
}

TEST(Arithmetic, Examples) {
  const PrimeContext c5(5, 3), c2(2, 3), c3(3, 3);
  EXPECT_EQ(add(P(c5, 2), P(c5, 3)).residue(), 5);
  EXPECT_EQ(add(P(c2, 7), P(c2, 1)).residue(), 0);
  EXPECT_EQ(mul(P(c3, 5), P(c3, 7)).residue(), 8);
  EXPECT_EQ(neg(P(c3, 1)).residue(), 26);
  EXPECT_THROW(add(P(c5, 1), P(c3, 1)), ContextMismatch);
}

TEST(Arithmetic, DigitOpExamples) {
  const PrimeContext c3(3, 2), c2(2, 4);
  EXPECT_EQ(digit_xor(P(c3, 5), P(c3, 7)).residue(), 0);
  for (const auto& x : all_residues(c2)) EXPECT_EQ(digit_xor(x, P(c2, 0)), x);
  // Digits (2,1) and (1,2) multiply to (2,2), i.e. 2 + 2*3.
  EXPECT_EQ(digit_and(P(c3, 5), P(c3, 7)).residue(), 8);
}

TEST(Arithmetic, RingLawsExhaustive) {
  for (auto [p, K] : {std::pair{2u, 4u}, {3u, 2u}, {5u, 2u}}) {
    const PrimeContext ctx(p, K);
    const auto xs = all_residues(ctx);
    const auto zero = PadicInt::zero(ctx), one = PadicInt::one(ctx);
    for (const auto& x : xs) {
      EXPECT_EQ(x + zero, x);
      EXPECT_EQ(x * one, x);
      EXPECT_EQ(x + (-x), zero);
      for (const auto& y : xs) {
        ASSERT_EQ(x + y, y + x);
        ASSERT_EQ(x * y, y * x);
        for (const auto& z : xs) {
          ASSERT_EQ((x + y) + z, x + (y + z));
          ASSERT_EQ((x * y) * z, x * (y * z));
          ASSERT_EQ(x * (y + z), x * y + x * z);
        }
      }
    }
  }
}

TEST(Arithmetic, RingLawsRandom) {
  std::mt19937_64 rng(7);
  const PrimeContext ctx(7, 12);
  const BigInt m = ctx.modulus();
  for (int i = 0; i < 2000; ++i) {
    const auto x = testoracle::random_padic(ctx, rng), y = testoracle::random_padic(ctx, rng),
               z = testoracle::random_padic(ctx, rng);
    ASSERT_EQ((x * (y + z)).residue(), (x.residue() * (y.residue() + z.residue())) % m);
    ASSERT_EQ((x - y) + y, x);
    ASSERT_EQ((x * y) * z, x * (y * z));
  }
}

TEST(Arithmetic, DigitLawsExhaustive) {
  for (auto [p, K] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}}) {
    const PrimeContext ctx(p, K);
    const auto xs = all_residues(ctx);
    const auto zero = PadicInt::zero(ctx);
    const auto ones = PadicInt::from_digits(ctx, std::vector<Digit>(K, 1));
    for (const auto& x : xs) {
      EXPECT_EQ(digit_xor(x, zero), x);
      EXPECT_EQ(digit_and(x, ones), x);
      PadicInt acc = zero;
      for (unsigned i = 0; i < p; ++i) acc = digit_xor(acc, x);
      EXPECT_EQ(acc, zero) << "xor order must divide p";
      for (const auto& y : xs) {
        ASSERT_EQ(digit_xor(x, y), digit_xor(y, x));
        ASSERT_EQ(digit_and(x, y), digit_and(y, x));
        for (const auto& z : xs) {
          ASSERT_EQ(digit_xor(digit_xor(x, y), z), digit_xor(x, digit_xor(y, z)));
          ASSERT_EQ(digit_and(digit_and(x, y), z), digit_and(x, digit_and(y, z)));
        }
      }
    }
  }
}

TEST(Arithmetic, ResidueRingMatchesPadicInt) {
  for (auto [p, K] : {std::pair{2u, 6u}, {3u, 4u}, {5u, 3u}, {7u, 2u}}) {
    const PrimeContext ctx(p, K);
    const ResidueRing ring(ctx);
    const auto xs = all_residues(ctx);
    for (std::size_t i = 0; i < xs.size(); ++i)
      for (std::size_t j = 0; j < xs.size(); j += 3) {
        const auto &x = xs[i], &y = xs[j];
        ASSERT_EQ(ring.add(i, j), (x + y).residue());
        ASSERT_EQ(ring.sub(i, j), (x - y).residue());
        ASSERT_EQ(ring.mul(i, j), (x * y).residue());
        ASSERT_EQ(ring.digit_xor(i, j), digit_xor(x, y).residue());
        ASSERT_EQ(ring.digit_and(i, j), digit_and(x, y).residue());
        ASSERT_EQ(ring.digit(i, K - 1), x.digit(K - 1));
      }
  }
}

TEST(Valuation, Examples) {
  EXPECT_EQ(valuation(P(PrimeContext(2, 5), 12)), 2u);
  EXPECT_EQ(valuation(P(PrimeContext(5, 3), 0)), std::nullopt);
  EXPECT_EQ(valuation(P(PrimeContext(3, 4), 18)), 2u);
  // Valuation exactly K is impossible for a residue; zero is the sentinel.
  EXPECT_EQ(valuation(P(PrimeContext(3, 2), 9)), std::nullopt);
}

TEST(Inverse, Examples) {
  EXPECT_EQ(inverse_unit(P(PrimeContext(5, 3), 57)).residue(), 68);
  EXPECT_EQ(inverse_unit(P(PrimeContext(2, 3), 1)).residue(), 1);
  EXPECT_EQ(inverse_unit(P(PrimeContext(3, 2), 2)).residue(), 5);
  EXPECT_THROW(inverse_unit(P(PrimeContext(3, 2), 3)), DomainError);
}

TEST(Inverse, MatchesExtendedEuclid) {
  for (auto [p, K] : {std::pair{2u, 8u}, {3u, 5u}, {5u, 3u}}) {
    const PrimeContext ctx(p, K);
    for (const auto& x : all_residues(ctx))
      if (x.is_unit()) {
        ASSERT_EQ(inverse_unit(x).residue(), testoracle::egcd_inverse(x.residue(), ctx.modulus()));
      }
  }
  std::mt19937_64 rng(11);
  const PrimeContext big(7, 30);
  for (int i = 0; i < 200; ++i) {
    const auto x = testoracle::random_unit(big, rng);
    ASSERT_EQ(inverse_unit(x).residue(), testoracle::egcd_inverse(x.residue(), big.modulus()));
  }
}

TEST(Teichmuller, Examples) {
  const PrimeContext c5(5, 3), c3(3, 3);
  EXPECT_EQ(teichmuller(P(c5, 2)).residue(), 57);
  EXPECT_EQ(teichmuller(P(c5, 1)).residue(), 1);
  EXPECT_EQ(teichmuller(P(c3, 2)).residue(), 26);
  EXPECT_THROW(teichmuller(P(c5, 10)), DomainError);
}

TEST(Teichmuller, MatchesRootSearch) {
  for (auto [p, K] : {std::pair{2u, 4u}, {3u, 3u}, {5u, 3u}, {7u, 2u}, {11u, 2u}}) {
    const PrimeContext ctx(p, K);
    for (const auto& u : all_residues(ctx)) {
      if (!u.is_unit()) continue;
      const auto th = teichmuller(u);
      ASSERT_EQ(th.residue(), testoracle::teichmuller_search(u.residue(), p, K)) << "p=" << p << " u=" << u.to_string();
      ASSERT_EQ(pow_int(th, p - 1), PadicInt::one(ctx));
      ASSERT_EQ(th.digit(0), u.digit(0));
    }
  }
}

TEST(UnitDecompose, Examples) {
  {
    const auto d = unit_decompose(P(PrimeContext(5, 3), 2));
    EXPECT_EQ(d.valuation, 0u);
    EXPECT_EQ(d.theta.residue(), 57);
    EXPECT_EQ(d.one_plus_pt.residue(), 11);
    EXPECT_EQ(d.t.residue(), 2);
  }
  {
    const auto d = unit_decompose(P(PrimeContext(2, 4), 12));
    EXPECT_EQ(d.valuation, 2u);
    EXPECT_EQ(d.theta.residue(), 1);
    EXPECT_EQ(d.one_plus_pt.residue(), 3);
  }
  {
    const auto d = unit_decompose(P(PrimeContext(3, 2), 3));
    EXPECT_EQ(d.valuation, 1u);
    EXPECT_EQ(d.theta.residue(), 1);
    EXPECT_EQ(d.one_plus_pt.residue(), 1);
  }
  EXPECT_THROW(unit_decompose(P(PrimeContext(3, 2), 0)), DomainError);
}

TEST(UnitDecompose, Recomposes) {
  for (auto [p, K] : {std::pair{2u, 6u}, {3u, 4u}, {5u, 3u}, {7u, 2u}}) {
    const PrimeContext ctx(p, K);
    for (const auto& x : all_residues(ctx)) {
      if (x.is_zero()) continue;
      const auto d = unit_decompose(x);
      const auto pk = P(ctx, 1) * pow_int(P(ctx, p), d.valuation);
      ASSERT_EQ(pk * d.theta * d.one_plus_pt, x) << x.to_string();
      ASSERT_EQ(d.one_plus_pt.digit(0), 1u);
      ASSERT_EQ(d.one_plus_pt, P(ctx, 1) + P(ctx, p) * d.t);
      if (p == 2) {
        ASSERT_EQ(d.theta, PadicInt::one(ctx));
      }
      // theta^(p-1) = 1 mod p^(K - k)
      const auto th = pow_int(d.theta, p - 1).truncated(K - d.valuation);
      ASSERT_EQ(th, 1);
    }
  }
}

TEST(ExpLog, Examples) {
  const PrimeContext ctx(5, 3);
  EXPECT_EQ(ln_p(P(ctx, 6)).residue(), 55);
  EXPECT_EQ(exp_p(P(ctx, 0)).residue(), 1);
  EXPECT_EQ(exp_p(P(ctx, 55)).residue(), 6);
  EXPECT_THROW(exp_p(P(ctx, 1)), DomainError);
  EXPECT_THROW(ln_p(P(ctx, 2)), DomainError);
  const PrimeContext c2(2, 6);
  EXPECT_THROW(exp_p(P(c2, 2)), DomainError);
  EXPECT_THROW(ln_p(P(c2, 3)), DomainError);
  EXPECT_NO_THROW(ln_p(P(c2, 5)));
}

TEST(ExpLog, MatchRationalSeries) {
  std::mt19937_64 rng(3);
  for (auto [p, K] : {std::pair{2u, 8u}, {3u, 6u}, {5u, 5u}, {7u, 4u}}) {
    const PrimeContext ctx(p, K);
    const unsigned shift = p == 2 ? 2 : 1;
    const BigInt ps = testoracle::ipow(p, shift);
    const unsigned N = 3 * K + 12;
    for (int i = 0; i < 40; ++i) {
      const auto r = testoracle::random_padic(ctx, rng);
      const auto t = PadicInt::from_integer(ctx, ps * r.residue());
      const auto x = PadicInt::from_integer(ctx, 1 + ps * r.residue());
      ASSERT_EQ(exp_p(t).residue(), testoracle::exp_series(t.residue(), p, K, N)) << "p=" << p << " t=" << t.to_string();
      ASSERT_EQ(ln_p(x).residue(), testoracle::ln_series(x.residue(), p, K, N)) << "p=" << p << " x=" << x.to_string();
      ASSERT_EQ(exp_p(ln_p(x)), x);
      ASSERT_EQ(ln_p(exp_p(t)), t);
    }
  }
}

TEST(ExpLog, TruncationIndicesAreTight) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (unsigned K = 1; K <= 12; ++K) {
      for (unsigned v = (p == 2 ? 2 : 1); v <= 3; ++v) {
        // ln: terms n >= N have n v - floor(log_p n) >= K; N is the first such n.
        const unsigned N = ln_terms(p, K, v);
        auto ln_ok = [&](unsigned n) {
          unsigned lg = 0;
          for (std::uint64_t q = p; q <= n; q *= p) ++lg;
          return static_cast<int>(n * v) - static_cast<int>(lg) >= static_cast<int>(K);
        };
        for (unsigned n = N; n < 20 * (N + 1); ++n) ASSERT_TRUE(ln_ok(n)) << p << " " << K << " " << v;
        if (N > 1) {
          EXPECT_FALSE(ln_ok(N - 1));
        }
        // exp: every omitted term t^n/n! has valuation n v - v_p(n!) >= K.
        const unsigned E = exp_terms(p, K, v);
        for (unsigned n = E; n < 20 * (E + 1); ++n) {
          unsigned vfact = 0;
          for (unsigned m = 2; m <= n; ++m) vfact += vp(m, p);
          ASSERT_GE(static_cast<int>(n * v) - static_cast<int>(vfact), static_cast<int>(K));
        }
      }
    }
  }
}

TEST(PowUnit, Examples) {
  const PrimeContext ctx(5, 3);
  EXPECT_EQ(pow_unit(P(ctx, 6), P(ctx, 1)).residue(), 6);
  EXPECT_EQ(pow_unit(P(ctx, 6), P(ctx, 2)).residue(), 36);
  EXPECT_EQ(pow_unit(P(ctx, 11), P(ctx, 3)).residue(), 81);
  EXPECT_THROW(pow_unit(P(ctx, 2), P(ctx, 3)), DomainError);
}

TEST(PowUnit, BinomialMatchesSquareAndMultiply) {
  std::mt19937_64 rng(5);
  for (auto [p, K] : {std::pair{2u, 10u}, {3u, 6u}, {5u, 4u}}) {
    const PrimeContext ctx(p, K);
    for (int i = 0; i < 200; ++i) {
      const auto x = testoracle::random_principal_unit(ctx, rng);
      const auto a = testoracle::random_padic(ctx, rng);
      ASSERT_EQ(pow_unit_binomial(x, a), pow_int(x, a.residue()));
    }
  }
}

TEST(PowUnit, BinomialMatchesExpLog) {
  std::mt19937_64 rng(13);
  for (auto [p, K] : {std::pair{3u, 6u}, {5u, 4u}, {2u, 8u}}) {
    const PrimeContext ctx(p, K);
    for (int i = 0; i < 200; ++i) {
      auto x = testoracle::random_principal_unit(ctx, rng);
      if (p == 2 && x.digit(1) != 0) x = -x;  // move into 1 + 4Z_2
      const auto a = testoracle::random_padic(ctx, rng);
      const auto el = pow_unit_explog(x, a);
      ASSERT_TRUE(el.has_value());
      ASSERT_EQ(*el, pow_unit_binomial(x, a));
    }
  }
  const PrimeContext c2(2, 5);
  EXPECT_FALSE(pow_unit_explog(P(c2, 3), P(c2, 3)).has_value());
}

TEST(PowUnit, ExponentsAdd) {
  std::mt19937_64 rng(17);
  const PrimeContext ctx(3, 7);
  for (int i = 0; i < 100; ++i) {
    const auto x = testoracle::random_principal_unit(ctx, rng);
    const auto a = testoracle::random_padic(ctx, rng), b = testoracle::random_padic(ctx, rng);
    ASSERT_EQ(pow_unit(x, a) * pow_unit(x, b), pow_unit(x, a + b));
  }
}
