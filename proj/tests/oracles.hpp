#pragma once

// Reference computations used only by the tests.  Each one takes a different
// route from the library: extended Euclid instead of Newton, exhaustive root
// search instead of z -> z^p, exact rational series instead of the scaled
// integer recurrences, and permutation brute force instead of backtracking.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "padic/automorph.hpp"
#include "padic/core.hpp"

namespace testoracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using padic::Residue;
using padic::Table;

inline cpp_int ipow(cpp_int b, unsigned e) {
  cpp_int r = 1;
  while (e--) r *= b;
  return r;
}

inline cpp_int mod(const cpp_int& a, const cpp_int& m) {
  cpp_int r = a % m;
  return r < 0 ? r + m : r;
}

/// a^-1 mod m by the extended Euclidean algorithm.
inline cpp_int egcd_inverse(const cpp_int& a, const cpp_int& m) {
  cpp_int r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1 != 0) {
    const cpp_int q = r0 / r1;
    cpp_int t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("not invertible");
  return mod(s0, m);
}

inline cpp_int powmod(cpp_int b, cpp_int e, const cpp_int& m) {
  cpp_int r = 1;
  b = mod(b, m);
  while (e > 0) {
    if ((e & 1) != 0) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

/// The unique z = u mod p with z^(p-1) = 1 mod p^K, by scanning all lifts.
inline cpp_int teichmuller_search(const cpp_int& u, std::uint32_t p, unsigned K) {
  const cpp_int pk = ipow(p, K);
  const cpp_int u0 = mod(u, p);
  cpp_int found = -1;
  for (cpp_int z = u0; z < pk; z += p) {
    if (powmod(z, p - 1, pk) == 1) {
      if (found >= 0) throw std::logic_error("two roots of unity over one residue");
      found = z;
    }
  }
  if (found < 0) throw std::logic_error("no root of unity found");
  return found;
}

/// A p-integral rational reduced mod p^K.
inline cpp_int rational_mod(const cpp_rational& r, std::uint32_t p, unsigned K) {
  cpp_int num = numerator(r), den = denominator(r);
  while (den % p == 0) {
    if (num % p != 0) throw std::domain_error("value is not p-integral");
    num /= p;
    den /= p;
  }
  const cpp_int pk = ipow(p, K);
  return mod(num * egcd_inverse(den, pk), pk);
}

/// sum_{n < N} t^n / n!, exact over Q.
inline cpp_int exp_series(const cpp_int& t, std::uint32_t p, unsigned K, unsigned N) {
  cpp_rational sum = 0, term = 1;
  for (unsigned n = 0; n < N; ++n) {
    if (n > 0) term = term * t / n;
    sum += term;
  }
  return rational_mod(sum, p, K);
}

/// sum_{1 <= n < N} (-1)^(n+1) (x-1)^n / n, exact over Q.
inline cpp_int ln_series(const cpp_int& x, std::uint32_t p, unsigned K, unsigned N) {
  const cpp_int u = x - 1;
  cpp_rational sum = 0;
  cpp_int un = 1;
  for (unsigned n = 1; n < N; ++n) {
    un *= u;
    const cpp_rational term(un, n);
    sum += (n % 2 == 1) ? term : -term;
  }
  return rational_mod(sum, p, K);
}

/// Digit-by-digit evaluation of the built-in operations on plain integers.
inline Residue naive_op(padic::OpTag tag, Residue x, Residue y, std::uint32_t p, unsigned k) {
  Residue pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  switch (tag) {
    case padic::OpTag::Plus: return (x + y) % pk;
    case padic::OpTag::Times: return (x * y) % pk;
    case padic::OpTag::Xor:
    case padic::OpTag::And: {
      Residue r = 0, scale = 1;
      for (unsigned i = 0; i < k; ++i, x /= p, y /= p, scale *= p) {
        const Residue a = x % p, b = y % p;
        r += scale * (tag == padic::OpTag::Xor ? (a + b) % p : (a * b) % p);
      }
      return r;
    }
    case padic::OpTag::Custom: break;
  }
  throw std::invalid_argument("naive_op: custom");
}

inline bool tower_compatible(const Table& t, std::uint32_t p, unsigned k) {
  Residue pj = 1;
  for (unsigned j = 1; j <= k; ++j) {
    pj *= p;
    for (Residue x = 0; x < t.size(); ++x)
      if (t[x] % pj != t[x % pj] % pj) return false;
  }
  return true;
}

/// Every permutation of Z/p^k that is tower compatible and a homomorphism
/// for each op, by running through all (p^k)! permutations.
inline std::vector<Table> brute_force_automorphisms(std::uint32_t p, unsigned k,
                                                    const std::vector<padic::OpTag>& ops) {
  Residue pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  Table t(pk);
  std::iota(t.begin(), t.end(), Residue{0});
  std::vector<Table> out;
  do {
    if (!tower_compatible(t, p, k)) continue;
    bool ok = true;
    for (auto op : ops)
      for (Residue x = 0; x < pk && ok; ++x)
        for (Residue y = 0; y < pk && ok; ++y)
          ok = t[naive_op(op, x, y, p, k)] == naive_op(op, t[x], t[y], p, k);
    if (ok) out.push_back(t);
  } while (std::next_permutation(t.begin(), t.end()));
  return out;
}

inline padic::PadicInt random_padic(const padic::PrimeContext& ctx, std::mt19937_64& rng) {
  std::vector<padic::Digit> d(ctx.K());
  std::uniform_int_distribution<padic::Digit> dist(0, ctx.p() - 1);
  for (auto& v : d) v = dist(rng);
  return padic::PadicInt::from_digits(ctx, d);
}

inline padic::PadicInt random_unit(const padic::PrimeContext& ctx, std::mt19937_64& rng) {
  auto x = random_padic(ctx, rng);
  while (!x.is_unit()) x = random_padic(ctx, rng);
  return x;
}

/// 1 + p t for uniform t.
inline padic::PadicInt random_principal_unit(const padic::PrimeContext& ctx, std::mt19937_64& rng) {
  const auto t = random_padic(ctx, rng);
  return padic::PadicInt::from_integer(ctx, 1 + cpp_int(ctx.p()) * t.residue());
}

}  // namespace testoracle

namespace padic {

// gtest printers.
inline void PrintTo(const LipschitzFn& f, std::ostream* os) {
  *os << "table p=" << f.ctx().p() << " K=" << f.ctx().K() << " [";
  for (auto v : f.table()) *os << v << " ";
  *os << "]";
}

inline void PrintTo(const PadicInt& x, std::ostream* os) {
  *os << x.to_string() << " (p=" << x.ctx().p() << ", K=" << x.ctx().K() << ")";
}

}  // namespace padic
