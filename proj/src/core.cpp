#include "padic/core.hpp"

#include <algorithm>
#include <cctype>

namespace padic {

namespace {

using boost::multiprecision::powm;

BigInt mod_floor(const BigInt& v, const BigInt& m) {
  BigInt r = v % m;
  if (r < 0) r += m;
  return r;
}

unsigned vp_of(std::uint64_t n, std::uint32_t p) {
  unsigned v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

unsigned vp_factorial(std::uint64_t n, std::uint32_t p) {
  unsigned v = 0;
  for (std::uint64_t q = n / p; q != 0; q /= p) v += static_cast<unsigned>(q);
  return v;
}

unsigned digit_sum(std::uint64_t n, std::uint32_t p) {
  unsigned s = 0;
  for (; n != 0; n /= p) s += static_cast<unsigned>(n % p);
  return s;
}

// Inverse of a unit modulo m = p^e, by Newton iteration from the inverse mod p.
BigInt inverse_mod_power(const BigInt& x, std::uint32_t p, const BigInt& m) {
  const BigInt bp(p);
  BigInt x0 = mod_floor(x, bp);
  if (x0 == 0) throw DomainError("inverse of a non-unit");
  BigInt y = powm(x0, BigInt(p - 2), bp);
  if (p == 2) y = 1;
  for (int guard = 0; guard < 64; ++guard) {
    BigInt e = mod_floor(x * y, m);
    if (e == 1 % m) return y;
    y = mod_floor(y * (2 - e), m);
  }
  throw std::logic_error("Newton inversion did not converge");
}

// Divides value (known mod `modulus`) by n in Z_p.  Requires p^v_p(n) | value.
// Returns the quotient and shrinks `modulus` by p^v_p(n).
BigInt divide_exact(const BigInt& value, std::uint64_t n, std::uint32_t p, BigInt& modulus) {
  unsigned v = vp_of(n, p);
  std::uint64_t unit = n;
  BigInt pv = 1;
  for (unsigned i = 0; i < v; ++i) {
    unit /= p;
    pv *= p;
  }
  if (value % pv != 0) throw std::logic_error("series term not divisible as required");
  BigInt q = value / pv;
  modulus /= pv;
  return mod_floor(q * inverse_mod_power(BigInt(unit), p, modulus), modulus);
}

BigInt ipow(std::uint32_t p, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------------------
// PrimeContext

PrimeContext::PrimeContext(std::uint32_t p, unsigned K, unsigned max_precision) : p_(p), K_(K) {
  if (p < 2 || p >= kMaxPrime || !is_prime(p))
    throw DomainError("p = " + std::to_string(p) + " is not a prime below 2^16");
  if (K < 1 || K > max_precision)
    throw DomainError("precision K = " + std::to_string(K) + " outside [1, " +
                      std::to_string(max_precision) + "]");
  auto powers = std::make_shared<std::vector<BigInt>>();
  powers->reserve(K + 1);
  BigInt acc = 1;
  for (unsigned i = 0; i <= K; ++i) {
    powers->push_back(acc);
    acc *= p;
  }
  powers_ = std::move(powers);
}

const BigInt& PrimeContext::power(unsigned i) const { return powers_->at(i); }

PrimeContext PrimeContext::with_precision(unsigned K) const {
  return PrimeContext(p_, K, std::max(K, kDefaultMaxPrecision));
}

std::optional<std::uint64_t> PrimeContext::small_modulus() const {
  if (msb(modulus()) >= 63) return std::nullopt;
  return modulus().convert_to<std::uint64_t>();
}

void require_same(const PrimeContext& a, const PrimeContext& b) {
  if (!(a == b))
    throw ContextMismatch("context mismatch: (p=" + std::to_string(a.p()) + ", K=" +
                          std::to_string(a.K()) + ") vs (p=" + std::to_string(b.p()) +
                          ", K=" + std::to_string(b.K()) + ")");
}

// ---------------------------------------------------------------------------
// PadicInt

PadicInt::PadicInt(PrimeContext ctx, BigInt value)
    : ctx_(std::move(ctx)), value_(std::move(value)), digits_(ctx_.K(), 0) {
  BigInt rest = value_;
  const BigInt bp(ctx_.p());
  for (unsigned i = 0; i < ctx_.K() && rest != 0; ++i) {
    BigInt q, r;
    divide_qr(rest, bp, q, r);
    digits_[i] = r.convert_to<Digit>();
    rest = std::move(q);
  }
}

PadicInt PadicInt::from_integer(const PrimeContext& ctx, const BigInt& value) {
  return PadicInt(ctx, mod_floor(value, ctx.modulus()));
}

PadicInt PadicInt::from_digits(const PrimeContext& ctx, std::span<const Digit> digits) {
  if (digits.size() > ctx.K())
    throw RangeError("digit array of length " + std::to_string(digits.size()) +
                     " exceeds precision K = " + std::to_string(ctx.K()));
  BigInt v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (digits[i] >= ctx.p())
      throw RangeError("digit " + std::to_string(digits[i]) + " at index " + std::to_string(i) +
                       " outside {0.." + std::to_string(ctx.p() - 1) + "}");
    v = v * ctx.p() + digits[i];
  }
  return PadicInt(ctx, std::move(v));
}

PadicInt PadicInt::from_decimal(const PrimeContext& ctx, std::string_view text) {
  if (text.empty() || !std::all_of(text.begin(), text.end(),
                                   [](unsigned char c) { return std::isdigit(c) != 0; }))
    throw RangeError("not a decimal residue: '" + std::string(text) + "'");
  BigInt v{std::string(text)};
  if (v >= ctx.modulus())
    throw RangeError("residue " + std::string(text) + " is not below p^K = " +
                     ctx.modulus().str());
  return PadicInt(ctx, std::move(v));
}

BigInt PadicInt::truncated(unsigned k) const {
  if (k >= ctx_.K()) return value_;
  return value_ % ctx_.power(k);
}

std::vector<Digit> to_digits(const PadicInt& x) { return x.digits(); }

PadicInt add(const PadicInt& x, const PadicInt& y) {
  require_same(x.ctx(), y.ctx());
  return PadicInt::from_integer(x.ctx(), x.residue() + y.residue());
}

PadicInt sub(const PadicInt& x, const PadicInt& y) {
  require_same(x.ctx(), y.ctx());
  return PadicInt::from_integer(x.ctx(), x.residue() - y.residue());
}

PadicInt mul(const PadicInt& x, const PadicInt& y) {
  require_same(x.ctx(), y.ctx());
  return PadicInt::from_integer(x.ctx(), x.residue() * y.residue());
}

PadicInt neg(const PadicInt& x) { return PadicInt::from_integer(x.ctx(), -x.residue()); }

PadicInt digit_xor(const PadicInt& x, const PadicInt& y) {
  require_same(x.ctx(), y.ctx());
  const auto p = x.ctx().p();
  std::vector<Digit> d(x.ctx().K());
  for (unsigned i = 0; i < d.size(); ++i) d[i] = (x.digit(i) + y.digit(i)) % p;
  return PadicInt::from_digits(x.ctx(), d);
}

PadicInt digit_and(const PadicInt& x, const PadicInt& y) {
  require_same(x.ctx(), y.ctx());
  const std::uint64_t p = x.ctx().p();
  std::vector<Digit> d(x.ctx().K());
  for (unsigned i = 0; i < d.size(); ++i)
    d[i] = static_cast<Digit>((std::uint64_t{x.digit(i)} * y.digit(i)) % p);
  return PadicInt::from_digits(x.ctx(), d);
}

Valuation valuation(const PadicInt& x) {
  const auto& d = x.digits();
  for (unsigned i = 0; i < d.size(); ++i)
    if (d[i] != 0) return i;
  return std::nullopt;
}

PadicInt inverse_unit(const PadicInt& x) {
  if (!x.is_unit()) throw DomainError("inverse_unit: " + x.to_string() + " is not a unit");
  return PadicInt::from_integer(x.ctx(),
                                inverse_mod_power(x.residue(), x.ctx().p(), x.ctx().modulus()));
}

PadicInt pow_int(const PadicInt& x, const BigInt& e) {
  if (e < 0) throw DomainError("pow_int: negative exponent");
  return PadicInt::from_integer(x.ctx(), powm(x.residue(), e, x.ctx().modulus()));
}

PadicInt teichmuller(const PadicInt& u) {
  if (!u.is_unit()) throw DomainError("teichmuller: " + u.to_string() + " is not a unit");
  const BigInt bp(u.ctx().p());
  BigInt z = u.residue();
  for (unsigned i = 0; i < u.ctx().K(); ++i) z = powm(z, bp, u.ctx().modulus());
  return PadicInt::from_integer(u.ctx(), z);
}

UnitDecomposition unit_decompose(const PadicInt& x) {
  const auto v = valuation(x);
  if (!v) throw DomainError("unit_decompose: zero to precision");
  const auto& ctx = x.ctx();
  PadicInt u = PadicInt::from_integer(ctx, x.residue() / ctx.power(*v));
  PadicInt theta = teichmuller(u);
  PadicInt principal = u * inverse_unit(theta);
  PadicInt t = PadicInt::from_integer(ctx, (principal.residue() - 1) / ctx.p());
  return {*v, std::move(theta), std::move(principal), std::move(t)};
}

// ---------------------------------------------------------------------------
// exp / ln / pow

unsigned exp_terms(std::uint32_t p, unsigned K, unsigned v) {
  // v(t^n / n!) >= n v - (n - s_p(n)) / (p - 1); stop once the lower bound
  // n v - (n - 1)/(p - 1), which is increasing, reaches K.
  auto exact_ok = [&](std::uint64_t n) {
    return (n * v) * (p - 1) - (n - digit_sum(n, p)) >= std::uint64_t{K} * (p - 1);
  };
  std::uint64_t last_bad = 0;
  bool any_bad = false;
  for (std::uint64_t n = 0;; ++n) {
    if (!exact_ok(n)) {
      last_bad = n;
      any_bad = true;
    }
    if (n >= 1 && n * v * (p - 1) - (n - 1) >= std::uint64_t{K} * (p - 1)) break;
  }
  return any_bad ? static_cast<unsigned>(last_bad + 1) : 0;
}

unsigned ln_terms(std::uint32_t p, unsigned K, unsigned v) {
  // n v - floor(log_p n) is nondecreasing in n.
  for (std::uint64_t n = 1;; ++n) {
    unsigned lg = 0;
    for (std::uint64_t q = n / p; q != 0; q /= p) ++lg;
    if (n * v >= std::uint64_t{K} + lg) return static_cast<unsigned>(n);
  }
}

bool in_exp_domain(const PadicInt& t) {
  const auto v = valuation(t);
  return !v || *v >= (t.ctx().p() == 2 ? 2u : 1u);
}

bool in_ln_domain(const PadicInt& x) {
  const auto& ctx = x.ctx();
  const unsigned need = ctx.p() == 2 ? std::min(2u, ctx.K()) : 1u;
  return x.truncated(need) == 1 % ctx.power(need);
}

PadicInt exp_p(const PadicInt& t) {
  if (!in_exp_domain(t))
    throw DomainError("exp_p: argument " + t.to_string() + " has too small valuation");
  const auto& ctx = t.ctx();
  const auto p = ctx.p();
  const auto v = valuation(t);
  if (!v) return PadicInt::one(ctx);
  const unsigned N = exp_terms(p, ctx.K(), *v);
  BigInt modulus = ipow(p, ctx.K() + vp_factorial(N == 0 ? 0 : N - 1, p));
  BigInt term = 1;
  BigInt sum = 1;
  for (unsigned n = 1; n < N; ++n) {
    term = mod_floor(term * t.residue(), modulus);
    term = divide_exact(term, n, p, modulus);
    sum += term;
  }
  return PadicInt::from_integer(ctx, sum);
}

PadicInt ln_p(const PadicInt& x) {
  if (!in_ln_domain(x))
    throw DomainError("ln_p: argument " + x.to_string() + " outside the principal units");
  const auto& ctx = x.ctx();
  const auto p = ctx.p();
  PadicInt u = x - PadicInt::one(ctx);
  const auto v = valuation(u);
  if (!v) return PadicInt::zero(ctx);
  const unsigned N = ln_terms(p, ctx.K(), *v);
  unsigned extra = 0;
  for (unsigned n = 1; n < N; ++n) extra = std::max(extra, vp_of(n, p));
  const BigInt work = ipow(p, ctx.K() + extra);
  BigInt power = 1;
  BigInt sum = 0;
  for (unsigned n = 1; n < N; ++n) {
    power = mod_floor(power * u.residue(), work);
    BigInt m = work;
    BigInt term = divide_exact(power, n, p, m);
    if (n % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  return PadicInt::from_integer(ctx, sum);
}

PadicInt pow_unit_binomial(const PadicInt& x, const PadicInt& a) {
  require_same(x.ctx(), a.ctx());
  const auto& ctx = x.ctx();
  const auto p = ctx.p();
  if (x.truncated(1) != 1 % p)
    throw DomainError("pow_unit: base " + x.to_string() + " is not 1 mod p");
  // Term n is C(a,n) (x-1)^n with valuation >= n, so n < K suffices.
  const unsigned K = ctx.K();
  BigInt modulus = ipow(p, K + vp_factorial(K - 1, p));
  const BigInt u = x.residue() - 1;
  BigInt term = 1;
  BigInt sum = 1;
  for (unsigned n = 1; n < K; ++n) {
    term = mod_floor(term * (a.residue() - (n - 1)) * u, modulus);
    term = divide_exact(term, n, p, modulus);
    sum += term;
  }
  return PadicInt::from_integer(ctx, sum);
}

std::optional<PadicInt> pow_unit_explog(const PadicInt& x, const PadicInt& a) {
  require_same(x.ctx(), a.ctx());
  if (!in_ln_domain(x)) return std::nullopt;
  return exp_p(a * ln_p(x));
}

PadicInt pow_unit(const PadicInt& x, const PadicInt& a) {
  PadicInt series = pow_unit_binomial(x, a);
  // The residue of a is an integer congruent to a mod p^K, and x^a is
  // continuous in a on 1 + pZ_p, so square-and-multiply is a valid route.
  if (!(pow_int(x, a.residue()) == series))
    throw std::logic_error("pow_unit: binomial series disagrees with square-and-multiply");
  if (auto analytic = pow_unit_explog(x, a); analytic && !(*analytic == series))
    throw std::logic_error("pow_unit: binomial series disagrees with exp/ln");
  return series;
}

// ---------------------------------------------------------------------------
// ResidueRing

ResidueRing::ResidueRing(std::uint32_t p, unsigned K) : p_(p), K_(K), pow_(K + 1, 1) {
  for (unsigned i = 1; i <= K; ++i) {
    pow_[i] = pow_[i - 1] * p;
    if (pow_[i] > (std::uint64_t{1} << 32))
      throw DomainError("ResidueRing: p^K exceeds 2^32");
  }
}

ResidueRing::ResidueRing(const PrimeContext& ctx) : ResidueRing(ctx.p(), ctx.K()) {}

std::uint64_t ResidueRing::pow(std::uint64_t x, std::uint64_t e) const {
  std::uint64_t r = 1 % modulus();
  x %= modulus();
  while (e != 0) {
    if (e & 1) r = mul(r, x);
    x = mul(x, x);
    e >>= 1;
  }
  return r;
}

std::uint64_t ResidueRing::digit_xor(std::uint64_t x, std::uint64_t y) const {
  if (p_ == 2) return x ^ y;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < K_; ++i) {
    r += ((x % p_ + y % p_) % p_) * pow_[i];
    x /= p_;
    y /= p_;
  }
  return r;
}

std::uint64_t ResidueRing::digit_and(std::uint64_t x, std::uint64_t y) const {
  if (p_ == 2) return x & y;
  std::uint64_t r = 0;
  for (unsigned i = 0; i < K_; ++i) {
    r += ((x % p_) * (y % p_) % p_) * pow_[i];
    x /= p_;
    y /= p_;
  }
  return r;
}

}  // namespace padic
