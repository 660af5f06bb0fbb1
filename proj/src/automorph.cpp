#include "padic/automorph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

namespace padic {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void check_unit(const PadicInt& v, const PrimeContext& ctx, const char* what) {
  require_same(v.ctx(), ctx);
  if (!v.is_unit()) throw DomainError(std::string(what) + " must be a unit (nonzero mod p)");
}

void check_exponent(unsigned s, std::uint32_t p, const char* what) {
  if (s < 1 || s > p - 1 || std::gcd(s, p - 1) != 1)
    throw DomainError(std::string(what) + " = " + std::to_string(s) +
                      " must lie in [1, p-1] and be coprime to p-1");
}

PadicInt mul_value(const MulSpec& m, const PadicInt& x) {
  if (x.is_zero()) return x;
  const auto& ctx = x.ctx();
  const auto dec = unit_decompose(x);
  PadicInt out = pow_int(m.A, dec.valuation) * pow_int(dec.theta, m.s) *
                 pow_unit_binomial(dec.one_plus_pt, m.a);
  return out * PadicInt::from_integer(ctx, ctx.power(dec.valuation));
}

}  // namespace

void validate(const AutSpec& spec, const PrimeContext& ctx) {
  const auto p = ctx.p();
  std::visit(overloaded{
                 [&](const AddSpec& s) { check_unit(s.A, ctx, "A"); },
                 [&](const MulSpec& s) {
                   check_unit(s.A, ctx, "A");
                   check_unit(s.a, ctx, "a");
                   if (p == 2 && s.s != 1) throw DomainError("s must be 1 when p = 2");
                   check_exponent(s.s, p, "s");
                 },
                 [&](const XorSpec& s) {
                   if (s.alpha.size() != ctx.K())
                     throw DomainError("alpha must have K = " + std::to_string(ctx.K()) + " rows");
                   for (unsigned k = 0; k < s.alpha.size(); ++k) {
                     if (s.alpha[k].size() != k + 1)
                       throw DomainError("alpha row " + std::to_string(k) + " must have " +
                                         std::to_string(k + 1) + " entries");
                     for (auto d : s.alpha[k])
                       if (d >= p) throw DomainError("alpha entry outside {0..p-1}");
                     if (s.alpha[k][k] == 0)
                       throw DomainError("alpha[" + std::to_string(k) + "][" + std::to_string(k) +
                                         "] must be nonzero mod p");
                   }
                 },
                 [&](const AndSpec& s) {
                   if (s.s_list.size() != ctx.K())
                     throw DomainError("s_list must have K = " + std::to_string(ctx.K()) +
                                       " entries");
                   for (auto e : s.s_list) check_exponent(e, p, "s_k");
                 },
             },
             spec);
}

std::string family_name(const AutSpec& spec) {
  static const char* names[] = {"add", "mul", "xor", "and"};
  return names[spec.index()];
}

// ---------------------------------------------------------------------------
// Operations

std::vector<unsigned> GSpec::degrees() const {
  std::set<unsigned> n;
  for (const auto& t : terms)
    if (!t.coeff.is_zero()) n.insert(t.i + t.j);
  return {n.begin(), n.end()};
}

std::string op_name(const OpKind& op) {
  switch (op.tag) {
    case OpTag::Plus: return "plus";
    case OpTag::Times: return "times";
    case OpTag::Xor: return "xor";
    case OpTag::And: return "and";
    case OpTag::Custom: return "custom";
  }
  return "?";
}

OpKind parse_op(const std::string& name) {
  if (name == "plus" || name == "+" || name == "add") return OpKind::plus();
  if (name == "times" || name == "*" || name == "mul") return OpKind::times();
  if (name == "xor") return OpKind::xor_op();
  if (name == "and") return OpKind::and_op();
  throw DomainError("unknown operation '" + name + "'");
}

ResidueOp::ResidueOp(const OpKind& op, const ResidueRing& ring) : tag_(op.tag), ring_(&ring) {
  if (tag_ != OpTag::Custom) return;
  if (!op.g) throw DomainError("custom operation without G");
  const auto& g = *op.g;
  auto small = [&](const PadicInt& v) {
    if (v.ctx().p() != ring.p() || v.ctx().K() != ring.K())
      throw ContextMismatch("G coefficients use a different context");
    return v.residue().convert_to<Residue>();
  };
  c_ = small(g.c);
  a_ = small(g.a);
  b_ = small(g.b);
  for (const auto& t : g.terms)
    if (!t.coeff.is_zero()) terms_.push_back({t.i, t.j, small(t.coeff)});
}

Residue ResidueOp::operator()(Residue x, Residue y) const {
  const auto& r = *ring_;
  switch (tag_) {
    case OpTag::Plus: return r.add(x, y);
    case OpTag::Times: return r.mul(x, y);
    case OpTag::Xor: return r.digit_xor(x, y);
    case OpTag::And: return r.digit_and(x, y);
    case OpTag::Custom: break;
  }
  Residue acc = r.add(c_, r.add(r.mul(a_, x), r.mul(b_, y)));
  for (const auto& t : terms_) acc = r.add(acc, r.mul(t.coeff, r.mul(r.pow(x, t.i), r.pow(y, t.j))));
  return acc;
}

PadicInt eval_g(const GSpec& g, const PadicInt& x, const PadicInt& y) {
  PadicInt acc = g.c + g.a * x + g.b * y;
  for (const auto& t : g.terms) acc = acc + t.coeff * pow_int(x, t.i) * pow_int(y, t.j);
  return acc;
}

// ---------------------------------------------------------------------------
// Families

PadicInt evaluate(const AutSpec& spec, const PadicInt& x) {
  const auto& ctx = x.ctx();
  validate(spec, ctx);
  const auto p = ctx.p();
  return std::visit(
      overloaded{
          [&](const AddSpec& s) { return s.A * x; },
          [&](const MulSpec& s) { return mul_value(s, x); },
          [&](const XorSpec& s) {
            std::vector<Digit> d(ctx.K());
            for (unsigned k = 0; k < ctx.K(); ++k) {
              std::uint64_t acc = 0;
              for (unsigned i = 0; i <= k; ++i) acc += std::uint64_t{s.alpha[k][i]} * x.digit(i);
              d[k] = static_cast<Digit>(acc % p);
            }
            return PadicInt::from_digits(ctx, d);
          },
          [&](const AndSpec& s) {
            std::vector<Digit> d(ctx.K());
            for (unsigned k = 0; k < ctx.K(); ++k) {
              std::uint64_t acc = 1 % p;
              for (unsigned e = 0; e < s.s_list[k]; ++e) acc = acc * x.digit(k) % p;
              d[k] = static_cast<Digit>(acc);
            }
            return PadicInt::from_digits(ctx, d);
          },
      },
      spec);
}

LipschitzFn realize(const AutSpec& spec, const PrimeContext& ctx) {
  validate(spec, ctx);
  const auto n = table_size(ctx);
  const ResidueRing ring(ctx);
  const auto p = ctx.p();
  Table t(n);
  const auto count = static_cast<std::int64_t>(n);
  std::visit(overloaded{
                 [&](const AddSpec& s) {
                   const Residue A = s.A.residue().convert_to<Residue>();
#pragma omp parallel for schedule(static)
                   for (std::int64_t x = 0; x < count; ++x) t[x] = ring.mul(A, Residue(x));
                 },
                 [&](const MulSpec& s) {
#pragma omp parallel for schedule(dynamic, 64)
                   for (std::int64_t x = 0; x < count; ++x)
                     t[x] = mul_value(s, PadicInt::from_integer(ctx, x)).residue().convert_to<Residue>();
                 },
                 [&](const XorSpec& s) {
#pragma omp parallel for schedule(static)
                   for (std::int64_t x = 0; x < count; ++x) {
                     Residue v = 0;
                     for (unsigned k = 0; k < ctx.K(); ++k) {
                       std::uint64_t acc = 0;
                       for (unsigned i = 0; i <= k; ++i) acc += std::uint64_t{s.alpha[k][i]} * ring.digit(x, i);
                       v += (acc % p) * ring.power(k);
                     }
                     t[x] = v;
                   }
                 },
                 [&](const AndSpec& s) {
                   std::vector<std::vector<Digit>> power_table(ctx.K(), std::vector<Digit>(p));
                   for (unsigned k = 0; k < ctx.K(); ++k)
                     for (Digit d = 0; d < p; ++d)
                       power_table[k][d] = static_cast<Digit>(ResidueRing(p, 1).pow(d, s.s_list[k]));
#pragma omp parallel for schedule(static)
                   for (std::int64_t x = 0; x < count; ++x) {
                     Residue v = 0;
                     for (unsigned k = 0; k < ctx.K(); ++k) v += power_table[k][ring.digit(x, k)] * ring.power(k);
                     t[x] = v;
                   }
                 },
             },
             spec);
  return LipschitzFn::from_table(ctx, std::move(t), family_name(spec));
}

// ---------------------------------------------------------------------------
// Checkers

namespace {

std::vector<kernels::PairWitness> sample_pairs(std::uint64_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<Residue> pick(0, n - 1);
  std::vector<kernels::PairWitness> out(kSampledHomPairs);
  for (auto& s : out) {
    s.first = pick(rng);
    s.second = pick(rng);
  }
  return out;
}

template <bool Parallel>
HomReport check_hom(const LipschitzFn& f, const OpKind& op, std::uint64_t seed) {
  const ResidueOp fn(op, f.ring());
  HomReport r;
  const auto n = f.size();
  if (n <= kExhaustiveHomLimit) {
    r.exhaustive = true;
    r.pairs_checked = n * n;
    std::optional<kernels::PairWitness> bad;
    if constexpr (Parallel)
      bad = kernels::parallel::first_hom_failure(f.table(), fn);
    else
      bad = kernels::serial::first_hom_failure(f.table(), fn);
    if (bad) {
      r.holds = false;
      r.counterexample = *bad;
    }
    return r;
  }
  r.exhaustive = false;
  const auto samples = sample_pairs(n, seed);
  r.pairs_checked = samples.size();
  std::optional<std::size_t> bad;
  if constexpr (Parallel)
    bad = kernels::parallel::first_sampled_failure(f.table(), samples, fn);
  else
    bad = kernels::serial::first_sampled_failure(f.table(), samples, fn);
  if (bad) {
    r.holds = false;
    r.counterexample = samples[*bad];
  }
  return r;
}

}  // namespace

HomReport is_homomorphism(const LipschitzFn& f, const OpKind& op, std::uint64_t seed) {
  return check_hom<true>(f, op, seed);
}

HomReport is_homomorphism_serial(const LipschitzFn& f, const OpKind& op, std::uint64_t seed) {
  return check_hom<false>(f, op, seed);
}

bool is_automorphism(const LipschitzFn& f, const std::vector<OpKind>& ops, std::uint64_t seed) {
  if (kernels::parallel::first_tower_violation(f.table(), f.ring())) return false;
  if (!is_bijective_all(f)) return false;
  for (const auto& op : ops)
    if (!is_homomorphism(f, op, seed).holds) return false;
  return true;
}

MulParams compose_mul_params(const MulParams& lhs, const MulParams& rhs) {
  const auto& ctx = lhs.A.ctx();
  validate(MulSpec{lhs.s, lhs.a, lhs.A}, ctx);
  validate(MulSpec{rhs.s, rhs.a, rhs.A}, ctx);
  const unsigned order = ctx.p() - 1;
  unsigned s = static_cast<unsigned>((std::uint64_t{lhs.s} * rhs.s) % order);
  if (s == 0) s = order;
  const auto B = unit_decompose(rhs.A);
  PadicInt A = lhs.A * pow_int(B.theta, lhs.s) * pow_unit(B.one_plus_pt, lhs.a);
  return {s, lhs.a * rhs.a, A};
}

// ---------------------------------------------------------------------------
// G analyzer

GReport analyze_g(const GSpec& g, const PrimeContext& ctx) {
  for (const auto* v : {&g.c, &g.a, &g.b}) require_same(v->ctx(), ctx);
  for (const auto& t : g.terms) {
    require_same(t.coeff.ctx(), ctx);
    if (t.i + t.j < 2) throw DomainError("G terms must have degree i + j >= 2");
  }
  const auto n = table_size(ctx);
  const std::uint32_t p = ctx.p();
  const ResidueRing ring(ctx);

  GReport rep;
  rep.degrees = g.degrees();
  if (!rep.degrees.empty()) {
    unsigned d = 0;
    for (auto nk : rep.degrees) d = std::gcd(d, nk - 1);
    rep.d = d;
  }

  const Residue c = g.c.residue().convert_to<Residue>();
  const OpKind op = OpKind::custom(g);
  for (Residue A = 1; A < n; ++A) {
    if (A % p == 0) continue;
    if (rep.d && ring.pow(A, *rep.d) != 1 % n) continue;
    if (ring.mul(A, c) != c) continue;
    const PadicInt a = PadicInt::from_integer(ctx, static_cast<long long>(A));
    if (!is_homomorphism(realize(AddSpec{a}, ctx), op).holds) {
      rep.consistent = false;
      continue;
    }
    rep.witnesses.push_back(a);
  }
  rep.group_order = rep.witnesses.size();
  rep.trivial = rep.group_order == 1;

  // Prediction over Z_p.  Z_p^* is mu_{p-1} x (1 + pZ_p) for odd p and
  // {+-1} x (1 + 4Z_2) for p = 2, with torsion-free second factors.
  const bool c_zero = g.c.is_zero();
  if (!c_zero) {
    rep.zp_order = 1;
    rep.lifts_uniquely = g.c.is_unit();
  } else if (!rep.d) {
    rep.zp_order = std::nullopt;
    rep.lifts_uniquely = true;
  } else {
    const unsigned d = *rep.d;
    rep.zp_order = p == 2 ? (d % 2 == 0 ? 2 : 1) : std::gcd(d, p - 1);
    rep.lifts_uniquely = d % p != 0;
  }
  if (!rep.zp_order) {
    const BigInt units = ctx.modulus() - ctx.modulus() / p;
    rep.consistent = rep.consistent && BigInt(rep.group_order) == units;
  } else if (rep.lifts_uniquely) {
    rep.consistent = rep.consistent && rep.group_order == *rep.zp_order;
  } else {
    rep.consistent = rep.consistent && rep.group_order >= *rep.zp_order;
  }
  return rep;
}

}  // namespace padic
