#include "padic/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

namespace padic::oracle {

BudgetExceeded::BudgetExceeded(std::uint64_t budget_, std::uint64_t nodes_)
    : Error("enumeration budget of " + std::to_string(budget_) + " nodes exceeded"),
      budget(budget_),
      nodes(nodes_) {}

namespace {

struct SharedCounters {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> aborted{false};
  std::uint64_t budget;
};

class Search {
 public:
  Search(std::uint32_t p, unsigned k, const std::vector<OpKind>& ops, SharedCounters& counters)
      : p_(p), k_(k), counters_(counters) {
    rings_.reserve(k);
    for (unsigned j = 0; j < k; ++j) rings_.emplace_back(p, j + 1);
    level_ops_.resize(k);
    for (unsigned j = 0; j < k; ++j)
      for (const auto& op : ops) level_ops_[j].emplace_back(op, rings_[j]);
    vals_.resize(k);
    for (unsigned j = 0; j < k; ++j) vals_[j].assign(rings_[j].modulus(), 0);
  }

  /// Explores the subtree below phi_0 = perm.
  void run_branch(const std::vector<Digit>& perm) {
    if (!tick()) return;
    for (Digit i = 0; i < p_; ++i) vals_[0][i] = perm[i];
    if (consistent(0, 0)) descend(0, 0);
  }

  std::vector<Table> take_results() { return std::move(found_); }

 private:
  bool tick() {
    const auto n = counters_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (n > counters_.budget) counters_.aborted.store(true, std::memory_order_relaxed);
    return !counters_.aborted.load(std::memory_order_relaxed);
  }

  // Continue after prefix a at level j has been assigned.
  void descend(unsigned j, Residue a) {
    const Residue pj = rings_[j].power(j);
    if (a + 1 < pj) {
      assign(j, a + 1);
    } else if (j + 1 < k_) {
      assign(j + 1, 0);
    } else {
      found_.push_back(vals_[k_ - 1]);
    }
  }

  void assign(unsigned j, Residue a) {
    const Residue pj = rings_[j].power(j);
    const Residue base = vals_[j - 1][a];
    std::vector<Digit> perm(p_);
    std::iota(perm.begin(), perm.end(), Digit{0});
    do {
      if (!tick()) return;
      for (Digit i = 0; i < p_; ++i) vals_[j][a + i * pj] = base + pj * perm[i];
      if (consistent(j, a)) descend(j, a);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  // Tests every pair whose three images mod p^(j+1) are determined and
  // that involves the class of prefix a.
  bool consistent(unsigned j, Residue a) const {
    const Residue pj = rings_[j].power(j);
    const Residue M = rings_[j].modulus();
    const auto& v = vals_[j];
    auto defined = [&](Residue x) { return x % pj <= a; };
    for (const auto& op : level_ops_[j]) {
      for (Residue x = 0; x < M; ++x) {
        if (!defined(x)) continue;
        const bool x_new = x % pj == a;
        for (Residue y = 0; y < M; ++y) {
          if (!defined(y)) continue;
          const Residue z = op(x, y);
          if (!defined(z)) continue;
          if (!x_new && y % pj != a && z % pj != a) continue;
          if (v[z] != op(v[x], v[y])) return false;
        }
      }
    }
    return true;
  }

  std::uint32_t p_;
  unsigned k_;
  SharedCounters& counters_;
  std::vector<ResidueRing> rings_;
  std::vector<std::vector<ResidueOp>> level_ops_;
  std::vector<Table> vals_;
  std::vector<Table> found_;
};

template <class F>
void for_each_exponent_list(std::uint32_t p, unsigned k, F&& visit) {
  std::vector<unsigned> allowed;
  for (unsigned s = 1; s < p; ++s)
    if (std::gcd(s, p - 1) == 1) allowed.push_back(s);
  std::vector<std::size_t> idx(k, 0);
  while (true) {
    std::vector<unsigned> s(k);
    for (unsigned i = 0; i < k; ++i) s[i] = allowed[idx[i]];
    visit(s);
    unsigned i = 0;
    while (i < k && ++idx[i] == allowed.size()) idx[i++] = 0;
    if (i == k) return;
  }
}

template <class F>
void for_each_alpha(std::uint32_t p, unsigned k, F&& visit) {
  // Flattened lower triangle; diagonal entries range over 1..p-1.
  std::vector<std::pair<unsigned, unsigned>> cells;
  for (unsigned r = 0; r < k; ++r)
    for (unsigned c = 0; c <= r; ++c) cells.emplace_back(r, c);
  std::vector<std::vector<Digit>> alpha(k);
  for (unsigned r = 0; r < k; ++r) alpha[r].assign(r + 1, 0);
  for (unsigned r = 0; r < k; ++r) alpha[r][r] = 1;
  while (true) {
    visit(alpha);
    std::size_t i = 0;
    for (; i < cells.size(); ++i) {
      auto [r, c] = cells[i];
      const Digit lo = r == c ? 1 : 0;
      if (++alpha[r][c] < p) break;
      alpha[r][c] = lo;
    }
    if (i == cells.size()) return;
  }
}

std::vector<PadicInt> units_mod(const PrimeContext& ctx) {
  std::vector<PadicInt> out;
  const auto n = table_size(ctx);
  for (Residue u = 1; u < n; ++u)
    if (u % ctx.p() != 0) out.push_back(PadicInt::from_integer(ctx, static_cast<long long>(u)));
  return out;
}

}  // namespace

EnumerationResult enumerate_automorphisms(std::uint32_t p, unsigned k, const std::vector<OpKind>& ops,
                                          std::uint64_t budget) {
  const PrimeContext ctx(p, k);
  table_size(ctx);
  for (const auto& op : ops)
    if (op.tag == OpTag::Custom) throw DomainError("oracle enumerates built-in operations only");

  std::vector<std::vector<Digit>> roots;
  std::vector<Digit> perm(p);
  std::iota(perm.begin(), perm.end(), Digit{0});
  do roots.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));

  SharedCounters counters;
  counters.budget = budget;
  std::vector<std::vector<Table>> per_branch(roots.size());
  const auto n_roots = static_cast<std::int64_t>(roots.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t r = 0; r < n_roots; ++r) {
    Search search(p, k, ops, counters);
    search.run_branch(roots[r]);
    per_branch[r] = search.take_results();
  }
  const auto nodes = counters.nodes.load();
  if (counters.aborted.load()) throw BudgetExceeded(budget, nodes);

  EnumerationResult result{p, k, ops, {}, nodes};
  for (auto& b : per_branch)
    for (auto& t : b) result.automorphisms.push_back(std::move(t));
  std::sort(result.automorphisms.begin(), result.automorphisms.end());
  return result;
}

std::vector<Table> family_tables(OpTag family, std::uint32_t p, unsigned k) {
  const PrimeContext ctx(p, k);
  std::set<Table> tables;
  switch (family) {
    case OpTag::Plus:
      for (const auto& A : units_mod(ctx)) tables.insert(realize(AddSpec{A}, ctx).table());
      break;
    case OpTag::Times: {
      const auto units = units_mod(ctx);
      for (unsigned s = 1; s < p || s == 1; ++s) {
        if (std::gcd(s, p - 1) != 1) continue;
        for (const auto& a : units)
          for (const auto& A : units) tables.insert(realize(MulSpec{s, a, A}, ctx).table());
        if (p == 2) break;
      }
      break;
    }
    case OpTag::Xor:
      for_each_alpha(p, k, [&](const auto& alpha) {
        tables.insert(realize(XorSpec{alpha}, ctx).table());
      });
      break;
    case OpTag::And:
      for_each_exponent_list(p, k, [&](const auto& s) {
        tables.insert(realize(AndSpec{s}, ctx).table());
      });
      break;
    case OpTag::Custom:
      throw DomainError("no family for custom operations");
  }
  return {tables.begin(), tables.end()};
}

std::uint64_t family_parameter_count(OpTag family, std::uint32_t p, unsigned k) {
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  const std::uint64_t units = pk - pk / p;
  std::uint64_t coprime = 0;
  for (unsigned s = 1; s < p || s == 1; ++s) {
    if (std::gcd(s, p - 1) == 1) ++coprime;
    if (p == 2) break;
  }
  switch (family) {
    case OpTag::Plus: return units;
    case OpTag::Times: return coprime * units * units;
    case OpTag::Xor: return predicted_count(OpTag::Xor, p, k);
    case OpTag::And: return predicted_count(OpTag::And, p, k);
    case OpTag::Custom: break;
  }
  throw DomainError("no family for custom operations");
}

SetComparison compare_with_family(const EnumerationResult& result, OpTag family) {
  return compare_with_family(result.automorphisms, family, result.p, result.k);
}

SetComparison compare_with_family(const std::vector<Table>& tables, OpTag family, std::uint32_t p, unsigned k) {
  constexpr std::size_t kMaxWitnesses = 5;
  const auto fam = family_tables(family, p, k);
  SetComparison cmp;
  cmp.family_count = fam.size();
  cmp.enumerated_count = tables.size();
  std::vector<Table> missing, extra;
  std::set_difference(fam.begin(), fam.end(), tables.begin(), tables.end(), std::back_inserter(missing));
  std::set_difference(tables.begin(), tables.end(), fam.begin(), fam.end(), std::back_inserter(extra));
  cmp.missing_count = missing.size();
  cmp.extra_count = extra.size();
  if (missing.size() > kMaxWitnesses) missing.resize(kMaxWitnesses);
  if (extra.size() > kMaxWitnesses) extra.resize(kMaxWitnesses);
  cmp.missing = std::move(missing);
  cmp.extra = std::move(extra);
  cmp.equal = cmp.missing_count == 0 && cmp.extra_count == 0;
  return cmp;
}

std::vector<Table> lifted_automorphisms(std::uint32_t p, unsigned k, const std::vector<OpKind>& ops,
                                        std::uint64_t budget) {
  const auto pk = table_size(PrimeContext(p, k));
  std::set<Table> reduced;
  for (const auto& t : enumerate_automorphisms(p, k + 1, ops, budget).automorphisms) {
    Table r(t.begin(), t.begin() + static_cast<std::ptrdiff_t>(pk));
    for (auto& v : r) v %= pk;
    reduced.insert(std::move(r));
  }
  return {reduced.begin(), reduced.end()};
}

bool TrivialPairsReport::all_trivial() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const auto& v) { return v.identity_only; });
}

bool TrivialPairsReport::all_lift_trivial() const {
  return std::all_of(pairs.begin(), pairs.end(), [](const auto& v) { return v.lifted_identity_only; });
}

TrivialPairsReport verify_trivial_pairs(std::uint32_t p, unsigned k, std::uint64_t budget) {
  const std::vector<OpKind> all = {OpKind::plus(), OpKind::times(), OpKind::xor_op(), OpKind::and_op()};
  Table identity(table_size(PrimeContext(p, k)));
  std::iota(identity.begin(), identity.end(), Residue{0});
  TrivialPairsReport rep{p, k, {}};
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      const auto res = enumerate_automorphisms(p, k, {all[i], all[j]}, budget);
      PairVerdict v{all[i], all[j], res.count(), res.nodes, false, std::nullopt};
      v.identity_only = res.count() == 1 && res.automorphisms.front() == identity;
      for (const auto& t : res.automorphisms)
        if (t != identity) {
          v.witness = t;
          break;
        }
      const auto lifted = lifted_automorphisms(p, k, {all[i], all[j]}, budget);
      v.lifted_count = lifted.size();
      v.lifted_identity_only = lifted.size() == 1 && lifted.front() == identity;
      rep.pairs.push_back(std::move(v));
    }
  }
  return rep;
}

std::uint64_t predicted_count(OpTag op, std::uint32_t p, unsigned k) {
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i) pk *= p;
  switch (op) {
    case OpTag::Plus: return pk - pk / p;
    case OpTag::Xor: {
      std::uint64_t r = 1;
      for (unsigned i = 0; i < k; ++i) r *= (p - 1);
      for (unsigned i = 0; i < k * (k - 1) / 2; ++i) r *= p;
      return r;
    }
    case OpTag::And: {
      std::uint64_t phi = 0;
      for (unsigned s = 1; s <= std::max(1u, p - 1); ++s)
        if (std::gcd(s, p - 1) == 1) ++phi;
      std::uint64_t r = 1;
      for (unsigned i = 0; i < k; ++i) r *= phi;
      return r;
    }
    default: break;
  }
  throw DomainError("no closed-form count for " + std::string(op == OpTag::Times ? "times" : "custom"));
}

}  // namespace padic::oracle
