#include "padic/lipschitz.hpp"

#include <algorithm>
#include <numeric>

namespace padic {

CompatibilityViolation::CompatibilityViolation(Residue x_, Residue y_, unsigned k_)
    : Error("not tower compatible: f(" + std::to_string(x_) + ") and f(" + std::to_string(y_) +
            ") differ mod p^" + std::to_string(k_)),
      x(x_),
      y(y_),
      k(k_) {}

std::uint64_t table_size(const PrimeContext& ctx) {
  auto n = ctx.small_modulus();
  if (!n || *n > kMaxTableSize)
    throw DomainError("p^K = " + ctx.modulus().str() + " exceeds the table limit 2^24");
  return *n;
}

unsigned floor_log(std::uint32_t p, std::uint64_t m) {
  unsigned lg = 0;
  for (m /= p; m != 0; m /= p) ++lg;
  return lg;
}

// ---------------------------------------------------------------------------
// LipschitzFn

LipschitzFn::LipschitzFn(PrimeContext ctx, Table table, std::string provenance)
    : ctx_(std::move(ctx)), ring_(ctx_), table_(std::move(table)), provenance_(std::move(provenance)) {}

LipschitzFn LipschitzFn::from_table(const PrimeContext& ctx, Table table, std::string provenance) {
  const auto n = table_size(ctx);
  if (table.size() != n)
    throw RangeError("table has " + std::to_string(table.size()) + " entries, expected p^K = " +
                     std::to_string(n));
  for (std::size_t i = 0; i < table.size(); ++i)
    if (table[i] >= n)
      throw RangeError("table entry " + std::to_string(i) + " = " + std::to_string(table[i]) +
                       " is not below p^K");
  LipschitzFn f(ctx, std::move(table), std::move(provenance));
  if (auto bad = kernels::parallel::first_tower_violation(f.table_, f.ring_))
    throw CompatibilityViolation(bad->x, bad->y, bad->k);
  return f;
}

LipschitzFn LipschitzFn::identity(const PrimeContext& ctx) {
  Table t(table_size(ctx));
  std::iota(t.begin(), t.end(), Residue{0});
  return LipschitzFn(ctx, std::move(t), "identity");
}

PadicInt LipschitzFn::operator()(const PadicInt& x) const {
  require_same(ctx_, x.ctx());
  return PadicInt::from_integer(ctx_, BigInt(table_[x.residue().convert_to<Residue>()]));
}

LipschitzFn LipschitzFn::reduce(unsigned k) const {
  if (k < 1 || k > ctx_.K()) throw DomainError("reduce: level outside [1, K]");
  const Residue pk = ring_.power(k);
  Table t(pk);
  for (Residue x = 0; x < pk; ++x) t[x] = table_[x] % pk;
  return LipschitzFn(ctx_.with_precision(k), std::move(t), provenance_);
}

// ---------------------------------------------------------------------------
// van der Put

namespace {

Table normalized_coefficients(const ResidueRing& ring, const Table& B) {
  Table b(B.size());
  for (Residue m = 0; m < B.size(); ++m) {
    const Residue scale = ring.power(floor_log(ring.p(), m));
    if (B[m] % scale != 0)
      throw DomainError("B_" + std::to_string(m) + " = " + std::to_string(B[m]) +
                        " is not divisible by p^floor(log_p m)");
    b[m] = B[m] / scale;
  }
  return b;
}

}  // namespace

VdpSeries vdp_transform(const LipschitzFn& f) {
  const auto& ring = f.ring();
  const auto p = ring.p();
  Table B(f.size());
  for (Residue m = 0; m < B.size(); ++m) {
    if (m < p) {
      B[m] = f(m);
      continue;
    }
    const Residue top = ring.power(floor_log(p, m));
    const Residue lead = m / top;  // m_{n-1}
    B[m] = ring.sub(f(m), f(m - lead * top));
  }
  Table b = normalized_coefficients(ring, B);
  return {f.ctx(), std::move(B), std::move(b)};
}

VdpSeries vdp_from_coefficients(const PrimeContext& ctx, Table B) {
  const auto n = table_size(ctx);
  if (B.size() != n) throw RangeError("coefficient array must have p^K entries");
  for (auto v : B)
    if (v >= n) throw RangeError("coefficient not below p^K");
  ResidueRing ring(ctx);
  Table b = normalized_coefficients(ring, B);
  return {ctx, std::move(B), std::move(b)};
}

LipschitzFn vdp_inverse(const VdpSeries& series) {
  ResidueRing ring(series.ctx);
  const auto n = table_size(series.ctx);
  if (series.B.size() != n) throw RangeError("coefficient array must have p^K entries");
  Table t(n);
  for (Residue x = 0; x < n; ++x) {
    // B_m = f(m) for m < p, so the level-1 ball of every m < p (m = 0
    // included) is x = m mod p.  Above that, chi(m, x) = 1 exactly for
    // m = [x]_j whose top digit x_{j-1} is nonzero.
    Residue acc = series.B[x % ring.p()];
    for (unsigned j = 2; j <= ring.K(); ++j) {
      const Residue m = x % ring.power(j);
      if (m >= ring.power(j - 1)) acc = ring.add(acc, series.B[m]);
    }
    t[x] = acc;
  }
  return LipschitzFn::from_table(series.ctx, std::move(t), "vdp_inverse");
}

CriterionReport preserves_measure_vdp(const LipschitzFn& f) {
  const auto series = vdp_transform(f);
  const auto& ring = f.ring();
  const std::uint32_t p = ring.p();
  CriterionReport report;
  std::vector<bool> hit(p);

  for (Residue m = 0; m < p; ++m) hit[series.b[m] % p] = true;
  if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
    report.holds = false;
    report.k = 0;
    report.m = 0;
    report.detail = "b_0..b_{p-1} is not a complete residue system mod p";
    return report;
  }
  for (unsigned k = 1; k < ring.K(); ++k) {
    const Residue pk = ring.power(k);
    for (Residue m = 0; m < pk; ++m) {
      std::fill(hit.begin(), hit.end(), false);
      bool ok = true;
      for (Residue i = 1; i < p && ok; ++i) {
        const Residue r = series.b[m + i * pk] % p;
        if (r == 0 || hit[r]) ok = false;
        hit[r] = true;
      }
      if (!ok) {
        report.holds = false;
        report.k = k;
        report.m = m;
        report.detail = "b_{m+i p^k} (i=1..p-1) are not the nonzero residues mod p";
        return report;
      }
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Coordinate form

std::vector<SubfunctionTable> coordinate_subfunctions(const LipschitzFn& f, unsigned k) {
  const auto& ring = f.ring();
  if (k >= ring.K()) throw DomainError("coordinate_subfunctions: level must be below K");
  const Residue pk = ring.power(k);
  std::vector<SubfunctionTable> out;
  out.reserve(pk);
  for (Residue a = 0; a < pk; ++a) {
    SubfunctionTable s{k, a, std::vector<Digit>(ring.p())};
    for (Digit xk = 0; xk < ring.p(); ++xk) s.phi[xk] = ring.digit(f(a + xk * pk), k);
    out.push_back(std::move(s));
  }
  return out;
}

LipschitzFn from_subfunctions(const PrimeContext& ctx,
                              const std::vector<std::vector<std::vector<Digit>>>& levels,
                              std::string provenance) {
  ResidueRing ring(ctx);
  const auto n = table_size(ctx);
  if (levels.size() != ctx.K()) throw RangeError("need one level of sub-functions per digit");
  for (unsigned k = 0; k < ctx.K(); ++k) {
    if (levels[k].size() != ring.power(k)) throw RangeError("level k needs p^k sub-functions");
    for (const auto& phi : levels[k]) {
      if (phi.size() != ctx.p()) throw RangeError("sub-function must have p entries");
      for (auto d : phi)
        if (d >= ctx.p()) throw RangeError("sub-function value outside {0..p-1}");
    }
  }
  Table t(n);
  for (Residue x = 0; x < n; ++x) {
    Residue v = 0;
    for (unsigned k = 0; k < ctx.K(); ++k)
      v += ring.power(k) * levels[k][x % ring.power(k)][ring.digit(x, k)];
    t[x] = v;
  }
  return LipschitzFn::from_table(ctx, std::move(t), std::move(provenance));
}

CriterionReport preserves_measure_coord(const LipschitzFn& f) {
  const auto& ring = f.ring();
  const std::uint32_t p = ring.p();
  CriterionReport report;
  std::vector<bool> hit(p);
  for (unsigned k = 0; k < ring.K(); ++k) {
    for (const auto& s : coordinate_subfunctions(f, k)) {
      std::fill(hit.begin(), hit.end(), false);
      for (auto v : s.phi) hit[v] = true;
      if (std::find(hit.begin(), hit.end(), false) != hit.end()) {
        report.holds = false;
        report.k = k;
        report.m = s.a;
        report.detail = "phi_{k,a} is not a permutation of {0..p-1}";
        return report;
      }
    }
  }
  return report;
}

bool is_bijective_mod(const LipschitzFn& f, unsigned k) {
  if (k < 1 || k > f.ctx().K()) throw DomainError("is_bijective_mod: level outside [1, K]");
  return kernels::parallel::is_bijective_mod(f.table(), f.ring(), k);
}

bool is_bijective_all(const LipschitzFn& f) {
  for (unsigned k = 1; k <= f.ctx().K(); ++k)
    if (!is_bijective_mod(f, k)) return false;
  return true;
}

LipschitzFn compose(const LipschitzFn& outer, const LipschitzFn& inner) {
  require_same(outer.ctx(), inner.ctx());
  Table t = kernels::parallel::compose(outer.table(), inner.table());
#ifndef NDEBUG
  if (kernels::parallel::first_tower_violation(t, outer.ring()))
    throw std::logic_error("composition of 1-Lipschitz maps is not 1-Lipschitz");
#endif
  return LipschitzFn::from_table(outer.ctx(), std::move(t), "compose");
}

LipschitzFn inverse(const LipschitzFn& f) {
  if (!is_bijective_mod(f, f.ctx().K())) throw DomainError("inverse: map is not bijective");
  Table t(f.size());
  for (Residue x = 0; x < f.size(); ++x) t[f(x)] = x;
  return LipschitzFn::from_table(f.ctx(), std::move(t), "inverse");
}

LipschitzFn random_lipschitz(const PrimeContext& ctx, std::mt19937_64& rng,
                             double permutation_rate) {
  ResidueRing ring(ctx);
  table_size(ctx);
  const std::uint32_t p = ctx.p();
  std::bernoulli_distribution use_perm(permutation_rate);
  std::uniform_int_distribution<Digit> any_digit(0, p - 1);
  std::vector<std::vector<std::vector<Digit>>> levels(ctx.K());
  std::vector<Digit> identity(p);
  std::iota(identity.begin(), identity.end(), Digit{0});
  for (unsigned k = 0; k < ctx.K(); ++k) {
    levels[k].resize(ring.power(k));
    for (auto& phi : levels[k]) {
      if (use_perm(rng)) {
        phi = identity;
        std::shuffle(phi.begin(), phi.end(), rng);
      } else {
        phi.resize(p);
        for (auto& d : phi) d = any_digit(rng);
      }
    }
  }
  return from_subfunctions(ctx, levels, "random");
}

}  // namespace padic
