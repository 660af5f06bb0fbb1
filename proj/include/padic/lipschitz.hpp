#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "padic/core.hpp"
#include "padic/kernels.hpp"

/**
 * 1-Lipschitz maps at precision K, materialized as value tables on Z/p^K.
 *
 * A table is 1-Lipschitz exactly when it is tower compatible:
 * x = y mod p^k implies f(x) = f(y) mod p^k for every 1 <= k <= K.
 * The three measure-preservation criteria (bijectivity mod every p^k,
 * van der Put coefficients, coordinate sub-functions) are implemented
 * independently so they can be checked against each other.
 */
namespace padic {

using kernels::Residue;
using kernels::Table;

/// Largest p^K for which value tables are materialized.
inline constexpr std::uint64_t kMaxTableSize = std::uint64_t{1} << 24;

class CompatibilityViolation : public Error {
 public:
  CompatibilityViolation(Residue x, Residue y, unsigned k);
  Residue x, y;
  unsigned k;
};

class LipschitzFn {
 public:
  /// Validates length, range and tower compatibility.
  static LipschitzFn from_table(const PrimeContext& ctx, Table table, std::string provenance = {});
  static LipschitzFn identity(const PrimeContext& ctx);

  const PrimeContext& ctx() const { return ctx_; }
  const ResidueRing& ring() const { return ring_; }
  const Table& table() const { return table_; }
  const std::string& provenance() const { return provenance_; }
  std::uint64_t size() const { return table_.size(); }

  Residue operator()(Residue x) const { return table_[x]; }
  PadicInt operator()(const PadicInt& x) const;

  /// The induced map on Z/p^k for k <= K.
  LipschitzFn reduce(unsigned k) const;

  friend bool operator==(const LipschitzFn& a, const LipschitzFn& b) {
    return a.ctx_ == b.ctx_ && a.table_ == b.table_;
  }

 private:
  LipschitzFn(PrimeContext ctx, Table table, std::string provenance);

  PrimeContext ctx_;
  ResidueRing ring_;
  Table table_;
  std::string provenance_;
};

/// Checks table size against kMaxTableSize; returns p^K.
std::uint64_t table_size(const PrimeContext& ctx);

/// floor(log_p m) for m >= 1, and 0 for m = 0.
unsigned floor_log(std::uint32_t p, std::uint64_t m);

struct VdpSeries {
  PrimeContext ctx;
  Table B;  // B_m mod p^K
  Table b;  // B_m / p^floor(log_p m), meaningful mod p^(K - floor(log_p m))
};

VdpSeries vdp_transform(const LipschitzFn& f);
/// Builds the coefficient record from raw B; throws DomainError if some
/// p^floor(log_p m) does not divide B_m (the source would not be 1-Lipschitz).
VdpSeries vdp_from_coefficients(const PrimeContext& ctx, Table B);
/// f(x) = sum_m B_m chi(m, x).
LipschitzFn vdp_inverse(const VdpSeries& series);

struct CriterionReport {
  bool holds = true;
  /// First failure in lexicographic (k, m) order; k = 0 is the mod-p clause.
  std::optional<unsigned> k;
  std::optional<Residue> m;
  std::string detail;
};

CriterionReport preserves_measure_vdp(const LipschitzFn& f);

struct SubfunctionTable {
  unsigned k;
  Residue a;
  std::vector<Digit> phi;
};

std::vector<SubfunctionTable> coordinate_subfunctions(const LipschitzFn& f, unsigned k);
/// Rebuilds a table from phi_0 and every phi_{k,a}; levels.size() == K,
/// levels[k] holds p^k sub-functions of p entries each.
LipschitzFn from_subfunctions(const PrimeContext& ctx,
                              const std::vector<std::vector<std::vector<Digit>>>& levels,
                              std::string provenance = {});

/// In the report, m carries the prefix a of the first non-bijective phi_{k,a}.
CriterionReport preserves_measure_coord(const LipschitzFn& f);

bool is_bijective_mod(const LipschitzFn& f, unsigned k);
bool is_bijective_all(const LipschitzFn& f);

LipschitzFn compose(const LipschitzFn& outer, const LipschitzFn& inner);

/// Table of the inverse map; f must be bijective mod p^K.
LipschitzFn inverse(const LipschitzFn& f);

/**
 * Random 1-Lipschitz maps from the sub-coordinate form.  Each sub-function is
 * an independent uniform permutation with probability `permutation_rate`,
 * otherwise a uniform map {0..p-1} -> {0..p-1}.  Rate 1 samples the
 * measure-preserving class uniformly.
 */
LipschitzFn random_lipschitz(const PrimeContext& ctx, std::mt19937_64& rng,
                             double permutation_rate = 1.0);

}  // namespace padic
