#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "padic/core.hpp"

// Data-parallel sweeps over value tables of maps Z/p^K -> Z/p^K.
//
// Every kernel exists twice: `serial` is the plain reference loop kept for
// testing, `parallel` is the OpenMP version used by the library.  Both return
// the lexicographically first witness, so their results are identical.
namespace padic::kernels {

using Residue = std::uint64_t;
using Table = std::vector<Residue>;

struct TowerViolation {
  Residue x;  // representative x mod p^k
  Residue y;  // first element with f(y) != f(x) mod p^k
  unsigned k;
  friend bool operator==(const TowerViolation&, const TowerViolation&) = default;
};

using PairWitness = std::pair<Residue, Residue>;

inline constexpr Residue kNone = std::numeric_limits<Residue>::max();

namespace serial {

std::optional<TowerViolation> first_tower_violation(std::span<const Residue> table,
                                                    const ResidueRing& ring);
bool is_bijective_mod(std::span<const Residue> table, const ResidueRing& ring, unsigned k);
Table compose(std::span<const Residue> outer, std::span<const Residue> inner);

template <class Op>
std::optional<PairWitness> first_hom_failure(std::span<const Residue> table, Op&& op) {
  const Residue n = table.size();
  for (Residue x = 0; x < n; ++x)
    for (Residue y = 0; y < n; ++y)
      if (table[op(x, y)] != op(table[x], table[y])) return PairWitness{x, y};
  return std::nullopt;
}

template <class Op>
std::optional<std::size_t> first_sampled_failure(std::span<const Residue> table,
                                                 std::span<const PairWitness> samples, Op&& op) {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const auto [x, y] = samples[i];
    if (table[op(x, y)] != op(table[x], table[y])) return i;
  }
  return std::nullopt;
}

}  // namespace serial

namespace parallel {

std::optional<TowerViolation> first_tower_violation(std::span<const Residue> table,
                                                    const ResidueRing& ring);
bool is_bijective_mod(std::span<const Residue> table, const ResidueRing& ring, unsigned k);
Table compose(std::span<const Residue> outer, std::span<const Residue> inner);

template <class Op>
std::optional<PairWitness> first_hom_failure(std::span<const Residue> table, Op&& op) {
  const auto n = static_cast<std::int64_t>(table.size());
  Residue first_row = kNone;
#pragma omp parallel for schedule(dynamic, 16) reduction(min : first_row)
  for (std::int64_t x = 0; x < n; ++x) {
    if (static_cast<Residue>(x) > first_row) continue;
    for (std::int64_t y = 0; y < n; ++y) {
      if (table[op(Residue(x), Residue(y))] != op(table[x], table[y])) {
        first_row = std::min(first_row, static_cast<Residue>(x));
        break;
      }
    }
  }
  if (first_row == kNone) return std::nullopt;
  for (Residue y = 0; y < table.size(); ++y)
    if (table[op(first_row, y)] != op(table[first_row], table[y])) return PairWitness{first_row, y};
  return std::nullopt;
}

template <class Op>
std::optional<std::size_t> first_sampled_failure(std::span<const Residue> table,
                                                 std::span<const PairWitness> samples, Op&& op) {
  const auto n = static_cast<std::int64_t>(samples.size());
  std::size_t first = std::numeric_limits<std::size_t>::max();
#pragma omp parallel for schedule(static) reduction(min : first)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto [x, y] = samples[i];
    if (table[op(x, y)] != op(table[x], table[y]))
      first = std::min(first, static_cast<std::size_t>(i));
  }
  if (first == std::numeric_limits<std::size_t>::max()) return std::nullopt;
  return first;
}

}  // namespace parallel

}  // namespace padic::kernels
