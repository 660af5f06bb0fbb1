#include "padic/kernels.hpp"

#include <atomic>

namespace padic::kernels {

namespace serial {

std::optional<TowerViolation> first_tower_violation(std::span<const Residue> table,
                                                    const ResidueRing& ring) {
  for (unsigned k = 1; k <= ring.K(); ++k) {
    const Residue pk = ring.power(k);
    for (Residue y = 0; y < table.size(); ++y) {
      const Residue x = y % pk;
      if (table[x] % pk != table[y] % pk) return TowerViolation{x, y, k};
    }
  }
  return std::nullopt;
}

bool is_bijective_mod(std::span<const Residue> table, const ResidueRing& ring, unsigned k) {
  const Residue pk = ring.power(k);
  std::vector<bool> seen(pk, false);
  for (Residue x = 0; x < pk; ++x) {
    const Residue v = table[x] % pk;
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Table compose(std::span<const Residue> outer, std::span<const Residue> inner) {
  Table out(inner.size());
  for (std::size_t x = 0; x < inner.size(); ++x) out[x] = outer[inner[x]];
  return out;
}

}  // namespace serial

namespace parallel {

std::optional<TowerViolation> first_tower_violation(std::span<const Residue> table,
                                                    const ResidueRing& ring) {
  const auto n = static_cast<std::int64_t>(table.size());
  for (unsigned k = 1; k <= ring.K(); ++k) {
    const Residue pk = ring.power(k);
    Residue first = kNone;
#pragma omp parallel for schedule(static) reduction(min : first)
    for (std::int64_t y = 0; y < n; ++y) {
      const Residue x = Residue(y) % pk;
      if (table[x] % pk != table[y] % pk) first = std::min(first, Residue(y));
    }
    if (first != kNone) return TowerViolation{first % pk, first, k};
  }
  return std::nullopt;
}

bool is_bijective_mod(std::span<const Residue> table, const ResidueRing& ring, unsigned k) {
  const Residue pk = ring.power(k);
  std::vector<std::atomic<unsigned char>> seen(pk);
  int collision = 0;
#pragma omp parallel for schedule(static) reduction(| : collision)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(pk); ++x) {
    if (seen[table[x] % pk].exchange(1, std::memory_order_relaxed) != 0) collision |= 1;
  }
  return collision == 0;
}

Table compose(std::span<const Residue> outer, std::span<const Residue> inner) {
  Table out(inner.size());
  const auto n = static_cast<std::int64_t>(inner.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < n; ++x) out[x] = outer[inner[x]];
  return out;
}

}  // namespace parallel

}  // namespace padic::kernels
