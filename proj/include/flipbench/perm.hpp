#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace flipbench {

/// Permutation of {0, ..., n-1} in table form: point i goes to p[i].
using Perm = std::vector<std::uint32_t>;

Perm identity_perm(std::size_t n);
/// Right action: apply `first`, then `second`, so x(pq) = (xp)q.
Perm compose(const Perm& first, const Perm& second);
Perm inverse(const Perm& p);
bool is_identity(const Perm& p);
bool is_permutation(const Perm& p);

/// Orbits of the group generated by `gens`, each sorted, ordered by smallest point.
std::vector<std::vector<std::uint32_t>> orbits(const std::vector<Perm>& gens, std::size_t n);

/// Every element of the group generated by `gens` (identity first, then
/// breadth-first order). Throws closure_cap_exceeded past `cap` elements.
std::vector<Perm> closure(const std::vector<Perm>& gens, std::size_t n, std::size_t cap = 1'000'000);

struct PermHash {
  std::size_t operator()(const Perm& p) const noexcept;
};

}  // namespace flipbench
