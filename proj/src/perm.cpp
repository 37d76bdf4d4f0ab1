#include "flipbench/perm.hpp"

#include "flipbench/error.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

namespace flipbench {

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

Perm compose(const Perm& first, const Perm& second) {
  Perm out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = second[first[i]];
  return out;
}

Perm inverse(const Perm& p) {
  Perm out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = static_cast<std::uint32_t>(i);
  return out;
}

bool is_identity(const Perm& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != i) return false;
  return true;
}

bool is_permutation(const Perm& p) {
  std::vector<bool> hit(p.size(), false);
  for (const auto x : p) {
    if (x >= p.size() || hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

std::vector<std::vector<std::uint32_t>> orbits(const std::vector<Perm>& gens, std::size_t n) {
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Perm& g : gens)
    for (std::uint32_t i = 0; i < n; ++i) {
      const auto a = find(i), b = find(g[i]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<std::vector<std::uint32_t>> by_root(n);
  for (std::uint32_t i = 0; i < n; ++i) by_root[find(i)].push_back(i);
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& orbit : by_root)
    if (!orbit.empty()) out.push_back(std::move(orbit));
  return out;
}

std::size_t PermHash::operator()(const Perm& p) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto x : p) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

std::vector<Perm> closure(const std::vector<Perm>& gens, std::size_t n, std::size_t cap) {
  std::vector<Perm> elems{identity_perm(n)};
  std::unordered_set<Perm, PermHash> seen{elems.front()};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const Perm& g : gens) {
      Perm next = compose(elems[i], g);
      if (seen.insert(next).second) {
        if (elems.size() >= cap)
          throw Error(ErrorCode::closure_cap_exceeded, "group closure exceeded " + std::to_string(cap) + " elements");
        elems.push_back(std::move(next));
      }
    }
  }
  return elems;
}

}  // namespace flipbench
