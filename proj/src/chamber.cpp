#include "flipbench/chamber.hpp"

#include "flipbench/error.hpp"
#include "flipbench/flips.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace flipbench {

ChamberSystem ChamberSystem::from_labels(std::size_t points, std::vector<std::vector<std::uint32_t>> relations) {
  for (auto& r : relations) {
    if (r.size() != points) throw Error(ErrorCode::invalid_argument, "relation label vector has the wrong length");
    // Relabel densely in order of first appearance so labels index arrays of size `points`.
    std::map<std::uint32_t, std::uint32_t> dense;
    for (auto& label : r) label = dense.emplace(label, static_cast<std::uint32_t>(dense.size())).first->second;
  }
  return {points, std::move(relations)};
}

std::vector<std::uint32_t> ChamberSystem::panel(std::size_t i, std::uint32_t x) const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t y = 0; y < points; ++y)
    if (related(i, x, y)) out.push_back(y);
  return out;
}

bool preserves_relations(const ChamberSystem& cs, const Perm& g) {
  if (g.size() != cs.points || !is_permutation(g)) return false;
  for (const auto& labels : cs.relations) {
    // Class c must go to a single class, and distinct classes to distinct classes.
    std::vector<std::int64_t> image_of(cs.points, -1), preimage_of(cs.points, -1);
    for (std::uint32_t x = 0; x < cs.points; ++x) {
      const std::uint32_t from = labels[x], to = labels[g[x]];
      if (image_of[from] == -1 && preimage_of[to] == -1) {
        image_of[from] = to;
        preimage_of[to] = from;
      } else if (image_of[from] != to || preimage_of[to] != from) {
        return false;
      }
    }
  }
  return true;
}

PermAction::PermAction(const ChamberSystem& cs, std::vector<Perm> generators) : gens_(std::move(generators)) {
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (!preserves_relations(cs, gens_[i]))
      throw Error(ErrorCode::invalid_argument, "generator " + std::to_string(i) + " does not preserve the relations");
}

bool is_connected(const ChamberSystem& cs) {
  if (cs.points <= 1) return true;
  std::vector<std::uint32_t> parent(cs.points);
  std::iota(parent.begin(), parent.end(), 0u);
  const auto find = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& labels : cs.relations) {
    std::vector<std::int64_t> first(cs.points, -1);
    for (std::uint32_t x = 0; x < cs.points; ++x) {
      if (first[labels[x]] == -1) {
        first[labels[x]] = x;
        continue;
      }
      const auto a = find(x), b = find(static_cast<std::uint32_t>(first[labels[x]]));
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  for (std::uint32_t x = 0; x < cs.points; ++x)
    if (find(x) != 0) return false;
  return true;
}

LocalToGlobal local_to_global(const PermAction& action, const ChamberSystem& cs, std::uint32_t p, std::size_t cap) {
  if (!is_connected(cs)) throw Error(ErrorCode::invalid_argument, "chamber system is not connected");
  if (p >= cs.points) throw Error(ErrorCode::invalid_argument, "base chamber out of range");
  LocalToGlobal r;
  const auto group = closure(action.generators(), cs.points, cap);
  r.group_order = group.size();

  std::vector<bool> reached(cs.points, false);
  for (const Perm& g : group) reached[g[p]] = true;
  r.global_transitive = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });

  r.local_ok = true;
  for (std::size_t i = 0; i < cs.relations.size(); ++i) {
    PanelReport pr;
    pr.relation = i;
    const auto panel = cs.panel(i, p);
    pr.panel_size = panel.size();
    std::set<std::uint32_t> hit;
    for (const Perm& g : group) {
      if (!cs.related(i, p, g[p])) continue;  // g moves the panel elsewhere
      ++pr.stabilizer_order;
      hit.insert(g[p]);
    }
    pr.transitive = hit.size() == panel.size();
    r.local_ok = r.local_ok && pr.transitive;
    r.panels.push_back(pr);
  }
  return r;
}

namespace {

std::vector<std::vector<std::uint32_t>> normalised(std::vector<std::vector<std::uint32_t>> orbits) {
  for (auto& o : orbits) std::sort(o.begin(), o.end());
  std::sort(orbits.begin(), orbits.end());
  return orbits;
}

}  // namespace

ProductDemo product_demo(std::uint32_t q) {
  const auto [p, n] = prime_power_decomposition(q);
  if (p == 0) throw Error(ErrorCode::invalid_argument, std::to_string(q) + " is not a prime power");
  if (q > 11) throw Error(ErrorCode::size_limit, "product demo is limited to q <= 11");
  const auto f = galois_field(q);
  ProductDemo d;
  d.q = q;
  d.expected_positive = q % 4 == 3;

  const Flip<GFElem> theta(f->one(), FieldAut::identity());
  const auto psl = enumerate_group(*f, GroupMode::PSL);
  const auto line = projective_line(*f);
  const std::uint32_t n1 = static_cast<std::uint32_t>(line.size());

  // G_theta for the product is Fix(theta) x Fix(theta); compare Fix(theta) with the image of PK.
  std::vector<Mat2<GFElem>> fixed;
  for (const auto& g : psl)
    if (psl_canonical(apply_flip(theta, g)) == g) fixed.push_back(g);
  std::set<Mat2<GFElem>> k_image;
  for (const auto& k : centralizer(theta, CentralizerKind::PK, Method::formula).elements)
    k_image.insert(psl_canonical(k));
  std::sort(fixed.begin(), fixed.end());
  d.fixed_group_is_k_times_k = std::vector<Mat2<GFElem>>(k_image.begin(), k_image.end()) == fixed;
  d.k_order = k_image.size();

  std::vector<Perm> k_perms;
  for (const auto& k : k_image) {
    Perm perm(n1);
    for (std::uint32_t i = 0; i < n1; ++i) perm[i] = point_index(act(k, line[i]));
    k_perms.push_back(std::move(perm));
  }

  // Chamber (i, j) is i * n1 + j; relation 0 keeps the second coordinate, relation 1 the first.
  d.chambers = std::size_t(n1) * n1;
  std::vector<std::uint32_t> keep_second(d.chambers), keep_first(d.chambers);
  for (std::uint32_t i = 0; i < n1; ++i)
    for (std::uint32_t j = 0; j < n1; ++j) {
      keep_second[i * n1 + j] = j;
      keep_first[i * n1 + j] = i;
    }
  const ChamberSystem cs = ChamberSystem::from_labels(d.chambers, {keep_second, keep_first});
  d.connected = is_connected(cs);

  std::vector<Perm> gens;
  for (const Perm& k : k_perms) {
    Perm left(d.chambers), right(d.chambers);
    for (std::uint32_t i = 0; i < n1; ++i)
      for (std::uint32_t j = 0; j < n1; ++j) {
        left[i * n1 + j] = k[i] * n1 + j;
        right[i * n1 + j] = i * n1 + k[j];
      }
    gens.push_back(std::move(left));
    gens.push_back(std::move(right));
  }
  const std::uint32_t base = point_index(infinity_point(f->one()));
  d.local = local_to_global(PermAction(cs, gens), cs, base * n1 + base);
  d.converse_ok = !d.local.global_transitive || d.local.local_ok;

  std::vector<std::vector<std::uint32_t>> flip_orbits;
  for (const auto& orbit : is_transitive(theta, GroupMode::PSL, Method::formula).orbits) {
    std::vector<std::uint32_t> idx;
    for (const auto& pt : orbit) idx.push_back(point_index(pt));
    flip_orbits.push_back(std::move(idx));
  }
  d.orbits_agree = normalised(orbits(k_perms, n1)) == normalised(flip_orbits);

  for (const auto& g : psl) {
    try {
      const IwasawaFactors<GFElem> kb = iwasawa_factorize(g, theta, GroupMode::PSL);
      const bool ok = k_image.count(psl_canonical(kb.k)) == 1 && is_upper(kb.b) && kb.k * kb.b == g;
      if (!ok) ++d.iwasawa_failures;
    } catch (const Error&) {
      ++d.iwasawa_failures;
    }
  }
  std::size_t borel = 0, meet = 0;
  for (const auto& g : psl) {
    if (!is_upper(g)) continue;
    ++borel;
    if (std::binary_search(fixed.begin(), fixed.end(), g)) ++meet;
  }
  d.iwasawa_count_ok = fixed.size() * borel == psl.size() * meet;
  return d;
}

}  // namespace flipbench
