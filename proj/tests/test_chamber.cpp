#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipbench/chamber.hpp"
#include "flipbench/error.hpp"
#include "flipbench/flips.hpp"

#include <map>
#include <random>

using namespace flipbench;

namespace {

// Grid {0..rows-1} x {0..cols-1}; relation 0 keeps the column, relation 1 keeps the row.
ChamberSystem grid(std::uint32_t rows, std::uint32_t cols) {
  std::vector<std::uint32_t> keep_col(rows * cols), keep_row(rows * cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) {
      keep_col[i * cols + j] = j;
      keep_row[i * cols + j] = i;
    }
  return ChamberSystem::from_labels(rows * cols, {keep_col, keep_row});
}

Perm lift_rows(const Perm& p, std::uint32_t cols) {
  Perm out(p.size() * cols);
  for (std::uint32_t i = 0; i < p.size(); ++i)
    for (std::uint32_t j = 0; j < cols; ++j) out[i * cols + j] = p[i] * cols + j;
  return out;
}

Perm lift_cols(const Perm& p, std::uint32_t rows) {
  const auto cols = static_cast<std::uint32_t>(p.size());
  Perm out(rows * cols);
  for (std::uint32_t i = 0; i < rows; ++i)
    for (std::uint32_t j = 0; j < cols; ++j) out[i * cols + j] = i * cols + p[j];
  return out;
}

Perm cycle(std::uint32_t n) {
  Perm p(n);
  for (std::uint32_t i = 0; i < n; ++i) p[i] = (i + 1) % n;
  return p;
}

Perm transposition(std::uint32_t n, std::uint32_t a, std::uint32_t b) {
  Perm p = identity_perm(n);
  std::swap(p[a], p[b]);
  return p;
}

}  // namespace

TEST_CASE("connectivity") {
  CHECK(is_connected(grid(3, 4)));
  CHECK(is_connected(ChamberSystem::from_labels(1, {})));
  // Two relations that both split {0,1} from {2,3}.
  CHECK_FALSE(is_connected(ChamberSystem::from_labels(4, {{0, 0, 1, 1}, {5, 5, 7, 7}})));
  CHECK(is_connected(ChamberSystem::from_labels(4, {{0, 0, 1, 1}, {0, 1, 1, 2}})));
  CHECK_FALSE(is_connected(ChamberSystem::from_labels(3, {{0, 1, 2}})));
  CHECK_THROWS_AS(ChamberSystem::from_labels(3, {{0, 1}}), Error);
}

TEST_CASE("relation preservation") {
  const ChamberSystem g = grid(2, 3);
  CHECK(preserves_relations(g, lift_rows(transposition(2, 0, 1), 3)));
  CHECK(preserves_relations(g, lift_cols(cycle(3), 2)));
  // Swapping two single chambers breaks both row and column classes.
  CHECK_FALSE(preserves_relations(g, transposition(6, 0, 4)));
  CHECK_FALSE(preserves_relations(g, Perm{0, 0, 1, 2, 3, 4}));
  CHECK_THROWS_AS(PermAction(g, {transposition(6, 0, 4)}), Error);
}

TEST_CASE("full symmetric group on a grid") {
  const std::uint32_t r = 3, c = 4;
  const ChamberSystem g = grid(r, c);
  const PermAction act(g, {lift_rows(cycle(r), c), lift_rows(transposition(r, 0, 1), c), lift_cols(cycle(c), r),
                           lift_cols(transposition(c, 0, 1), r)});
  const LocalToGlobal res = local_to_global(act, g, 5);
  CHECK(res.group_order == 6 * 24);
  CHECK(res.local_ok);
  CHECK(res.global_transitive);
  REQUIRE(res.panels.size() == 2);
  CHECK(res.panels[0].panel_size == r);
  CHECK(res.panels[1].panel_size == c);
  // The stabilizer of the panel through p is the stabilizer of its column.
  CHECK(res.panels[0].stabilizer_order == 6 * 6);
  CHECK(res.panels[1].stabilizer_order == 2 * 24);

  // Only moving rows: no panel of relation 1 is reached.
  const LocalToGlobal rows_only = local_to_global(PermAction(g, {lift_rows(cycle(r), c)}), g, 0);
  CHECK_FALSE(rows_only.local_ok);
  CHECK_FALSE(rows_only.global_transitive);
  CHECK(rows_only.panels[0].transitive);
  CHECK_FALSE(rows_only.panels[1].transitive);

  const ChamberSystem split = ChamberSystem::from_labels(4, {{0, 0, 1, 1}});
  CHECK_THROWS_AS(local_to_global(PermAction(split, {}), split, 0), Error);
}

TEST_CASE("rank one: PK on the projective line") {
  // A single relation with one class makes local and global transitivity the same statement.
  for (std::uint32_t q : {5u, 7u, 9u, 11u}) {
    const auto f = galois_field(q);
    const Flip<GFElem> theta(f->one(), FieldAut::identity());
    const auto line = projective_line(*f);
    const auto n = static_cast<std::uint32_t>(line.size());
    std::vector<Perm> gens;
    for (const auto& k : centralizer(theta, CentralizerKind::PK, Method::formula).elements) {
      Perm p(n);
      for (std::uint32_t i = 0; i < n; ++i) p[i] = point_index(act(k, line[i]));
      gens.push_back(std::move(p));
    }
    const ChamberSystem cs = ChamberSystem::from_labels(n, {std::vector<std::uint32_t>(n, 0)});
    const LocalToGlobal res = local_to_global(PermAction(cs, gens), cs, point_index(infinity_point(f->one())));
    CHECK(res.local_ok == res.global_transitive);
    CHECK(res.global_transitive == (q % 4 == 3));
  }
}

TEST_CASE("product demo") {
  const ProductDemo d3 = product_demo(3);
  CHECK(d3.chambers == 16);
  CHECK(d3.k_order == 4);
  CHECK(d3.all_checks_pass());
  CHECK(d3.local.group_order == 16);

  const ProductDemo d7 = product_demo(7);
  CHECK(d7.chambers == 64);
  CHECK(d7.k_order == 8);
  CHECK(d7.all_checks_pass());
  CHECK(d7.as_expected());
  CHECK(d7.local.panels.size() == 2);
  CHECK(d7.local.panels[0].panel_size == 8);

  // q = 1 mod 4 gives a fixed point of K on P1 and so no factorization.
  const ProductDemo d5 = product_demo(5);
  CHECK(d5.expected_positive == false);
  CHECK(d5.as_expected());
  CHECK_FALSE(d5.all_checks_pass());
  CHECK(d5.iwasawa_failures > 0);

  for (std::uint32_t q : {2u, 4u, 8u, 9u, 11u}) {
    CAPTURE(q);
    CHECK(product_demo(q).as_expected());
  }
  CHECK_THROWS_AS(product_demo(13), Error);
  CHECK_THROWS_AS(product_demo(6), Error);
}

TEST_CASE("randomized grids: local implies global") {
  std::mt19937_64 rng(2024);
  int positives = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto r = static_cast<std::uint32_t>(2 + rng() % 3), c = static_cast<std::uint32_t>(2 + rng() % 3);
    const ChamberSystem g = grid(r, c);
    std::vector<Perm> gens;
    const int count = static_cast<int>(rng() % 4);
    for (int i = 0; i < count; ++i) {
      const bool on_rows = rng() % 2 == 0;
      Perm p = identity_perm(on_rows ? r : c);
      std::shuffle(p.begin(), p.end(), rng);
      gens.push_back(on_rows ? lift_rows(p, c) : lift_cols(p, r));
    }
    const auto base = static_cast<std::uint32_t>(rng() % (r * c));
    const LocalToGlobal res = local_to_global(PermAction(g, gens), g, base);
    if (res.local_ok) {
      CHECK(res.global_transitive);
      ++positives;
    }
    // Each generator moves one coordinate, so the group is a product and the converse holds too.
    if (res.global_transitive) CHECK(res.local_ok);
  }
  CHECK(positives > 10);
}

TEST_CASE("randomized coset systems") {
  // Chambers are elements of S_4 with relations given by left cosets of <s1>, <s2>, <s3>;
  // S_4 acting by left multiplication is regular, and local transitivity holds.
  const std::uint32_t n = 4;
  const auto all = closure({cycle(n), transposition(n, 0, 1)}, n);
  REQUIRE(all.size() == 24);
  std::map<Perm, std::uint32_t> index;
  for (std::uint32_t i = 0; i < all.size(); ++i) index[all[i]] = i;
  std::vector<std::vector<std::uint32_t>> rel;
  for (std::uint32_t s = 0; s + 1 < n; ++s) {
    const Perm t = transposition(n, s, s + 1);
    std::vector<std::uint32_t> label(all.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) {
      // g and g s share a label: the smaller index.
      label[i] = std::min(i, index.at(compose(t, all[i])));
    }
    rel.push_back(label);
  }
  const ChamberSystem cs = ChamberSystem::from_labels(all.size(), rel);
  REQUIRE(is_connected(cs));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Perm> gens;
    const int count = 1 + static_cast<int>(rng() % 2);
    for (int i = 0; i < count; ++i) {
      const Perm& h = all[rng() % all.size()];
      Perm left(all.size());
      for (std::uint32_t j = 0; j < all.size(); ++j) left[j] = index.at(compose(all[j], h));
      gens.push_back(left);
    }
    const LocalToGlobal res = local_to_global(PermAction(cs, gens), cs, 0);
    if (res.local_ok) CHECK(res.global_transitive);
    CHECK(res.global_transitive == (res.group_order == 24));
  }
}
