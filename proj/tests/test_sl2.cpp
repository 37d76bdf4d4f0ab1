#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipbench/sl2.hpp"
#include "oracles.hpp"

#include <random>
#include <set>

using namespace flipbench;

namespace {

oracle::M2 raw(const Mat2<GFElem>& g) { return {g.a.index, g.b.index, g.c.index, g.d.index}; }

}  // namespace

TEST_CASE("group orders") {
  CHECK(enumerate_group(*galois_field(3), GroupMode::SL).size() == 24);
  CHECK(enumerate_group(*galois_field(3), GroupMode::PSL).size() == 12);
  CHECK(enumerate_group(*galois_field(2), GroupMode::SL).size() == 6);
  CHECK(enumerate_group(*galois_field(2), GroupMode::PSL).size() == 6);
  for (std::uint32_t q : prime_powers_up_to(13)) {
    const auto f = galois_field(q);
    for (GroupMode m : {GroupMode::SL, GroupMode::PSL}) {
      const auto g = enumerate_group(*f, m);
      CHECK(g.size() == group_order(q, m));
      CHECK(std::is_sorted(g.begin(), g.end()));
      CHECK(std::adjacent_find(g.begin(), g.end()) == g.end());
    }
  }
  CHECK_THROWS_AS(enumerate_group(*galois_field(32), GroupMode::SL), Error);
}

TEST_CASE("enumeration matches the raw-integer oracle") {
  for (std::int64_t p : {2, 3, 5, 7}) {
    const auto lib = enumerate_group(*galois_field(p), GroupMode::SL);
    std::set<oracle::M2> got;
    for (const auto& g : lib) got.insert(raw(g));
    const auto want = oracle::sl2(p);
    CHECK(got == std::set<oracle::M2>(want.begin(), want.end()));
  }
}

TEST_CASE("projective line action") {
  const auto f = galois_field(3);
  CHECK(projective_line(*f).size() == 4);
  const auto one = f->one();
  const auto inf = infinity_point(one);
  CHECK(act(weyl_s(one), inf) == ProjPoint<GFElem>{f->zero(), one});

  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const auto fq = galois_field(q);
    const auto g = enumerate_group(*fq, GroupMode::SL);
    const auto pts = projective_line(*fq);
    for (const auto& p : pts) CHECK(act(identity_like(fq->one()), p) == p);
    for (const auto& x : g)
      for (const auto& y : g)
        for (const auto& p : pts) CHECK(act(x * y, p) == act(x, act(y, p)));
  }

  // Randomised composition check for a larger field.
  const auto f27 = galois_field(27);
  const auto g27 = enumerate_group(*f27, GroupMode::SL);
  const auto pts27 = projective_line(*f27);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto& x = g27[rng() % g27.size()];
    const auto& y = g27[rng() % g27.size()];
    const auto& p = pts27[rng() % pts27.size()];
    CHECK(act(x * y, p) == act(x, act(y, p)));
  }
}

TEST_CASE("PSL canonical form") {
  for (std::uint32_t q : {3u, 4u, 5u, 7u}) {
    for (const auto& g : enumerate_group(*galois_field(q), GroupMode::SL)) {
      CHECK(psl_canonical(g) == psl_canonical(-g));
      CHECK((psl_canonical(g) == g || psl_canonical(g) == -g));
    }
  }
}

TEST_CASE("stabilizer of (1:0) is B+") {
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    const auto f = galois_field(q);
    const auto inf = infinity_point(f->one());
    std::size_t borel = 0;
    for (const auto& g : enumerate_group(*f, GroupMode::SL)) {
      CHECK((act(g, inf) == inf) == is_upper(g));
      borel += is_upper(g);
    }
    CHECK(borel == std::size_t(q) * (q - 1));
  }
}

TEST_CASE("Bruhat decomposition") {
  const auto f5 = galois_field(5);
  const auto one = f5->one();
  CHECK(bruhat_decompose(upper_unipotent(f5->from_int(3))).word == Weyl::one);
  CHECK(bruhat_decompose(weyl_s(one)).word == Weyl::s);
  for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u}) {
    std::size_t cell_one = 0, cell_s = 0;
    for (const auto& g : enumerate_group(*galois_field(q), GroupMode::SL)) {
      const auto cell = bruhat_decompose(g);
      CHECK(recompose(cell) == g);
      CHECK(is_upper(cell.left));
      CHECK(is_upper(cell.right));
      CHECK((cell.word == Weyl::one) == is_zero(g.c));
      (cell.word == Weyl::one ? cell_one : cell_s) += 1;
    }
    CHECK(cell_one + cell_s == group_order(q, GroupMode::SL));
    CHECK(cell_one == std::size_t(q) * (q - 1));
  }
}

TEST_CASE("Birkhoff cells agree with the double coset B+B-") {
  const auto f3 = galois_field(3);
  const auto one = f3->one();
  CHECK(birkhoff_codistance(identity_like(one)) == Weyl::one);
  CHECK(birkhoff_codistance(weyl_s(one)) == Weyl::s);
  CHECK(birkhoff_codistance(diag(f3->from_int(2), f3->from_int(2))) == Weyl::one);

  for (std::int64_t p : {3, 5, 7}) {
    // Oracle: multiply out every upper by every lower element.
    const auto all = oracle::sl2(p);
    std::vector<oracle::M2> upper, lower;
    for (const auto& g : all) {
      if (g[2] == 0) upper.push_back(g);
      if (g[1] == 0) lower.push_back(g);
    }
    std::set<oracle::M2> big_cell;
    for (const auto& u : upper)
      for (const auto& l : lower) big_cell.insert(oracle::mul(u, l, p));

    for (const auto& g : enumerate_group(*galois_field(p), GroupMode::SL)) {
      const auto cell = birkhoff_decompose(g);
      CHECK(recompose(cell) == g);
      CHECK(is_upper(cell.left));
      CHECK(is_lower(cell.right));
      CHECK((cell.word == Weyl::one) == (big_cell.count(raw(g)) == 1));
      CHECK(cell.word == birkhoff_codistance(g));
    }
  }
}

TEST_CASE("matrix literals") {
  const auto f = galois_field(9);
  const std::function<GFElem(std::string_view)> parse = [&](std::string_view s) { return f->parse(s); };
  const auto m = parse_matrix(" [[t, 1], [2, 0]] ", parse);
  CHECK(m.a == f->generator());
  CHECK(to_string(m) == "[[t,1],[2,0]]");
  CHECK_THROWS_AS(parse_matrix("[[1,2],[3]]", parse), Error);
}
