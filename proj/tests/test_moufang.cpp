#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipbench/moufang.hpp"
#include "oracles.hpp"

#include <algorithm>

using namespace flipbench;

namespace {

Perm perm_from(const GaloisField& f, const std::function<GFElem(GFElem)>& phi) {
  Perm p(f.order());
  for (const GFElem x : f.elements()) p[x.index] = phi(x).index;
  return p;
}

}  // namespace

TEST_CASE("root group maps on M(F_q)") {
  const auto f5 = galois_field(5);
  const MoufangSet m5 = moufang_of_field(*f5);
  CHECK(is_identity(m5.alpha(0)));
  CHECK(m5.alpha(2)[2] == 4);
  CHECK(m5.alpha(2)[m5.infinity()] == m5.infinity());
  CHECK(m5.tau()[0] == 5);
  CHECK(m5.tau()[2] == 2);  // -1/2 = 2 in F_5

  const auto f7 = galois_field(7);
  const MoufangSet m7 = moufang_of_field(*f7);
  for (std::uint32_t a = 0; a < 7; ++a) CHECK(m7.gamma(a)[0] == 0);
  // gamma_a acts as x -> x / (1 - a x), the Moebius map of U-(-a).
  for (std::uint32_t a = 0; a < 7; ++a)
    for (std::int64_t x = 0; x < 7; ++x) {
      const std::int64_t den = oracle::mod(1 - std::int64_t(a) * x, 7);
      const std::uint32_t expect = den == 0 ? 7 : std::uint32_t(oracle::mod(x * oracle::inv_mod(den, 7), 7));
      CHECK(m7.gamma(a)[x] == expect);
    }

  CHECK_THROWS_AS((void)m7.hua(0), Error);
  CHECK_THROWS_AS((void)m7.mu(0), Error);
  CHECK(m7.format(7) == "inf");
  CHECK_THROWS_AS(MoufangSet(FiniteGroupU::additive(*f5), identity_perm(6)), Error);
}

TEST_CASE("Hua and mu maps against raw arithmetic") {
  // In M(F_p): b h_a = a^2 b and x mu_a = -a^2 / x with 0 <-> inf.
  for (std::int64_t p : {3, 5, 7, 11}) {
    const auto f = galois_field(p);
    const MoufangSet m = moufang_of_field(*f);
    for (std::int64_t a = 1; a < p; ++a) {
      const XPerm h = m.hua(std::uint32_t(a)), mu = m.mu(std::uint32_t(a));
      CHECK(h[0] == 0);
      CHECK(h[p] == std::uint32_t(p));
      CHECK(mu[0] == std::uint32_t(p));
      CHECK(mu[p] == 0);
      for (std::int64_t x = 1; x < p; ++x) {
        CHECK(h[x] == oracle::mod(a * a * x, p));
        CHECK(mu[x] == oracle::mod(-a * a * oracle::inv_mod(x, p), p));
      }
      CHECK(mu == compose(m.tau_inverse(), h));
      CHECK(inverse(mu) == m.mu(std::uint32_t(oracle::mod(-a, p))));
    }
  }
  const auto f5 = galois_field(5);
  const MoufangSet m5 = moufang_of_field(*f5);
  for (std::uint32_t b = 0; b < 5; ++b) CHECK(m5.hua(2)[b] == (4 * b) % 5);
}

TEST_CASE("pointed Moufang sets and isotopes") {
  const auto f5 = galois_field(5);
  const MoufangSet m = moufang_of_field(*f5);
  const PointedMoufangSet pm(m, 1);
  CHECK(pm.tau() == m.tau());
  CHECK(is_identity(pm.hua(1)));
  CHECK(is_identity(pm.opposite_hua(1)));  // tau^2 = 1
  CHECK(identity_elements(m) == std::vector<std::uint32_t>{1, 4});
  for (std::uint32_t b = 1; b < 5; ++b) CHECK(pm.isotope_hua(1, b) == pm.hua(b));
  // h_b^{(a)} is multiplication by a^{-2} b^2.
  for (std::int64_t a = 1; a < 5; ++a)
    for (std::int64_t b = 1; b < 5; ++b) {
      const XPerm iso = pm.isotope_hua(std::uint32_t(a), std::uint32_t(b));
      const std::int64_t k = oracle::mod(b * b * oracle::inv_mod(a * a % 5, 5), 5);
      for (std::int64_t x = 0; x < 5; ++x) CHECK(iso[x] == oracle::mod(k * x, 5));
    }

  // Another base point: tau becomes mu_{-2}, and h_2 is trivial there.
  const PointedMoufangSet p2(m, 2);
  CHECK(p2.tau() == m.mu(3));
  CHECK(is_identity(p2.hua(2)));
  CHECK(p2.tau() != m.tau());
}

TEST_CASE("Moufang axioms and H = G_{0,inf}") {
  for (std::uint32_t q : prime_powers_up_to(9)) {
    const auto f = galois_field(q);
    const MoufangSet m = moufang_of_field(*f);
    const AxiomReport ax = verify_moufang_axioms(m);
    CHECK_MESSAGE(ax.ok(), "q=", q);
    const auto g = m.little_projective_group();
    CHECK(g.size() == group_order(q, GroupMode::PSL));
  }
  // A tau that does not come from PSL_2 still swaps 0 and inf but breaks the axioms.
  const auto f5 = galois_field(5);
  XPerm bad = moufang_of_field(*f5).tau();
  std::swap(bad[1], bad[2]);
  CHECK_FALSE(verify_moufang_axioms(MoufangSet(FiniteGroupU::additive(*f5), bad)).ok());
}

TEST_CASE("flip automorphisms") {
  const auto f5 = galois_field(5);
  const MoufangSet m5 = moufang_of_field(*f5);
  CHECK(is_flip_automorphism(m5, identity_perm(5)));
  CHECK(is_flip_automorphism(m5, perm_from(*f5, [&](GFElem x) { return f5->from_int(2) * x; })));
  Perm not_additive = identity_perm(5);
  std::swap(not_additive[1], not_additive[2]);
  CHECK_THROWS_AS(is_flip_automorphism(m5, not_additive), Error);

  const auto f9 = galois_field(9);
  const MoufangSet m9 = moufang_of_field(*f9);
  const GFElem t = f9->generator();
  const auto frob = [&](GFElem x) { return apply_aut(FieldAut::frobenius(1), x); };
  CHECK(is_flip_automorphism(m9, perm_from(*f9, frob)));
  // eps = t is not fixed by Frobenius.
  CHECK_FALSE(is_flip_automorphism(m9, perm_from(*f9, [&](GFElem x) { return t * frob(x); })));
  CHECK(is_flip_automorphism(m9, perm_from(*f9, [&](GFElem x) { return -frob(x); })));
}

TEST_CASE("flip_extends_check") {
  const auto f7 = galois_field(7);
  const MoufangSet m7 = moufang_of_field(*f7);
  const FlipExtension obvious = flip_extends_check(m7, identity_perm(7));
  CHECK(obvious.ok());
  CHECK(obvious.identity_element == 1u);
  CHECK(obvious.structure_identity == true);
  // With phi = 1 the main identity says g_a = h_a, which is tau^2 = 1.
  for (std::uint32_t a = 1; a < 7; ++a) CHECK(m7.opposite_hua(a) == m7.hua(a));

  const auto f9 = galois_field(9);
  const MoufangSet m9 = moufang_of_field(*f9);
  const Perm frob = perm_from(*f9, [&](GFElem x) { return apply_aut(FieldAut::frobenius(1), x); });
  const FlipExtension ext = flip_extends_check(m9, frob);
  CHECK(ext.ok());
  for (std::uint32_t a = 1; a < 9; ++a)
    CHECK(m9.opposite_hua(frob[a]) == compose(compose(extend_to_x(frob), m9.hua(a)), extend_to_x(frob)));

  Perm scale3 = perm_from(*f7, [&](GFElem x) { return f7->from_int(3) * x; });
  CHECK(is_flip_automorphism(m7, scale3));
  CHECK(flip_extends_check(m7, scale3).ok());

  const Perm t_frob = perm_from(*f9, [&](GFElem x) { return f9->generator() * apply_aut(FieldAut::frobenius(1), x); });
  CHECK_THROWS_AS(flip_extends_check(m9, t_frob), Error);
}

TEST_CASE("flip classification over small fields") {
  const std::vector<std::pair<std::uint32_t, std::size_t>> expected{{2, 1}, {3, 2}, {4, 4}, {5, 4},
                                                                    {7, 6}, {8, 7}, {9, 10}};
  for (const auto& [q, count] : expected) {
    const auto f = galois_field(q);
    const FlipClassificationM c = classify_flips_commutative(*f);
    CHECK_MESSAGE(c.match, "q=", q);
    CHECK_MESSAGE(c.observed.size() == count, "q=", q);
    // The SL_2 side sees the same set (it is closed under negation).
    CHECK(classify_additive_flips(*f).observed == c.observed);
  }
  CHECK(classify_flips_commutative(*galois_field(9)).candidates == 48);
  CHECK(classify_flips_commutative(*galois_field(4)).candidates == 6);
}

TEST_CASE("obvious flip transitivity") {
  const auto m5 = moufang_of_field(*galois_field(5));
  const ObviousFlip o5 = obvious_flip_transitive(m5);
  CHECK_FALSE(o5.transitive);
  REQUIRE(o5.fixed_point.has_value());
  CHECK(*o5.fixed_point == 2);

  const auto m3 = moufang_of_field(*galois_field(3));
  CHECK(m3.tau()[1] == 2);
  CHECK(m3.tau()[2] == 1);
  CHECK_FALSE(obvious_flip_transitive(m3).fixed_point.has_value());

  const ObviousFlip o7 = obvious_flip_transitive(moufang_of_field(*galois_field(7)));
  CHECK_FALSE(o7.fixed_point.has_value());
  CHECK(o7.transitive);
  CHECK(o7.group_order == 168);

  // C_G(tau) is the projective centralizer of theta_{1,id}; orbit counts must agree.
  for (std::uint32_t q : prime_powers_up_to(13)) {
    const auto f = galois_field(q);
    const ObviousFlip o = obvious_flip_transitive(moufang_of_field(*f));
    const Transitivity t = is_transitive(Flip<GFElem>(f->one(), FieldAut::identity()), GroupMode::PSL);
    CHECK_MESSAGE(o.orbits.size() == t.orbits.size(), "q=", q);
    CHECK_MESSAGE(o.transitive == (q % 4 == 3), "q=", q);
    if (o.transitive) CHECK_FALSE(o.fixed_point.has_value());
  }

  XPerm not_inv = moufang_of_field(*galois_field(7)).tau();
  std::swap(not_inv[1], not_inv[2]);
  CHECK_THROWS_AS(obvious_flip_transitive(MoufangSet(FiniteGroupU::additive(*galois_field(7)), not_inv)), Error);
}

TEST_CASE("identity suite for q <= 9") {
  for (std::uint32_t q : prime_powers_up_to(9)) {
    const IdentitySuite s = verify_identities(*galois_field(q));
    for (const auto& c : s.checks) {
      CHECK_MESSAGE(c.passed, s.field, " ", c.name, " ", c.counterexample.value_or(""));
      CHECK_MESSAGE(c.cases > 0, c.name);
    }
    CHECK(s.checks.size() == 16);
  }
}

TEST_CASE("M(...) spec strings") {
  CHECK(parse_moufang_spec("M(Fq:7)")->order() == 7);
  CHECK(parse_moufang_spec("M(Fq:3^2/modulus=1,0,1)")->order() == 9);
  CHECK_THROWS_AS(parse_moufang_spec("Fq:7"), Error);
  CHECK_THROWS_AS(parse_moufang_spec("M(Q)"), Error);
}
