#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipbench/flips.hpp"
#include "oracles.hpp"

using namespace flipbench;

TEST_CASE("apply_flip on generators") {
  const auto f = galois_field(7);
  const GFElem one = f->one();
  const Flip<GFElem> theta(one, FieldAut::identity());
  CHECK(theta.epsilon() == -one);
  for (const GFElem x : f->elements()) {
    CHECK(apply_flip(theta, upper_unipotent(x)) == lower_unipotent(-x));
    if (!is_zero(x)) CHECK(apply_flip(theta, diag(x, inverse(x))) == diag(inverse(x), x));
  }
  // The closed form agrees with the literal triple product.
  const auto f9 = galois_field(9);
  for (const auto& th : all_flips(*f9))
    for (const auto& g : enumerate_group(*f9, GroupMode::SL))
      CHECK(apply_flip(th, g) == th.left() * apply_aut(th.sigma(), g) * th.right());

  CHECK_THROWS_AS(Flip<GFElem>(f->zero(), FieldAut::identity()), Error);
  CHECK_THROWS_AS(Flip<GFElem>(f9->generator(), FieldAut::frobenius(1)), Error);  // t is not fixed
  CHECK(Flip<GFElem>(f9->from_int(2), FieldAut::frobenius(1)).to_string() == "theta:delta=2,sigma=frob^1");
}

TEST_CASE("theta is an involutory BN-flip") {
  for (const auto& g : enumerate_group(*galois_field(5), GroupMode::SL))
    for (const auto& th : all_flips(*galois_field(5))) CHECK(apply_flip(th, apply_flip(th, g)) == g);

  for (std::uint32_t q : prime_powers_up_to(27)) {
    for (const auto& th : all_flips(*galois_field(q))) {
      const auto r = verify_bn_flip(th);
      CHECK_MESSAGE(r.ok(), th.to_string(), " over q=", q);
    }
  }

  // Conjugation by diag(1, l) keeps B+ in place, so it is no flip.
  const auto f7 = galois_field(7);
  const Mat2<GFElem> y = diag(f7->one(), f7->from_int(3));
  const auto conj = [&](const Mat2<GFElem>& g) { return inverse(y) * g * y; };
  const auto r = verify_bn_map<GFElem>(conj, enumerate_group(*f7, GroupMode::SL), "exhaustive");
  CHECK_FALSE(r.swaps_borels);
}

TEST_CASE("BN-flip checks over rational fields") {
  const QuadraticField k(-1);
  std::vector<QuadElem> samples{k.make(1), k.make(2, 1), k.make(Rational(-3, 5), 2), k.make(0, 1)};
  for (const Rational d : {Rational(1), Rational(2), Rational(-7, 3)}) {
    const Flip<QuadElem> th(k.make(d), FieldAut::conjugation());
    CHECK(verify_bn_flip_symbolic(th, samples).ok());
  }
  const Flip<Rational> tq(Rational(5), FieldAut::identity());
  CHECK(verify_bn_flip_symbolic(tq, std::vector<Rational>{1, 2, Rational(-1, 3)}).ok());
}

TEST_CASE("centralizer: formula matches brute force") {
  const auto f3 = galois_field(3);
  const Flip<GFElem> t3(f3->one(), FieldAut::identity());
  const auto k3 = centralizer_formula(t3, CentralizerKind::K);
  CHECK(k3.elements.size() == 4);
  const GFElem one = f3->one();
  for (const auto& g : {identity_like(one), -identity_like(one), weyl_s(one), -weyl_s(one)})
    CHECK(std::find(k3.elements.begin(), k3.elements.end(), g) != k3.elements.end());

  const auto f7 = galois_field(7);
  const Flip<GFElem> t7(f7->one(), FieldAut::identity());
  CHECK(centralizer_formula(t7, CentralizerKind::K).elements.size() == 8);
  CHECK(centralizer_formula(t7, CentralizerKind::PK).elements.size() == 16);

  for (std::uint32_t q : prime_powers_up_to(13)) {
    const auto f = galois_field(q);
    const auto group = enumerate_group(*f, GroupMode::SL);
    for (const auto& th : all_flips(*f)) {
      for (CentralizerKind kind : {CentralizerKind::K, CentralizerKind::PK}) {
        const auto a = centralizer_formula(th, kind);
        const auto b = centralizer_brute_force(th, kind, &group);
        CHECK_MESSAGE(a.elements == b.elements, th.to_string(), " q=", q);
        for (const auto& g : a.elements) {
          const auto img = apply_flip(th, g);
          CHECK((img == g || (kind == CentralizerKind::PK && img == -g)));
        }
      }
    }
  }
}

TEST_CASE("transitivity: library orbits match the raw-integer oracle") {
  for (std::int64_t p : {3, 5, 7, 11, 13}) {
    const auto f = galois_field(p);
    const auto group = enumerate_group(*f, GroupMode::SL);
    for (std::int64_t d = 1; d < p; ++d) {
      const Flip<GFElem> th(f->from_int(d), FieldAut::identity());
      CHECK(is_transitive(th, GroupMode::SL, Method::brute_force, &group).orbits.size() ==
            oracle::centralizer_orbit_count(p, d, false));
      CHECK(is_transitive(th, GroupMode::PSL, Method::brute_force, &group).orbits.size() ==
            oracle::centralizer_orbit_count(p, d, true));
    }
  }
}

TEST_CASE("transitivity examples") {
  const auto f7 = galois_field(7);
  CHECK(is_transitive(Flip<GFElem>(f7->one(), FieldAut::identity()), GroupMode::PSL).transitive);

  const auto f3 = galois_field(3);
  const auto t3 = is_transitive(Flip<GFElem>(f3->one(), FieldAut::identity()), GroupMode::SL);
  CHECK_FALSE(t3.transitive);
  REQUIRE(t3.orbits.size() == 2);
  // {(0:1), (1:0)} is one orbit, {(1:1), (2:1)} the other.
  const auto& first = t3.orbits.front();
  CHECK(first.size() == 2);
  CHECK(first[0] == ProjPoint<GFElem>{f3->zero(), f3->one()});
  CHECK(first[1] == infinity_point(f3->one()));

  const auto f9 = galois_field(9);
  CHECK_FALSE(is_transitive(Flip<GFElem>(f9->one(), FieldAut::frobenius(1)), GroupMode::SL).transitive);
}

TEST_CASE("criterion verdicts") {
  const auto f7 = galois_field(7);
  CHECK(criterion_verdict(*f7, f7->one(), FieldAut::identity(), GroupMode::PSL) == Tri::yes);
  CHECK(criterion_verdict(*f7, f7->from_int(3), FieldAut::identity(), GroupMode::PSL) == Tri::no);
  const auto f8 = galois_field(8);
  for (const GFElem d : f8->nonzero_elements())
    for (GroupMode m : {GroupMode::SL, GroupMode::PSL})
      CHECK(criterion_verdict(*f8, d, FieldAut::identity(), m) == Tri::no);

  CHECK(criterion_verdict(RationalField{}, Rational(1), FieldAut::identity(), GroupMode::SL) == Tri::no);
  CHECK(criterion_verdict(QuadraticField(-1), QuadraticField(-1).one(), FieldAut::conjugation(), GroupMode::PSL) ==
        Tri::no);
}

TEST_CASE("transitivity witnesses") {
  const auto f7 = galois_field(7);
  const auto id = FieldAut::identity();
  const auto inf = infinity_point(f7->one());

  const auto w0 = transitivity_witness(inf, id, GroupMode::PSL);
  CHECK(w0.x == f7->one());
  CHECK(w0.eps == 1);

  const ProjPoint<GFElem> p11{f7->one(), f7->one()};
  const auto w1 = transitivity_witness(p11, id, GroupMode::PSL);
  CHECK(w1.x == f7->from_int(3));
  CHECK(w1.eps == 1);
  CHECK(act(w1.matrix, p11) == inf);

  const ProjPoint<GFElem> p13{f7->one(), f7->from_int(3)};
  const auto w3 = transitivity_witness(make_point(f7->one(), f7->from_int(3)), id, GroupMode::PSL);
  // The canonical point for the vector (1, 3) is (5:1); the norm sum scales by a square.
  CHECK(w3.eps == -1);
  const auto w3raw = transitivity_witness(p13, id, GroupMode::PSL);
  CHECK(w3raw.eps == -1);
  CHECK(w3raw.x == f7->from_int(2));
  CHECK(act(w3raw.matrix, p13) == inf);
  CHECK_THROWS_AS(transitivity_witness(p13, id, GroupMode::SL), Error);

  // Over Q(i), (1:1) has N(1) + N(1) = 2 = N(1 + i).
  const QuadraticField k(-1);
  const auto wq = transitivity_witness(ProjPoint<QuadElem>{k.one(), k.one()}, FieldAut::conjugation(), GroupMode::SL);
  CHECK(norm(wq.x, FieldAut::conjugation()) == k.make(2));
  CHECK(act(wq.matrix, ProjPoint<QuadElem>{k.one(), k.one()}) == infinity_point(k.one()));
  CHECK(is_sl2(wq.matrix));
}

TEST_CASE("conjugation to delta = 1") {
  const auto f7 = galois_field(7);
  const auto c1 = conjugate_to_standard(Flip<GFElem>(f7->one(), FieldAut::identity()));
  CHECK(c1.Y == identity_like(f7->one()));

  const Flip<GFElem> t2(f7->from_int(2), FieldAut::identity());
  const auto c2 = conjugate_to_standard(t2);
  CHECK(c2.x == f7->from_int(2));
  CHECK(c2.Y == diag(f7->one(), f7->from_int(4)));
  CHECK_THROWS_AS(conjugate_to_standard(Flip<GFElem>(f7->from_int(3), FieldAut::identity())), Error);

  for (std::uint32_t q : {5u, 7u, 9u, 11u, 13u, 25u}) {
    const auto f = galois_field(q);
    const auto group = enumerate_group(*f, GroupMode::SL);
    for (const auto& th : all_flips(*f)) {
      if (!norm_preimage(inverse(th.delta()), th.sigma())) continue;
      const auto c = conjugate_to_standard(th);
      const Mat2<GFElem> yi = inverse(c.Y);
      for (const auto& g : group)
        CHECK(apply_flip(th, g) == yi * apply_flip(c.standard, c.Y * g * yi) * c.Y);
    }
  }
}

TEST_CASE("Iwasawa factorisation recomposes") {
  for (std::uint32_t q : {3u, 7u, 11u, 19u, 23u, 27u}) {
    const auto f = galois_field(q);
    for (const auto& th : all_flips(*f)) {
      if (criterion_verdict(*f, th.delta(), th.sigma(), GroupMode::PSL) != Tri::yes) continue;
      for (const auto& g : enumerate_group(*f, GroupMode::PSL)) {
        const auto [k, b] = iwasawa_factorize(g, th, GroupMode::PSL);
        const auto img = apply_flip(th, k);
        CHECK((img == k || img == -k));
        CHECK(is_upper(b));
        CHECK(is_sl2(k));
        CHECK(k * b == g);
      }
    }
  }
  const auto f5 = galois_field(5);
  // (2:1) is isotropic for x^2 + y^2 over F_5, so no witness exists for it.
  const Mat2<GFElem> to_iso{f5->from_int(2), -f5->one(), f5->one(), f5->zero()};
  CHECK_THROWS_AS(iwasawa_factorize(to_iso, Flip<GFElem>(f5->one(), FieldAut::identity()), GroupMode::PSL), Error);
  const auto f7 = galois_field(7);
  const auto id = identity_like(f7->one());
  const auto [k, b] = iwasawa_factorize(id, Flip<GFElem>(f7->one(), FieldAut::identity()), GroupMode::PSL);
  CHECK(k == id);
  CHECK(b == id);
}

TEST_CASE("classification of additive flips") {
  const std::vector<std::pair<std::uint32_t, std::size_t>> expected{{2, 1}, {3, 2}, {4, 4}, {5, 4}, {8, 7}, {9, 10}};
  for (const auto& [q, count] : expected) {
    const auto c = classify_additive_flips(*galois_field(q));
    CHECK_MESSAGE(c.match, "q=", q);
    CHECK(c.observed.size() == count);
    CHECK(c.predicted.size() == count);
  }
  CHECK(classify_additive_flips(*galois_field(4)).candidates == 6);
  CHECK(classify_additive_flips(*galois_field(9)).candidates == 48);

  // The generator decision agrees with the full pair check on small fields.
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const auto f = galois_field(q);
    const auto group = enumerate_group(*f, GroupMode::SL);
    for (const auto& phi : additive_automorphisms(*f))
      CHECK(induces_involution(*f, phi, group, HomCheck::generators) ==
            induces_involution(*f, phi, group, HomCheck::all_pairs));
  }

  // Flips theta_{delta,sigma} induce phi = eps x^sigma with eps = -1/delta.
  const auto f9 = galois_field(9);
  const auto predicted = predicted_additive_flips(*f9);
  for (const auto& th : all_flips(*f9)) {
    const auto phi = additive_map_of(*f9, [&](GFElem x) { return apply_flip(th, upper_unipotent(x)).c; });
    const auto want = additive_map_of(*f9, [&](GFElem x) { return th.epsilon() * apply_aut(th.sigma(), x); });
    CHECK(phi == want);
  }
}

TEST_CASE("Phan involution check") {
  for (std::uint32_t q : prime_powers_up_to(7)) {
    const auto f = galois_field(q);
    const auto group = enumerate_group(*f, GroupMode::SL);
    for (const auto& th : all_flips(*f)) {
      const auto r = phan_involution_check(th, &group);
      CHECK_MESSAGE(r.ok(), th.to_string(), " q=", q);
    }
  }
}
