#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "flipbench/error.hpp"
#include "flipbench/skewfield.hpp"

using namespace flipbench;

namespace {

const auto H = QuaternionAlgebra::hamilton();
const Quaternion one(H, 1), zero(H), qi(H, 0, 1), qj(H, 0, 0, 1), qk(H, 0, 0, 0, 1);

Quaternion q(std::string_view s) { return parse_quaternion(H, s); }

}  // namespace

TEST_CASE("quaternion arithmetic") {
  CHECK(qi * qj == qk);
  CHECK(qj * qi == -qk);
  CHECK(qj * qk == qi);
  CHECK(qk * qi == qj);
  CHECK(qi * qi == -one);
  CHECK(qk * qk == -one);
  CHECK(Quaternion(H, 1, 1, 1, 1).nrd() == 4);
  CHECK(inverse(qi) == -qi);
  CHECK(inverse(q("1+i")) == q("1/2-1/2i"));
  CHECK_THROWS_AS(inverse(zero), Error);

  // Non-Hamilton structure constants follow i^2 = a, j^2 = b.
  const auto A = QuaternionAlgebra::make(2, 3);
  const Quaternion i2(A, 0, 1), j2(A, 0, 0, 1);
  CHECK(i2 * i2 == Quaternion(A, 2));
  CHECK(j2 * j2 == Quaternion(A, 3));
  CHECK((i2 * j2) * (i2 * j2) == Quaternion(A, -6));
  CHECK(Quaternion(A, 1, 1, 1, 1).nrd() == 1 - 2 - 3 + 6);
  CHECK_FALSE(A->division_guaranteed);
}

TEST_CASE("quaternion literals") {
  CHECK(to_string(q("1+i+j+k")) == "1+i+j+k");
  CHECK(to_string(q("-1/2i+3k")) == "-1/2i+3k");
  CHECK(to_string(zero) == "0");
  CHECK(to_string(-qj) == "-j");
  CHECK(q("2*i") == Rational(2) * qi);
  CHECK(q("k+1") == one + qk);
  CHECK_THROWS_AS(q("1+"), Error);
  CHECK_THROWS_AS(q("x"), Error);
  CHECK(QuaternionAlgebra::parse("-1,-1") == H);
  CHECK(QuaternionAlgebra::parse("-1,3")->to_string() == "-1,3");
}

TEST_CASE("split algebra raises zero divisors") {
  const auto S = QuaternionAlgebra::make(-1, 1);
  const Quaternion e(S, 1, 0, 1);  // 1 + j with j^2 = 1
  CHECK(e.nrd() == 0);
  CHECK_THROWS_AS(inverse(e), Error);
  try {
    (void)inverse(e);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::zero_divisor);
  }
  const Quaternion o(S, 1), z(S);
  CHECK_THROWS_AS(dieudonne_det(Mat2D{e, o, o, o}), Error);
}

TEST_CASE("reduced norm is multiplicative") {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 1000; ++n) {
    const Quaternion a = random_quaternion(H, rng), b = random_quaternion(H, rng);
    CHECK((a * b).nrd() == a.nrd() * b.nrd());
  }
}

TEST_CASE("Dieudonne determinant") {
  const DieudonneDet d1 = dieudonne_det({qi, zero, zero, qj});
  CHECK(d1.value == qk);
  CHECK(d1.nrd == 1);
  CHECK(dieudonne_det(Mat2D::tau(H)).value == one);
  CHECK_FALSE(dieudonne_det({one, one, one, one}).invertible());
  CHECK(in_sl2d(Mat2D::identity(H)));
  CHECK(in_sl2d({qi, zero, zero, qi}));
  CHECK_FALSE(in_sl2d({one + qi, zero, zero, one}));

  std::mt19937_64 rng(11);
  for (int n = 0; n < 1000; ++n) {
    const Mat2D g = random_invertible(H, rng), h = random_invertible(H, rng);
    const Rational dg = dieudonne_det(g).nrd;
    CHECK(dieudonne_det(g * h).nrd == dg * dieudonne_det(h).nrd);
    const Quaternion l = random_nonzero_quaternion(H, rng);
    CHECK(dieudonne_det(g.scaled_left(l)).nrd == l.nrd() * l.nrd() * dg);
    CHECK(dieudonne_det(g.scaled_right(l)).nrd == l.nrd() * l.nrd() * dg);
  }
}

TEST_CASE("centralizer membership") {
  CHECK(centralizer_membership(Mat2D::identity(H)));
  CHECK(centralizer_membership({zero, qj, -qj, zero}));
  // i^2 + i j i^{-1} j = -1 + 1 = 0: not invertible.
  CHECK((qi * qi + qi * qj * inverse(qi) * qj).is_zero());
  CHECK_FALSE(centralizer_membership({qi, qj, -qj, qi}));
  CHECK_FALSE(centralizer_membership({one, one, one, one}));

  std::mt19937_64 rng(3);
  const Mat2D tau = Mat2D::tau(H);
  int members = 0;
  for (int n = 0; n < 600; ++n) {
    const Mat2D g = random_centralizer_element(H, rng);
    REQUIRE(centralizer_membership(g));
    CHECK(g * tau == tau * g);
    CHECK(in_sl2d(g));
    ++members;
    const Mat2D h = random_invertible(H, rng);
    if (centralizer_membership(h)) CHECK(h * tau == tau * h);
  }
  CHECK(members == 600);
}

TEST_CASE("condition 1 + a^2") {
  CHECK(condition_1_plus_a2(qi).verdict == Condition::fails_zero);
  const ConditionReport c1 = condition_1_plus_a2(one + qi);
  CHECK(c1.verdict == Condition::fails);
  CHECK(c1.value == one + Rational(2) * qi);
  CHECK(c1.nrd == 5);
  const ConditionReport c2 = condition_1_plus_a2(Rational(2) * qi);
  CHECK(c2.verdict == Condition::holds);
  CHECK(c2.value == Quaternion(H, -3));
  CHECK(c2.nrd == 9);
  CHECK(condition_1_plus_a2(Rational(2) * qi, DGroupMode::PSL).verdict == Condition::holds);
  for (int t = 1; t < 20; ++t) CHECK(condition_1_plus_a2(Quaternion(H, Rational(t, 3))).verdict == Condition::holds);
  CHECK_THROWS_AS(condition_1_plus_a2(zero), Error);

  const auto report = hua_in_H_corollary_check({Rational(2) * qi, one + qi, Quaternion(H, 5)});
  REQUIRE(report.size() == 3);
  CHECK(report[0].condition.verdict == Condition::holds);
  CHECK(report[1].condition.verdict == Condition::fails);
  CHECK(report[2].condition.verdict == Condition::holds);
}

TEST_CASE("pr_dtr witnesses") {
  // (1, 1): s = 2, r = 2, Nrd(c) = 1/2.
  const PrDtrWitness w = pr_dtr_witness(one, one);
  CHECK(w.r == 2);
  CHECK(w.c.nrd() == Rational(1, 2));
  CHECK(centralizer_membership(w.g));
  CHECK(w.g.apply(one, one).second.is_zero());
  CHECK(w.z == w.c * Quaternion(H, 2));

  const PrDtrWitness wi = pr_dtr_witness(qi, qi);
  CHECK(centralizer_membership(wi.g));
  CHECK(wi.g.apply(qi, qi).first == wi.z);

  // a^{-1} b = i makes 1 + (a^{-1} b)^2 vanish.
  try {
    (void)pr_dtr_witness(one, qi);
    FAIL("expected no_witness");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_witness);
  }
  // a^{-1} b = 1 + i: norm 5 is no square.
  try {
    (void)pr_dtr_witness(one, one + qi);
    FAIL("expected no_witness");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_witness);
  }
  // Height 0 leaves only c = 0.
  try {
    (void)pr_dtr_witness(one, one, 0);
    FAIL("expected search_exhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::search_exhausted);
  }

  const auto c = quaternion_of_norm(H, Rational(7, 3));
  REQUIRE(c.has_value());
  CHECK(c->nrd() == Rational(7, 3));
}

TEST_CASE("M(D) pointwise identities") {
  const Quaternion a = q("1+2i-j"), b = q("3-k");
  CHECK(moufang_d::hua(a, b) == DPoint(a * b * a));
  CHECK(moufang_d::hua(a, b) != DPoint(a * a * b));  // D is not commutative
  CHECK(moufang_d::hua(a, zero) == DPoint(zero));
  CHECK(moufang_d::hua(a, std::nullopt) == std::nullopt);
  CHECK(moufang_d::mu(a, zero) == std::nullopt);
  CHECK(moufang_d::mu(a, std::nullopt) == DPoint(zero));
  CHECK(moufang_d::mu(a, b) == DPoint(-(a * inverse(b) * a)));
  CHECK(moufang_d::tau(H, DPoint(one)) == DPoint(-one));

  // Anti-automorphism branch: x -> eps conj(x) with eps rational.
  std::vector<Quaternion> pts{a, b, qi, qj + qk, q("1/2+1/3j")};
  for (const auto& phi : {conjugation_flip(one), conjugation_flip(Quaternion(H, -2))}) {
    CHECK(flip_on_samples(phi, pts));
    for (const auto& x : pts)
      for (const auto& y : pts) CHECK(main_identity_at(phi, x, y));
  }
  // Automorphism branch: sigma = conjugation by u, eps = u^{-2}.
  const SkewAdditiveMap inner = inner_flip(q("1+i"));
  CHECK(flip_on_samples(inner, pts));
  for (const auto& x : pts) CHECK(main_identity_at(inner, x, b));
  CHECK_THROWS_AS(conjugation_flip(qi), Error);
}

TEST_CASE("seeded suite") {
  const QuaternionSuite s = run_quaternion_suite(H, 300, 1);
  CHECK(s.ok());
  CHECK(s.det_multiplicative.total == 300);
  CHECK(s.members_sampled > 50);
  CHECK(s.witness_verified.total > 50);
  CHECK(s.witness_no > 10);
  CHECK(s.hand_cases.total == 10);
  const QuaternionSuite again = run_quaternion_suite(H, 300, 1);
  CHECK(again.members_sampled == s.members_sampled);
  CHECK(again.witness_no == s.witness_no);

  const QuaternionSuite other = run_quaternion_suite(QuaternionAlgebra::make(-1, -3), 100, 2);
  CHECK(other.ok());
  CHECK(other.hand_cases.total == 0);
}
