#pragma once

#include "flipbench/quaternion.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace flipbench {

// The abelianisation D*/[D*,D*] is represented by the reduced norm: x is a
// commutator product iff Nrd(x) = 1, and x lies in (D*)^2 [D*,D*] iff Nrd(x)
// is the square of a reduced norm. This is faithful because SK_1 vanishes for
// quaternion algebras over Q. By the norm theorem Nrd(D*) is Q>0 for definite
// algebras and Q* otherwise, so either way the second test is "Nrd(x) is a
// rational square".

struct Mat2D {
  Quaternion a, b, c, d;

  static Mat2D identity(const Quaternion::Algebra& alg);
  /// [[0, 1], [-1, 0]].
  static Mat2D tau(const Quaternion::Algebra& alg);

  friend Mat2D operator*(const Mat2D& g, const Mat2D& h);
  friend bool operator==(const Mat2D& g, const Mat2D& h) = default;
  /// g (u, v)^T.
  [[nodiscard]] std::pair<Quaternion, Quaternion> apply(const Quaternion& u, const Quaternion& v) const;
  [[nodiscard]] Mat2D scaled_left(const Quaternion& l) const;
  [[nodiscard]] Mat2D scaled_right(const Quaternion& l) const;
};

std::string to_string(const Mat2D& g);

struct DieudonneDet {
  Quaternion value;  // ad - a c a^{-1} b, or -cb when a = 0
  Rational nrd;      // class representative; 0 means g is not invertible
  [[nodiscard]] bool invertible() const { return nrd != 0; }
};

DieudonneDet dieudonne_det(const Mat2D& g);
bool in_sl2d(const Mat2D& g);

/// g = [[x, y], [-y, x]] with Nrd(x^2 + x y x^{-1} y) = 1 (Nrd(y^2) = 1 when x = 0).
bool centralizer_membership(const Mat2D& g);

/// Nrd(x) is a nonzero rational square.
bool in_squares_times_commutators(const Quaternion& x);

enum class Condition { holds, fails, fails_zero };
std::string_view to_string(Condition c);

struct ConditionReport {
  Condition verdict = Condition::fails;
  Quaternion value;  // 1 + q^2
  Rational nrd;
};

/// 1 + q^2 in (D*)^2 [D*,D*]. The PSL variant allows a factor -1, which has
/// reduced norm 1 and so gives the same verdict.
enum class DGroupMode { SL, PSL };
ConditionReport condition_1_plus_a2(const Quaternion& q, DGroupMode mode = DGroupMode::SL);

struct PrDtrWitness {
  Mat2D g;
  Quaternion c;
  Quaternion z;
  Rational r;  // Nrd(b^-2 + b^-1 a^-1 b a^-1) = r^2 and Nrd(c) = 1/r
};

/// g = [[c b^-1, c a^-1], [-c a^-1, c b^-1]] with g (a, b)^T = (z, 0)^T.
/// Throws no_witness when Nrd(b^-2 + b^-1 a^-1 b a^-1) is not a nonzero square
/// and search_exhausted when no c of the given height has the right norm.
/// Both postconditions are checked before returning.
PrDtrWitness pr_dtr_witness(const Quaternion& a, const Quaternion& b, unsigned height = 50);

/// Some c with Nrd(c) = target, c = v / den(target) with integer |v_i| <= height.
std::optional<Quaternion> quaternion_of_norm(const Quaternion::Algebra& alg, const Rational& target,
                                             unsigned height = 50);

struct CorollarySample {
  Quaternion a;
  ConditionReport condition;
};
/// Per sample a: does 1 + a^2 lie in (D*)^2 [D*,D*]?
std::vector<CorollarySample> hua_in_H_corollary_check(const std::vector<Quaternion>& samples);

// ---------------------------------------------------------------------------
// M(D) sampled pointwise: X = D u {inf} with tau(x) = -x^{-1}.

/// nullopt stands for inf.
using DPoint = std::optional<Quaternion>;

namespace moufang_d {
DPoint tau(const Quaternion::Algebra& alg, const DPoint& x);
DPoint add(const DPoint& x, const Quaternion& a);
/// x h_a = ((x tau + a) tau^{-1} - a tau^{-1}) tau - (-(a tau^{-1})) tau.
DPoint hua(const Quaternion& a, const DPoint& x);
/// x gamma_a = (x tau^{-1} + a) tau.
DPoint gamma(const Quaternion& a, const DPoint& x);
/// mu_a = gamma_{(-a) tau^{-1}} alpha_a gamma_{a tau^{-1}}^{-1}.
DPoint mu(const Quaternion& a, const DPoint& x);
}  // namespace moufang_d

/// An additive bijection of D with its inverse.
struct SkewAdditiveMap {
  std::string name;
  std::function<Quaternion(const Quaternion&)> map;
  std::function<Quaternion(const Quaternion&)> inverse;
};

/// x -> eps sigma(x) for an automorphism or anti-automorphism sigma.
SkewAdditiveMap eps_twist(const Quaternion& eps, std::string sigma_name,
                          std::function<Quaternion(const Quaternion&)> sigma,
                          std::function<Quaternion(const Quaternion&)> sigma_inv);
/// sigma(x) = x-bar.
SkewAdditiveMap conjugation_flip(const Quaternion& eps);
/// sigma(x) = u x u^{-1}, eps = u^{-2}.
SkewAdditiveMap inner_flip(const Quaternion& u);

/// (phi tau)^2 fixes every sample point (0 and inf are always included).
bool flip_on_samples(const SkewAdditiveMap& phi, const std::vector<Quaternion>& samples);
/// g_{a phi} = phi h_a phi at x, with g_c = tau^{-1} mu_c.
bool main_identity_at(const SkewAdditiveMap& phi, const Quaternion& a, const DPoint& x);

// ---------------------------------------------------------------------------
// Seeded sampling

/// Components p/q with |p| <= height and 1 <= q <= max_den.
Quaternion random_quaternion(const Quaternion::Algebra& alg, std::mt19937_64& rng, int height = 4, int max_den = 2);
Quaternion random_nonzero_quaternion(const Quaternion::Algebra& alg, std::mt19937_64& rng, int height = 4,
                                     int max_den = 2);
Mat2D random_invertible(const Quaternion::Algebra& alg, std::mt19937_64& rng, int height = 3);
/// A product of rotations [[c, s], [-s, c]] (c^2 + s^2 = 1) and scalar units u I with Nrd(u) = 1.
Mat2D random_centralizer_element(const Quaternion::Algebra& alg, std::mt19937_64& rng);

struct PassCount {
  std::size_t passed = 0;
  std::size_t total = 0;
  [[nodiscard]] bool all() const noexcept { return passed == total; }
  void record(bool ok) {
    ++total;
    if (ok) ++passed;
  }
};

struct QuaternionSuite {
  std::string algebra;
  std::uint64_t seed = 0;
  PassCount nrd_multiplicative;
  PassCount det_multiplicative;
  PassCount det_scaling;
  PassCount membership_iff_commuting;
  std::size_t members_sampled = 0;
  PassCount witness_verified;
  std::size_t witness_no = 0;
  std::size_t witness_exhausted = 0;
  PassCount witness_matches_condition;
  PassCount hand_cases;
  PassCount moufang_pointwise;
  [[nodiscard]] bool ok() const noexcept {
    return nrd_multiplicative.all() && det_multiplicative.all() && det_scaling.all() &&
           membership_iff_commuting.all() && witness_verified.all() && witness_matches_condition.all() &&
           hand_cases.all() && moufang_pointwise.all();
  }
};

/// `samples` pairs for each property check.
QuaternionSuite run_quaternion_suite(const Quaternion::Algebra& alg, std::size_t samples, std::uint64_t seed);

}  // namespace flipbench
