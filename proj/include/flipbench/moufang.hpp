#pragma once

#include "flipbench/flips.hpp"
#include "flipbench/galois_field.hpp"
#include "flipbench/perm.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flipbench {

// Permutations act on the right throughout this header: x(gh) = (xg)h, which
// is what compose(g, h) computes. Conjugation is g^h = h^{-1} g h.

/// A finite group on {0, ..., n-1} with identity 0, written additively but not
/// assumed abelian.
struct FiniteGroupU {
  std::uint32_t n = 1;
  std::vector<std::uint32_t> add;  // add[a * n + b] = a + b
  std::vector<std::uint32_t> neg;
  std::function<std::string(std::uint32_t)> name;

  /// (F_q, +) with element indices as labels.
  static FiniteGroupU additive(const GaloisField& f);
  [[nodiscard]] std::uint32_t plus(std::uint32_t a, std::uint32_t b) const { return add[std::size_t(a) * n + b]; }
};

/// Permutation of X = U u {inf}, where inf is the index n.
using XPerm = Perm;

class MoufangSet {
 public:
  /// Throws invalid_argument unless tau is a permutation of X swapping 0 and inf.
  MoufangSet(FiniteGroupU u, XPerm tau);

  [[nodiscard]] const FiniteGroupU& group() const noexcept { return u_; }
  [[nodiscard]] std::uint32_t infinity() const noexcept { return u_.n; }
  [[nodiscard]] std::size_t points() const noexcept { return std::size_t(u_.n) + 1; }
  [[nodiscard]] const XPerm& tau() const noexcept { return tau_; }
  [[nodiscard]] const XPerm& tau_inverse() const noexcept { return tau_inv_; }
  [[nodiscard]] bool tau_involutory() const { return tau_ == tau_inv_; }

  /// a + b with inf absorbing on either side.
  [[nodiscard]] std::uint32_t plus(std::uint32_t a, std::uint32_t b) const;
  [[nodiscard]] std::uint32_t minus(std::uint32_t a) const;

  [[nodiscard]] XPerm alpha(std::uint32_t a) const;
  [[nodiscard]] XPerm gamma(std::uint32_t a) const;
  /// h_a = tau alpha_a tau^{-1} alpha_{-(a tau^{-1})} tau alpha_{-((-(a tau^{-1})) tau)}.
  [[nodiscard]] XPerm hua(std::uint32_t a) const;
  /// mu_a = gamma_{(-a) tau^{-1}} alpha_a gamma_{a tau^{-1}}^{-1}.
  [[nodiscard]] XPerm mu(std::uint32_t a) const;
  /// g_a = tau^{-1} mu_a.
  [[nodiscard]] XPerm opposite_hua(std::uint32_t a) const;

  /// U_inf = {alpha_a}, U_0 = {gamma_a}, U_a = U_0^{alpha_a}; sorted.
  [[nodiscard]] std::vector<XPerm> root_group(std::uint32_t x) const;
  /// <U_inf, U_0> by breadth-first closure. Throws closure_cap_exceeded.
  [[nodiscard]] std::vector<XPerm> little_projective_group(std::size_t cap = 1000000) const;

  /// Element label, or "inf".
  [[nodiscard]] std::string format(std::uint32_t x) const;

 private:
  void require_nonzero(std::uint32_t a, const char* what) const;

  FiniteGroupU u_;
  XPerm tau_, tau_inv_;
};

/// M(F_q): U = (F_q, +) and tau(x) = -1/x, extended by 0 <-> inf.
MoufangSet moufang_of_field(const GaloisField& f);
/// `M(Fq:7)` and friends; the inner text is any finite field spec.
std::shared_ptr<const GaloisField> parse_moufang_spec(std::string_view text);

/// (M, e) realised as M(U, mu_{-e}); its Hua maps are tau mu_a with that tau.
class PointedMoufangSet {
 public:
  PointedMoufangSet(const MoufangSet& base, std::uint32_t e);

  [[nodiscard]] const MoufangSet& set() const noexcept { return set_; }
  [[nodiscard]] std::uint32_t e() const noexcept { return e_; }
  [[nodiscard]] const XPerm& tau() const noexcept { return set_.tau(); }
  [[nodiscard]] XPerm hua(std::uint32_t a) const;
  [[nodiscard]] XPerm opposite_hua(std::uint32_t a) const;
  /// h_b^{(a)} = h_a^{-1} h_b.
  [[nodiscard]] XPerm isotope_hua(std::uint32_t a, std::uint32_t b) const;

 private:
  MoufangSet set_;
  std::uint32_t e_;
};

/// phi on U extended by inf -> inf.
XPerm extend_to_x(const Perm& phi);
bool is_group_automorphism(const FiniteGroupU& u, const Perm& phi);
/// Table of an additive map of F_q as a permutation of U.
Perm perm_of(const GaloisField& f, const AdditiveMap& phi);

/// (phi tau)^2 = 1. Throws not_an_automorphism if phi is not in Aut(U).
bool is_flip_automorphism(const MoufangSet& m, const Perm& phi);

/// Elements e of U* with mu_{-e} = tau.
std::vector<std::uint32_t> identity_elements(const MoufangSet& m);

struct FlipExtension {
  bool beta_involutory = true;
  bool alpha_to_gamma = true;      // chi(alpha_a) = gamma_{a phi}
  bool gamma_to_alpha = true;      // chi(gamma_a) = alpha_{a phi^{-1}}
  bool chi_involutory = true;      // on the generators of G
  bool beta_in_aut = true;         // chi(U_x) = U_{x beta} for all x
  bool main_identity = true;       // g_{a phi} = phi h_a phi
  std::optional<std::uint32_t> identity_element;
  std::optional<bool> structure_identity;  // h_a phi = phi h^{(e phi)}_{a phi}, when e exists
  std::vector<std::string> counterexamples;
  [[nodiscard]] bool ok() const noexcept {
    return beta_involutory && alpha_to_gamma && gamma_to_alpha && chi_involutory && beta_in_aut && main_identity &&
           structure_identity.value_or(true);
  }
};

/// Verifies that conjugation by beta = phi tau realises theta_phi. Throws not_a_flip.
FlipExtension flip_extends_check(const MoufangSet& m, const Perm& phi);

struct FlipClassificationM {
  std::size_t candidates = 0;
  std::vector<AdditiveMap> observed;
  std::vector<PredictedFlip> predicted;
  bool match = false;
};

/// Every additive automorphism of F_q filtered by (phi tau)^2 = 1, against
/// {x -> eps x^sigma : sigma^2 = 1, eps in Fix(sigma)*}.
FlipClassificationM classify_flips_commutative(const GaloisField& f, std::size_t max_matrices = 1u << 22);

struct ObviousFlip {
  bool transitive = false;
  std::optional<std::uint32_t> fixed_point;
  std::vector<std::vector<std::uint32_t>> orbits;
  std::size_t centralizer_order = 0;
  std::size_t group_order = 0;
};

/// Orbits of C_G(tau) on X. Throws tau_not_involutory.
ObviousFlip obvious_flip_transitive(const MoufangSet& m, std::size_t cap = 1000000);

struct AxiomReport {
  bool fixes_point = true;
  bool regular = true;
  bool permutes_root_groups = true;
  [[nodiscard]] bool ok() const noexcept { return fixes_point && regular && permutes_root_groups; }
};

AxiomReport verify_moufang_axioms(const MoufangSet& m);

// ---------------------------------------------------------------------------
// Identity suite for M(F_q)

struct IdentityCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::optional<std::string> counterexample;
};

struct IdentitySuite {
  std::string field;
  std::vector<IdentityCheck> checks;
  [[nodiscard]] bool ok() const noexcept {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

struct SuiteOptions {
  /// H = Stab_G(0, inf) is compared only up to this q.
  std::uint32_t hua_subgroup_max_q = 9;
  /// The SL_2 side of the phi <-> theta_phi comparison is skipped above this q.
  std::uint32_t phitau_max_q = 9;
};

IdentitySuite verify_identities(const GaloisField& f, const SuiteOptions& opts = {});

}  // namespace flipbench
