#pragma once

#include "flipbench/galois_field.hpp"
#include "flipbench/rational.hpp"

#include <compare>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace flipbench {

// ---------------------------------------------------------------------------
// Q(sqrt d)

/// x + y*sqrt(d). `d` doubles as the owner tag.
struct QuadElem {
  std::int64_t d = -1;
  Rational x, y;

  friend bool operator==(const QuadElem&, const QuadElem&) = default;
  friend std::strong_ordering operator<=>(const QuadElem& a, const QuadElem& b) {
    if (a.x != b.x) return a.x < b.x ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.y != b.y) return a.y < b.y ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

QuadElem operator+(const QuadElem& a, const QuadElem& b);
QuadElem operator-(const QuadElem& a, const QuadElem& b);
QuadElem operator-(const QuadElem& a);
QuadElem operator*(const QuadElem& a, const QuadElem& b);
QuadElem inverse(const QuadElem& a);
QuadElem operator/(const QuadElem& a, const QuadElem& b);
inline QuadElem zero_like(const QuadElem& a) { return {a.d, 0, 0}; }
inline QuadElem one_like(const QuadElem& a) { return {a.d, 1, 0}; }
inline bool is_zero(const QuadElem& a) { return a.x == 0 && a.y == 0; }
std::string to_string(const QuadElem& a);

bool is_squarefree(std::int64_t d);

class QuadraticField {
 public:
  explicit QuadraticField(std::int64_t d);
  [[nodiscard]] std::int64_t d() const noexcept { return d_; }
  [[nodiscard]] QuadElem make(Rational x, Rational y = 0) const { return {d_, std::move(x), std::move(y)}; }
  [[nodiscard]] QuadElem zero() const { return make(0); }
  [[nodiscard]] QuadElem one() const { return make(1); }
  /// `3/2`, `1+2*sqrt(-1)`, `-sqrt(-1)`, `1/2-3/4*sqrt(-2)`.
  [[nodiscard]] QuadElem parse(std::string_view text) const;
  [[nodiscard]] std::string spec_string() const;

 private:
  std::int64_t d_;
};

class RationalField {
 public:
  [[nodiscard]] Rational zero() const { return 0; }
  [[nodiscard]] Rational one() const { return 1; }
  [[nodiscard]] Rational parse(std::string_view text) const { return parse_rational(text); }
  [[nodiscard]] std::string spec_string() const { return "Q"; }
};

// ---------------------------------------------------------------------------
// Automorphisms of order <= 2

class FieldAut {
 public:
  enum class Kind { identity, frobenius, conjugation };

  static FieldAut identity() noexcept { return FieldAut(Kind::identity, 0); }
  /// x -> x^(p^k)
  static FieldAut frobenius(unsigned k) noexcept { return k == 0 ? identity() : FieldAut(Kind::frobenius, k); }
  /// sqrt(d) -> -sqrt(d)
  static FieldAut conjugation() noexcept { return FieldAut(Kind::conjugation, 0); }
  /// `id`, `frob`, `frob^k`, `conj`
  static FieldAut parse(std::string_view text);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] unsigned power() const noexcept { return k_; }
  [[nodiscard]] bool is_identity() const noexcept { return kind_ == Kind::identity; }
  [[nodiscard]] std::string to_string() const;

  friend bool operator==(const FieldAut&, const FieldAut&) = default;

 private:
  FieldAut(Kind kind, unsigned k) noexcept : kind_(kind), k_(k) {}
  Kind kind_;
  unsigned k_;
};

/// Throws invalid_argument unless sigma is an automorphism of order 1 or 2 of F.
/// Returns the canonical form (frob^k with k mod n == 0 becomes id).
FieldAut validate_aut(const GaloisField& f, FieldAut sigma);
FieldAut validate_aut(const RationalField& f, FieldAut sigma);
FieldAut validate_aut(const QuadraticField& f, FieldAut sigma);

/// Validation against the field an element belongs to.
inline FieldAut validate_aut_for(const GFElem& x, FieldAut sigma) { return validate_aut(*x.field, sigma); }
inline FieldAut validate_aut_for(const Rational&, FieldAut sigma) { return validate_aut(RationalField{}, sigma); }
FieldAut validate_aut_for(const QuadElem& x, FieldAut sigma);

/// Every automorphism of F_q of order <= 2: id, plus frob^(n/2) when n is even.
std::vector<FieldAut> involutive_automorphisms(const GaloisField& f);

GFElem apply_aut(const FieldAut& sigma, GFElem x);
Rational apply_aut(const FieldAut& sigma, const Rational& x);
QuadElem apply_aut(const FieldAut& sigma, const QuadElem& x);

/// N(x) = x * sigma(x)
template <class T>
T norm(const T& x, const FieldAut& sigma) {
  return x * apply_aut(sigma, x);
}

// ---------------------------------------------------------------------------
// Field specs: `Fq:p^n/modulus=c0,c1,...`, `Q`, `Q(sqrt:d)`

struct FieldSpec {
  struct PrimePower {
    std::uint32_t p = 2;
    unsigned n = 1;
    std::vector<std::uint32_t> modulus;  // low coefficient first, monic
  };
  struct Rationals {};
  struct QuadraticRationals {
    std::int64_t d = -1;
  };

  std::variant<PrimePower, Rationals, QuadraticRationals> kind;

  static FieldSpec parse(std::string_view text);
  static FieldSpec finite(std::uint64_t q);
  [[nodiscard]] std::string to_string() const;
  [[nodiscard]] bool is_finite() const noexcept { return std::holds_alternative<PrimePower>(kind); }
};

using AnyField = std::variant<std::shared_ptr<const GaloisField>, RationalField, QuadraticField>;
AnyField make_field(const FieldSpec& spec);

}  // namespace flipbench
