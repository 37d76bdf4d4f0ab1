#pragma once

#include "flipbench/error.hpp"

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace flipbench {

class GaloisField;

/// An element of F_q encoded by its coefficient vector over F_p read as a
/// base-p integer: c0 + c1 p + ... + c_{n-1} p^{n-1}. The encoding is the
/// canonical representation, and index order is the fixed total element order
/// (lexicographic on (c_{n-1}, ..., c0)).
///
/// Elements hold a non-owning pointer to their field; the field must outlive them.
struct GFElem {
  const GaloisField* field = nullptr;
  std::uint32_t index = 0;

  friend bool operator==(const GFElem& x, const GFElem& y) noexcept {
    return x.field == y.field && x.index == y.index;
  }
  friend std::strong_ordering operator<=>(const GFElem& x, const GFElem& y) noexcept {
    return x.index <=> y.index;
  }
};

class GaloisField {
 public:
  /// Prime field F_p.
  explicit GaloisField(std::uint32_t p);
  /// F_p[t]/(modulus); modulus is monic of degree n, given low coefficient first.
  GaloisField(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus);

  GaloisField(const GaloisField&) = delete;
  GaloisField& operator=(const GaloisField&) = delete;

  [[nodiscard]] std::uint32_t characteristic() const noexcept { return p_; }
  [[nodiscard]] unsigned degree() const noexcept { return n_; }
  [[nodiscard]] std::uint32_t order() const noexcept { return q_; }
  [[nodiscard]] const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  [[nodiscard]] GFElem zero() const noexcept { return {this, 0}; }
  [[nodiscard]] GFElem one() const noexcept { return {this, 1}; }
  /// The class of t (the polynomial generator); equals one() reduced for prime fields.
  [[nodiscard]] GFElem generator() const;
  [[nodiscard]] GFElem element(std::uint32_t index) const;
  [[nodiscard]] GFElem from_int(std::int64_t v) const;
  [[nodiscard]] GFElem from_coefficients(const std::vector<std::int64_t>& c) const;
  [[nodiscard]] std::vector<std::uint32_t> coefficients(GFElem x) const;
  /// All q elements in index order.
  [[nodiscard]] std::vector<GFElem> elements() const;
  [[nodiscard]] std::vector<GFElem> nonzero_elements() const;

  [[nodiscard]] std::uint32_t add(std::uint32_t x, std::uint32_t y) const noexcept;
  [[nodiscard]] std::uint32_t sub(std::uint32_t x, std::uint32_t y) const noexcept;
  [[nodiscard]] std::uint32_t neg(std::uint32_t x) const noexcept;
  [[nodiscard]] std::uint32_t mul(std::uint32_t x, std::uint32_t y) const noexcept;
  /// Throws division_by_zero for x == 0.
  [[nodiscard]] std::uint32_t inv(std::uint32_t x) const;
  /// x -> x^(p^k).
  [[nodiscard]] std::uint32_t frobenius(std::uint32_t x, unsigned k) const noexcept;

  /// `3` for prime fields, `2t^2+t+1` otherwise.
  [[nodiscard]] std::string format(GFElem x) const;
  /// Accepts integers and polynomials in t, e.g. `t`, `-1`, `2t^2+1`, `1+t`.
  [[nodiscard]] GFElem parse(std::string_view text) const;
  /// `Fq:7` or `Fq:3^2/modulus=1,0,1`.
  [[nodiscard]] std::string spec_string() const;

 private:
  void build_tables();
  [[nodiscard]] std::uint32_t encode(const std::vector<std::uint32_t>& c) const noexcept;
  [[nodiscard]] std::uint32_t mul_direct(std::uint32_t x, std::uint32_t y) const noexcept;
  [[nodiscard]] std::uint32_t pow_direct(std::uint32_t x, std::uint64_t e) const noexcept;

  std::uint32_t p_;
  unsigned n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  bool tabled_ = false;
  std::vector<std::uint32_t> add_, mul_, neg_, inv_, frob_;
};

bool is_prime(std::uint64_t n) noexcept;
/// (p, n) with p^n == q, or nullopt-like {0, 0} if q is not a prime power.
std::pair<std::uint32_t, unsigned> prime_power_decomposition(std::uint64_t q) noexcept;
bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic);
/// Built-in default modulus: the first monic irreducible polynomial in
/// coefficient-index order. Tabled for q <= 128, searched above.
std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned n);
/// Shared instance with the default modulus. Thread-safe.
std::shared_ptr<const GaloisField> galois_field(std::uint64_t q);
/// All prime powers 2 <= q <= max_q.
std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t max_q);

void require_same_field(const GFElem& x, const GFElem& y);

inline GFElem operator+(GFElem x, GFElem y) {
  require_same_field(x, y);
  return {x.field, x.field->add(x.index, y.index)};
}
inline GFElem operator-(GFElem x, GFElem y) {
  require_same_field(x, y);
  return {x.field, x.field->sub(x.index, y.index)};
}
inline GFElem operator-(GFElem x) { return {x.field, x.field->neg(x.index)}; }
inline GFElem operator*(GFElem x, GFElem y) {
  require_same_field(x, y);
  return {x.field, x.field->mul(x.index, y.index)};
}
inline GFElem inverse(GFElem x) { return {x.field, x.field->inv(x.index)}; }
inline GFElem operator/(GFElem x, GFElem y) {
  require_same_field(x, y);
  return x * inverse(y);
}
inline GFElem& operator+=(GFElem& x, GFElem y) { return x = x + y; }
inline GFElem& operator*=(GFElem& x, GFElem y) { return x = x * y; }

inline GFElem zero_like(GFElem x) { return x.field->zero(); }
inline GFElem one_like(GFElem x) { return x.field->one(); }
inline bool is_zero(GFElem x) { return x.index == 0; }
std::string to_string(GFElem x);

}  // namespace flipbench
