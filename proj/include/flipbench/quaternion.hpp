#pragma once

#include "flipbench/rational.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace flipbench {

/// (a, b)_Q: i^2 = a, j^2 = b, ij = k = -ji.
struct QuaternionAlgebra {
  Rational a{-1};
  Rational b{-1};
  /// Set for presets known to be division algebras. Other parameters are
  /// accepted; a nonzero element of norm zero then raises zero_divisor.
  bool division_guaranteed = true;

  static std::shared_ptr<const QuaternionAlgebra> hamilton();
  static std::shared_ptr<const QuaternionAlgebra> make(Rational a, Rational b);
  /// `a,b`, e.g. `-1,-1`.
  static std::shared_ptr<const QuaternionAlgebra> parse(std::string_view text);
  [[nodiscard]] bool definite() const { return a < 0 && b < 0; }
  [[nodiscard]] std::string to_string() const;
};

class Quaternion {
 public:
  using Algebra = std::shared_ptr<const QuaternionAlgebra>;

  explicit Quaternion(Algebra alg, Rational w = 0, Rational x = 0, Rational y = 0, Rational z = 0);

  [[nodiscard]] const Algebra& algebra() const noexcept { return alg_; }
  [[nodiscard]] const Rational& w() const noexcept { return w_; }
  [[nodiscard]] const Rational& x() const noexcept { return x_; }
  [[nodiscard]] const Rational& y() const noexcept { return y_; }
  [[nodiscard]] const Rational& z() const noexcept { return z_; }

  [[nodiscard]] Quaternion conj() const;
  /// w^2 - a x^2 - b y^2 + ab z^2.
  [[nodiscard]] Rational nrd() const;
  [[nodiscard]] bool is_zero() const { return w_ == 0 && x_ == 0 && y_ == 0 && z_ == 0; }
  [[nodiscard]] bool is_scalar() const { return x_ == 0 && y_ == 0 && z_ == 0; }
  [[nodiscard]] Quaternion scalar(const Rational& r) const { return Quaternion(alg_, r); }

  friend Quaternion operator+(const Quaternion& p, const Quaternion& q);
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q);
  friend Quaternion operator-(const Quaternion& p);
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q);
  friend Quaternion operator*(const Rational& r, const Quaternion& q);
  friend bool operator==(const Quaternion& p, const Quaternion& q);

 private:
  Algebra alg_;
  Rational w_, x_, y_, z_;
};

/// Throws division_by_zero for 0 and zero_divisor for a nonzero element of norm 0.
Quaternion inverse(const Quaternion& q);
inline bool is_zero(const Quaternion& q) { return q.is_zero(); }
inline Quaternion zero_like(const Quaternion& q) { return q.scalar(0); }
inline Quaternion one_like(const Quaternion& q) { return q.scalar(1); }

/// `1+i-2j+1/2k`, `0`, `-i`.
std::string to_string(const Quaternion& q);
/// Inverse of to_string; also accepts `3/2*i` and whitespace-free terms in any order.
Quaternion parse_quaternion(const Quaternion::Algebra& alg, std::string_view text);

}  // namespace flipbench
