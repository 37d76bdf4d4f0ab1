#include "flipbench/quaternion.hpp"

#include "flipbench/error.hpp"

#include <cctype>

namespace flipbench {

std::shared_ptr<const QuaternionAlgebra> QuaternionAlgebra::hamilton() {
  static const auto h = std::make_shared<const QuaternionAlgebra>();
  return h;
}

std::shared_ptr<const QuaternionAlgebra> QuaternionAlgebra::make(Rational a, Rational b) {
  if (a == 0 || b == 0) throw Error(ErrorCode::invalid_argument, "quaternion structure constants must be nonzero");
  if (a == -1 && b == -1) return hamilton();
  auto alg = std::make_shared<QuaternionAlgebra>();
  alg->a = std::move(a);
  alg->b = std::move(b);
  alg->division_guaranteed = false;
  return alg;
}

std::shared_ptr<const QuaternionAlgebra> QuaternionAlgebra::parse(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos)
    throw Error(ErrorCode::parse_error, "expected 'a,b', got '" + std::string(text) + "'");
  return make(parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1)));
}

std::string QuaternionAlgebra::to_string() const {
  return flipbench::to_string(a) + "," + flipbench::to_string(b);
}

Quaternion::Quaternion(Algebra alg, Rational w, Rational x, Rational y, Rational z)
    : alg_(std::move(alg)), w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (!alg_) throw Error(ErrorCode::invalid_argument, "quaternion without an algebra");
}

namespace {

void require_same_algebra(const Quaternion& p, const Quaternion& q) {
  if (p.algebra() != q.algebra() && (p.algebra()->a != q.algebra()->a || p.algebra()->b != q.algebra()->b))
    throw Error(ErrorCode::mismatched_owner, "quaternions from different algebras");
}

}  // namespace

Quaternion Quaternion::conj() const { return Quaternion(alg_, w_, -x_, -y_, -z_); }

Rational Quaternion::nrd() const {
  const Rational& a = alg_->a;
  const Rational& b = alg_->b;
  return w_ * w_ - a * x_ * x_ - b * y_ * y_ + a * b * z_ * z_;
}

Quaternion operator+(const Quaternion& p, const Quaternion& q) {
  require_same_algebra(p, q);
  return Quaternion(p.alg_, p.w_ + q.w_, p.x_ + q.x_, p.y_ + q.y_, p.z_ + q.z_);
}

Quaternion operator-(const Quaternion& p, const Quaternion& q) {
  require_same_algebra(p, q);
  return Quaternion(p.alg_, p.w_ - q.w_, p.x_ - q.x_, p.y_ - q.y_, p.z_ - q.z_);
}

Quaternion operator-(const Quaternion& p) { return Quaternion(p.alg_, -p.w_, -p.x_, -p.y_, -p.z_); }

Quaternion operator*(const Quaternion& p, const Quaternion& q) {
  require_same_algebra(p, q);
  const Rational& a = p.alg_->a;
  const Rational& b = p.alg_->b;
  return Quaternion(p.alg_,
                    p.w_ * q.w_ + a * p.x_ * q.x_ + b * p.y_ * q.y_ - a * b * p.z_ * q.z_,
                    p.w_ * q.x_ + p.x_ * q.w_ - b * p.y_ * q.z_ + b * p.z_ * q.y_,
                    p.w_ * q.y_ + p.y_ * q.w_ + a * p.x_ * q.z_ - a * p.z_ * q.x_,
                    p.w_ * q.z_ + p.z_ * q.w_ + p.x_ * q.y_ - p.y_ * q.x_);
}

Quaternion operator*(const Rational& r, const Quaternion& q) {
  return Quaternion(q.alg_, r * q.w_, r * q.x_, r * q.y_, r * q.z_);
}

bool operator==(const Quaternion& p, const Quaternion& q) {
  return p.w_ == q.w_ && p.x_ == q.x_ && p.y_ == q.y_ && p.z_ == q.z_ &&
         (p.alg_ == q.alg_ || (p.alg_->a == q.alg_->a && p.alg_->b == q.alg_->b));
}

Quaternion inverse(const Quaternion& q) {
  if (q.is_zero()) throw Error(ErrorCode::division_by_zero, "inverse of quaternion zero");
  const Rational n = q.nrd();
  if (n == 0) throw Error(ErrorCode::zero_divisor, to_string(q) + " has reduced norm 0 in (" + q.algebra()->to_string() + ")");
  return inverse(n) * q.conj();
}

std::string to_string(const Quaternion& q) {
  std::string out;
  const auto term = [&](const Rational& c, const char* unit) {
    if (c == 0) return;
    std::string coef;
    if (*unit && (c == 1 || c == -1))
      coef = c == 1 ? "" : "-";
    else
      coef = to_string(c);
    if (!out.empty() && coef.front() != '-') out += '+';
    out += coef + unit;
  };
  term(q.w(), "");
  term(q.x(), "i");
  term(q.y(), "j");
  term(q.z(), "k");
  return out.empty() ? "0" : out;
}

Quaternion parse_quaternion(const Quaternion::Algebra& alg, std::string_view text) {
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty quaternion literal");
  Rational c[4] = {0, 0, 0, 0};
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = pos + 1;
    while (end < text.size() && text[end] != '+' && text[end] != '-') ++end;
    std::string_view t = text.substr(pos, end - pos);
    pos = end;
    bool neg = false;
    if (!t.empty() && (t.front() == '+' || t.front() == '-')) {
      neg = t.front() == '-';
      t.remove_prefix(1);
    }
    if (t.empty()) throw Error(ErrorCode::parse_error, "dangling sign in '" + std::string(text) + "'");
    int slot = 0;
    const char last = t.back();
    if (last == 'i' || last == 'j' || last == 'k') {
      slot = last == 'i' ? 1 : last == 'j' ? 2 : 3;
      t.remove_suffix(1);
      if (!t.empty() && t.back() == '*') t.remove_suffix(1);
    }
    const Rational v = t.empty() && slot != 0 ? Rational(1) : parse_rational(t);
    c[slot] += neg ? Rational(-v) : v;
  }
  return Quaternion(alg, c[0], c[1], c[2], c[3]);
}

}  // namespace flipbench
