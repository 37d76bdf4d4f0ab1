#pragma once

#include "flipbench/fields.hpp"
#include "flipbench/norms.hpp"

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flipbench {

/// Row-major 2x2 matrix [[a, b], [c, d]] over a commutative exact field.
template <class T>
struct Mat2 {
  T a, b, c, d;

  friend bool operator==(const Mat2&, const Mat2&) = default;
  /// Lexicographic on (a, b, c, d); the enumeration order.
  friend bool operator<(const Mat2& x, const Mat2& y) {
    if (x.a != y.a) return x.a < y.a;
    if (x.b != y.b) return x.b < y.b;
    if (x.c != y.c) return x.c < y.c;
    return x.d < y.d;
  }
};

template <class T>
Mat2<T> operator*(const Mat2<T>& x, const Mat2<T>& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

template <class T>
Mat2<T> operator-(const Mat2<T>& x) {
  return {-x.a, -x.b, -x.c, -x.d};
}

template <class T>
Mat2<T> scale(const T& s, const Mat2<T>& x) {
  return {s * x.a, s * x.b, s * x.c, s * x.d};
}

template <class T>
T det(const Mat2<T>& x) {
  return x.a * x.d - x.b * x.c;
}

/// GL_2 inverse; throws division_by_zero when singular.
template <class T>
Mat2<T> inverse(const Mat2<T>& x) {
  const T di = inverse(det(x));
  return {x.d * di, -(x.b * di), -(x.c * di), x.a * di};
}

template <class T>
Mat2<T> identity_like(const T& any) {
  return {one_like(any), zero_like(any), zero_like(any), one_like(any)};
}

template <class T>
Mat2<T> diag(const T& x, const T& y) {
  return {x, zero_like(x), zero_like(x), y};
}

/// The standard Weyl representative n_s = [[0, 1], [-1, 0]].
template <class T>
Mat2<T> weyl_s(const T& any) {
  return {zero_like(any), one_like(any), -one_like(any), zero_like(any)};
}

template <class T>
Mat2<T> upper_unipotent(const T& x) {
  return {one_like(x), x, zero_like(x), one_like(x)};
}

template <class T>
Mat2<T> lower_unipotent(const T& x) {
  return {one_like(x), zero_like(x), x, one_like(x)};
}

template <class T>
Mat2<T> apply_aut(const FieldAut& sigma, const Mat2<T>& x) {
  return {apply_aut(sigma, x.a), apply_aut(sigma, x.b), apply_aut(sigma, x.c), apply_aut(sigma, x.d)};
}

template <class T>
bool is_sl2(const Mat2<T>& x) {
  return det(x) == one_like(x.a);
}

template <class T>
bool is_upper(const Mat2<T>& x) {
  return is_zero(x.c);
}

template <class T>
bool is_lower(const Mat2<T>& x) {
  return is_zero(x.b);
}

template <class T>
bool is_diagonal(const Mat2<T>& x) {
  return is_zero(x.b) && is_zero(x.c);
}

/// Canonical representative of {g, -g}: the member whose first nonzero entry
/// in reading order (a, b, c, d) is smaller.
template <class T>
Mat2<T> psl_canonical(const Mat2<T>& g) {
  const Mat2<T> n = -g;
  for (const auto member : {&Mat2<T>::a, &Mat2<T>::b, &Mat2<T>::c, &Mat2<T>::d}) {
    if (is_zero(g.*member)) continue;
    return (n.*member < g.*member) ? n : g;
  }
  return g;
}

template <class T>
std::string to_string(const Mat2<T>& m) {
  return "[[" + to_string(m.a) + "," + to_string(m.b) + "],[" + to_string(m.c) + "," + to_string(m.d) + "]]";
}

/// Parses `[[a,b],[c,d]]` with a caller-supplied element parser.
template <class T>
Mat2<T> parse_matrix(std::string_view text, const std::function<T(std::string_view)>& elem) {
  std::string s;
  for (char ch : text)
    if (ch != ' ') s += ch;
  if (s.size() < 9 || s.substr(0, 2) != "[[" || s.substr(s.size() - 2) != "]]")
    throw Error(ErrorCode::parse_error, "matrix must look like [[a,b],[c,d]]");
  const auto mid = s.find("],[");
  if (mid == std::string::npos) throw Error(ErrorCode::parse_error, "matrix must look like [[a,b],[c,d]]");
  auto split = [&](const std::string& row) -> std::pair<T, T> {
    const auto comma = row.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::parse_error, "matrix row needs two entries");
    return {elem(std::string_view(row).substr(0, comma)), elem(std::string_view(row).substr(comma + 1))};
  };
  const auto [a, b] = split(s.substr(2, mid - 2));
  const auto [c, d] = split(s.substr(mid + 3, s.size() - mid - 5));
  return {a, b, c, d};
}

// ---------------------------------------------------------------------------
// Projective line, column vectors, matrices acting on the left.

template <class T>
struct ProjPoint {
  T x, y;  // canonical: y == 1, or (x, y) == (1, 0)

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend bool operator<(const ProjPoint& p, const ProjPoint& q) {
    if (p.y != q.y) return q.y < p.y;  // (1:0) sorts last
    return p.x < q.x;
  }
};

/// Throws invalid_argument for (0, 0).
template <class T>
ProjPoint<T> make_point(const T& x, const T& y) {
  if (!is_zero(y)) return {x / y, one_like(y)};
  if (is_zero(x)) throw Error(ErrorCode::invalid_argument, "(0:0) is not a projective point");
  return {one_like(x), zero_like(x)};
}

template <class T>
ProjPoint<T> infinity_point(const T& any) {
  return {one_like(any), zero_like(any)};
}

template <class T>
ProjPoint<T> act(const Mat2<T>& g, const ProjPoint<T>& p) {
  return make_point(g.a * p.x + g.b * p.y, g.c * p.x + g.d * p.y);
}

template <class T>
std::string to_string(const ProjPoint<T>& p) {
  return "(" + to_string(p.x) + ":" + to_string(p.y) + ")";
}

/// (x:1) for x in index order, then (1:0).
std::vector<ProjPoint<GFElem>> projective_line(const GaloisField& f);
/// Position of p in projective_line(f).
inline std::uint32_t point_index(const ProjPoint<GFElem>& p) {
  return is_zero(p.y) ? p.x.field->order() : p.x.index;
}

// ---------------------------------------------------------------------------
// Finite group enumeration

inline constexpr std::uint32_t default_max_enumeration_q = 31;

/// Every element of SL_2(F_q) (SL) or one canonical representative per
/// element of PSL_2(F_q) (PSL), in lexicographic order. Throws size_limit
/// above `max_q`.
std::vector<Mat2<GFElem>> enumerate_group(const GaloisField& f, GroupMode mode,
                                          std::uint32_t max_q = default_max_enumeration_q);

inline std::uint64_t group_order(std::uint64_t q, GroupMode mode) {
  const std::uint64_t sl = q * (q * q - 1);
  return (mode == GroupMode::PSL && q % 2 == 1) ? sl / 2 : sl;
}

// ---------------------------------------------------------------------------
// Bruhat and Birkhoff cells

enum class Weyl { one, s };
inline std::string_view to_string(Weyl w) noexcept { return w == Weyl::one ? "1" : "s"; }

/// g = left * (n_s if word == s) * right. For the Bruhat cell both factors are
/// upper triangular; for the Birkhoff cell `left` is upper and `right` lower.
template <class T>
struct Cell {
  Weyl word = Weyl::one;
  Mat2<T> left, right;
};

template <class T>
Mat2<T> recompose(const Cell<T>& cell) {
  if (cell.word == Weyl::one) return cell.left * cell.right;
  return cell.left * weyl_s(cell.left.a) * cell.right;
}

template <class T>
Cell<T> bruhat_decompose(const Mat2<T>& g) {
  if (is_zero(g.c)) return {Weyl::one, g, identity_like(g.a)};
  const T ci = inverse(g.c);
  return {Weyl::s, upper_unipotent(g.a * ci), Mat2<T>{-g.c, -g.d, zero_like(g.a), -ci}};
}

/// B+ w B- cell of g: word one iff g lies in B+B-, which happens iff d != 0.
template <class T>
Cell<T> birkhoff_decompose(const Mat2<T>& g) {
  if (!is_zero(g.d)) {
    const T di = inverse(g.d);
    return {Weyl::one, upper_unipotent(g.b * di), Mat2<T>{di, zero_like(g.a), g.c, g.d}};
  }
  return {Weyl::s, identity_like(g.a), Mat2<T>{-g.c, zero_like(g.a), g.a, -inverse(g.c)}};
}

template <class T>
Weyl birkhoff_codistance(const Mat2<T>& g) {
  return is_zero(g.d) ? Weyl::s : Weyl::one;
}

}  // namespace flipbench
