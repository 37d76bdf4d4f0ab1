#pragma once

#include "flipbench/fields.hpp"
#include "flipbench/norms.hpp"
#include "flipbench/sl2.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace flipbench {

/// theta_{delta,sigma}(X) = [[0, 1], [-1/delta, 0]] X^sigma [[0, -delta], [1, 0]].
///
/// It sends U+(x) to U-(eps x^sigma) with eps = -1/delta, which is how the
/// additive-map parametrisation phi(x) = eps x^sigma lines up with delta.
template <class T>
class Flip {
 public:
  Flip(T delta, FieldAut sigma) : delta_(std::move(delta)), sigma_(validate_aut_for(delta_, sigma)) {
    if (is_zero(delta_)) throw Error(ErrorCode::zero_argument, "flip parameter delta must be nonzero");
    if (apply_aut(sigma_, delta_) != delta_)
      throw Error(ErrorCode::invalid_argument, "delta = " + flipbench::to_string(delta_) + " is not fixed by " +
                                                   sigma_.to_string());
    const T zero = zero_like(delta_), one = one_like(delta_);
    left_ = {zero, one, -inverse(delta_), zero};
    right_ = {zero, -delta_, one, zero};
  }

  [[nodiscard]] const T& delta() const noexcept { return delta_; }
  [[nodiscard]] const FieldAut& sigma() const noexcept { return sigma_; }
  [[nodiscard]] T epsilon() const { return -inverse(delta_); }
  [[nodiscard]] const Mat2<T>& left() const noexcept { return left_; }
  [[nodiscard]] const Mat2<T>& right() const noexcept { return right_; }
  /// `theta:delta=<elem>,sigma=<aut>`
  [[nodiscard]] std::string to_string() const {
    return "theta:delta=" + flipbench::to_string(delta_) + ",sigma=" + sigma_.to_string();
  }

 private:
  T delta_;
  FieldAut sigma_;
  Mat2<T> left_, right_;
};

template <class T>
Mat2<T> apply_flip(const Flip<T>& theta, const Mat2<T>& g) {
  // Expanded product: [[d^s, -delta c^s], [-b^s / delta, a^s]].
  const FieldAut& s = theta.sigma();
  return {apply_aut(s, g.d), -(theta.delta() * apply_aut(s, g.c)), -(apply_aut(s, g.b) / theta.delta()),
          apply_aut(s, g.a)};
}

// ---------------------------------------------------------------------------
// BN-flip verification

struct BnFlipReport {
  bool involution = true;
  bool swaps_borels = true;
  bool centralizes_weyl = true;
  std::string method;
  [[nodiscard]] bool ok() const noexcept { return involution && swaps_borels && centralizes_weyl; }
};

/// Checks an arbitrary map on the given elements: map(map(g)) = g, upper goes
/// to lower and back, and n_s^{-1} map(n_s) is diagonal.
template <class T>
BnFlipReport verify_bn_map(const std::function<Mat2<T>(const Mat2<T>&)>& map, const std::vector<Mat2<T>>& domain,
                           std::string method) {
  BnFlipReport r;
  r.method = std::move(method);
  for (const auto& g : domain) {
    const Mat2<T> img = map(g);
    if (map(img) != g) r.involution = false;
    if (is_upper(g) && !is_lower(img)) r.swaps_borels = false;
    if (is_lower(g) && !is_upper(img)) r.swaps_borels = false;
  }
  if (!domain.empty()) {
    const Mat2<T> ns = weyl_s(domain.front().a);
    r.centralizes_weyl = is_diagonal(inverse(ns) * map(ns));
  }
  return r;
}

/// U+(x), U-(x), diag(x, 1/x) for every sample x, plus n_s.
template <class T>
std::vector<Mat2<T>> generator_sample(const std::vector<T>& samples) {
  std::vector<Mat2<T>> out;
  for (const T& x : samples) {
    out.push_back(upper_unipotent(x));
    out.push_back(lower_unipotent(x));
    if (!is_zero(x)) out.push_back(diag(x, inverse(x)));
  }
  if (!samples.empty()) out.push_back(weyl_s(samples.front()));
  return out;
}

template <class T>
BnFlipReport verify_bn_flip_symbolic(const Flip<T>& theta, const std::vector<T>& samples) {
  return verify_bn_map<T>([&](const Mat2<T>& g) { return apply_flip(theta, g); }, generator_sample(samples),
                          "generators");
}

/// Exhaustive over SL_2(F_q).
BnFlipReport verify_bn_flip(const Flip<GFElem>& theta);

// ---------------------------------------------------------------------------
// Centralizers (finite fields)

enum class CentralizerKind { K, PK };
inline CentralizerKind kind_for(GroupMode m) { return m == GroupMode::SL ? CentralizerKind::K : CentralizerKind::PK; }
enum class Method { formula, brute_force };
inline std::string_view to_string(Method m) { return m == Method::formula ? "formula" : "brute-force"; }

struct CentralizerGroup {
  CentralizerKind kind = CentralizerKind::K;
  /// Elements of SL_2, sorted. PK is the full preimage of the PSL_2 centralizer.
  std::vector<Mat2<GFElem>> elements;
};

/// Solutions of N(u) + delta N(v) = eps (eps = 1 for K, +-1 for PK) as
/// [[eps u^s, delta eps v^s], [-v, u]].
CentralizerGroup centralizer_formula(const Flip<GFElem>& theta, CentralizerKind kind);
/// Filter of the SL_2 enumeration by theta(g) = g (K) or theta(g) = +-g (PK).
/// `group` may pass a precomputed SL_2 enumeration.
CentralizerGroup centralizer_brute_force(const Flip<GFElem>& theta, CentralizerKind kind,
                                         const std::vector<Mat2<GFElem>>* group = nullptr);
CentralizerGroup centralizer(const Flip<GFElem>& theta, CentralizerKind kind, Method method);

struct Transitivity {
  bool transitive = false;
  std::vector<std::vector<ProjPoint<GFElem>>> orbits;
  std::size_t centralizer_order = 0;
};

/// Orbits of a centralizer on P1(F_q).
Transitivity orbits_on_line(const GaloisField& f, const CentralizerGroup& k);
Transitivity is_transitive(const Flip<GFElem>& theta, GroupMode mode, Method method = Method::brute_force,
                           const std::vector<Mat2<GFElem>>* group = nullptr);

// ---------------------------------------------------------------------------
// The closed-form criterion

/// No in characteristic 2; otherwise delta must be a norm and the pair check
/// for (F, sigma, mode) must hold.
Tri criterion_verdict(const GaloisField& f, GFElem delta, const FieldAut& sigma, GroupMode mode);
Tri criterion_verdict(const RationalField& f, const Rational& delta, const FieldAut& sigma, GroupMode mode);
Tri criterion_verdict(const QuadraticField& f, const QuadElem& delta, const FieldAut& sigma, GroupMode mode);

template <class T>
struct Witness {
  Mat2<T> matrix;
  T x;
  int eps = 1;
};

/// An element of PK_{1,sigma} (K_{1,sigma} in SL mode) mapping (a:b) to (1:0):
/// [[eps (a/x)^s, eps (b/x)^s], [-b/x, a/x]] with eps N(x) = N(a) + N(b).
/// eps = +1 is preferred; throws no_such_x when neither sign works.
template <class T>
Witness<T> transitivity_witness(const ProjPoint<T>& p, const FieldAut& sigma, GroupMode mode) {
  const T& a = p.x;
  const T& b = p.y;
  const T s = norm(a, sigma) + norm(b, sigma);
  int eps = 1;
  auto x = norm_preimage(s, sigma);
  if ((!x || is_zero(*x)) && mode == GroupMode::PSL) {
    eps = -1;
    x = norm_preimage(-s, sigma);
  }
  if (!x || is_zero(*x))
    throw Error(ErrorCode::no_such_x, "N(a) + N(b) = " + to_string(s) + " is not " +
                                          (mode == GroupMode::PSL ? "+-1 times " : "") + "a norm");
  const T e = eps == 1 ? one_like(a) : -one_like(a);
  const T u = a / *x, v = b / *x;
  return {Mat2<T>{e * apply_aut(sigma, u), e * apply_aut(sigma, v), -v, u}, *x, eps};
}

template <class T>
struct Conjugation {
  Mat2<T> Y;
  Flip<T> standard;
  T x;
};

/// Y = diag(1, 1/x) with N(x) = 1/delta, so theta_delta(g) = Y^{-1} theta_1(Y g Y^{-1}) Y.
/// Throws delta_not_a_norm.
template <class T>
Conjugation<T> conjugate_to_standard(const Flip<T>& theta) {
  const auto x = norm_preimage(inverse(theta.delta()), theta.sigma());
  if (!x)
    throw Error(ErrorCode::delta_not_a_norm, "delta = " + to_string(theta.delta()) + " is not a norm");
  const T one = one_like(theta.delta());
  return {diag(one, inverse(*x)), Flip<T>(one, theta.sigma()), *x};
}

template <class T>
struct IwasawaFactors {
  Mat2<T> k;  // in the (projective) centralizer
  Mat2<T> b;  // upper triangular
};

/// g = k b. With p' = Y g(1:0) and w the witness for p', k = Y^{-1} w^{-1} Y.
template <class T>
IwasawaFactors<T> iwasawa_factorize(const Mat2<T>& g, const Flip<T>& theta, GroupMode mode) {
  const Conjugation<T> c = conjugate_to_standard(theta);
  const ProjPoint<T> p = act(c.Y, act(g, infinity_point(g.a)));
  const Witness<T> w = transitivity_witness(p, theta.sigma(), mode);
  const Mat2<T> k = inverse(c.Y) * inverse(w.matrix) * c.Y;
  return {k, inverse(k) * g};
}

// ---------------------------------------------------------------------------
// Additive maps phi of (F_q, +) and the involutions they induce

struct AdditiveMap {
  std::uint32_t p = 2;
  unsigned n = 1;
  /// Row-major n x n matrix over F_p; column j is the image of t^j.
  std::vector<std::uint32_t> m;

  [[nodiscard]] GFElem apply(const GaloisField& f, GFElem x) const;
  [[nodiscard]] std::string to_string() const;
  friend bool operator==(const AdditiveMap&, const AdditiveMap&) = default;
  friend bool operator<(const AdditiveMap& a, const AdditiveMap& b) { return a.m < b.m; }
};

AdditiveMap additive_map_of(const GaloisField& f, const std::function<GFElem(GFElem)>& phi);
/// GL_n(F_p), in lexicographic matrix order. Throws size_limit past `max_matrices` candidates.
std::vector<AdditiveMap> additive_automorphisms(const GaloisField& f, std::size_t max_matrices = 1u << 22);

struct PredictedFlip {
  FieldAut sigma = FieldAut::identity();
  GFElem eps;
  AdditiveMap map;
};
/// x -> eps x^sigma for sigma of order <= 2 and eps in Fix(sigma)*.
std::vector<PredictedFlip> predicted_additive_flips(const GaloisField& f);

enum class HomCheck { generators, all_pairs };

/// Builds theta on SL_2(F_q) from U+(x) -> U-(phi x), U-(y) -> U+(phi^{-1} y)
/// along a breadth-first spanning tree, then decides whether it is an
/// involutory automorphism: theta(g s) = theta(g) theta(s) for every g and
/// generator s (or every pair), theta^2 = 1, and agreement on all of U+ and U-.
bool induces_involution(const GaloisField& f, const AdditiveMap& phi, const std::vector<Mat2<GFElem>>& group,
                        HomCheck check = HomCheck::generators);

struct Classification {
  std::size_t candidates = 0;
  std::vector<AdditiveMap> observed;
  std::vector<PredictedFlip> predicted;
  bool match = false;
};

Classification classify_additive_flips(const GaloisField& f, HomCheck check = HomCheck::generators,
                                       std::size_t max_matrices = 1u << 22);

// ---------------------------------------------------------------------------
// The twin building of SL_2: C+ and C- are copies of P1 via gB+ -> g(1:0) and gB- -> g(0:1).

struct PhanReport {
  bool swaps_halves = true;
  bool flips_distances = true;
  bool preserves_codistance = true;
  bool base_opposite = true;
  bool codistance_matches_points = true;
  [[nodiscard]] bool ok() const noexcept {
    return swaps_halves && flips_distances && preserves_codistance && base_opposite && codistance_matches_points;
  }
};

PhanReport phan_involution_check(const Flip<GFElem>& theta, const std::vector<Mat2<GFElem>>* group = nullptr);

/// Every valid flip of F_q: each nonzero delta with each sigma of order <= 2 fixing it.
std::vector<Flip<GFElem>> all_flips(const GaloisField& f);

}  // namespace flipbench
