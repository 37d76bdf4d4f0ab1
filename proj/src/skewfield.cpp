#include "flipbench/skewfield.hpp"

#include "flipbench/error.hpp"

#include <stdexcept>

namespace flipbench {

Mat2D Mat2D::identity(const Quaternion::Algebra& alg) {
  const Quaternion one(alg, 1), zero(alg);
  return {one, zero, zero, one};
}

Mat2D Mat2D::tau(const Quaternion::Algebra& alg) {
  const Quaternion one(alg, 1), zero(alg);
  return {zero, one, -one, zero};
}

Mat2D operator*(const Mat2D& g, const Mat2D& h) {
  return {g.a * h.a + g.b * h.c, g.a * h.b + g.b * h.d, g.c * h.a + g.d * h.c, g.c * h.b + g.d * h.d};
}

std::pair<Quaternion, Quaternion> Mat2D::apply(const Quaternion& u, const Quaternion& v) const {
  return {a * u + b * v, c * u + d * v};
}

Mat2D Mat2D::scaled_left(const Quaternion& l) const { return {l * a, l * b, l * c, l * d}; }
Mat2D Mat2D::scaled_right(const Quaternion& l) const { return {a * l, b * l, c * l, d * l}; }

std::string to_string(const Mat2D& g) {
  return "[[" + to_string(g.a) + "," + to_string(g.b) + "],[" + to_string(g.c) + "," + to_string(g.d) + "]]";
}

DieudonneDet dieudonne_det(const Mat2D& g) {
  Quaternion v = g.a.is_zero() ? -(g.c * g.b) : g.a * g.d - g.a * g.c * inverse(g.a) * g.b;
  Rational n = v.nrd();
  if (n == 0 && !v.is_zero())
    throw Error(ErrorCode::zero_divisor, "determinant " + to_string(v) + " is a zero divisor");
  return {std::move(v), std::move(n)};
}

bool in_sl2d(const Mat2D& g) { return dieudonne_det(g).nrd == 1; }

bool centralizer_membership(const Mat2D& g) {
  if (g.c != -g.b || g.d != g.a) return false;
  const Quaternion& x = g.a;
  const Quaternion& y = g.b;
  const Quaternion e = x.is_zero() ? y * y : x * x + x * y * inverse(x) * y;
  return e.nrd() == 1;
}

bool in_squares_times_commutators(const Quaternion& x) {
  const Rational n = x.nrd();
  return n != 0 && exact_sqrt(n).has_value();
}

std::string_view to_string(Condition c) {
  switch (c) {
    case Condition::holds: return "holds";
    case Condition::fails: return "fails";
    case Condition::fails_zero: return "fails-zero";
  }
  return "fails";
}

ConditionReport condition_1_plus_a2(const Quaternion& q, DGroupMode) {
  if (q.is_zero()) throw Error(ErrorCode::zero_argument, "condition 1 + a^2 needs a != 0");
  ConditionReport r{Condition::fails, q.scalar(1) + q * q, 0};
  r.nrd = r.value.nrd();
  if (r.value.is_zero())
    r.verdict = Condition::fails_zero;
  else if (in_squares_times_commutators(r.value))
    r.verdict = Condition::holds;
  return r;
}

std::optional<Quaternion> quaternion_of_norm(const Quaternion::Algebra& alg, const Rational& target,
                                             unsigned height) {
  if (target == 0) return std::nullopt;
  // c = v / n with Nrd(v) = m n for target = m / n. With a = p1/q1, b = p2/q2:
  // q1 q2 w^2 - p1 q2 x^2 - p2 q1 y^2 + p1 p2 z^2 = m n q1 q2.
  const Integer m = numerator(target), n = denominator(target);
  const Integer p1 = numerator(alg->a), q1 = denominator(alg->a);
  const Integer p2 = numerator(alg->b), q2 = denominator(alg->b);
  const Integer rhs = m * n * q1 * q2;
  const Integer cw = q1 * q2, cx = -p1 * q2, cy = -p2 * q1, cz = p1 * p2;
  const bool definite = alg->definite();
  // The form is diagonal, so non-negative components suffice. Shells of growing height.
  for (unsigned h = 0; h <= height; ++h) {
    for (unsigned w = 0; w <= h; ++w)
      for (unsigned x = 0; x <= h; ++x)
        for (unsigned y = 0; y <= h; ++y) {
          if (w != h && x != h && y != h) continue;
          const Integer partial = cw * w * w + cx * x * x + cy * y * y;
          if (definite && partial > rhs) continue;
          const Integer rest = rhs - partial;
          if (rest % cz != 0) continue;
          const auto z = exact_sqrt(Integer(rest / cz));
          if (!z || *z > height) continue;
          const Rational inv_n = Rational(1) / Rational(n);
          return Quaternion(alg, Rational(w) * inv_n, Rational(x) * inv_n, Rational(y) * inv_n,
                            Rational(*z) * inv_n);
        }
  }
  return std::nullopt;
}

PrDtrWitness pr_dtr_witness(const Quaternion& a, const Quaternion& b, unsigned height) {
  if (a.is_zero() || b.is_zero()) throw Error(ErrorCode::zero_argument, "pr_dtr_witness needs a, b != 0");
  const Quaternion ai = inverse(a), bi = inverse(b);
  const Quaternion s = bi * bi + bi * ai * b * ai;
  if (s.is_zero()) throw Error(ErrorCode::no_witness, "b^-2 + b^-1 a^-1 b a^-1 = 0");
  const Rational ns = s.nrd();
  const auto r = exact_sqrt(ns);
  if (!r || *r == 0)
    throw Error(ErrorCode::no_witness, "Nrd(b^-2 + b^-1 a^-1 b a^-1) = " + to_string(ns) + " is not a square");
  const Rational rr = *r;
  const auto c = quaternion_of_norm(a.algebra(), inverse(rr), height);
  if (!c)
    throw Error(ErrorCode::search_exhausted,
                "no c of height <= " + std::to_string(height) + " with Nrd(c) = " + to_string(inverse(rr)));
  PrDtrWitness out{{*c * bi, *c * ai, -(*c * ai), *c * bi}, *c, *c * (bi * a + ai * b), rr};
  const auto img = out.g.apply(a, b);
  if (!centralizer_membership(out.g) || img.first != out.z || !img.second.is_zero())
    throw std::logic_error("pr_dtr_witness failed its own verification for a=" + to_string(a) + ", b=" + to_string(b));
  return out;
}

std::vector<CorollarySample> hua_in_H_corollary_check(const std::vector<Quaternion>& samples) {
  std::vector<CorollarySample> out;
  out.reserve(samples.size());
  for (const Quaternion& a : samples) out.push_back({a, condition_1_plus_a2(a)});
  return out;
}

// ---------------------------------------------------------------------------

namespace moufang_d {

// tau is an involution here, so tau^{-1} is written as tau.
DPoint tau(const Quaternion::Algebra& alg, const DPoint& x) {
  if (!x) return Quaternion(alg);
  if (x->is_zero()) return std::nullopt;
  return -inverse(*x);
}

DPoint add(const DPoint& x, const Quaternion& a) {
  if (!x) return x;
  return *x + a;
}

DPoint hua(const Quaternion& a, const DPoint& x) {
  if (a.is_zero()) throw Error(ErrorCode::zero_argument, "hua needs a != 0");
  const auto& alg = a.algebra();
  const Quaternion ati = *tau(alg, a);
  const Quaternion last = -*tau(alg, -ati);
  DPoint p = tau(alg, x);
  p = add(p, a);
  p = tau(alg, p);
  p = add(p, -ati);
  p = tau(alg, p);
  return add(p, last);
}

DPoint gamma(const Quaternion& a, const DPoint& x) { return tau(a.algebra(), add(tau(a.algebra(), x), a)); }

DPoint mu(const Quaternion& a, const DPoint& x) {
  if (a.is_zero()) throw Error(ErrorCode::zero_argument, "mu needs a != 0");
  const auto& alg = a.algebra();
  DPoint p = gamma(*tau(alg, -a), x);
  p = add(p, a);
  return gamma(-*tau(alg, a), p);  // gamma_c^{-1} = gamma_{-c}
}

}  // namespace moufang_d

SkewAdditiveMap eps_twist(const Quaternion& eps, std::string sigma_name,
                          std::function<Quaternion(const Quaternion&)> sigma,
                          std::function<Quaternion(const Quaternion&)> sigma_inv) {
  const Quaternion eps_inv = inverse(eps);
  SkewAdditiveMap m;
  m.name = "x -> (" + to_string(eps) + ") " + sigma_name;
  m.map = [eps, sigma](const Quaternion& x) { return eps * sigma(x); };
  m.inverse = [eps_inv, sigma_inv](const Quaternion& y) { return sigma_inv(eps_inv * y); };
  return m;
}

SkewAdditiveMap conjugation_flip(const Quaternion& eps) {
  if (!eps.is_scalar()) throw Error(ErrorCode::invalid_argument, "eps must be fixed by conjugation");
  const auto bar = [](const Quaternion& x) { return x.conj(); };
  return eps_twist(eps, "conj(x)", bar, bar);
}

SkewAdditiveMap inner_flip(const Quaternion& u) {
  const Quaternion ui = inverse(u);
  return eps_twist(ui * ui, "(" + to_string(u) + ") x (" + to_string(u) + ")^-1",
                   [u, ui](const Quaternion& x) { return u * x * ui; },
                   [u, ui](const Quaternion& x) { return ui * x * u; });
}

namespace {

DPoint apply_map(const std::function<Quaternion(const Quaternion&)>& f, const DPoint& x) {
  if (!x) return x;
  return f(*x);
}

}  // namespace

bool flip_on_samples(const SkewAdditiveMap& phi, const std::vector<Quaternion>& samples) {
  if (samples.empty()) return true;
  const auto& alg = samples.front().algebra();
  std::vector<DPoint> points{DPoint{}, Quaternion(alg)};
  for (const auto& s : samples) points.emplace_back(s);
  for (const DPoint& x : points) {
    DPoint y = x;
    for (int round = 0; round < 2; ++round) y = moufang_d::tau(alg, apply_map(phi.map, y));
    if (y != x) return false;
  }
  return true;
}

bool main_identity_at(const SkewAdditiveMap& phi, const Quaternion& a, const DPoint& x) {
  const auto& alg = a.algebra();
  const DPoint lhs = moufang_d::mu(phi.map(a), moufang_d::tau(alg, x));
  const DPoint rhs = apply_map(phi.map, moufang_d::hua(a, apply_map(phi.map, x)));
  return lhs == rhs;
}

// ---------------------------------------------------------------------------

Quaternion random_quaternion(const Quaternion::Algebra& alg, std::mt19937_64& rng, int height, int max_den) {
  std::uniform_int_distribution<int> num(-height, height), den(1, max_den);
  const auto comp = [&] {
    const int p = num(rng);
    return Rational(p) / Rational(den(rng));
  };
  Rational w = comp(), x = comp(), y = comp(), z = comp();
  return Quaternion(alg, w, x, y, z);
}

Quaternion random_nonzero_quaternion(const Quaternion::Algebra& alg, std::mt19937_64& rng, int height, int max_den) {
  for (;;) {
    Quaternion q = random_quaternion(alg, rng, height, max_den);
    if (!q.is_zero() && q.nrd() != 0) return q;
  }
}

Mat2D random_invertible(const Quaternion::Algebra& alg, std::mt19937_64& rng, int height) {
  std::uniform_int_distribution<int> coin(0, 7);
  const auto entry = [&] { return coin(rng) == 0 ? Quaternion(alg) : random_quaternion(alg, rng, height, 2); };
  for (;;) {
    Mat2D g{entry(), entry(), entry(), entry()};
    if (dieudonne_det(g).invertible()) return g;
  }
}

Mat2D random_centralizer_element(const Quaternion::Algebra& alg, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> kind(0, 3), factors(1, 3), tn(-5, 5), td(1, 5);
  Mat2D g = Mat2D::identity(alg);
  const int count = factors(rng);
  for (int i = 0; i < count; ++i) {
    const int k = kind(rng);
    if (k <= 1) {
      // Rational point on the circle: c = (1 - t^2)/(1 + t^2), s = 2t/(1 + t^2).
      const int tp = tn(rng);
      const Rational t = Rational(tp) / Rational(td(rng));
      const Rational c = (1 - t * t) / (1 + t * t), s = 2 * t / (1 + t * t);
      g = g * Mat2D{Quaternion(alg, c), Quaternion(alg, s), Quaternion(alg, -s), Quaternion(alg, c)};
    } else {
      const Quaternion p = random_nonzero_quaternion(alg, rng, 3, 1), q = random_nonzero_quaternion(alg, rng, 3, 1);
      const Quaternion u = p * q * inverse(p) * inverse(q);
      const Quaternion zero(alg);
      g = g * (k == 2 ? Mat2D{u, zero, zero, u} : Mat2D{zero, u, -u, zero});
    }
  }
  return g;
}

QuaternionSuite run_quaternion_suite(const Quaternion::Algebra& alg, std::size_t samples, std::uint64_t seed) {
  QuaternionSuite s;
  s.algebra = alg->to_string();
  s.seed = seed;
  std::mt19937_64 rng(seed);
  const Mat2D tau = Mat2D::tau(alg);

  for (std::size_t i = 0; i < samples; ++i) {
    const Quaternion p = random_quaternion(alg, rng), q = random_quaternion(alg, rng);
    s.nrd_multiplicative.record((p * q).nrd() == p.nrd() * q.nrd());
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const Mat2D g = random_invertible(alg, rng), h = random_invertible(alg, rng);
    const Rational dg = dieudonne_det(g).nrd, dh = dieudonne_det(h).nrd;
    s.det_multiplicative.record(dieudonne_det(g * h).nrd == dg * dh);
    const Quaternion l = random_nonzero_quaternion(alg, rng);
    const Rational l2 = l.nrd() * l.nrd();
    s.det_scaling.record(dieudonne_det(g.scaled_left(l)).nrd == l2 * dg &&
                         dieudonne_det(g.scaled_right(l)).nrd == l2 * dg);
  }
  std::uniform_int_distribution<int> pick(0, 2), coin(0, 3);
  for (std::size_t i = 0; i < samples; ++i) {
    Mat2D g = Mat2D::identity(alg);
    switch (pick(rng)) {
      case 0: {
        const Quaternion x = coin(rng) == 0 ? Quaternion(alg) : random_quaternion(alg, rng, 3, 2);
        const Quaternion y = random_nonzero_quaternion(alg, rng, 3, 2);
        g = {x, y, -y, x};
        break;
      }
      case 1: g = random_centralizer_element(alg, rng); break;
      default: g = random_invertible(alg, rng); break;
    }
    const bool member = centralizer_membership(g);
    if (member) ++s.members_sampled;
    const bool commutes = g * tau == tau * g;
    s.membership_iff_commuting.record(member == (commutes && in_sl2d(g)) && (!member || commutes));
  }

  // Pairs (a, b) with a^{-1} b pure or scalar always pass the condition; mix them with generic pairs.
  for (std::size_t i = 0; i < samples; ++i) {
    const Quaternion b = random_nonzero_quaternion(alg, rng, 3, 1);
    Quaternion qq = random_nonzero_quaternion(alg, rng, 3, 1);
    switch (coin(rng)) {
      case 0: qq = Quaternion(alg, 0, qq.x(), qq.y(), qq.z()); break;
      case 1: qq = Quaternion(alg, qq.w()); break;
      default: break;
    }
    if (qq.is_zero() || qq.nrd() == 0) qq = Quaternion(alg, 2);
    const Quaternion a = b * inverse(qq);  // a^{-1} b = qq
    const Condition cond = condition_1_plus_a2(qq).verdict;
    try {
      const PrDtrWitness w = pr_dtr_witness(a, b);
      const auto img = w.g.apply(a, b);
      s.witness_verified.record(centralizer_membership(w.g) && img.first == w.z && img.second.is_zero());
      s.witness_matches_condition.record(cond == Condition::holds);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::no_witness) {
        ++s.witness_no;
        s.witness_matches_condition.record(cond != Condition::holds);
      } else if (e.code() == ErrorCode::search_exhausted) {
        ++s.witness_exhausted;
        s.witness_matches_condition.record(cond == Condition::holds);
      } else {
        throw;
      }
    }
  }

  if (alg->a == -1 && alg->b == -1) {
    const Quaternion one(alg, 1), zero(alg), i(alg, 0, 1), j(alg, 0, 0, 1), k(alg, 0, 0, 0, 1);
    auto& h = s.hand_cases;
    h.record(Quaternion(alg, 1, 1, 1, 1).nrd() == 4);
    h.record(inverse(i) == -i);
    const DieudonneDet dij = dieudonne_det({i, zero, zero, j});
    h.record(dij.value == k && dij.nrd == 1);
    h.record(dieudonne_det(tau).value == one);
    h.record(!dieudonne_det({one, one, one, one}).invertible());
    h.record(in_sl2d(Mat2D::identity(alg)) && in_sl2d({i, zero, zero, i}) && !in_sl2d({one + i, zero, zero, one}));
    h.record(centralizer_membership(Mat2D::identity(alg)) && centralizer_membership({zero, j, -j, zero}));
    h.record(condition_1_plus_a2(i).verdict == Condition::fails_zero);
    const ConditionReport c1 = condition_1_plus_a2(one + i);
    h.record(c1.verdict == Condition::fails && c1.nrd == 5);
    const ConditionReport c2 = condition_1_plus_a2(Rational(2) * i);
    h.record(c2.verdict == Condition::holds && c2.nrd == 9);
  }

  // M(D) pointwise: bh_a = aba, mu_a = tau^{-1} h_a, mu_a^{-1} = mu_{-a}, and the flip identities.
  {
    auto& m = s.moufang_pointwise;
    const std::size_t n = std::min<std::size_t>(samples, 200);
    std::vector<Quaternion> pts;
    for (std::size_t i = 0; i < n; ++i) pts.push_back(random_nonzero_quaternion(alg, rng, 3, 2));
    const Quaternion u = random_nonzero_quaternion(alg, rng, 2, 1);
    const Quaternion u1 = u.is_scalar() ? Quaternion(alg, 1, 1) : u;
    const std::vector<SkewAdditiveMap> flips{conjugation_flip(Quaternion(alg, 1)), conjugation_flip(Quaternion(alg, -3)),
                                             inner_flip(u1), inner_flip(Quaternion(alg, 1, 1))};
    for (std::size_t i = 0; i < n; ++i) {
      const Quaternion& a = pts[i];
      const Quaternion& b = pts[(i + 1) % n];
      m.record(moufang_d::hua(a, b) == DPoint(a * b * a));
      m.record(moufang_d::mu(a, b) == moufang_d::hua(a, moufang_d::tau(alg, b)));
      m.record(moufang_d::mu(-a, moufang_d::mu(a, b)) == DPoint(b));
      for (const auto& phi : flips) m.record(main_identity_at(phi, a, b));
    }
    for (const auto& phi : flips) m.record(flip_on_samples(phi, pts));
    // x -> u x u^{-1} alone is a flip only when u^2 is central.
    const Quaternion v(alg, 1, 1);
    const SkewAdditiveMap bare = eps_twist(Quaternion(alg, 1), "inner", [v](const Quaternion& x) { return v * x * inverse(v); },
                                           [v](const Quaternion& x) { return inverse(v) * x * v; });
    m.record(!flip_on_samples(bare, pts));
  }
  return s;
}

}  // namespace flipbench
