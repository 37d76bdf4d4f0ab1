#include "flipbench/flips.hpp"

#include "flipbench/perm.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_map>

namespace flipbench {

BnFlipReport verify_bn_flip(const Flip<GFElem>& theta) {
  const auto group = enumerate_group(*theta.delta().field, GroupMode::SL);
  return verify_bn_map<GFElem>([&](const Mat2<GFElem>& g) { return apply_flip(theta, g); }, group, "exhaustive");
}

// ---------------------------------------------------------------------------

CentralizerGroup centralizer_formula(const Flip<GFElem>& theta, CentralizerKind kind) {
  const GaloisField& f = *theta.delta().field;
  const FieldAut& s = theta.sigma();
  const GFElem delta = theta.delta();
  std::vector<GFElem> signs{f.one()};
  if (kind == CentralizerKind::PK && f.characteristic() != 2) signs.push_back(-f.one());

  std::vector<std::uint32_t> norms(f.order());
  for (const GFElem x : f.elements()) norms[x.index] = norm(x, s).index;

  std::set<Mat2<GFElem>> out;
  for (const GFElem eps : signs) {
    for (const GFElem u : f.elements()) {
      for (const GFElem v : f.elements()) {
        if (f.element(norms[u.index]) + delta * f.element(norms[v.index]) != eps) continue;
        const Mat2<GFElem> g{eps * apply_aut(s, u), delta * eps * apply_aut(s, v), -v, u};
        out.insert(g);
      }
    }
  }
  return {kind, {out.begin(), out.end()}};
}

CentralizerGroup centralizer_brute_force(const Flip<GFElem>& theta, CentralizerKind kind,
                                         const std::vector<Mat2<GFElem>>* group) {
  std::vector<Mat2<GFElem>> own;
  if (group == nullptr) {
    own = enumerate_group(*theta.delta().field, GroupMode::SL);
    group = &own;
  }
  CentralizerGroup out{kind, {}};
  for (const auto& g : *group) {
    const Mat2<GFElem> img = apply_flip(theta, g);
    if (img == g || (kind == CentralizerKind::PK && img == -g)) out.elements.push_back(g);
  }
  return out;
}

CentralizerGroup centralizer(const Flip<GFElem>& theta, CentralizerKind kind, Method method) {
  return method == Method::formula ? centralizer_formula(theta, kind) : centralizer_brute_force(theta, kind);
}

Transitivity orbits_on_line(const GaloisField& f, const CentralizerGroup& k) {
  const auto pts = projective_line(f);
  std::vector<Perm> gens;
  gens.reserve(k.elements.size());
  for (const auto& g : k.elements) {
    Perm perm(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) perm[i] = point_index(act(g, pts[i]));
    gens.push_back(std::move(perm));
  }
  Transitivity t;
  t.centralizer_order = k.elements.size();
  for (const auto& orbit : orbits(gens, pts.size())) {
    std::vector<ProjPoint<GFElem>> o;
    for (const auto i : orbit) o.push_back(pts[i]);
    t.orbits.push_back(std::move(o));
  }
  t.transitive = t.orbits.size() == 1;
  return t;
}

Transitivity is_transitive(const Flip<GFElem>& theta, GroupMode mode, Method method,
                           const std::vector<Mat2<GFElem>>* group) {
  const CentralizerKind kind = kind_for(mode);
  const CentralizerGroup k = method == Method::formula ? centralizer_formula(theta, kind)
                                                       : centralizer_brute_force(theta, kind, group);
  return orbits_on_line(*theta.delta().field, k);
}

// ---------------------------------------------------------------------------

Tri criterion_verdict(const GaloisField& f, GFElem delta, const FieldAut& sigma, GroupMode mode) {
  const Flip<GFElem> theta(delta, sigma);  // validates the data
  if (f.characteristic() == 2) return Tri::no;
  if (!norm_preimage(inverse(delta), theta.sigma())) return Tri::no;
  return iwasawa_pair_check(f, theta.sigma(), mode).verdict;
}

Tri criterion_verdict(const RationalField& f, const Rational& delta, const FieldAut& sigma, GroupMode mode) {
  const Flip<Rational> theta(delta, sigma);
  if (!norm_preimage(inverse(delta), theta.sigma())) return Tri::no;
  return iwasawa_pair_check(f, theta.sigma(), mode).verdict;
}

Tri criterion_verdict(const QuadraticField& f, const QuadElem& delta, const FieldAut& sigma, GroupMode mode) {
  const Flip<QuadElem> theta(delta, sigma);
  if (!norm_preimage(inverse(delta), theta.sigma())) return Tri::no;
  return iwasawa_pair_check(f, theta.sigma(), mode).verdict;
}

// ---------------------------------------------------------------------------
// Additive maps

GFElem AdditiveMap::apply(const GaloisField& f, GFElem x) const {
  const auto c = f.coefficients(x);
  std::vector<std::int64_t> out(n, 0);
  for (unsigned i = 0; i < n; ++i) {
    std::uint64_t acc = 0;
    for (unsigned j = 0; j < n; ++j) acc += std::uint64_t(m[i * n + j]) * c[j];
    out[i] = static_cast<std::int64_t>(acc % p);
  }
  return f.from_coefficients(out);
}

std::string AdditiveMap::to_string() const {
  std::string s = "[";
  for (unsigned i = 0; i < n; ++i) {
    s += i ? ",[" : "[";
    for (unsigned j = 0; j < n; ++j) s += (j ? "," : "") + std::to_string(m[i * n + j]);
    s += "]";
  }
  return s + "]";
}

AdditiveMap additive_map_of(const GaloisField& f, const std::function<GFElem(GFElem)>& phi) {
  const unsigned n = f.degree();
  AdditiveMap out{f.characteristic(), n, std::vector<std::uint32_t>(n * n, 0)};
  GFElem basis = f.one();
  for (unsigned j = 0; j < n; ++j) {
    const auto img = f.coefficients(phi(basis));
    for (unsigned i = 0; i < n; ++i) out.m[i * n + j] = img[i];
    basis = basis * f.generator();
  }
  return out;
}

namespace {

bool invertible_mod_p(std::vector<std::uint32_t> m, unsigned n, std::uint32_t p) {
  auto inv = [p](std::uint64_t a) {
    std::uint64_t r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * a % p;
      a = a * a % p;
      e >>= 1;
    }
    return r;
  };
  for (unsigned col = 0; col < n; ++col) {
    unsigned piv = col;
    while (piv < n && m[piv * n + col] == 0) ++piv;
    if (piv == n) return false;
    for (unsigned j = 0; j < n; ++j) std::swap(m[col * n + j], m[piv * n + j]);
    const std::uint64_t iv = inv(m[col * n + col]);
    for (unsigned r = col + 1; r < n; ++r) {
      const std::uint64_t factor = m[r * n + col] * iv % p;
      for (unsigned j = col; j < n; ++j)
        m[r * n + j] = static_cast<std::uint32_t>((m[r * n + j] + (p - factor) * m[col * n + j]) % p);
    }
  }
  return true;
}

}  // namespace

std::vector<AdditiveMap> additive_automorphisms(const GaloisField& f, std::size_t max_matrices) {
  const std::uint32_t p = f.characteristic();
  const unsigned n = f.degree();
  std::uint64_t total = 1;
  for (unsigned i = 0; i < n * n; ++i) {
    total *= p;
    if (total > max_matrices)
      throw Error(ErrorCode::size_limit, "too many additive maps to enumerate for " + f.spec_string());
  }
  std::vector<AdditiveMap> out;
  std::vector<std::uint32_t> m(n * n, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (unsigned k = n * n; k-- > 0;) {
      m[k] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (invertible_mod_p(m, n, p)) out.push_back({p, n, m});
  }
  return out;
}

std::vector<PredictedFlip> predicted_additive_flips(const GaloisField& f) {
  std::vector<PredictedFlip> out;
  for (const FieldAut& s : involutive_automorphisms(f)) {
    for (const GFElem eps : f.nonzero_elements()) {
      if (apply_aut(s, eps) != eps) continue;
      out.push_back({s, eps, additive_map_of(f, [&](GFElem x) { return eps * apply_aut(s, x); })});
    }
  }
  std::sort(out.begin(), out.end(), [](const PredictedFlip& a, const PredictedFlip& b) { return a.map < b.map; });
  return out;
}

namespace {

std::uint64_t key_of(const Mat2<GFElem>& g, std::uint64_t q) {
  return ((std::uint64_t(g.a.index) * q + g.b.index) * q + g.c.index) * q + g.d.index;
}

}  // namespace

bool induces_involution(const GaloisField& f, const AdditiveMap& phi, const std::vector<Mat2<GFElem>>& group,
                        HomCheck check) {
  const std::uint64_t q = f.order();
  std::vector<GFElem> table(q), inv_table(q);
  for (const GFElem x : f.elements()) {
    const GFElem y = phi.apply(f, x);
    table[x.index] = y;
    inv_table[y.index] = x;
  }

  std::unordered_map<std::uint64_t, std::uint32_t> pos;
  pos.reserve(group.size() * 2);
  for (std::uint32_t i = 0; i < group.size(); ++i) pos.emplace(key_of(group[i], q), i);

  // Generators U+(t^i), U-(t^i) and their prescribed images.
  std::vector<Mat2<GFElem>> gens, gen_images;
  GFElem basis = f.one();
  for (unsigned i = 0; i < f.degree(); ++i) {
    gens.push_back(upper_unipotent(basis));
    gen_images.push_back(lower_unipotent(table[basis.index]));
    gens.push_back(lower_unipotent(basis));
    gen_images.push_back(upper_unipotent(inv_table[basis.index]));
    basis = basis * f.generator();
  }

  std::vector<std::optional<Mat2<GFElem>>> theta(group.size());
  const Mat2<GFElem> id = identity_like(f.one());
  const std::uint32_t start = pos.at(key_of(id, q));
  theta[start] = id;
  std::deque<std::uint32_t> queue{start};
  while (!queue.empty()) {
    const auto i = queue.front();
    queue.pop_front();
    for (std::size_t s = 0; s < gens.size(); ++s) {
      const auto j = pos.at(key_of(group[i] * gens[s], q));
      if (theta[j]) continue;
      theta[j] = *theta[i] * gen_images[s];
      queue.push_back(j);
    }
  }
  auto image = [&](const Mat2<GFElem>& g) -> const Mat2<GFElem>& { return *theta[pos.at(key_of(g, q))]; };

  for (std::size_t i = 0; i < group.size(); ++i) {
    if (!theta[i]) return false;  // generators failed to reach g
    if (image(*theta[i]) != group[i]) return false;
  }
  if (check == HomCheck::all_pairs) {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t j = 0; j < group.size(); ++j)
        if (image(group[i] * group[j]) != *theta[i] * *theta[j]) return false;
  } else {
    for (std::size_t i = 0; i < group.size(); ++i)
      for (std::size_t s = 0; s < gens.size(); ++s)
        if (image(group[i] * gens[s]) != *theta[i] * gen_images[s]) return false;
  }
  for (const GFElem x : f.elements()) {
    if (image(upper_unipotent(x)) != lower_unipotent(table[x.index])) return false;
    if (image(lower_unipotent(x)) != upper_unipotent(inv_table[x.index])) return false;
  }
  return true;
}

Classification classify_additive_flips(const GaloisField& f, HomCheck check, std::size_t max_matrices) {
  const auto candidates = additive_automorphisms(f, max_matrices);
  const auto group = enumerate_group(f, GroupMode::SL);
  Classification c;
  c.candidates = candidates.size();
  for (const auto& phi : candidates)
    if (induces_involution(f, phi, group, check)) c.observed.push_back(phi);
  c.predicted = predicted_additive_flips(f);
  std::vector<AdditiveMap> predicted_maps;
  for (const auto& pf : c.predicted) predicted_maps.push_back(pf.map);
  c.match = predicted_maps == c.observed;
  return c;
}

// ---------------------------------------------------------------------------
// Twin building check

namespace {

// g with g(1:0) = p, and h with h(0:1) = p.
Mat2<GFElem> rep_plus(const ProjPoint<GFElem>& p) {
  const GFElem one = p.y.field->one();
  if (is_zero(p.y)) return identity_like(one);
  return {p.x, -one, one, zero_like(one)};
}

Mat2<GFElem> rep_minus(const ProjPoint<GFElem>& p) {
  const GFElem one = p.y.field->one();
  if (is_zero(p.y)) return weyl_s(one);
  return upper_unipotent(p.x);
}

}  // namespace

PhanReport phan_involution_check(const Flip<GFElem>& theta, const std::vector<Mat2<GFElem>>* group) {
  const GaloisField& f = *theta.delta().field;
  std::vector<Mat2<GFElem>> own;
  if (group == nullptr) {
    own = enumerate_group(f, GroupMode::SL);
    group = &own;
  }
  const auto pts = projective_line(f);
  const std::size_t n = pts.size();
  const GFElem one = f.one();
  const ProjPoint<GFElem> inf = infinity_point(one);
  const ProjPoint<GFElem> zero_pt{f.zero(), one};

  // theta on chambers: C+ -> C- and C- -> C+, through representatives.
  std::vector<std::uint32_t> to_minus(n), to_plus(n);
  for (std::size_t i = 0; i < n; ++i) {
    to_minus[i] = point_index(act(apply_flip(theta, rep_plus(pts[i])), zero_pt));
    to_plus[i] = point_index(act(apply_flip(theta, rep_minus(pts[i])), inf));
  }

  PhanReport r;
  for (const auto& g : *group) {
    const Mat2<GFElem> tg = apply_flip(theta, g);
    if (point_index(act(tg, zero_pt)) != to_minus[point_index(act(g, inf))]) r.swaps_halves = false;
    if (point_index(act(tg, inf)) != to_plus[point_index(act(g, zero_pt))]) r.swaps_halves = false;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (to_plus[to_minus[i]] != i || to_minus[to_plus[i]] != i) r.swaps_halves = false;

  auto dist_plus = [&](std::size_t i, std::size_t j) {
    return bruhat_decompose(inverse(rep_plus(pts[i])) * rep_plus(pts[j])).word;
  };
  auto dist_minus = [&](std::size_t i, std::size_t j) {
    return is_lower(inverse(rep_minus(pts[i])) * rep_minus(pts[j])) ? Weyl::one : Weyl::s;
  };
  // delta*(x in C+, y in C-) = w  iff  g^{-1} h in B+ w B-.
  auto codist = [&](std::size_t plus, std::size_t minus) {
    return birkhoff_codistance(inverse(rep_plus(pts[plus])) * rep_minus(pts[minus]));
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (dist_plus(i, j) != dist_minus(to_minus[i], to_minus[j])) r.flips_distances = false;
      if (dist_minus(i, j) != dist_plus(to_plus[i], to_plus[j])) r.flips_distances = false;
      // x = pts[i] in C+, y = pts[j] in C-; their images are theta x in C-, theta y in C+.
      if (codist(i, j) != codist(to_plus[j], to_minus[i])) r.preserves_codistance = false;
      if ((codist(i, j) == Weyl::one) != (i != j)) r.codistance_matches_points = false;
    }
  }
  const std::size_t base = point_index(inf);
  r.base_opposite = codist(base, to_minus[base]) == Weyl::one;
  return r;
}

std::vector<Flip<GFElem>> all_flips(const GaloisField& f) {
  std::vector<Flip<GFElem>> out;
  for (const FieldAut& s : involutive_automorphisms(f))
    for (const GFElem d : f.nonzero_elements())
      if (apply_aut(s, d) == d) out.emplace_back(d, s);
  return out;
}

}  // namespace flipbench
