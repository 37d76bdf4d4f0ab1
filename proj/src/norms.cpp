#include "flipbench/norms.hpp"

#include <boost/multiprecision/integer.hpp>

#include <algorithm>
#include <set>

namespace flipbench {

std::string_view to_string(Tri t) noexcept {
  switch (t) {
    case Tri::no: return "no";
    case Tri::yes: return "yes";
    case Tri::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(GroupMode m) noexcept { return m == GroupMode::SL ? "SL2" : "PSL2"; }

GroupMode parse_group_mode(std::string_view text) {
  if (text == "sl" || text == "sl2" || text == "SL" || text == "SL2") return GroupMode::SL;
  if (text == "psl" || text == "psl2" || text == "PSL" || text == "PSL2") return GroupMode::PSL;
  throw Error(ErrorCode::parse_error, "group mode must be sl2 or psl2, got '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// Finite fields

NormTable norm_table(const GaloisField& f, const FieldAut& sigma) {
  const FieldAut s = validate_aut(f, sigma);
  NormTable t;
  t.is_norm.assign(f.order(), false);
  t.preimage.assign(f.order(), std::nullopt);
  for (const GFElem x : f.elements()) {
    const GFElem n = norm(x, s);
    if (!t.is_norm[n.index]) {
      t.is_norm[n.index] = true;
      t.preimage[n.index] = x.index;
    }
  }
  return t;
}

std::optional<GFElem> norm_preimage(GFElem c, const FieldAut& sigma) {
  const GaloisField& f = *c.field;
  const FieldAut s = validate_aut(f, sigma);
  if (apply_aut(s, c) != c) throw Error(ErrorCode::invalid_argument, "norm target not fixed by " + s.to_string());
  for (const GFElem x : f.elements())
    if (norm(x, s) == c) return x;
  return std::nullopt;
}

PairCheck iwasawa_pair_check(const GaloisField& f, const FieldAut& sigma, GroupMode mode) {
  const FieldAut s = validate_aut(f, sigma);
  const NormTable t = norm_table(f, s);
  PairCheck out;
  out.method = "exhaustive";
  const GFElem minus_one = -f.one();
  out.minus_one_is_norm = t.is_norm[minus_one.index];
  if (out.minus_one_is_norm) out.minus_one_witness = f.format(f.element(*t.preimage[minus_one.index]));

  std::vector<GFElem> norms;
  for (const GFElem x : f.nonzero_elements())
    if (t.is_norm[x.index]) norms.push_back(x);

  out.norms_closed = Tri::yes;
  for (std::size_t j = 0; j < norms.size() && out.norms_closed == Tri::yes; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const GFElem sum = norms[i] + norms[j];
      bool ok = t.is_norm[sum.index];
      if (!ok && mode == GroupMode::PSL) ok = t.is_norm[(-sum).index];
      if (!ok) {
        out.norms_closed = Tri::no;
        out.counterexample = {f.format(norms[i]), f.format(norms[j]), f.format(sum)};
        break;
      }
    }
  }
  out.verdict = to_tri(!out.minus_one_is_norm && out.norms_closed == Tri::yes);
  return out;
}

std::vector<GFElem> square_classes(const GaloisField& f) {
  std::vector<bool> square(f.order(), false);
  for (const GFElem x : f.nonzero_elements()) square[(x * x).index] = true;
  std::vector<GFElem> reps{f.one()};
  for (const GFElem x : f.nonzero_elements()) {
    if (!square[x.index]) {
      reps.push_back(x);
      break;
    }
  }
  return reps;
}

// ---------------------------------------------------------------------------
// Binary forms x^2 + k y^2 over the integers

namespace {

// Square root of a modulo an odd prime p (Tonelli-Shanks); a must be a residue.
Integer sqrt_mod(const Integer& a_in, const Integer& p) {
  using boost::multiprecision::powm;
  Integer a = ((a_in % p) + p) % p;
  if (a == 0) return 0;
  Integer q = p - 1;
  unsigned s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  Integer z = 2;
  while (powm(z, (p - 1) / 2, p) != p - 1) ++z;
  Integer m = s;
  Integer c = powm(z, q, p);
  Integer t = powm(a, q, p);
  Integer r = powm(a, (q + 1) / 2, p);
  while (t != 1) {
    unsigned i = 0;
    Integer t2 = t;
    while (t2 != 1) {
      t2 = (t2 * t2) % p;
      ++i;
    }
    Integer b = c;
    for (Integer e = 0; e < m - i - 1; ++e) b = (b * b) % p;
    m = i;
    c = (b * b) % p;
    t = (t * c) % p;
    r = (r * b) % p;
  }
  return r;
}

bool is_residue(const Integer& a, const Integer& p) {
  const Integer r = ((a % p) + p) % p;
  return r == 0 || boost::multiprecision::powm(r, (p - 1) / 2, p) == 1;
}

// x^2 + k y^2 = p for a prime p, via Cornacchia.
std::optional<std::pair<Integer, Integer>> represent_prime(const Integer& p, unsigned k) {
  if (p == 2) return k == 1 ? std::pair<Integer, Integer>{1, 1} : std::pair<Integer, Integer>{0, 1};
  if (p == k) return std::pair<Integer, Integer>{0, 1};
  if (!is_residue(-Integer(k), p)) return std::nullopt;
  const Integer r0 = sqrt_mod(-Integer(k), p);
  for (const Integer& start : {r0, Integer(p - r0)}) {
    Integer a = p, b = start;
    while (b * b > p) {
      const Integer r = a % b;
      a = b;
      b = r;
    }
    const Integer rest = p - b * b;
    if (rest % k != 0) continue;
    if (auto y = exact_sqrt(Integer(rest / k))) return std::pair<Integer, Integer>{b, *y};
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<Integer, Integer>> represent_binary_form(const Integer& n, unsigned k) {
  if (k != 1 && k != 2) throw Error(ErrorCode::unsupported_field, "binary form x^2 + k y^2 needs k in {1, 2}");
  if (n < 0) return std::nullopt;
  if (n == 0) return std::pair<Integer, Integer>{0, 0};
  Integer x = 1, y = 0;
  for (const auto& [p, e] : factorize(n)) {
    Integer scale = 1;
    for (unsigned i = 0; i < e / 2; ++i) scale *= p;
    x *= scale;
    y *= scale;
    if (e % 2 == 1) {
      const auto rep = represent_prime(p, k);
      if (!rep) return std::nullopt;
      const auto& [c, d] = *rep;
      const Integer nx = x * c - Integer(k) * y * d;
      const Integer ny = x * d + y * c;
      x = nx;
      y = ny;
    }
  }
  if (x < 0) x = -x;
  if (y < 0) y = -y;
  return std::pair<Integer, Integer>{x, y};
}

// ---------------------------------------------------------------------------
// Rational fields

std::optional<Rational> norm_preimage(const Rational& c, const FieldAut& sigma) {
  validate_aut(RationalField{}, sigma);
  return exact_sqrt(c);
}

std::optional<QuadElem> norm_preimage(const QuadElem& c, const FieldAut& sigma) {
  if (sigma.kind() != FieldAut::Kind::conjugation || (c.d != -1 && c.d != -2))
    throw Error(ErrorCode::unsupported_field,
                "norm decision implemented only for conj on Q(sqrt:-1) and Q(sqrt:-2)");
  if (c.y != 0) throw Error(ErrorCode::invalid_argument, "norm target not fixed by conj");
  const unsigned k = static_cast<unsigned>(-c.d);
  const Integer num = numerator(c.x), den = denominator(c.x);
  const auto rep = represent_binary_form(num * den, k);
  if (!rep) return std::nullopt;
  return QuadElem{c.d, Rational(rep->first, den), Rational(rep->second, den)};
}

namespace {

// Counterexample search: norms of integer elements in ascending order, pairs
// (i <= j) with j as the outer index.
template <class IsNorm>
void closure_search(std::vector<Integer> norms, GroupMode mode, IsNorm is_norm, PairCheck& out) {
  std::sort(norms.begin(), norms.end());
  norms.erase(std::unique(norms.begin(), norms.end()), norms.end());
  out.norms_closed = Tri::inconclusive;
  for (std::size_t j = 0; j < norms.size(); ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const Integer sum = norms[i] + norms[j];
      bool ok = is_norm(sum);
      if (!ok && mode == GroupMode::PSL) ok = is_norm(Integer(-sum));
      if (!ok) {
        out.norms_closed = Tri::no;
        out.counterexample = {norms[i].str(), norms[j].str(), sum.str()};
        return;
      }
    }
  }
}

Tri combine_verdict(const PairCheck& c) {
  if (c.minus_one_is_norm || c.norms_closed == Tri::no) return Tri::no;
  return c.norms_closed;
}

}  // namespace

PairCheck iwasawa_pair_check(const RationalField& f, const FieldAut& sigma, GroupMode mode, SearchBound bound) {
  validate_aut(f, sigma);
  PairCheck out;
  out.method = "counterexample-search";
  out.minus_one_is_norm = false;  // squares are non-negative
  std::vector<Integer> norms;
  for (unsigned x = 1; x <= bound.height; ++x) norms.emplace_back(Integer(x) * x);
  closure_search(norms, mode, [](const Integer& n) { return exact_sqrt(n).has_value(); }, out);
  out.verdict = combine_verdict(out);
  return out;
}

PairCheck iwasawa_pair_check(const QuadraticField& f, const FieldAut& sigma, GroupMode mode, SearchBound bound) {
  validate_aut(f, sigma);
  if (sigma.kind() != FieldAut::Kind::conjugation || (f.d() != -1 && f.d() != -2))
    throw Error(ErrorCode::unsupported_field, "no norm decision for " + f.spec_string() + " with " + sigma.to_string());
  const unsigned k = static_cast<unsigned>(-f.d());
  PairCheck out;
  out.method = "counterexample-search";
  if (const auto w = norm_preimage(f.make(-1), sigma)) {
    out.minus_one_is_norm = true;
    out.minus_one_witness = to_string(*w);
  }
  std::vector<Integer> norms;
  for (unsigned x = 0; x <= bound.height; ++x)
    for (unsigned y = 0; y <= bound.height; ++y)
      if (x != 0 || y != 0) norms.emplace_back(Integer(x) * x + Integer(k) * y * y);
  closure_search(norms, mode, [k](const Integer& n) { return represent_binary_form(n, k).has_value(); }, out);
  out.verdict = combine_verdict(out);
  return out;
}

}  // namespace flipbench
