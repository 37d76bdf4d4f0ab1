#include "flipbench/fields.hpp"

#include <cctype>
#include <charconv>

namespace flipbench {

namespace {

void require_same_d(const QuadElem& a, const QuadElem& b) {
  if (a.d != b.d) throw Error(ErrorCode::mismatched_owner, "elements of Q(sqrt d) with different d");
}

std::int64_t parse_int64(std::string_view s) {
  std::int64_t v = 0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || s.empty())
    throw Error(ErrorCode::parse_error, "bad integer '" + std::string(s) + "'");
  return v;
}

std::uint32_t parse_uint32(std::string_view s) {
  const auto v = parse_int64(s);
  if (v < 0 || v > 0xffffffffLL) throw Error(ErrorCode::parse_error, "integer out of range '" + std::string(s) + "'");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

QuadElem operator+(const QuadElem& a, const QuadElem& b) {
  require_same_d(a, b);
  return {a.d, a.x + b.x, a.y + b.y};
}

QuadElem operator-(const QuadElem& a, const QuadElem& b) {
  require_same_d(a, b);
  return {a.d, a.x - b.x, a.y - b.y};
}

QuadElem operator-(const QuadElem& a) { return {a.d, -a.x, -a.y}; }

QuadElem operator*(const QuadElem& a, const QuadElem& b) {
  require_same_d(a, b);
  return {a.d, a.x * b.x + Rational(a.d) * a.y * b.y, a.x * b.y + a.y * b.x};
}

QuadElem inverse(const QuadElem& a) {
  const Rational n = a.x * a.x - Rational(a.d) * a.y * a.y;
  if (n == 0) throw Error(ErrorCode::division_by_zero, "inverse of zero in Q(sqrt d)");
  return {a.d, a.x / n, -a.y / n};
}

QuadElem operator/(const QuadElem& a, const QuadElem& b) { return a * inverse(b); }

std::string to_string(const QuadElem& a) {
  const std::string root = "sqrt(" + std::to_string(a.d) + ")";
  if (a.y == 0) return to_string(a.x);
  std::string ys;
  if (a.y == 1) {
    ys = root;
  } else if (a.y == -1) {
    ys = "-" + root;
  } else {
    ys = to_string(a.y) + "*" + root;
  }
  if (a.x == 0) return ys;
  return to_string(a.x) + (ys[0] == '-' ? "" : "+") + ys;
}

bool is_squarefree(std::int64_t d) {
  std::int64_t m = d < 0 ? -d : d;
  if (m == 0) return false;
  for (std::int64_t p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

QuadraticField::QuadraticField(std::int64_t d) : d_(d) {
  if (d == 0 || d == 1 || !is_squarefree(d))
    throw Error(ErrorCode::invalid_argument, "d must be squarefree and not 0 or 1, got " + std::to_string(d));
}

QuadElem QuadraticField::parse(std::string_view text) const {
  const std::string root = "sqrt(" + std::to_string(d_) + ")";
  if (text.empty()) throw Error(ErrorCode::parse_error, "empty element");
  Rational x = 0, y = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    std::size_t j = i + 1;
    while (j < text.size() && text[j] != '+' && !(text[j] == '-' && text[j - 1] != '(')) ++j;
    std::string_view term = text.substr(i, j - i);
    const auto pos = term.find("sqrt(");
    if (pos == std::string_view::npos) {
      x += parse_rational(term);
    } else {
      if (term.substr(pos) != root)
        throw Error(ErrorCode::parse_error, "term '" + std::string(term) + "' does not match " + spec_string());
      std::string_view coef = term.substr(0, pos);
      if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
      if (coef.empty() || coef == "+") {
        y += 1;
      } else if (coef == "-") {
        y -= 1;
      } else {
        y += parse_rational(coef);
      }
    }
    i = j;
  }
  return make(x, y);
}

std::string QuadraticField::spec_string() const { return "Q(sqrt:" + std::to_string(d_) + ")"; }

// ---------------------------------------------------------------------------

FieldAut FieldAut::parse(std::string_view text) {
  if (text == "id") return identity();
  if (text == "conj") return conjugation();
  if (text == "frob") return frobenius(1);
  if (text.substr(0, 5) == "frob^") return frobenius(parse_uint32(text.substr(5)));
  throw Error(ErrorCode::parse_error, "unknown automorphism '" + std::string(text) + "'");
}

std::string FieldAut::to_string() const {
  switch (kind_) {
    case Kind::identity: return "id";
    case Kind::frobenius: return "frob^" + std::to_string(k_);
    case Kind::conjugation: return "conj";
  }
  return "id";
}

FieldAut validate_aut(const GaloisField& f, FieldAut sigma) {
  switch (sigma.kind()) {
    case FieldAut::Kind::identity: return sigma;
    case FieldAut::Kind::conjugation:
      throw Error(ErrorCode::invalid_argument, "conjugation is not defined on " + f.spec_string());
    case FieldAut::Kind::frobenius: {
      const unsigned k = sigma.power() % f.degree();
      if ((2 * k) % f.degree() != 0)
        throw Error(ErrorCode::invalid_argument, sigma.to_string() + " has order > 2 on " + f.spec_string());
      return FieldAut::frobenius(k);
    }
  }
  return sigma;
}

FieldAut validate_aut(const RationalField&, FieldAut sigma) {
  if (!sigma.is_identity()) throw Error(ErrorCode::invalid_argument, "Q has only the identity automorphism");
  return sigma;
}

FieldAut validate_aut(const QuadraticField& f, FieldAut sigma) {
  if (sigma.kind() == FieldAut::Kind::frobenius)
    throw Error(ErrorCode::invalid_argument, "frobenius is not defined on " + f.spec_string());
  return sigma;
}

FieldAut validate_aut_for(const QuadElem& x, FieldAut sigma) { return validate_aut(QuadraticField(x.d), sigma); }

std::vector<FieldAut> involutive_automorphisms(const GaloisField& f) {
  std::vector<FieldAut> out{FieldAut::identity()};
  if (f.degree() % 2 == 0) out.push_back(FieldAut::frobenius(f.degree() / 2));
  return out;
}

GFElem apply_aut(const FieldAut& sigma, GFElem x) {
  switch (sigma.kind()) {
    case FieldAut::Kind::identity: return x;
    case FieldAut::Kind::frobenius: return {x.field, x.field->frobenius(x.index, sigma.power())};
    case FieldAut::Kind::conjugation: break;
  }
  throw Error(ErrorCode::invalid_argument, "conjugation applied to a finite field element");
}

Rational apply_aut(const FieldAut& sigma, const Rational& x) {
  if (!sigma.is_identity()) throw Error(ErrorCode::invalid_argument, sigma.to_string() + " applied to a rational");
  return x;
}

QuadElem apply_aut(const FieldAut& sigma, const QuadElem& x) {
  switch (sigma.kind()) {
    case FieldAut::Kind::identity: return x;
    case FieldAut::Kind::conjugation: return {x.d, x.x, -x.y};
    case FieldAut::Kind::frobenius: break;
  }
  throw Error(ErrorCode::invalid_argument, "frobenius applied to an element of Q(sqrt d)");
}

// ---------------------------------------------------------------------------

FieldSpec FieldSpec::finite(std::uint64_t q) {
  const auto [p, n] = prime_power_decomposition(q);
  if (p == 0) throw Error(ErrorCode::invalid_argument, std::to_string(q) + " is not a prime power");
  return FieldSpec{PrimePower{p, n, default_modulus(p, n)}};
}

FieldSpec FieldSpec::parse(std::string_view text) {
  if (text == "Q") return FieldSpec{Rationals{}};
  if (text.substr(0, 7) == "Q(sqrt:" && text.size() > 8 && text.back() == ')') {
    const std::int64_t d = parse_int64(text.substr(7, text.size() - 8));
    QuadraticField check(d);
    return FieldSpec{QuadraticRationals{d}};
  }
  if (text.substr(0, 3) == "Fq:") {
    std::string_view rest = text.substr(3);
    std::string_view mod_part;
    if (const auto slash = rest.find('/'); slash != std::string_view::npos) {
      mod_part = rest.substr(slash + 1);
      rest = rest.substr(0, slash);
      if (mod_part.substr(0, 8) != "modulus=")
        throw Error(ErrorCode::parse_error, "expected 'modulus=' in '" + std::string(text) + "'");
      mod_part = mod_part.substr(8);
    }
    PrimePower pp;
    if (const auto caret = rest.find('^'); caret != std::string_view::npos) {
      pp.p = parse_uint32(rest.substr(0, caret));
      pp.n = parse_uint32(rest.substr(caret + 1));
    } else {
      const auto [p, n] = prime_power_decomposition(parse_uint32(rest));
      pp.p = p;
      pp.n = n;
    }
    if (!is_prime(pp.p) || pp.n == 0)
      throw Error(ErrorCode::parse_error, "bad prime power in '" + std::string(text) + "'");
    if (mod_part.empty()) {
      pp.modulus = default_modulus(pp.p, pp.n);
    } else {
      std::size_t start = 0;
      while (start <= mod_part.size()) {
        const auto comma = mod_part.find(',', start);
        const auto piece = mod_part.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        pp.modulus.push_back(parse_uint32(piece));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    }
    return FieldSpec{pp};
  }
  throw Error(ErrorCode::parse_error, "unrecognised field spec '" + std::string(text) + "'");
}

std::string FieldSpec::to_string() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Rationals>) {
          return "Q";
        } else if constexpr (std::is_same_v<K, QuadraticRationals>) {
          return "Q(sqrt:" + std::to_string(k.d) + ")";
        } else {
          std::string out = "Fq:" + std::to_string(k.p);
          if (k.n == 1) return out;
          out += '^' + std::to_string(k.n) + "/modulus=";
          for (std::size_t i = 0; i < k.modulus.size(); ++i) out += (i ? "," : "") + std::to_string(k.modulus[i]);
          return out;
        }
      },
      kind);
}

AnyField make_field(const FieldSpec& spec) {
  return std::visit(
      [](const auto& k) -> AnyField {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FieldSpec::Rationals>) {
          return RationalField{};
        } else if constexpr (std::is_same_v<K, FieldSpec::QuadraticRationals>) {
          return QuadraticField(k.d);
        } else {
          if (k.n == 1 || k.modulus == default_modulus(k.p, k.n)) {
            std::uint64_t q = 1;
            for (unsigned i = 0; i < k.n; ++i) q *= k.p;
            return galois_field(q);
          }
          return std::make_shared<const GaloisField>(k.p, k.n, k.modulus);
        }
      },
      spec.kind);
}

}  // namespace flipbench
