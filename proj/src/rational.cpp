#include "flipbench/rational.hpp"

#include "flipbench/error.hpp"

#include <boost/multiprecision/miller_rabin.hpp>

#include <cctype>

namespace flipbench {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::mismatched_owner: return "mismatched-owners";
    case ErrorCode::unsupported_field: return "unsupported-field";
    case ErrorCode::infinite_field: return "infinite-field";
    case ErrorCode::size_limit: return "size-limit";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::zero_argument: return "zero-argument";
    case ErrorCode::not_an_automorphism: return "not-an-automorphism";
    case ErrorCode::not_a_flip: return "not-a-flip";
    case ErrorCode::delta_not_a_norm: return "delta-not-a-norm";
    case ErrorCode::no_such_x: return "no-such-x";
    case ErrorCode::tau_not_involutory: return "tau-not-involutory";
    case ErrorCode::zero_divisor: return "zero-divisor";
    case ErrorCode::closure_cap_exceeded: return "closure-cap-exceeded";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::no_witness: return "no-witness";
    case ErrorCode::search_exhausted: return "search-exhausted";
  }
  return "unknown";
}

Rational inverse(const Rational& r) {
  if (r == 0) throw Error(ErrorCode::division_by_zero, "inverse of rational zero");
  return Rational(1) / r;
}

std::optional<Integer> isqrt(const Integer& n) {
  if (n < 0) return std::nullopt;
  return boost::multiprecision::sqrt(n);
}

std::optional<Integer> exact_sqrt(const Integer& n) {
  auto root = isqrt(n);
  if (!root || (*root) * (*root) != n) return std::nullopt;
  return root;
}

std::optional<Rational> exact_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  auto num = exact_sqrt(numerator(r));
  auto den = exact_sqrt(denominator(r));
  if (!num || !den) return std::nullopt;
  return Rational(*num, *den);
}

namespace {

bool is_probable_prime(const Integer& n) {
  return boost::multiprecision::miller_rabin_test(n, 25);
}

}  // namespace

std::vector<std::pair<Integer, unsigned>> factorize(Integer n, std::uint64_t trial_limit) {
  if (n < 0) n = -n;
  if (n == 0) throw Error(ErrorCode::invalid_argument, "cannot factor zero");
  std::vector<std::pair<Integer, unsigned>> out;
  if (n > 1 && n > Integer(trial_limit) && is_probable_prime(n)) return {{n, 1}};
  for (std::uint64_t p = 2; p <= trial_limit; p += (p == 2 ? 1 : 2)) {
    const Integer pp(p);
    if (pp * pp > n) break;
    unsigned e = 0;
    while (n % pp == 0) {
      n /= pp;
      ++e;
    }
    if (e > 0) out.emplace_back(pp, e);
  }
  if (n > 1) {
    const Integer limit(trial_limit);
    if (n > limit * limit && !is_probable_prime(n))
      throw Error(ErrorCode::size_limit, "integer too large to factor by trial division");
    out.emplace_back(n, 1);
  }
  return out;
}

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Integer {
    if (s.empty()) throw Error(ErrorCode::parse_error, "empty integer in '" + std::string(text) + "'");
    std::size_t i = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      i = 1;
    }
    if (i == s.size()) throw Error(ErrorCode::parse_error, "bad integer '" + std::string(s) + "'");
    Integer v = 0;
    for (; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw Error(ErrorCode::parse_error, "bad integer '" + std::string(s) + "'");
      v = v * 10 + (s[i] - '0');
    }
    return neg ? Integer(-v) : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const Integer num = parse_int(text.substr(0, slash));
  const Integer den = parse_int(text.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::division_by_zero, "zero denominator in '" + std::string(text) + "'");
  return Rational(num) / Rational(den);
}

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace flipbench
