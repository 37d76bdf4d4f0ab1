#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flipbench {

using Integer = boost::multiprecision::cpp_int;
/// Always kept in lowest terms with a positive denominator by the backend.
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

Rational inverse(const Rational& r);  // throws division_by_zero

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& r) { return r == 0; }

/// Floor square root for non-negative integers; returns nullopt for negatives.
std::optional<Integer> isqrt(const Integer& n);
std::optional<Integer> exact_sqrt(const Integer& n);
std::optional<Rational> exact_sqrt(const Rational& r);

/// Prime factorization by trial division. Throws size_limit once the cofactor
/// left after dividing out every prime below `trial_limit` is not provably prime.
std::vector<std::pair<Integer, unsigned>> factorize(Integer n,
                                                    std::uint64_t trial_limit = 10'000'000);

/// `3`, `-2/5`, ... Whitespace is not accepted.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

}  // namespace flipbench
