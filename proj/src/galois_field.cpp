#include "flipbench/galois_field.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>

namespace flipbench {

namespace {

constexpr std::uint32_t kTableLimit = 256;
constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 30;

struct ModulusEntry {
  std::uint32_t p;
  unsigned n;
  std::vector<std::uint32_t> modulus;
};

// First monic irreducible in coefficient-index order, for every q <= 128.
const std::vector<ModulusEntry>& modulus_table() {
  static const std::vector<ModulusEntry> table = {
      {2, 2, {1, 1, 1}},
      {2, 3, {1, 1, 0, 1}},
      {2, 4, {1, 1, 0, 0, 1}},
      {2, 5, {1, 0, 1, 0, 0, 1}},
      {2, 6, {1, 1, 0, 0, 0, 0, 1}},
      {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
      {3, 2, {1, 0, 1}},
      {3, 3, {1, 2, 0, 1}},
      {3, 4, {2, 1, 0, 0, 1}},
      {5, 2, {2, 0, 1}},
      {5, 3, {1, 1, 0, 1}},
      {7, 2, {1, 0, 1}},
      {11, 2, {1, 0, 1}},
  };
  return table;
}

// Remainder of a by the monic polynomial m over F_p, in place.
void poly_reduce(std::vector<std::uint64_t>& a, const std::vector<std::uint32_t>& m, std::uint32_t p) {
  const std::size_t dm = m.size() - 1;
  for (std::size_t i = a.size(); i-- > dm;) {
    const std::uint64_t c = a[i] % p;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dm; ++j) {
      const std::size_t k = i - dm + j;
      a[k] = (a[k] + (p - c) * m[j]) % p;
    }
  }
  a.resize(std::min(a.size(), dm));
}

bool poly_divides(const std::vector<std::uint32_t>& d, const std::vector<std::uint32_t>& f, std::uint32_t p) {
  std::vector<std::uint64_t> a(f.begin(), f.end());
  poly_reduce(a, d, p);
  return std::all_of(a.begin(), a.end(), [p](std::uint64_t c) { return c % p == 0; });
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::pair<std::uint32_t, unsigned> prime_power_decomposition(std::uint64_t q) noexcept {
  if (q < 2) return {0, 0};
  std::uint64_t p = 2;
  while (q % p != 0) ++p;
  unsigned n = 0;
  while (q % p == 0) {
    q /= p;
    ++n;
  }
  if (q != 1 || p > 0xffffffffu) return {0, 0};
  return {static_cast<std::uint32_t>(p), n};
}

std::vector<std::uint32_t> prime_powers_up_to(std::uint32_t max_q) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 2; q <= max_q; ++q)
    if (prime_power_decomposition(q).first != 0) out.push_back(q);
  return out;
}

bool is_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& monic) {
  const unsigned n = static_cast<unsigned>(monic.size()) - 1;
  for (unsigned d = 1; d <= n / 2; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    std::vector<std::uint32_t> g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::uint64_t r = idx;
      for (unsigned i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
      if (poly_divides(g, monic, p)) return false;
    }
  }
  return true;
}

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned n) {
  if (n == 1) return {0, 1};
  for (const auto& e : modulus_table())
    if (e.p == p && e.n == n) return e.modulus;
  std::uint64_t count = 1;
  for (unsigned i = 0; i < n; ++i) count *= p;
  std::vector<std::uint32_t> f(n + 1, 0);
  f[n] = 1;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t r = idx;
    for (unsigned i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(r % p);
      r /= p;
    }
    if (f[0] != 0 && is_irreducible(p, f)) return f;
  }
  throw Error(ErrorCode::invalid_argument, "no irreducible polynomial found");
}

GaloisField::GaloisField(std::uint32_t p) : GaloisField(p, 1, {0, 1}) {}

GaloisField::GaloisField(std::uint32_t p, unsigned n, std::vector<std::uint32_t> modulus)
    : p_(p), n_(n), q_(0), modulus_(std::move(modulus)) {
  if (!is_prime(p)) throw Error(ErrorCode::invalid_argument, "characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw Error(ErrorCode::invalid_argument, "extension degree must be positive");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorCode::size_limit, "field order exceeds 2^30");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (modulus_.size() != n + 1) throw Error(ErrorCode::invalid_argument, "modulus must have degree n");
  for (auto& c : modulus_)
    if (c >= p) throw Error(ErrorCode::invalid_argument, "modulus coefficient not reduced mod p");
  if (modulus_.back() != 1) throw Error(ErrorCode::invalid_argument, "modulus must be monic");
  if (n > 1 && !is_irreducible(p, modulus_))
    throw Error(ErrorCode::invalid_argument, "modulus is not irreducible over F_" + std::to_string(p));
  if (q_ <= kTableLimit) build_tables();
}

std::uint32_t GaloisField::encode(const std::vector<std::uint32_t>& c) const noexcept {
  std::uint64_t v = 0;
  for (std::size_t i = c.size(); i-- > 0;) v = v * p_ + c[i];
  return static_cast<std::uint32_t>(v);
}

std::vector<std::uint32_t> GaloisField::coefficients(GFElem x) const {
  std::vector<std::uint32_t> c(n_);
  std::uint32_t r = x.index;
  for (unsigned i = 0; i < n_; ++i) {
    c[i] = r % p_;
    r /= p_;
  }
  return c;
}

std::uint32_t GaloisField::mul_direct(std::uint32_t x, std::uint32_t y) const noexcept {
  if (n_ == 1) return static_cast<std::uint32_t>(std::uint64_t{x} * y % p_);
  const auto a = coefficients({this, x});
  const auto b = coefficients({this, y});
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
  poly_reduce(prod, modulus_, p_);
  std::vector<std::uint32_t> c(n_, 0);
  for (std::size_t i = 0; i < prod.size(); ++i) c[i] = static_cast<std::uint32_t>(prod[i]);
  return encode(c);
}

std::uint32_t GaloisField::pow_direct(std::uint32_t x, std::uint64_t e) const noexcept {
  std::uint32_t result = 1;
  while (e > 0) {
    if (e & 1) result = mul_direct(result, x);
    x = mul_direct(x, x);
    e >>= 1;
  }
  return result;
}

void GaloisField::build_tables() {
  const std::size_t q = q_;
  add_.assign(q * q, 0);
  mul_.assign(q * q, 0);
  neg_.assign(q, 0);
  inv_.assign(q, 0);
  frob_.assign(q, 0);
  for (std::uint32_t x = 0; x < q_; ++x) {
    const auto a = coefficients({this, x});
    std::vector<std::uint32_t> c(n_);
    for (unsigned i = 0; i < n_; ++i) c[i] = (p_ - a[i]) % p_;
    neg_[x] = encode(c);
    for (std::uint32_t y = 0; y < q_; ++y) {
      const auto b = coefficients({this, y});
      for (unsigned i = 0; i < n_; ++i) c[i] = (a[i] + b[i]) % p_;
      add_[x * q + y] = encode(c);
      mul_[x * q + y] = mul_direct(x, y);
    }
  }
  for (std::uint32_t x = 1; x < q_; ++x)
    for (std::uint32_t y = 1; y < q_; ++y)
      if (mul_[x * q + y] == 1) {
        inv_[x] = y;
        break;
      }
  for (std::uint32_t x = 0; x < q_; ++x) frob_[x] = pow_direct(x, p_);
  tabled_ = true;
}

std::uint32_t GaloisField::add(std::uint32_t x, std::uint32_t y) const noexcept {
  if (tabled_) return add_[std::size_t{x} * q_ + y];
  if (n_ == 1) return static_cast<std::uint32_t>((std::uint64_t{x} + y) % p_);
  auto a = coefficients({this, x});
  const auto b = coefficients({this, y});
  for (unsigned i = 0; i < n_; ++i) a[i] = (a[i] + b[i]) % p_;
  return encode(a);
}

std::uint32_t GaloisField::neg(std::uint32_t x) const noexcept {
  if (tabled_) return neg_[x];
  if (n_ == 1) return x == 0 ? 0 : p_ - x;
  auto a = coefficients({this, x});
  for (auto& c : a) c = (p_ - c) % p_;
  return encode(a);
}

std::uint32_t GaloisField::sub(std::uint32_t x, std::uint32_t y) const noexcept { return add(x, neg(y)); }

std::uint32_t GaloisField::mul(std::uint32_t x, std::uint32_t y) const noexcept {
  if (tabled_) return mul_[std::size_t{x} * q_ + y];
  return mul_direct(x, y);
}

std::uint32_t GaloisField::inv(std::uint32_t x) const {
  if (x == 0) throw Error(ErrorCode::division_by_zero, "inverse of zero in " + spec_string());
  if (tabled_) return inv_[x];
  return pow_direct(x, std::uint64_t{q_} - 2);
}

std::uint32_t GaloisField::frobenius(std::uint32_t x, unsigned k) const noexcept {
  k %= n_;
  for (unsigned i = 0; i < k; ++i) x = tabled_ ? frob_[x] : pow_direct(x, p_);
  return x;
}

GFElem GaloisField::generator() const {
  if (n_ == 1) return one();
  return {this, p_};
}

GFElem GaloisField::element(std::uint32_t index) const {
  if (index >= q_) throw Error(ErrorCode::invalid_argument, "element index out of range");
  return {this, index};
}

GFElem GaloisField::from_int(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return {this, static_cast<std::uint32_t>(r)};
}

GFElem GaloisField::from_coefficients(const std::vector<std::int64_t>& c) const {
  std::vector<std::uint64_t> a(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t r = c[i] % static_cast<std::int64_t>(p_);
    a[i] = static_cast<std::uint64_t>(r < 0 ? r + p_ : r);
  }
  if (a.size() > n_) poly_reduce(a, modulus_, p_);
  std::vector<std::uint32_t> out(n_, 0);
  for (std::size_t i = 0; i < a.size() && i < n_; ++i) out[i] = static_cast<std::uint32_t>(a[i]);
  return {this, encode(out)};
}

std::vector<GFElem> GaloisField::elements() const {
  std::vector<GFElem> out;
  out.reserve(q_);
  for (std::uint32_t i = 0; i < q_; ++i) out.push_back({this, i});
  return out;
}

std::vector<GFElem> GaloisField::nonzero_elements() const {
  std::vector<GFElem> out;
  out.reserve(q_ - 1);
  for (std::uint32_t i = 1; i < q_; ++i) out.push_back({this, i});
  return out;
}

std::string GaloisField::format(GFElem x) const {
  if (n_ == 1) return std::to_string(x.index);
  const auto c = coefficients(x);
  std::string out;
  for (unsigned i = n_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0 || c[i] != 1) out += std::to_string(c[i]);
    if (i >= 1) out += 't';
    if (i >= 2) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

GFElem GaloisField::parse(std::string_view text) const {
  const auto fail = [&]() -> Error {
    return Error(ErrorCode::parse_error, "bad element '" + std::string(text) + "' for " + spec_string());
  };
  if (text.empty()) throw fail();
  std::vector<std::int64_t> coeffs;
  std::size_t i = 0;
  while (i < text.size()) {
    std::int64_t sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      throw fail();
    }
    std::int64_t coef = 1;
    bool have_digits = false;
    std::int64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = (v * 10 + (text[i] - '0')) % static_cast<std::int64_t>(p_);
      have_digits = true;
      ++i;
    }
    if (have_digits) coef = v;
    if (i < text.size() && text[i] == '*') {
      if (!have_digits) throw fail();
      ++i;
      if (i >= text.size() || text[i] != 't') throw fail();
    }
    std::size_t power = 0;
    if (i < text.size() && text[i] == 't') {
      if (n_ == 1) throw fail();
      ++i;
      power = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        std::size_t e = 0;
        bool digits = false;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          e = e * 10 + static_cast<std::size_t>(text[i] - '0');
          digits = true;
          ++i;
        }
        if (!digits || e > 4096) throw fail();
        power = e;
      }
    } else if (!have_digits) {
      throw fail();
    }
    if (coeffs.size() <= power) coeffs.resize(power + 1, 0);
    coeffs[power] += sign * coef;
  }
  return from_coefficients(coeffs);
}

std::string GaloisField::spec_string() const {
  std::string out = "Fq:" + std::to_string(p_);
  if (n_ == 1) return out;
  out += '^' + std::to_string(n_) + "/modulus=";
  for (std::size_t i = 0; i < modulus_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(modulus_[i]);
  }
  return out;
}

std::shared_ptr<const GaloisField> galois_field(std::uint64_t q) {
  static std::mutex mutex;
  static std::map<std::uint64_t, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(q); it != cache.end()) return it->second;
  const auto [p, n] = prime_power_decomposition(q);
  if (p == 0) throw Error(ErrorCode::invalid_argument, std::to_string(q) + " is not a prime power");
  auto field = std::make_shared<const GaloisField>(p, n, default_modulus(p, n));
  cache.emplace(q, field);
  return field;
}

void require_same_field(const GFElem& x, const GFElem& y) {
  if (x.field != y.field || x.field == nullptr)
    throw Error(ErrorCode::mismatched_owner, "elements belong to different fields");
}

std::string to_string(GFElem x) { return x.field->format(x); }

}  // namespace flipbench
