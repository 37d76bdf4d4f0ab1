#pragma once

#include "flipbench/fields.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace flipbench {

/// Three-valued outcome for decisions that may run out of search budget.
enum class Tri { no, yes, inconclusive };
std::string_view to_string(Tri t) noexcept;
inline Tri to_tri(bool b) noexcept { return b ? Tri::yes : Tri::no; }

enum class GroupMode { SL, PSL };
std::string_view to_string(GroupMode m) noexcept;
GroupMode parse_group_mode(std::string_view text);

// ---------------------------------------------------------------------------
// Norm decisions. Each returns a witness x with N(x) = c, or nullopt for a
// definitive "no". Unsupported field/automorphism pairs throw unsupported_field.

/// Smallest-index preimage by exhaustive scan.
std::optional<GFElem> norm_preimage(GFElem c, const FieldAut& sigma);
/// sigma = id on Q: rational square root.
std::optional<Rational> norm_preimage(const Rational& c, const FieldAut& sigma);
/// Conjugation on Q(sqrt d) for d in {-1, -2}: the form x^2 + |d| y^2.
std::optional<QuadElem> norm_preimage(const QuadElem& c, const FieldAut& sigma);

/// Integer solution of x^2 + k y^2 = n (k in {1, 2}, n >= 0) built from prime
/// representations, or nullopt if n is not represented.
std::optional<std::pair<Integer, Integer>> represent_binary_form(const Integer& n, unsigned k);

/// Norm images of a finite field, indexed by element index. `preimage[i]` is
/// the smallest-index x with N(x) = i, when one exists.
struct NormTable {
  std::vector<bool> is_norm;
  std::vector<std::optional<std::uint32_t>> preimage;
};
NormTable norm_table(const GaloisField& f, const FieldAut& sigma);

// ---------------------------------------------------------------------------

struct PairCheck {
  bool minus_one_is_norm = false;
  /// Sum of two norms is a norm (SL) or +-1 times a norm (PSL).
  Tri norms_closed = Tri::inconclusive;
  Tri verdict = Tri::inconclusive;
  /// First failing (n1, n2, n1 + n2) found, formatted.
  std::optional<std::array<std::string, 3>> counterexample;
  /// Witness for -1 being a norm, formatted.
  std::optional<std::string> minus_one_witness;
  std::string method;
};

struct SearchBound {
  /// Integer elements x + y sqrt(d) with |x|, |y| <= height feed the closure search.
  unsigned height = 12;
};

PairCheck iwasawa_pair_check(const GaloisField& f, const FieldAut& sigma, GroupMode mode);
PairCheck iwasawa_pair_check(const RationalField& f, const FieldAut& sigma, GroupMode mode,
                             SearchBound bound = {});
PairCheck iwasawa_pair_check(const QuadraticField& f, const FieldAut& sigma, GroupMode mode,
                             SearchBound bound = {});

/// One representative per coset of (F*)^2, each the smallest index in its class.
std::vector<GFElem> square_classes(const GaloisField& f);

}  // namespace flipbench
