#include "flipbench/sl2.hpp"

namespace flipbench {

std::vector<ProjPoint<GFElem>> projective_line(const GaloisField& f) {
  std::vector<ProjPoint<GFElem>> out;
  out.reserve(f.order() + 1);
  for (const GFElem x : f.elements()) out.push_back({x, f.one()});
  out.push_back(infinity_point(f.one()));
  return out;
}

std::vector<Mat2<GFElem>> enumerate_group(const GaloisField& f, GroupMode mode, std::uint32_t max_q) {
  if (f.order() > max_q)
    throw Error(ErrorCode::size_limit, "group enumeration refused for q = " + std::to_string(f.order()) +
                                           " > " + std::to_string(max_q));
  const auto elems = f.elements();
  const GFElem one = f.one();
  std::vector<Mat2<GFElem>> out;
  out.reserve(group_order(f.order(), mode));
  auto emit = [&](const Mat2<GFElem>& g) {
    if (mode == GroupMode::SL || psl_canonical(g) == g) out.push_back(g);
  };
  // Loop over (a, b, c) in order and solve for d; this visits matrices in
  // lexicographic order without a determinant filter over all q^4 tuples.
  for (const GFElem a : elems) {
    for (const GFElem b : elems) {
      if (is_zero(a)) {
        if (is_zero(b)) continue;
        const GFElem c = -inverse(b);
        for (const GFElem d : elems) emit({a, b, c, d});
        continue;
      }
      const GFElem ai = inverse(a);
      for (const GFElem c : elems) emit({a, b, c, (one + b * c) * ai});
    }
  }
  return out;
}

}  // namespace flipbench
