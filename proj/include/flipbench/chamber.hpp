#pragma once

#include "flipbench/perm.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace flipbench {

/// A finite set {0, ..., points-1} with equivalence relations given by class labels.
struct ChamberSystem {
  std::size_t points = 0;
  /// relations[i][x] is the class of x under the i-th relation.
  std::vector<std::vector<std::uint32_t>> relations;

  /// Labels are renumbered 0, 1, ... in order of first appearance. Throws
  /// invalid_argument on a label vector of the wrong length.
  static ChamberSystem from_labels(std::size_t points, std::vector<std::vector<std::uint32_t>> relations);
  [[nodiscard]] bool related(std::size_t i, std::uint32_t x, std::uint32_t y) const {
    return relations[i][x] == relations[i][y];
  }
  /// The i-panel of x.
  [[nodiscard]] std::vector<std::uint32_t> panel(std::size_t i, std::uint32_t x) const;
};

/// Permutations of the points. Construction checks that each generator maps
/// every class of every relation onto a class.
class PermAction {
 public:
  PermAction(const ChamberSystem& cs, std::vector<Perm> generators);
  [[nodiscard]] const std::vector<Perm>& generators() const noexcept { return gens_; }

 private:
  std::vector<Perm> gens_;
};

bool preserves_relations(const ChamberSystem& cs, const Perm& g);
bool is_connected(const ChamberSystem& cs);

struct PanelReport {
  std::size_t relation = 0;
  std::size_t panel_size = 0;
  std::size_t stabilizer_order = 0;
  bool transitive = false;
};

struct LocalToGlobal {
  bool local_ok = false;
  bool global_transitive = false;
  std::size_t group_order = 0;
  std::vector<PanelReport> panels;
};

/// Panel stabilizers at p inside the generated group, and the orbit of p.
/// Throws invalid_argument if cs is disconnected and closure_cap_exceeded past `cap`.
LocalToGlobal local_to_global(const PermAction& action, const ChamberSystem& cs, std::uint32_t p,
                              std::size_t cap = 1000000);

struct ProductDemo {
  std::uint32_t q = 0;
  bool expected_positive = false;  // q = 3 mod 4
  std::size_t chambers = 0;
  std::size_t k_order = 0;             // image of PK_{1,id} in PSL_2
  bool fixed_group_is_k_times_k = false;
  bool connected = false;
  LocalToGlobal local;
  bool orbits_agree = false;           // generic orbits of K on P1 vs the flips module
  std::size_t iwasawa_failures = 0;    // elements of PSL_2 with no factorization k b
  bool iwasawa_count_ok = false;       // |G_theta| |B| / |G_theta n B| = |G|
  bool converse_ok = false;            // transitive => local transitivity at the base chamber
  [[nodiscard]] bool all_checks_pass() const noexcept {
    return fixed_group_is_k_times_k && connected && local.local_ok && local.global_transitive && orbits_agree &&
           iwasawa_failures == 0 && iwasawa_count_ok && converse_ok;
  }
  /// Positive cases must pass everything; q = 1 mod 4 and even q must fail transitivity.
  [[nodiscard]] bool as_expected() const noexcept {
    if (expected_positive) return all_checks_pass();
    return fixed_group_is_k_times_k && connected && orbits_agree && !local.global_transitive && converse_ok &&
           (local.local_ok <= local.global_transitive) && iwasawa_failures > 0 && !iwasawa_count_ok;
  }
};

/// PSL_2(F_q) x PSL_2(F_q) on P1 x P1 with theta = (theta_{1,id}, theta_{1,id}). q <= 11.
ProductDemo product_demo(std::uint32_t q);

}  // namespace flipbench
