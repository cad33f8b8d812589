#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "kh/diagram.hpp"
#include "kh/table.hpp"
#include "kh/tangle.hpp"

namespace kh {

// twist-parameter bookkeeping: Q(n) = -76 + 22*ceil(n/2) - 26*floor(n/2),
// c = 7 for even n and -9 for odd n, and Q(n) + 3c + 1 = Q(n+1)
struct FamilyParams {
  int n = 0;
  int parity = 0;
  long q_grading = 0;  // Q(n)
  int c = 0;
};

FamilyParams grading_params(int n);
long q_of(int n);

struct TwistSite {
  int arc_a = 0;
  int arc_b = 0;
};

struct TwistMeta {
  TwistSite site;
  std::vector<int> crossing_indices;  // ladder order; index 0 is the lowest
  int handedness = 0;                 // sign of the twist parameter
};

struct TwistResult {
  Diagram diagram;
  TwistMeta meta;
};

// insert n right-handed (n > 0) or left-handed (n < 0) half-twists between
// two parallel arcs; |n| new crossings, n = 0 returns the input
TwistResult insert_twists(const Diagram& d, const TwistSite& site, int n);

// fixture bundle: stator + rotor tangles, the stator twist location and
// per-parity orientation rules
struct FixtureBundle {
  Tangle stator;
  Tangle rotor;
  TwistSite twist_site;                 // stator arc labels
  std::vector<int> orient_even;        // component flags when the twist count is even
  std::vector<int> orient_odd;
  int rotate_axis = 0;

  static FixtureBundle from_json(const nlohmann::ordered_json& j);
  nlohmann::ordered_json to_json() const;
  static FixtureBundle load(const std::string& path);
  void save(const std::string& path) const;
};

// L(twists) or its rotated partner, with parity orientation rules applied
TwistResult build_parametrized(const FixtureBundle& fx, int twists, bool flipped);

struct FamilyPair {
  TwistResult link;     // L_n
  TwistResult rotated;  // L_n^R
  int n = 0;
  int twists = 0;  // -20 - n
};

// the shorthand family: L_n = L(-20-n), L_n^R likewise; n >= 0
FamilyPair family(const FixtureBundle& fx, int n);

struct OneResolutionResult {
  Diagram diagram;
  int kinks_removed = 0;
  bool lowest_was_negative = false;
};

// 1-resolution at the lowest parametrized crossing followed by untwisting
// the remaining parametrized twists
OneResolutionResult one_resolution_limit(const TwistResult& d);

struct LesReport {
  bool ok = false;
  bool subadditivity_ok = false;
  bool euler_ok = false;
  bool forced_iso_ok = false;
  int c = 0;
  std::vector<int> d0_orientation;
  std::string detail;  // first failure, empty when ok
};

// long-exact-sequence consistency for a negative crossing: computes Kh of
// D, D0, D1 over a field and checks subadditivity, the alternating-sum
// identity per quantum grading, and the isomorphisms forced by vanishing
// D1 columns
LesReport les_check(const Diagram& d, int crossing, const CoefficientRing& ring,
                    int threads = 1);

// the verification core on precomputed tables, with c = N-(D0) - N-(D)
LesReport les_verify_tables(const GradedTable& kd, const GradedTable& k0,
                            const GradedTable& k1, int c);

struct ChainCheckEntry {
  int n = 0;
  bool arithmetic_ok = false;
  std::optional<bool> support_ok;    // unset when not computed
  std::optional<bool> dimension_ok;  // unset when not computed
  long q_line = 0;                   // Q(n+1) + 1
  std::optional<int> support_min;
};

struct ChainCheckReport {
  std::vector<ChainCheckEntry> entries;
  bool arithmetic_all_ok = true;
  std::string to_string() const;
};

// verifies the grading identities for 0 <= n < n_max, and where the
// fixture diagrams are small enough also the support condition of the
// resolved link and the dimension equality across the forced isomorphism
ChainCheckReport proposition_chain_check(const FixtureBundle& fx, int n_max,
                                         const CoefficientRing& ring, int crossing_cap,
                                         int threads = 1);

// arithmetic-only variant, no fixture needed
ChainCheckReport proposition_chain_check_arithmetic(int n_max);

}  // namespace kh
