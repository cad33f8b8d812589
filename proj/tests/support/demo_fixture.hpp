#pragma once

#include <optional>
#include <vector>

#include "kh/family.hpp"
#include "kh/tangle.hpp"

namespace khtest {

// Order-4 rotor, two crossings per sector: the outer strand of each sector
// dips under a closed ring circling the centre.
inline kh::Tangle demo_rotor() {
  std::vector<std::array<int, 4>> xs;
  std::vector<int> boundary(8);
  for (int i = 0; i < 4; ++i) {
    int tin = i + 1;
    int tout = (i + 1) % 4 + 1;
    int t1 = 5 + 4 * i, o0 = 6 + 4 * i, o1 = 7 + 4 * i, o2 = 8 + 4 * i;
    xs.push_back({o0, tin, o1, t1});
    xs.push_back({o2, t1, o1, tout});
    boundary[2 * i] = o0;
    boundary[2 * i + 1] = o2;
  }
  return kh::Tangle::from_parts(std::move(xs), std::move(boundary), 0);
}

// crossingless stator with one nested strand pair (the twist site) and two
// petals; the nesting makes both twist parities orientable with all
// parametrized crossings negative
inline kh::Tangle demo_stator() {
  return kh::Tangle::from_parts({}, {41, 42, 42, 41, 43, 43, 44, 44}, 0);
}

inline kh::FixtureBundle demo_fixture_unoriented() {
  kh::FixtureBundle fx;
  fx.rotor = demo_rotor();
  fx.stator = demo_stator();
  fx.twist_site = {41, 42};
  fx.rotate_axis = 1;  // reflection keeping the petal pairing
  return fx;
}

// orientation rules are found by search: one flag vector per parity that
// makes every ladder crossing negative in both the link and its rotated
// partner
inline std::optional<std::vector<int>> find_negative_rules(const kh::FixtureBundle& fx,
                                                           int twists) {
  kh::TwistResult a = kh::build_parametrized(fx, twists, false);
  kh::TwistResult b = kh::build_parametrized(fx, twists, true);
  int nc = a.diagram.component_count();
  if (b.diagram.component_count() != nc) return std::nullopt;
  for (int mask = 0; mask < (1 << nc); ++mask) {
    std::vector<int> flags(nc);
    for (int i = 0; i < nc; ++i) flags[i] = (mask >> i) & 1;
    bool ok = true;
    for (const kh::TwistResult* tw : {&a, &b}) {
      auto d = tw->diagram.with_orientation(flags);
      auto signs = d.crossing_signs();
      for (int idx : tw->meta.crossing_indices)
        if (signs[idx] != -1) ok = false;
    }
    if (ok) return flags;
  }
  return std::nullopt;
}

inline kh::FixtureBundle demo_fixture() {
  kh::FixtureBundle fx = demo_fixture_unoriented();
  auto even = find_negative_rules(fx, -20);
  auto odd = find_negative_rules(fx, -21);
  if (!even || !odd) throw std::runtime_error("demo fixture orientation search failed");
  fx.orient_even = *even;
  fx.orient_odd = *odd;
  return fx;
}

}  // namespace khtest
