#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "kh/diagram.hpp"

namespace kh {

struct TangleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A tangle fragment in a disk: PD crossings plus 2n boundary endpoints in
// cyclic order. boundary[i] is the arc label ending at position i. An arc
// touching the boundary occurs once among the crossings and once (or, for
// a crossingless strand, twice) on the boundary; interior arcs occur twice
// among the crossings. The rotation system is carried by the
// counterclockwise slot order of each quadruple and the boundary cycle.
class Tangle {
 public:
  Tangle() = default;
  static Tangle from_parts(std::vector<std::array<int, 4>> crossings,
                           std::vector<int> boundary, int free_loops = 0);
  static Tangle from_json(const nlohmann::ordered_json& j);
  nlohmann::ordered_json to_json() const;

  int ends() const { return (int)boundary_.size(); }
  int crossing_count() const { return (int)crossings_.size(); }
  int free_loops() const { return free_loops_; }
  const std::vector<std::array<int, 4>>& crossings() const { return crossings_; }
  const std::vector<int>& boundary() const { return boundary_; }

  // deterministic relabeled form, for equality up to arc names
  Tangle canonical() const;
  bool operator==(const Tangle& o) const {
    return crossings_ == o.crossings_ && boundary_ == o.boundary_ &&
           free_loops_ == o.free_loops_;
  }

 private:
  std::vector<std::array<int, 4>> crossings_;
  std::vector<int> boundary_;
  int free_loops_ = 0;
};

// pi rotation through the third dimension: reflects the planar structure
// across the diameter fixed by `axis` (boundary position i maps to
// axis - i) and swaps over/under at every crossing. Axes of equal parity
// give the same result up to the rotor's symmetry; for rotors whose
// sectors pair the boundary points (2i, 2i+1) only odd axes respect the
// sector decomposition, and the rotant construction uses those.
Tangle rotate_pi(const Tangle& t, int axis = 0);

// rotation within the plane by `positions` boundary steps (no over/under
// change); `positions` = n gives the classical mutation rotation on
// 4-ended tangles
Tangle rotate_in_plane(const Tangle& t, int positions);

struct SymmetryWitness {
  bool symmetric = false;
  std::map<int, int> arc_map;       // witness relabeling
  std::map<int, int> crossing_map;  // crossing index map
};

// combinatorial automorphism sending boundary position i to i+2 (mod 2n),
// preserving slot cyclic order and over/under data
SymmetryWitness check_rotational_symmetry(const Tangle& t, int order);

// a tangle that passed the symmetry check for its order
struct Rotor {
  Tangle tangle;
  int order = 0;
};
Rotor make_rotor(Tangle t, int order);  // throws TangleError if asymmetric

struct ComposeResult {
  Diagram diagram;
  std::map<int, int> stator_arcs;  // stator label -> diagram label
  std::map<int, int> rotor_arcs;   // rotor label -> diagram label
};

// glue rotor boundary position i to stator boundary position i
ComposeResult compose_tangles(const Tangle& stator, const Tangle& rotor);

struct WritheMatch {
  bool matched = false;
  std::vector<int> orient_a, orient_b;
  int writhe = 0;
};

// search orientation assignments (up to global reversal) for equal writhes
WritheMatch writhe_match_check(const Diagram& a, const Diagram& b);

// all (orientation flags, writhe) pairs with component 0 kept forward
std::vector<std::pair<std::vector<int>, int>> writhe_options(const Diagram& d);

// n-fold symmetric rotor built from one random sector replicated n times;
// at most two crossings per sector
Tangle random_rotor(int order, uint64_t seed);

// random crossingless planar matching of `ends` boundary points
Tangle random_stator(int ends, uint64_t seed);

}  // namespace kh
