#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace kh {

// Raised on malformed PD codes, bad arc multiplicities and the like.
struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CrossingSite {
  int index = 0;       // crossing index
  int resolution = 0;  // 0 or 1
};

struct ResolveResult;
struct R1Result;

// Oriented link diagram given by PD crossings plus crossingless circles.
//
// A crossing X[a,b,c,d] lists the four arcs counterclockwise; the strand
// a-c passes under the strand b-d. With orientations fixed, the first
// entry is the incoming under-arc in the conventional writing, but the
// stored quadruple itself is orientation-free: per-component direction
// flags live next to it and every "incoming" question is derived.
//
// Default orientation: each component runs from its minimal arc toward
// that arc's smaller-labelled neighbour (ties broken by lowest
// (crossing, slot) occurrence).
class Diagram {
 public:
  Diagram() = default;

  static Diagram from_parts(std::vector<std::array<int, 4>> crossings, int free_loops,
                            std::vector<int> reversed = {});
  static Diagram from_pd_code(const std::string& text);
  static Diagram from_json(const nlohmann::ordered_json& j);

  std::string to_pd_code() const;
  nlohmann::ordered_json to_json() const;

  int crossing_count() const { return (int)crossings_.size(); }
  int free_loops() const { return free_loops_; }
  const std::vector<std::array<int, 4>>& crossings() const { return crossings_; }

  int arc_count() const { return (int)arcs_.size(); }
  const std::vector<int>& arc_labels() const { return arcs_; }
  int arc_index(int label) const;

  int component_count() const { return ncomp_; }
  int component_of_arc(int label) const;
  // minimal arc label of each component, in component order
  std::vector<int> component_min_arcs() const;

  const std::vector<int>& reversed_flags() const { return reversed_; }
  Diagram with_orientation(std::vector<int> reversed) const;
  Diagram with_components_reversed(const std::vector<int>& comps) const;
  Diagram with_all_reversed() const;

  // true if the arc's direction points out of occurrence 1 (i.e. its head
  // is occurrence 1 of the two (crossing,slot) occurrences, in scan order)
  bool arc_head_is_second(int arc_idx) const { return head_occ_[arc_idx]; }

  // slot (0 or 2) where the under-strand enters, per crossing; same for
  // the over-strand with slots 1 or 3
  int under_in_slot(int crossing) const;
  int over_in_slot(int crossing) const;

  std::vector<int> crossing_signs() const;
  int writhe() const;
  int positive_crossings() const;
  int negative_crossings() const;

  Diagram mirrored() const;

  ResolveResult resolved(const CrossingSite& site) const;
  R1Result r1_reduced() const;

  // deterministic relabeling (arcs renamed by first appearance after
  // sorting), used as a memo key; isomorphic inputs usually collide
  Diagram canonical() const;

  bool operator==(const Diagram& o) const {
    return crossings_ == o.crossings_ && free_loops_ == o.free_loops_ &&
           reversed_ == o.reversed_;
  }

 private:
  void finalize();
  void orient_defaults();

  std::vector<std::array<int, 4>> crossings_;
  int free_loops_ = 0;
  std::vector<int> reversed_;  // per component, 0 = default direction

  // derived
  std::vector<int> arcs_;                       // sorted distinct labels
  std::vector<std::array<int, 2>> occ_;         // per arc: packed (crossing*4+slot), 2 entries
  std::vector<int> comp_of_arc_;                // per arc index
  std::vector<char> head_occ_;                  // per arc: head at occ 0 or 1 (current orientation)
  std::vector<char> head_occ_default_;          // same, for default orientation
  int ncomp_ = 0;
};

struct ResolveResult {
  Diagram diagram;
  int loops_created = 0;
  bool orientation_consistent = false;  // all inherited arc directions agreed
};

struct R1Result {
  Diagram diagram;
  int kinks_removed = 0;
  int delta_writhe = 0;    // writhe(out) - writhe(in)
  int delta_negative = 0;  // N-(out) - N-(in)
};

}  // namespace kh
