#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "kh/diagram.hpp"
#include "kh/homology.hpp"
#include "kh/table.hpp"

namespace kh {

// Thrown when a diagram is too large for the full cube of resolutions.
struct CubeThresholdError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr int kDefaultNaiveThreshold = 14;

// One generator of the cube complex: a smoothing vertex plus a choice of
// algebra factor per circle (bit set = the degree -1 generator x).
struct CubeGenerator {
  uint32_t vertex = 0;
  uint32_t labels = 0;
  int t = 0;
  int q = 0;
};

// The full Khovanov cube of a diagram. Homological grading t = r - N-,
// quantum grading q = deg + r + N+ - 2N- with deg counting +1 per plain
// factor and -1 per x factor. Edge signs follow the parity of the
// 1-entries before the flipped coordinate.
class ChainComplex {
 public:
  int tmin() const { return tmin_; }
  int tmax() const { return tmin_ + (int)gens_.size() - 1; }
  const std::vector<CubeGenerator>& generators(int t) const { return gens_.at(t - tmin_); }
  // matrix from degree t to t+1; rows = generators(t+1), cols = generators(t)
  const SparseIntMat& differential(int t) const { return diffs_.at(t - tmin_); }

  bool d_squared_is_zero() const;
  std::vector<QBlock> q_blocks() const;
  GradedTable homology(const CoefficientRing& ring, int threads = 1) const;

 private:
  friend ChainComplex build_cube(const Diagram&, int);
  int tmin_ = 0;
  std::vector<std::vector<CubeGenerator>> gens_;
  std::vector<SparseIntMat> diffs_;
};

ChainComplex build_cube(const Diagram& d, int max_crossings = kDefaultNaiveThreshold);

// convenience: full cube then homology
GradedTable naive_khovanov(const Diagram& d, const CoefficientRing& ring, int threads = 1,
                           int max_crossings = kDefaultNaiveThreshold);

}  // namespace kh
