#pragma once

#include "kh/diagram.hpp"
#include "kh/table.hpp"

namespace kh {

struct ScanOptions {
  int threads = 1;
  bool check_d_squared = false;  // verify d*d = 0 after every step (slow)
};

// Khovanov homology by scanning: crossings are absorbed one at a time in a
// girth-minimizing order; closed circles are delooped into q-shifted
// generators and invertible differential entries are cancelled by Gaussian
// elimination, so the working complex stays near homology size. Produces
// the same table as the full cube.
GradedTable scan_khovanov(const Diagram& d, const CoefficientRing& ring,
                          const ScanOptions& opts = {});

// greedy crossing order minimizing the open-strand frontier
std::vector<int> scan_order(const Diagram& d);

// naive cube below the threshold, scanning engine above it
GradedTable khovanov_auto(const Diagram& d, const CoefficientRing& ring, int threads = 1,
                          int naive_threshold = 14);

}  // namespace kh
