#pragma once

#include <vector>

#include "kh/linalg.hpp"
#include "kh/table.hpp"

namespace kh {

// Chain data at a fixed quantum grading: dims[i] generators at homological
// degree tmin+i, diffs[i] the matrix tmin+i -> tmin+i+1 (rows index the
// target, columns the source).
struct QBlock {
  int q = 0;
  int tmin = 0;
  std::vector<long> dims;
  std::vector<SparseIntMat> diffs;  // size dims.size()-1 (or empty)
};

// Homology of independent quantum-grading blocks. Blocks are processed in
// parallel; the result is assembled in q order and is identical for any
// thread count.
GradedTable homology_of_blocks(std::vector<QBlock> blocks, const CoefficientRing& ring,
                               int threads = 1);

}  // namespace kh
