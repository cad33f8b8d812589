#include "kh/homology.hpp"

#include <omp.h>

#include <algorithm>

namespace kh {

namespace {

struct BlockResult {
  int q;
  std::vector<std::pair<int, TableCell>> cells;  // (t, cell)
};

BlockResult block_homology(const QBlock& b, const CoefficientRing& ring) {
  BlockResult res;
  res.q = b.q;
  const int nt = (int)b.dims.size();
  const int nd = (int)b.diffs.size();

  if (ring.kind == CoefficientRing::Kind::Z) {
    std::vector<std::vector<mpz_class>> diag(nd);
    std::vector<long> rank(nd, 0);
    for (int i = 0; i < nd; ++i) {
      diag[i] = smith_diagonal(b.diffs[i]);
      rank[i] = (long)diag[i].size();
    }
    for (int i = 0; i < nt; ++i) {
      TableCell cell;
      long rout = (i < nd) ? rank[i] : 0;
      long rin = (i > 0) ? rank[i - 1] : 0;
      cell.rank = b.dims[i] - rout - rin;
      if (i > 0)
        for (const auto& v : diag[i - 1])
          if (v > 1) {
            auto f = prime_power_factors(v);
            cell.torsion.insert(cell.torsion.end(), f.begin(), f.end());
          }
      std::sort(cell.torsion.begin(), cell.torsion.end());
      if (!cell.trivial()) res.cells.push_back({b.tmin + i, std::move(cell)});
    }
  } else {
    std::vector<long> rank(nd, 0);
    for (int i = 0; i < nd; ++i)
      rank[i] = (ring.kind == CoefficientRing::Kind::Q) ? rank_over_q(b.diffs[i])
                                                        : rank_mod_p(b.diffs[i], ring.p);
    for (int i = 0; i < nt; ++i) {
      TableCell cell;
      long rout = (i < nd) ? rank[i] : 0;
      long rin = (i > 0) ? rank[i - 1] : 0;
      cell.rank = b.dims[i] - rout - rin;
      if (!cell.trivial()) res.cells.push_back({b.tmin + i, std::move(cell)});
    }
  }
  return res;
}

}  // namespace

GradedTable homology_of_blocks(std::vector<QBlock> blocks, const CoefficientRing& ring,
                               int threads) {
  std::sort(blocks.begin(), blocks.end(),
            [](const QBlock& a, const QBlock& b) { return a.q < b.q; });
  std::vector<BlockResult> results(blocks.size());
  if (threads < 1) threads = 1;

#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < (int)blocks.size(); ++i) results[i] = block_homology(blocks[i], ring);

  GradedTable table(ring);
  for (const auto& r : results)
    for (const auto& [t, cell] : r.cells) table.set(t, r.q, cell);
  return table;
}

}  // namespace kh
