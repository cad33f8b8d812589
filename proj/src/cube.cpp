#include "kh/cube.hpp"

#include <omp.h>

#include <algorithm>
#include <map>
#include <numeric>

namespace kh {

namespace {

// circles of one full smoothing: returns per-arc circle ids (dense, by
// minimal arc) and the count; free loops are appended after the arc circles
struct Circles {
  std::vector<int> of_arc;
  int count = 0;
};

Circles smoothing_circles(const Diagram& d, uint32_t v) {
  const int m = d.arc_count();
  std::vector<int> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  auto root = [&](int x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = root(a);
    b = root(b);
    if (a != b) uf[std::max(a, b)] = std::min(a, b);
  };
  for (int i = 0; i < d.crossing_count(); ++i) {
    const auto& q = d.crossings()[i];
    int s0 = d.arc_index(q[0]), s1 = d.arc_index(q[1]), s2 = d.arc_index(q[2]),
        s3 = d.arc_index(q[3]);
    if ((v >> i) & 1u) {
      unite(s0, s3);
      unite(s1, s2);
    } else {
      unite(s0, s1);
      unite(s2, s3);
    }
  }
  Circles c;
  c.of_arc.assign(m, -1);
  for (int a = 0; a < m; ++a) {
    int r = root(a);
    if (c.of_arc[r] < 0) c.of_arc[r] = c.count++;
    c.of_arc[a] = c.of_arc[r];
  }
  c.count += d.free_loops();
  return c;
}

}  // namespace

ChainComplex build_cube(const Diagram& d, int max_crossings) {
  const int n = d.crossing_count();
  if (n > max_crossings)
    throw CubeThresholdError("diagram has " + std::to_string(n) +
                             " crossings, above the naive threshold " +
                             std::to_string(max_crossings) + "; use the scanning engine");

  const int npos = d.positive_crossings();
  const int nneg = d.negative_crossings();
  const uint32_t nv = 1u << n;

  std::vector<Circles> circ(nv);
  for (uint32_t v = 0; v < nv; ++v) circ[v] = smoothing_circles(d, v);

  ChainComplex cc;
  cc.tmin_ = -nneg;
  cc.gens_.assign(n + 1, {});
  std::vector<long> base(nv, 0);  // index of a vertex's first generator within its degree

  for (uint32_t v = 0; v < nv; ++v) {
    int r = (int)__builtin_popcount(v);
    auto& bucket = cc.gens_[r];
    base[v] = (long)bucket.size();
    int c = circ[v].count;
    for (uint32_t labels = 0; labels < (1u << c); ++labels) {
      CubeGenerator g;
      g.vertex = v;
      g.labels = labels;
      g.t = r - nneg;
      g.q = (c - 2 * (int)__builtin_popcount(labels)) + r + npos - 2 * nneg;
      bucket.push_back(g);
    }
  }

  cc.diffs_.assign(n, SparseIntMat{});
  for (int r = 0; r < n; ++r) {
    cc.diffs_[r].rows = (int)cc.gens_[r + 1].size();
    cc.diffs_[r].cols = (int)cc.gens_[r].size();
  }

  for (uint32_t v = 0; v < nv; ++v) {
    const int r = (int)__builtin_popcount(v);
    const Circles& cv = circ[v];
    for (int i = 0; i < n; ++i) {
      if ((v >> i) & 1u) continue;
      uint32_t w = v | (1u << i);
      const Circles& cw = circ[w];
      int sign = (__builtin_popcount(v & ((1u << i) - 1)) % 2 == 0) ? 1 : -1;

      // circle correspondence away from the smoothed site
      const auto& q = d.crossings()[i];
      int a0 = d.arc_index(q[0]), a2 = d.arc_index(q[2]);
      int A = cv.of_arc[a0], B = cv.of_arc[a2];
      std::vector<int> vmap(cv.count, -1);
      for (int arc = 0; arc < d.arc_count(); ++arc) {
        int pc = cv.of_arc[arc];
        if (pc != A && pc != B) vmap[pc] = cw.of_arc[arc];
      }
      for (int l = 0; l < d.free_loops(); ++l)
        vmap[cv.count - d.free_loops() + l] = cw.count - d.free_loops() + l;

      bool merge = (A != B);
      int Aw = cw.of_arc[a0];                      // merged circle, or first split part
      int Bw = merge ? Aw : cw.of_arc[d.arc_index(q[1])];  // second split part

      for (uint32_t labels = 0; labels < (1u << cv.count); ++labels) {
        long src = base[v] + labels;
        auto push = [&](uint32_t wl) {
          long dst = base[w] + wl;
          cc.diffs_[r].add((int)dst, (int)src, sign);
        };
        // transfer untouched labels
        uint32_t carried = 0;
        for (int pc = 0; pc < cv.count; ++pc)
          if (vmap[pc] >= 0 && ((labels >> pc) & 1u)) carried |= 1u << vmap[pc];

        if (merge) {
          bool xa = (labels >> A) & 1u, xb = (labels >> B) & 1u;
          if (xa && xb) continue;  // x*x = 0
          uint32_t wl = carried | ((xa || xb) ? (1u << Aw) : 0u);
          push(wl);
        } else {
          bool xa = (labels >> A) & 1u;
          if (xa) {
            push(carried | (1u << Aw) | (1u << Bw));
          } else {
            push(carried | (1u << Aw));
            push(carried | (1u << Bw));
          }
        }
      }
    }
  }
  return cc;
}

bool ChainComplex::d_squared_is_zero() const {
  for (size_t r = 0; r + 1 < diffs_.size(); ++r) {
    // multiply diffs_[r+1] * diffs_[r] exactly
    std::map<std::pair<int, int>, mpz_class> prod;
    std::vector<std::vector<std::pair<int, mpz_class>>> by_col(diffs_[r + 1].cols);
    for (const auto& [rr, cc, v] : diffs_[r + 1].entries) by_col[cc].push_back({rr, v});
    for (const auto& [mid, src, v1] : diffs_[r].entries)
      for (const auto& [dst, v2] : by_col[mid]) prod[{dst, src}] += v1 * v2;
    for (const auto& [k, v] : prod)
      if (v != 0) return false;
  }
  return true;
}

std::vector<QBlock> ChainComplex::q_blocks() const {
  // generator index -> (q, position within its (t,q) block)
  std::map<int, QBlock> blocks;
  std::vector<std::vector<long>> pos(gens_.size());
  std::vector<std::vector<int>> qs(gens_.size());
  const int nt = (int)gens_.size();

  std::map<int, std::vector<std::vector<long>>> counts;  // q -> per-t dims
  for (int ti = 0; ti < nt; ++ti) {
    pos[ti].resize(gens_[ti].size());
    qs[ti].resize(gens_[ti].size());
    std::map<int, long> cnt;
    for (size_t g = 0; g < gens_[ti].size(); ++g) {
      int q = gens_[ti][g].q;
      qs[ti][g] = q;
      pos[ti][g] = cnt[q]++;
    }
    for (auto& [q, c] : cnt) {
      auto& b = blocks[q];
      if (b.dims.empty()) {
        b.q = q;
        b.tmin = tmin_;
        b.dims.assign(nt, 0);
      }
      b.dims[ti] = c;
    }
  }
  for (auto& [q, b] : blocks) {
    if (b.dims.empty()) {
      b.dims.assign(nt, 0);
      b.tmin = tmin_;
      b.q = q;
    }
    b.diffs.assign(nt > 0 ? nt - 1 : 0, SparseIntMat{});
    for (int ti = 0; ti + 1 < nt; ++ti) {
      b.diffs[ti].rows = (int)b.dims[ti + 1];
      b.diffs[ti].cols = (int)b.dims[ti];
    }
  }
  for (int ti = 0; ti + 1 < nt; ++ti) {
    for (const auto& [dst, src, v] : diffs_[ti].entries) {
      int q = qs[ti][src];
      // the differential preserves the quantum grading
      if (qs[ti + 1][dst] != q) throw std::logic_error("differential broke the q grading");
      blocks[q].diffs[ti].add((int)pos[ti + 1][dst], (int)pos[ti][src], v);
    }
  }

  std::vector<QBlock> out;
  out.reserve(blocks.size());
  for (auto& [q, b] : blocks) out.push_back(std::move(b));
  return out;
}

GradedTable ChainComplex::homology(const CoefficientRing& ring, int threads) const {
  return homology_of_blocks(q_blocks(), ring, threads);
}

GradedTable naive_khovanov(const Diagram& d, const CoefficientRing& ring, int threads,
                           int max_crossings) {
  return build_cube(d, max_crossings).homology(ring, threads);
}

}  // namespace kh
