#pragma once

#include <functional>
#include <numeric>
#include <vector>

#include "kh/bracket.hpp"
#include "kh/diagram.hpp"
#include "kh/laurent.hpp"
#include "kh/table.hpp"

namespace khtest {

// circles of one full smoothing, written independently of the library path
inline int oracle_circle_count(const kh::Diagram& d, uint32_t v) {
  const int m = d.arc_count();
  std::vector<int> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> root = [&](int x) {
    return uf[x] == x ? x : uf[x] = root(uf[x]);
  };
  auto join = [&](int a, int b) { uf[root(a)] = root(b); };
  for (int i = 0; i < d.crossing_count(); ++i) {
    const auto& q = d.crossings()[i];
    if ((v >> i) & 1u) {
      join(d.arc_index(q[0]), d.arc_index(q[3]));
      join(d.arc_index(q[1]), d.arc_index(q[2]));
    } else {
      join(d.arc_index(q[0]), d.arc_index(q[1]));
      join(d.arc_index(q[2]), d.arc_index(q[3]));
    }
  }
  int count = 0;
  for (int a = 0; a < m; ++a)
    if (root(a) == a) ++count;
  return count + d.free_loops();
}

// brute-force Kauffman bracket over all 2^N states
inline kh::LaurentPoly oracle_bracket(const kh::Diagram& d) {
  const int n = d.crossing_count();
  kh::LaurentPoly sum;
  kh::LaurentPoly delta = kh::bracket_delta();
  for (uint32_t v = 0; v < (1u << n); ++v) {
    int ones = __builtin_popcount(v);
    int circles = oracle_circle_count(d, v);
    kh::LaurentPoly term = kh::LaurentPoly::monomial(1, 2 * (n - 2 * ones));
    for (int c = 0; c < circles - 1; ++c) term = term * delta;
    sum += term;
  }
  return sum;
}

// component count by direct arc-cycle tracing
inline int oracle_component_count(const kh::Diagram& d) {
  const int m = d.arc_count();
  std::vector<int> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> root = [&](int x) {
    return uf[x] == x ? x : uf[x] = root(uf[x]);
  };
  for (const auto& q : d.crossings()) {
    uf[root(d.arc_index(q[0]))] = root(d.arc_index(q[2]));
    uf[root(d.arc_index(q[1]))] = root(d.arc_index(q[3]));
  }
  int count = 0;
  for (int a = 0; a < m; ++a)
    if (root(a) == a) ++count;
  return count;
}

// graded Euler characteristic of a rational homology table
inline kh::LaurentPoly euler_characteristic(const kh::GradedTable& t) {
  kh::LaurentPoly p;
  for (const auto& [tq, cell] : t.cells()) {
    auto [tt, q] = tq;
    mpz_class c = (tt % 2 == 0) ? cell.rank : -cell.rank;
    p.set_coeff(2 * q, p.coeff(2 * q) + c);
  }
  return p;
}

}  // namespace khtest
