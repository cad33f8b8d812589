#pragma once

#include <gmpxx.h>

#include <tuple>
#include <vector>

namespace kh {

// Sparse exact-integer matrix as (row, col, value) triplets.
struct SparseIntMat {
  int rows = 0;
  int cols = 0;
  std::vector<std::tuple<int, int, mpz_class>> entries;

  void add(int r, int c, mpz_class v) { entries.emplace_back(r, c, std::move(v)); }
};

// exact rank over the rationals
int rank_over_q(const SparseIntMat& m);

// rank over F_p, p prime
int rank_mod_p(const SparseIntMat& m, long p);

// Diagonalizes by unimodular row/column operations and returns the nonzero
// diagonal values (unsorted, no divisibility chain). Unit pivots are
// consumed first with Markowitz-style selection, the leftover dense core
// falls back to the classical reduction loop.
std::vector<mpz_class> smith_diagonal(const SparseIntMat& m);

// n >= 2 decomposed into prime powers, e.g. 12 -> {4, 3}
std::vector<mpz_class> prime_power_factors(mpz_class n);

bool is_prime(const mpz_class& n);

}  // namespace kh
