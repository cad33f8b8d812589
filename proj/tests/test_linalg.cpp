#include <random>

#include "doctest.h"
#include "kh/linalg.hpp"

using kh::SparseIntMat;

namespace {

SparseIntMat from_dense(const std::vector<std::vector<long>>& m) {
  SparseIntMat s;
  s.rows = (int)m.size();
  s.cols = m.empty() ? 0 : (int)m[0].size();
  for (int r = 0; r < s.rows; ++r)
    for (int c = 0; c < s.cols; ++c)
      if (m[r][c] != 0) s.add(r, c, m[r][c]);
  return s;
}

// O(2^rows) rank over Q via row echelon on rationals, for cross-checks
int dense_rank(std::vector<std::vector<mpq_class>> m) {
  int rank = 0;
  size_t cols = m.empty() ? 0 : m[0].size();
  for (size_t c = 0; c < cols; ++c) {
    int pivot = -1;
    for (size_t r = rank; r < m.size(); ++r)
      if (m[r][c] != 0) {
        pivot = (int)r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    for (size_t r = 0; r < m.size(); ++r) {
      if ((int)r == rank || m[r][c] == 0) continue;
      mpq_class f = m[r][c] / m[rank][c];
      for (size_t c2 = 0; c2 < cols; ++c2) m[r][c2] -= f * m[rank][c2];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("ranks of small matrices") {
  auto m = from_dense({{1, 2}, {2, 4}});
  CHECK(kh::rank_over_q(m) == 1);
  CHECK(kh::rank_mod_p(m, 2) == 1);
  CHECK(kh::rank_mod_p(m, 3) == 1);

  auto id3 = from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(kh::rank_over_q(id3) == 3);

  // rank drops mod 2 only
  auto m2 = from_dense({{2}});
  CHECK(kh::rank_over_q(m2) == 1);
  CHECK(kh::rank_mod_p(m2, 2) == 0);
  CHECK(kh::rank_mod_p(m2, 3) == 1);

  CHECK_THROWS(kh::rank_mod_p(m2, 4));
}

TEST_CASE("smith diagonal basics") {
  auto d = kh::smith_diagonal(from_dense({{2}}));
  REQUIRE(d.size() == 1);
  CHECK(d[0] == 2);

  // diag(2,2) stays {2,2}, never {1,4}
  auto d22 = kh::smith_diagonal(from_dense({{2, 0}, {0, 2}}));
  REQUIRE(d22.size() == 2);
  CHECK(d22[0] == 2);
  CHECK(d22[1] == 2);

  auto d6 = kh::smith_diagonal(from_dense({{2, 0}, {0, 3}}));
  mpz_class prod = 1;
  for (auto& v : d6) prod *= v;
  CHECK(prod == 6);

  auto empty = kh::smith_diagonal(from_dense({{0, 0}, {0, 0}}));
  CHECK(empty.empty());
}

TEST_CASE("smith vs field ranks on random sparse matrices") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    int rows = 1 + (int)(rng() % 8), cols = 1 + (int)(rng() % 8);
    std::vector<std::vector<long>> dense(rows, std::vector<long>(cols, 0));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        if (rng() % 3 == 0) dense[r][c] = (long)(rng() % 7) - 3;
    auto m = from_dense(dense);
    std::vector<std::vector<mpq_class>> q(rows, std::vector<mpq_class>(cols));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) q[r][c] = dense[r][c];
    int expect = dense_rank(q);
    CHECK(kh::rank_over_q(m) == expect);
    CHECK((int)kh::smith_diagonal(m).size() == expect);
    CHECK(kh::rank_mod_p(m, 101) <= expect);
  }
}

TEST_CASE("prime power factors") {
  auto f12 = kh::prime_power_factors(12);
  REQUIRE(f12.size() == 2);
  CHECK(f12[0] == 3);
  CHECK(f12[1] == 4);
  auto f8 = kh::prime_power_factors(8);
  REQUIRE(f8.size() == 1);
  CHECK(f8[0] == 8);
  CHECK(kh::is_prime(mpz_class(2)));
  CHECK(kh::is_prime(mpz_class(101)));
  CHECK_FALSE(kh::is_prime(mpz_class(1)));
  CHECK_FALSE(kh::is_prime(mpz_class(91)));
}
