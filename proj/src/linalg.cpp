#include "kh/linalg.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <stdexcept>

namespace kh {

namespace {

// row-major working form with a column index for pivot selection
struct WorkMat {
  std::vector<std::map<int, mpz_class>> row;
  std::vector<std::set<int>> col_rows;

  explicit WorkMat(const SparseIntMat& m) : row(m.rows), col_rows(m.cols) {
    for (const auto& [r, c, v] : m.entries) {
      if (v == 0) continue;
      auto& cell = row[r][c];
      cell += v;
      if (cell == 0) row[r].erase(c);
    }
    for (int r = 0; r < m.rows; ++r)
      for (const auto& [c, v] : row[r]) col_rows[c].insert(r);
  }

  void set(int r, int c, mpz_class v) {
    if (v == 0) {
      row[r].erase(c);
      col_rows[c].erase(r);
    } else {
      row[r][c] = std::move(v);
      col_rows[c].insert(r);
    }
  }

  // row[dst] -= q * row[src]
  void row_axpy(int dst, int src, const mpz_class& q) {
    if (q == 0) return;
    for (const auto& [c, v] : row[src]) {
      auto it = row[dst].find(c);
      if (it == row[dst].end()) {
        row[dst][c] = -q * v;
        col_rows[c].insert(dst);
      } else {
        it->second -= q * v;
        if (it->second == 0) {
          row[dst].erase(it);
          col_rows[c].erase(dst);
        }
      }
    }
  }

  // col[dst] -= q * col[src]
  void col_axpy(int dst, int src, const mpz_class& q) {
    if (q == 0) return;
    std::vector<int> rows_with_src(col_rows[src].begin(), col_rows[src].end());
    for (int r : rows_with_src) {
      const mpz_class v = row[r].at(src);
      auto it = row[r].find(dst);
      if (it == row[r].end()) {
        row[r][dst] = -q * v;
        col_rows[dst].insert(r);
      } else {
        it->second -= q * v;
        if (it->second == 0) {
          row[r].erase(it);
          col_rows[dst].erase(r);
        }
      }
    }
  }

  void drop_row(int r) {
    for (const auto& [c, v] : row[r]) col_rows[c].erase(r);
    row[r].clear();
  }
};

long mod_pow(long b, long e, long p) {
  long r = 1 % p;
  b %= p;
  while (e) {
    if (e & 1) r = (long)((__int128)r * b % p);
    b = (long)((__int128)b * b % p);
    e >>= 1;
  }
  return r;
}

long mod_inv(long a, long p) { return mod_pow(((a % p) + p) % p, p - 2, p); }

// generic sparse elimination rank; F provides value type and arithmetic
template <class F>
int sparse_rank(std::vector<std::map<int, typename F::T>> rows, int ncols, const F& f) {
  std::vector<int> col_count(ncols, 0);
  for (auto& r : rows)
    for (auto& [c, v] : r) ++col_count[c];

  std::vector<char> row_done(rows.size(), 0);
  int rank = 0;
  while (true) {
    // pivot: among shortest rows, the entry in the rarest column
    int best_r = -1;
    size_t best_len = SIZE_MAX;
    for (int r = 0; r < (int)rows.size(); ++r) {
      if (row_done[r] || rows[r].empty()) continue;
      if (rows[r].size() < best_len) {
        best_len = rows[r].size();
        best_r = r;
      }
    }
    if (best_r < 0) break;
    int best_c = -1;
    int best_cc = INT32_MAX;
    for (auto& [c, v] : rows[best_r])
      if (col_count[c] < best_cc) {
        best_cc = col_count[c];
        best_c = c;
      }

    ++rank;
    row_done[best_r] = 1;
    auto pivot_row = rows[best_r];
    typename F::T pinv = f.inv(pivot_row.at(best_c));
    for (auto& [c, v] : pivot_row) --col_count[c];
    rows[best_r].clear();

    for (int r = 0; r < (int)rows.size(); ++r) {
      if (row_done[r]) continue;
      auto it = rows[r].find(best_c);
      if (it == rows[r].end()) continue;
      typename F::T factor = f.mul(it->second, pinv);
      for (auto& [c, v] : pivot_row) {
        auto jt = rows[r].find(c);
        if (jt == rows[r].end()) {
          typename F::T nv = f.neg(f.mul(factor, v));
          if (!f.is_zero(nv)) {
            rows[r][c] = nv;
            ++col_count[c];
          }
        } else {
          jt->second = f.sub(jt->second, f.mul(factor, v));
          if (f.is_zero(jt->second)) {
            rows[r].erase(jt);
            --col_count[c];
          }
        }
      }
    }
  }
  return rank;
}

struct FpOps {
  using T = long;
  long p;
  T mul(T a, T b) const { return (T)((__int128)a * b % p); }
  T sub(T a, T b) const {
    T r = (a - b) % p;
    return r < 0 ? r + p : r;
  }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const { return mod_inv(a, p); }
  bool is_zero(T a) const { return a == 0; }
};

struct RatOps {
  using T = mpq_class;
  T mul(const T& a, const T& b) const { return a * b; }
  T sub(const T& a, const T& b) const { return a - b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
  bool is_zero(const T& a) const { return a == 0; }
};

}  // namespace

int rank_over_q(const SparseIntMat& m) {
  std::vector<std::map<int, mpq_class>> rows(m.rows);
  for (const auto& [r, c, v] : m.entries) {
    if (v == 0) continue;
    rows[r][c] += mpq_class(v);
    if (rows[r][c] == 0) rows[r].erase(c);
  }
  return sparse_rank(std::move(rows), m.cols, RatOps{});
}

int rank_mod_p(const SparseIntMat& m, long p) {
  if (p < 2 || !is_prime(mpz_class((long)p)))
    throw std::invalid_argument("modulus must be prime");
  std::vector<std::map<int, long>> rows(m.rows);
  for (const auto& [r, c, v] : m.entries) {
    mpz_class red = v % p;
    long lv = (long)mpz_get_si(red.get_mpz_t());
    lv = ((lv % p) + p) % p;
    if (lv == 0 && !rows[r].count(c)) continue;
    rows[r][c] = (rows[r][c] + lv) % p;
    if (rows[r][c] == 0) rows[r].erase(c);
  }
  return sparse_rank(std::move(rows), m.cols, FpOps{p});
}

std::vector<mpz_class> smith_diagonal(const SparseIntMat& m) {
  WorkMat w(m);
  std::vector<mpz_class> diag;

  // phase 1: unit pivots only; these never introduce fractions and keep
  // the fill-in under control via the Markowitz score
  while (true) {
    int pr = -1, pc = -1;
    long best = -1;
    for (int r = 0; r < (int)w.row.size(); ++r) {
      for (const auto& [c, v] : w.row[r]) {
        if (v != 1 && v != -1) continue;
        long score = (long)(w.row[r].size() - 1) * (long)(w.col_rows[c].size() - 1);
        if (best < 0 || score < best) {
          best = score;
          pr = r;
          pc = c;
        }
      }
      if (best == 0) break;
    }
    if (pr < 0) break;

    const mpz_class pv = w.row[pr].at(pc);
    std::vector<int> other(w.col_rows[pc].begin(), w.col_rows[pc].end());
    for (int r : other) {
      if (r == pr) continue;
      mpz_class q = w.row[r].at(pc) * pv;  // pv is +-1, so q*pv = entry/pv
      w.row_axpy(r, pr, q);
    }
    w.drop_row(pr);
    diag.emplace_back(1);
  }

  // phase 2: classical reduction on what is left
  while (true) {
    int pr = -1, pc = -1;
    mpz_class best;
    for (int r = 0; r < (int)w.row.size(); ++r)
      for (const auto& [c, v] : w.row[r]) {
        mpz_class a = abs(v);
        if (pr < 0 || a < best) {
          best = a;
          pr = r;
          pc = c;
        }
      }
    if (pr < 0) break;

    bool dirty = false;
    mpz_class pv = w.row[pr].at(pc);
    std::vector<int> col_rows(w.col_rows[pc].begin(), w.col_rows[pc].end());
    for (int r : col_rows) {
      if (r == pr) continue;
      mpz_class val = w.row[r].at(pc);
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), val.get_mpz_t(), pv.get_mpz_t());
      w.row_axpy(r, pr, q);
      if (w.row[r].count(pc)) dirty = true;
    }
    if (dirty) continue;

    std::vector<int> row_cols;
    for (const auto& [c, v] : w.row[pr])
      if (c != pc) row_cols.push_back(c);
    for (int c : row_cols) {
      mpz_class val = w.row[pr].at(c);
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), val.get_mpz_t(), pv.get_mpz_t());
      w.col_axpy(c, pc, q);
      if (w.row[pr].count(c)) dirty = true;
    }
    if (dirty) continue;

    // pivot is alone in its row and column
    diag.push_back(abs(pv));
    w.set(pr, pc, 0);
  }
  return diag;
}

bool is_prime(const mpz_class& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

mpz_class pollard_rho(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(12345);
  while (true) {
    mpz_class x = rng.get_z_range(n - 2) + 2, y = x, c = rng.get_z_range(n - 1) + 1;
    mpz_class d = 1;
    while (d == 1) {
      x = (x * x + c) % n;
      y = (y * y + c) % n;
      y = (y * y + c) % n;
      mpz_class diff = abs(x - y);
      if (diff == 0) break;
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != 1 && d != n) return d;
  }
}

void factor_into(mpz_class n, std::map<mpz_class, int>& out) {
  if (n <= 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
    if (n % p == 0) {
      ++out[mpz_class(p)];
      factor_into(n / p, out);
      return;
    }
  }
  mpz_class d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

std::vector<mpz_class> prime_power_factors(mpz_class n) {
  if (n < 2) throw std::invalid_argument("need n >= 2");
  std::map<mpz_class, int> f;
  factor_into(std::move(n), f);
  std::vector<mpz_class> out;
  for (const auto& [p, e] : f) {
    mpz_class pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    out.push_back(pe);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace kh
