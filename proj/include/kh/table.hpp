#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace kh {

// Q, Z, or F_p with p prime.
struct CoefficientRing {
  enum class Kind { Q, Z, Fp };
  Kind kind = Kind::Q;
  long p = 0;

  static CoefficientRing rationals() { return {Kind::Q, 0}; }
  static CoefficientRing integers() { return {Kind::Z, 0}; }
  static CoefficientRing field(long p);
  static CoefficientRing parse(const std::string& s);  // "q" | "z" | "f<p>"

  bool is_field() const { return kind != Kind::Z; }
  std::string name() const;
  bool operator==(const CoefficientRing& o) const { return kind == o.kind && p == o.p; }
};

struct TableCell {
  long rank = 0;
  std::vector<mpz_class> torsion;  // prime powers, sorted ascending

  bool trivial() const { return rank == 0 && torsion.empty(); }
  bool operator==(const TableCell& o) const { return rank == o.rank && torsion == o.torsion; }
};

// Bigraded homology table: (t, q) -> (free rank, torsion prime powers).
class GradedTable {
 public:
  GradedTable() = default;
  explicit GradedTable(CoefficientRing r) : ring_(r) {}

  const CoefficientRing& ring() const { return ring_; }
  void set_ring(CoefficientRing r) { ring_ = r; }

  void set(int t, int q, TableCell cell);
  const TableCell* cell(int t, int q) const;
  long rank(int t, int q) const;
  bool empty() const { return cells_.empty(); }
  const std::map<std::pair<int, int>, TableCell>& cells() const { return cells_; }

  long total_rank() const;
  GradedTable shifted(int dt, int dq) const;

  // smallest q carrying a nontrivial group; throws on an empty table
  int support_min_q() const;
  int support_max_q() const;

  nlohmann::ordered_json to_json() const;
  static GradedTable from_json(const nlohmann::ordered_json& j);
  std::string to_csv() const;
  // q rows descending, t columns ascending, blank cell = trivial group
  std::string to_grid() const;

  bool operator==(const GradedTable& o) const {
    return ring_ == o.ring_ && cells_ == o.cells_;
  }

 private:
  CoefficientRing ring_;
  std::map<std::pair<int, int>, TableCell> cells_;  // key (t,q), no trivial cells
};

struct TableDiff {
  struct Entry {
    int t, q;
    TableCell a, b;
  };
  std::vector<Entry> entries;                 // sorted by (q, t)
  std::optional<Entry> first_difference;      // lexicographic in (q, t)
  long total_rank_a = 0, total_rank_b = 0;
  bool a_dominates = false;                   // rank(a) >= rank(b) cell-wise
  bool b_dominates = false;

  bool identical() const { return entries.empty(); }
  std::string to_string() const;
  nlohmann::ordered_json to_json() const;
};

// throws std::invalid_argument on ring mismatch
TableDiff compare_tables(const GradedTable& a, const GradedTable& b);

std::string torsion_to_string(const std::vector<mpz_class>& torsion);

}  // namespace kh
