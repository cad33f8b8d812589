#include "kh/table.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "kh/linalg.hpp"

namespace kh {

CoefficientRing CoefficientRing::field(long p) {
  if (p == 0) return rationals();
  if (!is_prime(mpz_class(p))) throw std::invalid_argument("field characteristic must be prime");
  return {Kind::Fp, p};
}

CoefficientRing CoefficientRing::parse(const std::string& s) {
  if (s == "q" || s == "Q") return rationals();
  if (s == "z" || s == "Z") return integers();
  if (s.size() >= 2 && (s[0] == 'f' || s[0] == 'F')) {
    long p = 0;
    try {
      size_t used = 0;
      p = std::stol(s.substr(1), &used);
      if (used != s.size() - 1) throw std::invalid_argument("junk");
    } catch (const std::exception&) {
      throw std::invalid_argument("bad ring '" + s + "'");
    }
    return field(p);
  }
  throw std::invalid_argument("bad ring '" + s + "' (expected q, z, or f<p>)");
}

std::string CoefficientRing::name() const {
  switch (kind) {
    case Kind::Q:
      return "Q";
    case Kind::Z:
      return "Z";
    case Kind::Fp:
      return "F" + std::to_string(p);
  }
  return "?";
}

void GradedTable::set(int t, int q, TableCell cell) {
  if (cell.trivial())
    cells_.erase({t, q});
  else
    cells_[{t, q}] = std::move(cell);
}

const TableCell* GradedTable::cell(int t, int q) const {
  auto it = cells_.find({t, q});
  return it == cells_.end() ? nullptr : &it->second;
}

long GradedTable::rank(int t, int q) const {
  auto* c = cell(t, q);
  return c ? c->rank : 0;
}

long GradedTable::total_rank() const {
  long s = 0;
  for (const auto& [k, c] : cells_) s += c.rank;
  return s;
}

GradedTable GradedTable::shifted(int dt, int dq) const {
  GradedTable out(ring_);
  for (const auto& [k, c] : cells_) out.set(k.first + dt, k.second + dq, c);
  return out;
}

int GradedTable::support_min_q() const {
  if (cells_.empty()) throw std::runtime_error("empty table has no support");
  int best = cells_.begin()->first.second;
  for (const auto& [k, c] : cells_) best = std::min(best, k.second);
  return best;
}

int GradedTable::support_max_q() const {
  if (cells_.empty()) throw std::runtime_error("empty table has no support");
  int best = cells_.begin()->first.second;
  for (const auto& [k, c] : cells_) best = std::max(best, k.second);
  return best;
}

std::string torsion_to_string(const std::vector<mpz_class>& torsion) {
  std::ostringstream os;
  for (size_t i = 0; i < torsion.size(); ++i) {
    if (i) os << ",";
    os << torsion[i].get_str();
  }
  return os.str();
}

nlohmann::ordered_json GradedTable::to_json() const {
  nlohmann::ordered_json j;
  j["ring"] = ring_.name();
  auto arr = nlohmann::ordered_json::array();
  // sorted by (q, t) to match the comparison order
  std::vector<std::pair<std::pair<int, int>, const TableCell*>> items;
  for (const auto& [k, c] : cells_) items.push_back({{k.second, k.first}, &c});
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [qt, c] : items) {
    nlohmann::ordered_json jc;
    jc["t"] = qt.second;
    jc["q"] = qt.first;
    jc["rank"] = c->rank;
    auto tor = nlohmann::ordered_json::array();
    for (const auto& v : c->torsion) {
      if (v.fits_slong_p())
        tor.push_back((long)v.get_si());
      else
        tor.push_back(v.get_str());
    }
    jc["torsion"] = std::move(tor);
    arr.push_back(std::move(jc));
  }
  j["cells"] = std::move(arr);
  return j;
}

GradedTable GradedTable::from_json(const nlohmann::ordered_json& j) {
  GradedTable t(CoefficientRing::parse(j.at("ring").get<std::string>()));
  for (const auto& jc : j.at("cells")) {
    TableCell cell;
    cell.rank = jc.at("rank").get<long>();
    for (const auto& tv : jc.at("torsion")) {
      if (tv.is_string())
        cell.torsion.emplace_back(tv.get<std::string>());
      else
        cell.torsion.emplace_back((long)tv.get<long>());
    }
    std::sort(cell.torsion.begin(), cell.torsion.end());
    t.set(jc.at("t").get<int>(), jc.at("q").get<int>(), std::move(cell));
  }
  return t;
}

std::string GradedTable::to_csv() const {
  std::ostringstream os;
  os << "t,q,rank,torsion\n";
  std::vector<std::pair<std::pair<int, int>, const TableCell*>> items;
  for (const auto& [k, c] : cells_) items.push_back({{k.second, k.first}, &c});
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [qt, c] : items)
    os << qt.second << "," << qt.first << "," << c->rank << ","
       << torsion_to_string(c->torsion) << "\n";
  return os.str();
}

std::string GradedTable::to_grid() const {
  if (cells_.empty()) return "(empty table)\n";
  int tmin = INT32_MAX, tmax = INT32_MIN, qmin = INT32_MAX, qmax = INT32_MIN;
  for (const auto& [k, c] : cells_) {
    tmin = std::min(tmin, k.first);
    tmax = std::max(tmax, k.first);
    qmin = std::min(qmin, k.second);
    qmax = std::max(qmax, k.second);
  }
  auto cell_str = [&](int t, int q) -> std::string {
    auto* c = cell(t, q);
    if (!c) return "";
    std::string s = std::to_string(c->rank);
    if (!c->torsion.empty()) {
      s += "[";
      s += torsion_to_string(c->torsion);
      s += "]";
    }
    return s;
  };
  // column widths
  std::vector<size_t> width(tmax - tmin + 1);
  for (int t = tmin; t <= tmax; ++t) {
    width[t - tmin] = std::to_string(t).size();
    for (int q = qmin; q <= qmax; ++q)
      width[t - tmin] = std::max(width[t - tmin], cell_str(t, q).size());
  }
  size_t qw = 0;
  for (int q = qmin; q <= qmax; ++q) qw = std::max(qw, std::to_string(q).size());

  std::ostringstream os;
  os << std::string(qw, ' ') << " |";
  for (int t = tmin; t <= tmax; ++t) {
    std::string h = std::to_string(t);
    os << " " << std::string(width[t - tmin] - h.size(), ' ') << h;
  }
  os << "\n";
  size_t tot = 0;
  for (int t = tmin; t <= tmax; ++t) tot += width[t - tmin] + 1;
  os << std::string(qw, '-') << "-+" << std::string(tot, '-') << "\n";
  for (int q = qmax; q >= qmin; --q) {
    std::string qs = std::to_string(q);
    os << std::string(qw - qs.size(), ' ') << qs << " |";
    for (int t = tmin; t <= tmax; ++t) {
      std::string s = cell_str(t, q);
      os << " " << std::string(width[t - tmin] - s.size(), ' ') << s;
    }
    os << "\n";
  }
  return os.str();
}

TableDiff compare_tables(const GradedTable& a, const GradedTable& b) {
  if (!(a.ring() == b.ring()))
    throw std::invalid_argument("cannot compare tables over different rings");
  TableDiff d;
  d.total_rank_a = a.total_rank();
  d.total_rank_b = b.total_rank();
  d.a_dominates = true;
  d.b_dominates = true;

  std::set<std::pair<int, int>> keys;  // (q, t)
  for (const auto& [k, c] : a.cells()) keys.insert({k.second, k.first});
  for (const auto& [k, c] : b.cells()) keys.insert({k.second, k.first});
  for (const auto& [q, t] : keys) {
    const TableCell* ca = a.cell(t, q);
    const TableCell* cb = b.cell(t, q);
    TableCell va = ca ? *ca : TableCell{};
    TableCell vb = cb ? *cb : TableCell{};
    if (va.rank < vb.rank) d.a_dominates = false;
    if (vb.rank < va.rank) d.b_dominates = false;
    if (!(va == vb)) {
      TableDiff::Entry e{t, q, va, vb};
      if (!d.first_difference) d.first_difference = e;
      d.entries.push_back(std::move(e));
    }
  }
  return d;
}

std::string TableDiff::to_string() const {
  std::ostringstream os;
  if (entries.empty()) {
    os << "tables identical; total rank " << total_rank_a << "\n";
    return os.str();
  }
  os << entries.size() << " differing cell(s)\n";
  const auto& f = *first_difference;
  os << "first difference at (t,q)=(" << f.t << "," << f.q << "): rank " << f.a.rank
     << " vs " << f.b.rank;
  if (!f.a.torsion.empty() || !f.b.torsion.empty())
    os << ", torsion [" << torsion_to_string(f.a.torsion) << "] vs ["
       << torsion_to_string(f.b.torsion) << "]";
  os << "\n";
  for (const auto& e : entries)
    os << "  (t,q)=(" << e.t << "," << e.q << "): " << e.a.rank
       << (e.a.torsion.empty() ? "" : "[" + torsion_to_string(e.a.torsion) + "]") << " vs "
       << e.b.rank << (e.b.torsion.empty() ? "" : "[" + torsion_to_string(e.b.torsion) + "]")
       << "\n";
  os << "total ranks: " << total_rank_a << " vs " << total_rank_b << "\n";
  os << "dominance: "
     << (a_dominates   ? "first >= second cell-wise"
         : b_dominates ? "second >= first cell-wise"
                       : "incomparable")
     << "\n";
  return os.str();
}

nlohmann::ordered_json TableDiff::to_json() const {
  nlohmann::ordered_json j;
  j["identical"] = entries.empty();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json je;
    je["t"] = e.t;
    je["q"] = e.q;
    je["rank_a"] = e.a.rank;
    je["rank_b"] = e.b.rank;
    je["torsion_a"] = torsion_to_string(e.a.torsion);
    je["torsion_b"] = torsion_to_string(e.b.torsion);
    arr.push_back(std::move(je));
  }
  j["differences"] = std::move(arr);
  if (first_difference) {
    j["first_difference"] = {{"t", first_difference->t}, {"q", first_difference->q}};
  }
  j["total_rank_a"] = total_rank_a;
  j["total_rank_b"] = total_rank_b;
  j["a_dominates"] = a_dominates;
  j["b_dominates"] = b_dominates;
  return j;
}

}  // namespace kh
