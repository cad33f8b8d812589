#include "kh/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace kh {

namespace {

int find_root(std::vector<int>& uf, int x) {
  while (uf[x] != x) {
    uf[x] = uf[uf[x]];
    x = uf[x];
  }
  return x;
}

void unite(std::vector<int>& uf, int a, int b) {
  a = find_root(uf, a);
  b = find_root(uf, b);
  if (a != b) uf[std::max(a, b)] = std::min(a, b);
}

}  // namespace

Diagram Diagram::from_parts(std::vector<std::array<int, 4>> crossings, int free_loops,
                            std::vector<int> reversed) {
  Diagram d;
  d.crossings_ = std::move(crossings);
  d.free_loops_ = free_loops;
  if (free_loops < 0) throw DiagramError("negative free loop count");
  d.finalize();
  if (!reversed.empty()) {
    if ((int)reversed.size() != d.ncomp_)
      throw DiagramError("orientation flag count does not match component count");
    d.reversed_ = std::move(reversed);
    for (int f : d.reversed_)
      if (f != 0 && f != 1) throw DiagramError("orientation flags must be 0 or 1");
  } else {
    d.reversed_.assign(d.ncomp_, 0);
  }
  for (int a = 0; a < (int)d.arcs_.size(); ++a)
    d.head_occ_[a] = d.head_occ_default_[a] ^ (char)d.reversed_[d.comp_of_arc_[a]];
  return d;
}

void Diagram::finalize() {
  std::map<int, std::vector<int>> occ;
  for (int c = 0; c < (int)crossings_.size(); ++c)
    for (int s = 0; s < 4; ++s) {
      if (crossings_[c][s] < 0) throw DiagramError("arc labels must be nonnegative");
      occ[crossings_[c][s]].push_back(4 * c + s);
    }

  arcs_.clear();
  occ_.clear();
  for (auto& [label, v] : occ) {
    if (v.size() != 2)
      throw DiagramError("arc " + std::to_string(label) + " appears " +
                         std::to_string(v.size()) + " times (expected 2)");
    arcs_.push_back(label);
    occ_.push_back({v[0], v[1]});
  }

  const int m = (int)arcs_.size();
  std::map<int, int> idx;
  for (int i = 0; i < m; ++i) idx[arcs_[i]] = i;
  auto arc_at = [&](int packed) { return idx.at(crossings_[packed / 4][packed % 4]); };
  auto partner = [](int packed) { return packed ^ 2; };

  // components: each occurrence links an arc to the arc at the partner slot
  comp_of_arc_.assign(m, -1);
  ncomp_ = 0;
  for (int i = 0; i < m; ++i) {
    if (comp_of_arc_[i] >= 0) continue;
    std::vector<int> stack{i};
    comp_of_arc_[i] = ncomp_;
    while (!stack.empty()) {
      int a = stack.back();
      stack.pop_back();
      for (int o = 0; o < 2; ++o) {
        int nb = arc_at(partner(occ_[a][o]));
        if (comp_of_arc_[nb] < 0) {
          comp_of_arc_[nb] = ncomp_;
          stack.push_back(nb);
        }
      }
    }
    ++ncomp_;
  }

  // default directions: walk each component from its minimal arc
  head_occ_default_.assign(m, 0);
  std::vector<char> seen(m, 0);
  for (int comp = 0; comp < ncomp_; ++comp) {
    int start = -1;
    for (int i = 0; i < m; ++i)
      if (comp_of_arc_[i] == comp) {
        start = i;
        break;
      }
    int n0 = arcs_[arc_at(partner(occ_[start][0]))];
    int n1 = arcs_[arc_at(partner(occ_[start][1]))];
    int head = (n1 < n0) ? 1 : 0;
    int a = start;
    while (!seen[a]) {
      seen[a] = 1;
      head_occ_default_[a] = (char)head;
      int exit = partner(occ_[a][head]);
      int nb = arc_at(exit);
      // nb's tail sits at `exit`; its head is the other occurrence
      int tail_occ = (occ_[nb][0] == exit) ? 0 : 1;
      a = nb;
      head = 1 - tail_occ;
    }
  }
  head_occ_ = head_occ_default_;
  if (reversed_.empty()) reversed_.assign(ncomp_, 0);
}

int Diagram::arc_index(int label) const {
  auto it = std::lower_bound(arcs_.begin(), arcs_.end(), label);
  if (it == arcs_.end() || *it != label)
    throw DiagramError("unknown arc label " + std::to_string(label));
  return (int)(it - arcs_.begin());
}

int Diagram::component_of_arc(int label) const { return comp_of_arc_[arc_index(label)]; }

std::vector<int> Diagram::component_min_arcs() const {
  std::vector<int> mins(ncomp_, -1);
  for (int i = 0; i < (int)arcs_.size(); ++i)
    if (mins[comp_of_arc_[i]] < 0) mins[comp_of_arc_[i]] = arcs_[i];
  return mins;
}

Diagram Diagram::with_orientation(std::vector<int> reversed) const {
  return from_parts(crossings_, free_loops_, std::move(reversed));
}

Diagram Diagram::with_components_reversed(const std::vector<int>& comps) const {
  std::vector<int> r = reversed_;
  for (int c : comps) {
    if (c < 0 || c >= ncomp_) throw DiagramError("component index out of range");
    r[c] ^= 1;
  }
  return from_parts(crossings_, free_loops_, std::move(r));
}

Diagram Diagram::with_all_reversed() const {
  std::vector<int> r = reversed_;
  for (auto& f : r) f ^= 1;
  return from_parts(crossings_, free_loops_, std::move(r));
}

int Diagram::under_in_slot(int c) const {
  int x0 = arc_index(crossings_[c][0]);
  int p0 = 4 * c + 0;
  int h = head_occ_[x0];
  if (occ_[x0][h] == p0) return 0;
  return 2;
}

int Diagram::over_in_slot(int c) const {
  int x1 = arc_index(crossings_[c][1]);
  int p1 = 4 * c + 1;
  int h = head_occ_[x1];
  if (occ_[x1][h] == p1) return 1;
  return 3;
}

std::vector<int> Diagram::crossing_signs() const {
  std::vector<int> signs(crossings_.size());
  for (int c = 0; c < (int)crossings_.size(); ++c) {
    bool u = under_in_slot(c) == 2;
    bool o = over_in_slot(c) == 3;
    signs[c] = (u != o) ? 1 : -1;
  }
  return signs;
}

int Diagram::writhe() const {
  auto s = crossing_signs();
  return std::accumulate(s.begin(), s.end(), 0);
}

int Diagram::positive_crossings() const {
  auto s = crossing_signs();
  return (int)std::count(s.begin(), s.end(), 1);
}

int Diagram::negative_crossings() const {
  auto s = crossing_signs();
  return (int)std::count(s.begin(), s.end(), -1);
}

Diagram Diagram::mirrored() const {
  std::vector<std::array<int, 4>> xs;
  xs.reserve(crossings_.size());
  for (const auto& q : crossings_) xs.push_back({q[1], q[2], q[3], q[0]});
  return from_parts(std::move(xs), free_loops_, reversed_);
}

ResolveResult Diagram::resolved(const CrossingSite& site) const {
  if (site.index < 0 || site.index >= (int)crossings_.size())
    throw DiagramError("crossing index out of range");
  if (site.resolution != 0 && site.resolution != 1)
    throw DiagramError("resolution must be 0 or 1");
  const int k = site.index;
  const auto& q = crossings_[k];

  const int m = (int)arcs_.size();
  std::vector<int> uf(m);
  std::iota(uf.begin(), uf.end(), 0);
  if (site.resolution == 0) {
    unite(uf, arc_index(q[0]), arc_index(q[1]));
    unite(uf, arc_index(q[2]), arc_index(q[3]));
  } else {
    unite(uf, arc_index(q[0]), arc_index(q[3]));
    unite(uf, arc_index(q[1]), arc_index(q[2]));
  }

  std::vector<std::array<int, 4>> xs;
  xs.reserve(crossings_.size() - 1);
  for (int c = 0; c < (int)crossings_.size(); ++c) {
    if (c == k) continue;
    std::array<int, 4> nq;
    for (int s = 0; s < 4; ++s) nq[s] = arcs_[find_root(uf, arc_index(crossings_[c][s]))];
    xs.push_back(nq);
  }

  // a merged group with no occurrences left closes into a circle
  std::map<int, int> group_occ;
  for (int i = 0; i < m; ++i) {
    int r = find_root(uf, i);
    int survivors = 0;
    for (int o = 0; o < 2; ++o)
      if (occ_[i][o] / 4 != k) ++survivors;
    group_occ[r] += survivors;
  }
  int closed = 0;
  for (auto& [r, cnt] : group_occ)
    if (cnt == 0) ++closed;

  Diagram nd = from_parts(std::move(xs), free_loops_ + closed);

  // inherit orientations: per new component, pick the flag assignment that
  // agrees with the most surviving arc directions
  std::vector<int> flags(nd.ncomp_, 0);
  std::vector<int> agree(nd.ncomp_, 0), total(nd.ncomp_, 0);
  for (int i = 0; i < (int)nd.arcs_.size(); ++i) {
    int comp = nd.comp_of_arc_[i];
    for (int o = 0; o < 2; ++o) {
      int packed = nd.occ_[i][o];
      int nc = packed / 4, slot = packed % 4;
      int oc = nc < k ? nc : nc + 1;  // original crossing index
      int old_arc = arc_index(crossings_[oc][slot]);
      bool role_old = occ_[old_arc][head_occ_[old_arc]] == 4 * oc + slot;
      bool role_new_default = (o == nd.head_occ_default_[i]);
      ++total[comp];
      if (role_new_default == role_old) ++agree[comp];
    }
  }
  bool consistent = true;
  for (int comp = 0; comp < nd.ncomp_; ++comp) {
    if (2 * agree[comp] >= total[comp]) {
      flags[comp] = 0;
      if (agree[comp] != total[comp]) consistent = false;
    } else {
      flags[comp] = 1;
      if (agree[comp] != 0) consistent = false;
    }
  }

  ResolveResult rr;
  rr.diagram = nd.with_orientation(flags);
  rr.loops_created = closed;
  rr.orientation_consistent = consistent;
  return rr;
}

R1Result Diagram::r1_reduced() const {
  R1Result res;
  Diagram cur = *this;
  int w0 = writhe(), n0 = negative_crossings();
  bool found = true;
  while (found) {
    found = false;
    for (int c = 0; c < cur.crossing_count() && !found; ++c) {
      const auto& q = cur.crossings_[c];
      // a kink has the same arc on two cyclically adjacent slots; resolve
      // with the choice that does not close the little loop
      static const int pass_choice[4] = {1, 0, 1, 0};
      for (int i = 0; i < 4; ++i) {
        if (q[i] == q[(i + 1) % 4]) {
          cur = cur.resolved({c, pass_choice[i]}).diagram;
          ++res.kinks_removed;
          found = true;
          break;
        }
      }
    }
  }
  res.delta_writhe = cur.writhe() - w0;
  res.delta_negative = cur.negative_crossings() - n0;
  res.diagram = std::move(cur);
  return res;
}

Diagram Diagram::canonical() const {
  auto rotate_min = [](std::array<int, 4> q) {
    std::array<int, 4> r{q[2], q[3], q[0], q[1]};
    return std::min(q, r);
  };
  std::vector<std::array<int, 4>> xs = crossings_;
  for (auto& q : xs) q = rotate_min(q);
  std::sort(xs.begin(), xs.end());
  for (int pass = 0; pass < 2; ++pass) {
    std::map<int, int> relabel;
    int next = 1;
    for (auto& q : xs)
      for (int s = 0; s < 4; ++s)
        if (!relabel.count(q[s])) relabel[q[s]] = next++;
    for (auto& q : xs)
      for (int s = 0; s < 4; ++s) q[s] = relabel[q[s]];
    for (auto& q : xs) q = rotate_min(q);
    std::sort(xs.begin(), xs.end());
  }
  return from_parts(std::move(xs), free_loops_);
}

// ---- text formats ----

Diagram Diagram::from_pd_code(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace((unsigned char)ch)) s.push_back(ch);
  if (s.size() < 4 || s.substr(0, 3) != "PD[" || s.back() != ']')
    throw DiagramError("expected PD[...]");
  std::string body = s.substr(3, s.size() - 4);

  std::vector<std::array<int, 4>> xs;
  int loops = 0;
  size_t pos = 0;
  while (pos < body.size()) {
    if (body.compare(pos, 2, "X[") == 0) {
      size_t end = body.find(']', pos);
      if (end == std::string::npos) throw DiagramError("unterminated X[");
      std::string inner = body.substr(pos + 2, end - pos - 2);
      std::array<int, 4> q{};
      int n = 0;
      size_t p = 0;
      while (p <= inner.size() && n < 5) {
        size_t comma = inner.find(',', p);
        std::string tok = inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
        if (tok.empty()) throw DiagramError("empty entry in X[...]");
        try {
          if (n >= 4) throw std::invalid_argument("overflow");
          size_t used = 0;
          q[n] = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument("junk");
        } catch (const std::exception&) {
          throw DiagramError("bad crossing entry '" + tok + "'");
        }
        ++n;
        if (comma == std::string::npos) break;
        p = comma + 1;
      }
      if (n != 4) throw DiagramError("crossing needs exactly 4 arcs");
      xs.push_back(q);
      pos = end + 1;
      if (pos < body.size()) {
        if (body[pos] != ',') throw DiagramError("expected ',' between entries");
        ++pos;
      }
    } else if (body.compare(pos, 6, "loops=") == 0) {
      size_t end = body.find(',', pos);
      std::string tok = body.substr(pos + 6, end == std::string::npos ? std::string::npos : end - pos - 6);
      try {
        size_t used = 0;
        loops = std::stoi(tok, &used);
        if (used != tok.size() || loops < 0) throw std::invalid_argument("bad");
      } catch (const std::exception&) {
        throw DiagramError("bad loop count '" + tok + "'");
      }
      pos = (end == std::string::npos) ? body.size() : end + 1;
    } else {
      throw DiagramError("unexpected token at '" + body.substr(pos, 8) + "'");
    }
  }
  if (xs.empty() && loops == 0)
    throw DiagramError("empty diagram: no crossings and no loop declaration");
  return from_parts(std::move(xs), loops);
}

std::string Diagram::to_pd_code() const {
  std::ostringstream os;
  os << "PD[";
  bool first = true;
  for (const auto& q : crossings_) {
    if (!first) os << ",";
    first = false;
    os << "X[" << q[0] << "," << q[1] << "," << q[2] << "," << q[3] << "]";
  }
  if (free_loops_ > 0) {
    if (!first) os << ",";
    os << "loops=" << free_loops_;
  }
  os << "]";
  return os.str();
}

nlohmann::ordered_json Diagram::to_json() const {
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& q : crossings_) arr.push_back({q[0], q[1], q[2], q[3]});
  j["crossings"] = std::move(arr);
  j["loops"] = free_loops_;
  j["orientations"] = reversed_;
  return j;
}

Diagram Diagram::from_json(const nlohmann::ordered_json& j) {
  std::vector<std::array<int, 4>> xs;
  for (const auto& e : j.at("crossings")) {
    if (e.size() != 4) throw DiagramError("crossing must have 4 arcs");
    xs.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
  }
  int loops = j.value("loops", 0);
  std::vector<int> rev;
  if (j.contains("orientations")) rev = j["orientations"].get<std::vector<int>>();
  return from_parts(std::move(xs), loops, std::move(rev));
}

}  // namespace kh
