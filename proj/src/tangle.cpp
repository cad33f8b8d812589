#include "kh/tangle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <set>

namespace kh {

namespace {

int pmod(int a, int m) { return ((a % m) + m) % m; }

struct Occ {
  bool is_boundary;
  int crossing, slot;  // when !is_boundary
  int pos;             // when is_boundary
};

std::map<int, std::vector<Occ>> occurrences(const Tangle& t) {
  std::map<int, std::vector<Occ>> occ;
  for (int c = 0; c < t.crossing_count(); ++c)
    for (int s = 0; s < 4; ++s) occ[t.crossings()[c][s]].push_back({false, c, s, -1});
  for (int p = 0; p < t.ends(); ++p) occ[t.boundary()[p]].push_back({true, -1, -1, p});
  return occ;
}

}  // namespace

Tangle Tangle::from_parts(std::vector<std::array<int, 4>> crossings,
                          std::vector<int> boundary, int free_loops) {
  Tangle t;
  t.crossings_ = std::move(crossings);
  t.boundary_ = std::move(boundary);
  t.free_loops_ = free_loops;
  if (t.boundary_.size() % 2 != 0) throw TangleError("odd boundary point count");
  if (free_loops < 0) throw TangleError("negative loop count");
  for (const auto& q : t.crossings_)
    for (int s = 0; s < 4; ++s)
      if (q[s] < 0) throw TangleError("arc labels must be nonnegative");
  for (int b : t.boundary_)
    if (b < 0) throw TangleError("arc labels must be nonnegative");
  for (const auto& [label, os] : occurrences(t))
    if (os.size() != 2)
      throw TangleError("arc " + std::to_string(label) + " appears " +
                        std::to_string(os.size()) + " times (expected 2)");
  return t;
}

nlohmann::ordered_json Tangle::to_json() const {
  nlohmann::ordered_json j;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& q : crossings_) arr.push_back({q[0], q[1], q[2], q[3]});
  j["crossings"] = std::move(arr);
  j["boundary"] = boundary_;
  j["loops"] = free_loops_;
  return j;
}

Tangle Tangle::from_json(const nlohmann::ordered_json& j) {
  std::vector<std::array<int, 4>> xs;
  for (const auto& e : j.at("crossings"))
    xs.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>(), e[3].get<int>()});
  return from_parts(std::move(xs), j.at("boundary").get<std::vector<int>>(),
                    j.value("loops", 0));
}

Tangle Tangle::canonical() const {
  // relabel arcs by first appearance: boundary first, then sorted crossings
  std::map<int, int> relabel;
  int next = 1;
  auto touch = [&](int a) {
    if (!relabel.count(a)) relabel[a] = next++;
  };
  for (int b : boundary_) touch(b);
  auto xs = crossings_;
  std::sort(xs.begin(), xs.end());
  for (const auto& q : xs)
    for (int s = 0; s < 4; ++s) touch(q[s]);
  std::vector<std::array<int, 4>> out;
  for (const auto& q : crossings_) {
    std::array<int, 4> nq{relabel[q[0]], relabel[q[1]], relabel[q[2]], relabel[q[3]]};
    std::array<int, 4> rot{nq[2], nq[3], nq[0], nq[1]};
    out.push_back(std::min(nq, rot));
  }
  std::sort(out.begin(), out.end());
  std::vector<int> nb;
  for (int b : boundary_) nb.push_back(relabel[b]);
  Tangle t;
  t.crossings_ = std::move(out);
  t.boundary_ = std::move(nb);
  t.free_loops_ = free_loops_;
  return t;
}

Tangle rotate_pi(const Tangle& t, int axis) {
  const int m = t.ends();
  if (m > 0) axis = pmod(axis, m);
  std::vector<std::array<int, 4>> xs;
  for (const auto& q : t.crossings()) xs.push_back({q[3], q[2], q[1], q[0]});
  std::vector<int> nb(m);
  for (int i = 0; i < m; ++i) nb[pmod(axis - i, m)] = t.boundary()[i];
  return Tangle::from_parts(std::move(xs), std::move(nb), t.free_loops());
}

Tangle rotate_in_plane(const Tangle& t, int positions) {
  const int m = t.ends();
  std::vector<int> nb(m);
  for (int i = 0; i < m; ++i) nb[pmod(i + positions, m)] = t.boundary()[i];
  return Tangle::from_parts(t.crossings(), std::move(nb), t.free_loops());
}

namespace {

struct End {
  bool is_boundary;
  int c, s, pos;
  bool operator<(const End& o) const {
    return std::tie(is_boundary, c, s, pos) < std::tie(o.is_boundary, o.c, o.s, o.pos);
  }
  bool operator==(const End& o) const {
    return is_boundary == o.is_boundary && c == o.c && s == o.s && pos == o.pos;
  }
};

struct SymState {
  std::map<int, std::pair<int, int>> cmap;  // crossing -> (image, rotation)
  std::map<int, int> cmap_inv;
  std::map<int, int> amap;
};

using EndPair = std::pair<std::pair<int, End>, std::pair<int, End>>;

struct SymSearch {
  const Tangle& t;
  std::map<int, std::array<End, 2>> ends_of;  // arc -> its two ends

  explicit SymSearch(const Tangle& tt) : t(tt) {
    for (int c = 0; c < t.crossing_count(); ++c)
      for (int s = 0; s < 4; ++s) {
        int a = t.crossings()[c][s];
        auto it = ends_of.find(a);
        if (it == ends_of.end())
          ends_of[a] = {End{false, c, s, -1}, End{false, c, s, -1}};
        else
          it->second[1] = End{false, c, s, -1};
      }
    for (int p = 0; p < t.ends(); ++p) {
      int a = t.boundary()[p];
      auto it = ends_of.find(a);
      if (it == ends_of.end())
        ends_of[a] = {End{true, -1, -1, p}, End{true, -1, -1, p}};
      else
        it->second[1] = End{true, -1, -1, p};
    }
  }

  End other_end(int arc, const End& e) const {
    const auto& es = ends_of.at(arc);
    return es[0] == e ? es[1] : es[0];
  }

  // propagate "end e of arc a maps to end f of arc b"; false on contradiction
  bool propagate(SymState& st, std::vector<EndPair> queue) const {
    while (!queue.empty()) {
      auto [from, to] = queue.back();
      queue.pop_back();
      auto [a, e] = from;
      auto [b, f] = to;
      auto it = st.amap.find(a);
      if (it != st.amap.end() && it->second != b) return false;
      st.amap[a] = b;
      if (e.is_boundary != f.is_boundary) return false;
      if (e.is_boundary) {
        if (f.pos != pmod(e.pos + 2, t.ends())) return false;
        continue;
      }
      int r = pmod(f.s - e.s, 4);
      if (r % 2 != 0) return false;
      auto ct = st.cmap.find(e.c);
      if (ct != st.cmap.end()) {
        if (ct->second != std::make_pair(f.c, r)) return false;
        continue;
      }
      auto cti = st.cmap_inv.find(f.c);
      if (cti != st.cmap_inv.end() && cti->second != e.c) return false;
      st.cmap[e.c] = {f.c, r};
      st.cmap_inv[f.c] = e.c;
      for (int s = 0; s < 4; ++s) {
        int src = t.crossings()[e.c][s];
        int dst = t.crossings()[f.c][(s + r) % 4];
        End es{false, e.c, s, -1};
        End ds{false, f.c, (s + r) % 4, -1};
        queue.push_back({{src, es}, {dst, ds}});
        queue.push_back({{src, other_end(src, es)}, {dst, other_end(dst, ds)}});
      }
    }
    return true;
  }

  // extend over interior components unreachable from the boundary
  bool complete(SymState& st) const {
    int c0 = -1;
    for (int c = 0; c < t.crossing_count(); ++c)
      if (!st.cmap.count(c)) {
        c0 = c;
        break;
      }
    if (c0 < 0) return true;
    for (int c1 = 0; c1 < t.crossing_count(); ++c1) {
      if (st.cmap_inv.count(c1)) continue;
      for (int r : {0, 2}) {
        SymState trial = st;
        std::vector<EndPair> q;
        for (int s = 0; s < 4; ++s) {
          int src = t.crossings()[c0][s];
          int dst = t.crossings()[c1][(s + r) % 4];
          End es{false, c0, s, -1}, ds{false, c1, (s + r) % 4, -1};
          q.push_back({{src, es}, {dst, ds}});
          q.push_back({{src, other_end(src, es)}, {dst, other_end(dst, ds)}});
        }
        if (propagate(trial, std::move(q)) && complete(trial)) {
          st = std::move(trial);
          return true;
        }
      }
    }
    return false;
  }
};

}  // namespace

SymmetryWitness check_rotational_symmetry(const Tangle& t, int order) {
  if (order < 3) throw TangleError("rotational order must be at least 3");
  if (t.ends() != 2 * order)
    throw TangleError("tangle has " + std::to_string(t.ends()) +
                      " boundary points, expected " + std::to_string(2 * order));
  SymmetryWitness w;
  SymSearch search(t);
  SymState st;
  std::vector<EndPair> queue;
  for (int p = 0; p < t.ends(); ++p) {
    int a = t.boundary()[p];
    int b = t.boundary()[pmod(p + 2, t.ends())];
    End ea{true, -1, -1, p}, eb{true, -1, -1, pmod(p + 2, t.ends())};
    queue.push_back({{a, ea}, {b, eb}});
    queue.push_back({{a, search.other_end(a, ea)}, {b, search.other_end(b, eb)}});
  }
  if (!search.propagate(st, std::move(queue)) || !search.complete(st)) return w;
  w.symmetric = true;
  w.arc_map = st.amap;
  for (const auto& [c, ir] : st.cmap) w.crossing_map[c] = ir.first;
  return w;
}

Rotor make_rotor(Tangle t, int order) {
  auto w = check_rotational_symmetry(t, order);
  if (!w.symmetric) throw TangleError("tangle is not rotationally symmetric");
  return Rotor{std::move(t), order};
}

ComposeResult compose_tangles(const Tangle& stator, const Tangle& rotor) {
  if (stator.ends() != rotor.ends())
    throw TangleError("boundary sizes differ: " + std::to_string(stator.ends()) + " vs " +
                      std::to_string(rotor.ends()));
  int off = 0;
  for (const auto& q : stator.crossings())
    for (int s = 0; s < 4; ++s) off = std::max(off, q[s]);
  for (int b : stator.boundary()) off = std::max(off, b);
  off += 1;

  // union-find over combined labels
  std::map<int, int> parent;
  std::function<int(int)> root = [&](int x) {
    if (!parent.count(x)) parent[x] = x;
    if (parent[x] == x) return x;
    parent[x] = root(parent[x]);
    return parent[x];
  };
  auto unite = [&](int a, int b) {
    a = root(a);
    b = root(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (int i = 0; i < stator.ends(); ++i)
    unite(stator.boundary()[i], rotor.boundary()[i] + off);

  std::vector<std::array<int, 4>> xs;
  std::map<int, int> cross_occ;
  auto add_crossings = [&](const std::vector<std::array<int, 4>>& src, int shift) {
    for (const auto& q : src) {
      std::array<int, 4> nq;
      for (int s = 0; s < 4; ++s) {
        nq[s] = root(q[s] + shift);
        ++cross_occ[nq[s]];
      }
      xs.push_back(nq);
    }
  };
  add_crossings(stator.crossings(), 0);
  add_crossings(rotor.crossings(), off);

  // boundary chains with no crossing ends close into circles
  std::set<int> chain_roots;
  for (int i = 0; i < stator.ends(); ++i) chain_roots.insert(root(stator.boundary()[i]));
  int loops = stator.free_loops() + rotor.free_loops();
  for (int r : chain_roots)
    if (cross_occ.find(r) == cross_occ.end() || cross_occ[r] == 0) ++loops;

  ComposeResult res;
  res.diagram = Diagram::from_parts(std::move(xs), loops);
  for (const auto& q : stator.crossings())
    for (int s = 0; s < 4; ++s) res.stator_arcs[q[s]] = root(q[s]);
  for (int i = 0; i < stator.ends(); ++i)
    res.stator_arcs[stator.boundary()[i]] = root(stator.boundary()[i]);
  for (const auto& q : rotor.crossings())
    for (int s = 0; s < 4; ++s) res.rotor_arcs[q[s]] = root(q[s] + off);
  for (int i = 0; i < rotor.ends(); ++i)
    res.rotor_arcs[rotor.boundary()[i]] = root(rotor.boundary()[i] + off);
  return res;
}

std::vector<std::pair<std::vector<int>, int>> writhe_options(const Diagram& d) {
  const int nc = d.component_count();
  std::vector<std::pair<std::vector<int>, int>> out;
  const int free = nc > 0 ? nc - 1 : 0;
  for (int mask = 0; mask < (1 << free); ++mask) {
    std::vector<int> flags(nc, 0);
    for (int i = 0; i < free; ++i) flags[i + 1] = (mask >> i) & 1;
    out.push_back({flags, d.with_orientation(flags).writhe()});
  }
  return out;
}

WritheMatch writhe_match_check(const Diagram& a, const Diagram& b) {
  WritheMatch m;
  auto wa = writhe_options(a);
  auto wb = writhe_options(b);
  for (const auto& [fa, va] : wa)
    for (const auto& [fb, vb] : wb)
      if (va == vb) {
        m.matched = true;
        m.orient_a = fa;
        m.orient_b = fb;
        m.writhe = va;
        return m;
      }
  return m;
}

// ---- random generators -----------------------------------------------------

Tangle random_rotor(int order, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int n = order;
  // sector: outer strand from boundary 2i to 2i+1, optionally dipping
  // across a closed ring that circles the centre (two crossings), plus an
  // optional second ring twisting with the first (two crossings)
  bool dip = rng() % 2;
  int dip_over1 = rng() % 2, dip_over2 = rng() % 2;
  bool ring2 = !dip && (rng() % 2);
  int tw_over1 = rng() % 2, tw_over2 = rng() % 2;

  std::vector<std::array<int, 4>> xs;
  std::vector<int> boundary(2 * n);
  int loops = 0;
  int next = 1;

  if (!dip && !ring2) {
    // crossingless petals, maybe with a plain ring
    for (int i = 0; i < n; ++i) {
      boundary[2 * i] = next;
      boundary[2 * i + 1] = next;
      ++next;
    }
    loops = (int)(rng() % 2);
    return Tangle::from_parts(std::move(xs), std::move(boundary), loops);
  }

  if (dip) {
    // per sector: ring arcs t0 (interface), t1; outer arcs o0, o1, o2
    // ring interface arc of sector i = t_i, shared with sector i-1
    std::vector<int> tface(n), t1(n), o0(n), o1(n), o2(n);
    for (int i = 0; i < n; ++i) tface[i] = next++;
    for (int i = 0; i < n; ++i) {
      t1[i] = next++;
      o0[i] = next++;
      o1[i] = next++;
      o2[i] = next++;
    }
    for (int i = 0; i < n; ++i) {
      int tin = tface[i];
      int tout = tface[(i + 1) % n];
      // crossing 1: outer strand o0 -> o1 across ring segment tin -> t1
      if (dip_over1)
        xs.push_back({tin, o1[i], t1[i], o0[i]});
      else
        xs.push_back({o0[i], tin, o1[i], t1[i]});
      // crossing 2: outer strand o1 -> o2 across ring segment t1 -> tout
      if (dip_over2)
        xs.push_back({t1[i], o1[i], tout, o2[i]});
      else
        xs.push_back({o2[i], t1[i], o1[i], tout});
      boundary[2 * i] = o0[i];
      boundary[2 * i + 1] = o2[i];
    }
    return Tangle::from_parts(std::move(xs), std::move(boundary), 0);
  }

  // two rings twisting twice per sector, petals outside
  std::vector<int> aface(n), bface(n), a1(n), b1(n);
  for (int i = 0; i < n; ++i) {
    aface[i] = next++;
    bface[i] = next++;
  }
  for (int i = 0; i < n; ++i) {
    a1[i] = next++;
    b1[i] = next++;
  }
  for (int i = 0; i < n; ++i) {
    int ain = aface[i], bin = bface[i];
    int aout = aface[(i + 1) % n], bout = bface[(i + 1) % n];
    // half twist 1: strands (ain,b1) under/over (bin,a1)
    if (tw_over1)
      xs.push_back({bin, b1[i], a1[i], ain});
    else
      xs.push_back({ain, bin, b1[i], a1[i]});
    // half twist 2: (a1,bout) with (b1,aout)
    if (tw_over2)
      xs.push_back({b1[i], bout, aout, a1[i]});
    else
      xs.push_back({a1[i], b1[i], bout, aout});
    boundary[2 * i] = next;
    boundary[2 * i + 1] = next;
    ++next;
  }
  return Tangle::from_parts(std::move(xs), std::move(boundary), 0);
}

Tangle random_stator(int ends, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> boundary(ends, -1);
  int next = 1;
  // random noncrossing matching: match position 0 of each gap to a random
  // odd offset, recurse on the two sides
  std::function<void(int, int)> fill = [&](int lo, int hi) {
    if (lo >= hi) return;
    int len = hi - lo + 1;
    int choices = len / 2;
    int k = (int)(rng() % (uint64_t)choices);
    int partner = lo + 2 * k + 1;
    boundary[lo] = next;
    boundary[partner] = next;
    ++next;
    fill(lo + 1, partner - 1);
    fill(partner + 1, hi);
  };
  fill(0, ends - 1);
  return Tangle::from_parts({}, std::move(boundary), 0);
}

}  // namespace kh
