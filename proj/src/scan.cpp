#include "kh/scan.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "kh/cube.hpp"
#include "kh/homology.hpp"

namespace kh {

namespace {

using Pair = std::pair<int, int>;

Pair mk(int a, int b) { return a < b ? Pair{a, b} : Pair{b, a}; }

// ---- morphism values -------------------------------------------------
//
// An entry of the differential between objects with matchings M and M' is
// a Z-linear combination of dot patterns on the circles of M u conj(M').
// Bit i of `dots` marks a dot (multiplication by x) on circle i in the
// canonical circle order.

struct Term {
  mpz_class coeff;
  uint64_t dots = 0;
};

using Value = std::vector<Term>;

void canonicalize(Value& v) {
  std::sort(v.begin(), v.end(), [](const Term& a, const Term& b) { return a.dots < b.dots; });
  Value out;
  for (auto& t : v) {
    if (!out.empty() && out.back().dots == t.dots)
      out.back().coeff += t.coeff;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const Term& t) { return t.coeff == 0; }),
            out.end());
  v = std::move(out);
}

void value_sub(Value& a, const Value& b) {
  for (const auto& t : b) a.push_back({-t.coeff, t.dots});
  canonicalize(a);
}

// ---- objects ----------------------------------------------------------

struct Obj {
  std::vector<Pair> match;   // sorted pairs over open arc labels
  std::vector<int> closed;   // ids of closed circles, ascending
  int h = 0;                 // cube height
  int q = 0;                 // quantum shift
};

// circles of M_a u conj(M_b); both matchings live on the same point set
struct UCircles {
  struct Circle {
    std::vector<std::pair<int, Pair>> arcs;  // (side, arc) along the walk
    int closed_side = -1;                    // -1 for matching circles
    int closed_pos = -1;                     // position in that side's closed list
  };
  std::vector<Circle> cs;
  std::map<int, int> of_point;
};

UCircles union_circles(const Obj& a, const Obj& b) {
  UCircles u;
  std::map<int, Pair> arc_a, arc_b;
  for (const auto& p : a.match) {
    arc_a[p.first] = p;
    arc_a[p.second] = p;
  }
  for (const auto& p : b.match) {
    arc_b[p.first] = p;
    arc_b[p.second] = p;
  }
  std::set<int> todo;
  for (const auto& [pt, arc] : arc_a) todo.insert(pt);

  while (!todo.empty()) {
    int start = *todo.begin();
    UCircles::Circle c;
    int pt = start;
    int side = 0;
    do {
      const Pair& arc = side == 0 ? arc_a.at(pt) : arc_b.at(pt);
      c.arcs.push_back({side, arc});
      todo.erase(pt);
      pt = arc.first == pt ? arc.second : arc.first;
      todo.erase(pt);
      side ^= 1;
    } while (!(pt == start && side == 0));
    u.cs.push_back(std::move(c));
  }
  // matching circles come out ordered by minimal point already
  for (size_t i = 0; i < u.cs.size(); ++i)
    for (const auto& [side, arc] : u.cs[i].arcs) {
      u.of_point[arc.first] = (int)i;
      u.of_point[arc.second] = (int)i;
    }
  for (int side = 0; side < 2; ++side) {
    const Obj& o = side == 0 ? a : b;
    for (size_t j = 0; j < o.closed.size(); ++j) {
      UCircles::Circle c;
      c.closed_side = side;
      c.closed_pos = (int)j;
      u.cs.push_back(std::move(c));
    }
  }
  if (u.cs.size() > 60) throw std::runtime_error("scan frontier too wide (over 60 circles)");
  return u;
}

// ---- sheet evaluation --------------------------------------------------
//
// A composite cobordism is a union of dotted sheets glued along intervals.
// Per connected component: chi = #sheets - #gluings, genus from
// 2 - 2g - b = chi, each handle inserts a factor 2x, two dots kill the
// component. The surviving component expands into dot patterns on its
// boundary circles.

struct SheetProblem {
  int nsheets = 0;
  std::vector<int> dots;          // per sheet
  std::vector<Pair> glue;         // sheet pairs, self-gluing allowed
  std::vector<int> circle_sheet;  // output circle -> any sheet meeting it
};

std::vector<std::pair<mpz_class, uint64_t>> evaluate_sheets(const SheetProblem& p) {
  std::vector<int> uf(p.nsheets);
  for (int i = 0; i < p.nsheets; ++i) uf[i] = i;
  auto root = [&](int x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (const auto& [a, b] : p.glue) {
    int ra = root(a), rb = root(b);
    if (ra != rb) uf[std::max(ra, rb)] = std::min(ra, rb);
  }

  std::map<int, int> sheets_in, glue_in, dots_in;
  std::map<int, std::vector<int>> circles_in;
  for (int i = 0; i < p.nsheets; ++i) {
    ++sheets_in[root(i)];
    dots_in[root(i)] += p.dots[i];
  }
  for (const auto& [a, b] : p.glue) ++glue_in[root(a)];
  for (size_t c = 0; c < p.circle_sheet.size(); ++c)
    circles_in[root(p.circle_sheet[c])].push_back((int)c);

  std::vector<std::pair<mpz_class, uint64_t>> acc{{1, 0}};
  for (const auto& [r, ns] : sheets_in) {
    int chi = ns - glue_in[r];
    const auto& circles = circles_in[r];
    int b = (int)circles.size();
    int twog = 2 - b - chi;
    if (twog < 0 || twog % 2 != 0)
      throw std::logic_error("cobordism genus came out negative or fractional");
    int g = twog / 2;
    int e = dots_in[r] + g;
    if (e >= 2) return {};
    mpz_class factor = 1;
    mpz_mul_2exp(factor.get_mpz_t(), factor.get_mpz_t(), g);

    if (b == 0) {
      if (e != 1) return {};  // undotted closed surface evaluates to zero
      for (auto& [c, m] : acc) c *= factor;
      continue;
    }
    std::vector<std::pair<mpz_class, uint64_t>> local;
    if (e == 1) {
      uint64_t mask = 0;
      for (int c : circles) mask |= 1ull << c;
      local.push_back({factor, mask});
    } else {
      for (int undotted : circles) {
        uint64_t mask = 0;
        for (int c : circles)
          if (c != undotted) mask |= 1ull << c;
        local.push_back({factor, mask});
      }
    }
    std::vector<std::pair<mpz_class, uint64_t>> next;
    for (const auto& [c1, m1] : acc)
      for (const auto& [c2, m2] : local) next.push_back({c1 * c2, m1 | m2});
    acc = std::move(next);
  }
  return acc;
}

// ---- vertical composition ----------------------------------------------

Value compose(const Obj& a, const Obj& b, const Obj& c, const Value& f, const Value& g) {
  if (a.match.empty() && b.match.empty() && c.match.empty() && a.closed.empty() &&
      b.closed.empty() && c.closed.empty()) {
    // scalar endgame
    mpz_class prod = 0;
    if (!f.empty() && !g.empty()) prod = f[0].coeff * g[0].coeff;
    Value v;
    if (prod != 0) v.push_back({prod, 0});
    return v;
  }
  if (!b.closed.empty()) throw std::logic_error("compose through an undelooped object");

  UCircles ua = union_circles(a, b);
  UCircles ub = union_circles(b, c);
  UCircles uc = union_circles(a, c);
  const int off = (int)ua.cs.size();

  SheetProblem p;
  p.nsheets = (int)(ua.cs.size() + ub.cs.size());
  p.dots.assign(p.nsheets, 0);
  for (const auto& arc : b.match)
    p.glue.push_back({ua.of_point.at(arc.first), off + ub.of_point.at(arc.first)});

  p.circle_sheet.resize(uc.cs.size());
  for (size_t i = 0; i < uc.cs.size(); ++i) {
    const auto& circ = uc.cs[i];
    if (circ.closed_side < 0) {
      const auto& [side, arc] = circ.arcs.front();
      p.circle_sheet[i] =
          side == 0 ? ua.of_point.at(arc.first) : off + ub.of_point.at(arc.first);
    } else if (circ.closed_side == 0) {
      // closed circle of a: singleton sheet inside ua
      int pos = circ.closed_pos;
      int idx = (int)ua.cs.size() - (int)a.closed.size() - (int)b.closed.size();
      p.circle_sheet[i] = idx + pos;
    } else {
      int pos = circ.closed_pos;
      int idx = (int)ub.cs.size() - (int)c.closed.size();
      p.circle_sheet[i] = off + idx + pos;
    }
  }

  // dot masks: ua circles occupy indices [0, ua), ub circles [off, off+ub)
  Value out;
  for (const auto& tf : f)
    for (const auto& tg : g) {
      for (int i = 0; i < (int)ua.cs.size(); ++i) p.dots[i] = (tf.dots >> i) & 1u;
      for (int i = 0; i < (int)ub.cs.size(); ++i) p.dots[off + i] = (tg.dots >> i) & 1u;
      auto parts = evaluate_sheets(p);
      for (auto& [coef, mask] : parts) out.push_back({tf.coeff * tg.coeff * coef, mask});
    }
  canonicalize(out);
  return out;
}

Value identity_value() { return {Term{1, 0}}; }

// inverse of a unit-triangular endomorphism value
Value invert(const Value& e, const Obj& o) {
  mpz_class unit = 0;
  for (const auto& t : e)
    if (t.dots == 0) unit = t.coeff;
  if (!(unit == 1 || unit == -1)) throw std::logic_error("entry is not invertible");
  // e = u (I + n) with n nilpotent; e^-1 = u (I - n + n^2 - ...)
  Value n;
  for (const auto& t : e)
    if (t.dots != 0) n.push_back({unit * t.coeff, t.dots});
  canonicalize(n);
  Value inv = identity_value();
  Value pow = n;
  int sign = -1;
  while (!pow.empty()) {
    for (const auto& t : pow) inv.push_back({sign * t.coeff, t.dots});
    pow = compose(o, o, o, pow, n);
    sign = -sign;
  }
  canonicalize(inv);
  for (auto& t : inv) t.coeff *= unit;
  return inv;
}

// ---- the scan complex ---------------------------------------------------

struct Cx {
  std::vector<Obj> objs;
  std::vector<char> alive;
  std::vector<std::map<int, Value>> out;
  std::vector<std::set<int>> in;

  int add(Obj o) {
    objs.push_back(std::move(o));
    alive.push_back(1);
    out.emplace_back();
    in.emplace_back();
    return (int)objs.size() - 1;
  }

  void set_entry(int g, int h, Value v) {
    if (v.empty()) {
      out[g].erase(h);
      in[h].erase(g);
    } else {
      out[g][h] = std::move(v);
      in[h].insert(g);
    }
  }

  void kill(int g) {
    for (auto& [z, v] : out[g]) in[z].erase(g);
    for (int b : std::vector<int>(in[g].begin(), in[g].end())) out[b].erase(g);
    out[g].clear();
    in[g].clear();
    alive[g] = 0;
  }
};

// ---- gluing one crossing -------------------------------------------------

struct Piece {
  int kind;  // 0 = old matching arc, 1 = smoothing arc
  Pair arc;  // for kind 0
  int sm = 0;  // smoothing arc index 0/1 for kind 1
};

struct Glued {
  Obj obj;
  std::map<Pair, std::vector<Piece>> arc_pieces;
  std::vector<std::vector<Piece>> closed_pieces;
  std::vector<std::array<Piece, 2>> glue_points;
};

struct CrossingPlan {
  std::array<int, 4> arcs;              // slot -> arc label
  std::array<int, 4> slot_state;        // 0 consumed, 1 new, 2 self-paired
  std::array<int, 4> self_partner;      // for state 2
  std::array<std::array<int, 2>, 2> sm[2];  // sm[i] = two slot pairs
};

CrossingPlan plan_crossing(const Diagram& d, int k, const std::set<int>& frontier,
                           const std::vector<char>& processed) {
  CrossingPlan pl{};
  const auto& q = d.crossings()[k];
  for (int s = 0; s < 4; ++s) pl.arcs[s] = q[s];
  for (int s = 0; s < 4; ++s) {
    int other = -1;
    for (int s2 = 0; s2 < 4; ++s2)
      if (s2 != s && q[s2] == q[s]) other = s2;
    if (other >= 0) {
      pl.slot_state[s] = 2;
      pl.self_partner[s] = other;
    } else if (frontier.count(q[s])) {
      pl.slot_state[s] = 0;
    } else {
      pl.slot_state[s] = 1;
    }
  }
  (void)processed;
  pl.sm[0] = {{{0, 1}, {2, 3}}};
  pl.sm[1] = {{{0, 3}, {1, 2}}};
  return pl;
}

// glue smoothing i of the planned crossing onto object g
Glued glue_object(const Obj& g, const CrossingPlan& pl, int i, int& next_closed_id) {
  Glued out;
  out.obj.h = g.h + i;
  out.obj.q = g.q + i;

  // strand graph: nodes are frontier points and slot nodes; walk chains
  // node encoding: points by label, slots by -(s+1)
  std::map<int, Pair> old_arc_at;
  for (const auto& a : g.match) {
    old_arc_at[a.first] = a;
    old_arc_at[a.second] = a;
  }
  auto slot_node = [](int s) { return -(s + 1); };

  // neighbour step through a strand edge from a node entering via an edge
  // kind; returns (other node, piece)
  std::array<int, 4> sm_arc_of_slot{};
  for (int j = 0; j < 2; ++j)
    for (int s : pl.sm[i][j]) sm_arc_of_slot[s] = j;
  auto sm_other_slot = [&](int s) {
    int j = sm_arc_of_slot[s];
    return pl.sm[i][j][0] == s ? pl.sm[i][j][1] : pl.sm[i][j][0];
  };

  // identifications: slot <-> point (consumed) or slot <-> slot (self)
  auto ident_of_slot = [&](int s) -> int {
    if (pl.slot_state[s] == 0) return pl.arcs[s];           // glued to this point
    if (pl.slot_state[s] == 2) return slot_node(pl.self_partner[s]);
    return 0;  // open
  };

  for (int s = 0; s < 4; ++s) {
    if (pl.slot_state[s] == 0) {
      Piece a{0, old_arc_at.at(pl.arcs[s]), 0};
      Piece b{1, {}, sm_arc_of_slot[s]};
      out.glue_points.push_back({a, b});
    } else if (pl.slot_state[s] == 2 && pl.self_partner[s] > s) {
      Piece a{1, {}, sm_arc_of_slot[s]};
      Piece b{1, {}, sm_arc_of_slot[pl.self_partner[s]]};
      out.glue_points.push_back({a, b});
    }
  }

  // walk chains; endpoints are open points (old, unconsumed) and open slots
  std::set<int> consumed_points;
  for (int s = 0; s < 4; ++s)
    if (pl.slot_state[s] == 0) consumed_points.insert(pl.arcs[s]);

  std::set<int> visited_pts;        // old frontier points traversed
  std::set<int> visited_slots;      // slots traversed
  std::vector<int> endpoints;       // node ids
  for (const auto& a : g.match) {
    if (!consumed_points.count(a.first)) endpoints.push_back(a.first);
    if (!consumed_points.count(a.second)) endpoints.push_back(a.second);
  }
  for (int s = 0; s < 4; ++s)
    if (pl.slot_state[s] == 1) endpoints.push_back(slot_node(s));
  std::sort(endpoints.begin(), endpoints.end());

  auto point_name = [&](int node) {
    return node >= 0 ? node : pl.arcs[-(node + 1)];
  };

  std::set<int> done_endpoints;
  auto walk = [&](int start, bool closed_walk) -> std::pair<int, std::vector<Piece>> {
    std::vector<Piece> pieces;
    int node = start;
    for (;;) {
      // traverse the single strand edge at `node`
      int nxt;
      if (node >= 0) {
        const Pair& arc = old_arc_at.at(node);
        pieces.push_back({0, arc, 0});
        nxt = arc.first == node ? arc.second : arc.first;
        visited_pts.insert(node);
        visited_pts.insert(nxt);
      } else {
        int s = -(node + 1);
        pieces.push_back({1, {}, sm_arc_of_slot[s]});
        int s2 = sm_other_slot(s);
        nxt = slot_node(s2);
        visited_slots.insert(s);
        visited_slots.insert(s2);
      }
      // follow the identification at nxt, or stop at an open end
      if (nxt >= 0) {
        if (!consumed_points.count(nxt)) return {nxt, pieces};
        int hop = -1000;
        for (int s = 0; s < 4; ++s)
          if (pl.slot_state[s] == 0 && pl.arcs[s] == nxt) hop = slot_node(s);
        if (hop == -1000) throw std::logic_error("lost identification");
        node = hop;
      } else {
        int s = -(nxt + 1);
        if (pl.slot_state[s] == 1) return {nxt, pieces};
        node = ident_of_slot(s);
      }
      if (closed_walk && node == start) return {node, pieces};
    }
  };

  for (int e : endpoints) {
    if (done_endpoints.count(e)) continue;
    auto [other, pieces] = walk(e, false);
    done_endpoints.insert(e);
    done_endpoints.insert(other);
    Pair arc = mk(point_name(e), point_name(other));
    out.obj.match.push_back(arc);
    out.arc_pieces[arc] = std::move(pieces);
  }
  std::sort(out.obj.match.begin(), out.obj.match.end());

  // leftover cycles close up
  for (const auto& a : g.match)
    for (int pt : {a.first, a.second}) {
      if (visited_pts.count(pt) || !consumed_points.count(pt)) continue;
      auto [endn, pieces] = walk(pt, true);
      (void)endn;
      out.obj.closed.push_back(next_closed_id);
      out.closed_pieces.push_back(std::move(pieces));
      ++next_closed_id;
    }
  for (int s = 0; s < 4; ++s) {
    if (visited_slots.count(s) || pl.slot_state[s] == 1) continue;
    if (pl.slot_state[s] == 0) continue;  // reachable from points, handled above
    auto [endn, pieces] = walk(slot_node(s), true);
    (void)endn;
    out.obj.closed.push_back(next_closed_id);
    out.closed_pieces.push_back(std::move(pieces));
    ++next_closed_id;
  }
  return out;
}

int sheet_of_piece(const Piece& pc, const UCircles& old_u, int square_base) {
  if (pc.kind == 0) return old_u.of_point.at(pc.arc.first);
  return square_base + pc.sm;
}

// transport an old entry through the gluing of smoothing i on both ends
Value transport_entry(const Obj& old_src, const Obj& old_tgt, const Value& v,
                      const Glued& gs, const Glued& gt) {
  UCircles old_u = union_circles(old_src, old_tgt);
  UCircles new_u = union_circles(gs.obj, gt.obj);
  const int square_base = (int)old_u.cs.size();

  SheetProblem p;
  p.nsheets = square_base + 2;
  p.dots.assign(p.nsheets, 0);
  for (const auto& gp : gs.glue_points)
    p.glue.push_back({sheet_of_piece(gp[0], old_u, square_base),
                      sheet_of_piece(gp[1], old_u, square_base)});

  p.circle_sheet.resize(new_u.cs.size());
  for (size_t i = 0; i < new_u.cs.size(); ++i) {
    const auto& circ = new_u.cs[i];
    const Piece* pc;
    if (circ.closed_side < 0) {
      const auto& [side, arc] = circ.arcs.front();
      pc = side == 0 ? &gs.arc_pieces.at(arc).front() : &gt.arc_pieces.at(arc).front();
    } else {
      pc = circ.closed_side == 0 ? &gs.closed_pieces[circ.closed_pos].front()
                                 : &gt.closed_pieces[circ.closed_pos].front();
    }
    p.circle_sheet[i] = sheet_of_piece(*pc, old_u, square_base);
  }

  Value out;
  for (const auto& t : v) {
    for (int i = 0; i < square_base; ++i) p.dots[i] = (t.dots >> i) & 1u;
    p.dots[square_base] = p.dots[square_base + 1] = 0;
    auto parts = evaluate_sheets(p);
    for (auto& [coef, mask] : parts) out.push_back({t.coeff * coef, mask});
  }
  canonicalize(out);
  return out;
}

// the saddle map between the two glued smoothings of one object
Value saddle_entry(const Obj& g, const Glued& g0, const Glued& g1, int sign) {
  UCircles new_u = union_circles(g0.obj, g1.obj);

  // one identity sheet per old arc, one saddle sheet for the crossing
  std::map<Pair, int> sheet_of_arc;
  int ns = 0;
  for (const auto& a : g.match) sheet_of_arc[a] = ns++;
  const int saddle = ns++;

  auto piece_sheet = [&](const Piece& pc) {
    return pc.kind == 0 ? sheet_of_arc.at(pc.arc) : saddle;
  };

  SheetProblem p;
  p.nsheets = ns;
  p.dots.assign(ns, 0);
  for (const auto& gp : g0.glue_points)
    p.glue.push_back({piece_sheet(gp[0]), piece_sheet(gp[1])});

  p.circle_sheet.resize(new_u.cs.size());
  for (size_t i = 0; i < new_u.cs.size(); ++i) {
    const auto& circ = new_u.cs[i];
    const Piece* pc;
    if (circ.closed_side < 0) {
      const auto& [side, arc] = circ.arcs.front();
      pc = side == 0 ? &g0.arc_pieces.at(arc).front() : &g1.arc_pieces.at(arc).front();
    } else {
      pc = circ.closed_side == 0 ? &g0.closed_pieces[circ.closed_pos].front()
                                 : &g1.closed_pieces[circ.closed_pos].front();
    }
    p.circle_sheet[i] = piece_sheet(*pc);
  }

  auto parts = evaluate_sheets(p);
  Value out;
  for (auto& [coef, mask] : parts) out.push_back({sign * coef, mask});
  canonicalize(out);
  return out;
}

// ---- delooping -----------------------------------------------------------

// index of the closed circle `pos` of `o` inside union_circles(x, o) / (o, x)
int closed_circle_index(const Obj& src, const Obj& tgt, int side, int pos) {
  int nmatch = (int)src.match.size();  // one circle per... not true in general
  (void)nmatch;
  UCircles u = union_circles(src, tgt);
  int idx = 0;
  for (const auto& c : u.cs) {
    if (c.closed_side == side && c.closed_pos == pos) return idx;
    ++idx;
  }
  throw std::logic_error("closed circle not found");
}

uint64_t drop_bit(uint64_t mask, int bit) {
  uint64_t low = mask & ((1ull << bit) - 1);
  uint64_t high = (mask >> (bit + 1)) << bit;
  return low | high;
}

void deloop_all(Cx& cx) {
  bool again = true;
  while (again) {
    again = false;
    for (int g = 0; g < (int)cx.objs.size(); ++g) {
      if (!cx.alive[g] || cx.objs[g].closed.empty()) continue;
      again = true;
      const int pos = 0;  // deloop the first closed circle

      Obj plus = cx.objs[g], minus = cx.objs[g];
      plus.closed.erase(plus.closed.begin());
      minus.closed.erase(minus.closed.begin());
      plus.q += 1;
      minus.q -= 1;
      int gp = cx.add(plus);
      int gm = cx.add(minus);

      // incoming a -> g: undotted part to plus, dotted to minus
      for (int a : std::vector<int>(cx.in[g].begin(), cx.in[g].end())) {
        int bit = closed_circle_index(cx.objs[a], cx.objs[g], 1, pos);
        Value vp, vm;
        for (const auto& t : cx.out[a].at(g)) {
          if ((t.dots >> bit) & 1u)
            vm.push_back({t.coeff, drop_bit(t.dots, bit)});
          else
            vp.push_back({t.coeff, drop_bit(t.dots, bit)});
        }
        canonicalize(vp);
        canonicalize(vm);
        cx.set_entry(a, gp, std::move(vp));
        cx.set_entry(a, gm, std::move(vm));
      }
      // outgoing g -> z: dotted part from plus, undotted from minus
      for (auto& [z, v] : std::map<int, Value>(cx.out[g])) {
        int bit = closed_circle_index(cx.objs[g], cx.objs[z], 0, pos);
        Value vp, vm;
        for (const auto& t : v) {
          if ((t.dots >> bit) & 1u)
            vp.push_back({t.coeff, drop_bit(t.dots, bit)});
          else
            vm.push_back({t.coeff, drop_bit(t.dots, bit)});
        }
        canonicalize(vp);
        canonicalize(vm);
        cx.set_entry(gp, z, std::move(vp));
        cx.set_entry(gm, z, std::move(vm));
      }
      cx.kill(g);
    }
  }
}

// ---- Gaussian elimination --------------------------------------------------

bool invertible_entry(const Value& v) {
  for (const auto& t : v)
    if (t.dots == 0) return t.coeff == 1 || t.coeff == -1;
  return false;
}

void eliminate_all(Cx& cx) {
  for (;;) {
    int bg = -1, bh = -1;
    long best = -1;
    bool best_strict = false;
    for (int g = 0; g < (int)cx.objs.size(); ++g) {
      if (!cx.alive[g]) continue;
      for (const auto& [h, v] : cx.out[g]) {
        if (cx.objs[g].match != cx.objs[h].match) continue;
        if (!invertible_entry(v)) continue;
        bool strict = v.size() == 1;
        long score = (long)(cx.out[g].size() - 1) * (long)(cx.in[h].size() - 1);
        if (bg < 0 || (strict && !best_strict) || (strict == best_strict && score < best)) {
          bg = g;
          bh = h;
          best = score;
          best_strict = strict;
        }
      }
    }
    if (bg < 0) return;

    Value e = cx.out[bg].at(bh);
    Value einv = invert(e, cx.objs[bg]);

    std::vector<int> ins(cx.in[bh].begin(), cx.in[bh].end());
    std::vector<std::pair<int, Value>> outs;
    for (const auto& [c, v] : cx.out[bg])
      if (c != bh) outs.push_back({c, v});

    for (int b : ins) {
      if (b == bg) continue;
      Value f = cx.out[b].at(bh);
      Value u = compose(cx.objs[b], cx.objs[bh], cx.objs[bg], f, einv);
      for (const auto& [c, gamma] : outs) {
        Value w = compose(cx.objs[b], cx.objs[bg], cx.objs[c], u, gamma);
        Value cur;
        auto it = cx.out[b].find(c);
        if (it != cx.out[b].end()) cur = it->second;
        value_sub(cur, w);
        cx.set_entry(b, c, std::move(cur));
      }
    }
    cx.kill(bg);
    cx.kill(bh);
  }
}

// ---- debug: d*d == 0 --------------------------------------------------------

void check_d2(const Cx& cx) {
  for (int a = 0; a < (int)cx.objs.size(); ++a) {
    if (!cx.alive[a]) continue;
    std::map<int, Value> acc;
    for (const auto& [b, f] : cx.out[a])
      for (const auto& [c, g] : cx.out[b]) {
        Value w = compose(cx.objs[a], cx.objs[b], cx.objs[c], f, g);
        Value& cur = acc[c];
        for (const auto& t : w) cur.push_back(t);
        canonicalize(cur);
      }
    for (const auto& [c, v] : acc)
      if (!v.empty()) throw std::logic_error("scan differential does not square to zero");
  }
}

}  // namespace

std::vector<int> scan_order(const Diagram& d) {
  const int n = d.crossing_count();
  std::vector<int> order;
  std::vector<char> used(n, 0);
  std::set<int> open;

  for (int step = 0; step < n; ++step) {
    int best = -1, best_delta = 0, best_open = 0;
    for (int k = 0; k < n; ++k) {
      if (used[k]) continue;
      const auto& q = d.crossings()[k];
      int consumed = 0, selfpairs = 0;
      for (int s = 0; s < 4; ++s) {
        for (int s2 = s + 1; s2 < 4; ++s2)
          if (q[s] == q[s2]) ++selfpairs;
        if (open.count(q[s])) ++consumed;
      }
      int opened = 4 - consumed - 2 * selfpairs;
      int delta = opened - consumed;
      int result = (int)open.size() + delta;
      if (best < 0 || delta < best_delta ||
          (delta == best_delta && result < best_open)) {
        best = k;
        best_delta = delta;
        best_open = result;
      }
    }
    order.push_back(best);
    used[best] = 1;
    const auto& q = d.crossings()[best];
    for (int s = 0; s < 4; ++s) {
      int a = q[s];
      bool self = false;
      for (int s2 = 0; s2 < 4; ++s2)
        if (s2 != s && q[s2] == a) self = true;
      if (self) continue;
      if (open.count(a))
        open.erase(a);
      else
        open.insert(a);
    }
  }
  return order;
}

GradedTable scan_khovanov(const Diagram& d, const CoefficientRing& ring,
                          const ScanOptions& opts) {
  const int npos = d.positive_crossings();
  const int nneg = d.negative_crossings();

  Cx cx;
  int next_closed_id = 0;
  Obj init;
  for (int l = 0; l < d.free_loops(); ++l) init.closed.push_back(next_closed_id++);
  cx.add(std::move(init));
  // free loops need no piece data: the initial object has no entries yet
  deloop_all(cx);

  std::set<int> frontier;
  std::vector<char> processed(d.crossing_count(), 0);
  auto order = scan_order(d);

  for (int k : order) {
    CrossingPlan pl = plan_crossing(d, k, frontier, processed);

    // glue every live object against both smoothings
    std::vector<std::array<Glued, 2>> glued(cx.objs.size());
    std::vector<std::array<int, 2>> newid(cx.objs.size(), {-1, -1});
    Cx nx;
    for (int g = 0; g < (int)cx.objs.size(); ++g) {
      if (!cx.alive[g]) continue;
      if (!cx.objs[g].closed.empty()) throw std::logic_error("undelooped object at gluing");
      for (int i = 0; i < 2; ++i) {
        glued[g][i] = glue_object(cx.objs[g], pl, i, next_closed_id);
        newid[g][i] = nx.add(glued[g][i].obj);
      }
    }
    // transported differentials and new saddles
    for (int g = 0; g < (int)cx.objs.size(); ++g) {
      if (!cx.alive[g]) continue;
      for (const auto& [h, v] : cx.out[g])
        for (int i = 0; i < 2; ++i) {
          Value tv = transport_entry(cx.objs[g], cx.objs[h], v, glued[g][i], glued[h][i]);
          nx.set_entry(newid[g][i], newid[h][i], std::move(tv));
        }
      int sign = cx.objs[g].h % 2 == 0 ? 1 : -1;
      Value sv = saddle_entry(cx.objs[g], glued[g][0], glued[g][1], sign);
      nx.set_entry(newid[g][0], newid[g][1], std::move(sv));
    }
    cx = std::move(nx);

    // frontier bookkeeping
    const auto& q = d.crossings()[k];
    for (int s = 0; s < 4; ++s) {
      int a = q[s];
      bool self = false;
      for (int s2 = 0; s2 < 4; ++s2)
        if (s2 != s && q[s2] == a) self = true;
      if (self) continue;
      if (frontier.count(a))
        frontier.erase(a);
      else
        frontier.insert(a);
    }
    processed[k] = 1;

    deloop_all(cx);
    if (opts.check_d_squared) check_d2(cx);
    eliminate_all(cx);
    if (opts.check_d_squared) check_d2(cx);
  }

  // assemble integer complexes per quantum grading
  std::map<int, std::map<int, std::vector<int>>> by_q_h;  // q -> h -> obj ids
  for (int g = 0; g < (int)cx.objs.size(); ++g) {
    if (!cx.alive[g]) continue;
    if (!cx.objs[g].match.empty() || !cx.objs[g].closed.empty())
      throw std::logic_error("open strands left after the scan");
    by_q_h[cx.objs[g].q][cx.objs[g].h].push_back(g);
  }

  std::vector<QBlock> blocks;
  for (auto& [q, hs] : by_q_h) {
    QBlock b;
    b.q = q + npos - 2 * nneg;
    int hmin = hs.begin()->first, hmax = hs.rbegin()->first;
    b.tmin = hmin - nneg;
    b.dims.assign(hmax - hmin + 1, 0);
    std::map<int, int> pos;
    for (auto& [h, ids] : hs) {
      b.dims[h - hmin] = (long)ids.size();
      for (int i = 0; i < (int)ids.size(); ++i) pos[ids[i]] = i;
    }
    b.diffs.assign(b.dims.size() > 0 ? b.dims.size() - 1 : 0, SparseIntMat{});
    for (size_t i = 0; i + 1 < b.dims.size(); ++i) {
      b.diffs[i].rows = (int)b.dims[i + 1];
      b.diffs[i].cols = (int)b.dims[i];
    }
    for (auto& [h, ids] : hs)
      for (int g : ids)
        for (const auto& [z, v] : cx.out[g]) {
          if (cx.objs[z].q != q) throw std::logic_error("scan entry broke the q grading");
          if (v.size() != 1 || v[0].dots != 0)
            throw std::logic_error("non-scalar entry in closed complex");
          int hi = h - hmin;
          if (hi + 1 >= (int)b.dims.size() || cx.objs[z].h != h + 1)
            throw std::logic_error("entry skips a homological degree");
          b.diffs[hi].add(pos.at(z), pos.at(g), v[0].coeff);
        }
    blocks.push_back(std::move(b));
  }

  return homology_of_blocks(std::move(blocks), ring, opts.threads);
}

GradedTable khovanov_auto(const Diagram& d, const CoefficientRing& ring, int threads,
                          int naive_threshold) {
  if (d.crossing_count() <= naive_threshold)
    return naive_khovanov(d, ring, threads, naive_threshold);
  ScanOptions opts;
  opts.threads = threads;
  return scan_khovanov(d, ring, opts);
}

}  // namespace kh
