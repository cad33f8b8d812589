#include "kh/family.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "kh/scan.hpp"

namespace kh {

long q_of(int n) {
  if (n < 0) throw std::invalid_argument("family index must be nonnegative");
  long up = (n + 1) / 2;
  long down = n / 2;
  return -76 + 22 * up - 26 * down;
}

FamilyParams grading_params(int n) {
  FamilyParams p;
  p.n = n;
  p.parity = n % 2;
  p.q_grading = q_of(n);
  p.c = (n % 2 == 0) ? 7 : -9;
  if (p.q_grading + 3 * p.c + 1 != q_of(n + 1))
    throw std::logic_error("grading identity violated");
  return p;
}

namespace {

std::map<int, std::vector<int>> occurrences_of(const Diagram& d) {
  std::map<int, std::vector<int>> occ;
  for (int c = 0; c < d.crossing_count(); ++c)
    for (int s = 0; s < 4; ++s) occ[d.crossings()[c][s]].push_back(4 * c + s);
  return occ;
}

int head_packed(const Diagram& d, const std::map<int, std::vector<int>>& occ, int label) {
  int idx = d.arc_index(label);
  const auto& os = occ.at(label);
  return os[d.arc_head_is_second(idx) ? 1 : 0];
}

}  // namespace

TwistResult insert_twists(const Diagram& d, const TwistSite& site, int n) {
  TwistResult res;
  res.meta.site = site;
  res.meta.handedness = (n > 0) - (n < 0);
  if (n == 0) {
    res.diagram = d;
    return res;
  }
  if (site.arc_a == site.arc_b)
    throw DiagramError("twist site must name two distinct arcs");
  d.arc_index(site.arc_a);
  d.arc_index(site.arc_b);

  auto old_occ = occurrences_of(d);
  const int m = n > 0 ? n : -n;
  int next = 0;
  for (int a : d.arc_labels()) next = std::max(next, a);
  ++next;

  std::vector<int> l(m + 1), r(m + 1);
  l[0] = site.arc_a;
  r[0] = site.arc_b;
  for (int j = 1; j <= m; ++j) {
    l[j] = next++;
    r[j] = next++;
  }

  auto xs = d.crossings();
  const int old_ncross = (int)xs.size();
  // reconnect the far ends of the twisted arcs to the last ladder segment
  auto relink = [&](int label, int replacement) {
    const auto& os = old_occ.at(label);
    int packed = os[1];
    xs[packed / 4][packed % 4] = replacement;
  };
  relink(site.arc_a, l[m]);
  relink(site.arc_b, r[m]);

  // negative counts insert rungs whose 0-resolution removes one rung and
  // whose 1-resolution caps the ladder; positive counts give the mirror
  for (int j = 0; j < m; ++j) {
    if (n > 0)
      xs.push_back({l[j], r[j], r[j + 1], l[j + 1]});
    else
      xs.push_back({r[j], r[j + 1], l[j + 1], l[j]});
    res.meta.crossing_indices.push_back(old_ncross + j);
  }

  Diagram nd = Diagram::from_parts(xs, d.free_loops());

  // inherit orientations: vote per component using arcs whose occurrence
  // positions survived; the twisted arcs vote through their near end
  auto new_occ = occurrences_of(nd);
  std::vector<int> agree(nd.component_count(), 0), total(nd.component_count(), 0);
  for (int label : d.arc_labels()) {
    bool is_site = label == site.arc_a || label == site.arc_b;
    int comp = nd.component_of_arc(label);
    int old_head = head_packed(d, old_occ, label);
    int new_head = head_packed(nd, new_occ, label);
    if (is_site) {
      // compare the role of the surviving near end only
      int near = old_occ.at(label)[0];
      bool role_old = old_head == near;
      bool role_new = new_head == near;
      ++total[comp];
      if (role_old == role_new) ++agree[comp];
    } else {
      ++total[comp];
      if (old_head == new_head) ++agree[comp];
    }
  }
  std::vector<int> flags(nd.component_count(), 0);
  for (int c = 0; c < nd.component_count(); ++c)
    if (2 * agree[c] < total[c]) flags[c] = 1;
  res.diagram = nd.with_orientation(flags);
  return res;
}

// ---- fixtures ---------------------------------------------------------------

FixtureBundle FixtureBundle::from_json(const nlohmann::ordered_json& j) {
  FixtureBundle fx;
  fx.stator = Tangle::from_json(j.at("stator"));
  fx.rotor = Tangle::from_json(j.at("rotor"));
  fx.twist_site.arc_a = j.at("twist_site").at(0).get<int>();
  fx.twist_site.arc_b = j.at("twist_site").at(1).get<int>();
  if (j.contains("orientation_rules")) {
    fx.orient_even = j["orientation_rules"].value("even", std::vector<int>{});
    fx.orient_odd = j["orientation_rules"].value("odd", std::vector<int>{});
  }
  fx.rotate_axis = j.value("rotate_axis", 0);
  return fx;
}

nlohmann::ordered_json FixtureBundle::to_json() const {
  nlohmann::ordered_json j;
  j["stator"] = stator.to_json();
  j["rotor"] = rotor.to_json();
  j["twist_site"] = {twist_site.arc_a, twist_site.arc_b};
  j["orientation_rules"] = {{"even", orient_even}, {"odd", orient_odd}};
  j["rotate_axis"] = rotate_axis;
  return j;
}

FixtureBundle FixtureBundle::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open fixture file " + path);
  nlohmann::ordered_json j;
  in >> j;
  return from_json(j);
}

void FixtureBundle::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write fixture file " + path);
  out << to_json().dump(2) << "\n";
}

TwistResult build_parametrized(const FixtureBundle& fx, int twists, bool flipped) {
  Tangle rotor = flipped ? rotate_pi(fx.rotor, fx.rotate_axis) : fx.rotor;
  ComposeResult comp = compose_tangles(fx.stator, rotor);
  TwistSite site{comp.stator_arcs.at(fx.twist_site.arc_a),
                 comp.stator_arcs.at(fx.twist_site.arc_b)};
  TwistResult tw = insert_twists(comp.diagram, site, twists);
  const auto& rules = (twists % 2 == 0) ? fx.orient_even : fx.orient_odd;
  if (!rules.empty()) {
    if ((int)rules.size() != tw.diagram.component_count())
      throw DiagramError("fixture orientation rule size does not match components");
    tw.diagram = tw.diagram.with_orientation(rules);
  }
  return tw;
}

FamilyPair family(const FixtureBundle& fx, int n) {
  if (n < 0) throw std::invalid_argument("family index must be nonnegative");
  FamilyPair fp;
  fp.n = n;
  fp.twists = -20 - n;
  fp.link = build_parametrized(fx, fp.twists, false);
  fp.rotated = build_parametrized(fx, fp.twists, true);
  return fp;
}

OneResolutionResult one_resolution_limit(const TwistResult& d) {
  if (d.meta.crossing_indices.empty())
    throw DiagramError("diagram carries no parametrized twists");
  int lowest = d.meta.crossing_indices.front();
  auto signs = d.diagram.crossing_signs();
  OneResolutionResult res;
  res.lowest_was_negative = signs[lowest] == -1;
  if (!res.lowest_was_negative)
    throw DiagramError("lowest parametrized crossing is not negative");
  auto r = d.diagram.resolved({lowest, 1});
  auto reduced = r.diagram.r1_reduced();
  res.diagram = reduced.diagram;
  res.kinks_removed = reduced.kinks_removed;
  return res;
}

// ---- long exact sequence -----------------------------------------------------

LesReport les_verify_tables(const GradedTable& kd, const GradedTable& k0,
                            const GradedTable& k1, int c) {
  LesReport rep;
  rep.c = c;
  std::ostringstream detail;

  // (i) dim Kh^t_q(D) <= dim Kh^t_{q+1}(D1) + dim Kh^{t-c}_{q-3c-1}(D0)
  rep.subadditivity_ok = true;
  for (const auto& [tq, cell] : kd.cells()) {
    auto [t, q] = tq;
    long bound = k1.rank(t, q + 1) + k0.rank(t - c, q - 3 * c - 1);
    if (cell.rank > bound) {
      rep.subadditivity_ok = false;
      detail << "subadditivity fails at (t,q)=(" << t << "," << q << "): " << cell.rank
             << " > " << bound << "; ";
      break;
    }
  }

  // (ii) per q: sum_t (-1)^t [dim1(t,q+1) - dim(t,q) + dim0(t-c,q-3c-1)] = 0
  std::set<int> qs;
  for (const auto& [tq, cell] : kd.cells()) qs.insert(tq.second);
  for (const auto& [tq, cell] : k1.cells()) qs.insert(tq.second - 1);
  for (const auto& [tq, cell] : k0.cells()) qs.insert(tq.second + 3 * c + 1);
  rep.euler_ok = true;
  for (int q : qs) {
    long sum = 0;
    std::set<int> ts;
    for (const auto& [tq, cell] : kd.cells())
      if (tq.second == q) ts.insert(tq.first);
    for (const auto& [tq, cell] : k1.cells())
      if (tq.second == q + 1) ts.insert(tq.first);
    for (const auto& [tq, cell] : k0.cells())
      if (tq.second == q - 3 * c - 1) ts.insert(tq.first + c);
    for (int t : ts) {
      long v = k1.rank(t, q + 1) - kd.rank(t, q) + k0.rank(t - c, q - 3 * c - 1);
      sum += (t % 2 == 0) ? v : -v;
    }
    if (sum != 0) {
      rep.euler_ok = false;
      detail << "euler identity fails at q=" << q << " (sum " << sum << "); ";
      break;
    }
  }

  // (iii) vanishing D1 columns force Kh^t_q(D) = Kh^{t-c}_{q-3c-1}(D0)
  rep.forced_iso_ok = true;
  std::set<std::pair<int, int>> sites;
  for (const auto& [tq, cell] : kd.cells()) sites.insert(tq);
  for (const auto& [tq, cell] : k0.cells()) sites.insert({tq.first + c, tq.second + 3 * c + 1});
  for (const auto& [t, q] : sites) {
    if (k1.rank(t, q + 1) != 0 || k1.rank(t + 1, q + 1) != 0) continue;
    if (kd.rank(t, q) != k0.rank(t - c, q - 3 * c - 1)) {
      rep.forced_iso_ok = false;
      detail << "forced isomorphism fails at (t,q)=(" << t << "," << q
             << "): " << kd.rank(t, q) << " vs " << k0.rank(t - c, q - 3 * c - 1) << "; ";
      break;
    }
  }

  rep.ok = rep.subadditivity_ok && rep.euler_ok && rep.forced_iso_ok;
  rep.detail = detail.str();
  return rep;
}

LesReport les_check(const Diagram& d, int crossing, const CoefficientRing& ring,
                    int threads) {
  if (!ring.is_field())
    throw std::invalid_argument("les_check needs a field");
  if (crossing < 0 || crossing >= d.crossing_count())
    throw DiagramError("crossing index out of range");
  auto signs = d.crossing_signs();
  if (signs[crossing] != -1)
    throw DiagramError("the long exact sequence is stated for negative crossings");

  auto r1 = d.resolved({crossing, 1});
  auto r0 = d.resolved({crossing, 0});
  int c = r0.diagram.negative_crossings() - d.negative_crossings();

  GradedTable kd = khovanov_auto(d, ring, threads);
  GradedTable k0 = khovanov_auto(r0.diagram, ring, threads);
  GradedTable k1 = khovanov_auto(r1.diagram, ring, threads);

  LesReport rep = les_verify_tables(kd, k0, k1, c);
  rep.d0_orientation = r0.diagram.reversed_flags();
  return rep;
}

// ---- iterated family check ---------------------------------------------------

ChainCheckReport proposition_chain_check_arithmetic(int n_max) {
  ChainCheckReport rep;
  for (int n = 0; n < n_max; ++n) {
    ChainCheckEntry e;
    e.n = n;
    FamilyParams p = grading_params(n);
    long qn1 = q_of(n + 1);
    long expected_line = (n % 2 == 0) ? (-2L * n - 53) : (-2L * n - 77);
    e.q_line = qn1 + 1;
    e.arithmetic_ok =
        (p.q_grading + 3 * p.c + 1 == qn1) && (qn1 + 1 == expected_line) &&
        (p.c == (n % 2 == 0 ? 7 : -9));
    if (!e.arithmetic_ok) rep.arithmetic_all_ok = false;
    rep.entries.push_back(e);
  }
  return rep;
}

ChainCheckReport proposition_chain_check(const FixtureBundle& fx, int n_max,
                                         const CoefficientRing& ring, int crossing_cap,
                                         int threads) {
  ChainCheckReport rep = proposition_chain_check_arithmetic(n_max);
  for (auto& e : rep.entries) {
    int n = e.n;
    FamilyPair fn = family(fx, n);
    FamilyPair fn1 = family(fx, n + 1);
    if (fn1.link.diagram.crossing_count() > crossing_cap) continue;

    GradedTable kn = khovanov_auto(fn.link.diagram, ring, threads);
    GradedTable kn1 = khovanov_auto(fn1.link.diagram, ring, threads);
    FamilyParams p = grading_params(n);

    bool dim_ok = true;
    std::set<int> ts;
    for (const auto& [tq, cell] : kn.cells())
      if (tq.second == (int)p.q_grading) ts.insert(tq.first);
    for (const auto& [tq, cell] : kn1.cells())
      if (tq.second == (int)q_of(n + 1)) ts.insert(tq.first - p.c);
    for (int t : ts)
      if (kn1.rank(t + p.c, (int)q_of(n + 1)) != kn.rank(t, (int)p.q_grading)) {
        dim_ok = false;
        break;
      }
    e.dimension_ok = dim_ok;

    auto limit = one_resolution_limit(fn1.link);
    GradedTable klim = khovanov_auto(limit.diagram, ring, threads);
    bool vanish = true;
    int smin = 0;
    bool have = !klim.cells().empty();
    if (have) smin = klim.support_min_q();
    for (const auto& [tq, cell] : klim.cells())
      if (tq.second == (int)e.q_line) vanish = false;
    if (have) e.support_min = smin;
    e.support_ok = vanish;
  }
  return rep;
}

std::string ChainCheckReport::to_string() const {
  std::ostringstream os;
  for (const auto& e : entries) {
    os << "n=" << e.n << ": arithmetic " << (e.arithmetic_ok ? "ok" : "FAIL");
    os << ", q-line " << e.q_line;
    if (e.support_min) os << ", support min " << *e.support_min;
    if (e.support_ok) os << ", support " << (*e.support_ok ? "ok" : "FAIL");
    if (e.dimension_ok) os << ", dimensions " << (*e.dimension_ok ? "ok" : "FAIL");
    os << "\n";
  }
  return os.str();
}

}  // namespace kh
