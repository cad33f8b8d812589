// Acceptance suite: one pass/fail line per criterion, zero tolerance on
// every exact check. Criterion 9 needs transcribed figure fixtures and is
// reported but never gates the run.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "kh/bracket.hpp"
#include "kh/cube.hpp"
#include "kh/family.hpp"
#include "kh/scan.hpp"
#include "kh/table.hpp"
#include "kh/tangle.hpp"
#include "support/gen.hpp"
#include "support/mutant.hpp"
#include "support/oracles.hpp"
#include "support/paper_tables.hpp"

using kh::CoefficientRing;
using kh::Diagram;
using kh::GradedTable;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& what,
            const std::string& note = "") {
  std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), note.empty() ? "" : " -- ", note.c_str());
  if (!pass) ++failures;
}

void report_skip(int criterion, const std::string& what, const std::string& why) {
  std::printf("[SKIP] criterion %2d: %s -- %s\n", criterion, what.c_str(), why.c_str());
}

std::vector<Diagram> build_corpus() {
  std::vector<Diagram> corpus;
  corpus.push_back(khtest::unknot());
  corpus.push_back(Diagram::from_pd_code("PD[loops=2]"));
  corpus.push_back(khtest::negative_kink());
  corpus.push_back(khtest::left_trefoil());
  corpus.push_back(khtest::left_trefoil().mirrored());
  corpus.push_back(khtest::positive_hopf());
  // figure-eight knot
  corpus.push_back(
      Diagram::from_pd_code("PD[X[4,2,5,1],X[8,6,1,5],X[6,3,7,4],X[2,7,3,8]]"));
  for (uint64_t seed = 1; corpus.size() < 104; ++seed)
    corpus.push_back(khtest::corpus_diagram(seed, 12));
  return corpus;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  auto corpus = build_corpus();
  std::printf("corpus: %zu diagrams (max 12 crossings)\n", corpus.size());

  // 1. Euler characteristic oracle
  {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::vector<GradedTable> q_tables;
    for (const auto& d : corpus) {
      GradedTable t = kh::naive_khovanov(d, CoefficientRing::rationals(), 4);
      q_tables.push_back(t);
      if (!(khtest::euler_characteristic(t) == kh::unnormalized_jones(d))) ok = false;
    }
    double dt = seconds_since(t0);
    report(1, ok && dt < 300.0,
           "graded Euler characteristic equals the unnormalized Jones polynomial",
           std::to_string(corpus.size()) + " diagrams in " + std::to_string(dt) + "s");
  }

  // 2. Engine equivalence including integral torsion
  std::vector<GradedTable> z_tables;
  {
    bool ok = true;
    for (const auto& d : corpus) {
      GradedTable naive = kh::naive_khovanov(d, CoefficientRing::integers(), 4);
      kh::ScanOptions opts;
      opts.threads = 4;
      GradedTable scan = kh::scan_khovanov(d, CoefficientRing::integers(), opts);
      z_tables.push_back(naive);
      if (!(naive == scan)) ok = false;
    }
    report(2, ok, "naive and scanning engines produce identical tables over Z");
  }

  // 3. Unknot normalization over every ring
  {
    bool ok = true;
    for (auto ring : {CoefficientRing::rationals(), CoefficientRing::integers(),
                      CoefficientRing::field(2), CoefficientRing::field(3),
                      CoefficientRing::field(5), CoefficientRing::field(7)}) {
      GradedTable t = kh::naive_khovanov(khtest::unknot(), ring);
      if (!(t.rank(0, 1) == 1 && t.rank(0, -1) == 1 && t.total_rank() == 2 &&
            t.cells().size() == 2))
        ok = false;
    }
    report(3, ok, "unknot homology is rank 1 at (0,-1) and (0,1) over every ring");
  }

  // 4. Orientation shift law
  {
    bool ok = true;
    int done = 0;
    for (uint64_t seed = 500; done < 50; ++seed) {
      Diagram d = khtest::corpus_diagram(seed, 10);
      std::mt19937_64 rng(seed * 3 + 1);
      std::vector<int> comps;
      for (int c = 0; c < d.component_count(); ++c)
        if (rng() % 2) comps.push_back(c);
      Diagram r = d.with_components_reversed(comps);
      int k = r.negative_crossings() - d.negative_crossings();
      GradedTable td = kh::naive_khovanov(d, CoefficientRing::rationals(), 4);
      GradedTable tr = kh::naive_khovanov(r, CoefficientRing::rationals(), 4);
      if (!(td.shifted(-k, -3 * k) == tr)) ok = false;
      ++done;
    }
    report(4, ok, "tables match under the (-k,-3k) shift for 50 reorientations");
  }

  // 5. Long exact sequence consistency
  {
    bool ok = true;
    int done = 0;
    for (uint64_t seed = 900; done < 50; ++seed) {
      Diagram d = khtest::corpus_diagram(seed, 10);
      auto signs = d.crossing_signs();
      int neg = -1;
      std::mt19937_64 rng(seed);
      std::vector<int> negs;
      for (int c = 0; c < d.crossing_count(); ++c)
        if (signs[c] == -1) negs.push_back(c);
      if (negs.empty()) continue;
      neg = negs[rng() % negs.size()];
      auto rep = kh::les_check(d, neg, CoefficientRing::rationals(), 4);
      if (!rep.ok) ok = false;
      ++done;
    }
    report(5, ok, "les_check passes on 50 random negative crossings");
  }

  // 6. Rotant Jones equality for orders 3, 4, 5
  {
    bool ok = true;
    int pairs = 0;
    for (int order : {3, 4, 5})
      for (uint64_t seed = 1; seed <= 12 && pairs < 24; ++seed) {
        kh::Tangle rotor = kh::random_rotor(order, seed * 31 + order);
        kh::Tangle stator = kh::random_stator(2 * order, seed * 17 + 5);
        // flip about a sector-respecting axis; with sectors pairing the
        // boundary points (2i, 2i+1) these are the odd ones
        int axis = 2 * (int)(seed % (uint64_t)order) + 1;
        Diagram a = kh::compose_tangles(stator, rotor).diagram;
        Diagram b = kh::compose_tangles(stator, kh::rotate_pi(rotor, axis)).diagram;
        auto match = kh::writhe_match_check(a, b);
        if (!match.matched) continue;
        Diagram ao = a.with_orientation(match.orient_a);
        Diagram bo = b.with_orientation(match.orient_b);
        if (!(kh::unnormalized_jones(ao) == kh::unnormalized_jones(bo))) ok = false;
        ++pairs;
      }
    report(6, ok && pairs >= 20, "writhe-matched rotant pairs share the Jones polynomial",
           std::to_string(pairs) + " pairs");
  }

  // 7. Grading arithmetic
  {
    bool ok = kh::grading_params(0).q_grading == -76 && kh::grading_params(0).c == 7 &&
              kh::grading_params(1).c == -9;
    for (int n = 0; n <= 100; ++n) {
      auto p = kh::grading_params(n);
      long qn1 = kh::q_of(n + 1);
      if (p.q_grading + 3 * p.c + 1 != qn1) ok = false;
      long line = qn1 + 1;
      if (n % 2 == 0 && line != -2L * n - 53) ok = false;
      if (n % 2 == 1 && line != -2L * n - 77) ok = false;
    }
    report(7, ok, "Q(0) = -76, c by parity, Q(n)+3c+1 = Q(n+1) for n <= 100");
  }

  // 8. Universal coefficients cross-check on the corpus
  {
    bool ok = true;
    for (size_t i = 0; i < corpus.size(); ++i) {
      const GradedTable& z = z_tables[i];
      GradedTable f2 = kh::naive_khovanov(corpus[i], CoefficientRing::field(2), 4);
      auto count2 = [&](int t, int q) {
        const auto* c = z.cell(t, q);
        if (!c) return 0L;
        long n = 0;
        for (const auto& v : c->torsion)
          if (v % 2 == 0) ++n;
        return n;
      };
      std::set<std::pair<int, int>> keys;
      for (const auto& [tq, c] : z.cells()) keys.insert(tq);
      for (const auto& [tq, c] : f2.cells()) keys.insert(tq);
      for (const auto& [t, q] : keys)
        if (f2.rank(t, q) != z.rank(t, q) + count2(t, q) + count2(t + 1, q)) ok = false;
    }
    report(8, ok, "dim F2 = rank Z + #2-torsion(here) + #2-torsion(next t), cell-wise");
  }

  // 9. Conditional reproduction of the reference tables
  {
    const char* path = "fixtures/paper_rotants.json";
    if (!std::filesystem::exists(path)) {
      report_skip(9, "reference table reproduction",
                  "no transcribed figure fixture at fixtures/paper_rotants.json; "
                  "expected tables are embedded and ready");
    } else {
      bool ok = true;
      std::string note;
      try {
        kh::FixtureBundle fx = kh::FixtureBundle::load(path);
        auto f2pair = kh::family(fx, 0);  // L_0 = L(-20)
        kh::TwistResult l2 = kh::build_parametrized(fx, 2, false);
        kh::TwistResult l2r = kh::build_parametrized(fx, 2, true);
        kh::ScanOptions opts;
        opts.threads = 4;
        GradedTable kl2 = kh::scan_khovanov(l2.diagram, CoefficientRing::rationals(), opts);
        GradedTable kl2r =
            kh::scan_khovanov(l2r.diagram, CoefficientRing::rationals(), opts);
        ok = ok && kl2 == khtest::table_from(khtest::l2_cells());
        ok = ok && kl2r == khtest::table_from(khtest::l2r_cells());
        auto lim0 = kh::one_resolution_limit(kh::family(fx, 1).link);
        GradedTable k0inf =
            kh::scan_khovanov(lim0.diagram, CoefficientRing::rationals(), opts);
        ok = ok && k0inf == khtest::table_from(khtest::l0inf_cells());
        ok = ok && k0inf.support_min_q() == -53;
        auto diff = kh::compare_tables(kl2, kl2r);
        ok = ok && diff.first_difference && diff.first_difference->t == -15 &&
             diff.first_difference->q == -42 && diff.a_dominates;
        ok = ok && kh::unnormalized_jones(l2.diagram) ==
                       kh::unnormalized_jones(l2r.diagram);
        GradedTable zl0 =
            kh::scan_khovanov(f2pair.link.diagram, CoefficientRing::integers(), opts);
        for (const auto& cell : khtest::l0_col76_z()) {
          const auto* c = zl0.cell(cell.t, -76);
          long two = 0;
          if (c)
            for (const auto& v : c->torsion)
              if (v == 2) ++two;
          ok = ok && c && c->rank == cell.rank && two == cell.two_torsion;
        }
      } catch (const std::exception& e) {
        ok = false;
        note = e.what();
      }
      report(9, ok, "reference tables reproduced from the transcribed fixture", note);
    }
  }

  // 10. Mutation spot check over F2
  {
    auto [a, b] = khtest::mutant_pair();
    kh::ScanOptions opts;
    opts.threads = 4;
    GradedTable ka = kh::naive_khovanov(a, CoefficientRing::field(2), 4);
    GradedTable kb = kh::naive_khovanov(b, CoefficientRing::field(2), 4);
    bool ok = a.crossing_count() == 11 && b.crossing_count() == 11 &&
              a.component_count() == 1 && !(a.canonical() == b.canonical()) && ka == kb;
    report(10, ok, "11-crossing Conway-mutant pair has identical homology over F2");
  }

  if (failures == 0) {
    std::printf("all criteria passed (criterion 9 runs only with a transcribed fixture)\n");
    return 0;
  }
  std::printf("%d criterion(s) failed\n", failures);
  return 1;
}
