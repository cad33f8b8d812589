// Timing comparison between the serial full-cube reference and the
// scanning engine, and between thread counts on the per-q homology
// kernels. Exact outputs are cross-checked while timing.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "kh/bracket.hpp"
#include "kh/cube.hpp"
#include "kh/scan.hpp"
#include "../tests/support/gen.hpp"
#include "../tests/support/oracles.hpp"

using kh::CoefficientRing;
using kh::Diagram;
using kh::GradedTable;

namespace {

double time_of(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Diagram two_strand_torus(int n) {
  std::vector<std::array<int, 4>> xs;
  int next = 1;
  int p = next++, q = next++, ip = p, iq = q;
  for (int j = 0; j < n; ++j) {
    int r = next++, s = next++;
    xs.push_back({q, s, r, p});
    p = r;
    q = s;
  }
  for (auto& x : xs)
    for (auto& a : x) {
      if (a == p) a = ip;
      if (a == q) a = iq;
    }
  return Diagram::from_parts(xs, 0);
}

}  // namespace

int main(int argc, char** argv) {
  int reps = argc > 1 ? std::atoi(argv[1]) : 1;
  int hw = omp_get_max_threads();
  std::printf("benchmark (reps=%d, hardware threads=%d)\n\n", reps, hw);

  std::printf("%-38s %10s %10s\n", "case", "naive[s]", "scan[s]");
  for (uint64_t seed : {11ull, 22ull, 33ull}) {
    Diagram d = khtest::corpus_diagram(seed, 12);
    GradedTable a, b;
    double tn = time_of([&] {
      for (int r = 0; r < reps; ++r) a = kh::naive_khovanov(d, CoefficientRing::integers(), 1);
    });
    double ts = time_of([&] {
      for (int r = 0; r < reps; ++r)
        b = kh::scan_khovanov(d, CoefficientRing::integers(), {});
    });
    std::printf("%-38s %10.3f %10.3f  %s\n",
                ("random Z, " + std::to_string(d.crossing_count()) + " crossings").c_str(),
                tn, ts, a == b ? "tables agree" : "MISMATCH");
  }

  {
    Diagram d = khtest::random_braid_closure(4, 18, 4242);
    double ts = time_of([&] { kh::scan_khovanov(d, CoefficientRing::rationals(), {}); });
    std::printf("%-38s %10s %10.3f\n", "random Q, 18 crossings (scan only)", "-", ts);
  }
  {
    Diagram d = two_strand_torus(40);
    double ts = time_of([&] { kh::scan_khovanov(d, CoefficientRing::integers(), {}); });
    std::printf("%-38s %10s %10.3f\n", "(2,40) torus Z (scan only)", "-", ts);
    double tb = time_of([&] { kh::kauffman_bracket(d); });
    std::printf("%-38s %10s %10.3f\n", "(2,40) torus bracket", "-", tb);
  }

  std::printf("\nper-q homology kernels, 1 thread vs %d threads\n", hw);
  {
    Diagram d = khtest::corpus_diagram(7, 12);
    auto cube = kh::build_cube(d);
    GradedTable t1, tn;
    double s1 = time_of([&] {
      for (int r = 0; r < reps; ++r) t1 = cube.homology(CoefficientRing::integers(), 1);
    });
    double sn = time_of([&] {
      for (int r = 0; r < reps; ++r) tn = cube.homology(CoefficientRing::integers(), hw);
    });
    std::printf("serial %.3fs, parallel %.3fs, speedup %.2fx, %s\n", s1, sn,
                sn > 0 ? s1 / sn : 0.0, t1 == tn ? "bit-identical" : "MISMATCH");
  }
  return 0;
}
