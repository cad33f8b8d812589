#include "doctest.h"
#include "kh/bracket.hpp"
#include "kh/tangle.hpp"
#include "support/gen.hpp"
#include "support/mutant.hpp"
#include "support/oracles.hpp"

using kh::Diagram;
using kh::Tangle;

TEST_CASE("crossingless radial rotor is symmetric") {
  for (int order : {3, 4, 5}) {
    std::vector<int> boundary(2 * order);
    for (int i = 0; i < order; ++i) {
      boundary[2 * i] = i + 1;
      boundary[2 * i + 1] = i + 1;
    }
    Tangle t = Tangle::from_parts({}, boundary, 0);
    auto w = kh::check_rotational_symmetry(t, order);
    CHECK(w.symmetric);
  }
}

TEST_CASE("generated rotors are symmetric, a broken sector is not") {
  for (int order : {3, 4, 5})
    for (uint64_t seed = 1; seed <= 6; ++seed) {
      Tangle t = kh::random_rotor(order, seed * 13 + order);
      auto w = kh::check_rotational_symmetry(t, order);
      CHECK(w.symmetric);
      CHECK_NOTHROW(kh::make_rotor(t, order));

      // add a kink on one boundary arc: symmetry breaks
      if (t.crossing_count() == 0) continue;
      auto xs = t.crossings();
      auto b = t.boundary();
      int arc = b[0];
      int n1 = 500, n2 = 501;
      // replace the boundary end of `arc` by a kinked continuation
      b[0] = n1;
      xs.push_back({arc, n2, n2, n1});
      Tangle broken = Tangle::from_parts(xs, b, t.free_loops());
      auto wb = kh::check_rotational_symmetry(broken, order);
      CHECK_FALSE(wb.symmetric);
    }
}

TEST_CASE("boundary count is checked") {
  Tangle t = Tangle::from_parts({}, {1, 1, 2, 2}, 0);
  CHECK_THROWS_AS(kh::check_rotational_symmetry(t, 3), kh::TangleError);
  CHECK_THROWS_AS(kh::check_rotational_symmetry(t, 2), kh::TangleError);
}

TEST_CASE("pi rotation is an involution") {
  for (int order : {3, 4})
    for (uint64_t seed = 2; seed <= 5; ++seed) {
      Tangle t = kh::random_rotor(order, seed);
      for (int axis : {0, 1, 3}) {
        Tangle twice = kh::rotate_pi(kh::rotate_pi(t, axis), axis);
        CHECK(twice.canonical() == t.canonical());
      }
    }
  // a crossingless rotor is fixed by any sector-respecting flip
  Tangle radial = Tangle::from_parts({}, {1, 1, 2, 2, 3, 3}, 0);
  CHECK(kh::rotate_pi(radial, 1).canonical() == radial.canonical());
  CHECK(kh::rotate_pi(radial, 3).canonical() == radial.canonical());
}

TEST_CASE("flip axes differ by in-plane rotation") {
  Tangle t = kh::random_rotor(4, 99);
  CHECK(kh::rotate_in_plane(kh::rotate_pi(t, 1), 2) == kh::rotate_pi(t, 3));
  CHECK(kh::rotate_in_plane(kh::rotate_pi(t, 0), 2) == kh::rotate_pi(t, 2));
}

TEST_CASE("only sector-respecting flips preserve the bracket in general") {
  // petal rotor: sectors pair boundary points (2i, 2i+1); the flip through
  // a marked point reconnects the petals and changes the unlink size
  Tangle petals = Tangle::from_parts({}, {1, 1, 2, 2, 3, 3, 4, 4, 5, 5}, 0);
  Tangle stator = Tangle::from_parts({}, {1, 2, 3, 3, 2, 4, 4, 5, 5, 1}, 0);
  Diagram base = kh::compose_tangles(stator, petals).diagram;
  Diagram odd = kh::compose_tangles(stator, kh::rotate_pi(petals, 1)).diagram;
  CHECK(kh::kauffman_bracket(odd) == kh::kauffman_bracket(base));
  Diagram even = kh::compose_tangles(stator, kh::rotate_pi(petals, 0)).diagram;
  CHECK(even.free_loops() + even.component_count() !=
        base.free_loops() + base.component_count());
}

TEST_CASE("compose with a crossingless rotor gives an unlink") {
  Tangle rotor = Tangle::from_parts({}, {1, 1, 2, 2, 3, 3, 4, 4}, 0);
  Tangle stator = kh::random_stator(8, 7);
  auto res = kh::compose_tangles(stator, rotor);
  CHECK(res.diagram.crossing_count() == 0);
  CHECK(res.diagram.free_loops() >= 1);
  CHECK(kh::kauffman_bracket(res.diagram) ==
        khtest::oracle_bracket(res.diagram));
}

TEST_CASE("writhe match") {
  Diagram t = khtest::left_trefoil();
  auto self_match = kh::writhe_match_check(t, t);
  CHECK(self_match.matched);
  CHECK(self_match.writhe == -3);

  // a single-component kinked copy: no orientation freedom moves the writhe
  auto kinked = Diagram::from_pd_code(
      "PD[X[1,4,2,5],X[7,6,4,1],X[5,2,6,3],X[3,8,8,7]]");
  REQUIRE(kinked.component_count() == 1);
  CHECK(std::abs(kinked.writhe() - t.writhe()) == 1);
  auto m = kh::writhe_match_check(t, kinked);
  CHECK_FALSE(m.matched);
}

TEST_CASE("rotant pairs share the bracket and Jones polynomial") {
  int tested = 0;
  for (int order : {3, 4, 5})
    for (uint64_t seed = 1; seed <= 4; ++seed) {
      Tangle rotor = kh::random_rotor(order, seed * 7 + order);
      Tangle stator = kh::random_stator(2 * order, seed * 11 + 1);
      Diagram a = kh::compose_tangles(stator, rotor).diagram;
      Diagram b = kh::compose_tangles(stator, kh::rotate_pi(rotor, 1)).diagram;
      auto match = kh::writhe_match_check(a, b);
      if (!match.matched) continue;
      Diagram ao = a.with_orientation(match.orient_a);
      Diagram bo = b.with_orientation(match.orient_b);
      CHECK(kh::unnormalized_jones(ao) == kh::unnormalized_jones(bo));
      ++tested;
    }
  CHECK(tested >= 6);
}

TEST_CASE("mutant pair construction is sound") {
  auto [a, b] = khtest::mutant_pair();
  CHECK(a.crossing_count() == 11);
  CHECK(b.crossing_count() == 11);
  CHECK(a.component_count() == 1);
  CHECK(b.component_count() == 1);
  CHECK_FALSE(a.canonical() == b.canonical());
  // mutation preserves the Jones polynomial
  auto ma = kh::writhe_match_check(a, b);
  REQUIRE(ma.matched);
  CHECK(kh::unnormalized_jones(a.with_orientation(ma.orient_a)) ==
        kh::unnormalized_jones(b.with_orientation(ma.orient_b)));
}
