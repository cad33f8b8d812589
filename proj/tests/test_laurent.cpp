#include "doctest.h"
#include "kh/laurent.hpp"

using kh::LaurentPoly;

TEST_CASE("arithmetic basics") {
  LaurentPoly a = LaurentPoly::monomial(2, 2);    // 2q
  LaurentPoly b = LaurentPoly::monomial(-2, 2);   // -2q
  CHECK((a + b).is_zero());
  CHECK(a - b == LaurentPoly::monomial(4, 2));
  CHECK(a * b == LaurentPoly::monomial(-4, 4));
  CHECK((-a) == b);

  LaurentPoly h = LaurentPoly::monomial(1, 1);  // q^(1/2)
  CHECK(h * h == LaurentPoly::monomial(1, 2));
}

TEST_CASE("exact division") {
  LaurentPoly qdelta;
  qdelta.set_coeff(2, 1);
  qdelta.set_coeff(-2, 1);  // q + q^-1
  LaurentPoly prod = qdelta * qdelta;
  auto q = prod.divided_exact(qdelta);
  REQUIRE(q.has_value());
  CHECK(*q == qdelta);

  LaurentPoly odd = LaurentPoly::monomial(1, 0);
  CHECK_FALSE(odd.divided_exact(qdelta).has_value());
}

TEST_CASE("neg cube power matches (-A^3)^k") {
  CHECK(LaurentPoly::neg_cube_power(0) == LaurentPoly::one());
  CHECK(LaurentPoly::neg_cube_power(1) == LaurentPoly::monomial(-1, 6));
  CHECK(LaurentPoly::neg_cube_power(-2) == LaurentPoly::monomial(1, -12));
}

TEST_CASE("string and json round trip") {
  LaurentPoly p;
  p.set_coeff(-3, -1);  // -q^(-3/2)
  p.set_coeff(4, 7);
  CHECK(p.to_string("q") == "-1*q^(-3/2) + 7*q^2");
  LaurentPoly back = LaurentPoly::from_json(p.to_json("q"));
  CHECK(back == p);
  CHECK(LaurentPoly().to_string() == "0");
}

TEST_CASE("inverted variable") {
  LaurentPoly p;
  p.set_coeff(2, 3);
  p.set_coeff(-4, 1);
  LaurentPoly q = p.inverted_variable();
  CHECK(q.coeff(-2) == 3);
  CHECK(q.coeff(4) == 1);
}
