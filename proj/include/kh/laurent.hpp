#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

#include "json.hpp"

namespace kh {

// Laurent polynomial in one formal variable with exact integer coefficients.
// Exponents are kept in half-units: the key k stands for the exponent k/2.
// Integer-exponent polynomials simply use even keys, so bracket polynomials
// (variable A) and Jones polynomials (variable q or q^(1/2)) share one type.
class LaurentPoly {
 public:
  LaurentPoly() = default;

  static LaurentPoly zero() { return LaurentPoly(); }
  static LaurentPoly one() { return monomial(1, 0); }
  static LaurentPoly monomial(mpz_class coeff, int half_exp);

  bool is_zero() const { return terms_.empty(); }
  const std::map<int, mpz_class>& terms() const { return terms_; }

  // half-unit exponent bounds; only valid on nonzero polynomials
  int min_half_exp() const { return terms_.begin()->first; }
  int max_half_exp() const { return terms_.rbegin()->first; }

  mpz_class coeff(int half_exp) const;
  void set_coeff(int half_exp, mpz_class c);

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly operator-() const;
  bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
  bool operator!=(const LaurentPoly& o) const { return terms_ != o.terms_; }

  // multiply by coeff * x^(half_exp/2)
  LaurentPoly scaled(const mpz_class& coeff, int half_exp = 0) const;
  // substitute x -> x^{-1}
  LaurentPoly inverted_variable() const;

  // exact division; nullopt if the remainder is nonzero
  std::optional<LaurentPoly> divided_exact(const LaurentPoly& divisor) const;

  // (-x^3)^k in half-units, handy for writhe normalization
  static LaurentPoly neg_cube_power(int k);

  // sorted `coeff*v^(p/2)` term list, lowest exponent first
  std::string to_string(const std::string& var = "q") const;
  nlohmann::ordered_json to_json(const std::string& var = "q") const;
  static LaurentPoly from_json(const nlohmann::ordered_json& j);

 private:
  std::map<int, mpz_class> terms_;  // half-exponent -> nonzero coefficient
};

}  // namespace kh
