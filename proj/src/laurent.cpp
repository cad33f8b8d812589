#include "kh/laurent.hpp"

#include <sstream>
#include <stdexcept>

namespace kh {

LaurentPoly LaurentPoly::monomial(mpz_class coeff, int half_exp) {
  LaurentPoly p;
  if (coeff != 0) p.terms_[half_exp] = std::move(coeff);
  return p;
}

mpz_class LaurentPoly::coeff(int half_exp) const {
  auto it = terms_.find(half_exp);
  return it == terms_.end() ? mpz_class(0) : it->second;
}

void LaurentPoly::set_coeff(int half_exp, mpz_class c) {
  if (c == 0)
    terms_.erase(half_exp);
  else
    terms_[half_exp] = std::move(c);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) {
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, -c);
    } else {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r += o;
  return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
  LaurentPoly r = *this;
  r -= o;
  return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      auto it = r.terms_.find(e1 + e2);
      if (it == r.terms_.end()) {
        r.terms_.emplace(e1 + e2, c1 * c2);
      } else {
        it->second += c1 * c2;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  return r;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[e] = -c;
  return r;
}

LaurentPoly LaurentPoly::scaled(const mpz_class& coeff, int half_exp) const {
  LaurentPoly r;
  if (coeff == 0) return r;
  for (const auto& [e, c] : terms_) r.terms_[e + half_exp] = c * coeff;
  return r;
}

LaurentPoly LaurentPoly::inverted_variable() const {
  LaurentPoly r;
  for (const auto& [e, c] : terms_) r.terms_[-e] = c;
  return r;
}

std::optional<LaurentPoly> LaurentPoly::divided_exact(const LaurentPoly& divisor) const {
  if (divisor.is_zero()) throw std::invalid_argument("division by zero polynomial");
  LaurentPoly rem = *this;
  LaurentPoly quot;
  const int dlo = divisor.min_half_exp();
  const mpz_class& dc = divisor.terms_.begin()->second;
  while (!rem.is_zero()) {
    const auto& [rlo, rc] = *rem.terms_.begin();
    if (rc % dc != 0) return std::nullopt;
    mpz_class q = rc / dc;
    int shift = rlo - dlo;
    LaurentPoly t = divisor.scaled(q, shift);
    quot.set_coeff(shift, q);
    rem -= t;
  }
  return quot;
}

LaurentPoly LaurentPoly::neg_cube_power(int k) {
  mpz_class c = (k % 2 == 0) ? 1 : -1;
  return monomial(c, 6 * k);
}

static std::string half_exp_str(int p) {
  if (p % 2 == 0) return std::to_string(p / 2);
  return "(" + std::to_string(p) + "/2)";
}

std::string LaurentPoly::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.get_str() << "*" << var << "^" << half_exp_str(e);
  }
  return os.str();
}

nlohmann::ordered_json LaurentPoly::to_json(const std::string& var) const {
  nlohmann::ordered_json j;
  j["variable"] = var;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& [e, c] : terms_) arr.push_back({e, c.get_str()});
  j["terms"] = std::move(arr);
  return j;
}

LaurentPoly LaurentPoly::from_json(const nlohmann::ordered_json& j) {
  LaurentPoly p;
  for (const auto& t : j.at("terms")) {
    int e = t.at(0).get<int>();
    mpz_class c(t.at(1).get<std::string>());
    p.set_coeff(e, c);
  }
  return p;
}

}  // namespace kh
