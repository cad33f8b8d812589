#include "kh/bracket.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace kh {

namespace {

LaurentPoly raw_bracket(Diagram d, std::map<std::string, LaurentPoly>& memo) {
  // raw normalization: the empty diagram is 1 and every circle costs delta,
  // so raw = delta * <d>
  LaurentPoly factor = LaurentPoly::one();

  for (;;) {
    if (d.free_loops() > 0) {
      for (int i = 0; i < d.free_loops(); ++i) factor = factor * bracket_delta();
      d = Diagram::from_parts(d.crossings(), 0);
      continue;
    }
    bool stripped = false;
    for (int c = 0; c < d.crossing_count() && !stripped; ++c) {
      const auto& q = d.crossings()[c];
      // kink factors: closing the little loop with the A-smoothing costs
      // -A^3, with the B-smoothing -A^-3
      static const int pass_choice[4] = {1, 0, 1, 0};
      static const int factor_exp[4] = {6, -6, 6, -6};
      for (int i = 0; i < 4; ++i) {
        if (q[i] == q[(i + 1) % 4]) {
          factor = factor * LaurentPoly::monomial(-1, factor_exp[i]);
          d = d.resolved({c, pass_choice[i]}).diagram;
          stripped = true;
          break;
        }
      }
    }
    if (stripped) continue;
    break;
  }

  if (d.crossing_count() == 0) {
    if (d.free_loops() != 0) throw std::logic_error("loops survived reduction");
    return factor;
  }

  Diagram can = d.canonical();
  std::string key = can.to_pd_code();
  auto it = memo.find(key);
  if (it != memo.end()) return factor * it->second;

  LaurentPoly v0 = raw_bracket(can.resolved({0, 0}).diagram, memo);
  LaurentPoly v1 = raw_bracket(can.resolved({0, 1}).diagram, memo);
  LaurentPoly val = v0.scaled(1, 2) + v1.scaled(1, -2);
  memo.emplace(std::move(key), val);
  return factor * val;
}

}  // namespace

LaurentPoly bracket_delta() {
  LaurentPoly p;
  p.set_coeff(4, -1);
  p.set_coeff(-4, -1);
  return p;
}

LaurentPoly kauffman_bracket(const Diagram& d) {
  std::map<std::string, LaurentPoly> memo;
  LaurentPoly raw = raw_bracket(d, memo);
  auto q = raw.divided_exact(bracket_delta());
  if (!q) throw std::logic_error("raw bracket not divisible by delta");
  return *q;
}

LaurentPoly unnormalized_jones(const Diagram& d) {
  LaurentPoly x = kauffman_bracket(d) * LaurentPoly::neg_cube_power(-d.writhe());
  // substitute A^2 = -1/q; every exponent of x is even here
  LaurentPoly in_q;
  for (const auto& [k, c] : x.terms()) {
    if (k % 4 != 0) throw std::logic_error("odd A-exponent in normalized bracket");
    int e = k / 2;  // A-exponent
    mpz_class coeff = (e / 2) % 2 == 0 ? c : -c;
    in_q.set_coeff(-e, in_q.coeff(-e) + coeff);
  }
  LaurentPoly qdelta;
  qdelta.set_coeff(2, 1);
  qdelta.set_coeff(-2, 1);
  return in_q * qdelta;
}

ReducedJones jones_reduced(const Diagram& d) {
  ReducedJones rj;
  rj.components = d.component_count() + d.free_loops();
  LaurentPoly uj = unnormalized_jones(d);
  LaurentPoly qdelta;
  qdelta.set_coeff(2, 1);
  qdelta.set_coeff(-2, 1);
  auto div = uj.divided_exact(qdelta);
  if (!div) {
    rj.divisible = false;
    rj.engine_form = uj;
    return rj;
  }
  rj.engine_form = *div;
  int sign = (rj.components - 1) % 2 == 0 ? 1 : -1;
  for (const auto& [k, c] : rj.engine_form.terms()) {
    if (k % 2 != 0) throw std::logic_error("half-integer exponent in reduced Jones");
    rj.classical_form.set_coeff(k / 2, sign * c);
  }
  return rj;
}

}  // namespace kh
