#pragma once

#include "kh/diagram.hpp"
#include "kh/laurent.hpp"

namespace kh {

// <unknot> = 1, <L u O> = (-A^2 - A^-2) <L>,
// <crossing> = A <0-smoothing> + A^-1 <1-smoothing>.
// Skein recursion with kink stripping and memoization on canonicalized
// sub-diagrams, so twist regions collapse instead of exploding.
LaurentPoly kauffman_bracket(const Diagram& d);

// -A^2 - A^-2 in the bracket variable
LaurentPoly bracket_delta();

// Writhe-normalized bracket re-expressed in q (A^2 -> -1/q), scaled so the
// unknot gives q + q^-1. This equals the graded Euler characteristic of
// the Khovanov homology over Q.
LaurentPoly unnormalized_jones(const Diagram& d);

struct ReducedJones {
  bool divisible = true;
  // unnormalized_jones / (q + q^-1) when divisible, else the unnormalized
  // polynomial itself
  LaurentPoly engine_form;
  // classical normalization: (-1)^(#components-1) * engine_form written in
  // the variable t = q^2 (half-integer exponents for even component counts)
  LaurentPoly classical_form;
  int components = 0;
};

ReducedJones jones_reduced(const Diagram& d);

}  // namespace kh
