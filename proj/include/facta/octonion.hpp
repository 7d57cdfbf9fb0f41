// Split octonions as Zorn vector matrices over GF(q), and the automorphism
// groups they define.  The automorphism group of the split octonion algebra
// is the exceptional group G2(q); in characteristic 2 its action on the
// trace-zero subspace modulo the identity line is a 6-dimensional symplectic
// representation, which is how G2(q) enters the symplectic factorizations.
#pragma once

#include <array>

#include "facta/matgrp.hpp"

namespace facta::matgrp {

// Coordinates (a, v1, v2, v3, w1, w2, w3, b) for the Zorn matrix
// [[a, v], [w, b]].
struct OctonionAlgebra {
  FieldPtr F;
  explicit OctonionAlgebra(FieldPtr field) : F(std::move(field)) {}

  using Elt = std::array<FF, 8>;
  Elt mul(const Elt& x, const Elt& y) const;
  FF norm(const Elt& x) const;               // determinant ab - v.w
  Elt conjugate(const Elt& x) const;         // [[b, -v], [-w, a]]
  Elt inverse(const Elt& x) const;           // conjugate / norm
  Elt identity() const { return {1, 0, 0, 0, 0, 0, 0, 1}; }
};

// Automorphisms of the split octonion algebra as 8x8 matrices acting on
// coordinate rows, enough to generate the full automorphism group:
// the SL3(q) block maps plus automorphisms found by a deterministic
// backtrack over images of the null basis triple.
std::vector<Mat> octonion_automorphism_generators(FieldPtr F);

// G2(q) for even q as a 6x6 matrix group preserving the standard alternating
// form, certified against |G2(q)| = q^6 (q^6-1) (q^2-1).
MatGroup g2_matrix_group(uint64_t q);

arith::Integer g2_order(uint64_t q);

}  // namespace facta::matgrp
