// Finite fields GF(p^f) with q <= 2^16, dense matrices over them, classical
// forms, standard generators of classical groups, scalar restriction along
// field towers, and conversion of (semi)linear matrix groups to permutation
// groups via actions on projective points, vectors, or form-singular points.
#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "facta/arith.hpp"
#include "facta/config.hpp"
#include "facta/errors.hpp"
#include "facta/perm.hpp"

namespace facta::matgrp {

using FF = uint32_t;  // field element code in [0, q)

struct FieldSpec {
  uint32_t p = 2, f = 1, q = 2;
  std::vector<FF> modulus;  // monic irreducible, little-endian, length f+1
};

// Arithmetic tables for one GF(p^f).  Elements are codes: the base-p digit
// packing of the polynomial representation, so codes 0..p-1 are the prime
// field.  Immutable after construction.
class Field {
public:
  Field(uint32_t p, uint32_t f);  // deterministic default modulus
  Field(uint32_t p, uint32_t f, std::vector<FF> modulus);

  const FieldSpec& spec() const { return spec_; }
  uint32_t p() const { return spec_.p; }
  uint32_t f() const { return spec_.f; }
  uint32_t q() const { return spec_.q; }

  FF add(FF a, FF b) const;
  FF sub(FF a, FF b) const;
  FF neg(FF a) const;
  FF mul(FF a, FF b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (spec_.q - 1)];
  }
  FF inv(FF a) const;
  FF div(FF a, FF b) const { return mul(a, inv(b)); }
  FF pow(FF a, uint64_t e) const;
  FF frobenius(FF a) const { return frob_[a]; }       // a^p
  FF frob_pow(FF a, uint32_t k) const;                // a^(p^k)
  FF primitive() const { return exp_[1]; }
  uint64_t multiplicative_order(FF a) const;

  // Smallest (by code) root in this field of a monic polynomial given
  // little-endian over the prime field; nullopt if none.
  std::optional<FF> root_of(const std::vector<FF>& poly) const;

  // Shared instances keyed by (p, f); user moduli make fresh instances.
  static std::shared_ptr<const Field> get(uint32_t p, uint32_t f);

private:
  void build_tables();
  FieldSpec spec_;
  std::vector<FF> exp_, log_, frob_;
  std::vector<FF> add_table_;  // only for p > 2 and small q
};

using FieldPtr = std::shared_ptr<const Field>;

// Dense row-major matrix over a field; vectors are rows and act on the right:
// v -> v * M.
class Mat {
public:
  Mat() = default;
  Mat(FieldPtr field, uint32_t rows, uint32_t cols);
  static Mat identity(FieldPtr field, uint32_t n);

  uint32_t rows() const { return rows_; }
  uint32_t cols() const { return cols_; }
  const FieldPtr& field() const { return field_; }
  FF at(uint32_t i, uint32_t j) const { return a_[i * cols_ + j]; }
  FF& at(uint32_t i, uint32_t j) { return a_[i * cols_ + j]; }

  Mat operator*(const Mat& rhs) const;
  Mat operator+(const Mat& rhs) const;
  bool operator==(const Mat& rhs) const { return a_ == rhs.a_; }
  Mat transpose() const;
  Mat inverse() const;  // throws argument_error when singular
  Mat pow(uint64_t e) const;
  FF det() const;
  Mat frobenius_map(uint32_t k = 1) const;  // entrywise ^(p^k)
  bool is_identity() const;

  std::vector<FF> apply(const std::vector<FF>& row) const;  // row * M
  uint32_t rank() const;

  std::string str() const;

private:
  FieldPtr field_;
  uint32_t rows_ = 0, cols_ = 0;
  std::vector<FF> a_;
};

std::vector<FF> vec_add(const Field& F, const std::vector<FF>& a, const std::vector<FF>& b);
FF dot(const Field& F, const std::vector<FF>& a, const std::vector<FF>& b);

enum class FormKind { symplectic, quadratic, hermitian };

// A classical form.  For quadratic forms the matrix is an upper-triangular
// representative with Q(v) = v Q v^T and polar form Q + Q^T; for hermitian
// forms the bar involution is x -> x^(p^(f/2)).
struct Form {
  FormKind kind;
  Mat matrix;
  int sign = 0;  // +1 / -1 for quadratic types once certified, else 0

  FF bilinear(const std::vector<FF>& u, const std::vector<FF>& v) const;
  FF quadratic(const std::vector<FF>& v) const;  // quadratic kind only
  bool preserved_by(const Mat& m, uint32_t frob) const;
};

// One generator of a (semi)linear group: v -> frob^e(v) * m, optionally
// followed by the point/hyperplane duality swap (graph automorphism; only
// meaningful for the antiflag and doubled actions).
struct SemilinearGen {
  Mat m;
  uint32_t frob = 0;
  bool dual = false;
};

struct MatGroup {
  FieldPtr field;
  uint32_t dim = 0;
  std::vector<SemilinearGen> gens;
  std::optional<Form> form;

  MatGroup conjugated(const Mat& r) const;  // generators r^-1 g r, form transported
};

enum class Action {
  projective_points,
  nonzero_vectors,
  singular_points,
  nonsingular_points,
  antiflags,
};

struct MatAction {
  Action kind;
  uint32_t degree = 0;
  // Point representatives; for antiflags, points[i] is the concatenation of
  // the 1-space vector and the hyperplane normal.
  std::vector<std::vector<FF>> points;
  perm::PermGroup group;
  // Index of a (not necessarily normalized) vector's point, for callers that
  // need to locate specific subspaces.
  uint32_t index_of(const Field& F, const std::vector<FF>& v) const;

  std::unordered_map<uint64_t, std::vector<uint32_t>> lookup;
};

// Enumerates the action's point set canonically (normalized vectors in lex
// order) and converts every generator to a permutation.
MatAction permutation_image(const MatGroup& g, Action action,
                            const Config& cfg = Config::standard());

// Appends the field Frobenius x -> x^p as a semilinear generator.  f > 1.
MatGroup adjoin_frobenius(const MatGroup& g);
// Appends the inverse-transpose graph symmetry as a dual generator (linear
// groups without a form only).
MatGroup adjoin_duality(const MatGroup& g);

// ---- standard constructions ----

// Generators of the classical matrix group with its standard form:
// GL/SL (no form), Sp (alternating Gram [[0,I],[-I,0]]), SU (identity
// hermitian Gram over GF(q^2), q the parameter), GOPlus/GOMinus (standard
// plus/minus quadratic form, the full orthogonal group).  Omega variants are
// obtained downstream as derived subgroups of GO.  The generating set is
// grown deterministically and certified against the expected permutation
// image order.
MatGroup classical_matrix_group(arith::Family family, uint32_t dim, uint64_t q);

// Standard forms used by the constructions above.
Form standard_symplectic_form(FieldPtr F, uint32_t dim);
Form standard_quadratic_form(FieldPtr F, uint32_t dim, int sign);
Form standard_hermitian_form(FieldPtr F, uint32_t dim);

// The expected order of the permutation image of classical_matrix_group on
// the action used for certification (scalar kernel divided out).
arith::Integer classical_image_order(arith::Family family, uint32_t dim, uint64_t q);
Action certification_action(arith::Family family);

// ---- linear-algebra utilities ----

// Change of basis R with R * B * R^T equal to the standard alternating Gram,
// for a nondegenerate alternating bilinear Gram B.
Mat symplectic_standardization(const Mat& gram);

// Basis of { X : X * A_i = B_i * X for all i } as matrices.
std::vector<Mat> intertwiner_space(const std::vector<Mat>& as, const std::vector<Mat>& bs);

// ---- scalar restriction ----

// Rewrites an n-dimensional group over GF(p^(fs)) as an ns-dimensional group
// over GF(p^f) via the basis 1, t, ..., t^(s-1) of the extension (t the
// primitive element).  Semilinear parts split into a small-field matrix and a
// residual small-field Frobenius power.  A symplectic form is transported by
// the field trace; other forms are dropped (callers re-derive what they
// need).
MatGroup restrict_scalars(const MatGroup& big, FieldPtr small_field);

// Coordinate bridge of the restriction, exposed for building vectors.
struct ScalarRestriction {
  FieldPtr big, small;
  uint32_t s = 0;                      // extension degree
  std::vector<FF> power_basis;         // t^0 .. t^(s-1) in the big field
  std::vector<FF> coords(FF big_elt) const;   // length s over the small field
  FF lift(const std::vector<FF>& coords) const;
  FF embed(FF small_elt) const;        // subfield embedding
  FF trace(FF big_elt) const;          // trace onto the subfield, small code
};
ScalarRestriction make_scalar_restriction(FieldPtr big, FieldPtr small_field);

}  // namespace facta::matgrp
