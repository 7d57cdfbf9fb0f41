// Named constructors for the concrete groups and subgroups used by the
// verification tables: a small spec language for groups, and recipes that
// carve subgroups out of a parent (stabilizers, derived series, generator
// words, embedded matrix constructions), each guarded by an order checksum.
#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "facta/config.hpp"
#include "facta/matgrp.hpp"
#include "facta/perm.hpp"

namespace facta::atlas {

// A built group plus the matrix-level context it came from (when any), so
// embedded subgroup constructions can act on the same point set.
struct Built {
  std::string spec;
  perm::PermGroup group;
  std::shared_ptr<const matgrp::MatGroup> matrices;
  std::shared_ptr<const matgrp::MatAction> action;
};

// Grammar:
//   Alt(n) | Sym(n) | Cyclic(n) | Dihedral(2m) | Mathieu(11|12|22|23|24)
//   | SL(n,q) | PSL(n,q) | GL(n,q) | PGL(n,q) | Sp(n,q) | PSp(n,q)
//   | SU(n,q) | PSU(n,q) | GOPlus(n,q) | GOMinus(n,q)
//   | OmegaPlus(n,q) | OmegaMinus(n,q) | G2(q)
//   | PGammaL(n,q)                       (= SL(n,q).f)
//   | SharplyTwoTransitive(p, ell)       (p^2 : (SL2(5) x ell), affine)
//   | Product(spec, spec) | Gens(n, "(1 2)(3 4); ...")
// Classical specs take dot decorations and an action suffix:
//   .f   adjoin the field Frobenius (semilinear generator)
//   .g   adjoin the point/hyperplane duality (linear groups, antiflag action)
//   .fg  adjoin their product as a single generator
//   @proj @vec @sing @nonsing @aflag   action override (default: @proj for
//   linear/symplectic/unitary and G2, @sing for orthogonal)
// Matrix groups are converted to permutation groups on the chosen action;
// the returned group always carries a certified order.
const Built& build(const std::string& spec, const Config& cfg = Config::standard());

inline const perm::PermGroup& build_group(const std::string& spec,
                                          const Config& cfg = Config::standard()) {
  return build(spec, cfg).group;
}

// Mathieu generators on n points (frozen data, certified in build()).
std::vector<perm::Permutation> mathieu_generators(uint32_t n);

// ---- subgroup recipes ----

struct RecipeStep {
  enum class Kind {
    PointStabilizer,   // points
    SetStabilizer,     // points
    DerivedSubgroup,
    DerivedLimit,
    NormalClosure,     // words over parent generators
    GeneratorWords,    // words over parent generators
    AdjoinWords,       // extend current generators by words over the parent
    KernelOfBlockAction,  // two seed points
    Group,             // text: a build() spec embedded into the parent
    Native,            // text: a registered matrix-level construction
    Conjugate,         // words: single word over the parent; conjugates current
  };
  Kind kind;
  std::vector<perm::Point> points;
  std::vector<std::string> words;
  std::string text;
};

struct SubgroupRecipe {
  std::vector<RecipeStep> steps;
  arith::Integer expected_order;  // checksum; mismatch is an integrity error
};

// Evaluates the recipe against a parent built by build().  The result is
// always a subgroup of the parent (generator membership is enforced) whose
// order equals the checksum.
perm::PermGroup evaluate_recipe(const Built& parent, const SubgroupRecipe& recipe,
                                const Config& cfg = Config::standard());

// Registry of native embedded constructions, keyed by name; each receives
// the parent context and returns generators on the parent's point set.
using NativeBuilder = std::function<std::vector<perm::Permutation>(const Built&)>;
void register_native(const std::string& name, NativeBuilder fn);
bool has_native(const std::string& name);

// Registers the built-in native constructions (embedded field-extension and
// orthogonal/symplectic subgroups used by the factorization tables); called
// lazily by evaluate_recipe.
void ensure_builtin_natives();

}  // namespace facta::atlas
