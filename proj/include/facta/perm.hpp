// Permutation-group kernel: stabilizer chains (Schreier-Sims), orbits,
// membership, coset actions, derived series, transitivity and primitivity
// tests, backtrack searches, subgroup conjugation orbits.
#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "facta/arith.hpp"
#include "facta/config.hpp"
#include "facta/errors.hpp"

namespace facta::perm {

using arith::Integer;
using Point = uint32_t;

class Permutation {
public:
  Permutation() = default;
  explicit Permutation(uint32_t degree);  // identity
  explicit Permutation(std::vector<Point> images);

  uint32_t degree() const { return (uint32_t)img_.size(); }
  Point operator[](Point p) const { return img_[p]; }
  const std::vector<Point>& images() const { return img_; }

  bool is_identity() const;
  // Right action: x^(a*b) = (x^a)^b.
  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  Permutation conjugate_by(const Permutation& g) const;  // g^-1 * this * g
  bool operator==(const Permutation& rhs) const = default;

  uint64_t order() const;
  // Sorted multiset of cycle lengths (fixed points included).
  std::vector<uint32_t> cycle_type() const;
  uint64_t hash() const;
  bool is_even() const;

  // "(1 2 3)(4 5)" with 1-indexed points; whitespace or commas separate.
  static Permutation parse_cycles(uint32_t degree, std::string_view text);
  std::string cycle_string() const;  // 1-indexed, "()" for the identity

private:
  std::vector<Point> img_;
};

// One level of a stabilizer chain.  The level-i group is the pointwise
// stabilizer of base[0..i); its fundamental orbit and a Schreier tree (plus
// an optional explicit inverse transversal) support sifting.
struct ChainLevel {
  Point base_point = 0;
  std::vector<Permutation> gens;      // generators of this level's group
  std::vector<Permutation> inv_gens;
  std::vector<Point> orbit;           // BFS order, orbit[0] == base_point
  std::vector<int32_t> orbit_pos;     // degree-sized: index into orbit or -1
  std::vector<Point> parent;          // Schreier tree edges
  std::vector<int32_t> parent_gen;    // generator index used, -1 at the root
  // inv_transversal[k], when present, is u_p^-1 for p = orbit[k].
  std::vector<Permutation> inv_transversal;
  bool explicit_transversal = false;
  size_t pending = 0;  // orbit extension queue position (construction only)

  bool in_orbit(Point p) const { return orbit_pos[p] >= 0; }
  // u_p with base_point^(u_p) = p.
  Permutation transversal(Point p) const;
  // x * u_p^-1 without materializing u_p when no explicit table is stored.
  Permutation mult_inv_transversal(const Permutation& x, Point p) const;
};

class StabilizerChain {
public:
  // Deterministic Schreier-Sims, optionally seeded by a randomized pass whose
  // result the deterministic closure then certifies.  base_hint forces a
  // prefix of the base.  When the caller knows the group order from an
  // independent source (order formula, documented checksum), the randomized
  // pass stops as soon as the chain order reaches it; the match itself
  // certifies completeness since a chain never overestimates.
  // allow_incomplete skips the deterministic closure when the known order was
  // not reached; the chain order is then only a lower bound.  Used by
  // generator-growth loops that will simply add more generators and retry.
  StabilizerChain(uint32_t degree, const std::vector<Permutation>& gens,
                  std::span<const Point> base_hint = {}, bool randomized_seed = true,
                  const Integer* known_order = nullptr, bool allow_incomplete = false);

  uint32_t degree() const { return degree_; }
  const std::vector<ChainLevel>& levels() const { return levels_; }
  std::vector<Point> base() const;
  Integer order() const;

  // Sifts g; returns the residue and the level where sifting stopped
  // (levels().size() on success).
  std::pair<Permutation, size_t> sift(const Permutation& g) const;
  bool contains(const Permutation& g) const;

  // Generators of the pointwise stabilizer of base()[0..k).
  std::vector<Permutation> level_generators(size_t k) const;

private:
  void schreier_sims(size_t level);
  void new_level(Point base);
  void extend_orbit(size_t level);
  void add_generator(size_t level, const Permutation& g);
  void add_orbit_point(size_t level, Point q, Point from, int32_t gen_index);
  void insert_residue(const Permutation& h, size_t stuck);

  uint32_t degree_;
  std::vector<ChainLevel> levels_;
  std::vector<Point> base_hint_;
  size_t explicit_budget_left_;
};

class PermGroup {
public:
  PermGroup() : degree_(0) {}
  explicit PermGroup(uint32_t degree) : degree_(degree) {}
  PermGroup(uint32_t degree, std::vector<Permutation> gens);

  uint32_t degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  bool has_chain() const;
  // Builds the chain on first use; thread-safe, result shared by copies.
  const StabilizerChain& chain() const;
  // Forces a chain whose base starts with the given points.
  PermGroup with_base(std::span<const Point> base_prefix) const;
  // Declares the group order known from an independent source, enabling the
  // order-certified randomized chain construction.  Call before first use.
  void expect_order(Integer known);
  const std::optional<Integer>& expected_order() const { return expected_; }

  Integer order() const { return chain().order(); }
  bool is_trivial() const;
  bool contains(const Permutation& g) const;
  bool is_subgroup_of(const PermGroup& g) const;
  bool same_group_as(const PermGroup& g) const;

  std::vector<Point> orbit_of(Point p) const;
  std::vector<std::vector<Point>> orbits() const;
  bool is_transitive() const;

  // Pointwise stabilizer of the given points.
  PermGroup stabilizer(std::span<const Point> pts) const;
  PermGroup stabilizer(Point p) const;

  // Uniformly random element through the chain; deterministic given the rng.
  Permutation random_element(uint64_t& rng_state) const;
  // All elements, failing with resource_error above the cap.
  std::vector<Permutation> elements(uint64_t cap) const;

  PermGroup conjugate_by(const Permutation& g) const;

private:
  uint32_t degree_;
  std::vector<Permutation> gens_;
  std::optional<Integer> expected_;
  struct ChainBox {
    std::once_flag once;
    std::unique_ptr<StabilizerChain> chain;
  };
  mutable std::shared_ptr<ChainBox> box_ = std::make_shared<ChainBox>();
};

// ---- free helpers ----

std::vector<Point> orbit_of_point(uint32_t degree, const std::vector<Permutation>& gens, Point p);
Permutation random_word(const std::vector<Permutation>& gens, uint32_t degree, uint64_t& state,
                        int length);

// Word in group generators: letters a..z are gens_[0..25], A..Z their
// inverses; e.g. "abA".  Also accepts "#i" / "#-i" numeric form separated by
// spaces for groups with many generators.
Permutation evaluate_word(const PermGroup& g, std::string_view word);

// ---- coset action ----

class CosetTable {
public:
  // Right cosets Hx enumerated by BFS over g in G.generators(); index 0 is H
  // itself.  Canonical representatives are computed through H's chain, so
  // identical inputs enumerate identically on every platform.
  CosetTable(const PermGroup& G, const PermGroup& H, const Config& cfg = Config::standard());

  uint64_t index() const { return reps_.size(); }
  const PermGroup& image() const { return image_; }
  const std::vector<Permutation>& generator_images() const { return image_.generators(); }
  // Canonical representative of coset number i.
  const Permutation& representative(uint64_t i) const { return reps_[i]; }
  // Coset number of Hx.
  uint64_t point_of(const Permutation& x) const;
  // Image of an arbitrary group element (not necessarily a generator).
  Permutation permutation_image_of(const Permutation& g) const;

private:
  Permutation canonical(const Permutation& x) const;

  PermGroup h_group_;  // keeps the chain alive
  const StabilizerChain* h_chain_;
  std::vector<Permutation> reps_;
  std::unordered_map<uint64_t, std::vector<uint64_t>> lookup_;
  PermGroup image_;
};

struct CosetActionResult {
  std::shared_ptr<CosetTable> table;
  PermGroup image;
  uint64_t index = 0;
};

// Permutation action of G on [G:H].  Requires H <= G (containment-checked)
// and |G:H| <= cfg.coset_index_cap.
CosetActionResult coset_action(const PermGroup& G, const PermGroup& H,
                               const Config& cfg = Config::standard());

// Kernel of the homomorphism sending G.generators()[i] to images[i]; the
// images may act on any degree.  Used for coset-action cores and block
// kernels; sizes must be modest since the image chain is fully closed.
PermGroup homomorphism_kernel(const PermGroup& G, const std::vector<Permutation>& images,
                              uint32_t image_degree);

// ---- structure ----

PermGroup normal_closure(const PermGroup& G, const std::vector<Permutation>& seeds);
PermGroup derived_subgroup(const PermGroup& G);
PermGroup derived_limit(const PermGroup& G);

bool is_k_transitive(const PermGroup& G, uint32_t k);
bool is_sharply_k_transitive(const PermGroup& G, uint32_t k);
bool is_k_homogeneous(const PermGroup& G, uint32_t k);

// Minimal block system whose blocks merge the two seed points; the result
// partitions {0..n-1}.  G must be transitive.
std::vector<std::vector<Point>> minimal_blocks(const PermGroup& G, Point a, Point b);
bool is_primitive(const PermGroup& G);

// ---- backtrack searches (perm_backtrack.cpp) ----

PermGroup set_stabilizer(const PermGroup& G, const std::vector<Point>& set,
                         const Config& cfg = Config::standard());
PermGroup intersection(const PermGroup& G1, const PermGroup& G2,
                       const Config& cfg = Config::standard());

// ---- conjugation orbits ----

// Length of the orbit of H under G-conjugation; self-normalizing iff the
// result equals |G:H|.  Uses the coset table of [G:H] when affordable (orbit
// length = index / #fixed points of H on [G:H]) and otherwise a fingerprinted
// BFS over conjugates, capped by cfg.conjugation_orbit_cap.
Integer subgroup_conjugation_orbit(const PermGroup& G, const PermGroup& H,
                                   const Config& cfg = Config::standard());

}  // namespace facta::perm

template <>
struct std::hash<facta::perm::Permutation> {
  size_t operator()(const facta::perm::Permutation& p) const { return p.hash(); }
};
