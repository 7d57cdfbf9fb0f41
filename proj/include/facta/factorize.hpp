// The factorization calculus: verify G = HK, test exactness, reduce along a
// normal subgroup, check the order identity and the order-vs-rank bound, and
// search candidate sets.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "facta/arith.hpp"
#include "facta/config.hpp"
#include "facta/perm.hpp"

namespace facta::factorize {

using arith::Integer;
using perm::PermGroup;

struct FactorizationReport {
  Integer order_G, order_H, order_K;
  Integer index_GK;  // |G : K|
  std::string method;  // "coset_transitivity" | "intersection_order"
  bool is_factorization = false;
  std::optional<Integer> intersection_order;
  bool is_exact = false;
  bool regularity_certified = false;  // coset route: H transitive with |H| = index
  std::optional<bool> lemxia4_identity;
  std::optional<double> cor_order_margin;
  double seconds = 0;
};

// Is G = HK?  Method selection: when |G:K| (or |G:H|, with the roles of the
// lemma's parts (e) and (f) swapped) is within the coset cap, enumerate the
// cosets and test transitivity of the other factor; otherwise compute |H
// meet K| by backtrack and apply |G||H:meet:K| = |H||K|.  With cross_check
// set, both routes run and must agree.
FactorizationReport verify_factorization(const PermGroup& G, const PermGroup& H,
                                         const PermGroup& K,
                                         const Config& cfg = Config::standard(),
                                         bool cross_check = false);

// verify_factorization plus the exactness verdict |H||K| = |G|; on the coset
// route the regularity of the acting factor is certified explicitly and must
// agree with the order criterion.
FactorizationReport verify_exact(const PermGroup& G, const PermGroup& H, const PermGroup& K,
                                 const Config& cfg = Config::standard());

struct AlignedTriple {
  PermGroup G_star, H_star, K_star;
};

// G* = HL meet KL, H* = H meet G*, K* = K meet G* for a normal L; certifies
// H*L = K*L = G* and that the L-parts of the factors are unchanged.
AlignedTriple reduce_to_aligned(const PermGroup& G, const PermGroup& L, const PermGroup& H,
                                const PermGroup& K, const Config& cfg = Config::standard());

// |L| |H meet K| = |G/L| |H meet L| |K meet L| under HL = KL = G.
bool check_order_identity(const PermGroup& G, const PermGroup& L, const PermGroup& H,
                          const PermGroup& K, const Config& cfg = Config::standard());

struct CorOrderCheck {
  bool half_bound = false;           // max(|H|,|K|)^2 >= |G|, exact
  std::optional<bool> rank_bound;    // max >= |G|^c(k) when a rank is supplied
  double margin = 0;                 // log max / log |G| - c(k)
};

CorOrderCheck check_cor_order(const Integer& order_G, const Integer& order_H,
                              const Integer& order_K, std::optional<uint32_t> lie_rank);

struct SearchHit {
  size_t h_index, k_index;
  FactorizationReport report;
};

// All pairs with |H_i||K_j| = |G| (arithmetic prefilter) that verify as
// factorizations; such hits are automatically exact.  Resource errors are
// recorded per pair, never fatal.
struct SearchResult {
  std::vector<SearchHit> hits;
  std::vector<std::pair<size_t, size_t>> unverified;  // resource-capped pairs
};
SearchResult search_exact(const PermGroup& G, const std::vector<PermGroup>& cands_H,
                          const std::vector<PermGroup>& cands_K,
                          const Config& cfg = Config::standard());

// Exhaustive check of the parabolic unipotent-radical property: every proper
// subgroup of U = q^(2m-1) normalized by the Levi part S = Sp_{2m-2}(q) lies
// in the centre Q = q.  Enumerates S-invariant subgroups as unions of
// S-orbits.  (m,q) = (2,2) and (2,3) are excluded by hypothesis.
struct LemmaXia21Report {
  bool holds = false;
  uint64_t order_U = 0;
  size_t invariant_subgroups = 0;  // proper nontrivial ones
};
LemmaXia21Report brute_force_lemma_xia21(uint32_t m, uint64_t q,
                                         const Config& cfg = Config::standard());

}  // namespace facta::factorize
