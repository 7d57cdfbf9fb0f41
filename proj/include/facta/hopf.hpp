// The group-theoretic criterion for biperfect bicrossproduct Hopf algebras:
// an exact factorization G = HK yields a biperfect semisimple Hopf algebra
// iff both factors are perfect and self-normalizing.
#pragma once

#include <optional>

#include "facta/factorize.hpp"
#include "facta/perm.hpp"

namespace facta::hopf {

using arith::Integer;
using perm::PermGroup;

struct BiperfectVerdict {
  bool exact = false;
  bool h_perfect = false, k_perfect = false;
  bool h_self_normalizing = false, k_self_normalizing = false;
  bool biperfect = false;
  // set when a resource cap prevented a flag from being computed
  bool unverified = false;
  std::string unverified_reason;
};

bool is_perfect(const PermGroup& H);

// Self-normalization via the conjugation orbit: N_G(H) = H iff the orbit of
// H under G-conjugation has length |G:H|.
bool is_self_normalizing(const PermGroup& G, const PermGroup& H,
                         const Config& cfg = Config::standard());

BiperfectVerdict biperfect_check(const PermGroup& G, const PermGroup& H, const PermGroup& K,
                                 const Config& cfg = Config::standard());

// The bicrossproduct mutual actions for a verified exact factorization:
// for y in K, x in H there are unique h(x,y) in H, k(x,y) in K with
// y x = h k.  Computed by enumeration; |G| is capped.  This is the tiny
// demonstrator for the algebra underlying the criterion.
struct MutualActionTables {
  std::vector<std::vector<uint32_t>> h_action;  // h_action[xi][yi] in H-indices
  std::vector<std::vector<uint32_t>> k_action;  // k_action[xi][yi] in K-indices
};
MutualActionTables mutual_action_tables(const PermGroup& G, const PermGroup& H,
                                        const PermGroup& K, uint64_t cap = 200000);

}  // namespace facta::hopf
