#include "facta/hopf.hpp"

#include <unordered_map>

namespace facta::hopf {

using perm::Permutation;

bool is_perfect(const PermGroup& H) {
  return perm::derived_subgroup(H).order() == H.order();
}

bool is_self_normalizing(const PermGroup& G, const PermGroup& H, const Config& cfg) {
  Integer orbit = perm::subgroup_conjugation_orbit(G, H, cfg);
  return orbit == G.order() / H.order();
}

BiperfectVerdict biperfect_check(const PermGroup& G, const PermGroup& H, const PermGroup& K,
                                 const Config& cfg) {
  BiperfectVerdict v;
  v.exact = factorize::verify_exact(G, H, K, cfg).is_exact;
  v.h_perfect = is_perfect(H);
  v.k_perfect = is_perfect(K);
  auto self_norm = [&](const PermGroup& S, bool& flag) {
    try {
      flag = is_self_normalizing(G, S, cfg);
    } catch (const resource_error& e) {
      v.unverified = true;
      v.unverified_reason = e.what();
      flag = false;
    }
  };
  self_norm(H, v.h_self_normalizing);
  self_norm(K, v.k_self_normalizing);
  v.biperfect = v.exact && v.h_perfect && v.k_perfect && v.h_self_normalizing &&
                v.k_self_normalizing && !v.unverified;
  return v;
}

MutualActionTables mutual_action_tables(const PermGroup& G, const PermGroup& H,
                                        const PermGroup& K, uint64_t cap) {
  if (G.order() > cap)
    throw resource_error("mutual_action_cap", cap, "|G| = " + G.order().str());
  auto h_elts = H.elements(cap);
  auto k_elts = K.elements(cap);
  std::unordered_map<Permutation, uint32_t> k_index;
  for (uint32_t i = 0; i < k_elts.size(); ++i) k_index[k_elts[i]] = i;

  // In y x = h k the right coset H(yx) equals Hk, and K meets each coset of
  // H exactly once in an exact factorization, so [G:H] pins the K-part.
  perm::CosetTable table(G, H);
  if (table.index() != k_elts.size())
    throw argument_error("mutual_action_tables: factorization is not exact");
  std::unordered_map<uint64_t, uint32_t> k_by_coset;
  for (uint32_t i = 0; i < k_elts.size(); ++i) k_by_coset[table.point_of(k_elts[i])] = i;
  if (k_by_coset.size() != k_elts.size())
    throw argument_error("mutual_action_tables: K is not regular on the cosets of H");

  std::unordered_map<Permutation, uint32_t> h_index;
  for (uint32_t i = 0; i < h_elts.size(); ++i) h_index[h_elts[i]] = i;
  MutualActionTables t;
  t.h_action.assign(h_elts.size(), std::vector<uint32_t>(k_elts.size()));
  t.k_action.assign(h_elts.size(), std::vector<uint32_t>(k_elts.size()));
  for (uint32_t xi = 0; xi < h_elts.size(); ++xi)
    for (uint32_t yi = 0; yi < k_elts.size(); ++yi) {
      Permutation prod = k_elts[yi] * h_elts[xi];  // y x = h k
      uint32_t ki = k_by_coset.at(table.point_of(prod));
      Permutation h_part = prod * k_elts[ki].inverse();
      auto it = h_index.find(h_part);
      if (it == h_index.end())
        throw integrity_error("mutual_action_tables: decomposition failed");
      t.h_action[xi][yi] = it->second;
      t.k_action[xi][yi] = ki;
    }
  return t;
}

}  // namespace facta::hopf
