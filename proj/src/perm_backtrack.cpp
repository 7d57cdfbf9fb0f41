// Backtrack searches over stabilizer chains: setwise stabilizers and
// subgroup intersections.  Depth-first over base images with orbit
// transport, pruned by the partial images and by minimality with respect to
// the group found so far.
#include <algorithm>

#include "facta/perm.hpp"

namespace facta::perm {

namespace {

struct SearchState {
  uint64_t nodes = 0;
  uint64_t cap = 0;
  void tick() {
    if (++nodes > cap) throw resource_error("backtrack_node_cap", cap, "backtrack nodes");
  }
};

// Smallest point of the orbit of p under the generators of R.
Point min_in_orbit(const PermGroup& R, Point p) {
  Point best = p;
  for (Point q : orbit_of_point(R.degree(), R.generators(), p)) best = std::min(best, q);
  return best;
}

}  // namespace

PermGroup set_stabilizer(const PermGroup& G, const std::vector<Point>& set, const Config& cfg) {
  uint32_t n = G.degree();
  std::vector<bool> in_set(n, false);
  for (Point p : set) {
    if (p >= n) throw argument_error("set_stabilizer: point out of range");
    in_set[p] = true;
  }
  if (G.generators().empty()) return PermGroup(n);

  // Base through the set first: every level then carries the strong prune
  // "images of set-points stay in the set".
  std::vector<Point> base_hint(set.begin(), set.end());
  std::sort(base_hint.begin(), base_hint.end());
  base_hint.erase(std::unique(base_hint.begin(), base_hint.end()), base_hint.end());
  PermGroup rebased = G.with_base(base_hint);
  const StabilizerChain& chain = rebased.chain();
  const auto& lvls = chain.levels();

  std::vector<Permutation> found;
  PermGroup result(n);
  SearchState st{0, cfg.backtrack_node_cap, };

  // DFS over levels; partial is u^(i) * ... * u^(0) read right-to-left, so
  // partial[b_j] is the final image of base point j for all j <= i.
  std::function<void(size_t, const Permutation&)> dfs = [&](size_t i, const Permutation& partial) {
    st.tick();
    if (i == lvls.size()) {
      bool ok = true;
      for (Point p = 0; p < n && ok; ++p)
        if (in_set[p] != in_set[partial[p]]) ok = false;
      if (ok && !partial.is_identity() && !result.contains(partial)) {
        found.push_back(partial);
        result = PermGroup(n, found);
      }
      return;
    }
    const ChainLevel& lvl = lvls[i];
    std::vector<std::pair<Point, Point>> cands;  // (image of b_i, orbit point t)
    for (Point t : lvl.orbit) cands.emplace_back(partial[t], t);
    std::sort(cands.begin(), cands.end());
    for (auto [img, t] : cands) {
      if (in_set[lvl.base_point] != in_set[img]) continue;
      // Minimality under the group found so far keeps the search from
      // revisiting cosets whose elements are already generated.
      if (i == 0 && !found.empty() && min_in_orbit(result, img) < img) continue;
      Permutation next = partial;
      for (Point q = t; q != lvl.base_point;) {
        int32_t e = lvl.parent_gen[q];
        next = lvl.gens[e] * next;
        q = lvl.parent[q];
      }
      dfs(i + 1, next);
    }
  };
  dfs(0, Permutation(n));
  return result;
}

PermGroup intersection(const PermGroup& G1, const PermGroup& G2, const Config& cfg) {
  if (G1.degree() != G2.degree()) throw argument_error("intersection: degree mismatch");
  uint32_t n = G1.degree();
  if (G1.generators().empty() || G2.generators().empty()) return PermGroup(n);

  const StabilizerChain& chain = G1.chain();
  const auto& lvls = chain.levels();
  std::vector<Point> base = chain.base();
  // G2 rebased to G1's base so membership of partial images can be tested
  // level by level.
  PermGroup g2r = G2.with_base(base);
  const StabilizerChain& c2 = g2r.chain();

  std::vector<Permutation> found;
  PermGroup result(n);
  SearchState st{0, cfg.backtrack_node_cap};

  // w tracks an element of G2 with the same base images as the partial.
  std::function<void(size_t, const Permutation&, const Permutation&)> dfs =
      [&](size_t i, const Permutation& partial, const Permutation& w) {
        st.tick();
        if (i == lvls.size()) {
          if (!partial.is_identity() && G2.contains(partial) && !result.contains(partial)) {
            found.push_back(partial);
            result = PermGroup(n, found);
          }
          return;
        }
        const ChainLevel& lvl = lvls[i];
        std::vector<std::pair<Point, Point>> cands;
        for (Point t : lvl.orbit) cands.emplace_back(partial[t], t);
        std::sort(cands.begin(), cands.end());
        for (auto [img, t] : cands) {
          if (i == 0 && !found.empty() && min_in_orbit(result, img) < img) continue;
          // Feasibility in G2: some h in G2 with h[b_j] = img_j for j <= i.
          // With w matching the previous prefix, the condition becomes
          // w^-1[img] lying in the level-i orbit of G2's rebased chain.
          Point c = w.inverse()[img];
          size_t lvl2 = std::min(i, c2.levels().size());
          bool feasible;
          Permutation w_next = w;
          if (lvl2 < c2.levels().size() && c2.levels()[lvl2].base_point == lvl.base_point) {
            const ChainLevel& l2 = c2.levels()[lvl2];
            feasible = l2.in_orbit(c);
            if (feasible) {
              Permutation u(n);
              for (Point q = c; q != l2.base_point;) {
                int32_t e = l2.parent_gen[q];
                u = l2.gens[e] * u;
                q = l2.parent[q];
              }
              w_next = u * w;
            }
          } else {
            // The rebased chain became trivial at this depth (or the base
            // diverged because the point was already fixed); then the image
            // is forced.
            feasible = c == lvl.base_point;
          }
          if (!feasible) continue;
          Permutation next = partial;
          for (Point q = t; q != lvl.base_point;) {
            int32_t e = lvl.parent_gen[q];
            next = lvl.gens[e] * next;
            q = lvl.parent[q];
          }
          dfs(i + 1, next, w_next);
        }
      };
  dfs(0, Permutation(n), Permutation(n));
  return result;
}

}  // namespace facta::perm
