// Data-discovery tool: one-off searches whose frozen outputs ship as data
// (Mathieu generators, subgroup generator words).  Re-running a subcommand
// reproduces byte-identical output; everything printed is re-certified by
// order/transitivity checks before it is accepted downstream.
#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "facta/atlas.hpp"
#include "facta/perm.hpp"

using namespace facta;
using namespace facta::perm;
using arith::Integer;

namespace {

// ----- binary Golay code from the extended quadratic-residue construction

struct Golay {
  // 24 coordinates: index 0 = the projective point [0:1] (infinity),
  // index 1+c = [1:c] for c in 0..22, matching the canonical projective
  // enumeration of SL(2,23) in matgrp.
  std::vector<uint32_t> basis;  // 12 rows as 24-bit masks, echelonized
  bool contains(uint32_t word) const {
    uint32_t w = word;
    for (uint32_t b : basis) {
      uint32_t lead = b & ~(b - 1);  // lowest set bit of the echelon row
      (void)lead;
    }
    // reduce against echelon basis
    for (uint32_t b : basis) {
      uint32_t pivot = 1u << (31 - __builtin_clz(b));
      if (w & pivot) w ^= b;
    }
    return w == 0;
  }
};

Golay build_golay() {
  // quadratic residues mod 23
  std::set<int> qr;
  for (int i = 1; i < 23; ++i) qr.insert(i * i % 23);
  auto bit = [](int idx) { return 1u << idx; };
  std::vector<uint32_t> rows;
  for (int i = 0; i < 23; ++i) {
    uint32_t w = 0;
    for (int r : qr) w |= bit(1 + (r + i) % 23);
    // |QR| = 11 is odd: extended parity coordinate set
    w |= bit(0);
    rows.push_back(w);
  }
  // echelonize over F2
  std::vector<uint32_t> basis;
  for (uint32_t row : rows) {
    uint32_t w = row;
    for (uint32_t b : basis) {
      uint32_t pivot = 1u << (31 - __builtin_clz(b));
      if (w & pivot) w ^= b;
    }
    if (w) basis.push_back(w);
    std::sort(basis.rbegin(), basis.rend());
  }
  if (basis.size() != 12) {
    fprintf(stderr, "golay: expected dimension 12, got %zu\n", basis.size());
    exit(1);
  }
  // certify: weight distribution of all 4096 codewords
  std::map<int, int> wd;
  for (uint32_t mask = 0; mask < 4096; ++mask) {
    uint32_t w = 0;
    for (int i = 0; i < 12; ++i)
      if (mask & (1u << i)) w ^= basis[i];
    wd[__builtin_popcount(w)]++;
  }
  if (!(wd[0] == 1 && wd[8] == 759 && wd[12] == 2576 && wd[16] == 759 && wd[24] == 1)) {
    fprintf(stderr, "golay: wrong weight distribution\n");
    for (auto [w, c] : wd) fprintf(stderr, "  weight %d: %d\n", w, c);
    exit(1);
  }
  Golay g;
  g.basis = basis;
  return g;
}

bool preserves_code(const Golay& g, const Permutation& p) {
  for (uint32_t b : g.basis) {
    uint32_t img = 0;
    for (int i = 0; i < 24; ++i)
      if (b & (1u << i)) img |= 1u << p[i];
    if (!g.contains(img)) return false;
  }
  return true;
}

Permutation restrict_to(const Permutation& p, const std::vector<Point>& support) {
  std::vector<Point> img(support.size());
  std::map<Point, Point> index;
  for (Point i = 0; i < support.size(); ++i) index[support[i]] = i;
  for (Point i = 0; i < support.size(); ++i) img[i] = index.at(p[support[i]]);
  return Permutation(std::move(img));
}

std::string gens_string(const std::vector<Permutation>& gens) {
  std::string out;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ";";
    out += gens[i].cycle_string();
  }
  return out;
}

void cmd_golay() {
  Golay code = build_golay();
  printf("golay code certified: [24,12,8], 759 octads, 2576 dodecads\n");

  // PSL(2,23) maps in the same labels
  auto mod = [](int x) { return ((x % 23) + 23) % 23; };
  std::vector<Point> alpha_img(24), gamma_img(24);
  alpha_img[0] = 0;
  for (int c = 0; c < 23; ++c) alpha_img[1 + c] = 1 + mod(c + 1);
  // x -> -1/x: 0 <-> infinity, c -> -(c^{-1})
  gamma_img[0] = 1;
  gamma_img[1] = 0;
  for (int c = 1; c < 23; ++c) {
    int inv = 1;
    for (int k = 1; k < 23; ++k)
      if (k * c % 23 == 1) inv = k;
    gamma_img[1 + c] = 1 + mod(-inv);
  }
  Permutation alpha(alpha_img), gamma(gamma_img);
  if (!preserves_code(code, alpha) || !preserves_code(code, gamma)) {
    fprintf(stderr, "golay: PSL(2,23) maps do not preserve the code\n");
    exit(1);
  }
  PermGroup psl(24, {alpha, gamma});
  printf("PSL(2,23) order: %s\n", psl.order().str().c_str());

  // scan monomial candidates delta: x -> a x^k (QR) / b x^k (non-QR), fixing
  // 0 and infinity
  std::set<int> qr;
  for (int i = 1; i < 23; ++i) qr.insert(i * i % 23);
  Permutation delta(24);
  bool found = false;
  for (int k = 1; k < 22 && !found; ++k)
    for (int a = 1; a < 23 && !found; ++a)
      for (int b = 1; b < 23 && !found; ++b) {
        std::vector<Point> img(24);
        img[0] = 0;
        img[1] = 1;
        bool ok = true;
        std::vector<bool> seen(24, false);
        seen[0] = seen[1] = true;
        for (int c = 1; c < 23 && ok; ++c) {
          long long pw = 1;
          for (int t = 0; t < k; ++t) pw = pw * c % 23;
          int v = (int)((qr.count(c) ? a : b) * pw % 23);
          if (v == 0) {
            ok = false;
            break;
          }
          if (seen[1 + v]) {
            ok = false;
            break;
          }
          seen[1 + v] = true;
          img[1 + c] = 1 + v;
        }
        if (!ok) continue;
        // wait: img[1] corresponds to c = 0 which must stay 0
        Permutation cand(img);
        if (!preserves_code(code, cand)) continue;
        if (psl.contains(cand)) continue;
        delta = cand;
        found = true;
        printf("delta: k=%d a=%d b=%d  %s\n", k, a, b, cand.cycle_string().c_str());
      }
  if (!found) {
    fprintf(stderr, "golay: no monomial extension found\n");
    exit(1);
  }

  PermGroup m24(24, {alpha, gamma, delta});
  Integer m24_order = m24.order();
  printf("M24 candidate order: %s\n", m24_order.str().c_str());
  if (m24_order != 244823040 || !is_k_transitive(m24, 5)) {
    fprintf(stderr, "golay: M24 certification failed\n");
    exit(1);
  }
  printf("M24 certified: order 244823040, 5-transitive\n");

  // stabilizer chain with base 0,1: M23, M22 on the remaining points
  std::vector<Point> base01{0, 1};
  PermGroup rebased = m24.with_base(base01);
  std::vector<Permutation> m23_gens = rebased.chain().level_generators(1);
  std::vector<Permutation> m22_gens = rebased.chain().level_generators(2);
  std::vector<Point> pts23, pts22;
  for (Point i = 1; i < 24; ++i) pts23.push_back(i);
  for (Point i = 2; i < 24; ++i) pts22.push_back(i);
  std::vector<Permutation> m23r, m22r;
  for (const auto& g : m23_gens) m23r.push_back(restrict_to(g, pts23));
  for (const auto& g : m22_gens) m22r.push_back(restrict_to(g, pts22));

  // dodecad stabilizer: M12 on its 12 points
  Golay g2 = code;
  uint32_t dodecad = 0;
  for (uint32_t mask = 1; mask < 4096 && !dodecad; ++mask) {
    uint32_t w = 0;
    for (int i = 0; i < 12; ++i)
      if (mask & (1u << i)) w ^= g2.basis[i];
    if (__builtin_popcount(w) == 12) dodecad = w;
  }
  std::vector<Point> dpoints;
  for (int i = 0; i < 24; ++i)
    if (dodecad & (1u << i)) dpoints.push_back(i);
  printf("dodecad:");
  for (Point p : dpoints) printf(" %u", p);
  printf("\n");
  PermGroup m12big = set_stabilizer(m24, dpoints);
  printf("dodecad stabilizer order: %s\n", m12big.order().str().c_str());
  std::vector<Permutation> m12r;
  for (const auto& g : m12big.generators()) m12r.push_back(restrict_to(g, dpoints));
  PermGroup m12(12, m12r);
  if (m12.order() != 95040 || !is_k_transitive(m12, 5)) {
    fprintf(stderr, "golay: M12 certification failed\n");
    exit(1);
  }
  PermGroup m12b = m12.with_base(std::vector<Point>{0});
  std::vector<Permutation> m11_gens = m12b.chain().level_generators(1);
  std::vector<Point> pts11;
  for (Point i = 1; i < 12; ++i) pts11.push_back(i);
  std::vector<Permutation> m11r;
  for (const auto& g : m11_gens) m11r.push_back(restrict_to(g, pts11));

  auto verify = [&](uint32_t deg, const std::vector<Permutation>& gens, Integer order,
                    uint32_t trans) {
    PermGroup g(deg, gens);
    if (g.order() != order || !is_k_transitive(g, trans)) {
      fprintf(stderr, "certification failed for degree %u\n", deg);
      exit(1);
    }
  };
  verify(23, m23r, 10200960, 4);
  verify(22, m22r, 443520, 3);
  verify(11, m11r, 7920, 4);

  printf("\n// frozen data (paste into mathieu_data.cpp):\n");
  printf("{11, \"%s\"},\n", gens_string(m11r).c_str());
  printf("{12, \"%s\"},\n", gens_string(m12r).c_str());
  printf("{22, \"%s\"},\n", gens_string(m22r).c_str());
  printf("{23, \"%s\"},\n", gens_string(m23r).c_str());
  printf("{24, \"%s\"},\n", gens_string({alpha, gamma, delta}).c_str());
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    fprintf(stderr, "usage: facta-discover <golay|...>\n");
    return 2;
  }
  std::string cmd = argv[1];
  if (cmd == "golay") {
    cmd_golay();
    return 0;
  }
  fprintf(stderr, "unknown subcommand '%s'\n", cmd.c_str());
  return 2;
}
