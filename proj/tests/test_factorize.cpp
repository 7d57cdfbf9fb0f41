#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unordered_set>

#include "facta/atlas.hpp"
#include "facta/factorize.hpp"
#include "facta/hopf.hpp"

using namespace facta;
using namespace facta::factorize;
using atlas::build;
using atlas::build_group;
using arith::Integer;
using perm::PermGroup;
using perm::Permutation;

namespace {

PermGroup gens(uint32_t n, std::initializer_list<const char*> cycles) {
  std::vector<Permutation> g;
  for (auto* c : cycles) g.push_back(Permutation::parse_cycles(n, c));
  return PermGroup(n, std::move(g));
}

}  // namespace

TEST_CASE("trivial factorization G = G * 1") {
  const PermGroup& g = build_group("Alt(5)");
  PermGroup trivial(5);
  auto rep = verify_exact(g, g, trivial);
  CHECK(rep.is_factorization);
  CHECK(rep.is_exact);
}

TEST_CASE("A5 is not A4 * A4 (same copy)") {
  const PermGroup& a5 = build_group("Alt(5)");
  PermGroup a4 = a5.stabilizer(perm::Point(0));
  auto rep = verify_factorization(a5, a4, a4, Config::standard(), /*cross_check=*/true);
  CHECK(!rep.is_factorization);
  CHECK(!rep.is_exact);

  // Oracle: enumerate all products hk.
  auto elts = a4.elements(100);
  std::unordered_set<Permutation> products;
  for (const auto& h : elts)
    for (const auto& k : elts) products.insert(h * k);
  CHECK(products.size() < 60);
}

TEST_CASE("S5 = S4 * C5 exactly, with route agreement") {
  const PermGroup& s5 = build_group("Sym(5)");
  PermGroup s4 = s5.stabilizer(perm::Point(4));
  PermGroup c5 = gens(5, {"(1 2 3 4 5)"});
  auto rep = verify_factorization(s5, s4, c5, Config::standard(), true);
  CHECK(rep.is_factorization);
  CHECK(rep.is_exact);
  CHECK(rep.intersection_order.has_value());
  CHECK(*rep.intersection_order == 1);

  auto exact = verify_exact(s5, s4, c5);
  CHECK(exact.is_exact);
}

TEST_CASE("conjugation invariance of the verdict") {
  const PermGroup& s5 = build_group("Sym(5)");
  PermGroup s4 = s5.stabilizer(perm::Point(4));
  PermGroup c5 = gens(5, {"(1 2 3 4 5)"});
  uint64_t state = 31337;
  bool base = verify_factorization(s5, s4, c5).is_factorization;
  for (int i = 0; i < 10; ++i) {
    Permutation x = s5.random_element(state), y = s5.random_element(state);
    bool conj = verify_factorization(s5, s4.conjugate_by(x), c5.conjugate_by(y)).is_factorization;
    CHECK(conj == base);
  }
  // And a non-factorization stays one under conjugation.
  PermGroup a4 = build_group("Alt(5)").stabilizer(perm::Point(0));
  const PermGroup& a5 = build_group("Alt(5)");
  for (int i = 0; i < 5; ++i) {
    Permutation x = a5.random_element(state) , y = a5.random_element(state);
    CHECK(!verify_factorization(a5, a4.conjugate_by(x), a4.conjugate_by(y)).is_factorization);
  }
}

TEST_CASE("reduce_to_aligned on (S5, A5, S4, C5)") {
  const PermGroup& s5 = build_group("Sym(5)");
  const PermGroup& a5 = build_group("Alt(5)");
  PermGroup s4 = s5.stabilizer(perm::Point(4));
  PermGroup c5 = gens(5, {"(1 2 3 4 5)"});
  auto aligned = reduce_to_aligned(s5, a5, s4, c5);
  CHECK(aligned.G_star.order() == 60);   // A5
  CHECK(aligned.H_star.order() == 12);   // A4
  CHECK(aligned.K_star.order() == 5);    // C5
  // exactness is inherited
  auto rep = verify_exact(aligned.G_star, aligned.H_star, aligned.K_star);
  CHECK(rep.is_exact);

  // identity transformation when HL = KL = G already
  auto id = reduce_to_aligned(s5, s5, s4, c5);
  CHECK(id.G_star.order() == 120);
  CHECK(id.H_star.order() == 24);

  CHECK_THROWS_AS(reduce_to_aligned(s5, s4, s4, c5), argument_error);  // S4 not normal
}

TEST_CASE("order identity |L||HmeetK| = |G/L||HmeetL||KmeetL|") {
  const PermGroup& s5 = build_group("Sym(5)");
  const PermGroup& a5 = build_group("Alt(5)");
  PermGroup s4 = s5.stabilizer(perm::Point(4));
  // S5 = S4 * F20 with both factors covering S5 over A5.
  PermGroup f20 = gens(5, {"(1 2 3 4 5)", "(2 3 5 4)"});
  REQUIRE(f20.order() == 20);
  REQUIRE(verify_factorization(s5, s4, f20).is_factorization);
  CHECK(check_order_identity(s5, a5, s4, f20));
  CHECK(check_order_identity(s5, s5, s4, f20));

  // A 5-cycle is even, so C5 never covers S5 over A5: the hypothesis of the
  // identity fails and the check says so.
  PermGroup c5 = gens(5, {"(1 2 3 4 5)"});
  CHECK_THROWS_AS(check_order_identity(s5, a5, s4, c5), precondition_error);
  PermGroup a4 = build_group("Alt(5)").stabilizer(perm::Point(0));
  CHECK_THROWS_AS(check_order_identity(build_group("Alt(5)"), a4, a4, a4), precondition_error);
}

TEST_CASE("cor_order bounds") {
  auto c1 = check_cor_order(244823040, 40320, 6072, std::nullopt);
  CHECK(c1.half_bound);
  auto c2 = check_cor_order(1451520, 120, 12096, std::nullopt);
  CHECK(c2.half_bound);
  auto c3 = check_cor_order(60, 60, 1, std::nullopt);
  CHECK(c3.half_bound);
  auto c4 = check_cor_order(1451520, 120, 12096, 3u);  // Sp6(2) has rank 3
  CHECK(c4.rank_bound.has_value());
  CHECK(*c4.rank_bound);
  CHECK(c4.margin >= 0);
  // a failing case for contrast: tiny factors
  auto bad = check_cor_order(1451520, 2, 3, std::nullopt);
  CHECK(!bad.half_bound);
}

TEST_CASE("search_exact finds the A9 rows") {
  const atlas::Built& a9 = build("Alt(9)");
  std::vector<PermGroup> hs, ks;
  hs.push_back(PermGroup(9, build_group("PSL(2,8)").generators()));
  hs.push_back(PermGroup(9, build_group("PGammaL(2,8)").generators()));
  // (A5 x 3).2 and S5 x 1 inside A9
  ks.push_back(gens(9, {"(1 2 3 4 5)", "(1 2 3)", "(6 7 8)", "(1 2)(7 8)"}));
  ks.push_back(gens(9, {"(1 2 3 4 5)", "(1 2)(6 7)"}));
  REQUIRE(ks[0].order() == 360);
  REQUIRE(ks[1].order() == 120);

  auto res = search_exact(a9.group, hs, ks);
  REQUIRE(res.hits.size() == 2);
  CHECK(res.hits[0].h_index == 0);
  CHECK(res.hits[0].k_index == 0);  // PSL2(8) * (A5x3).2
  CHECK(res.hits[1].h_index == 1);
  CHECK(res.hits[1].k_index == 1);  // PGammaL2(8) * S5
  for (const auto& hit : res.hits) CHECK(hit.report.is_exact);
}

TEST_CASE("unipotent radical property by brute force") {
  auto r32 = brute_force_lemma_xia21(3, 2);
  CHECK(r32.order_U == 32);
  CHECK(r32.holds);
  auto r24 = brute_force_lemma_xia21(2, 4);
  CHECK(r24.order_U == 64);
  CHECK(r24.holds);
  CHECK_THROWS_AS(brute_force_lemma_xia21(2, 3), precondition_error);
  CHECK_THROWS_AS(brute_force_lemma_xia21(2, 2), precondition_error);
}

TEST_CASE("hopf: perfect and self-normalizing flags") {
  using namespace facta::hopf;
  CHECK(is_perfect(build_group("Alt(5)")));
  CHECK(!is_perfect(build_group("Sym(5)")));

  const PermGroup& a5 = build_group("Alt(5)");
  PermGroup a4 = a5.stabilizer(perm::Point(0));
  CHECK(is_self_normalizing(a5, a4));
  PermGroup v4 = gens(4, {"(1 2)(3 4)", "(1 3)(2 4)"});
  PermGroup a4n = gens(4, {"(1 2 3)", "(2 3 4)"});
  CHECK(!is_self_normalizing(a4n, v4));

  // (A9, PSL2(8), (A5x3).2): exact but K is not perfect
  const atlas::Built& a9 = build("Alt(9)");
  PermGroup h(9, build_group("PSL(2,8)").generators());
  PermGroup k = gens(9, {"(1 2 3 4 5)", "(1 2 3)", "(6 7 8)", "(1 2)(7 8)"});
  auto verdict = biperfect_check(a9.group, h, k);
  CHECK(verdict.exact);
  CHECK(verdict.h_perfect);
  CHECK(!verdict.k_perfect);
  CHECK(!verdict.biperfect);
}

TEST_CASE("hopf: mutual action tables on S5 = S4 * C5") {
  const PermGroup& s5 = build_group("Sym(5)");
  PermGroup s4 = s5.stabilizer(perm::Point(4));
  PermGroup c5 = gens(5, {"(1 2 3 4 5)"});
  auto t = hopf::mutual_action_tables(s5, s4, c5);
  CHECK(t.h_action.size() == 24);
  CHECK(t.h_action[0].size() == 5);
  // y * x = h * k reconstruction check on every pair
  auto hs = s4.elements(100), ks = c5.elements(100);
  for (uint32_t xi = 0; xi < 24; ++xi)
    for (uint32_t yi = 0; yi < 5; ++yi) {
      Permutation lhs = ks[yi] * hs[xi];
      Permutation rhs = hs[t.h_action[xi][yi]] * ks[t.k_action[xi][yi]];
      CHECK(lhs == rhs);
    }
}
