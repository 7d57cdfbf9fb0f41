#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facta/atlas.hpp"

using namespace facta;
using namespace facta::atlas;
using arith::Integer;
using perm::PermGroup;

TEST_CASE("basic specs") {
  CHECK(build_group("Alt(9)").order() == 181440);
  CHECK(build_group("Sym(5)").order() == 120);
  CHECK(build_group("Cyclic(6)").order() == 6);
  CHECK(build_group("Dihedral(12)").order() == 12);
  CHECK(build_group("Alt(5)").order() == 60);
  CHECK(perm::is_k_transitive(build_group("Alt(9)"), 7));
  CHECK_THROWS_AS(build_group("Nope(3)"), argument_error);
}

TEST_CASE("products and explicit generators") {
  const PermGroup& g = build_group("Product(Alt(5),Cyclic(3))");
  CHECK(g.degree() == 8);
  CHECK(g.order() == 180);
  const PermGroup& h = build_group("Gens(5, \"(1 2 3 4 5); (1 2 3)\")");
  CHECK(h.order() == 60);
}

TEST_CASE("build is deterministic") {
  const Built& a = build("Sp(6,2)");
  const Built& b = build("Sp(6,2)");
  CHECK(&a == &b);  // cached
  CHECK(a.group.order() == 1451520);
  // fresh parse of an equivalent spelling gives identical generators
  const Built& c = build("Sp(6, 2)");
  CHECK(&a == &c);
}

TEST_CASE("classical specs and decorations") {
  CHECK(build_group("PSL(2,23)").order() == 6072);
  CHECK(build_group("PSL(2,23)").degree() == 24);
  CHECK(build_group("SL(2,8)").order() == 504);
  CHECK(build_group("PGammaL(2,8)").order() == 1512);
  CHECK(build_group("PGammaL(2,8)").degree() == 9);
  CHECK(build_group("SL(2,4).f").order() == 120);
  CHECK(build_group("Sp(4,4).f").order() == 1958400);
  CHECK(build_group("SU(4,4).f@nonsing").order() == Integer("4073472000"));
  CHECK(build_group("GOMinus(8,2)").degree() == 119);
  CHECK(build_group("OmegaPlus(8,2)").order() == 174182400);
  CHECK(build_group("OmegaPlus(8,2)").degree() == 135);
  CHECK(build_group("G2(2)").order() == 12096);
}

TEST_CASE("mathieu groups certified") {
  CHECK(build_group("Mathieu(11)").order() == 7920);
  CHECK(build_group("Mathieu(12)").order() == 95040);
  CHECK(build_group("Mathieu(22)").order() == 443520);
  CHECK(build_group("Mathieu(23)").order() == 10200960);
  CHECK(build_group("Mathieu(24)").order() == 244823040);
  CHECK(perm::is_k_transitive(build_group("Mathieu(24)"), 5));
  CHECK(perm::is_sharply_k_transitive(build_group("Mathieu(12)"), 5));
}

TEST_CASE("sharply two-transitive affine groups") {
  const PermGroup& h = build_group("SharplyTwoTransitive(11,1)");
  CHECK(h.degree() == 121);
  CHECK(h.order() == 14520);
  CHECK(perm::is_sharply_k_transitive(h, 2));

  const PermGroup& h29 = build_group("SharplyTwoTransitive(29,7)");
  CHECK(h29.order() == Integer(29) * 29 * 120 * 7);
  CHECK(perm::is_sharply_k_transitive(h29, 2));
}

TEST_CASE("recipes: stabilizers, words, checksums") {
  const Built& a5 = build("Alt(5)");
  SubgroupRecipe r;
  r.steps.push_back({RecipeStep::Kind::PointStabilizer, {0}, {}, {}});
  r.expected_order = 12;
  PermGroup a4 = evaluate_recipe(a5, r);
  CHECK(a4.order() == 12);

  r.expected_order = 13;  // wrong checksum must fail loudly
  CHECK_THROWS_AS(evaluate_recipe(a5, r), integrity_error);

  SubgroupRecipe words;
  words.steps.push_back({RecipeStep::Kind::GeneratorWords, {}, {"a"}, {}});
  words.expected_order = 3;
  CHECK(evaluate_recipe(a5, words).order() == 3);

  // derived subgroup of S5 is A5
  const Built& s5 = build("Sym(5)");
  SubgroupRecipe der;
  der.steps.push_back({RecipeStep::Kind::DerivedSubgroup, {}, {}, {}});
  der.expected_order = 60;
  CHECK(evaluate_recipe(s5, der).order() == 60);
}

TEST_CASE("recipe: embedded group and kernel of block action") {
  const Built& a9 = build("Alt(9)");
  SubgroupRecipe r;
  r.steps.push_back({RecipeStep::Kind::Group, {}, {}, "PSL(2,8)"});
  r.expected_order = 504;
  PermGroup h = evaluate_recipe(a9, r);
  CHECK(h.order() == 504);
  CHECK(h.is_subgroup_of(a9.group));

  // kernel of the block action of D12 on its 3 antipodal pairs: C2 x ...
  const Built& d12 = build("Dihedral(12)");
  SubgroupRecipe k;
  k.steps.push_back({RecipeStep::Kind::KernelOfBlockAction, {0, 3}, {}, {}});
  k.expected_order = 2;
  CHECK(evaluate_recipe(d12, k).order() == 2);
}

TEST_CASE("native: sl2 field extension subgroups") {
  const Built& sp44 = build("Sp(4,4).f");
  SubgroupRecipe r;
  r.steps.push_back({RecipeStep::Kind::Native, {}, {}, "sl2_field_ext"});
  r.expected_order = 16320;
  PermGroup k = evaluate_recipe(sp44, r);
  CHECK(k.order() == 16320);
  CHECK(k.is_subgroup_of(sp44.group));

  const Built& sp62 = build("Sp(6,2)");
  SubgroupRecipe r2;
  r2.steps.push_back({RecipeStep::Kind::Native, {}, {}, "sl2_field_ext"});
  r2.expected_order = 1512;
  PermGroup k2 = evaluate_recipe(sp62, r2);
  CHECK(k2.order() == 1512);  // SL2(8).3
  CHECK(k2.is_subgroup_of(sp62.group));
}
