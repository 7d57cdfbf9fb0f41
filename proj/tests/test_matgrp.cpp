#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facta/matgrp.hpp"

using namespace facta;
using namespace facta::matgrp;
using arith::Family;
using arith::Integer;

TEST_CASE("field arithmetic basics") {
  auto f4 = Field::get(2, 2);
  // modulus x^2 + x + 1; codes: 2 = x, 3 = x + 1
  CHECK(f4->spec().modulus == std::vector<FF>{1, 1, 1});
  CHECK(f4->mul(2, 3) == 1);
  CHECK(f4->add(2, 3) == 1);
  CHECK(f4->inv(2) == 3);

  auto f2 = Field::get(2, 1);
  CHECK(f2->inv(1) == 1);
  CHECK(f2->add(1, 1) == 0);

  auto f9 = Field::get(3, 2);
  for (FF a = 0; a < 9; ++a) CHECK(f9->frob_pow(a, 2) == a);
  CHECK(f9->frobenius(f9->primitive()) != f9->primitive());

  // field axioms, spot-checked exhaustively on small fields
  for (auto F : {Field::get(2, 3), Field::get(5, 1), Field::get(3, 2)}) {
    for (FF a = 0; a < F->q(); ++a)
      for (FF b = 0; b < F->q(); ++b) {
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        if (b != 0) CHECK(F->mul(F->div(a, b), b) == a);
        for (FF c = 0; c < F->q(); ++c)
          CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      }
  }
  CHECK_THROWS_AS(Field(2, 2, {1, 0, 1}), argument_error);  // x^2+1 reducible
  CHECK(Field::get(2, 8)->q() == 256);
}

TEST_CASE("matrix arithmetic") {
  auto F = Field::get(2, 2);
  Mat a = Mat::identity(F, 3);
  a.at(0, 1) = 2;
  a.at(1, 2) = 3;
  Mat inv = a.inverse();
  CHECK((a * inv).is_identity());
  CHECK(a.det() == 1);
  Mat b = a.pow(6);
  CHECK((a * a * a * a * a * a) == b);
  CHECK(a.rank() == 3);
}

TEST_CASE("SL2(4) on projective points is A5") {
  MatGroup sl24 = classical_matrix_group(Family::SL, 2, 4);
  MatAction act = permutation_image(sl24, Action::projective_points);
  CHECK(act.degree == 5);
  CHECK(act.group.order() == 60);
  CHECK(act.group.is_transitive());
}

TEST_CASE("SL2(7): matrix group vs projective image orders") {
  MatGroup g = classical_matrix_group(Family::SL, 2, 7);
  MatAction act = permutation_image(g, Action::projective_points);
  CHECK(act.degree == 8);
  CHECK(act.group.order() == 168);  // PSL2(7), center of order 2 divided out
}

TEST_CASE("SL4(2) is A8 in its degree-15 action") {
  MatGroup g = classical_matrix_group(Family::SL, 4, 2);
  MatAction act = permutation_image(g, Action::projective_points);
  CHECK(act.degree == 15);
  Integer a8 = 20160;
  CHECK(act.group.order() == a8);
  CHECK(perm::is_k_transitive(act.group, 2));
}

TEST_CASE("Sp4(4) image order and Sp6(2) on nonzero vectors") {
  MatGroup sp44 = classical_matrix_group(Family::Sp, 4, 4);
  MatAction act = permutation_image(sp44, Action::projective_points);
  CHECK(act.degree == 85);
  CHECK(act.group.order() == 979200);

  MatGroup sp62 = classical_matrix_group(Family::Sp, 6, 2);
  MatAction vec = permutation_image(sp62, Action::nonzero_vectors);
  CHECK(vec.degree == 63);
  CHECK(vec.group.order() == 1451520);
  CHECK(vec.group.is_transitive());
}

TEST_CASE("orthogonal groups: type is certified by singular point counts") {
  MatGroup plus = classical_matrix_group(Family::GOPlus, 8, 2);
  MatAction ps = permutation_image(plus, Action::singular_points);
  CHECK(ps.degree == 135);  // (q^3+1)(q^4-1)/(q-1) for plus type
  CHECK(ps.group.is_transitive());
  CHECK(ps.group.order() == 348364800);

  MatGroup minus = classical_matrix_group(Family::GOMinus, 8, 2);
  MatAction ms = permutation_image(minus, Action::singular_points);
  CHECK(ms.degree == 119);  // (q^3-1)(q^4+1)/(q-1) for minus type
  CHECK(ms.group.is_transitive());
  CHECK(ms.group.order() == 394813440);

  // Omega = derived subgroup of GO, index 2 in characteristic 2.
  perm::PermGroup omega = perm::derived_subgroup(ms.group);
  CHECK(omega.order() == 197406720);
}

TEST_CASE("SU3(3) and SU3(4) image orders") {
  MatGroup su33 = classical_matrix_group(Family::SU, 3, 3);
  MatAction a33 = permutation_image(su33, Action::projective_points);
  CHECK(a33.degree == 91);
  CHECK(a33.group.order() == 6048);

  MatGroup su34 = classical_matrix_group(Family::SU, 3, 4);
  MatAction a34 = permutation_image(su34, Action::projective_points);
  CHECK(a34.degree == 273);
  CHECK(a34.group.order() == 62400);

  // nonsingular points of the unitary 3-space over GF(9): 63 of 91
  MatAction ns = permutation_image(su33, Action::nonsingular_points);
  MatAction si = permutation_image(su33, Action::singular_points);
  CHECK(ns.degree + si.degree == 91);
  CHECK(ns.group.is_transitive());
}

TEST_CASE("form preservation on random vector pairs") {
  uint64_t state = 12345;
  for (auto fam : {Family::Sp, Family::GOMinus, Family::SU}) {
    uint32_t dim = fam == Family::SU ? 3 : 4;
    uint64_t q = fam == Family::SU ? 3 : 4;
    MatGroup g = classical_matrix_group(fam, dim, q);
    const Field& F = *g.field;
    REQUIRE(g.form.has_value());
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<FF> u(dim), v(dim);
      for (uint32_t i = 0; i < dim; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        u[i] = (FF)((state >> 33) % F.q());
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        v[i] = (FF)((state >> 33) % F.q());
      }
      const auto& gen = g.gens[trial % g.gens.size()];
      auto uu = gen.m.apply(u), vv = gen.m.apply(v);
      CHECK(g.form->bilinear(uu, vv) == F.frob_pow(g.form->bilinear(u, v), gen.frob));
      if (g.form->kind == FormKind::quadratic)
        CHECK(g.form->quadratic(uu) == F.frob_pow(g.form->quadratic(u), gen.frob));
    }
  }
}

TEST_CASE("projective degree formula across constructed linear groups") {
  for (uint32_t n = 2; n <= 4; ++n)
    for (uint64_t q : {2, 3, 4, 5}) {
      MatGroup g = classical_matrix_group(Family::SL, n, q);
      MatAction act = permutation_image(g, Action::projective_points);
      uint64_t expect = 1, acc = 1;
      expect = 0;
      for (uint32_t i = 0; i < n; ++i) {
        expect += acc;
        acc *= q;
      }
      CHECK(act.degree == expect);
    }
}

TEST_CASE("adjoin_frobenius multiplies the image order by f") {
  MatGroup sl28 = classical_matrix_group(Family::SL, 2, 8);
  MatAction base = permutation_image(sl28, Action::projective_points);
  CHECK(base.degree == 9);
  CHECK(base.group.order() == 504);

  MatGroup gam = adjoin_frobenius(sl28);
  MatAction ext = permutation_image(gam, Action::projective_points);
  CHECK(ext.group.order() == 1512);  // PGammaL2(8)

  MatGroup sl24 = classical_matrix_group(Family::SL, 2, 4);
  MatAction s5 = permutation_image(adjoin_frobenius(sl24), Action::projective_points);
  CHECK(s5.group.order() == 120);
  CHECK_THROWS_AS(adjoin_frobenius(classical_matrix_group(Family::SL, 2, 2)), argument_error);
}

TEST_CASE("scalar restriction: SL2(16) inside GL4(4)") {
  MatGroup sl216 = classical_matrix_group(Family::SL, 2, 16);
  auto f4 = Field::get(2, 2);
  MatGroup emb = restrict_scalars(sl216, f4);
  CHECK(emb.dim == 4);
  CHECK(emb.field->q() == 4);
  for (const auto& g : emb.gens) CHECK(g.m.det() != 0);

  MatAction act = permutation_image(emb, Action::projective_points);
  CHECK(act.degree == 85);
  CHECK(act.group.order() == 4080);  // faithful: no F4-scalars in SL2(16)

  // With the F16 Frobenius adjoined upstairs the image gains a factor 4.
  MatGroup full = restrict_scalars(adjoin_frobenius(sl216), f4);
  MatAction act4 = permutation_image(full, Action::projective_points);
  CHECK(act4.group.order() == 16320);  // SL2(16).4
}

TEST_CASE("scalar restriction carries symplectic forms through the trace") {
  MatGroup sp28 = classical_matrix_group(Family::Sp, 2, 8);  // = SL2(8)
  auto f2 = Field::get(2, 1);
  MatGroup emb = restrict_scalars(sp28, f2);
  CHECK(emb.dim == 6);
  REQUIRE(emb.form.has_value());
  for (const auto& g : emb.gens) CHECK(emb.form->preserved_by(g.m, 0));

  // Standardize the trace form and check the conjugated group preserves the
  // standard alternating Gram.
  Mat r = symplectic_standardization(emb.form->matrix);
  MatGroup std_emb = emb.conjugated(r);
  Form std_form = standard_symplectic_form(f2, 6);
  CHECK(std_emb.form->matrix == std_form.matrix);
  for (const auto& g : std_emb.gens) CHECK(std_form.preserved_by(g.m, 0));

  MatAction act = permutation_image(std_emb, Action::nonzero_vectors);
  CHECK(act.degree == 63);
  CHECK(act.group.order() == 504);  // SL2(8) embedded in Sp6(2)
}

TEST_CASE("intertwiner space finds centralizing matrices") {
  auto F = Field::get(2, 2);
  MatGroup sl24 = classical_matrix_group(Family::SL, 2, 4);
  std::vector<Mat> as, bs;
  for (const auto& g : sl24.gens) {
    as.push_back(g.m);
    bs.push_back(g.m);
  }
  auto basis = intertwiner_space(as, bs);
  // Schur: the natural SL2(4)-module is absolutely irreducible, so the
  // centralizer algebra is the scalars.
  CHECK(basis.size() == 1);
}

TEST_CASE("antiflag action of SL3(2)") {
  MatGroup sl32 = classical_matrix_group(Family::SL, 3, 2);
  MatAction act = permutation_image(sl32, Action::antiflags);
  // 7 points, each avoided by 4 hyperplanes
  CHECK(act.degree == 28);
  CHECK(act.group.is_transitive());
  CHECK(act.group.order() == 168);

  MatGroup with_dual = adjoin_duality(sl32);
  MatAction act2 = permutation_image(with_dual, Action::antiflags);
  CHECK(act2.group.order() == 336);  // graph automorphism doubles it
}

#include "facta/octonion.hpp"

TEST_CASE("octonion algebra: norm is multiplicative and units behave") {
  for (uint32_t f = 1; f <= 2; ++f) {
    OctonionAlgebra O(Field::get(2, f));
    const Field& fl = *O.F;
    uint64_t state = 9;
    for (int t = 0; t < 300; ++t) {
      OctonionAlgebra::Elt x{}, y{};
      for (int i = 0; i < 8; ++i) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x[i] = (FF)((state >> 40) % fl.q());
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        y[i] = (FF)((state >> 40) % fl.q());
      }
      CHECK(O.norm(O.mul(x, y)) == fl.mul(O.norm(x), O.norm(y)));
      CHECK(O.mul(O.identity(), x) == x);
      CHECK(O.mul(x, O.identity()) == x);
    }
  }
}

TEST_CASE("G2(2) inside Sp6(2): order 12096 with SU3(3) derived subgroup") {
  MatGroup g2 = g2_matrix_group(2);
  CHECK(g2_order(2) == 12096);
  MatAction act = permutation_image(g2, Action::nonzero_vectors);
  CHECK(act.degree == 63);
  CHECK(act.group.order() == 12096);
  CHECK(act.group.is_transitive());
  // derived subgroup is SU3(3) of order 6048
  perm::PermGroup su33 = perm::derived_subgroup(act.group);
  CHECK(su33.order() == 6048);

  // lives inside the standard Sp6(2) after aligning the forms
  Mat r = symplectic_standardization(g2.form->matrix);
  MatGroup aligned = g2.conjugated(r);
  Form std6 = standard_symplectic_form(g2.field, 6);
  for (const auto& g : aligned.gens) CHECK(std6.preserved_by(g.m, 0));
}

TEST_CASE("G2(4) order certificate") {
  MatGroup g2 = g2_matrix_group(4);
  CHECK(g2_order(4) == 251596800);
  MatAction act = permutation_image(g2, Action::projective_points);
  CHECK(act.degree == 1365);
  perm::PermGroup grp = act.group;
  grp.expect_order(g2_order(4));
  CHECK(grp.order() == 251596800);
}
