#include "doctest.h"

#include "example_designs.hpp"
#include "plinth/catalog.hpp"
#include "plinth/classify.hpp"
#include "plinth/corpus.hpp"

using namespace plinth;
using plinth_testing::pg32_design;
using plinth_testing::z14_design;
using plinth_testing::z14_design_group;

namespace {

Group with_centralizer(const Group& m) {
  std::vector<Perm> gens = m.gens();
  Group cent = centralizer_of_transitive(m);
  for (const Perm& c : cent.gens()) gens.push_back(c);
  return Group(m.degree(), gens);
}

Group c2_x_psl25_on_12() {
  Field f5 = FiniteField::make(5, 1);
  Group p6 = projective_action(2, f5, as_semilinear(sl_generators(2, f5))).image();
  Group r = unique_normal_with_quotient(p6.stabilizer(0), 2);
  return with_centralizer(coset_action(p6, r).image());
}

}  // namespace

TEST_CASE("innately transitive detection") {
  Group g12 = c2_x_psl25_on_12();
  PitResult pit = detect_pit(g12);
  REQUIRE(pit.kind == PitKind::proper);
  CHECK(pit.decomp->r == 2);
  CHECK(pit.decomp->sigma.cell_count() == 6);
  CHECK(pit.decomp->plinth.order() == 60);
  CHECK(pit.decomp->kernel.order() == 2);  // the kernel on the cells is exactly C

  CHECK(detect_pit(alternating_group(5)).kind == PitKind::quasiprimitive);

  Group a5 = alternating_group(5);
  Group v4 = derived_subgroup(a5.stabilizer(0));
  Group g15 = with_centralizer(coset_action(a5, v4).image());
  PitResult pit15 = detect_pit(g15);
  REQUIRE(pit15.kind == PitKind::proper);
  CHECK(pit15.decomp->r == 3);

  Group s4(4, {Perm({1, 2, 3, 0}), Perm({1, 0, 2, 3})});
  PitResult pit4 = detect_pit(s4);
  CHECK(pit4.kind == PitKind::abelian_plinth);
  CHECK(pit4.plinth_order == 4);

  Group intrans(4, {Perm({1, 0, 2, 3})});
  CHECK_THROWS_AS(detect_pit(intrans), not_transitive_error);
}

TEST_CASE("the enriched quotient map") {
  Group g12 = c2_x_psl25_on_12();
  PitResult pit = detect_pit(g12);
  PhiHat ph = phi_hat(*pit.decomp);
  CHECK(ph.quotient.order() == 60);
  CHECK(ph.quotient.degree() == 6);
  CHECK(ph.r_sigma.order() == 5);  // C5 normal in the D10 cell stabilizer
  Group msig = pit.decomp->plinth_quotient.stabilizer(ph.sigma);
  CHECK(msig.order() == 10);

  // the degree-14 group: R^Sigma is the A4 inside an S4 stabilizer
  Field f2 = FiniteField::make(2, 1);
  Group p7 = projective_action(3, f2, as_semilinear(sl_generators(3, f2))).image();
  Group a4 = derived_subgroup(p7.stabilizer(0));
  Group g14 = with_centralizer(coset_action(p7, a4).image());
  PitResult pit14 = detect_pit(g14);
  REQUIRE(pit14.kind == PitKind::proper);
  PhiHat ph14 = phi_hat(*pit14.decomp);
  CHECK(ph14.r_sigma.order() == 12);
}

TEST_CASE("special pair definition") {
  Group s5 = corpus_detail::symmetric_group(5);
  Group a5 = alternating_group(5);
  Group v4 = derived_subgroup(a5.stabilizer(0));
  SpecialPairVerdict v = is_special_pair(s5, v4, 0);
  CHECK(v.holds);
  CHECK(v.p == 3);
  CHECK(v.c == 1);
  SpecialPairVerdict va = is_special_pair(a5, v4, 0);
  CHECK_FALSE(va.holds);
  CHECK(va.failed == SpecialFailure::conjugationNotTransitive);

  QuadraticFormActions qf = quadratic_form_action(3);
  Group sp36 = qf.plus.image();
  Group omega_plus = unique_normal_with_quotient(sp36.stabilizer(0), 2);
  SpecialPairVerdict vs = is_special_pair(sp36, omega_plus, 0);
  CHECK(vs.holds);
  CHECK(vs.p == 2);

  CHECK_THROWS_AS(is_special_pair(s5, v4, 1), sigma_not_fixed_error);

  // a rank-3 action fails 2-transitivity
  SubsetAction pairs = subset_action(a5, 2);
  Group r3 = derived_subgroup(pairs.image.stabilizer(0));
  SpecialPairVerdict vp = is_special_pair(pairs.image, r3, 0);
  CHECK_FALSE(vp.holds);
  CHECK(vp.failed == SpecialFailure::not2transitive);
}

TEST_CASE("arithmetic predicate for the classification table") {
  Table1Instance t;
  t.line = 2;
  t.d = 2;
  t.q0 = 3;
  t.a = 2;
  t.r = 2;
  t.j = 1;
  CHECK(table1_predicate(t));
  t.q0 = 13;
  t.a = 1;
  t.r = 3;
  CHECK_FALSE(table1_predicate(t));  // the order of 13 mod 3 is 1, not 2
  Table1Instance u;
  u.line = 4;
  u.q0 = 2;
  u.a = 2;
  u.r = 3;
  u.j = 1;
  CHECK(table1_predicate(u));
  Table1Instance bad;
  bad.line = 11;
  bad.r = 2;
  CHECK_THROWS_AS(table1_predicate(bad), unknown_line_error);
}

TEST_CASE("brute-force special scan") {
  Group s5 = corpus_detail::symmetric_group(5);
  int special = 0;
  for (auto& item : oracle_special_scan(s5))
    if (item.verdict.holds) {
      ++special;
      CHECK(item.quotient_order == 3);
      CHECK(item.r_sub.order() == 4);
    }
  CHECK(special == 1);

  Field f7 = FiniteField::make(7, 1);
  Group pgl27 = projective_action(2, f7, as_semilinear(gl_generators(2, f7))).image();
  for (auto& item : oracle_special_scan(pgl27)) CHECK_FALSE(item.verdict.holds);

  Field f9 = FiniteField::make(3, 2);
  std::vector<Semilinear> gens = as_semilinear(gl_generators(2, f9));
  gens.push_back(Semilinear(1, Mat::identity(f9, 2)));
  Group pgammal29 = projective_action(2, f9, gens).image();
  CHECK(pgammal29.order() == 1440);
  int special29 = 0;
  for (auto& item : oracle_special_scan(pgammal29))
    if (item.verdict.holds) {
      ++special29;
      CHECK(item.quotient_order == 2);
    }
  CHECK(special29 == 1);
}

TEST_CASE("rank-3 criteria agree") {
  Group a5 = alternating_group(5);
  Group v4 = derived_subgroup(a5.stabilizer(0));
  CosetDomain dom(a5, v4);
  Group n15 = normalizer_over_plinth(dom, {{"transposition", Perm({1, 0, 2, 3, 4})}});
  PitResult pit = detect_pit(n15);
  REQUIRE(pit.kind == PitKind::proper);
  Rank3Criteria crit = rank3_criteria(n15, *pit.decomp);
  CHECK(crit.rank == 3);
  CHECK(crit.special_precondition);
  CHECK(crit.b_alpha_transitive_outside);
  CHECK(crit.c_cellwise_transitive);
  CHECK(crit.d_product_transitive);
  CHECK(crit.e_factorization);
  CHECK(crit.all_agree);

  Group g12 = c2_x_psl25_on_12();
  PitResult pit12 = detect_pit(g12);
  Rank3Criteria crit12 = rank3_criteria(g12, *pit12.decomp);
  CHECK(crit12.rank == 4);
  CHECK(crit12.special_precondition);
  CHECK_FALSE(crit12.b_alpha_transitive_outside);
  CHECK_FALSE(crit12.c_cellwise_transitive);
  CHECK_FALSE(crit12.d_product_transitive);
  CHECK_FALSE(crit12.e_factorization);
  CHECK(crit12.all_agree);
}

TEST_CASE("partial linear space verification") {
  IncidenceStructure s = z14_design();
  Group aut = z14_design_group();
  CHECK(aut.order() == 336);
  PlsReport rep = verify_pls(s, aut);
  CHECK(rep.valid);
  CHECK(rep.line_size == 4);
  CHECK(rep.replication == 4);
  CHECK(rep.group_preserves);
  CHECK(rep.rank == 3);
  CHECK(rep.orbitals_match_collinearity);
  PitResult pit = detect_pit(aut);
  REQUIRE(pit.kind == PitKind::proper);
  CHECK(pit.decomp->r == 2);
  CHECK(pit.decomp->plinth.order() == 168);

  auto pg = pg32_design();
  BuiltEntry gl = build::gamma_l24_vectors();
  CHECK(gl.n.order() == 360);
  PlsReport rep2 = verify_pls(pg.minus_spread, gl.n);
  CHECK(rep2.valid);
  CHECK(rep2.line_size == 3);
  CHECK(rep2.group_preserves);
  CHECK(rep2.rank == 3);
  CHECK(rep2.orbitals_match_collinearity);

  // the full line set is a linear space, not a partial one
  PlsReport rep3 = verify_pls(pg.all_lines, gl.n);
  CHECK_FALSE(rep3.valid);
  CHECK(rep3.violation == "every pair collinear: a linear space");
}
