#include "doctest.h"

#include "plinth/actions.hpp"
#include "plinth/catalog.hpp"
#include "plinth/corpus.hpp"

using namespace plinth;

TEST_CASE("projective point counts") {
  Field f5 = FiniteField::make(5, 1);
  CHECK(projective_action(2, f5, as_semilinear(sl_generators(2, f5))).degree == 6);
  Field f2 = FiniteField::make(2, 1);
  CHECK(projective_action(3, f2, as_semilinear(sl_generators(3, f2))).degree == 7);
  Field f3 = FiniteField::make(3, 1);
  CHECK(projective_action(3, f3, as_semilinear(sl_generators(3, f3))).degree == 13);
}

TEST_CASE("scaled projective actions") {
  BuiltEntry b12 = build::scaled_linear(2, 5, 1, 2);
  CHECK(b12.m.degree() == 12);
  CHECK(b12.m.order() == 60);
  CHECK(b12.n.order() == 240);
  BuiltEntry b20 = build::scaled_linear(2, 3, 2, 2);
  CHECK(b20.m.degree() == 20);
  CHECK(b20.n.order() == 2880);
  BuiltEntry b114 = build::scaled_linear(3, 7, 1, 2);
  CHECK(b114.m.degree() == 114);
  CHECK(b114.m.order() == 1876896);
  // r must divide q - 1
  Field f7 = FiniteField::make(7, 1);
  CHECK_THROWS_AS(scaled_projective_action(2, f7, 5, as_semilinear(sl_generators(2, f7))),
                  r_not_dividing_error);
}

TEST_CASE("scaled action cells are invariant and |Omega| = r |Sigma|") {
  BuiltEntry b = build::scaled_linear(2, 3, 2, 2);
  Group n = b.n;
  CHECK(n.degree() % 2 == 0);
  for (const Perm& g : n.gens())
    for (Pt u = 0; u < n.degree() / 2; ++u) CHECK(g[2 * u] / 2 == g[2 * u + 1] / 2);
}

TEST_CASE("scaled isotropic actions") {
  Field f9 = FiniteField::make(3, 2);
  std::vector<Semilinear> su = as_semilinear(su3_generators(f9));
  CHECK(scaled_isotropic_action(f9, 2, su).degree == 56);
  Field f16 = FiniteField::make(2, 4);
  CHECK(scaled_isotropic_action(f16, 3, as_semilinear(su3_generators(f16))).degree == 195);
  Field f25 = FiniteField::make(5, 2);
  CHECK(scaled_isotropic_action(f25, 2, as_semilinear(su3_generators(f25))).degree == 252);
}

TEST_CASE("quadratic form actions and zero counts") {
  QuadraticFormActions qf = quadratic_form_action(3);
  CHECK(qf.plus.degree == 36);
  CHECK(qf.minus.degree == 28);
  for (std::uint64_t t : qf.plus_tables) {
    unsigned zeros = 0;
    for (unsigned x = 0; x < 64; ++x)
      if (!((t >> x) & 1)) ++zeros;
    CHECK(zeros == 36);
  }
  QuadraticFormActions qf2 = quadratic_form_action(2);
  CHECK(qf2.minus.degree == 6);
}

TEST_CASE("dickson invariant") {
  Field f2 = FiniteField::make(2, 1);
  QuadraticFormActions qf = quadratic_form_action(3);
  std::uint64_t q0 = qf.plus_tables[0];
  CHECK(dickson_class(Mat::identity(f2, 6), q0) == 0);
  // a transvection T_v with Q(v) = 1 stabilizes Q and has rank(h - I) = 1
  bool found = false;
  for (const Mat& t : qf.sp_gens) {
    try {
      if (dickson_class(t, q0) == 1) {
        Mat diff = t;
        for (std::uint32_t i = 0; i < 6; ++i) diff.at(i, i) ^= 1;
        CHECK(diff.rank() == 1);
        found = true;
        break;
      }
    } catch (const not_in_stabilizer_error&) {
    }
  }
  CHECK(found);
  // a matrix outside the stabilizer is rejected
  bool rejected = false;
  for (const Mat& t : qf.sp_gens) {
    try {
      dickson_class(t, q0);
    } catch (const not_in_stabilizer_error&) {
      rejected = true;
      break;
    }
  }
  CHECK(rejected);
}

TEST_CASE("degree-56 action of the exceptional degree-28 family") {
  Ree3Line7 rl = ree3_line7_action();
  CHECK(rl.plinth9.order() == 504);
  CHECK(rl.sylow3.order() == 9);
  CHECK(rl.omega.degree == 56);
  CHECK(rl.sigma.degree == 28);
  CHECK(rl.omega.image().order() == 504);
  // R has three orbits of size 9 away from its fixed point
  Group r_on_28 = Group(28, [&] {
    std::vector<Perm> gens28;
    CosetDomain dom(rl.plinth9, normalizer_in(rl.plinth9, rl.sylow3));
    for (const Perm& g : rl.sylow3.gens()) gens28.push_back(dom.image_of(g));
    return gens28;
  }());
  std::vector<std::size_t> sizes;
  for (auto& orb : r_on_28.orbits()) sizes.push_back(orb.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 9, 9, 9});
}

TEST_CASE("automorphism lifting") {
  // inner lift: conjugation by a plinth element normalizes trivially
  Group a5 = alternating_group(5);
  Group v4 = derived_subgroup(a5.stabilizer(0));
  CosetDomain dom(a5, v4);
  Perm pi = lift_automorphism(dom, {"inner", a5.gens()[0]});
  Group momega = dom.action().image();
  CHECK(momega.contains(pi));  // inner lifts fall back into the plinth image

  // the transposition lift generates the degree-15 group of order 360
  Group n = normalizer_over_plinth(dom, {{"transposition", Perm({1, 0, 2, 3, 4})}});
  CHECK(n.order() == 360);
  CHECK(n.degree() == 15);
  CHECK(n.rank() == 3);

  // the diagonal lift on the degree-12 domain gives order 240
  Field f5 = FiniteField::make(5, 1);
  std::vector<Semilinear> gl = as_semilinear(gl_generators(2, f5));
  LabeledAction p6 = projective_action(2, f5, gl);
  Group psl(6, std::vector<Perm>(p6.gen_images.begin(), p6.gen_images.end() - 1));
  Perm delta = p6.gen_images.back();
  Group r = unique_normal_with_quotient(psl.stabilizer(0), 2);
  CosetDomain dom12(psl, r);
  Group n12 = normalizer_over_plinth(dom12, {{"diagonal", delta}});
  CHECK(n12.order() == 240);
  CHECK(n12.rank() == 3);
}

TEST_CASE("unliftable automorphisms contribute nothing") {
  // the duality moves the point-type Klein subgroup to the line-type class
  build::FlagDomain fd = build::psl32_flags();
  Group d8 = fd.psl.stabilizer(0);
  Group c4 = Group::trivial(21), v4 = Group::trivial(21);
  for (Group& k : elementary_abelian_quotient_kernels(d8, 2)) {
    if (d8.order() / k.order() != 2) continue;
    bool cyclic = false;
    for (const Perm& x : k.elements())
      if (x.element_order() == 4) cyclic = true;
    if (cyclic)
      c4 = k;
    else if (v4.order() == 1)
      v4 = k;
  }
  REQUIRE(c4.order() == 4);
  REQUIRE(v4.order() == 4);
  CosetDomain dom_c4(fd.psl, c4);
  CHECK_NOTHROW(lift_automorphism(dom_c4, {"duality", fd.duality}));
  CosetDomain dom_v4(fd.psl, v4);
  CHECK_THROWS_AS(lift_automorphism(dom_v4, {"duality", fd.duality}), not_liftable_error);
  // normalizer assembly degrades gracefully: the centralizer here is already
  // S3 (the Klein subgroup sits inside an S4), and the duality adds nothing
  Group n_v4 = normalizer_over_plinth(dom_v4, {{"duality", fd.duality}});
  CHECK(n_v4.order() == 1008);
}

TEST_CASE("coset domain elementwise images are a homomorphism") {
  Group a5 = alternating_group(5);
  Group r(5, {first_element_of_order(a5, 2)});
  CosetDomain dom(a5, r);
  Perm x = a5.gens()[0] * a5.gens()[1];
  Perm y = a5.gens()[1] * a5.gens()[0] * a5.gens()[1];
  CHECK(dom.image_of(x * y) == dom.image_of(x) * dom.image_of(y));
}
