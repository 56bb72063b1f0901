#include "doctest.h"

#include <sstream>

#include "plinth/actions.hpp"
#include "plinth/catalog.hpp"
#include "plinth/cosets.hpp"
#include "plinth/group.hpp"
#include "plinth/io.hpp"
#include "plinth/isom.hpp"
#include "plinth/subgroups.hpp"

using namespace plinth;

namespace {

Group psl32_on_7() {
  Field f2 = FiniteField::make(2, 1);
  return projective_action(3, f2, as_semilinear(sl_generators(3, f2))).image();
}

Group psl25_on_6() {
  Field f5 = FiniteField::make(5, 1);
  return projective_action(2, f5, as_semilinear(sl_generators(2, f5))).image();
}

}  // namespace

TEST_CASE("group order via the stabilizer chain") {
  Group s4(4, {Perm({1, 2, 3, 0}), Perm({1, 0, 2, 3})});
  CHECK(s4.order() == 24);
  CHECK(psl32_on_7().order() == 168);
  Group m11 = ingest_generators(std::string(PLINTH_DATA_DIR) + "/m11_11.perm");
  CHECK(m11.order() == 7920);
}

TEST_CASE("orbits") {
  Group a5 = alternating_group(5);
  CHECK(a5.orbit(0).size() == 5);
  Group id3(6, {Perm::identity(6)});
  CHECK(id3.orbit(3) == std::vector<Pt>{3});
  Group sw(4, {Perm({1, 0, 3, 2})});
  auto orb = sw.orbit(2);
  std::sort(orb.begin(), orb.end());
  CHECK(orb == std::vector<Pt>{2, 3});
}

TEST_CASE("point stabilizers") {
  Group p6 = psl25_on_6();
  for (Pt p = 0; p < 6; ++p) CHECK(p6.stabilizer(p).order() == 10);
  Group s4(4, {Perm({1, 2, 3, 0}), Perm({1, 0, 2, 3})});
  CHECK(s4.stabilizer(0).order() == 6);
  Group a5 = alternating_group(5);
  Group st = a5.stabilizer(4);
  CHECK(st.order() == 12);
  for (const Perm& g : st.gens()) CHECK(g[4] == 4);
}

TEST_CASE("rank") {
  CHECK(psl25_on_6().rank() == 2);
  Group intrans(4, {Perm({1, 0, 2, 3})});
  CHECK_THROWS_AS(intrans.rank(), not_transitive_error);
}

TEST_CASE("minimal block systems") {
  Group a5 = alternating_group(5);
  CHECK(minimal_block_systems(a5).empty());
  Group c4(4, {Perm({1, 2, 3, 0})});
  auto mbs = minimal_block_systems(c4);
  REQUIRE(mbs.size() == 1);
  CHECK(mbs[0].cell_size() == 2);
  CHECK(mbs[0].cell_count() == 2);
}

TEST_CASE("quotient on blocks") {
  Group c6(6, {Perm({1, 2, 3, 4, 5, 0})});
  BlockSystem bs = block_system_from_cell_map({0, 1, 2, 0, 1, 2});
  ActionQuotient q = quotient_on_blocks(c6, bs);
  CHECK(q.quotient.order() == 3);
  CHECK(q.kernel.order() == 2);
  // singleton blocks: quotient is the group itself
  BlockSystem singles = block_system_from_cell_map({0, 1, 2, 3, 4, 5});
  ActionQuotient q2 = quotient_on_blocks(c6, singles);
  CHECK(q2.quotient.order() == 6);
  CHECK(q2.kernel.order() == 1);
  // non-invariant blocks rejected
  BlockSystem bad = block_system_from_cell_map({0, 0, 1, 1, 2, 2});
  CHECK_THROWS_AS(quotient_on_blocks(c6, bad), blocks_not_invariant_error);
}

TEST_CASE("centralizer of a transitive group") {
  // PSL(2,5) on the 12 cosets of a C5 inside a point stabilizer
  Group p6 = psl25_on_6();
  Group r = unique_normal_with_quotient(p6.stabilizer(0), 2);  // C5 in D10
  CHECK(r.order() == 5);
  Group m12 = coset_action(p6, r).image();
  Group c = centralizer_of_transitive(m12);
  CHECK(c.order() == 2);
  for (const Perm& x : c.gens())
    for (const Perm& g : m12.gens()) CHECK(x * g == g * x);
  // A5 on 15 cosets of V4: centralizer C3
  Group a5 = alternating_group(5);
  Group v4 = derived_subgroup(a5.stabilizer(0));
  Group m15 = coset_action(a5, v4).image();
  CHECK(centralizer_of_transitive(m15).order() == 3);
  // PSL(3,2) on 42 cosets of a Klein subgroup: nonabelian centralizer S3
  Group p7 = psl32_on_7();
  Group v4b = derived_subgroup(derived_subgroup(p7.stabilizer(0)));
  CHECK(v4b.order() == 4);
  Group m42 = coset_action(p7, v4b).image();
  Group c6 = centralizer_of_transitive(m42);
  CHECK(c6.order() == 6);
  bool abelian = true;
  for (const Perm& a : c6.gens())
    for (const Perm& b : c6.gens())
      if (!(a * b == b * a)) abelian = false;
  CHECK_FALSE(abelian);
  // semiregularity
  for (const Perm& e : c6.elements())
    if (!e.is_identity()) CHECK(e.first_moved() == 0);
  // witness that fails to normalize is rejected
  std::vector<Perm> bad{m12.gens()[0]};
  bool rejected = false;
  try {
    centralizer_of_transitive(m12, &bad);
  } catch (const witness_not_normalizing_error&) {
    rejected = true;
  } catch (const domain_error&) {
    rejected = true;  // non-normalizing witnesses may also fail the c-map
  }
  CHECK(rejected);
}

TEST_CASE("coset actions") {
  Group m11 = ingest_generators(std::string(PLINTH_DATA_DIR) + "/m11_11.perm");
  Group r = derived_subgroup(m11.stabilizer(0));
  CosetAction act = coset_action(m11, r);
  CHECK(act.degree == 22);
  CHECK(act.image().order() == 7920);
  // R = m gives degree 1
  CHECK(coset_action(m11, m11).degree == 1);
  // a non-subgroup is rejected
  Group other(11, {Perm({1, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10})});
  CHECK_THROWS_AS(coset_action(m11, other), not_subgroup_error);
  // the degree cap guards huge indices
  Group triv = Group::trivial(11);
  CHECK_THROWS_AS(coset_action(m11, triv, 100), index_overflow_error);
}

TEST_CASE("normal subgroup enumeration") {
  Group s4(4, {Perm({1, 2, 3, 0}), Perm({1, 0, 2, 3})});
  auto ns = normal_subgroups_up_to_index(s4, 24);
  REQUIRE(ns.size() == 4);
  CHECK(ns[0].order() == 1);
  CHECK(ns[1].order() == 4);
  CHECK(ns[2].order() == 12);
  CHECK(ns[3].order() == 24);
  // D10 = stabilizer of PSL(2,5) on 6: index <= 2 gives D10 and C5
  Group d10 = psl25_on_6().stabilizer(0);
  auto ns2 = normal_subgroups_up_to_index(d10, 2);
  REQUIRE(ns2.size() == 2);
  CHECK(ns2[0].order() == 5);
  CHECK(ns2[1].order() == 10);
  // PSL(2,25) stabilizer [5^2] x| C12: kernels of index 2 and 3 exist
  Field f25 = FiniteField::make(5, 2);
  Group p26 = projective_action(2, f25, as_semilinear(sl_generators(2, f25))).image();
  Group stab = p26.stabilizer(0);
  CHECK(stab.order() == 300);
  auto ns3 = normal_subgroups_up_to_index(stab, 3);
  bool has2 = false, has3 = false;
  for (auto& n : ns3) {
    if (stab.order() / n.order() == 2) has2 = true;
    if (stab.order() / n.order() == 3) has3 = true;
  }
  CHECK(has2);
  CHECK(has3);
  CHECK_THROWS_AS(normal_subgroups_up_to_index(p26, 2, 1000), group_too_large_error);
}

TEST_CASE("minimal normal subgroups") {
  // C2 x PSL(2,5) in its degree-12 coset action
  Group p6 = psl25_on_6();
  Group r = unique_normal_with_quotient(p6.stabilizer(0), 2);
  Group m12 = coset_action(p6, r).image();
  std::vector<Perm> gens = m12.gens();
  Group cent = centralizer_of_transitive(m12);
  for (const Perm& c : cent.gens()) gens.push_back(c);
  Group g(12, gens);
  CHECK(g.order() == 120);
  auto mins = minimal_normal_subgroups(g);
  REQUIRE(mins.size() == 2);
  CHECK(mins[0].order() == 2);
  CHECK(mins[1].order() == 60);
  CHECK_FALSE(mins[0].is_transitive());
  CHECK(mins[1].is_transitive());
  // a simple group is its own minimal normal subgroup
  auto m2 = minimal_normal_subgroups(alternating_group(5));
  REQUIRE(m2.size() == 1);
  CHECK(m2[0].order() == 60);
  // regular Klein group: three subgroups of order 2
  Group v4(4, {Perm({1, 0, 3, 2}), Perm({2, 3, 0, 1})});
  CHECK(minimal_normal_subgroups(v4).size() == 3);
}

TEST_CASE("intermediate subgroups") {
  Group s4(4, {Perm({1, 2, 3, 0}), Perm({1, 0, 2, 3})});
  auto all = intermediate_subgroups(s4, s4);
  REQUIRE(all.size() == 1);
  CHECK(all[0].order() == 24);
  Group v4 = derived_subgroup(derived_subgroup(s4));
  CHECK(intermediate_subgroups(s4, v4).size() == 6);  // V4, three D8, A4, S4
  Group a4 = derived_subgroup(s4);
  auto two = intermediate_subgroups(s4, a4);
  REQUIRE(two.size() == 2);
  CHECK(two[0].order() == 12);
  CHECK(two[1].order() == 24);
  CHECK_THROWS_AS(intermediate_subgroups(s4, Group::trivial(4), 8), index_too_large_error);

  // degree-20 normalizer over its centralizer-times-plinth subgroup
  BuiltEntry b20 = build::scaled_linear(2, 3, 2, 2);
  std::vector<Perm> hgens = b20.m.gens();
  Group cent20 = centralizer_of_transitive(b20.m);
  for (const Perm& c : cent20.gens()) hgens.push_back(c);
  Group h20(20, hgens);
  CHECK(h20.order() == 720);
  auto mids = intermediate_subgroups(b20.n, h20);
  REQUIRE(mids.size() == 5);
  std::multiset<std::uint64_t> orders;
  for (auto& k : mids) orders.insert(k.order());
  CHECK(orders == std::multiset<std::uint64_t>{720, 1440, 1440, 1440, 2880});
}

TEST_CASE("permutational isomorphism") {
  Group a5 = alternating_group(5);
  IsoResult self = perm_isomorphic(a5, a5);
  REQUIRE(self.status == IsoStatus::found);
  for (const Perm& g : a5.gens()) CHECK(a5.contains(g.conjugated_by(self.witness)));

  // rank separates the two degree-12 groups over the same plinth
  BuiltEntry b = build::scaled_linear(2, 5, 1, 2);
  Group h(12, [&] {
    std::vector<Perm> gens = b.m.gens();
    Group cent = centralizer_of_transitive(b.m);
    for (const Perm& c : cent.gens()) gens.push_back(c);
    return gens;
  }());
  // h = C2 x PSL(2,5) has rank 4; the full group has rank 3 but order 240,
  // so compare h against an order-matched rank-3 subgroup: the fingerprint
  // report should name the mismatch.
  std::string why;
  CHECK_FALSE(same_perm_fingerprint(h, b.n, &why));
  CHECK(why == "order mismatch");

  // the two flag coset actions: orders match, ranks (10 vs 9) separate
  Field f2 = FiniteField::make(2, 1);
  Group p7 = psl32_on_7();
  build::FlagDomain fd = build::psl32_flags();
  Group d8 = fd.psl.stabilizer(0);
  Group c4 = Group::trivial(21);
  Group v4 = Group::trivial(21);
  for (Group& k : elementary_abelian_quotient_kernels(d8, 2)) {
    if (d8.order() / k.order() != 2) continue;
    bool cyclic = false;
    for (const Perm& x : k.elements())
      if (x.element_order() == 4) cyclic = true;
    (cyclic ? c4 : v4) = k;
  }
  Group g79 = coset_action(fd.psl, c4).image();
  Group g80 = coset_action(fd.psl, v4).image();
  IsoResult flags = perm_isomorphic(g79, g80);
  CHECK(flags.status == IsoStatus::not_found);
}

TEST_CASE("pairs equivalence") {
  Group p6 = psl25_on_6();
  Group r = unique_normal_with_quotient(p6.stabilizer(0), 2);
  IsoResult same = pairs_equivalent(p6, r, 0, p6, r, 0);
  CHECK(same.status == IsoStatus::found);
  // moving sigma by x gives an equivalent pair, witnessed by conjugation
  Perm x = p6.gens()[0];
  Pt sigma2 = x[0];
  Group rx(6, [&] {
    std::vector<Perm> gens;
    for (const Perm& g : r.gens()) gens.push_back(g.conjugated_by(x));
    return gens;
  }());
  IsoResult moved = pairs_equivalent(p6, rx, sigma2, p6, r, 0);
  CHECK(moved.status == IsoStatus::found);
  // distinguished subgroups of different order can never match
  Field f25 = FiniteField::make(5, 2);
  Group p26 = projective_action(2, f25, as_semilinear(sl_generators(2, f25))).image();
  Group stab = p26.stabilizer(0);
  Group r2 = unique_normal_with_quotient(stab, 2);
  Group r3 = unique_normal_with_quotient(stab, 3);
  IsoResult diff = pairs_equivalent(p26, r2, 0, p26, r3, 0);
  CHECK(diff.status == IsoStatus::not_found);
}

TEST_CASE("permutation text format") {
  std::istringstream in("degree 5\n(0 1 2 3 4)\n1 2 0 3 4\n");
  Group g = parse_group_text(in);
  CHECK(g.order() == 60);
  std::string txt = format_group_text(g);
  std::istringstream back(txt);
  Group g2 = parse_group_text(back);
  CHECK(g2.order() == 60);
  std::istringstream bad("degree 4\n0 1 2\n");
  CHECK_THROWS_AS(parse_group_text(bad), parse_error);
  std::istringstream bad2("degree 4\n0 0 1 2\n");
  CHECK_THROWS_AS(parse_group_text(bad2), domain_error);
}
