#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plinth/actions.hpp"
#include "plinth/catalog.hpp"
#include "plinth/classify.hpp"

namespace plinth {

/// A 2-transitive test-corpus member: the group, and the arithmetic-table
/// parametrization of its socle used to predict special quotient orders.
struct CorpusMember {
  std::string name;
  Group x = Group::trivial(1);
  // Predicate instance for a candidate prime r. line 0 means "no table line
  // applies" (predicted: no special pair for any r).
  std::function<Table1Instance(std::uint64_t r)> instance;
};

namespace corpus_detail {

inline Group projective_psl2(std::uint32_t q0, std::uint32_t a) {
  Field f = FiniteField::make(q0, a);
  return projective_action(2, f, as_semilinear(sl_generators(2, f))).image();
}

inline Group projective_pgl2(std::uint32_t q0, std::uint32_t a) {
  Field f = FiniteField::make(q0, a);
  return projective_action(2, f, as_semilinear(gl_generators(2, f))).image();
}

inline Group symmetric_group(Pt n) {
  std::vector<Pt> cyc(n), swap01(n);
  for (Pt i = 0; i < n; ++i) {
    cyc[i] = (i + 1) % n;
    swap01[i] = i;
  }
  swap01[0] = 1;
  swap01[1] = 0;
  return Group(n, {Perm(cyc), Perm(swap01)});
}

}  // namespace corpus_detail

/// M11 in its second 2-transitive action, of degree 12: the coset action on a
/// subgroup of order 660 found as <11-element, involution>.
inline Group m11_on_12(const Group& m11) {
  Perm x = first_element_of_order(m11, 11);
  for (const Perm& t : m11.elements()) {
    if (t.element_order() != 2) continue;
    Group cand(m11.degree(), {x, t});
    if (cand.order() == 660) return coset_action(m11, cand).image();
  }
  throw domain_error("m11_on_12: no order-660 subgroup found");
}

/// The full semilinear group of the degree-9 projective line over GF(8),
/// acting 2-transitively on the 28 cosets of a Sylow-3 normalizer.
inline Group pgammal28_on_28() {
  Field f8 = FiniteField::make(2, 3);
  std::vector<Semilinear> gens = as_semilinear(sl_generators(2, f8));
  std::size_t sl_count = gens.size();
  gens.push_back(Semilinear(1, Mat::identity(f8, 2)));
  LabeledAction p9 = projective_action(2, f8, gens);
  Group x = p9.image();  // order 1512 on 9 points
  Group psl(9, std::vector<Perm>(p9.gen_images.begin(), p9.gen_images.begin() + sl_count));
  Group syl(9, {first_element_of_order(psl, 9)});
  Group n = normalizer_in(x, syl);
  Group out = coset_action(x, n).image();
  if (out.degree() != 28 || out.order() != 1512)
    throw domain_error("pgammal28_on_28: construction sanity check failed");
  return out;
}

/// The desk corpus of 2-transitive groups for the oracle-versus-predicate
/// agreement suite.
inline std::vector<CorpusMember> two_transitive_corpus(const std::string& data_dir) {
  std::vector<CorpusMember> out;
  auto line = [](int ln, std::uint32_t d, std::uint32_t q0, std::uint32_t a, std::uint32_t j,
                 int eps = 0, bool full_sym = false) {
    return [=](std::uint64_t r) {
      Table1Instance t;
      t.line = ln;
      t.d = d;
      t.q0 = q0;
      t.a = a;
      t.r = r;
      t.j = j;
      t.eps = eps;
      t.full_sym = full_sym;
      return t;
    };
  };
  auto none = []() {
    return [](std::uint64_t r) {
      Table1Instance t;
      t.line = 0;
      t.r = r;
      return t;
    };
  };

  out.push_back({"A5 on 5", alternating_group(5), line(1, 0, 0, 0, 0, 0, false)});
  out.push_back({"S5 on 5", corpus_detail::symmetric_group(5), line(1, 0, 0, 0, 0, 0, true)});
  struct P {
    std::uint32_t q0, a, j_psl;
  };
  for (P p : std::vector<P>{{2, 2, 2}, {5, 1, 1}, {7, 1, 1}, {2, 3, 3}, {3, 2, 2},
                            {11, 1, 1}, {13, 1, 1}, {17, 1, 1}}) {
    std::uint32_t q = 1;
    for (std::uint32_t i = 0; i < p.a; ++i) q *= p.q0;
    out.push_back({"PSL(2," + std::to_string(q) + ") on " + std::to_string(q + 1),
                   corpus_detail::projective_psl2(p.q0, p.a), line(2, 2, p.q0, p.a, p.j_psl)});
    out.push_back({"PGL(2," + std::to_string(q) + ") on " + std::to_string(q + 1),
                   corpus_detail::projective_pgl2(p.q0, p.a), line(2, 2, p.q0, p.a, p.j_psl)});
  }
  {
    Field f2 = FiniteField::make(2, 1);
    out.push_back({"PSL(3,2) on 7",
                   projective_action(3, f2, as_semilinear(sl_generators(3, f2))).image(),
                   line(3, 3, 2, 1, 1)});
  }
  {
    Field f3 = FiniteField::make(3, 1);
    out.push_back({"PSL(3,3) on 13",
                   projective_action(3, f3, as_semilinear(sl_generators(3, f3))).image(),
                   line(2, 3, 3, 1, 1)});
  }
  {
    Group m11 = ingest_generators(data_dir + "/m11_11.perm", 7920);
    out.push_back({"M11 on 11", m11, line(8, 0, 0, 0, 0)});
    out.push_back({"M11 on 12", m11_on_12(m11), none()});
  }
  {
    QuadraticFormActions qf = quadratic_form_action(3);
    out.push_back({"Sp(6,2) on 36", qf.plus.image(), line(5, 3, 2, 1, 0, +1)});
    out.push_back({"Sp(6,2) on 28", qf.minus.image(), line(5, 3, 2, 1, 0, -1)});
  }
  {
    Field f9 = FiniteField::make(3, 2);
    out.push_back({"PSU(3,3) on 28",
                   scaled_isotropic_action(f9, 1, as_semilinear(su3_generators(f9))).image(),
                   line(4, 3, 3, 1, 2)});
  }
  out.push_back({"PGammaL(2,8) on 28", pgammal28_on_28(), line(7, 0, 0, 0, 0)});
  return out;
}

}  // namespace plinth
