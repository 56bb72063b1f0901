#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plinth/classical.hpp"
#include "plinth/cosets.hpp"
#include "plinth/group.hpp"
#include "plinth/matrix.hpp"

namespace plinth {

struct r_not_dividing_error : domain_error {
  using domain_error::domain_error;
};
struct not_liftable_error : domain_error {
  using domain_error::domain_error;
};

/// A named domain together with the permutation images of a generator list.
struct LabeledAction {
  std::string name;
  Pt degree = 0;
  std::vector<std::string> labels;
  std::vector<Perm> gen_images;
  Pt cell_size = 1;  // scaled actions: cells are contiguous blocks of this size

  Group image() const { return Group(degree, gen_images); }
};

namespace detail {

inline std::vector<std::uint32_t> decode_vector(std::uint64_t enc, std::uint32_t d,
                                                std::uint32_t q) {
  std::vector<std::uint32_t> v(d);
  for (std::uint32_t i = 0; i < d; ++i, enc /= q) v[i] = static_cast<std::uint32_t>(enc % q);
  return v;
}

inline std::uint64_t encode_vector(const std::vector<std::uint32_t>& v, std::uint32_t q) {
  std::uint64_t enc = 0;
  for (std::uint32_t i = v.size(); i-- > 0;) enc = enc * q + v[i];
  return enc;
}

/// Monic representatives (first nonzero coordinate 1) in encoding order.
inline std::vector<std::vector<std::uint32_t>> monic_vectors(std::uint32_t d, const Field& f) {
  std::vector<std::vector<std::uint32_t>> out;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < d; ++i) total *= f->order();
  for (std::uint64_t enc = 1; enc < total; ++enc) {
    auto v = decode_vector(enc, d, f->order());
    std::uint32_t lead = 0;
    while (lead < d && v[lead] == 0) ++lead;
    if (lead < d && v[lead] == 1) out.push_back(v);
  }
  return out;
}

inline std::string vector_label(const std::vector<std::uint32_t>& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ",";
    os << v[i];
  }
  os << ")";
  return os.str();
}

}  // namespace detail

/// Scaled projective points: pairs (j, u) with u a monic vector and
/// 0 <= j < r, realizing the domain of r-th root-coset scalings of the
/// projective space. A semilinear element phi^i A sends (j, u) to
/// (j q0^i + dlog(lambda) mod r, u') where u^(phi^i) A = lambda u'.
/// With r = 1 this is the plain (semilinear) projective action.
///
/// Point numbering: u-blocks in monic enumeration order, j varying inside a
/// block, so the cell partition is the contiguous blocks of size r.
inline LabeledAction scaled_projective_action(std::uint32_t d, const Field& f, std::uint32_t r,
                                              const std::vector<Semilinear>& gens,
                                              std::uint64_t degree_cap = 1000000,
                                              const std::vector<std::vector<std::uint32_t>>* domain_filter = nullptr) {
  std::uint32_t q = f->order();
  if (r == 0 || (q - 1) % r != 0) throw r_not_dividing_error("r must divide q - 1");
  std::vector<std::vector<std::uint32_t>> monic =
      domain_filter ? *domain_filter : detail::monic_vectors(d, f);
  std::uint64_t deg = static_cast<std::uint64_t>(monic.size()) * r;
  if (deg > degree_cap) throw index_overflow_error("scaled action degree exceeds cap");

  std::unordered_map<std::uint64_t, Pt> index;
  for (Pt i = 0; i < monic.size(); ++i) index.emplace(detail::encode_vector(monic[i], q), i);

  LabeledAction act;
  act.degree = static_cast<Pt>(deg);
  act.cell_size = r;
  for (Pt ui = 0; ui < monic.size(); ++ui)
    for (std::uint32_t j = 0; j < r; ++j) {
      std::ostringstream os;
      os << j << ":" << detail::vector_label(monic[ui]);
      act.labels.push_back(os.str());
    }

  for (const Semilinear& g : gens) {
    std::vector<Pt> img(act.degree);
    // q0^i mod r, applied to the coset index
    std::uint64_t jfactor = 1;
    for (std::uint32_t k = 0; k < g.frob; ++k) jfactor = (jfactor * f->characteristic()) % r;
    for (Pt ui = 0; ui < monic.size(); ++ui) {
      std::vector<std::uint32_t> w = g.apply_row(monic[ui]);
      std::uint32_t lead = 0;
      while (lead < d && w[lead] == 0) ++lead;
      if (lead == d) throw domain_error("scaled action: generator not invertible");
      std::uint32_t lambda = w[lead];
      std::uint32_t il = f->inv(lambda);
      for (auto& x : w) x = f->mul(x, il);
      auto it = index.find(detail::encode_vector(w, q));
      if (it == index.end()) throw domain_error("scaled action: domain not invariant");
      Pt vi = it->second;
      std::uint32_t shift = lambda == 1 ? 0 : f->dlog(lambda) % r;
      for (std::uint32_t j = 0; j < r; ++j) {
        std::uint32_t j2 = static_cast<std::uint32_t>((j * jfactor + shift) % r);
        img[ui * r + j] = vi * r + j2;
      }
    }
    act.gen_images.push_back(Perm(std::move(img)));
  }
  return act;
}

/// Plain projective action (1-spaces) of linear or semilinear generators.
inline LabeledAction projective_action(std::uint32_t d, const Field& f,
                                       const std::vector<Semilinear>& gens) {
  LabeledAction act = scaled_projective_action(d, f, 1, gens);
  act.name = "projective";
  return act;
}

inline std::vector<Semilinear> as_semilinear(const std::vector<Mat>& mats) {
  std::vector<Semilinear> out;
  for (const Mat& m : mats) out.push_back(Semilinear::linear(m));
  return out;
}

/// Monic isotropic vectors of the unitary geometry on GF(q^2)^3; there are
/// q^3 + 1 of them.
inline std::vector<std::vector<std::uint32_t>> isotropic_monic_vectors(const Field& f2) {
  Mat p = unitary_form_matrix(f2);
  std::vector<std::vector<std::uint32_t>> out;
  for (auto& v : detail::monic_vectors(3, f2)) {
    // (v, v) = sum_ij v_i P_ij conj(v_j)
    std::uint32_t s = 0;
    for (std::uint32_t i = 0; i < 3; ++i)
      for (std::uint32_t j = 0; j < 3; ++j)
        s = f2->add(s, f2->mul(v[i], f2->mul(p.at(i, j), f2->conj(v[j]))));
    if (s == 0) out.push_back(v);
  }
  return out;
}

/// Scaled isotropic-point action for the unitary family; r must divide
/// q^2 - 1 and the generators must preserve the hermitian form up to
/// similarity (they are given as semilinear elements over GF(q^2)).
inline LabeledAction scaled_isotropic_action(const Field& f2, std::uint32_t r,
                                             const std::vector<Semilinear>& gens,
                                             std::uint64_t degree_cap = 1000000) {
  std::uint32_t qq = f2->order();
  if (r == 0 || (qq - 1) % r != 0) throw r_not_dividing_error("r must divide q^2 - 1");
  auto iso = isotropic_monic_vectors(f2);
  LabeledAction act = scaled_projective_action(3, f2, r, gens, degree_cap, &iso);
  act.name = "scaled-isotropic";
  return act;
}

/// ---- Quadratic forms over GF(2) polarizing to the standard alternating
/// form, and the Sp(2d, 2) action on them. ----

struct QuadraticFormDomain {
  std::uint32_t two_d = 0;
  std::vector<std::uint64_t> tables;  // value table of each form, bit x = Q(x); sorted
  int type_of(std::size_t i) const {
    std::uint64_t zeros = 0, n = 1ull << two_d;
    for (std::uint64_t x = 0; x < n; ++x)
      if (!((tables[i] >> x) & 1)) ++zeros;
    std::uint64_t plus = (1ull << (two_d - 1)) + (1ull << (two_d / 2 - 1));
    return zeros == plus ? +1 : -1;
  }
};

/// All 2^(2d) quadratic forms polarizing to the standard alternating form:
/// Q_c(x) = sum x_{2i} x_{2i+1} + (x, c).
inline QuadraticFormDomain quadratic_forms(std::uint32_t d) {
  if (d < 2 || d > 3) throw domain_error("quadratic_forms: supported range is d in {2,3}");
  std::uint32_t n = 2 * d;
  std::uint64_t vecs = 1ull << n;
  auto q0 = [&](std::uint64_t x) {
    std::uint32_t s = 0;
    for (std::uint32_t i = 0; i + 1 < n; i += 2) s ^= ((x >> i) & 1) & ((x >> (i + 1)) & 1);
    return s;
  };
  auto form = [&](std::uint64_t c, std::uint64_t x) {
    // (x, c) with the standard form: pairs (2i, 2i+1)
    std::uint32_t s = q0(x);
    for (std::uint32_t i = 0; i + 1 < n; i += 2)
      s ^= (((x >> i) & 1) & ((c >> (i + 1)) & 1)) ^ (((x >> (i + 1)) & 1) & ((c >> i) & 1));
    return s;
  };
  QuadraticFormDomain dom;
  dom.two_d = n;
  for (std::uint64_t c = 0; c < vecs; ++c) {
    std::uint64_t table = 0;
    for (std::uint64_t x = 0; x < vecs; ++x)
      if (form(c, x)) table |= (1ull << x);
    dom.tables.push_back(table);
  }
  std::sort(dom.tables.begin(), dom.tables.end());
  return dom;
}

/// The two transitive Sp(2d,2) actions on quadratic forms of type +1 / -1,
/// plus the matrix generators (shared) for downstream Dickson computations.
struct QuadraticFormActions {
  LabeledAction plus;
  LabeledAction minus;
  std::vector<Mat> sp_gens;
  std::vector<std::uint64_t> plus_tables, minus_tables;
};

inline std::uint64_t transform_form_table(std::uint64_t table, const Mat& ginv,
                                          std::uint32_t n) {
  // Q^g(u) = Q(u g^-1)
  std::uint64_t out = 0;
  for (std::uint64_t u = 0; u < (1ull << n); ++u) {
    std::vector<std::uint32_t> v(n);
    for (std::uint32_t i = 0; i < n; ++i) v[i] = (u >> i) & 1;
    auto w = ginv.apply_row(v);
    std::uint64_t enc = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if (w[i]) enc |= (1ull << i);
    if ((table >> enc) & 1) out |= (1ull << u);
  }
  return out;
}

inline QuadraticFormActions quadratic_form_action(std::uint32_t d) {
  Field f2 = FiniteField::make(2, 1);
  QuadraticFormDomain dom = quadratic_forms(d);
  std::uint32_t n = 2 * d;
  QuadraticFormActions out;
  out.sp_gens = sp_generators(d, f2);
  for (std::size_t i = 0; i < dom.tables.size(); ++i)
    (dom.type_of(i) > 0 ? out.plus_tables : out.minus_tables).push_back(dom.tables[i]);

  auto build = [&](const std::vector<std::uint64_t>& tables, const char* name) {
    LabeledAction act;
    act.name = name;
    act.degree = static_cast<Pt>(tables.size());
    std::unordered_map<std::uint64_t, Pt> index;
    for (Pt i = 0; i < tables.size(); ++i) {
      index.emplace(tables[i], i);
      std::ostringstream os;
      os << std::hex << tables[i];
      act.labels.push_back(os.str());
    }
    for (const Mat& g : out.sp_gens) {
      Mat ginv = g.inverse();
      std::vector<Pt> img(act.degree);
      for (Pt i = 0; i < act.degree; ++i) {
        auto it = index.find(transform_form_table(tables[i], ginv, n));
        if (it == index.end()) throw domain_error("form type class not invariant");
        img[i] = it->second;
      }
      act.gen_images.push_back(Perm(std::move(img)));
    }
    return act;
  };
  out.plus = build(out.plus_tables, "quadratic-forms(+)");
  out.minus = build(out.minus_tables, "quadratic-forms(-)");
  return out;
}

struct not_in_stabilizer_error : domain_error {
  using domain_error::domain_error;
};

/// Dickson invariant of an isometry h of (V, Q): 0 iff rank(h - I) over GF(2)
/// is even, i.e. h lies in the index-2 kernel subgroup.
inline std::uint32_t dickson_class(const Mat& h, std::uint64_t form_table) {
  std::uint32_t n = h.dim();
  if (transform_form_table(form_table, h.inverse(), n) != form_table)
    throw not_in_stabilizer_error("matrix does not stabilize the form");
  Mat diff = h;
  for (std::uint32_t i = 0; i < n; ++i) diff.at(i, i) = h.field()->sub(diff.at(i, i), 1);
  return diff.rank() % 2;
}

/// ---- Coset domains with elementwise images ----

/// A coset action bundled with its lookup table, so arbitrary elements of m
/// (not only generators) can be mapped to their permutation of the cosets.
class CosetDomain {
 public:
  CosetDomain(Group m, Group r, std::uint64_t cap = 1000000)
      : m_(std::move(m)), r_(std::move(r)), act_(coset_action(m_, r_, cap)), table_(m_, r_) {
    for (Pt p = 0; p < act_.degree; ++p) table_.add(act_.reps[p], p);
  }

  // The lookup table holds references into this object.
  CosetDomain(const CosetDomain&) = delete;
  CosetDomain& operator=(const CosetDomain&) = delete;

  const Group& group() const { return m_; }
  const Group& subgroup() const { return r_; }
  const CosetAction& action() const { return act_; }
  Pt degree() const { return act_.degree; }

  Pt point_of(const Perm& w) {
    std::int64_t p = table_.find(w, act_.reps);
    if (p < 0) throw domain_error("coset lookup failed");
    return static_cast<Pt>(p);
  }

  /// Permutation of the cosets induced by an arbitrary element of m.
  Perm image_of(const Perm& elt) {
    std::vector<Pt> img(act_.degree);
    for (Pt p = 0; p < act_.degree; ++p) img[p] = point_of(act_.reps[p] * elt);
    return Perm(std::move(img));
  }

 private:
  Group m_;
  Group r_;
  CosetAction act_;
  detail::CosetTable table_;
};

/// An automorphism of the plinth presented as conjugation by an explicit
/// permutation of the natural domain that normalizes the plinth.
struct AutSpec {
  std::string name;
  Perm conjugator;
};

/// Lift the automorphism x -> x^t of m to a permutation of the coset domain
/// [m : r]. The lift exists iff r^t is m-conjugate to r, decided exactly by
/// looking for a common fixed point of r^t on the cosets; the fixed coset's
/// representative is the conjugating element.
inline Perm lift_automorphism(CosetDomain& dom, const AutSpec& spec) {
  const Group& m = dom.group();
  const Group& r = dom.subgroup();
  const Perm& t = spec.conjugator;
  for (const Perm& g : m.gens())
    if (!m.contains(g.conjugated_by(t)))
      throw not_liftable_error("conjugator does not normalize the plinth");
  // Common fixed points of r^t acting on the cosets.
  std::vector<Perm> rt_images;
  for (const Perm& g : r.gens()) rt_images.push_back(dom.image_of(g.conjugated_by(t)));
  std::optional<Pt> fixed;
  for (Pt p = 0; p < dom.degree(); ++p) {
    bool all = true;
    for (const Perm& g : rt_images)
      if (g[p] != p) {
        all = false;
        break;
      }
    if (all) {
      fixed = p;
      break;
    }
  }
  if (!fixed) throw not_liftable_error("image subgroup fixes no coset: not conjugate to r");
  Perm c = dom.action().reps[*fixed];
  Perm cinv = c.inverse();
  // f''(x) = c (t^-1 x t) c^-1 stabilizes r; the lift sends coset r*u to
  // r*f''(u).
  std::vector<Pt> img(dom.degree());
  for (Pt p = 0; p < dom.degree(); ++p) {
    Perm fu = c * dom.action().reps[p].conjugated_by(t) * cinv;
    img[p] = dom.point_of(fu);
  }
  Perm pi(std::move(img));
  // Conjugation by the lift must map the plinth generators into the plinth.
  Group momega = dom.action().image();
  for (const Perm& g : momega.gens())
    if (!momega.contains(g.conjugated_by(pi)))
      throw not_liftable_error("lift fails to normalize the plinth action");
  return pi;
}

/// The exceptional degree-28 configuration: the simple group of order 504 on
/// the 9-point projective line over GF(8), its Sylow 3-subgroup R = C9, the
/// degree-56 coset action on [M : R], and the degree-28 action on the cosets
/// of the Sylow normalizer D18 (the cell-level domain). The Frobenius of the
/// 9-point domain is returned for normalizer assembly.
struct Ree3Line7 {
  Group plinth9 = Group::trivial(1);   // the order-504 group on 9 points
  Group sylow3 = Group::trivial(1);    // R = C9
  Perm frobenius9;                     // order-3 normalizing permutation
  LabeledAction omega;                 // degree 56
  LabeledAction sigma;                 // degree 28
};

Ree3Line7 ree3_line7_action();

/// N = <centralizer, plinth, lifted automorphisms> on the coset domain.
/// Automorphisms whose lift does not exist contribute nothing.
inline Group normalizer_over_plinth(CosetDomain& dom, const std::vector<AutSpec>& auts,
                                    std::vector<std::string>* lifted_names = nullptr) {
  Group momega = dom.action().image();
  Group c = centralizer_of_transitive(momega);
  std::vector<Perm> gens = c.gens();
  for (const Perm& g : momega.gens()) gens.push_back(g);
  for (const AutSpec& a : auts) {
    try {
      gens.push_back(lift_automorphism(dom, a));
      if (lifted_names) lifted_names->push_back(a.name);
    } catch (const not_liftable_error&) {
      // skipped: the automorphism moves r to a non-conjugate subgroup
    }
  }
  return Group(dom.degree(), gens);
}

inline Ree3Line7 ree3_line7_action() {
  Field f8 = FiniteField::make(2, 3);
  std::vector<Semilinear> gens;
  for (Mat& m : sl_generators(2, f8)) gens.push_back(Semilinear::linear(std::move(m)));
  std::size_t sl_count = gens.size();
  gens.push_back(Semilinear(1, Mat::identity(f8, 2)));
  LabeledAction p9 = projective_action(2, f8, gens);
  Ree3Line7 out;
  out.plinth9 =
      Group(9, std::vector<Perm>(p9.gen_images.begin(), p9.gen_images.begin() + sl_count));
  out.frobenius9 = p9.gen_images[sl_count];
  out.sylow3 = Group(9, {first_element_of_order(out.plinth9, 9)});
  auto fill = [](LabeledAction& act, const CosetAction& ca, const char* name) {
    act.name = name;
    act.degree = ca.degree;
    act.gen_images = ca.gen_images;
    for (Pt p = 0; p < ca.degree; ++p) act.labels.push_back(ca.word(p));
  };
  fill(out.omega, coset_action(out.plinth9, out.sylow3), "sylow3-cosets");
  fill(out.sigma, coset_action(out.plinth9, normalizer_in(out.plinth9, out.sylow3)),
       "sylow3-normalizer-cosets");
  return out;
}

}  // namespace plinth
