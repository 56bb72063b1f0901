#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plinth/actions.hpp"
#include "plinth/classify.hpp"
#include "plinth/io.hpp"

namespace plinth {

// ---- small construction helpers ----

inline Group alternating_group(Pt n) {
  std::vector<Pt> c3(n), cyc(n);
  for (Pt i = 0; i < n; ++i) c3[i] = cyc[i] = i;
  c3[0] = 1;
  c3[1] = 2;
  c3[2] = 0;
  if (n % 2 == 1) {
    for (Pt i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
  } else {
    for (Pt i = 1; i < n; ++i) cyc[i] = 1 + (i % (n - 1));
  }
  return Group(n, {Perm(c3), Perm(cyc)});
}

/// Action on k-subsets of {0..n-1}, subsets enumerated lexicographically.
struct SubsetAction {
  std::vector<std::vector<Pt>> subsets;
  Group image = Group::trivial(1);
  Perm lift(const Perm& p) const {  // image of any Sym(n) element on subsets
    std::map<std::vector<Pt>, Pt> idx;
    for (Pt i = 0; i < subsets.size(); ++i) idx.emplace(subsets[i], i);
    std::vector<Pt> img(subsets.size());
    for (Pt i = 0; i < subsets.size(); ++i) {
      std::vector<Pt> s;
      for (Pt x : subsets[i]) s.push_back(p[x]);
      std::sort(s.begin(), s.end());
      img[i] = idx.at(s);
    }
    return Perm(std::move(img));
  }
};

inline SubsetAction subset_action(const Group& g, unsigned k) {
  SubsetAction out;
  std::vector<Pt> cur;
  std::function<void(Pt)> rec = [&](Pt start) {
    if (cur.size() == k) {
      out.subsets.push_back(cur);
      return;
    }
    for (Pt x = start; x < g.degree(); ++x) {
      cur.push_back(x);
      rec(x + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::map<std::vector<Pt>, Pt> idx;
  for (Pt i = 0; i < out.subsets.size(); ++i) idx.emplace(out.subsets[i], i);
  std::vector<Perm> gens;
  for (const Perm& p : g.gens()) {
    std::vector<Pt> img(out.subsets.size());
    for (Pt i = 0; i < out.subsets.size(); ++i) {
      std::vector<Pt> s;
      for (Pt x : out.subsets[i]) s.push_back(p[x]);
      std::sort(s.begin(), s.end());
      img[i] = idx.at(s);
    }
    gens.push_back(Perm(std::move(img)));
  }
  out.image = Group(static_cast<Pt>(out.subsets.size()), gens);
  return out;
}

struct order_mismatch_error : domain_error {
  using domain_error::domain_error;
};
struct data_file_missing_error : domain_error {
  using domain_error::domain_error;
};

/// Load a bundled generator file and certify its group order before use.
inline Group ingest_generators(const std::string& path, std::uint64_t expected_order = 0) {
  std::ifstream probe(path);
  if (!probe) throw data_file_missing_error("missing data file: " + path);
  Group g = parse_group_text(probe);
  if (expected_order && g.order() != expected_order)
    throw order_mismatch_error("ingested group order mismatch for " + path);
  return g;
}

// ---- catalog data model ----

struct ExpectedRow {
  std::string id;          // degree/TransID, carried as documentation only
  std::uint64_t order = 0;
  std::uint64_t r = 0;
  int rank = -1;           // -1: reported but not asserted
  int special = -1;        // 1 / 0 / -1 (unasserted)
  std::string sigma_name;  // documentation: the quotient group on the cells
  std::string line_tag;    // classification-table line for special rows
};

struct BuiltEntry {
  std::string domain_kind;          // coset | scaled | vector | forms
  std::vector<std::string> labels;  // per-point labels for --dump-domain
  Group n = Group::trivial(1);      // full normalizer of the plinth on the domain
  Group m = Group::trivial(1);      // the plinth
  std::string generator_dump;       // matrix dump for matrix-backed recipes
};

/// Matrix generator dump: "q0 a d" header, then one matrix per block,
/// row-major discrete-log-coded entries (-1 for zero).
inline std::string format_matrix_dump(const Field& f, std::uint32_t d,
                                      const std::vector<Mat>& mats) {
  std::ostringstream os;
  os << f->characteristic() << " " << f->extension_degree() << " " << d << "\n";
  for (const Mat& m : mats) {
    for (std::uint32_t i = 0; i < d; ++i) {
      for (std::uint32_t j = 0; j < d; ++j) {
        if (j) os << " ";
        std::uint32_t v = m.at(i, j);
        if (v == 0)
          os << -1;
        else
          os << f->dlog(v);
      }
      os << "\n";
    }
    os << "\n";
  }
  return os.str();
}

struct CatalogEntry {
  std::string id;
  std::string summary;
  Pt degree = 0;
  std::uint64_t plinth_order = 0;
  bool slow = false;
  bool complete = true;  // every produced class must match a row and vice versa
  bool line7_exception = false;
  std::vector<ExpectedRow> rows;
  std::function<BuiltEntry(const std::string& data_dir)> build;
};

// ---- builders ----

namespace build {

inline BuiltEntry scaled_linear(std::uint32_t d, std::uint32_t q0, std::uint32_t a,
                                std::uint32_t r) {
  Field f = FiniteField::make(q0, a);
  std::vector<Semilinear> gens;
  for (Mat& m : sl_generators(d, f)) gens.push_back(Semilinear::linear(std::move(m)));
  std::size_t sl_count = gens.size();
  Mat diag = Mat::identity(f, d);
  diag.at(0, 0) = f->omega();
  gens.push_back(Semilinear::linear(diag));
  Mat z = Mat::identity(f, d);
  for (std::uint32_t i = 0; i < d; ++i) z.at(i, i) = f->omega();
  gens.push_back(Semilinear::linear(z));
  if (a > 1) gens.push_back(Semilinear(1, Mat::identity(f, d)));
  LabeledAction act = scaled_projective_action(d, f, r, gens);
  BuiltEntry out;
  out.domain_kind = "scaled";
  out.labels = act.labels;
  out.n = act.image();
  out.m = Group(act.degree, std::vector<Perm>(act.gen_images.begin(),
                                              act.gen_images.begin() + sl_count));
  std::vector<Mat> mats;
  for (const Semilinear& g : gens)
    if (g.frob == 0) mats.push_back(g.mat);
  out.generator_dump = format_matrix_dump(f, d, mats);
  return out;
}

inline BuiltEntry scaled_unitary(std::uint32_t q0, std::uint32_t a, std::uint32_t r) {
  Field f2 = FiniteField::make(q0, 2 * a);
  std::vector<Semilinear> gens;
  for (Mat& m : su3_generators(f2)) gens.push_back(Semilinear::linear(std::move(m)));
  std::size_t su_count = gens.size();
  gens.push_back(Semilinear::linear(gu3_det_mover(f2)));
  Mat z = Mat::identity(f2, 3);
  for (std::uint32_t i = 0; i < 3; ++i) z.at(i, i) = f2->omega();
  gens.push_back(Semilinear::linear(z));
  gens.push_back(Semilinear(1, Mat::identity(f2, 3)));
  LabeledAction act = scaled_isotropic_action(f2, r, gens);
  BuiltEntry out;
  out.domain_kind = "scaled";
  out.labels = act.labels;
  out.n = act.image();
  out.m = Group(act.degree, std::vector<Perm>(act.gen_images.begin(),
                                              act.gen_images.begin() + su_count));
  std::vector<Mat> mats;
  for (const Semilinear& g : gens)
    if (g.frob == 0) mats.push_back(g.mat);
  out.generator_dump = format_matrix_dump(f2, 3, mats);
  return out;
}

/// Coset construction over a natural plinth action: domain [m : r], full
/// normalizer assembled from the centralizer, the plinth, and the lifts of
/// the given normalizing permutations of the natural domain.
inline BuiltEntry coset_over(const Group& m_nat, const Group& r_sub,
                             const std::vector<AutSpec>& auts) {
  CosetDomain dom(m_nat, r_sub);
  BuiltEntry out;
  out.domain_kind = "coset";
  for (Pt p = 0; p < dom.degree(); ++p) out.labels.push_back(dom.action().word(p));
  out.m = dom.action().image();
  out.n = normalizer_over_plinth(dom, auts);
  return out;
}

/// Natural projective domain for PSL(2,9) together with its diagonal and
/// field normalizers as explicit degree-10 permutations.
struct Psl29Natural {
  Group psl;   // on 10 points
  Perm delta;  // image of diag(w, 1)
  Perm phi;    // image of the Frobenius
};

inline Psl29Natural psl29_natural() {
  Field f9 = FiniteField::make(3, 2);
  std::vector<Semilinear> gens;
  for (Mat& m : sl_generators(2, f9)) gens.push_back(Semilinear::linear(std::move(m)));
  std::size_t sl_count = gens.size();
  Mat diag = Mat::identity(f9, 2);
  diag.at(0, 0) = f9->omega();
  gens.push_back(Semilinear::linear(diag));
  gens.push_back(Semilinear(1, Mat::identity(f9, 2)));
  LabeledAction act = projective_action(2, f9, gens);
  Psl29Natural out{
      Group(act.degree,
            std::vector<Perm>(act.gen_images.begin(), act.gen_images.begin() + sl_count)),
      act.gen_images[sl_count], act.gen_images[sl_count + 1]};
  return out;
}

/// The incident point-line pairs of the projective plane over GF(2), the
/// plinth acting on them, and the duality that swaps points with lines.
struct FlagDomain {
  Group psl;  // PSL(3,2) on the 21 flags
  Perm duality;
  std::vector<std::string> labels;
};

inline FlagDomain psl32_flags() {
  Field f2 = FiniteField::make(2, 1);
  auto pts = detail::monic_vectors(3, f2);  // 7 nonzero vectors
  auto enc = [&](const std::vector<std::uint32_t>& v) {
    return detail::encode_vector(v, 2);
  };
  auto dot = [&](std::uint64_t x, std::uint64_t y) {
    std::uint64_t m = x & y;
    return static_cast<std::uint32_t>(__builtin_popcountll(m) & 1);
  };
  // lines <-> their orthogonal points: line L_w = { v : v.w = 0 }
  std::vector<std::pair<Pt, Pt>> flags;  // (point index, line index) both in 0..6
  for (Pt pi = 0; pi < 7; ++pi)
    for (Pt li = 0; li < 7; ++li)
      if (dot(enc(pts[pi]), enc(pts[li])) == 0) flags.push_back({pi, li});
  if (flags.size() != 21) throw domain_error("flag count");
  std::map<std::pair<Pt, Pt>, Pt> idx;
  for (Pt i = 0; i < flags.size(); ++i) idx.emplace(flags[i], i);

  auto sl = sl_generators(3, f2);
  auto point_image = [&](const Mat& g) {
    std::vector<Pt> img(7);
    std::map<std::uint64_t, Pt> penc;
    for (Pt i = 0; i < 7; ++i) penc.emplace(enc(pts[i]), i);
    for (Pt i = 0; i < 7; ++i) img[i] = penc.at(enc(g.apply_row(pts[i])));
    return img;
  };
  FlagDomain out{Group::trivial(21), Perm::identity(21), {}};
  std::vector<Perm> fgens;
  for (const Mat& g : sl) {
    auto pimg = point_image(g);
    auto limg = point_image(g.inverse().transpose());  // lines transform dually
    std::vector<Pt> img(21);
    for (Pt i = 0; i < 21; ++i) img[i] = idx.at({pimg[flags[i].first], limg[flags[i].second]});
    fgens.push_back(Perm(std::move(img)));
  }
  out.psl = Group(21, fgens);
  std::vector<Pt> dimg(21);
  for (Pt i = 0; i < 21; ++i) dimg[i] = idx.at({flags[i].second, flags[i].first});
  out.duality = Perm(std::move(dimg));
  for (Pt i = 0; i < 21; ++i) {
    std::ostringstream os;
    os << "flag(" << detail::vector_label(pts[flags[i].first]) << ";"
       << detail::vector_label(pts[flags[i].second]) << ")";
    out.labels.push_back(os.str());
  }
  return out;
}

/// The nonzero vectors of GF(4)^2 with the full semilinear group: the
/// degree-15 projective-space geometry for the smallest sharply special case.
inline BuiltEntry gamma_l24_vectors() {
  Field f4 = FiniteField::make(2, 2);
  std::vector<Semilinear> gens;
  for (Mat& m : sl_generators(2, f4)) gens.push_back(Semilinear::linear(std::move(m)));
  std::size_t sl_count = gens.size();
  Mat z = Mat::identity(f4, 2);
  z.at(0, 0) = z.at(1, 1) = f4->omega();
  gens.push_back(Semilinear::linear(z));
  gens.push_back(Semilinear(1, Mat::identity(f4, 2)));
  // all 15 nonzero vectors
  std::vector<std::vector<std::uint32_t>> vecs;
  for (std::uint64_t e = 1; e < 16; ++e) vecs.push_back(detail::decode_vector(e, 2, 4));
  std::map<std::uint64_t, Pt> idx;
  for (Pt i = 0; i < vecs.size(); ++i) idx.emplace(detail::encode_vector(vecs[i], 4), i);
  std::vector<Perm> imgs;
  for (const Semilinear& g : gens) {
    std::vector<Pt> img(15);
    for (Pt i = 0; i < 15; ++i) img[i] = idx.at(detail::encode_vector(g.apply_row(vecs[i]), 4));
    imgs.push_back(Perm(std::move(img)));
  }
  BuiltEntry out;
  out.domain_kind = "vector";
  for (auto& v : vecs) out.labels.push_back(detail::vector_label(v));
  out.m = Group(15, std::vector<Perm>(imgs.begin(), imgs.begin() + sl_count));
  out.n = Group(15, imgs);
  return out;
}

}  // namespace build

// ---- the built-in catalog ----

inline std::vector<CatalogEntry> builtin_catalog() {
  std::vector<CatalogEntry> cat;
  auto row = [](std::string id, std::uint64_t order, std::uint64_t r, int rank, int special,
                std::string sigma, std::string line = "") {
    return ExpectedRow{std::move(id), order, r, rank, special, std::move(sigma), std::move(line)};
  };

  // -- scaled linear family --
  struct ScaledSpec {
    const char* id;
    std::uint32_t d, q0, a, r;
    Pt degree;
    std::uint64_t plinth;
    std::vector<ExpectedRow> rows;
  };
  std::vector<ScaledSpec> scaled = {
      {"deg12-psl25-r2", 2, 5, 1, 2, 12, 60,
       {row("12/76", 120, 2, 4, 1, "PSL(2,5)", "line2"),
        row("12/124", 240, 2, 3, 1, "PGL(2,5)", "line2")}},
      {"deg20-psl29-r2", 2, 3, 2, 2, 20, 360,
       {row("20/152", 720, 2, 4, 1, "PSL(2,9)", "line2"),
        row("20/197", 1440, 2, 3, 1, "M10", "line2"),
        row("20/198", 1440, 2, 4, 1, "PSigmaL(2,9)", "line2"),
        row("20/200", 1440, 2, 3, 1, "PGL(2,9)", "line2"),
        row("20/265", 2880, 2, 3, 1, "PGammaL(2,9)", "line2")}},
      {"deg24-psl27-r3", 2, 7, 1, 3, 24, 168,
       {row("24/1355", 504, 3, 4, 0, "PSL(2,7)"),
        row("24/2668", 1008, 3, 4, 0, "PGL(2,7)")}},
      {"deg26-psl33-r2", 3, 3, 1, 2, 26, 5616,
       {row("26/47", 11232, 2, 3, 1, "PSL(3,3)", "line2")}},
      {"deg28-psl213-r2", 2, 13, 1, 2, 28, 1092,
       {row("28/199", 2184, 2, 4, 1, "PSL(2,13)", "line2"),
        row("28/281", 4368, 2, 3, 1, "PGL(2,13)", "line2")}},
      {"deg36-psl217-r2", 2, 17, 1, 2, 36, 2448,
       {row("36/5559", 4896, 2, 4, 1, "PSL(2,17)", "line2"),
        row("36/8345", 9792, 2, 3, 1, "PGL(2,17)", "line2")}},
      {"deg42-psl213-r3", 2, 13, 1, 3, 42, 1092,
       {row("42/335", 3276, 3, 4, 0, "PSL(2,13)"),
        row("42/484", 6552, 3, 4, 0, "PGL(2,13)")}},
  };
  for (auto& s : scaled) {
    CatalogEntry e;
    e.id = s.id;
    e.summary = "scaled projective construction";
    e.degree = s.degree;
    e.plinth_order = s.plinth;
    e.rows = s.rows;
    std::uint32_t d = s.d, q0 = s.q0, a = s.a, r = s.r;
    e.build = [d, q0, a, r](const std::string&) { return build::scaled_linear(d, q0, a, r); };
    cat.push_back(std::move(e));
  }

  // -- coset constructions over alternating plinths --
  {
    CatalogEntry e;
    e.id = "deg15-a5-r3";
    e.summary = "A5 on cosets of a Klein four-subgroup";
    e.degree = 15;
    e.plinth_order = 60;
    e.rows = {row("15/15", 180, 3, 4, 0, "A5"), row("15/21", 360, 3, 3, 1, "S5", "line1")};
    e.build = [](const std::string&) {
      Group a5 = alternating_group(5);
      Group r = derived_subgroup(a5.stabilizer(0));  // V4 inside A4
      return build::coset_over(a5, r, {{"transposition", Perm({1, 0, 2, 3, 4})}});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "deg20-a5pairs-r2";
    e.summary = "A5 on cosets of a cyclic C3";
    e.degree = 20;
    e.plinth_order = 60;
    e.rows = {row("20/36", 120, 2, 6, 0, "A5 on pairs"),
              row("20/65", 240, 2, 5, 0, "S5 on pairs")};
    e.build = [](const std::string&) {
      Group a5 = alternating_group(5);
      Group r(5, {first_element_of_order(a5, 3)});
      return build::coset_over(a5, r, {{"transposition", Perm({1, 0, 2, 3, 4})}});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "deg30-a5-r2";
    e.summary = "A5 on cosets of a C2 (cells are the 2|2|1 partitions)";
    e.degree = 30;
    e.plinth_order = 60;
    e.rows = {row("30/29", 120, 2, 10, 0, "A5 on partitions"),
              row("30/58", 240, 2, 7, 0, "S5 on partitions")};
    e.build = [](const std::string&) {
      Group a5 = alternating_group(5);
      Group r(5, {first_element_of_order(a5, 2)});
      return build::coset_over(a5, r, {{"transposition", Perm({1, 0, 2, 3, 4})}});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "deg30-a6pairs-r2";
    e.summary = "A6 in its pair action, on cosets of an A4";
    e.degree = 30;
    e.plinth_order = 360;
    e.rows = {row("30/179", 720, 2, 5, 0, "A6 on pairs"),
              row("30/261", 1440, 2, 5, 0, "S6 on pairs")};
    e.build = [](const std::string&) {
      Group a6 = alternating_group(6);
      SubsetAction pairs = subset_action(a6, 2);
      Group r = derived_subgroup(pairs.image.stabilizer(0));
      Perm t = pairs.lift(Perm({1, 0, 2, 3, 4, 5}));
      return build::coset_over(pairs.image, r, {{"transposition", t}});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "deg42-a7pairs-r2";
    e.summary = "A7 in its pair action, on cosets of an A5";
    e.degree = 42;
    e.plinth_order = 2520;
    e.rows = {row("42/410", 5040, 2, 5, 0, "A7 on pairs"),
              row("42/550", 10080, 2, 5, 0, "S7 on pairs")};
    e.build = [](const std::string&) {
      Group a7 = alternating_group(7);
      SubsetAction pairs = subset_action(a7, 2);
      Group r = derived_subgroup(pairs.image.stabilizer(0));
      Perm t = pairs.lift(Perm({1, 0, 2, 3, 4, 5, 6}));
      return build::coset_over(pairs.image, r, {{"transposition", t}});
    };
    cat.push_back(std::move(e));
  }

  // -- linear plinths with coset constructions --
  {
    CatalogEntry e;
    e.id = "deg14-psl32-r2";
    e.summary = "PSL(3,2) on cosets of an A4";
    e.degree = 14;
    e.plinth_order = 168;
    e.rows = {row("14/17", 336, 2, 3, 1, "PSL(3,2)", "line3")};
    e.build = [](const std::string&) {
      Field f2 = FiniteField::make(2, 1);
      LabeledAction p7 = projective_action(3, f2, as_semilinear(sl_generators(3, f2)));
      Group m = p7.image();
      Group r = derived_subgroup(m.stabilizer(0));
      return build::coset_over(m, r, {});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "deg42-psl32-v4";
    e.summary = "PSL(3,2) on cosets of a Klein four-subgroup of an S4";
    e.degree = 42;
    e.plinth_order = 168;
    e.rows = {row("42/80", 336, 2, 9, 0, "PSL(3,2) on flags"),
              row("42/103", 504, 3, 7, 0, "PSL(3,2) on A4-cosets"),
              row("42/175", 1008, 6, 5, 0, "PSL(3,2)")};
    e.build = [](const std::string&) {
      Field f2 = FiniteField::make(2, 1);
      LabeledAction p7 = projective_action(3, f2, as_semilinear(sl_generators(3, f2)));
      Group m = p7.image();
      Group r = derived_subgroup(derived_subgroup(m.stabilizer(0)));
      return build::coset_over(m, r, {});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "deg42-psl32-flags-c4";
    e.summary = "PSL(3,2) in its flag action, on cosets of a cyclic C4";
    e.degree = 42;
    e.plinth_order = 168;
    e.rows = {row("42/79", 336, 2, 10, 0, "PSL(3,2) on flags"),
              row("42/131", 672, 2, 7, 0, "correlations of the plane on flags")};
    e.build = [](const std::string&) {
      build::FlagDomain fd = build::psl32_flags();
      // the cyclic one of the three index-2 subgroups of the D8 stabilizer
      Group d8 = fd.psl.stabilizer(0);
      std::optional<Group> c4;
      for (Group& k : elementary_abelian_quotient_kernels(d8, 2)) {
        if (d8.order() / k.order() != 2) continue;
        bool cyclic = false;
        for (const Perm& x : k.elements())
          if (x.element_order() == k.order()) cyclic = true;
        if (cyclic) c4 = k;
      }
      if (!c4) throw domain_error("no cyclic index-2 subgroup in the flag stabilizer");
      return build::coset_over(fd.psl, *c4, {{"duality", fd.duality}});
    };
    cat.push_back(std::move(e));
  }

  // -- PSL(2,9) plinth, Sylow-3 cosets: the whole degree-40 family --
  {
    CatalogEntry e;
    e.id = "deg40-psl29-sylow3";
    e.summary = "PSL(2,9) on cosets of a Sylow 3-subgroup";
    e.degree = 40;
    e.plinth_order = 360;
    e.rows = {row("40/587", 720, 2, 8, 0, "A6 on 3-sets"),
              row("40/1189", 1440, 2, 6, 0, "S6 on 3-sets"),
              row("40/1191", 1440, 2, 5, 0, "M10 on subgroup cosets"),
              row("40/1197", 1440, 4, 6, 0, "PSL(2,9)"),
              row("40/2312", 2880, 4, 4, 0, "M10"),
              row("40/2314", 2880, 4, 5, 0, "PSigmaL(2,9)"),
              row("40/2323", 2880, 4, 5, 0, "PGL(2,9)"),
              row("40/5156", 5760, 4, 4, 0, "PGammaL(2,9)")};
    e.build = [](const std::string&) {
      build::Psl29Natural nat = build::psl29_natural();
      Group r = derived_subgroup(nat.psl.stabilizer(0));  // C3 x C3
      return build::coset_over(nat.psl, r,
                               {{"diagonal", nat.delta}, {"frobenius", nat.phi}});
    };
    cat.push_back(std::move(e));
  }

  // -- M11 --
  {
    CatalogEntry e;
    e.id = "deg22-m11-r2";
    e.summary = "M11 on cosets of an A6";
    e.degree = 22;
    e.plinth_order = 7920;
    e.rows = {row("22/26", 15840, 2, 3, 1, "M11", "line8")};
    e.build = [](const std::string& data_dir) {
      Group m11 = ingest_generators(data_dir + "/m11_11.perm", 7920);
      Group r = derived_subgroup(m11.stabilizer(0));
      return build::coset_over(m11, r, {});
    };
    cat.push_back(std::move(e));
  }

  // ---- desk-scale instances beyond the degree-48 table ----
  {
    CatalogEntry e;
    e.id = "desk-line1-gammaL24";
    e.summary = "the degree-15 vector geometry carrying the full semilinear group";
    e.degree = 15;
    e.plinth_order = 60;
    e.rows = {row("desk/15a", 180, 3, 4, 0, "A5"),
              row("desk/15b", 360, 3, 3, 1, "S5", "line1")};
    e.build = [](const std::string&) { return build::gamma_l24_vectors(); };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "desk-line7-ree3";
    e.summary = "PSL(2,8) on cosets of a Sylow 3-subgroup, with the field lift";
    e.degree = 56;
    e.plinth_order = 504;
    e.line7_exception = true;
    e.rows = {row("desk/56a", 1008, 2, -1, 0, "PSL(2,8) on 28"),
              row("desk/56b", 3024, 2, 4, 1, "PGammaL(2,8)", "line7")};
    e.build = [](const std::string&) {
      Ree3Line7 rl = ree3_line7_action();
      return build::coset_over(rl.plinth9, rl.sylow3, {{"frobenius", rl.frobenius9}});
    };
    cat.push_back(std::move(e));
  }
  for (int eps : {+1, -1}) {
    CatalogEntry e;
    e.id = eps > 0 ? "desk-sp62-plus" : "desk-sp62-minus";
    e.summary = "Sp(6,2) on cosets of the Dickson kernel of a form stabilizer";
    e.degree = eps > 0 ? 72 : 56;
    e.plinth_order = 1451520;
    e.rows = {row(eps > 0 ? "desk/72" : "desk/56sp", 2903040, 2, 4, 1,
                  eps > 0 ? "Sp(6,2) on 36" : "Sp(6,2) on 28", "line5")};
    e.build = [eps](const std::string&) {
      QuadraticFormActions qf = quadratic_form_action(3);
      Group m = (eps > 0 ? qf.plus : qf.minus).image();
      Group r = unique_normal_with_quotient(m.stabilizer(0), 2);
      return build::coset_over(m, r, {});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "desk-psu33-r2";
    e.summary = "scaled isotropic construction over GF(9)";
    e.degree = 56;
    e.plinth_order = 6048;
    e.rows = {row("desk/56u-a", 12096, 2, 4, 1, "PSU(3,3)", "line4"),
              row("desk/56u-b", 24192, 2, 4, 1, "PGammaU(3,3)", "line4")};
    e.build = [](const std::string&) { return build::scaled_unitary(3, 1, 2); };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "desk-psu34-r3";
    e.summary = "scaled isotropic construction over GF(16)";
    e.degree = 195;
    e.plinth_order = 62400;
    e.rows = {row("desk/195a", 187200, 3, -1, 0, "PSU(3,4)"),
              row("desk/195b", 374400, 3, -1, 0, "PSU(3,4).2"),
              row("desk/195c", 748800, 3, 3, 1, "PGammaU(3,4)", "line4")};
    e.build = [](const std::string&) { return build::scaled_unitary(2, 2, 3); };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "desk-psl37-r2";
    e.summary = "scaled projective construction in dimension 3 over GF(7)";
    e.degree = 114;
    e.plinth_order = 1876896;
    e.rows = {row("desk/114a", 3753792, 2, 3, 1, "PSL(3,7)", "line2"),
              row("desk/114b", 11261376, 2, 3, 1, "PGL(3,7)", "line2")};
    e.build = [](const std::string&) { return build::scaled_linear(3, 7, 1, 2); };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "slow-hs-r2";
    e.summary = "HS on cosets of the derived subgroup of a point stabilizer";
    e.degree = 352;
    e.plinth_order = 44352000;
    e.slow = true;
    e.rows = {row("slow/352", 88704000, 2, 4, 1, "HS", "line9")};
    e.build = [](const std::string& data_dir) {
      Group hs = ingest_generators(data_dir + "/hs_176.perm", 44352000);
      Group r = derived_subgroup(hs.stabilizer(0));
      return build::coset_over(hs, r, {});
    };
    cat.push_back(std::move(e));
  }
  {
    CatalogEntry e;
    e.id = "slow-co3-r2";
    e.summary = "Co3 on cosets of the derived subgroup of a point stabilizer";
    e.degree = 552;
    e.plinth_order = 495766656000ull;
    e.slow = true;
    e.rows = {row("slow/552", 991533312000ull, 2, 4, 1, "Co3", "line10")};
    e.build = [](const std::string& data_dir) {
      Group co3 = ingest_generators(data_dir + "/co3_276.perm", 495766656000ull);
      Group r = derived_subgroup(co3.stabilizer(0));
      return build::coset_over(co3, r, {});
    };
    cat.push_back(std::move(e));
  }
  return cat;
}

// ---- the verification harness ----

struct GroupReport {
  std::string row_id;        // matched row, or "" for an unexpected class
  std::string sigma_name;    // documentation from the matched row
  std::string line_tag;
  Pt degree = 0;
  std::uint64_t order = 0, r = 0, sigma_count = 0, plinth_order = 0;
  unsigned rank = 0;
  bool special = false;
  bool matched = false;
  bool checks_passed = false;
  std::string check_notes;
};

struct EntryResult {
  std::string entry_id;
  bool pass = false;
  bool skipped = false;
  std::string error;
  std::vector<GroupReport> groups;
  double wall_ms = 0;
};

namespace detail {

/// Conjugacy classes of the subgroups between m and n, one representative
/// each: permutational isomorphism classes of the candidate groups, because
/// any witness must normalize the common plinth.
inline std::vector<Group> intermediate_classes(const Group& n, const Group& m) {
  CosetDomain dom(n, m);
  std::vector<Group> all = intermediate_subgroups(n, m);
  auto block_of = [&](const Group& k, const Perm& conj) {
    std::vector<Pt> blk;
    for (Pt c = 0; c < dom.degree(); ++c) {
      Perm x = conj.is_identity() ? dom.action().reps[c]
                                  : dom.action().reps[c].conjugated_by(conj.inverse());
      if (k.contains(x)) blk.push_back(c);
    }
    return blk;
  };
  Perm id = Perm::identity(n.degree());
  std::map<std::vector<Pt>, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index.emplace(block_of(all[i], id), i);
  // union-find over conjugation by the generators of n
  std::vector<std::size_t> parent(all.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < all.size(); ++i)
    for (const Perm& g : n.gens()) {
      auto blk = block_of(all[i], g);
      auto it = index.find(blk);
      if (it == index.end()) throw domain_error("conjugate subgroup missing from the lattice");
      std::size_t a = find(i), b = find(it->second);
      if (a != b) parent[b] = a;
    }
  std::vector<Group> reps;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (find(i) == i) reps.push_back(all[i]);
  std::sort(reps.begin(), reps.end(),
            [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return reps;
}

}  // namespace detail

inline EntryResult run_entry(const CatalogEntry& entry, const std::string& data_dir) {
  EntryResult res;
  res.entry_id = entry.id;
  auto t0 = std::chrono::steady_clock::now();
  try {
    BuiltEntry built = entry.build(data_dir);
    const Group& m = built.m;
    const Group& n = built.n;
    if (m.degree() != entry.degree) throw domain_error("degree mismatch");
    if (m.order() != entry.plinth_order) throw order_mismatch_error("plinth order mismatch");
    if (!n.contains_group(m)) throw domain_error("normalizer does not contain the plinth");
    for (const Perm& g : n.gens())
      for (const Perm& x : m.gens())
        if (!m.contains(x.conjugated_by(g)))
          throw domain_error("built group does not normalize the plinth");
    Group d_full = centralizer_of_transitive(m);
    if (!n.contains_group(d_full))
      throw domain_error("normalizer misses part of the centralizer");

    std::vector<Group> classes = detail::intermediate_classes(n, m);
    std::vector<GroupReport> produced;
    for (const Group& k : classes) {
      // C_K(M) = K intersect D, by sifting the small centralizer
      std::vector<Perm> cgens;
      for (const Perm& c : d_full.elements(1u << 20))
        if (!c.is_identity() && k.contains(c)) cgens.push_back(c);
      Group ck(k.degree(), cgens);
      if (ck.order() == 1) continue;  // quasiprimitive member, outside the table
      GroupReport rep;
      rep.degree = k.degree();
      rep.order = k.order();

      PitResult pit = detect_pit(k);
      if (pit.kind != PitKind::proper) throw domain_error("class member not properly innately transitive");
      const PitDecomposition& dec = *pit.decomp;
      if (dec.plinth.order() != m.order()) throw domain_error("plinth changed under reanalysis");
      if (dec.r != ck.order()) throw domain_error("centralizer order disagreement");
      rep.r = dec.r;
      rep.sigma_count = dec.sigma.cell_count();
      rep.plinth_order = dec.plinth.order();
      rep.rank = k.rank();
      PhiHat ph = phi_hat(dec);
      SpecialPairVerdict sp = is_special_pair(ph.quotient, ph.r_sigma, ph.sigma);
      rep.special = sp.holds;

      // embedded cross-checks
      std::ostringstream notes;
      bool ok = true;
      if (dec.kernel.order() != dec.r || !dec.kernel.contains_group(dec.centralizer)) {
        ok = false;
        notes << "kernel!=C;";
      }
      std::uint64_t stab_ord = k.stabilizer(0).order();
      if (stab_ord * k.degree() != k.order()) {
        ok = false;
        notes << "orbit-stabilizer;";
      }
      if (sp.holds) {
        // transitivity of R^Sigma away from sigma, with the exceptional
        // three-orbit case for the degree-28 exceptional quotient
        std::vector<std::size_t> osz;
        for (auto& orb : dec.r_sigma.orbits())
          if (orb[0] != ph.sigma || orb.size() != 1) osz.push_back(orb.size());
        std::sort(osz.begin(), osz.end());
        bool rtrans = osz.size() == 1 && osz[0] + 1 == dec.sigma.cell_count();
        bool r3orbits = osz.size() == 3 && osz[0] == 9 && osz[1] == 9 && osz[2] == 9;
        if (entry.line7_exception ? !r3orbits : !rtrans) {
          ok = false;
          notes << "R-orbit-structure;";
        }
        if (!entry.line7_exception) {
          Rank3Criteria crit = rank3_criteria(k, dec);
          if (!crit.all_agree) {
            ok = false;
            notes << "rank3-criteria;";
          }
        }
      }
      rep.checks_passed = ok;
      rep.check_notes = notes.str();
      produced.push_back(std::move(rep));
    }

    // match produced classes against expected rows
    std::vector<bool> row_used(entry.rows.size(), false);
    bool all_ok = true;
    for (GroupReport& rep : produced) {
      bool matched = false;
      for (std::size_t i = 0; i < entry.rows.size(); ++i) {
        const ExpectedRow& want = entry.rows[i];
        if (row_used[i]) continue;
        if (want.order != rep.order || want.r != rep.r) continue;
        if (want.rank >= 0 && static_cast<unsigned>(want.rank) != rep.rank) continue;
        if (want.special >= 0 && (want.special == 1) != rep.special) continue;
        row_used[i] = true;
        rep.row_id = want.id;
        rep.sigma_name = want.sigma_name;
        rep.line_tag = want.line_tag;
        rep.matched = true;
        matched = true;
        break;
      }
      if (!matched && entry.complete) all_ok = false;
      if (!rep.checks_passed) all_ok = false;
    }
    for (bool used : row_used)
      if (!used) all_ok = false;
    res.groups = std::move(produced);
    res.pass = all_ok;
    if (!all_ok && res.error.empty()) res.error = "row mismatch or failed cross-check";
  } catch (const data_file_missing_error& ex) {
    res.skipped = true;
    res.error = ex.what();
  } catch (const std::exception& ex) {
    res.pass = false;
    res.error = ex.what();
  }
  res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return res;
}

struct CatalogReport {
  std::vector<EntryResult> entries;
  bool all_pass = true;
  unsigned rows_checked = 0, rows_passed = 0, skipped = 0;
};

inline CatalogReport run_catalog(const std::string& data_dir, bool include_slow = false) {
  CatalogReport report;
  for (const CatalogEntry& e : builtin_catalog()) {
    if (e.slow && !include_slow) continue;
    EntryResult r = run_entry(e, data_dir);
    if (r.skipped) {
      ++report.skipped;
    } else {
      for (const GroupReport& g : r.groups) {
        ++report.rows_checked;
        if (g.matched && g.checks_passed) ++report.rows_passed;
      }
      if (!r.pass) report.all_pass = false;
    }
    report.entries.push_back(std::move(r));
  }
  return report;
}

}  // namespace plinth
