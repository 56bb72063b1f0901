#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <vector>

#include "plinth/group.hpp"
#include "plinth/subgroups.hpp"

namespace plinth {

struct not_subgroup_error : domain_error {
  not_subgroup_error() : domain_error("given subgroup does not sift into the group") {}
};
struct index_overflow_error : domain_error {
  using domain_error::domain_error;
};
struct blocks_not_invariant_error : domain_error {
  blocks_not_invariant_error() : domain_error("block system is not invariant") {}
};
struct witness_not_normalizing_error : domain_error {
  witness_not_normalizing_error() : domain_error("witness element does not normalize the stabilizer") {}
};

/// Right-coset action of m on {R x | x in m}. Point 0 is the trivial coset;
/// points are numbered by BFS from it over the generators in declaration
/// order, so labels are reproducible. Coset identity is decided by membership
/// sifting, accelerated by a hash of the image of R's orbit partition (a
/// coset invariant).
struct CosetAction {
  Pt degree = 0;
  std::vector<Perm> gen_images;  // one per generator of m, in order
  std::vector<Perm> reps;        // reps[p] maps coset 0 to coset p (element of m)
  std::vector<std::pair<std::int64_t, std::int64_t>> parents;  // (point, gen) BFS edge, (-1,-1) for 0
  Group image() const { return Group(degree, gen_images); }

  /// Canonical coset word: the BFS generator path from the trivial coset.
  std::string word(Pt p) const {
    if (parents[p].first < 0) return "e";
    std::string w = word(static_cast<Pt>(parents[p].first));
    if (w == "e") w.clear();
    if (!w.empty()) w += ".";
    w += "g" + std::to_string(parents[p].second);
    return w;
  }
};

namespace detail {

class CosetTable {
 public:
  CosetTable(const Group& m, const Group& r) : m_(m), r_(r) {
    part_.assign(m.degree(), 0);
    std::vector<std::vector<Pt>> orbs = r.orbits();
    for (std::size_t i = 0; i < orbs.size(); ++i)
      for (Pt x : orbs[i]) part_[x] = static_cast<Pt>(i);
  }

  // Canonical hash of the coset R*w: the image of R's orbit partition under w,
  // relabelled by first occurrence. Equal cosets hash equally.
  std::uint64_t coset_hash(const Perm& w) const {
    std::vector<Pt> img(m_.degree());
    for (Pt x = 0; x < m_.degree(); ++x) img[w[x]] = part_[x];
    std::vector<Pt> relabel(part_.size() + 1, UINT32_MAX);
    Pt next = 0;
    for (Pt& v : img) {
      if (relabel[v] == UINT32_MAX) relabel[v] = next++;
      v = relabel[v];
    }
    return vec_hash(img);
  }

  // Index of coset R*w among known reps, or -1.
  std::int64_t find(const Perm& w, const std::vector<Perm>& reps) {
    std::uint64_t h = coset_hash(w);
    auto it = buckets_.find(h);
    if (it == buckets_.end()) return -1;
    for (Pt p : it->second)
      if (r_.contains(w * reps[p].inverse())) return p;
    return -1;
  }

  void add(const Perm& w, Pt index) { buckets_[coset_hash(w)].push_back(index); }

 private:
  const Group& m_;
  const Group& r_;
  std::vector<Pt> part_;
  std::unordered_map<std::uint64_t, std::vector<Pt>> buckets_;
};

}  // namespace detail

inline CosetAction coset_action(const Group& m, const Group& r, std::uint64_t degree_cap = 1000000) {
  for (const Perm& g : r.gens())
    if (!m.contains(g)) throw not_subgroup_error();
  std::uint64_t want = m.order() / r.order();
  if (want > degree_cap) throw index_overflow_error("coset_action: index exceeds degree cap");

  CosetAction act;
  act.reps.push_back(Perm::identity(m.degree()));
  act.parents.push_back({-1, -1});
  detail::CosetTable table(m, r);
  table.add(act.reps[0], 0);
  std::vector<std::vector<std::int64_t>> image_of;  // per point, per gen
  for (std::size_t i = 0; i < act.reps.size(); ++i) {
    image_of.resize(act.reps.size(), std::vector<std::int64_t>(m.gens().size(), -1));
    for (std::size_t gi = 0; gi < m.gens().size(); ++gi) {
      Perm w = act.reps[i] * m.gens()[gi];
      std::int64_t p = table.find(w, act.reps);
      if (p < 0) {
        p = static_cast<std::int64_t>(act.reps.size());
        act.reps.push_back(w);
        act.parents.push_back({static_cast<std::int64_t>(i), static_cast<std::int64_t>(gi)});
        table.add(w, static_cast<Pt>(p));
        image_of.resize(act.reps.size(), std::vector<std::int64_t>(m.gens().size(), -1));
      }
      image_of[i][gi] = p;
    }
  }
  act.degree = static_cast<Pt>(act.reps.size());
  if (act.degree != want) throw domain_error("coset_action: enumerated count != index");
  for (std::size_t gi = 0; gi < m.gens().size(); ++gi) {
    std::vector<Pt> img(act.degree);
    for (Pt p = 0; p < act.degree; ++p) img[p] = static_cast<Pt>(image_of[p][gi]);
    act.gen_images.push_back(PermBuilder::from_valid(std::move(img)));
  }
  return act;
}

/// Normalizer of the stabilizer of point 0 in a transitive group, computed
/// from the fixed points of the stabilizer: N_m(m_0) is generated by m_0
/// together with transversal elements reaching Fix(m_0).
inline Group normalizer_of_point_stabilizer(const Group& m, const Group& stab0,
                                            const Group::OrbitTransversal& tr) {
  std::vector<Perm> gens = stab0.gens();
  for (Pt p = 0; p < m.degree(); ++p) {
    bool fixed = true;
    for (const Perm& g : stab0.gens())
      if (g[p] != p) {
        fixed = false;
        break;
      }
    if (fixed && p != tr.orbit[0]) gens.push_back(tr.reps[tr.slot[p]]);
  }
  return Group(m.degree(), gens);
}

/// Centralizer of a transitive group m in the full symmetric group on its
/// domain, as the left-multiplication maps c_n : 0^x -> 0^(n x) for witness
/// elements n normalizing the stabilizer of 0. When no witness list is given
/// it is derived from the fixed points of the stabilizer.
inline Group centralizer_of_transitive(const Group& m,
                                       const std::vector<Perm>* witness = nullptr) {
  if (!m.is_transitive()) throw not_transitive_error();
  Group m0 = m.stabilizer(0);
  Group::OrbitTransversal tr = m.orbit_transversal(0);
  std::vector<Perm> ns;
  if (witness) {
    ns = *witness;
    for (const Perm& n : ns) {
      for (const Perm& s : m0.gens())
        if (!m0.contains(s.conjugated_by(n))) throw witness_not_normalizing_error();
    }
  } else {
    for (Pt p = 0; p < m.degree(); ++p) {
      bool fixed = true;
      for (const Perm& g : m0.gens())
        if (g[p] != p) {
          fixed = false;
          break;
        }
      if (fixed && p != 0) ns.push_back(tr.reps[tr.slot[p]]);
    }
  }
  std::vector<Perm> cgens;
  for (const Perm& n : ns) {
    std::vector<Pt> img(m.degree());
    for (Pt q = 0; q < m.degree(); ++q) {
      const Perm& u = tr.reps[tr.slot[q]];  // maps 0 to q
      img[q] = (n * u)[0];
    }
    Perm c(std::move(img));  // validates bijectivity
    if (!c.is_identity()) cgens.push_back(c);
  }
  return Group(m.degree(), cgens);
}

/// A partition of the domain into equal-size cells, each cell sorted,
/// cells ordered by their least point.
struct BlockSystem {
  std::vector<std::vector<Pt>> cells;
  std::vector<Pt> cell_of;  // point -> cell index
  Pt cell_size() const { return cells.empty() ? 0 : static_cast<Pt>(cells[0].size()); }
  Pt cell_count() const { return static_cast<Pt>(cells.size()); }
};

inline BlockSystem block_system_from_cell_map(const std::vector<Pt>& cell_of_raw) {
  // Relabel cells by least point and sort members.
  std::map<Pt, std::vector<Pt>> by_id;
  for (Pt x = 0; x < cell_of_raw.size(); ++x) by_id[cell_of_raw[x]].push_back(x);
  std::vector<std::vector<Pt>> cells;
  for (auto& [id, pts] : by_id) cells.push_back(pts);
  std::sort(cells.begin(), cells.end(), [](const auto& a, const auto& b) { return a[0] < b[0]; });
  BlockSystem bs;
  bs.cells = std::move(cells);
  bs.cell_of.assign(cell_of_raw.size(), 0);
  for (Pt i = 0; i < bs.cells.size(); ++i)
    for (Pt x : bs.cells[i]) bs.cell_of[x] = i;
  return bs;
}

/// The partition into orbits of a subgroup (typically the centralizer).
inline BlockSystem orbit_block_system(const Group& sub) {
  std::vector<Pt> cell_of(sub.degree());
  std::vector<std::vector<Pt>> orbs = sub.orbits();
  for (Pt i = 0; i < orbs.size(); ++i)
    for (Pt x : orbs[i]) cell_of[x] = i;
  return block_system_from_cell_map(cell_of);
}

inline bool blocks_invariant(const Group& g, const BlockSystem& bs) {
  for (const Perm& p : g.gens())
    for (const auto& cell : bs.cells) {
      Pt target = bs.cell_of[p[cell[0]]];
      for (Pt x : cell)
        if (bs.cell_of[p[x]] != target) return false;
    }
  return true;
}

/// Minimal nontrivial block systems of a transitive group: the standard
/// union-find block algorithm seeded with each pair {0, p}. Empty iff the
/// group is primitive.
std::vector<BlockSystem> minimal_block_systems(const Group& g);

namespace detail {

struct UnionFind {
  std::vector<Pt> up;
  explicit UnionFind(Pt n) : up(n) {
    for (Pt i = 0; i < n; ++i) up[i] = i;
  }
  Pt find(Pt x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool unite(Pt a, Pt b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    up[b] = a;
    return true;
  }
};

}  // namespace detail

inline std::vector<BlockSystem> minimal_block_systems(const Group& g) {
  if (!g.is_transitive()) throw not_transitive_error();
  std::vector<BlockSystem> out;
  std::set<std::vector<Pt>> seen;
  for (Pt p = 1; p < g.degree(); ++p) {
    detail::UnionFind uf(g.degree());
    uf.unite(0, p);
    std::deque<std::pair<Pt, Pt>> work{{0, p}};
    while (!work.empty()) {
      auto [a, b] = work.front();
      work.pop_front();
      for (const Perm& x : g.gens()) {
        if (uf.unite(x[a], x[b])) work.push_back({x[a], x[b]});
      }
    }
    std::vector<Pt> cell_of(g.degree());
    for (Pt x = 0; x < g.degree(); ++x) cell_of[x] = uf.find(x);
    BlockSystem bs = block_system_from_cell_map(cell_of);
    if (bs.cell_count() == 1 || bs.cell_count() == g.degree()) continue;
    std::vector<Pt> key = bs.cell_of;
    if (seen.insert(key).second) out.push_back(bs);
  }
  // The seeded algorithm yields the finest system joining each pair; keep only
  // minimal ones (those whose cells are not unions of another system's cells).
  std::vector<BlockSystem> minimal;
  for (const BlockSystem& a : out) {
    bool is_min = true;
    for (const BlockSystem& b : out) {
      if (b.cell_size() >= a.cell_size() || a.cell_size() % b.cell_size() != 0) continue;
      bool refines = true;
      for (const auto& cell : b.cells) {
        Pt c = a.cell_of[cell[0]];
        for (Pt x : cell)
          if (a.cell_of[x] != c) {
            refines = false;
            break;
          }
        if (!refines) break;
      }
      if (refines) {
        is_min = false;
        break;
      }
    }
    if (is_min) minimal.push_back(a);
  }
  return minimal;
}

/// Quotient action on the cells of an invariant block system, with the exact
/// kernel (the subgroup stabilizing every cell setwise).
struct ActionQuotient {
  Group quotient;             // on cell indices
  Group kernel;               // on the original domain
  std::vector<Perm> projection;  // per generator of the source group
};

inline ActionQuotient quotient_on_blocks(const Group& g, const BlockSystem& bs) {
  if (!blocks_invariant(g, bs)) throw blocks_not_invariant_error();
  Pt m = bs.cell_count();
  std::vector<Perm> proj;
  for (const Perm& p : g.gens()) {
    std::vector<Pt> img(m);
    for (Pt i = 0; i < m; ++i) img[i] = bs.cell_of[p[bs.cells[i][0]]];
    proj.push_back(PermBuilder::from_valid(std::move(img)));
  }
  Group quotient(m, proj);
  // Kernel: iterated stabilizer of every cell index in the induced action.
  Group k = g;
  for (Pt i = 0; i < m; ++i) {
    auto act = [&](const Perm& x, Pt cell) { return bs.cell_of[x[bs.cells[cell][0]]]; };
    k = k.stabilizer_by(m, act, i);
    if (k.is_trivial_group()) break;
  }
  if (quotient.order() * k.order() != g.order())
    throw domain_error("quotient_on_blocks: order bookkeeping failed");
  return ActionQuotient{std::move(quotient), std::move(k), std::move(proj)};
}

/// All subgroups k with h <= k <= n. A subgroup between h and n is a union of
/// right h-cosets and is determined by the coset set it covers (its block
/// through the trivial coset), so the lattice is generated by adjoining one
/// coset representative at a time. Requires |n:h| <= cap.
inline std::vector<Group> intermediate_subgroups(const Group& n, const Group& h,
                                                 std::uint64_t cap = 512) {
  if (n.order() % h.order() != 0 || n.order() / h.order() > cap)
    throw index_too_large_error("intermediate_subgroups: index exceeds cap");
  CosetAction act = coset_action(n, h, cap);

  auto block_of = [&](const Group& k) {
    std::vector<Pt> blk;
    for (Pt c = 0; c < act.degree; ++c)
      if (k.contains(act.reps[c])) blk.push_back(c);
    return blk;
  };

  std::map<std::vector<Pt>, Group> known;
  std::deque<std::vector<Pt>> work;
  known.emplace(std::vector<Pt>{0}, h);
  work.push_back({0});
  while (!work.empty()) {
    std::vector<Pt> blk = work.front();
    work.pop_front();
    const Group at = known.at(blk);
    for (Pt p = 1; p < act.degree; ++p) {
      if (std::binary_search(blk.begin(), blk.end(), p)) continue;
      std::vector<Perm> gens = at.gens();
      gens.push_back(act.reps[p]);
      Group bigger(n.degree(), gens);
      std::vector<Pt> blk2 = block_of(bigger);
      if (!known.count(blk2)) {
        known.emplace(blk2, bigger);
        work.push_back(blk2);
      }
    }
  }
  std::vector<Group> out;
  for (auto& [blk, k] : known) out.push_back(k);
  std::sort(out.begin(), out.end(),
            [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return out;
}

}  // namespace plinth
