#pragma once

#include <cstdint>
#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plinth/perm.hpp"

namespace plinth {

struct not_transitive_error : domain_error {
  not_transitive_error() : domain_error("group is not transitive") {}
};
struct group_too_large_error : domain_error {
  using domain_error::domain_error;
};

/// Base and strong generating set, built by deterministic Schreier-Sims.
/// Base points are chosen greedily as the first moved point, so element
/// enumeration and transversal orders are reproducible run to run.
class Bsgs {
 public:
  struct Level {
    Pt base = 0;
    std::vector<Perm> gens;          // generators fixing all earlier base points
    std::vector<Pt> orbit;           // BFS order, orbit[0] == base
    std::vector<std::int64_t> slot;  // point -> index into orbit, or -1
    std::vector<Perm> transversal;   // transversal[i] maps base -> orbit[i]
    std::vector<std::size_t> done;   // per generator: orbit positions already processed
  };

  Bsgs(Pt degree, const std::vector<Perm>& gens) : degree_(degree) {
    for (const Perm& g : gens) insert(0, g);
  }

  Pt degree() const { return degree_; }
  const std::vector<Level>& levels() const { return levels_; }

  std::uint64_t order() const {
    std::uint64_t n = 1;
    for (const Level& lv : levels_) {
      std::uint64_t sz = lv.orbit.size();
      if (n > std::numeric_limits<std::uint64_t>::max() / sz)
        throw group_too_large_error("group order exceeds 64 bits");
      n *= sz;
    }
    return n;
  }

  /// Residue of sifting g through the chain; identity iff g is a member.
  Perm sift(const Perm& g) const {
    Perm h = g;
    for (const Level& lv : levels_) {
      Pt img = h[lv.base];
      if (img == lv.base) continue;
      std::int64_t s = lv.slot[img];
      if (s < 0) return h;
      h = h * lv.transversal[s].inverse();
    }
    return h;
  }

  bool contains(const Perm& g) const { return sift(g).is_identity(); }

  std::vector<Perm> strong_generators() const {
    std::vector<Perm> out;
    for (const Level& lv : levels_)
      for (const Perm& g : lv.gens) out.push_back(g);
    return out;
  }

 private:
  // Add g (which fixes the base points of all levels before `from_level`) as
  // a generator of level `from_level`, unless it already sifts to identity.
  // The element itself is installed, not its sift residue: each level's list
  // must generate that stabilizer subgroup on its own, and deeper levels stay
  // products of shallower ones.
  void insert(std::size_t from_level, const Perm& g) {
    if (g.is_identity()) return;
    Perm h = g;
    for (std::size_t lev = from_level; lev < levels_.size(); ++lev) {
      const Level& lv = levels_[lev];
      Pt img = h[lv.base];
      if (img == lv.base) continue;
      std::int64_t s = lv.slot[img];
      if (s < 0) break;
      h = h * lv.transversal[s].inverse();
      if (h.is_identity()) return;  // member already
    }
    if (from_level == levels_.size()) {
      Level lv;
      lv.base = g.first_moved();
      lv.slot.assign(degree_, -1);
      lv.orbit.push_back(lv.base);
      lv.slot[lv.base] = 0;
      lv.transversal.push_back(Perm::identity(degree_));
      levels_.push_back(std::move(lv));
    }
    levels_[from_level].gens.push_back(g);
    levels_[from_level].done.push_back(0);
    close_level(from_level);
  }

  // Extend the orbit at `lev` and push every new Schreier generator down.
  // Recursive inserts only touch deeper levels, but they may reallocate
  // `levels_`, so the level is re-indexed on every access.
  void close_level(std::size_t lev) {
    for (std::size_t i = 0; i < levels_[lev].orbit.size(); ++i)
      for (std::size_t gi = 0; gi < levels_[lev].gens.size(); ++gi) {
        Level& lv = levels_[lev];
        Pt y = lv.gens[gi][lv.orbit[i]];
        if (lv.slot[y] < 0) {
          lv.slot[y] = static_cast<std::int64_t>(lv.orbit.size());
          lv.transversal.push_back(lv.transversal[i] * lv.gens[gi]);
          lv.orbit.push_back(y);
        }
      }
    for (std::size_t gi = 0; gi < levels_[lev].gens.size(); ++gi)
      while (levels_[lev].done[gi] < levels_[lev].orbit.size()) {
        std::size_t oi = levels_[lev].done[gi]++;
        Perm schreier;
        {
          const Level& lv = levels_[lev];
          Pt tail = lv.gens[gi][lv.orbit[oi]];
          schreier = lv.transversal[oi] * lv.gens[gi] * lv.transversal[lv.slot[tail]].inverse();
        }
        if (!schreier.is_identity()) insert(lev + 1, schreier);
      }
  }

  Pt degree_;
  std::vector<Level> levels_;
};

/// A finitely generated permutation group with a lazily built, cached BSGS.
/// Immutable after construction; the cache is populated once on first use
/// (guarded, so read-only sharing across threads is safe).
class Group {
 public:
  Group(Pt degree, std::vector<Perm> gens) : degree_(degree), box_(std::make_shared<Box>()) {
    if (degree == 0) throw domain_error("Group: degree 0 is not allowed");
    for (Perm& g : gens) {
      if (g.degree() != degree) throw domain_error("Group: generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
  }

  static Group trivial(Pt degree) { return Group(degree, {}); }

  Pt degree() const { return degree_; }
  const std::vector<Perm>& gens() const { return gens_; }
  bool is_trivial_group() const { return gens_.empty(); }

  const Bsgs& bsgs() const {
    std::call_once(box_->once, [&] { box_->chain = std::make_unique<Bsgs>(degree_, gens_); });
    return *box_->chain;
  }

  std::uint64_t order() const { return is_trivial_group() ? 1 : bsgs().order(); }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    if (g.is_identity()) return true;
    if (is_trivial_group()) return false;
    return bsgs().contains(g);
  }

  bool contains_group(const Group& h) const {
    for (const Perm& g : h.gens())
      if (!contains(g)) return false;
    return true;
  }

  std::vector<Pt> orbit(Pt p) const {
    if (p >= degree_) throw domain_error("orbit: point out of range");
    std::vector<Pt> orb{p};
    std::vector<bool> seen(degree_, false);
    seen[p] = true;
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const Perm& g : gens_) {
        Pt y = g[orb[i]];
        if (!seen[y]) {
          seen[y] = true;
          orb.push_back(y);
        }
      }
    return orb;
  }

  std::vector<std::vector<Pt>> orbits() const {
    std::vector<std::vector<Pt>> out;
    std::vector<bool> seen(degree_, false);
    for (Pt p = 0; p < degree_; ++p) {
      if (seen[p]) continue;
      auto orb = orbit(p);
      for (Pt x : orb) seen[x] = true;
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool is_transitive() const { return orbit(0).size() == degree_; }

  /// Transversal for the orbit of p: element #i maps p to orbit[i].
  /// BFS over generators in declaration order, so labels are deterministic.
  struct OrbitTransversal {
    std::vector<Pt> orbit;
    std::vector<std::int64_t> slot;  // point -> orbit index or -1
    std::vector<Perm> reps;
  };

  OrbitTransversal orbit_transversal(Pt p) const {
    OrbitTransversal t;
    t.slot.assign(degree_, -1);
    t.orbit.push_back(p);
    t.slot[p] = 0;
    t.reps.push_back(Perm::identity(degree_));
    for (std::size_t i = 0; i < t.orbit.size(); ++i)
      for (const Perm& g : gens_) {
        Pt y = g[t.orbit[i]];
        if (t.slot[y] < 0) {
          t.slot[y] = static_cast<std::int64_t>(t.orbit.size());
          t.orbit.push_back(y);
          t.reps.push_back(t.reps[i] * g);
        }
      }
    return t;
  }

  /// Point stabilizer with a reduced generating set: Schreier generators are
  /// added until the orbit-stabilizer order is reached.
  Group stabilizer(Pt p) const {
    auto act = [](const Perm& g, Pt x) { return g[x]; };
    return stabilizer_by(degree_, act, p);
  }

  /// Stabilizer of `target` under an auxiliary action of this group.
  template <class Act>
  Group stabilizer_by(Pt aux_degree, Act act, Pt target) const {
    if (target >= aux_degree) throw domain_error("stabilizer_by: point out of range");
    std::uint64_t my_order = order();
    // Orbit of target in the auxiliary action with transversal on the real domain.
    std::vector<Pt> orb{target};
    std::vector<std::int64_t> slot(aux_degree, -1);
    slot[target] = 0;
    std::vector<Perm> reps{Perm::identity(degree_)};
    for (std::size_t i = 0; i < orb.size(); ++i)
      for (const Perm& g : gens_) {
        Pt y = act(g, orb[i]);
        if (slot[y] < 0) {
          slot[y] = static_cast<std::int64_t>(orb.size());
          orb.push_back(y);
          reps.push_back(reps[i] * g);
        }
      }
    std::uint64_t want = my_order / orb.size();
    std::vector<Perm> sgens;
    Group stab = Group::trivial(degree_);
    if (want == 1) return stab;
    for (std::size_t i = 0; i < orb.size() && stab.order() < want; ++i)
      for (const Perm& g : gens_) {
        Pt y = act(g, orb[i]);
        Perm s = reps[i] * g * reps[slot[y]].inverse();
        if (!s.is_identity() && !stab.contains(s)) {
          sgens.push_back(s);
          stab = Group(degree_, sgens);
          if (stab.order() == want) return stab;
        }
      }
    if (stab.order() != want) throw domain_error("stabilizer_by: internal order mismatch");
    return stab;
  }

  /// Number of orbits of a point stabilizer on the whole domain.
  unsigned rank() const {
    if (!is_transitive()) throw not_transitive_error();
    return static_cast<unsigned>(stabilizer(0).orbits().size());
  }

  /// Sorted orbit sizes of the stabilizer of point 0 (the suborbit lengths).
  std::vector<std::uint64_t> suborbit_profile() const {
    if (!is_transitive()) throw not_transitive_error();
    std::vector<std::uint64_t> sizes;
    for (const auto& o : stabilizer(0).orbits()) sizes.push_back(o.size());
    std::sort(sizes.begin(), sizes.end());
    return sizes;
  }

  /// All elements, in deterministic transversal-product order.
  /// Guarded by an order cap since the result is materialized.
  std::vector<Perm> elements(std::uint64_t cap = 200000) const {
    std::uint64_t n = order();
    if (n > cap) throw group_too_large_error("elements(): order exceeds enumeration cap");
    std::vector<Perm> out{Perm::identity(degree_)};
    if (is_trivial_group()) return out;
    for (auto it = bsgs().levels().rbegin(); it != bsgs().levels().rend(); ++it) {
      std::vector<Perm> next;
      next.reserve(out.size() * it->transversal.size());
      for (const Perm& t : it->transversal)
        for (const Perm& e : out) next.push_back(e * t);
      out = std::move(next);
    }
    return out;
  }

 private:
  struct Box {
    std::once_flag once;
    std::unique_ptr<Bsgs> chain;
  };

  Pt degree_;
  std::vector<Perm> gens_;
  std::shared_ptr<Box> box_;
};

inline bool is_subgroup_of(const Group& sub, const Group& sup) {
  return sup.contains_group(sub);
}

/// <seeds^g : g in ambient> as a subgroup of the ambient group's symmetric group.
inline Group normal_closure(const Group& ambient, const std::vector<Perm>& seeds) {
  std::vector<Perm> gens;
  Group cl = Group::trivial(ambient.degree());
  std::deque<Perm> work;
  for (const Perm& s : seeds)
    if (!s.is_identity()) work.push_back(s);
  while (!work.empty()) {
    Perm h = work.front();
    work.pop_front();
    if (cl.contains(h)) continue;
    gens.push_back(h);
    cl = Group(ambient.degree(), gens);
    for (const Perm& g : ambient.gens()) work.push_back(h.conjugated_by(g));
    // Conjugates of the existing generators by the new element stay inside the
    // closure by induction, so only ambient conjugates need queueing.
  }
  return cl;
}

inline Group derived_subgroup(const Group& g) {
  std::vector<Perm> comms;
  for (std::size_t i = 0; i < g.gens().size(); ++i)
    for (std::size_t j = i + 1; j < g.gens().size(); ++j) {
      const Perm &a = g.gens()[i], &b = g.gens()[j];
      Perm c = a.inverse() * b.inverse() * a * b;
      if (!c.is_identity()) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

/// Representatives of the conjugacy classes, by exhaustive orbit partition.
inline std::vector<Perm> conjugacy_class_reps(const Group& g, std::uint64_t cap = 200000) {
  std::vector<Perm> elems = g.elements(cap);
  std::unordered_map<Perm, std::size_t, PermHash> index;
  for (std::size_t i = 0; i < elems.size(); ++i) index.emplace(elems[i], i);
  std::vector<bool> seen(elems.size(), false);
  std::vector<Perm> reps;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (seen[i]) continue;
    reps.push_back(elems[i]);
    std::deque<std::size_t> work{i};
    seen[i] = true;
    while (!work.empty()) {
      std::size_t k = work.front();
      work.pop_front();
      for (const Perm& t : g.gens()) {
        std::size_t j = index.at(elems[k].conjugated_by(t));
        if (!seen[j]) {
          seen[j] = true;
          work.push_back(j);
        }
      }
    }
  }
  return reps;
}

/// First element of the given order in deterministic enumeration order.
inline Perm first_element_of_order(const Group& g, std::uint64_t ord, std::uint64_t cap = 200000) {
  for (const Perm& e : g.elements(cap))
    if (e.element_order() == ord) return e;
  throw domain_error("no element of the requested order");
}

/// Sorted histogram of element orders; a cheap permutational-isomorphism
/// invariant for small groups.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> element_order_histogram(
    const Group& g, std::uint64_t cap = 200000) {
  std::unordered_map<std::uint64_t, std::uint64_t> h;
  for (const Perm& e : g.elements(cap)) ++h[e.element_order()];
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out(h.begin(), h.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace plinth
