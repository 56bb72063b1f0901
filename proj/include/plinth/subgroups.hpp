#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "plinth/group.hpp"

namespace plinth {

/// All normal subgroups N of h with |h:N| <= max_index. Exhaustive: h must be
/// element-enumerable for the conjugacy classes (default cap 1e4, configurable
/// up front); the lattice itself is built from chain-backed normal closures of
/// class representatives, closed under joins.
inline std::vector<Group> normal_subgroups_up_to_index(const Group& h, std::uint64_t max_index,
                                                       std::uint64_t cap = 10000) {
  if (h.order() > cap) throw group_too_large_error("normal_subgroups_up_to_index: cap exceeded");
  std::vector<Group> all{Group::trivial(h.degree())};
  auto known = [&](const Group& g) {
    for (const Group& k : all)
      if (k.order() == g.order() && k.contains_group(g)) return true;
    return false;
  };
  std::deque<Group> work;
  for (const Perm& r : conjugacy_class_reps(h, cap)) {
    if (r.is_identity()) continue;
    Group c = normal_closure(h, {r});
    if (!known(c)) {
      all.push_back(c);
      work.push_back(c);
    }
  }
  std::vector<Group> basis = all;
  while (!work.empty()) {
    Group s = work.front();
    work.pop_front();
    for (const Group& b : basis) {
      std::vector<Perm> gens = s.gens();
      for (const Perm& g : b.gens()) gens.push_back(g);
      Group join(h.degree(), gens);
      if (!known(join)) {
        all.push_back(join);
        work.push_back(join);
      }
    }
    basis.push_back(s);
  }
  std::vector<Group> out;
  for (const Group& n : all)
    if (h.order() / n.order() <= max_index) out.push_back(n);
  std::sort(out.begin(), out.end(),
            [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return out;
}

/// Minimal normal subgroups. Exhaustive for element-enumerable groups; for
/// larger groups a bounded certification is used: normal closures of single
/// elements drawn from generators, their prime powers and commutators, then
/// descent inside each candidate until no sampled element generates a smaller
/// closure.
inline std::vector<Group> minimal_normal_subgroups(const Group& g, std::uint64_t enum_cap = 120000) {
  std::vector<Group> closures;
  auto add_closure = [&](const Perm& x) {
    if (x.is_identity()) return;
    Group cl = normal_closure(g, {x});
    for (const Group& c : closures)
      if (c.order() == cl.order() && c.contains_group(cl)) return;
    closures.push_back(std::move(cl));
  };

  if (g.order() <= enum_cap && g.degree() * g.order() <= 60000000ull) {
    for (const Perm& r : conjugacy_class_reps(g, enum_cap)) add_closure(r);
  } else {
    std::vector<Perm> sample;
    for (std::size_t gi = 0; gi < g.gens().size() && gi < 12; ++gi) {
      const Perm& a = g.gens()[gi];
      sample.push_back(a);
      std::uint64_t n = a.element_order();
      for (std::uint64_t p = 2; p <= n; ++p)
        if (n % p == 0) {
          Perm pw = a;
          for (std::uint64_t k = 1; k < n / p; ++k) pw = pw * a;
          sample.push_back(pw);  // a^(n/p), of prime-ish order
          while (n % p == 0) n /= p;
        }
    }
    std::size_t comms = 0;
    for (std::size_t i = 0; i < g.gens().size() && comms < 20; ++i)
      for (std::size_t j = i + 1; j < g.gens().size() && comms < 20; ++j) {
        const Perm &a = g.gens()[i], &b = g.gens()[j];
        Perm c = a.inverse() * b.inverse() * a * b;
        if (!c.is_identity()) {
          sample.push_back(c);
          ++comms;
        }
      }
    for (const Perm& x : sample) add_closure(x);
    // Descend: inside each closure, try elements of it (its generators and
    // their commutators) for strictly smaller closures.
    for (std::size_t pass = 0; pass < 4; ++pass) {
      bool changed = false;
      std::vector<Group> next;
      for (const Group& c : closures) {
        Group best = c;
        for (const Perm& x : c.gens()) {
          Group cl = normal_closure(g, {x});
          if (cl.order() < best.order()) best = cl;
        }
        for (std::size_t i = 0; i < c.gens().size() && i < 8; ++i)
          for (std::size_t j = i + 1; j < c.gens().size() && j < 8; ++j) {
            Perm x = c.gens()[i].inverse() * c.gens()[j].inverse() * c.gens()[i] * c.gens()[j];
            if (x.is_identity()) continue;
            Group cl = normal_closure(g, {x});
            if (cl.order() < best.order()) best = cl;
          }
        if (best.order() < c.order()) changed = true;
        next.push_back(best);
      }
      closures = std::move(next);
      if (!changed) break;
    }
  }

  // Prune to minimal elements of the containment order.
  std::vector<Group> minimal;
  for (const Group& c : closures) {
    bool is_min = true;
    for (const Group& d : closures) {
      if (d.order() < c.order() && c.contains_group(d)) {
        is_min = false;
        break;
      }
    }
    if (!is_min) continue;
    bool dup = false;
    for (const Group& m : minimal)
      if (m.order() == c.order() && m.contains_group(c)) {
        dup = true;
        break;
      }
    if (!dup) minimal.push_back(c);
  }
  std::sort(minimal.begin(), minimal.end(),
            [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return minimal;
}

/// Whether the group is simple. Exhaustive when element-enumerable, otherwise
/// certified by sampled normal closures (every sampled nontrivial element must
/// close to the whole group).
inline bool is_simple_certified(const Group& g, std::uint64_t enum_cap = 120000) {
  if (g.order() == 1) return false;
  if (g.order() <= enum_cap && g.degree() * g.order() <= 60000000ull) {
    for (const Perm& r : conjugacy_class_reps(g, enum_cap)) {
      if (r.is_identity()) continue;
      if (normal_closure(g, {r}).order() != g.order()) return false;
    }
    return true;
  }
  auto mins = minimal_normal_subgroups(g, enum_cap);
  return mins.size() == 1 && mins[0].order() == g.order();
}

/// Kernel of the map onto an elementary abelian exponent-p quotient:
/// [G,G] together with all p-th powers of generators.
inline Group elementary_abelian_kernel(const Group& g, std::uint64_t p) {
  Group der = derived_subgroup(g);
  std::vector<Perm> gens = der.gens();
  for (const Perm& a : g.gens()) {
    Perm pw = Perm::identity(g.degree());
    for (std::uint64_t k = 0; k < p; ++k) pw = pw * a;
    if (!pw.is_identity()) gens.push_back(pw);
  }
  return normal_closure(g, gens);
}

/// Normal subgroups R of g whose quotient g/R is elementary abelian of order
/// p^c for the given prime. Enumerated via subgroups of g/K_p.
inline std::vector<Group> elementary_abelian_quotient_kernels(const Group& g, std::uint64_t p) {
  Group kp = elementary_abelian_kernel(g, p);
  std::uint64_t idx = g.order() / kp.order();
  std::vector<Group> out;
  if (idx == 1) return out;
  // Coset representatives of kp in g (BFS over generators).
  std::vector<Perm> reps{Perm::identity(g.degree())};
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (const Perm& a : g.gens()) {
      Perm c = reps[i] * a;
      bool fresh = true;
      for (const Perm& r : reps)
        if (kp.contains(c * r.inverse())) {
          fresh = false;
          break;
        }
      if (fresh) reps.push_back(c);
    }
  if (reps.size() != idx) throw domain_error("elementary_abelian_quotient_kernels: coset count");
  // Subgroups of the elementary abelian quotient, by subset closure over
  // coset indices (idx is tiny: p^m with m <= 3 in practice).
  auto find_coset = [&](const Perm& x) -> std::uint32_t {
    for (std::uint32_t i = 0; i < reps.size(); ++i)
      if (kp.contains(x * reps[i].inverse())) return i;
    throw domain_error("coset lookup failed");
  };
  std::set<std::set<std::uint32_t>> subsets;
  std::set<std::uint32_t> triv{0};
  subsets.insert(triv);
  std::deque<std::set<std::uint32_t>> work{triv};
  while (!work.empty()) {
    auto s = work.front();
    work.pop_front();
    for (std::uint32_t e = 1; e < reps.size(); ++e) {
      if (s.count(e)) continue;
      std::set<std::uint32_t> bigger = s;
      bigger.insert(e);
      // close under products
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::uint32_t> cur(bigger.begin(), bigger.end());
        for (std::uint32_t a : cur)
          for (std::uint32_t b : cur) {
            std::uint32_t c = find_coset(reps[a] * reps[b]);
            if (bigger.insert(c).second) grew = true;
          }
      }
      if (subsets.insert(bigger).second) work.push_back(bigger);
    }
  }
  for (const auto& s : subsets) {
    if (s.size() == reps.size()) continue;  // the improper one: quotient would be trivial
    std::vector<Perm> gens = kp.gens();
    for (std::uint32_t i : s)
      if (i != 0) gens.push_back(reps[i]);
    out.push_back(Group(g.degree(), gens));
  }
  std::sort(out.begin(), out.end(),
            [](const Group& a, const Group& b) { return a.order() < b.order(); });
  return out;
}

/// The unique normal subgroup of index r with elementary abelian quotient;
/// throws if it is not unique.
inline Group unique_normal_with_quotient(const Group& g, std::uint64_t r) {
  std::uint64_t p = 2;
  while (r % p != 0) ++p;
  std::vector<Group> found;
  for (const Group& k : elementary_abelian_quotient_kernels(g, p))
    if (g.order() / k.order() == r) found.push_back(k);
  if (found.size() != 1) throw domain_error("unique_normal_with_quotient: not unique");
  return found[0];
}

struct index_too_large_error : domain_error {
  using domain_error::domain_error;
};

/// Elements of an enumerable group normalizing the subgroup h.
inline Group normalizer_in(const Group& g, const Group& h, std::uint64_t cap = 200000) {
  std::vector<Perm> gens;
  for (const Perm& e : g.elements(cap)) {
    if (e.is_identity()) continue;
    bool norm = true;
    for (const Perm& x : h.gens())
      if (!h.contains(x.conjugated_by(e))) {
        norm = false;
        break;
      }
    if (norm) gens.push_back(e);
  }
  return Group(g.degree(), gens);
}

}  // namespace plinth
