#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "plinth/cosets.hpp"
#include "plinth/group.hpp"

namespace plinth {

/// Outcome of a bounded permutational-isomorphism search. `not_found` is
/// reported only when an invariant separates the groups or the search space
/// was exhausted; a spent node budget reports `budget_exhausted` instead,
/// meaning unknown rather than provably distinct.
enum class IsoStatus { found, not_found, budget_exhausted };

struct IsoResult {
  IsoStatus status = IsoStatus::not_found;
  Perm witness;  // point bijection psi with g1^psi = g2, when found
  std::string reason;
};

namespace detail {

struct OrbitalColoring {
  unsigned colors = 0;
  std::vector<std::vector<unsigned>> color;  // color[x][y]
  std::vector<std::uint64_t> color_size;     // pairs per color
};

inline OrbitalColoring orbital_coloring(const Group& g) {
  Pt n = g.degree();
  OrbitalColoring oc;
  oc.color.assign(n, std::vector<unsigned>(n, UINT32_MAX));
  for (Pt x = 0; x < n; ++x)
    for (Pt y = 0; y < n; ++y) {
      if (oc.color[x][y] != UINT32_MAX) continue;
      unsigned c = oc.colors++;
      oc.color_size.push_back(1);
      std::vector<std::pair<Pt, Pt>> work{{x, y}};
      oc.color[x][y] = c;
      for (std::size_t i = 0; i < work.size(); ++i)
        for (const Perm& p : g.gens()) {
          Pt a = p[work[i].first], b = p[work[i].second];
          if (oc.color[a][b] == UINT32_MAX) {
            oc.color[a][b] = c;
            ++oc.color_size[c];
            work.push_back({a, b});
          }
        }
    }
  return oc;
}

// Backtracking over point bijections preserving a matched orbital coloring.
// `accept` may reject a completed bijection to resume the search.
class IsoSearch {
 public:
  IsoSearch(const Group& g1, const Group& g2, std::uint64_t budget)
      : g1_(g1), g2_(g2), c1_(orbital_coloring(g1)), c2_(orbital_coloring(g2)), budget_(budget) {}

  bool colors_match() const { return c1_.colors == c2_.colors; }
  bool exhausted() const { return exhausted_; }

  std::optional<Perm> run(const std::vector<std::pair<Pt, Pt>>& forced,
                          const std::function<bool(const Perm&)>& accept) {
    std::vector<std::vector<unsigned>> candidates(c1_.colors);
    for (unsigned i = 0; i < c1_.colors; ++i)
      for (unsigned j = 0; j < c2_.colors; ++j)
        if (c1_.color_size[i] == c2_.color_size[j]) candidates[i].push_back(j);
    cmap_.assign(c1_.colors, UINT32_MAX);
    taken_.assign(c2_.colors, false);
    nodes_ = 0;
    exhausted_ = false;
    result_.reset();
    try_colors(0, candidates, forced, accept);
    return result_;
  }

 private:
  bool try_colors(unsigned i, const std::vector<std::vector<unsigned>>& candidates,
                  const std::vector<std::pair<Pt, Pt>>& forced,
                  const std::function<bool(const Perm&)>& accept) {
    if (exhausted_) return false;
    if (i == c1_.colors) return run_points(forced, accept);
    for (unsigned j : candidates[i]) {
      if (taken_[j]) continue;
      cmap_[i] = j;
      taken_[j] = true;
      if (try_colors(i + 1, candidates, forced, accept)) return true;
      taken_[j] = false;
      if (exhausted_) return false;
    }
    cmap_[i] = UINT32_MAX;
    return false;
  }

  bool run_points(const std::vector<std::pair<Pt, Pt>>& forced,
                  const std::function<bool(const Perm&)>& accept) {
    psi_.assign(g1_.degree(), -1);
    used_.assign(g2_.degree(), false);
    for (auto& [a, b] : forced) {
      if (!consistent(a, b)) return false;
      psi_[a] = b;
      used_[b] = true;
    }
    return extend(0, accept);
  }

  bool consistent(Pt x, Pt y) const {
    if (cmap_[c1_.color[x][x]] != c2_.color[y][y]) return false;
    for (Pt a = 0; a < g1_.degree(); ++a) {
      if (psi_[a] < 0) continue;
      Pt b = static_cast<Pt>(psi_[a]);
      if (cmap_[c1_.color[a][x]] != c2_.color[b][y]) return false;
      if (cmap_[c1_.color[x][a]] != c2_.color[y][b]) return false;
    }
    return true;
  }

  bool extend(Pt next, const std::function<bool(const Perm&)>& accept) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return false;
    }
    while (next < g1_.degree() && psi_[next] >= 0) ++next;
    if (next == g1_.degree()) return finish(accept);
    for (Pt y = 0; y < g2_.degree(); ++y) {
      if (used_[y] || !consistent(next, y)) continue;
      psi_[next] = y;
      used_[y] = true;
      if (extend(next + 1, accept)) return true;
      psi_[next] = -1;
      used_[y] = false;
      if (exhausted_) return false;
    }
    return false;
  }

  bool finish(const std::function<bool(const Perm&)>& accept) {
    std::vector<Pt> img(g1_.degree());
    for (Pt x = 0; x < g1_.degree(); ++x) img[x] = static_cast<Pt>(psi_[x]);
    Perm w = PermBuilder::from_valid(std::move(img));
    for (const Perm& a : g1_.gens())
      if (!g2_.contains(a.conjugated_by(w))) return false;
    // Conjugation by w embeds g1 into g2; equal orders settle equality.
    if (!accept(w)) return false;
    result_ = w;
    return true;
  }

  const Group& g1_;
  const Group& g2_;
  OrbitalColoring c1_, c2_;
  std::uint64_t budget_;
  std::vector<unsigned> cmap_;
  std::vector<bool> taken_;
  std::vector<std::int64_t> psi_;
  std::vector<bool> used_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
  std::optional<Perm> result_;
};

}  // namespace detail

/// Fingerprint prefilter: order, degree, rank and suborbit profile for
/// transitive groups, orbit profile otherwise, minimal block profile, and the
/// element-order histogram when both groups are enumerable.
inline bool same_perm_fingerprint(const Group& g1, const Group& g2, std::string* why = nullptr) {
  auto fail = [&](const char* r) {
    if (why) *why = r;
    return false;
  };
  if (g1.degree() != g2.degree()) return fail("degree mismatch");
  if (g1.order() != g2.order()) return fail("order mismatch");
  auto osz = [](const Group& g) {
    std::vector<std::size_t> v;
    for (auto& o : g.orbits()) v.push_back(o.size());
    std::sort(v.begin(), v.end());
    return v;
  };
  if (osz(g1) != osz(g2)) return fail("orbit profile mismatch");
  if (g1.is_transitive()) {
    if (g1.rank() != g2.rank()) return fail("rank mismatch");
    if (g1.suborbit_profile() != g2.suborbit_profile()) return fail("suborbit profile mismatch");
    auto blocks = [](const Group& g) {
      std::vector<std::pair<Pt, Pt>> v;
      for (auto& bs : minimal_block_systems(g)) v.push_back({bs.cell_size(), bs.cell_count()});
      std::sort(v.begin(), v.end());
      return v;
    };
    if (blocks(g1) != blocks(g2)) return fail("block profile mismatch");
  }
  if (g1.order() <= 20000) {
    if (element_order_histogram(g1) != element_order_histogram(g2))
      return fail("element order histogram mismatch");
  }
  if (why) *why = "";
  return true;
}

namespace detail {

/// Fast path for generator-aligned pairs: when mapping the i-th generator of
/// g1 to the i-th generator of g2 extends to an action isomorphism, the
/// witness is forced by transporting the orbit BFS, one base image at a time.
inline std::optional<Perm> aligned_generator_witness(
    const Group& g1, const Group& g2, const std::vector<std::pair<Pt, Pt>>& forced,
    const std::function<bool(const Perm&)>& accept) {
  if (g1.gens().size() != g2.gens().size()) return std::nullopt;
  if (!g1.is_transitive() || !g2.is_transitive()) return std::nullopt;
  for (Pt y0 = 0; y0 < g2.degree(); ++y0) {
    std::vector<std::int64_t> psi(g1.degree(), -1);
    std::vector<bool> used(g2.degree(), false);
    psi[0] = y0;
    used[y0] = true;
    std::vector<Pt> work{0};
    bool ok = true;
    for (std::size_t i = 0; i < work.size() && ok; ++i) {
      Pt p = work[i];
      Pt q = static_cast<Pt>(psi[p]);
      for (std::size_t gi = 0; gi < g1.gens().size(); ++gi) {
        Pt pn = g1.gens()[gi][p];
        Pt qn = g2.gens()[gi][q];
        if (psi[pn] < 0) {
          if (used[qn]) {
            ok = false;
            break;
          }
          psi[pn] = qn;
          used[qn] = true;
          work.push_back(pn);
        } else if (psi[pn] != qn) {
          ok = false;
          break;
        }
      }
    }
    if (!ok || work.size() != g1.degree()) continue;
    std::vector<Pt> img(g1.degree());
    for (Pt x = 0; x < g1.degree(); ++x) img[x] = static_cast<Pt>(psi[x]);
    Perm w = PermBuilder::from_valid(std::move(img));
    bool forced_ok = true;
    for (auto& [a, b] : forced)
      if (w[a] != b) forced_ok = false;
    if (forced_ok && accept(w)) return w;
  }
  return std::nullopt;
}

}  // namespace detail

/// Bounded search for a point bijection psi with g1^psi = g2, optionally with
/// forced point images and an extra acceptance predicate on the witness.
inline IsoResult perm_isomorphic(const Group& g1, const Group& g2, std::uint64_t budget = 1000000,
                                 const std::vector<std::pair<Pt, Pt>>& forced = {},
                                 const std::function<bool(const Perm&)>& accept =
                                     [](const Perm&) { return true; }) {
  IsoResult res;
  std::string why;
  if (!same_perm_fingerprint(g1, g2, &why)) {
    res.status = IsoStatus::not_found;
    res.reason = "fingerprint: " + why;
    return res;
  }
  if (auto w = detail::aligned_generator_witness(g1, g2, forced, accept)) {
    res.status = IsoStatus::found;
    res.witness = *w;
    res.reason = "aligned generator transport";
    return res;
  }
  detail::IsoSearch s(g1, g2, budget);
  if (!s.colors_match()) {
    res.status = IsoStatus::not_found;
    res.reason = "orbital count mismatch";
    return res;
  }
  std::optional<Perm> w = s.run(forced, accept);
  if (w) {
    res.status = IsoStatus::found;
    res.witness = *w;
    return res;
  }
  res.status = s.exhausted() ? IsoStatus::budget_exhausted : IsoStatus::not_found;
  res.reason = s.exhausted() ? "search budget exhausted" : "search space exhausted";
  return res;
}

/// Equivalence of pairs (group, distinguished subgroup, fixed point): a
/// permutational isomorphism additionally mapping sigma to delta and r1 to r2.
inline IsoResult pairs_equivalent(const Group& g1, const Group& r1, Pt sigma, const Group& g2,
                                  const Group& r2, Pt delta, std::uint64_t budget = 1000000) {
  if (r1.order() != r2.order()) {
    IsoResult res;
    res.status = IsoStatus::not_found;
    res.reason = "fingerprint: distinguished subgroup order mismatch";
    return res;
  }
  auto accept = [&](const Perm& w) {
    for (const Perm& a : r1.gens())
      if (!r2.contains(a.conjugated_by(w))) return false;
    return true;
  };
  return perm_isomorphic(g1, g2, budget, {{sigma, delta}}, accept);
}

}  // namespace plinth
