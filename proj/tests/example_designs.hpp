// Test-side constructions of the two small partial linear spaces and the
// brute-force design-stabilizer search used to realize their automorphisms.
#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "plinth/catalog.hpp"
#include "plinth/classify.hpp"

namespace plinth_testing {

using namespace plinth;

/// Points Z_14, lines {x, x+1, x+4, x+6}.
inline IncidenceStructure z14_design() {
  IncidenceStructure s;
  s.points = 14;
  for (Pt x = 0; x < 14; ++x)
    s.lines.push_back({x, static_cast<Pt>((x + 1) % 14), static_cast<Pt>((x + 4) % 14),
                       static_cast<Pt>((x + 6) % 14)});
  return s;
}

/// The 15 points of the binary projective 3-space as nonzero GF(4)^2 vectors
/// (encoded 1..15, point index = encoding - 1), all 35 GF(2)-lines, and the
/// 5-line spread formed by the GF(4)-scalar orbits.
struct Pg32Design {
  IncidenceStructure all_lines;
  IncidenceStructure minus_spread;
  std::vector<std::vector<Pt>> spread;
};

inline Pg32Design pg32_design() {
  Field f4 = FiniteField::make(2, 2);
  Pg32Design out;
  out.all_lines.points = 15;
  out.minus_spread.points = 15;
  std::set<std::vector<Pt>> spread_set;
  for (std::uint32_t enc = 1; enc < 16; ++enc) {
    // GF(4)-scalar orbit of the vector: {v, wv, w^2 v}
    auto v = detail::decode_vector(enc, 2, 4);
    std::vector<Pt> line;
    for (std::uint32_t k = 0; k < 3; ++k) {
      std::uint32_t lam = f4->omega_pow(k);
      std::vector<std::uint32_t> w{f4->mul(lam, v[0]), f4->mul(lam, v[1])};
      line.push_back(static_cast<Pt>(detail::encode_vector(w, 4) - 1));
    }
    std::sort(line.begin(), line.end());
    spread_set.insert(line);
  }
  for (auto& l : spread_set) out.spread.push_back(l);
  for (std::uint32_t a = 1; a < 16; ++a)
    for (std::uint32_t b = a + 1; b < 16; ++b) {
      std::uint32_t c = a ^ b;  // GF(2)-sum of encodings
      if (c <= b) continue;     // enumerate each line once, a < b < c
      std::vector<Pt> line{static_cast<Pt>(a - 1), static_cast<Pt>(b - 1),
                           static_cast<Pt>(c - 1)};
      out.all_lines.lines.push_back(line);
      if (!spread_set.count(line)) out.minus_spread.lines.push_back(line);
    }
  return out;
}

/// Backtracking search for all design automorphisms fixing a base point:
/// images are pruned by collinear-triple preservation and certified by the
/// full line-set check. Intended for small (<= 20 point) designs.
inline std::vector<Perm> design_point_stabilizer(const IncidenceStructure& s, Pt fixed) {
  std::set<std::vector<Pt>> lineset;
  for (auto l : s.lines) {
    std::sort(l.begin(), l.end());
    lineset.insert(l);
  }
  std::vector<std::vector<std::vector<bool>>> triple(
      s.points, std::vector<std::vector<bool>>(s.points, std::vector<bool>(s.points, false)));
  for (const auto& l : s.lines)
    for (Pt a : l)
      for (Pt b : l)
        for (Pt c : l)
          if (a != b && b != c && a != c) triple[a][b][c] = true;

  std::vector<Perm> found;
  std::vector<std::int64_t> psi(s.points, -1);
  std::vector<bool> used(s.points, false);
  psi[fixed] = fixed;
  used[fixed] = true;

  std::function<void(Pt)> rec = [&](Pt next) {
    while (next < s.points && psi[next] >= 0) ++next;
    if (next == s.points) {
      std::vector<Pt> img(s.points);
      for (Pt i = 0; i < s.points; ++i) img[i] = static_cast<Pt>(psi[i]);
      Perm cand = PermBuilder::from_valid(std::move(img));
      for (const auto& l : s.lines) {
        std::vector<Pt> li;
        for (Pt x : l) li.push_back(cand[x]);
        std::sort(li.begin(), li.end());
        if (!lineset.count(li)) return;
      }
      found.push_back(cand);
      return;
    }
    for (Pt y = 0; y < s.points; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (Pt a = 0; a < s.points && ok; ++a) {
        if (psi[a] < 0) continue;
        for (Pt b = 0; b < s.points && ok; ++b) {
          if (psi[b] < 0 || a == b || a == next || b == next) continue;
          if (triple[next][a][b] !=
              triple[y][static_cast<Pt>(psi[a])][static_cast<Pt>(psi[b])])
            ok = false;
        }
      }
      if (!ok) continue;
      psi[next] = y;
      used[y] = true;
      rec(next + 1);
      psi[next] = -1;
      used[y] = false;
    }
  };
  rec(0);
  return found;
}

/// The automorphism group of the Z_14 design: translations plus the point
/// stabilizer found by search.
inline Group z14_design_group() {
  IncidenceStructure s = z14_design();
  std::vector<Pt> tr(14);
  for (Pt i = 0; i < 14; ++i) tr[i] = (i + 1) % 14;
  std::vector<Perm> gens{Perm(tr)};
  for (const Perm& p : design_point_stabilizer(s, 0)) gens.push_back(p);
  return Group(14, gens);
}

}  // namespace plinth_testing
