#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace plinth {

using Pt = std::uint32_t;

struct domain_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A permutation of {0..n-1} stored as its image table.
///
/// Composition is left-to-right: x^(a*b) = (x^a)^b, matching the usual
/// right-action convention for permutation groups.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<Pt> images) : img_(std::move(images)) {
    std::vector<bool> seen(img_.size(), false);
    for (Pt x : img_) {
      if (x >= img_.size() || seen[x]) throw domain_error("Perm: image table is not a bijection");
      seen[x] = true;
    }
  }

  static Perm identity(Pt n) {
    std::vector<Pt> v(n);
    std::iota(v.begin(), v.end(), Pt{0});
    return Perm(unchecked{}, std::move(v));
  }

  Pt degree() const { return static_cast<Pt>(img_.size()); }
  Pt operator[](Pt x) const { return img_[x]; }
  const std::vector<Pt>& images() const { return img_; }

  bool is_identity() const {
    for (Pt x = 0; x < degree(); ++x)
      if (img_[x] != x) return false;
    return true;
  }

  /// Smallest point moved, or degree() if identity.
  Pt first_moved() const {
    for (Pt x = 0; x < degree(); ++x)
      if (img_[x] != x) return x;
    return degree();
  }

  Perm operator*(const Perm& rhs) const {
    std::vector<Pt> v(img_.size());
    for (Pt x = 0; x < degree(); ++x) v[x] = rhs.img_[img_[x]];
    return Perm(unchecked{}, std::move(v));
  }

  Perm inverse() const {
    std::vector<Pt> v(img_.size());
    for (Pt x = 0; x < degree(); ++x) v[img_[x]] = x;
    return Perm(unchecked{}, std::move(v));
  }

  /// t^-1 * this * t
  Perm conjugated_by(const Perm& t) const {
    std::vector<Pt> v(img_.size());
    for (Pt x = 0; x < degree(); ++x) v[t.img_[x]] = t.img_[img_[x]];
    return Perm(unchecked{}, std::move(v));
  }

  std::uint64_t element_order() const {
    std::uint64_t ord = 1;
    std::vector<bool> seen(degree(), false);
    for (Pt x = 0; x < degree(); ++x) {
      if (seen[x]) continue;
      std::uint64_t len = 0;
      for (Pt y = x; !seen[y]; y = img_[y]) {
        seen[y] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  /// Multiset of cycle lengths (including fixed points), sorted.
  std::vector<Pt> cycle_type() const {
    std::vector<Pt> type;
    std::vector<bool> seen(degree(), false);
    for (Pt x = 0; x < degree(); ++x) {
      if (seen[x]) continue;
      Pt len = 0;
      for (Pt y = x; !seen[y]; y = img_[y]) {
        seen[y] = true;
        ++len;
      }
      type.push_back(len);
    }
    std::sort(type.begin(), type.end());
    return type;
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

 private:
  struct unchecked {};
  Perm(unchecked, std::vector<Pt> images) : img_(std::move(images)) {}
  std::vector<Pt> img_;

  friend struct PermBuilder;
};

/// Escape hatch for hot paths that construct known-valid tables.
struct PermBuilder {
  static Perm from_valid(std::vector<Pt> images) {
    return Perm(Perm::unchecked{}, std::move(images));
  }
};

struct PermHash {
  std::size_t operator()(const Perm& p) const {
    std::size_t h = p.degree();
    for (Pt x : p.images()) h = h * 1000003u + x;
    return h;
  }
};

inline std::uint64_t vec_hash(const std::vector<Pt>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (Pt x : v) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace plinth
