#pragma once

#include <cstdint>
#include <vector>

#include "plinth/gf.hpp"

namespace plinth {

/// d x d matrix over a finite field, row-vector convention: vectors act as
/// v -> v * A.
class Mat {
 public:
  Mat(Field f, std::uint32_t dim) : f_(std::move(f)), d_(dim), e_(dim * dim, 0) {}

  static Mat identity(Field f, std::uint32_t dim) {
    Mat m(std::move(f), dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = 1;
    return m;
  }

  std::uint32_t dim() const { return d_; }
  const Field& field() const { return f_; }

  std::uint32_t& at(std::uint32_t r, std::uint32_t c) { return e_[r * d_ + c]; }
  std::uint32_t at(std::uint32_t r, std::uint32_t c) const { return e_[r * d_ + c]; }

  Mat operator*(const Mat& o) const {
    Mat r(f_, d_);
    for (std::uint32_t i = 0; i < d_; ++i)
      for (std::uint32_t k = 0; k < d_; ++k) {
        std::uint32_t a = at(i, k);
        if (!a) continue;
        for (std::uint32_t j = 0; j < d_; ++j)
          r.at(i, j) = f_->add(r.at(i, j), f_->mul(a, o.at(k, j)));
      }
    return r;
  }

  bool operator==(const Mat& o) const { return d_ == o.d_ && e_ == o.e_; }

  std::vector<std::uint32_t> apply_row(const std::vector<std::uint32_t>& v) const {
    std::vector<std::uint32_t> r(d_, 0);
    for (std::uint32_t i = 0; i < d_; ++i) {
      if (!v[i]) continue;
      for (std::uint32_t j = 0; j < d_; ++j) r[j] = f_->add(r[j], f_->mul(v[i], at(i, j)));
    }
    return r;
  }

  Mat transpose() const {
    Mat r(f_, d_);
    for (std::uint32_t i = 0; i < d_; ++i)
      for (std::uint32_t j = 0; j < d_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  Mat frobenius(std::uint32_t i = 1) const {
    Mat r(f_, d_);
    for (std::uint32_t k = 0; k < d_ * d_; ++k) r.e_[k] = f_->frob(e_[k], i);
    return r;
  }

  /// Entrywise conjugate over the index-2 subfield, then transpose.
  Mat conj_transpose() const {
    Mat r(f_, d_);
    for (std::uint32_t i = 0; i < d_; ++i)
      for (std::uint32_t j = 0; j < d_; ++j) r.at(j, i) = f_->conj(at(i, j));
    return r;
  }

  std::uint32_t det() const {
    Mat m = *this;
    std::uint32_t d = 1;
    for (std::uint32_t col = 0; col < d_; ++col) {
      std::uint32_t piv = col;
      while (piv < d_ && m.at(piv, col) == 0) ++piv;
      if (piv == d_) return 0;
      if (piv != col) {
        for (std::uint32_t j = 0; j < d_; ++j) std::swap(m.at(piv, j), m.at(col, j));
        d = f_->neg(d);
      }
      d = f_->mul(d, m.at(col, col));
      std::uint32_t ipiv = f_->inv(m.at(col, col));
      for (std::uint32_t r = col + 1; r < d_; ++r) {
        std::uint32_t factor = f_->mul(m.at(r, col), ipiv);
        if (!factor) continue;
        for (std::uint32_t j = col; j < d_; ++j)
          m.at(r, j) = f_->sub(m.at(r, j), f_->mul(factor, m.at(col, j)));
      }
    }
    return d;
  }

  Mat inverse() const {
    Mat m = *this;
    Mat inv = identity(f_, d_);
    for (std::uint32_t col = 0; col < d_; ++col) {
      std::uint32_t piv = col;
      while (piv < d_ && m.at(piv, col) == 0) ++piv;
      if (piv == d_) throw domain_error("matrix not invertible");
      if (piv != col)
        for (std::uint32_t j = 0; j < d_; ++j) {
          std::swap(m.at(piv, j), m.at(col, j));
          std::swap(inv.at(piv, j), inv.at(col, j));
        }
      std::uint32_t ip = f_->inv(m.at(col, col));
      for (std::uint32_t j = 0; j < d_; ++j) {
        m.at(col, j) = f_->mul(m.at(col, j), ip);
        inv.at(col, j) = f_->mul(inv.at(col, j), ip);
      }
      for (std::uint32_t r = 0; r < d_; ++r) {
        if (r == col) continue;
        std::uint32_t factor = m.at(r, col);
        if (!factor) continue;
        for (std::uint32_t j = 0; j < d_; ++j) {
          m.at(r, j) = f_->sub(m.at(r, j), f_->mul(factor, m.at(col, j)));
          inv.at(r, j) = f_->sub(inv.at(r, j), f_->mul(factor, inv.at(col, j)));
        }
      }
    }
    return inv;
  }

  /// Rank over the field (used by the Dickson invariant).
  std::uint32_t rank() const {
    Mat m = *this;
    std::uint32_t rk = 0;
    for (std::uint32_t col = 0; col < d_ && rk < d_; ++col) {
      std::uint32_t piv = rk;
      while (piv < d_ && m.at(piv, col) == 0) ++piv;
      if (piv == d_) continue;
      if (piv != rk)
        for (std::uint32_t j = 0; j < d_; ++j) std::swap(m.at(piv, j), m.at(rk, j));
      std::uint32_t ip = f_->inv(m.at(rk, col));
      for (std::uint32_t r = 0; r < d_; ++r) {
        if (r == rk) continue;
        std::uint32_t factor = f_->mul(m.at(r, col), ip);
        if (!factor) continue;
        for (std::uint32_t j = 0; j < d_; ++j)
          m.at(r, j) = f_->sub(m.at(r, j), f_->mul(factor, m.at(rk, j)));
      }
      ++rk;
    }
    return rk;
  }

 private:
  Field f_;
  std::uint32_t d_;
  std::vector<std::uint32_t> e_;
};

/// phi^i A in a semilinear group: the Frobenius power applied first, then the
/// matrix. Composition follows (phi^i A)(phi^j B) = phi^(i+j) (A^(phi^j) B).
struct Semilinear {
  std::uint32_t frob = 0;
  Mat mat;

  Semilinear(std::uint32_t i, Mat m) : frob(i), mat(std::move(m)) {}

  static Semilinear linear(Mat m) { return Semilinear(0, std::move(m)); }

  std::uint32_t frob_order_base() const {
    return mat.field()->extension_degree();
  }

  Semilinear operator*(const Semilinear& o) const {
    std::uint32_t a = mat.field()->extension_degree();
    return Semilinear((frob + o.frob) % a, mat.frobenius(o.frob) * o.mat);
  }

  std::vector<std::uint32_t> apply_row(std::vector<std::uint32_t> v) const {
    const Field& f = mat.field();
    for (auto& x : v) x = f->frob(x, frob);
    return mat.apply_row(v);
  }
};

}  // namespace plinth
