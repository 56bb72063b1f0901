#pragma once

#include <cstdint>
#include <vector>

#include "plinth/matrix.hpp"

namespace plinth {

struct form_not_preserved_error : domain_error {
  using domain_error::domain_error;
};

/// Elementary transvections E_ij(w^k) for k < a: together they generate
/// SL(d, q). Determinants are all 1 by construction.
inline std::vector<Mat> sl_generators(std::uint32_t d, const Field& f) {
  if (d < 2) throw domain_error("sl_generators: need d >= 2");
  std::vector<Mat> gens;
  for (std::uint32_t i = 0; i < d; ++i)
    for (std::uint32_t j = 0; j < d; ++j) {
      if (i == j) continue;
      for (std::uint32_t k = 0; k < f->extension_degree(); ++k) {
        Mat m = Mat::identity(f, d);
        m.at(i, j) = f->omega_pow(k);
        gens.push_back(m);
      }
    }
  return gens;
}

/// SL(d, q) extended by diag(w, 1, .., 1), which maps det onto the full
/// multiplicative group.
inline std::vector<Mat> gl_generators(std::uint32_t d, const Field& f) {
  std::vector<Mat> gens = sl_generators(d, f);
  Mat diag = Mat::identity(f, d);
  diag.at(0, 0) = f->omega();
  gens.push_back(diag);
  return gens;
}

/// The hermitian form matrix of the unitary setup: antidiagonal ones, for
/// the basis e, x, f with (e,f) = (x,x) = 1 and all other products zero.
inline Mat unitary_form_matrix(const Field& f2) {
  Mat p(f2, 3);
  p.at(0, 2) = 1;
  p.at(1, 1) = 1;
  p.at(2, 0) = 1;
  return p;
}

inline bool preserves_unitary_form(const Mat& a) {
  Mat p = unitary_form_matrix(a.field());
  return a * p * a.conj_transpose() == p;
}

/// Generators of SU(3, q) inside SL(3, q^2): the root subgroup of lower
/// unitriangular matrices with s + s-bar + u u-bar = 0, a torus element
/// diag(w, w^(q-1), w^-q), and a Weyl element. The field must be GF(q^2).
inline std::vector<Mat> su3_generators(const Field& f2) {
  if (f2->extension_degree() % 2 != 0) throw domain_error("su3_generators: field must be GF(q^2)");
  std::uint32_t qq = f2->order();
  std::uint32_t q = 1;
  {
    std::uint32_t q0 = f2->characteristic();
    for (std::uint32_t i = 0; i < f2->extension_degree() / 2; ++i) q *= q0;
  }
  auto root_elt = [&](std::uint32_t u, std::uint32_t s) {
    Mat m = Mat::identity(f2, 3);
    m.at(1, 0) = u;
    m.at(2, 0) = s;
    m.at(2, 1) = f2->neg(f2->conj(u));
    return m;
  };
  auto first_s_for = [&](std::uint32_t u) {
    std::uint32_t need = f2->neg(f2->hermitian_norm(u));  // trace(s) must equal -N(u)
    for (std::uint32_t s = 0; s < qq; ++s)
      if (f2->hermitian_trace(s) == need) return s;
    throw domain_error("su3_generators: no trace solution");
  };
  std::vector<Mat> gens;
  for (std::uint32_t k = 0; k < f2->extension_degree(); ++k) {
    std::uint32_t u = f2->omega_pow(k);
    gens.push_back(root_elt(u, first_s_for(u)));
  }
  for (std::uint32_t t = 1; t < qq; ++t)
    if (f2->hermitian_trace(t) == 0) gens.push_back(root_elt(0, t));
  // torus
  Mat h(f2, 3);
  h.at(0, 0) = f2->omega();
  h.at(1, 1) = f2->pow(f2->omega(), q - 1);
  h.at(2, 2) = f2->inv(f2->pow(f2->omega(), q));
  gens.push_back(h);
  // Weyl element antidiag(1, -1, 1): determinant 1 and form-preserving.
  Mat w(f2, 3);
  w.at(0, 2) = 1;
  w.at(1, 1) = f2->neg(1);
  w.at(2, 0) = 1;
  gens.push_back(w);
  for (const Mat& g : gens)
    if (!preserves_unitary_form(g) || g.det() != 1)
      throw form_not_preserved_error("su3 generator fails A P A*^T = P or det 1");
  return gens;
}

/// Extra generators turning SU(3,q) into the semilinear group GU(3,q)Z<phi>
/// acting on the unitary geometry: a determinant-moving unitary diagonal, the
/// scalar wI, and the Frobenius.
inline Mat gu3_det_mover(const Field& f2) {
  std::uint32_t q0 = f2->characteristic();
  std::uint32_t q = 1;
  for (std::uint32_t i = 0; i < f2->extension_degree() / 2; ++i) q *= q0;
  Mat g(f2, 3);
  g.at(0, 0) = f2->omega();
  g.at(1, 1) = 1;
  g.at(2, 2) = f2->inv(f2->pow(f2->omega(), q));
  if (!preserves_unitary_form(g)) throw form_not_preserved_error("gu3 diagonal fails the form");
  return g;
}

/// The standard alternating form on GF(2)^(2d): hyperbolic pairs
/// (e_0, e_1), (e_2, e_3), ...
inline Mat symplectic_form_matrix(const Field& f, std::uint32_t two_d) {
  Mat j(f, two_d);
  for (std::uint32_t i = 0; i + 1 < two_d; i += 2) {
    j.at(i, i + 1) = 1;
    j.at(i + 1, i) = 1;  // char 2: the form is symmetric and alternating
  }
  return j;
}

inline bool preserves_symplectic_form(const Mat& g, const Mat& j) {
  return g * j * g.transpose() == j;
}

/// Symplectic transvections x -> x + (x,v) v over GF(2), one per nonzero
/// vector v; together they generate Sp(2d, 2).
inline std::vector<Mat> sp_generators(std::uint32_t d, const Field& f2elts) {
  if (f2elts->order() != 2) throw domain_error("sp_generators: field must be GF(2)");
  if (d < 2) throw domain_error("sp_generators: need d >= 2");
  std::uint32_t n = 2 * d;
  Mat j = symplectic_form_matrix(f2elts, n);
  std::vector<Mat> gens;
  for (std::uint32_t v = 1; v < (1u << n); ++v) {
    std::vector<std::uint32_t> vv(n);
    for (std::uint32_t i = 0; i < n; ++i) vv[i] = (v >> i) & 1;
    // T_v = I + J v^T v
    Mat m = Mat::identity(f2elts, n);
    std::vector<std::uint32_t> jv(n, 0);  // (e_i, v) for each basis vector
    for (std::uint32_t i = 0; i < n; ++i) {
      std::uint32_t s = 0;
      for (std::uint32_t k = 0; k < n; ++k) s ^= j.at(i, k) & vv[k];
      jv[i] = s;
    }
    for (std::uint32_t i = 0; i < n; ++i) {
      if (!jv[i]) continue;
      for (std::uint32_t c = 0; c < n; ++c)
        if (vv[c]) m.at(i, c) ^= 1;
    }
    if (!preserves_symplectic_form(m, j))
      throw form_not_preserved_error("symplectic transvection fails g J g^T = J");
    gens.push_back(m);
  }
  return gens;
}

/// The Frobenius map as a semilinear element of exponent 1 on d-dim row
/// vectors: entries are raised to the q0-th power.
inline Semilinear frobenius_action(const Field& f, std::uint32_t d) {
  return Semilinear(1, Mat::identity(f, d));
}

}  // namespace plinth
