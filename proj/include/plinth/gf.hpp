#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <vector>

#include "plinth/perm.hpp"

namespace plinth {

struct not_prime_error : domain_error {
  using domain_error::domain_error;
};

/// GF(q0^a) with elements encoded as integers in [0, q): the encoding of a
/// polynomial sum c_i x^i over GF(q0) is sum c_i q0^i. Multiplication runs
/// through exp/log tables for a fixed primitive element.
///
/// The modulus is the least monic irreducible of degree a (comparing the
/// encodings of the non-leading coefficient vectors), and the primitive
/// element is the least encoding of full multiplicative order, so element
/// labels are identical across runs and platforms.
class FiniteField {
 public:
  static std::shared_ptr<const FiniteField> make(std::uint32_t q0, std::uint32_t a);

  std::uint32_t characteristic() const { return q0_; }
  std::uint32_t extension_degree() const { return a_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t omega() const { return omega_; }
  const std::vector<std::uint32_t>& modulus_coeffs() const { return modulus_; }

  std::uint32_t add(std::uint32_t x, std::uint32_t y) const {
    std::uint32_t r = 0, mul = 1;
    while (x || y) {
      std::uint32_t d = (x % q0_ + y % q0_) % q0_;
      r += d * mul;
      mul *= q0_;
      x /= q0_;
      y /= q0_;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t x) const {
    std::uint32_t r = 0, mul = 1;
    while (x) {
      std::uint32_t d = (q0_ - x % q0_) % q0_;
      r += d * mul;
      mul *= q0_;
      x /= q0_;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t x, std::uint32_t y) const { return add(x, neg(y)); }

  std::uint32_t mul(std::uint32_t x, std::uint32_t y) const {
    if (x == 0 || y == 0) return 0;
    return exp_[(static_cast<std::uint64_t>(log_[x]) + log_[y]) % (q_ - 1)];
  }

  std::uint32_t inv(std::uint32_t x) const {
    if (x == 0) throw domain_error("field inverse of zero");
    return exp_[(q_ - 1 - log_[x]) % (q_ - 1)];
  }

  std::uint32_t pow(std::uint32_t x, std::uint64_t e) const {
    if (x == 0) return e == 0 ? 1 : 0;
    return exp_[(static_cast<std::uint64_t>(log_[x]) * (e % (q_ - 1))) % (q_ - 1)];
  }

  /// Discrete log base omega; x must be nonzero.
  std::uint32_t dlog(std::uint32_t x) const {
    if (x == 0) throw domain_error("dlog of zero");
    return log_[x];
  }

  std::uint32_t omega_pow(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  /// Frobenius x -> x^(q0^i).
  std::uint32_t frob(std::uint32_t x, std::uint32_t i = 1) const {
    std::uint64_t e = 1;
    for (std::uint32_t k = 0; k < i; ++k) e = (e * q0_) % (q_ - 1 ? q_ - 1 : 1);
    return pow(x, e == 0 ? (q_ - 1) : e);
  }

  /// Conjugate over the index-2 subfield: x -> x^(q0^(a/2)); requires even a.
  std::uint32_t conj(std::uint32_t x) const {
    if (a_ % 2 != 0) throw domain_error("conj needs a quadratic extension");
    return frob(x, a_ / 2);
  }

  /// Norm and trace over the index-2 subfield, for unitary forms.
  std::uint32_t hermitian_norm(std::uint32_t x) const { return mul(x, conj(x)); }
  std::uint32_t hermitian_trace(std::uint32_t x) const { return add(x, conj(x)); }

 private:
  FiniteField() = default;
  std::uint32_t q0_ = 0, a_ = 0, q_ = 0, omega_ = 0;
  std::vector<std::uint32_t> modulus_;  // coefficients c_0..c_{a-1} of the monic modulus
  std::vector<std::uint32_t> exp_, log_;
};

using Field = std::shared_ptr<const FiniteField>;

namespace detail {

// Polynomial multiply mod the monic modulus, all encoded in base q0.
inline std::uint32_t poly_mulmod(std::uint32_t x, std::uint32_t y, std::uint32_t q0,
                                 std::uint32_t a, const std::vector<std::uint32_t>& mod) {
  std::vector<std::uint32_t> xd(a, 0), prod(2 * a, 0);
  for (std::uint32_t i = 0; i < a; ++i, x /= q0) xd[i] = x % q0;
  for (std::uint32_t j = 0; y; ++j, y /= q0) {
    std::uint32_t c = y % q0;
    if (c)
      for (std::uint32_t i = 0; i < a; ++i) prod[i + j] = (prod[i + j] + xd[i] * c) % q0;
  }
  for (std::uint32_t k = 2 * a; k-- > a;) {
    std::uint32_t c = prod[k];
    if (!c) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < a; ++i)
      prod[k - a + i] = (prod[k - a + i] + (q0 - mod[i] % q0) % q0 * c) % q0;
  }
  std::uint32_t r = 0, mul = 1;
  for (std::uint32_t i = 0; i < a; ++i, mul *= q0) r += prod[i] * mul;
  return r;
}

}  // namespace detail

inline std::shared_ptr<const FiniteField> FiniteField::make(std::uint32_t q0, std::uint32_t a) {
  if (q0 < 2) throw not_prime_error("characteristic must be a prime");
  for (std::uint32_t d = 2; d * d <= q0; ++d)
    if (q0 % d == 0) throw not_prime_error("characteristic must be a prime");
  if (a < 1) throw domain_error("extension degree must be positive");
  std::uint64_t q64 = 1;
  for (std::uint32_t i = 0; i < a; ++i) {
    q64 *= q0;
    if (q64 > (1u << 20)) throw domain_error("field too large for table construction");
  }
  auto f = std::shared_ptr<FiniteField>(new FiniteField());
  f->q0_ = q0;
  f->a_ = a;
  f->q_ = static_cast<std::uint32_t>(q64);

  // Least monic irreducible: try non-leading coefficient encodings in order.
  std::uint32_t qa = f->q_;  // q0^a
  std::vector<std::uint32_t> mod(a, 0);
  auto set_mod = [&](std::uint32_t m) {
    for (std::uint32_t i = 0; i < a; ++i, m /= q0) mod[i] = m % q0;
  };
  auto is_irreducible = [&](std::uint32_t m) {
    if (a == 1) return true;
    set_mod(m);
    // x^a + ... is irreducible over GF(q0) iff it has no root in any proper
    // subfield reachable by elements: test by checking gcd-style via brute
    // force: the ring GF(q0)[x]/(mod) is a field iff every nonzero element
    // has multiplicative order dividing q-1 and some element attains q-1.
    // Cheaper and exact: check no zero divisors among monomials x^k by
    // verifying x has order dividing q-1 and x^(q0^d) != x for d < a divisors.
    // Simplest exact test at these sizes: no nonzero element multiplies with
    // another to zero -- equivalently mod has no nontrivial factor; test by
    // trial division over all monic divisors of degree <= a/2.
    std::vector<std::uint32_t> poly(a + 1);
    for (std::uint32_t i = 0; i < a; ++i) poly[i] = mod[i];
    poly[a] = 1;
    std::uint32_t half = a / 2;
    std::uint64_t count = 1;
    for (std::uint32_t dd = 1; dd <= half; ++dd) {
      count *= q0;
      for (std::uint64_t enc = 0; enc < count; ++enc) {
        // candidate divisor x^dd + lower(enc)
        std::vector<std::uint32_t> div(dd + 1);
        std::uint64_t e = enc;
        for (std::uint32_t i = 0; i < dd; ++i, e /= q0) div[i] = static_cast<std::uint32_t>(e % q0);
        div[dd] = 1;
        // long division of poly by div over GF(q0)
        std::vector<std::uint32_t> rem(poly);
        for (std::uint32_t k = a + 1; k-- > dd;) {
          std::uint32_t c = rem[k];
          if (!c) continue;
          for (std::uint32_t i = 0; i <= dd; ++i) {
            std::uint32_t& slot = rem[k - dd + i];
            slot = (slot + (q0 - div[i]) * c) % q0;
          }
        }
        bool zero = true;
        for (std::uint32_t i = 0; i < dd; ++i)
          if (rem[i]) zero = false;
        if (zero) return false;
      }
    }
    return true;
  };
  std::uint32_t chosen = UINT32_MAX;
  for (std::uint32_t m = 0; m < qa; ++m)
    if (is_irreducible(m)) {
      chosen = m;
      break;
    }
  if (chosen == UINT32_MAX) throw domain_error("no irreducible modulus found");
  set_mod(chosen);
  f->modulus_ = mod;

  // Least primitive element by encoding order.
  f->exp_.assign(f->q_ - 1, 0);
  f->log_.assign(f->q_, 0);
  for (std::uint32_t cand = 1; cand < f->q_; ++cand) {
    std::uint32_t x = 1, steps = 0;
    bool full = true;
    do {
      x = detail::poly_mulmod(x, cand, q0, a, mod);
      ++steps;
      if (x == 1) break;
      if (steps > f->q_) throw domain_error("order computation runaway");
    } while (true);
    full = (steps == f->q_ - 1);
    if (full) {
      f->omega_ = cand;
      std::uint32_t y = 1;
      for (std::uint32_t k = 0; k < f->q_ - 1; ++k) {
        f->exp_[k] = y;
        f->log_[y] = k;
        y = detail::poly_mulmod(y, cand, q0, a, mod);
      }
      break;
    }
  }
  if (f->omega_ == 0) throw domain_error("no primitive element found");
  return f;
}

}  // namespace plinth
