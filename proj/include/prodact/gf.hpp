#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "prodact/errors.hpp"
#include "prodact/numeric.hpp"

namespace prodact {

// GF(q) for q = p^f <= 128. Elements are indices 0..q-1 encoding coefficient
// vectors base p (index = sum c_i p^i), so prime-field elements are ordinary
// residues. Prime-power fields use a fixed primitive-polynomial table, which
// pins the element labelling; the generator's multiplicative order is checked
// at construction.
class GaloisField {
 public:
  explicit GaloisField(std::uint32_t q) : q_(q) {
    factor(q, p_, f_);
    if (f_ == 1) {
      gen_ = least_primitive_root(p_);
    } else {
      poly_ = pinned_polynomial(p_, f_);
      gen_ = p_;  // the polynomial 'x'
    }
    build_tables();
  }

  std::uint32_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t f() const { return f_; }
  std::uint32_t generator() const { return gen_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (f_ == 1) return (a + b) % p_;
    std::uint32_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
      r += ((a + b) % p_) * mult;
      a /= p_;
      b /= p_;
      mult *= p_;
    }
    return r;
  }

  std::uint32_t neg(std::uint32_t a) const {
    if (f_ == 1) return (p_ - a) % p_;
    std::uint32_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
      r += ((p_ - a % p_) % p_) * mult;
      a /= p_;
      mult *= p_;
    }
    return r;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw InvalidInput("division by zero in GF(q)");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    return exp_[(log_[a] * (e % (q_ - 1))) % (q_ - 1)];
  }

  std::uint32_t frobenius(std::uint32_t a) const { return pow(a, p_); }

  bool is_square(std::uint32_t a) const {
    if (a == 0) return true;
    if (p_ == 2) return true;
    return log_[a] % 2 == 0;
  }

  static void factor(std::uint32_t q, std::uint32_t& p, std::uint32_t& f) {
    if (q < 2) throw InvalidInput("invalid field size");
    for (std::uint32_t d = 2; d <= q; ++d) {
      if (q % d == 0) {
        p = d;
        f = 0;
        std::uint32_t m = q;
        while (m % d == 0) {
          m /= d;
          ++f;
        }
        if (m != 1) throw InvalidInput("field size is not a prime power");
        return;
      }
    }
    throw InvalidInput("invalid field size");
  }

 private:
  std::uint32_t q_, p_ = 0, f_ = 0, gen_ = 0;
  std::vector<std::uint32_t> poly_;  // low-to-high coefficients c0..c_{f-1}
  std::vector<std::uint32_t> exp_, log_;

  static std::uint32_t least_primitive_root(std::uint32_t p) {
    for (std::uint32_t g = 1; g < p; ++g) {
      std::uint32_t x = g % p;
      std::uint32_t ord = 1;
      while (x != 1) {
        x = (x * g) % p;
        ++ord;
      }
      if (ord == p - 1) return g;
    }
    throw InternalCheckFailure("no primitive root found");
  }

  static std::vector<std::uint32_t> pinned_polynomial(std::uint32_t p, std::uint32_t f) {
    struct Entry {
      std::uint32_t p, f;
      std::array<std::uint32_t, 7> c;  // c0..c_{f-1}
    };
    // x^f + c_{f-1} x^{f-1} + ... + c_0, primitive over GF(p)
    static const Entry table[] = {
        {2, 2, {1, 1}},          {2, 3, {1, 1, 0}},          {2, 4, {1, 1, 0, 0}},
        {2, 5, {1, 0, 1, 0, 0}}, {2, 6, {1, 1, 0, 1, 1, 0}}, {2, 7, {1, 1, 0, 0, 0, 0, 0}},
        {3, 2, {2, 2}},          {3, 3, {1, 2, 0}},          {3, 4, {2, 0, 0, 2}},
        {5, 2, {2, 4}},          {5, 3, {3, 3, 0}},          {7, 2, {3, 6}},
        {11, 2, {2, 7}},
    };
    for (const auto& e : table)
      if (e.p == p && e.f == f) return std::vector<std::uint32_t>(e.c.begin(), e.c.begin() + f);
    throw InvalidInput("unsupported prime-power field size");
  }

  // element index <-> coefficient vector base p
  std::uint32_t mul_by_x(std::uint32_t a) const {
    // shift coefficients up, reduce x^f by the pinned polynomial
    std::vector<std::uint32_t> c(f_ + 1, 0);
    for (std::uint32_t i = 0; i < f_; ++i) {
      c[i + 1] = a % p_;
      a /= p_;
    }
    std::uint32_t top = c[f_];
    std::uint32_t r = 0, mult = 1;
    for (std::uint32_t i = 0; i < f_; ++i) {
      std::uint32_t coef = (c[i] + (p_ - poly_[i] % p_) * top) % p_;
      r += coef * mult;
      mult *= p_;
    }
    return r;
  }

  void build_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::vector<char> seen(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      if (seen[x]) throw InternalCheckFailure("pinned polynomial is not primitive");
      seen[x] = 1;
      exp_[i] = x;
      log_[x] = i;
      x = f_ == 1 ? (x * gen_) % p_ : mul_by_x(x);
    }
    if (x != 1) throw InternalCheckFailure("generator order is not q-1");
  }
};

}  // namespace prodact
