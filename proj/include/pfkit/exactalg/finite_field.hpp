#ifndef PFKIT_EXACTALG_FINITE_FIELD_HPP
#define PFKIT_EXACTALG_FINITE_FIELD_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pfkit/error.hpp"

namespace pfkit {

/// GF(p^k) with elements encoded as integers 0..q-1 (base-p digits are the
/// coefficients of a polynomial in the primitive root g). Multiplication goes
/// through discrete log tables.
class GaloisField {
 public:
  GaloisField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
    q_ = 1;
    for (std::uint32_t i = 0; i < k; ++i) {
      q_ *= p;
      if (q_ > (1u << 20)) throw ResourceLimit("finite field too large");
    }
    if (k == 1) {
      for (std::uint32_t g = 1; g < p; ++g)
        if (try_generator_prime(g)) return;
      if (p == 2 && try_generator_prime(1)) return;
      fail("InvalidRing", "no primitive root");
    }
    // search monic modulus x^k + c_{k-1}x^{k-1} + ... + c_0 with x primitive
    std::vector<std::uint32_t> c(k, 0);
    std::uint32_t total = q_;
    for (std::uint32_t code = 0; code < total; ++code) {
      std::uint32_t t = code;
      for (std::uint32_t i = 0; i < k; ++i) {
        c[i] = t % p;
        t /= p;
      }
      if (c[0] == 0) continue;
      if (try_modulus(c)) {
        modulus_ = c;
        return;
      }
    }
    fail("InvalidRing", "no primitive polynomial found");
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t k() const { return k_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t generator() const { return exp_[1 % (q_ - 1)]; }
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    if (k_ == 1) return (a + b) % p_;
    std::uint32_t r = 0, m = 1;
    while (a || b) {
      r += ((a % p_ + b % p_) % p_) * m;
      a /= p_;
      b /= p_;
      m *= p_;
    }
    return r;
  }
  std::uint32_t neg(std::uint32_t a) const {
    if (k_ == 1) return (p_ - a) % p_;
    std::uint32_t r = 0, m = 1;
    while (a) {
      r += ((p_ - a % p_) % p_) * m;
      a /= p_;
      m *= p_;
    }
    return r;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (!a || !b) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  std::uint32_t inv(std::uint32_t a) const {
    if (!a) fail("DivisionByNonUnit", "division by zero in GF(" + std::to_string(q_) + ")");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }
  std::uint32_t from_int(long long n) const {
    long long r = n % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t log(std::uint32_t a) const { return log_[a]; }
  std::uint32_t power_of_generator(long long e) const {
    long long m = static_cast<long long>(q_ - 1);
    long long r = ((e % m) + m) % m;
    return exp_[r];
  }

 private:
  bool try_generator_prime(std::uint32_t g) {
    exp_.assign(q_ - 1 == 0 ? 1 : q_ - 1, 0);
    log_.assign(q_, 0);
    std::uint64_t x = 1;
    std::vector<char> seen(q_, 0);
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      if (seen[x]) return false;
      seen[x] = 1;
      exp_[i] = static_cast<std::uint32_t>(x);
      log_[x] = i;
      x = x * g % p_;
    }
    return x == 1;
  }

  // multiply the polynomial encoded by a by x modulo x^k + c
  std::uint32_t times_x(std::uint32_t a, const std::vector<std::uint32_t>& c) const {
    std::vector<std::uint32_t> d(k_ + 1, 0);
    for (std::uint32_t i = 0; i < k_; ++i) {
      d[i + 1] = a % p_;
      a /= p_;
    }
    std::uint32_t top = d[k_];
    for (std::uint32_t i = 0; i < k_; ++i) d[i] = (d[i] + (p_ - c[i]) % p_ * top) % p_;
    std::uint32_t r = 0, m = 1;
    for (std::uint32_t i = 0; i < k_; ++i) {
      r += d[i] * m;
      m *= p_;
    }
    return r;
  }

  bool try_modulus(const std::vector<std::uint32_t>& c) {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    std::vector<char> seen(q_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      if (seen[x] || x == 0) return false;
      seen[x] = 1;
      exp_[i] = x;
      log_[x] = i;
      x = times_x(x, c);
    }
    return x == 1;
  }

  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;  // low coefficients of the monic modulus
  std::vector<std::uint32_t> exp_, log_;
};

}  // namespace pfkit

#endif
