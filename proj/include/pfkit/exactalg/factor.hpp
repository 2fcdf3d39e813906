#ifndef PFKIT_EXACTALG_FACTOR_HPP
#define PFKIT_EXACTALG_FACTOR_HPP

#include <deque>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "pfkit/exactalg/ring.hpp"

namespace pfkit {

struct Factorization {
  int sign = 1;
  std::vector<long long> exps;
};

/// sign * prod basis[i]^exps[i]
inline Elem expand(const Factorization& f, const std::vector<Elem>& basis, const RingPtr& R) {
  Elem r = R->from_int(f.sign);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (f.exps[i]) r = r * basis[i].pow(f.exps[i]);
  return r;
}

namespace detail {

inline long long strip_factor(ZPoly& p, const ZPoly& g) {
  if (g.is_constant() && (g.constant_value() == 1 || g.constant_value() == -1)) return 0;
  long long k = 0;
  while (!p.is_zero()) {
    auto q = p.divide_exact(g);
    if (!q) break;
    p = std::move(*q);
    ++k;
  }
  return k;
}

inline std::optional<Factorization> factor_localized(const Elem& e, const std::vector<Elem>& basis) {
  auto& f = std::get<payload::Frac>(e.payload());
  if (f.num.is_zero()) return std::nullopt;
  ZPoly num = f.num, den = f.den;
  Factorization out;
  out.exps.assign(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto& b = std::get<payload::Frac>(basis[i].payload());
    if (!(b.den.is_constant() && b.den.constant_value() == 1))
      fail("UnsupportedRing", "basis element " + basis[i].str() + " is not a polynomial");
    out.exps[i] = strip_factor(num, b.num) - strip_factor(den, b.num);
  }
  if (!num.is_constant() || !den.is_constant()) return std::nullopt;
  Integer n = num.constant_value(), d = den.constant_value();
  if (n == d) out.sign = 1;
  else if (n == -d) out.sign = -1;
  else return std::nullopt;
  return out;
}

inline Integer quad_norm_num(const QuadraticRing& R, const payload::Quad& q) {
  return q.a * q.a + R.trace_coeff() * q.a * q.b + R.norm_coeff() * q.b * q.b;
}

inline long long valuation(Integer n, const Integer& p) {
  if (n == 0) return 0;
  long long v = 0;
  while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
    n /= p;
    ++v;
  }
  return v;
}

// Rational norm of an element as (numerator, denominator).
inline std::pair<Integer, Integer> quad_norm(const QuadraticRing& R, const Elem& e) {
  auto& q = std::get<payload::Quad>(e.payload());
  return {quad_norm_num(R, q), q.d * q.d};
}

inline std::optional<Factorization> factor_quadratic(const QuadraticRing& R, const Elem& e, const std::vector<Elem>& basis) {
  if (e.is_zero()) return std::nullopt;
  const RingPtr& RP = e.ring();
  Factorization out;
  out.exps.assign(basis.size(), 0);
  // classify basis elements by norm
  std::vector<std::size_t> torsion, free_units, primes;
  std::vector<Integer> prime_of(basis.size());
  std::vector<long long> mult(basis.size(), 0);
  std::vector<long long> order(basis.size(), 0);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    auto [n, d] = quad_norm(R, basis[i]);
    if (n == d || n == -d) {
      Elem p = basis[i];
      long long k = 1;
      for (; k <= 12 && !p.is_one(); ++k) p = p * basis[i];
      if (p.is_one()) {
        order[i] = k;
        torsion.push_back(i);
      } else {
        free_units.push_back(i);
      }
      continue;
    }
    if (d != 1) fail("UnsupportedRing", "basis element " + basis[i].str() + " is not integral");
    Integer m = abs(n), p = 0;
    for (Integer c = 2; c * c <= m; ++c)
      if (mpz_divisible_p(m.get_mpz_t(), c.get_mpz_t())) {
        p = c;
        break;
      }
    if (p == 0) p = m;
    long long v = valuation(m, p);
    Integer pv;
    mpz_pow_ui(pv.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v));
    if (pv != m) fail("UnsupportedRing", "norm of " + basis[i].str() + " is not a prime power");
    for (auto j : primes)
      if (prime_of[j] == p) fail("UnsupportedRing", "two basis elements above the prime " + p.get_str());
    prime_of[i] = p;
    mult[i] = v;
    primes.push_back(i);
  }
  if (free_units.size() > 1) fail("UnsupportedRing", "more than one free unit generator");
  Elem r = e;
  auto [en, ed] = quad_norm(R, e);
  for (auto i : primes) {
    long long v = valuation(abs(en), prime_of[i]) - valuation(ed, prime_of[i]);
    if (v % mult[i] != 0) return std::nullopt;
    out.exps[i] = v / mult[i];
    r = r * basis[i].pow(-out.exps[i]);
  }
  auto [rn, rd] = quad_norm(R, r);
  if (!(rn == rd || rn == -rd)) return std::nullopt;
  if (std::get<payload::Quad>(r.payload()).d != 1) return std::nullopt;
  // torsion closure with exponent bookkeeping
  struct Entry {
    int sign;
    std::vector<long long> exps;
  };
  std::unordered_map<Elem, Entry, ElemHash> tor;
  std::deque<Elem> queue;
  Elem one = RP->one();
  tor.emplace(one, Entry{1, std::vector<long long>(basis.size(), 0)});
  tor.emplace(-one, Entry{-1, std::vector<long long>(basis.size(), 0)});
  queue.push_back(one);
  queue.push_back(-one);
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (auto i : torsion) {
      Elem y = x * basis[i];
      if (tor.count(y)) continue;
      Entry en2 = tor.at(x);
      en2.exps[i] = (en2.exps[i] + 1) % order[i];
      tor.emplace(y, en2);
      queue.push_back(y);
    }
  }
  auto finish = [&](const Elem& t, std::size_t free_idx, long long k) -> std::optional<Factorization> {
    auto it = tor.find(t);
    if (it == tor.end()) return std::nullopt;
    out.sign = it->second.sign;
    for (auto i : torsion) out.exps[i] = it->second.exps[i];
    if (free_idx < basis.size()) out.exps[free_idx] = k;
    return out;
  };
  if (free_units.empty()) return finish(r, basis.size(), 0);
  std::size_t u = free_units[0];
  // |coefficients| grow geometrically with |k|, so a generous linear bound is enough.
  auto& rq = std::get<payload::Quad>(r.payload());
  long long bound = 8 + 3 * static_cast<long long>(mpz_sizeinbase(rq.a.get_mpz_t(), 2) + mpz_sizeinbase(rq.b.get_mpz_t(), 2));
  Elem up = r, down = r, uinv = basis[u].inv();
  for (long long k = 0; k <= bound; ++k) {
    if (auto f = finish(up, u, k)) return f;
    if (k > 0)
      if (auto g = finish(down, u, -k)) return g;
    up = up * uinv;
    down = down * basis[u];
  }
  return std::nullopt;
}

inline std::optional<Factorization> factor_modp(const ModPFunctionField& R, const Elem& e, const std::vector<Elem>& basis) {
  using V = ModPFunctionField::V;
  V num = R.numerator(e), den = R.denominator(e);
  if (num.empty()) return std::nullopt;
  Factorization out;
  out.exps.assign(basis.size(), 0);
  auto strip = [&](V& p, const V& g) {
    long long k = 0;
    if (g.size() <= 1) return k;
    while (true) {
      auto [q, rem] = R.pdivmod(p, g);
      if (!rem.empty()) break;
      p = q;
      ++k;
    }
    return k;
  };
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (R.denominator(basis[i]) != V{1}) fail("UnsupportedRing", "basis element " + basis[i].str() + " is not a polynomial");
    const V& b = R.numerator(basis[i]);
    out.exps[i] = strip(num, b) - strip(den, b);
  }
  if (num.size() != 1 || den.size() != 1) return std::nullopt;
  // basis polynomials may carry leading constants, so compare the quotient with +-1
  Elem chk = expand(Factorization{1, out.exps}, basis, e.ring());
  Elem unit = e / chk;
  if (unit.is_one()) out.sign = 1;
  else if ((-unit).is_one()) out.sign = -1;
  else return std::nullopt;
  return out;
}

inline std::optional<Factorization> factor_finite(const Elem& e, const std::vector<Elem>& basis) {
  const RingPtr& R = e.ring();
  if (e.is_zero()) return std::nullopt;
  std::unordered_map<Elem, Factorization, ElemHash> seen;
  std::deque<Elem> queue;
  Elem one = R->one();
  seen.emplace(one, Factorization{1, std::vector<long long>(basis.size(), 0)});
  queue.push_back(one);
  if (!seen.count(-one)) {
    seen.emplace(-one, Factorization{-1, std::vector<long long>(basis.size(), 0)});
    queue.push_back(-one);
  }
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    if (x == e) return seen.at(x);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Elem y = x * basis[i];
      if (seen.count(y)) continue;
      Factorization f = seen.at(x);
      f.exps[i] += 1;
      seen.emplace(y, f);
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

}  // namespace detail

/// Writes e as sign * prod basis^exps, or returns nullopt when that is impossible.
inline std::optional<Factorization> factor_over_basis(const Elem& e, const std::vector<Elem>& basis) {
  const RingPtr& R = e.ring();
  for (auto& b : basis) check_same(e, b);
  if (e.is_zero()) return std::nullopt;
  if (R->is_finite()) return detail::factor_finite(e, basis);
  switch (R->kind()) {
    case RingKind::Localized:
      return detail::factor_localized(e, basis);
    case RingKind::Quadratic:
      return detail::factor_quadratic(*as<QuadraticRing>(R), e, basis);
    case RingKind::ModPFunctions:
      return detail::factor_modp(*as<ModPFunctionField>(R), e, basis);
    default:
      fail("UnsupportedRing", "no factorization strategy for " + R->id());
  }
}

}  // namespace pfkit

#endif
