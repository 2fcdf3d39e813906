#ifndef PFKIT_EXACTALG_POLYNOMIAL_HPP
#define PFKIT_EXACTALG_POLYNOMIAL_HPP

#include <gmpxx.h>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfkit/error.hpp"
#include "pfkit/exactalg/monomial.hpp"

namespace pfkit {

using Integer = mpz_class;
using Rational = mpq_class;

template <class C>
struct coeff_traits;

template <>
struct coeff_traits<Integer> {
  static constexpr bool is_field = false;
  static bool divides(const Integer& a, const Integer& b) {  // a | b
    if (a == 0) return b == 0;
    return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0;
  }
  static Integer exact_div(const Integer& b, const Integer& a) {
    Integer q;
    mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  static Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static std::size_t hash(const Integer& a) {
    return std::hash<long>()(mpz_get_si(a.get_mpz_t())) ^ mpz_sizeinbase(a.get_mpz_t(), 2);
  }
};

template <>
struct coeff_traits<Rational> {
  static constexpr bool is_field = true;
  static bool divides(const Rational& a, const Rational&) { return a != 0; }
  static Rational exact_div(const Rational& b, const Rational& a) { return b / a; }
  static Rational gcd(const Rational& a, const Rational& b) {
    return (a == 0 && b == 0) ? Rational(0) : Rational(1);
  }
  static std::size_t hash(const Rational& a) {
    return std::hash<long>()(mpz_get_si(a.get_num_mpz_t())) * 31 +
           std::hash<long>()(mpz_get_si(a.get_den_mpz_t()));
  }
};

/// Sparse multivariate polynomial; terms kept sorted strictly descending under `order`.
template <class C>
class Polynomial {
 public:
  using Term = std::pair<Monomial, C>;
  using traits = coeff_traits<C>;

  Polynomial() = default;
  explicit Polynomial(MonomialOrder ord) : order_(ord) {}
  Polynomial(const C& c, MonomialOrder ord = {}) : order_(ord) {  // NOLINT
    if (c != 0) terms_.emplace_back(Monomial{}, c);
  }
  Polynomial(long c) : Polynomial(C(c)) {}  // NOLINT

  static Polynomial var(int i, MonomialOrder ord = {}) {
    Polynomial p(ord);
    p.terms_.emplace_back(Monomial::var(i), C(1));
    return p;
  }
  static Polynomial monomial(const Monomial& m, const C& c, MonomialOrder ord = {}) {
    Polynomial p(ord);
    if (c != 0) p.terms_.emplace_back(m, c);
    return p;
  }
  static Polynomial from_terms(std::vector<Term> ts, MonomialOrder ord) {
    Polynomial p(ord);
    p.terms_ = std::move(ts);
    p.canonicalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  const MonomialOrder& order() const { return order_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }
  C constant_value() const { return terms_.empty() ? C(0) : (terms_.back().first.is_one() ? terms_.back().second : C(0)); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& lm() const { return terms_.front().first; }
  const C& lc() const { return terms_.front().second; }
  unsigned total_degree() const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max<unsigned>(d, t.first.deg);
    return d;
  }
  unsigned degree_in(int v) const {
    unsigned d = 0;
    for (auto& t : terms_) d = std::max<unsigned>(d, t.first.e[v]);
    return d;
  }
  int max_var() const {
    int m = -1;
    for (auto& t : terms_)
      for (int i = kMaxVars - 1; i > m; --i)
        if (t.first.e[i]) {
          m = i;
          break;
        }
    return m;
  }
  bool uses_var(int v) const {
    for (auto& t : terms_)
      if (t.first.e[v]) return true;
    return false;
  }

  Polynomial with_order(MonomialOrder ord) const {
    if (ord == order_) return *this;
    Polynomial p(ord);
    p.terms_ = terms_;
    p.sort_terms();
    return p;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].first == b.terms_[i].first) || a.terms_[i].second != b.terms_[i].second) return false;
    return true;
  }

  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.second = -t.second;
    return p;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial& operator+=(const Polynomial& b) { return *this = merge(*this, b, false); }
  Polynomial& operator-=(const Polynomial& b) { return *this = merge(*this, b, true); }

  Polynomial mul_term(const Monomial& m, const C& c) const {
    Polynomial p(order_);
    if (c == 0) return p;
    p.terms_.reserve(terms_.size());
    for (auto& t : terms_) p.terms_.emplace_back(t.first * m, t.second * c);
    return p;
  }
  Polynomial scaled(const C& c) const { return mul_term(Monomial{}, c); }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    Polynomial p(a.order_);
    if (a.is_zero() || b.is_zero()) return p;
    const Polynomial& s = a.size() <= b.size() ? a : b;
    const Polynomial& l = a.size() <= b.size() ? b : a;
    if (s.size() == 1) return l.mul_term(s.terms_[0].first, s.terms_[0].second);
    std::vector<Term> all;
    all.reserve(a.size() * b.size());
    for (auto& x : s.terms_)
      for (auto& y : l.terms_) all.emplace_back(x.first * y.first, x.second * y.second);
    if (all.size() > limits().terms * 8) throw ResourceLimit("polynomial product too large");
    p.terms_ = std::move(all);
    p.canonicalize();
    return p;
  }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }

  Polynomial pow(unsigned n) const {
    Polynomial r(C(1), order_), b = *this;
    while (n) {
      if (n & 1) r = r * b;
      n >>= 1;
      if (n) b = b * b;
    }
    return r;
  }

  /// Exact quotient *this / g, or nullopt when g does not divide.
  std::optional<Polynomial> divide_exact(const Polynomial& g) const {
    if (g.is_zero()) return std::nullopt;
    Polynomial q(order_), r = *this;
    while (!r.is_zero()) {
      if (!g.lm().divides(r.lm()) || !traits::divides(g.lc(), r.lc())) return std::nullopt;
      Monomial m = g.lm().quotient_of(r.lm());
      C c = traits::exact_div(r.lc(), g.lc());
      q.terms_.emplace_back(m, c);
      r -= g.mul_term(m, c);
    }
    return q;
  }

  /// Coefficients with respect to variable v: result[k] is the coefficient of v^k.
  std::vector<Polynomial> coefficients_in(int v) const {
    std::vector<Polynomial> out(degree_in(v) + 1, Polynomial(order_));
    for (auto& t : terms_) {
      Monomial m = t.first;
      unsigned k = m.e[v];
      m.e[v] = 0;
      m.deg -= k;
      out[k].terms_.emplace_back(m, t.second);
    }
    for (auto& p : out) p.sort_terms();
    return out;
  }

  /// Substitute polynomial images for each variable (missing entries keep the variable).
  template <class F>
  auto evaluate(F&& image_of_var, const decltype(image_of_var(0))& one) const {
    using R = std::decay_t<decltype(image_of_var(0))>;
    R sum = one - one;
    std::vector<std::vector<R>> cache(kMaxVars);
    for (auto& t : terms_) {
      R prod = one;
      for (int i = 0; i < kMaxVars; ++i) {
        unsigned k = t.first.e[i];
        if (!k) continue;
        auto& c = cache[i];
        if (c.empty()) {
          c.push_back(one);
          c.push_back(image_of_var(i));
        }
        while (c.size() <= k) c.push_back(c.back() * c[1]);
        prod = prod * c[k];
      }
      sum = sum + prod * t.second;
    }
    return sum;
  }

  std::size_t hash() const {
    std::size_t h = terms_.size();
    for (auto& t : terms_) h = h * 1000003u ^ (t.first.hash() + 31 * traits::hash(t.second));
    return h;
  }

  std::string to_string(const std::vector<std::string>& names) const;

  // internal
  void canonicalize() {
    sort_terms();
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().first == t.first)
        out.back().second += t.second;
      else
        out.push_back(std::move(t));
    }
    std::vector<Term> nz;
    nz.reserve(out.size());
    for (auto& t : out)
      if (t.second != 0) nz.push_back(std::move(t));
    terms_ = std::move(nz);
  }

 private:
  void sort_terms() {
    auto ord = order_;
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term& a, const Term& b) { return compare(a.first, b.first, ord) > 0; });
  }

  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool negate_b) {
    Polynomial p(a.order_);
    p.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
      int c;
      if (i == a.terms_.size()) c = -1;
      else if (j == b.terms_.size()) c = 1;
      else c = compare(a.terms_[i].first, b.terms_[j].first, a.order_);
      if (c > 0) {
        p.terms_.push_back(a.terms_[i++]);
      } else if (c < 0) {
        p.terms_.push_back(b.terms_[j]);
        if (negate_b) p.terms_.back().second = -p.terms_.back().second;
        ++j;
      } else {
        C s = negate_b ? C(a.terms_[i].second - b.terms_[j].second) : C(a.terms_[i].second + b.terms_[j].second);
        if (s != 0) p.terms_.emplace_back(a.terms_[i].first, std::move(s));
        ++i;
        ++j;
      }
    }
    if (p.terms_.size() > limits().terms) throw ResourceLimit("polynomial term budget exceeded");
    return p;
  }

  std::vector<Term> terms_;
  MonomialOrder order_{};
};

using ZPoly = Polynomial<Integer>;
using QPoly = Polynomial<Rational>;

inline std::string coeff_to_string(const Integer& c) { return c.get_str(); }
inline std::string coeff_to_string(const Rational& c) { return c.get_str(); }

template <class C>
std::string Polynomial<C>::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : terms_) {
    C a = c;
    bool neg = a < 0;
    if (neg) a = -a;
    if (first) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (int i = 0; i < kMaxVars; ++i) {
      if (!m.e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += i < int(names.size()) ? names[i] : "x" + std::to_string(i);
      if (m.e[i] > 1) mono += "^" + std::to_string(m.e[i]);
    }
    std::string cs = coeff_to_string(a);
    bool frac = cs.find('/') != std::string::npos;
    if (mono.empty())
      s += cs;
    else if (a == 1)
      s += mono;
    else
      s += (frac ? "(" + cs + ")" : cs) + "*" + mono;
  }
  return s;
}

// ---------------------------------------------------------------------------
// gcd machinery (recursive primitive PRS), valid over Z[x...] and Q[x...]

template <class C>
Polynomial<C> normalize_unit(const Polynomial<C>& p) {
  if (p.is_zero()) return p;
  if constexpr (coeff_traits<C>::is_field) {
    return p.scaled(C(1) / p.lc());
  } else {
    return p.lc() < 0 ? -p : p;
  }
}

template <class C>
Polynomial<C> poly_gcd(const Polynomial<C>& a, const Polynomial<C>& b);

template <class C>
C integer_content(const Polynomial<C>& p) {
  C g = 0;
  for (auto& t : p.terms()) {
    g = coeff_traits<C>::gcd(g, t.second);
    if (g == 1) break;
  }
  return g;
}

/// Content with respect to variable v (gcd of the coefficients in v).
template <class C>
Polynomial<C> content_in(const Polynomial<C>& p, int v) {
  Polynomial<C> g(p.order());
  for (auto& c : p.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = poly_gcd(g, c);
    if (g.is_constant() && (coeff_traits<C>::is_field || g.constant_value() == 1)) break;
  }
  return g;
}

template <class C>
Polynomial<C> pseudo_remainder(const Polynomial<C>& f, const Polynomial<C>& g, int v) {
  unsigned dg = g.degree_in(v);
  auto gc = g.coefficients_in(v);
  Polynomial<C> lcg = gc[dg];
  Polynomial<C> r = f;
  while (!r.is_zero() && r.degree_in(v) >= dg) {
    unsigned dr = r.degree_in(v);
    Polynomial<C> lcr = r.coefficients_in(v)[dr];
    Polynomial<C> shift = Polynomial<C>::monomial(Monomial::var(v, dr - dg), C(1), f.order());
    r = lcg * r - lcr * shift * g;
  }
  return r;
}

template <class C>
Polynomial<C> poly_gcd(const Polynomial<C>& a, const Polynomial<C>& b) {
  if (a.is_zero()) return normalize_unit(b);
  if (b.is_zero()) return normalize_unit(a);
  int v = std::max(a.max_var(), b.max_var());
  if (v < 0) {
    if constexpr (coeff_traits<C>::is_field) return Polynomial<C>(C(1), a.order());
    else return Polynomial<C>(coeff_traits<C>::gcd(a.constant_value(), b.constant_value()), a.order());
  }
  if (!a.uses_var(v)) return poly_gcd(a, content_in(b, v));
  if (!b.uses_var(v)) return poly_gcd(content_in(a, v), b);
  Polynomial<C> ca = content_in(a, v), cb = content_in(b, v);
  Polynomial<C> c = poly_gcd(ca, cb);
  Polynomial<C> pa = *a.divide_exact(ca), pb = *b.divide_exact(cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (true) {
    Polynomial<C> r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) break;
    if (!r.uses_var(v)) {
      pb = Polynomial<C>(C(1), a.order());
      break;
    }
    pa = pb;
    pb = *r.divide_exact(content_in(r, v));
  }
  Polynomial<C> g = pb;
  if (g.uses_var(v)) g = *g.divide_exact(content_in(g, v));
  return normalize_unit(c * g);
}

}  // namespace pfkit

#endif
