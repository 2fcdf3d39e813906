#ifndef PFKIT_EXACTALG_RING_HPP
#define PFKIT_EXACTALG_RING_HPP

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "pfkit/exactalg/finite_field.hpp"
#include "pfkit/exactalg/groebner.hpp"

namespace pfkit {

class Ring;
class Elem;
using RingPtr = std::shared_ptr<const Ring>;

enum class RingKind { Localized, Quadratic, FiniteField, Quotient, Product, ModPFunctions };

namespace payload {
struct Frac {
  ZPoly num, den;
};
struct Quad {
  Integer a, b, d;  // (a + b*theta) / d
};
struct FF {
  std::uint32_t v;
};
struct Residue {
  ZPoly nf;
};
struct Prod;
struct ModP {
  std::vector<std::uint32_t> num, den;  // coefficient vectors, low degree first; den monic
};
}  // namespace payload

using Payload = std::variant<std::monostate, payload::Frac, payload::Quad, payload::FF, payload::Residue,
                             std::shared_ptr<const payload::Prod>, payload::ModP>;

/// A ring element: a ring handle plus the canonical payload of that ring.
class Elem {
 public:
  Elem() = default;
  Elem(RingPtr r, Payload p) : ring_(std::move(r)), p_(std::move(p)) {}

  const RingPtr& ring() const { return ring_; }
  const Payload& payload() const { return p_; }
  bool valid() const { return ring_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  bool is_unit() const;
  Elem inv() const;
  Elem pow(long long e) const;
  std::string str() const;
  std::size_t hash() const;

  friend Elem operator+(const Elem& a, const Elem& b);
  friend Elem operator-(const Elem& a, const Elem& b);
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator/(const Elem& a, const Elem& b) { return a * b.inv(); }
  Elem operator-() const;
  friend bool operator==(const Elem& a, const Elem& b);
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }
  Elem& operator+=(const Elem& b) { return *this = *this + b; }
  Elem& operator-=(const Elem& b) { return *this = *this - b; }
  Elem& operator*=(const Elem& b) { return *this = *this * b; }

 private:
  RingPtr ring_;
  Payload p_;
};

using RingElement = Elem;

struct ElemHash {
  std::size_t operator()(const Elem& e) const { return e.hash(); }
};

namespace payload {
struct Prod {
  Elem left, right;
};
}  // namespace payload

class Ring : public std::enable_shared_from_this<Ring> {
 public:
  virtual ~Ring() = default;
  virtual RingKind kind() const = 0;
  /// Canonical declaration string; rings with equal ids are the same ring.
  const std::string& id() const { return id_; }

  virtual Payload from_integer(const Integer& n) const = 0;
  virtual Payload add(const Payload& a, const Payload& b) const = 0;
  virtual Payload neg(const Payload& a) const = 0;
  virtual Payload mul(const Payload& a, const Payload& b) const = 0;
  /// Inverse, or nullopt when a is not a unit.
  virtual std::optional<Payload> inverse(const Payload& a) const = 0;
  virtual bool equal(const Payload& a, const Payload& b) const = 0;
  virtual bool is_zero(const Payload& a) const { return equal(a, from_integer(0)); }
  virtual bool is_one(const Payload& a) const { return equal(a, from_integer(1)); }
  virtual std::size_t hash(const Payload& a) const = 0;
  virtual std::string to_string(const Payload& a) const = 0;
  virtual std::optional<Elem> symbol(const std::string&) const { return std::nullopt; }
  virtual std::vector<std::string> symbol_names() const { return {}; }
  /// Characteristic (0 for characteristic zero).
  virtual Integer characteristic() const { return 0; }
  virtual bool is_finite() const { return false; }
  /// All elements, for finite rings.
  virtual std::vector<Elem> elements() const { fail("UnsupportedRing", "ring is not finite: " + id_); }

  Elem make(Payload p) const { return Elem(shared_from_this(), std::move(p)); }
  Elem from_int(long n) const { return make(from_integer(Integer(n))); }
  Elem zero() const { return from_int(0); }
  Elem one() const { return from_int(1); }

 protected:
  std::string id_;
};

// ---------------------------------------------------------------------------
// Elem implementation

inline void check_same(const Elem& a, const Elem& b) {
  if (!a.ring() || !b.ring()) fail("InvalidElement", "uninitialised element");
  if (a.ring() != b.ring() && a.ring()->id() != b.ring()->id())
    fail("MixedRings", a.ring()->id() + " vs " + b.ring()->id());
}
inline Elem operator+(const Elem& a, const Elem& b) {
  check_same(a, b);
  return Elem(a.ring_, a.ring_->add(a.p_, b.p_));
}
inline Elem operator-(const Elem& a, const Elem& b) {
  check_same(a, b);
  return Elem(a.ring_, a.ring_->add(a.p_, a.ring_->neg(b.p_)));
}
inline Elem operator*(const Elem& a, const Elem& b) {
  check_same(a, b);
  return Elem(a.ring_, a.ring_->mul(a.p_, b.p_));
}
inline Elem Elem::operator-() const { return Elem(ring_, ring_->neg(p_)); }
inline bool operator==(const Elem& a, const Elem& b) {
  check_same(a, b);
  return a.ring_->equal(a.p_, b.p_);
}
inline bool Elem::is_zero() const { return ring_->is_zero(p_); }
inline bool Elem::is_one() const { return ring_->is_one(p_); }
inline bool Elem::is_unit() const { return ring_->inverse(p_).has_value(); }
inline Elem Elem::inv() const {
  auto r = ring_->inverse(p_);
  if (!r) fail("DivisionByNonUnit", str() + " is not a unit of " + ring_->id());
  return Elem(ring_, *r);
}
inline Elem Elem::pow(long long e) const {
  Elem base = e < 0 ? inv() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Elem r = ring_->one();
  while (n) {
    if (n & 1) r = r * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return r;
}
inline std::string Elem::str() const { return ring_ ? ring_->to_string(p_) : "<null>"; }
inline std::size_t Elem::hash() const { return ring_->hash(p_); }

// ---------------------------------------------------------------------------
// Z[x...] localized at a list of irreducibles, or the full fraction field Q(x...)

class LocalizedRing : public Ring {
 public:
  /// field: every nonzero element is invertible (Q(vars)); otherwise only
  /// products of the listed irreducibles (integer primes allowed) are.
  LocalizedRing(std::vector<std::string> vars, bool field, std::vector<ZPoly> inverted)
      : vars_(std::move(vars)), field_(field), inverted_(std::move(inverted)) {
    if (vars_.size() > 24) throw ResourceLimit("too many ring variables");
    for (auto& g : inverted_) g = normalize_unit(g);
    if (field_) {
      id_ = "QQ";
      if (!vars_.empty()) {
        id_ += "(";
        for (std::size_t i = 0; i < vars_.size(); ++i) id_ += (i ? "," : "") + vars_[i];
        id_ += ")";
      }
    } else {
      id_ = "ZZ";
      std::vector<std::string> items = vars_;
      for (auto& g : inverted_) items.push_back("1/" + paren(g.to_string(vars_)));
      if (!items.empty()) {
        id_ += "[";
        for (std::size_t i = 0; i < items.size(); ++i) id_ += (i ? "," : "") + items[i];
        id_ += "]";
      }
    }
  }

  RingKind kind() const override { return RingKind::Localized; }
  const std::vector<std::string>& vars() const { return vars_; }
  bool is_field() const { return field_; }
  const std::vector<ZPoly>& inverted() const { return inverted_; }

  Payload from_integer(const Integer& n) const override { return payload::Frac{ZPoly(n), ZPoly(1)}; }
  Payload from_poly(const ZPoly& p) const { return payload::Frac{p.with_order({}), ZPoly(1)}; }
  Elem poly(const ZPoly& p) const { return make(from_poly(p)); }
  Elem fraction(const ZPoly& n, const ZPoly& d) const {
    auto r = canonical(n, d);
    if (!r) fail("DivisionByNonUnit", "denominator " + d.to_string(vars_) + " not invertible in " + id_);
    return make(*r);
  }

  Payload add(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::Frac>(a);
    auto& y = std::get<payload::Frac>(b);
    if (x.den == y.den) return must(canonical(x.num + y.num, x.den));
    return must(canonical(x.num * y.den + y.num * x.den, x.den * y.den));
  }
  Payload neg(const Payload& a) const override {
    auto& x = std::get<payload::Frac>(a);
    return payload::Frac{-x.num, x.den};
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::Frac>(a);
    auto& y = std::get<payload::Frac>(b);
    if (x.num.is_zero() || y.num.is_zero()) return from_integer(0);
    return must(canonical(x.num * y.num, x.den * y.den));
  }
  std::optional<Payload> inverse(const Payload& a) const override {
    auto& x = std::get<payload::Frac>(a);
    if (x.num.is_zero()) return std::nullopt;
    return canonical(x.den, x.num);
  }
  bool equal(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::Frac>(a);
    auto& y = std::get<payload::Frac>(b);
    return x.num == y.num && x.den == y.den;
  }
  std::size_t hash(const Payload& a) const override {
    auto& x = std::get<payload::Frac>(a);
    return x.num.hash() * 31 + x.den.hash();
  }
  std::string to_string(const Payload& a) const override {
    auto& x = std::get<payload::Frac>(a);
    std::string n = x.num.to_string(vars_);
    if (x.den.is_constant() && x.den.constant_value() == 1) return n;
    return paren(n) + "/" + paren(x.den.to_string(vars_));
  }
  std::optional<Elem> symbol(const std::string& s) const override {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == s) return poly(ZPoly::var(int(i)));
    return std::nullopt;
  }
  std::vector<std::string> symbol_names() const override { return vars_; }

  /// Reduced form of n/d, or nullopt when d is not an allowed denominator.
  std::optional<Payload> canonical(ZPoly n, ZPoly d) const {
    if (d.is_zero()) return std::nullopt;
    if (n.is_zero()) return payload::Frac{ZPoly(0), ZPoly(1)};
    if (!(d.is_constant() && d.constant_value() == 1)) {
      ZPoly g = poly_gcd(n, d);
      if (!(g.is_constant() && g.constant_value() == 1)) {
        n = *n.divide_exact(g);
        d = *d.divide_exact(g);
      }
      if (d.lc() < 0) {
        n = -n;
        d = -d;
      }
      if (!field_ && !allowed_denominator(d)) return std::nullopt;
    }
    return payload::Frac{std::move(n), std::move(d)};
  }

  /// d = +-prod of listed irreducibles?
  bool allowed_denominator(ZPoly d) const {
    for (auto& g : inverted_) {
      while (true) {
        auto q = d.divide_exact(g);
        if (!q) break;
        d = std::move(*q);
      }
    }
    return d.is_constant() && (d.constant_value() == 1 || d.constant_value() == -1);
  }

  static std::string paren(const std::string& s) {
    bool simple = true;
    for (std::size_t i = 1; i < s.size(); ++i)
      if (s[i] == ' ' || s[i] == '/') simple = false;
    return simple ? s : "(" + s + ")";
  }

 private:
  static Payload must(std::optional<Payload> p) {
    if (!p) fail("DivisionByNonUnit", "denominator left the ring");
    return std::move(*p);
  }
  std::vector<std::string> vars_;
  bool field_;
  std::vector<ZPoly> inverted_;
};

// ---------------------------------------------------------------------------
// Z[theta], theta^2 = s*theta - n, with a set of inverted rational primes
// (or all of them: the quadratic field).

class QuadraticRing : public Ring {
 public:
  QuadraticRing(std::string sym, Integer s, Integer n, bool field, std::vector<Integer> primes)
      : sym_(std::move(sym)), s_(s), n_(n), field_(field), primes_(std::move(primes)) {
    std::string f = sym_ + "^2";
    if (s_ != 0) f += (s_ > 0 ? "-" : "+") + (abs(s_) == 1 ? std::string() : Integer(abs(s_)).get_str() + "*") + sym_;
    if (n_ != 0) f += (n_ > 0 ? "+" : "-") + Integer(abs(n_)).get_str();
    if (field_) {
      id_ = "QQ[" + sym_ + "]/(" + f + ")";
    } else {
      id_ = "ZZ[" + sym_;
      for (auto& p : primes_) id_ += ",1/" + p.get_str();
      id_ += "]/(" + f + ")";
    }
  }
  RingKind kind() const override { return RingKind::Quadratic; }
  const std::string& sym() const { return sym_; }
  const Integer& trace_coeff() const { return s_; }
  const Integer& norm_coeff() const { return n_; }

  Payload from_integer(const Integer& n) const override { return payload::Quad{n, 0, 1}; }
  Payload add(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::Quad>(a);
    auto& y = std::get<payload::Quad>(b);
    return must(canonical(x.a * y.d + y.a * x.d, x.b * y.d + y.b * x.d, x.d * y.d));
  }
  Payload neg(const Payload& a) const override {
    auto& x = std::get<payload::Quad>(a);
    return payload::Quad{-x.a, -x.b, x.d};
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::Quad>(a);
    auto& y = std::get<payload::Quad>(b);
    Integer bb = x.b * y.b;
    return must(canonical(x.a * y.a - n_ * bb, x.a * y.b + x.b * y.a + s_ * bb, x.d * y.d));
  }
  /// Norm of the numerator a + b*theta.
  Integer numerator_norm(const payload::Quad& x) const { return x.a * x.a + x.a * x.b * s_ + x.b * x.b * n_; }
  std::optional<Payload> inverse(const Payload& a) const override {
    auto& x = std::get<payload::Quad>(a);
    if (x.a == 0 && x.b == 0) return std::nullopt;
    Integer N = numerator_norm(x);
    // 1/(a+b t) = (a + b s - b t)/N
    return canonical(x.d * (x.a + x.b * s_), -x.d * x.b, N);
  }
  bool equal(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::Quad>(a);
    auto& y = std::get<payload::Quad>(b);
    return x.a == y.a && x.b == y.b && x.d == y.d;
  }
  std::size_t hash(const Payload& a) const override {
    auto& x = std::get<payload::Quad>(a);
    return coeff_traits<Integer>::hash(x.a) * 961 + coeff_traits<Integer>::hash(x.b) * 31 +
           coeff_traits<Integer>::hash(x.d);
  }
  std::string to_string(const Payload& a) const override {
    auto& x = std::get<payload::Quad>(a);
    std::string s;
    if (x.b == 0) {
      s = x.a.get_str();
    } else {
      std::string t = x.b == 1 ? sym_ : x.b == -1 ? "-" + sym_ : x.b.get_str() + "*" + sym_;
      if (x.a == 0) s = t;
      else if (x.b > 0) s = x.a.get_str() + " + " + (x.b == 1 ? sym_ : x.b.get_str() + "*" + sym_);
      else s = x.a.get_str() + " - " + (x.b == -1 ? sym_ : Integer(-x.b).get_str() + "*" + sym_);
    }
    if (x.d == 1) return s;
    return LocalizedRing::paren(s) + "/" + x.d.get_str();
  }
  std::optional<Elem> symbol(const std::string& s) const override {
    if (s == sym_) return make(payload::Quad{0, 1, 1});
    return std::nullopt;
  }
  std::vector<std::string> symbol_names() const override { return {sym_}; }

  std::optional<Payload> canonical(Integer a, Integer b, Integer d) const {
    if (d == 0) return std::nullopt;
    if (d < 0) {
      a = -a;
      b = -b;
      d = -d;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    if (g > 1) {
      a /= g;
      b /= g;
      d /= g;
    }
    if (!field_ && d != 1) {
      Integer r = d;
      for (auto& p : primes_)
        while (mpz_divisible_p(r.get_mpz_t(), p.get_mpz_t())) r /= p;
      if (r != 1) return std::nullopt;
    }
    return payload::Quad{a, b, d};
  }

 private:
  static Payload must(std::optional<Payload> p) {
    if (!p) fail("DivisionByNonUnit", "denominator left the ring");
    return std::move(*p);
  }
  std::string sym_;
  Integer s_, n_;
  bool field_;
  std::vector<Integer> primes_;
};

// ---------------------------------------------------------------------------

class FiniteFieldRing : public Ring {
 public:
  FiniteFieldRing(std::uint32_t p, std::uint32_t k) : F_(p, k) { id_ = "GF(" + std::to_string(F_.q()) + ")"; }
  RingKind kind() const override { return RingKind::FiniteField; }
  const GaloisField& field() const { return F_; }
  Payload from_integer(const Integer& n) const override {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), F_.p());
    return payload::FF{static_cast<std::uint32_t>(r.get_ui())};
  }
  Payload add(const Payload& a, const Payload& b) const override {
    return payload::FF{F_.add(std::get<payload::FF>(a).v, std::get<payload::FF>(b).v)};
  }
  Payload neg(const Payload& a) const override { return payload::FF{F_.neg(std::get<payload::FF>(a).v)}; }
  Payload mul(const Payload& a, const Payload& b) const override {
    return payload::FF{F_.mul(std::get<payload::FF>(a).v, std::get<payload::FF>(b).v)};
  }
  std::optional<Payload> inverse(const Payload& a) const override {
    auto v = std::get<payload::FF>(a).v;
    if (!v) return std::nullopt;
    return payload::FF{F_.inv(v)};
  }
  bool equal(const Payload& a, const Payload& b) const override {
    return std::get<payload::FF>(a).v == std::get<payload::FF>(b).v;
  }
  bool is_zero(const Payload& a) const override { return std::get<payload::FF>(a).v == 0; }
  bool is_one(const Payload& a) const override { return std::get<payload::FF>(a).v == 1; }
  std::size_t hash(const Payload& a) const override { return std::get<payload::FF>(a).v; }
  std::string to_string(const Payload& a) const override {
    auto v = std::get<payload::FF>(a).v;
    if (F_.k() == 1) return std::to_string(v);
    if (v == 0) return "0";
    auto l = F_.log(v);
    if (l == 0) return "1";
    if (l == 1) return "g";
    return "g^" + std::to_string(l);
  }
  std::optional<Elem> symbol(const std::string& s) const override {
    if (F_.k() > 1 && s == "g") return make(payload::FF{F_.generator()});
    return std::nullopt;
  }
  std::vector<std::string> symbol_names() const override {
    if (F_.k() > 1) return {"g"};
    return {};
  }
  Integer characteristic() const override { return F_.p(); }
  bool is_finite() const override { return true; }
  std::vector<Elem> elements() const override {
    std::vector<Elem> out;
    out.push_back(make(payload::FF{0}));
    for (std::uint32_t l = 0; l + 1 < F_.q(); ++l) out.push_back(make(payload::FF{F_.power_of_generator(l)}));
    return out;
  }
  Elem generator() const { return make(payload::FF{F_.generator()}); }
  std::uint32_t value(const Elem& e) const { return std::get<payload::FF>(e.payload()).v; }
  Elem element(std::uint32_t v) const { return make(payload::FF{v}); }

 private:
  GaloisField F_;
};

// ---------------------------------------------------------------------------
// Z[x...]/I with residues kept in normal form modulo a strong Groebner basis.

class QuotientRing : public Ring {
 public:
  QuotientRing(std::vector<std::string> vars, IdealBasis<Integer> ideal)
      : vars_(std::move(vars)), ideal_(std::move(ideal)) {
    id_ = "ZZ[";
    for (std::size_t i = 0; i < vars_.size(); ++i) id_ += (i ? "," : "") + vars_[i];
    id_ += "]/(";
    for (std::size_t i = 0; i < ideal_.basis.size(); ++i)
      id_ += (i ? ", " : "") + ideal_.basis[i].to_string(vars_);
    id_ += ")";
  }
  RingKind kind() const override { return RingKind::Quotient; }
  const std::vector<std::string>& vars() const { return vars_; }
  const IdealBasis<Integer>& ideal() const { return ideal_; }
  bool trivial() const { return ideal_.is_unit(); }

  Elem residue(const ZPoly& p) const { return make(payload::Residue{ideal_.normal_form(p)}); }
  const ZPoly& nf(const Elem& e) const { return std::get<payload::Residue>(e.payload()).nf; }

  Payload from_integer(const Integer& n) const override {
    return payload::Residue{ideal_.normal_form(ZPoly(n, ideal_.order))};
  }
  Payload add(const Payload& a, const Payload& b) const override {
    return payload::Residue{
        ideal_.normal_form(std::get<payload::Residue>(a).nf + std::get<payload::Residue>(b).nf)};
  }
  Payload neg(const Payload& a) const override {
    return payload::Residue{ideal_.normal_form(-std::get<payload::Residue>(a).nf)};
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    return payload::Residue{
        ideal_.normal_form(std::get<payload::Residue>(a).nf * std::get<payload::Residue>(b).nf)};
  }
  std::optional<Payload> inverse(const Payload& a) const override {
    const ZPoly& u = std::get<payload::Residue>(a).nf;
    std::string key = u.to_string(vars_);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = inv_cache_.find(key);
      if (it != inv_cache_.end()) {
        if (!it->second) return std::nullopt;
        return payload::Residue{*it->second};
      }
    }
    std::optional<ZPoly> result;
    if (trivial()) {
      result = ZPoly(0);
    } else if (u.is_constant() && (u.constant_value() == 1 || u.constant_value() == -1)) {
      result = ZPoly(u.constant_value(), ideal_.order);
    } else if (!u.is_zero()) {
      MonomialOrder elim{1};
      auto up = shift_map(1);
      std::vector<ZPoly> gens;
      for (auto& g : ideal_.basis) gens.push_back(remap_vars(g, up, elim));
      gens.push_back(ZPoly::var(0, elim) * remap_vars(u, up, elim) - ZPoly(Integer(1), elim));
      auto gb = groebner(gens, elim);
      ZPoly t = gb.normal_form(ZPoly::var(0, elim));
      if (!t.uses_var(0)) {
        ZPoly v = ideal_.normal_form(remap_vars(t, shift_map(-1), ideal_.order));
        if (ideal_.normal_form(v * u - ZPoly(Integer(1), ideal_.order)).is_zero()) result = v;
      }
    }
    std::lock_guard<std::mutex> lock(mu_);
    inv_cache_[key] = result;
    if (!result) return std::nullopt;
    return payload::Residue{*result};
  }
  bool equal(const Payload& a, const Payload& b) const override {
    return std::get<payload::Residue>(a).nf == std::get<payload::Residue>(b).nf;
  }
  std::size_t hash(const Payload& a) const override { return std::get<payload::Residue>(a).nf.hash(); }
  std::string to_string(const Payload& a) const override { return std::get<payload::Residue>(a).nf.to_string(vars_); }
  std::optional<Elem> symbol(const std::string& s) const override {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == s) return residue(ZPoly::var(int(i), ideal_.order));
    return std::nullopt;
  }
  std::vector<std::string> symbol_names() const override { return vars_; }
  Integer characteristic() const override {
    for (auto& g : ideal_.basis)
      if (g.is_constant()) return g.constant_value();
    return 0;
  }

 private:
  std::vector<std::string> vars_;
  IdealBasis<Integer> ideal_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::string, std::optional<ZPoly>> inv_cache_;
};

// ---------------------------------------------------------------------------

class ProductRing : public Ring {
 public:
  ProductRing(RingPtr l, RingPtr r) : l_(std::move(l)), r_(std::move(r)) { id_ = l_->id() + "x" + r_->id(); }
  RingKind kind() const override { return RingKind::Product; }
  const RingPtr& left() const { return l_; }
  const RingPtr& right() const { return r_; }

  static const payload::Prod& get(const Payload& p) { return *std::get<std::shared_ptr<const payload::Prod>>(p); }
  Elem pair(const Elem& a, const Elem& b) const {
    return make(std::make_shared<const payload::Prod>(payload::Prod{a, b}));
  }
  static const Elem& first(const Elem& e) { return get(e.payload()).left; }
  static const Elem& second(const Elem& e) { return get(e.payload()).right; }

  Payload from_integer(const Integer& n) const override {
    return std::make_shared<const payload::Prod>(payload::Prod{l_->make(l_->from_integer(n)), r_->make(r_->from_integer(n))});
  }
  Payload add(const Payload& a, const Payload& b) const override {
    auto& x = get(a);
    auto& y = get(b);
    return std::make_shared<const payload::Prod>(payload::Prod{x.left + y.left, x.right + y.right});
  }
  Payload neg(const Payload& a) const override {
    auto& x = get(a);
    return std::make_shared<const payload::Prod>(payload::Prod{-x.left, -x.right});
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    auto& x = get(a);
    auto& y = get(b);
    return std::make_shared<const payload::Prod>(payload::Prod{x.left * y.left, x.right * y.right});
  }
  std::optional<Payload> inverse(const Payload& a) const override {
    auto& x = get(a);
    auto li = l_->inverse(x.left.payload());
    auto ri = r_->inverse(x.right.payload());
    if (!li || !ri) return std::nullopt;
    return std::make_shared<const payload::Prod>(payload::Prod{l_->make(*li), r_->make(*ri)});
  }
  bool equal(const Payload& a, const Payload& b) const override {
    auto& x = get(a);
    auto& y = get(b);
    return x.left == y.left && x.right == y.right;
  }
  bool is_zero(const Payload& a) const override { return get(a).left.is_zero() && get(a).right.is_zero(); }
  bool is_one(const Payload& a) const override { return get(a).left.is_one() && get(a).right.is_one(); }
  std::size_t hash(const Payload& a) const override {
    auto& x = get(a);
    return x.left.hash() * 1000003u + x.right.hash();
  }
  std::string to_string(const Payload& a) const override {
    auto& x = get(a);
    return "(" + x.left.str() + "," + x.right.str() + ")";
  }
  Integer characteristic() const override {
    Integer a = l_->characteristic(), b = r_->characteristic();
    if (a == 0 || b == 0) return 0;
    Integer l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
  }
  bool is_finite() const override { return l_->is_finite() && r_->is_finite(); }
  std::vector<Elem> elements() const override {
    std::vector<Elem> out;
    for (auto& a : l_->elements())
      for (auto& b : r_->elements()) out.push_back(pair(a, b));
    return out;
  }

 private:
  RingPtr l_, r_;
};

// ---------------------------------------------------------------------------
// GF(p)(a): univariate rational functions over a prime field.

class ModPFunctionField : public Ring {
 public:
  using V = std::vector<std::uint32_t>;
  ModPFunctionField(std::uint32_t p, std::string var) : p_(p), var_(std::move(var)) {
    id_ = "GF(" + std::to_string(p) + ")(" + var_ + ")";
  }
  RingKind kind() const override { return RingKind::ModPFunctions; }
  std::uint32_t p() const { return p_; }

  Payload from_integer(const Integer& n) const override {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
    V num;
    if (r != 0) num.push_back(static_cast<std::uint32_t>(r.get_ui()));
    return payload::ModP{num, V{1}};
  }
  Elem poly(const V& coeffs) const { return make(canon(trim(coeffs), V{1})); }
  Payload add(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::ModP>(a);
    auto& y = std::get<payload::ModP>(b);
    if (x.den == y.den) return canon(padd(x.num, y.num), x.den);
    return canon(padd(pmul(x.num, y.den), pmul(y.num, x.den)), pmul(x.den, y.den));
  }
  Payload neg(const Payload& a) const override {
    auto x = std::get<payload::ModP>(a);
    for (auto& c : x.num) c = (p_ - c) % p_;
    return x;
  }
  Payload mul(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::ModP>(a);
    auto& y = std::get<payload::ModP>(b);
    return canon(pmul(x.num, y.num), pmul(x.den, y.den));
  }
  std::optional<Payload> inverse(const Payload& a) const override {
    auto& x = std::get<payload::ModP>(a);
    if (x.num.empty()) return std::nullopt;
    return canon(x.den, x.num);
  }
  bool equal(const Payload& a, const Payload& b) const override {
    auto& x = std::get<payload::ModP>(a);
    auto& y = std::get<payload::ModP>(b);
    return x.num == y.num && x.den == y.den;
  }
  std::size_t hash(const Payload& a) const override {
    auto& x = std::get<payload::ModP>(a);
    std::size_t h = 7;
    for (auto c : x.num) h = h * 31 + c;
    for (auto c : x.den) h = h * 37 + c;
    return h;
  }
  std::string to_string(const Payload& a) const override {
    auto& x = std::get<payload::ModP>(a);
    std::string n = pstr(x.num);
    if (x.den == V{1}) return n;
    return LocalizedRing::paren(n) + "/" + LocalizedRing::paren(pstr(x.den));
  }
  std::optional<Elem> symbol(const std::string& s) const override {
    if (s == var_) return poly(V{0, 1});
    return std::nullopt;
  }
  std::vector<std::string> symbol_names() const override { return {var_}; }
  Integer characteristic() const override { return p_; }

  const V& numerator(const Elem& e) const { return std::get<payload::ModP>(e.payload()).num; }
  const V& denominator(const Elem& e) const { return std::get<payload::ModP>(e.payload()).den; }
  // polynomial helpers (public for factorization)
  V trim(V a) const {
    for (auto& c : a) c %= p_;
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
  }
  V padd(const V& a, const V& b) const {
    V r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p_;
    return trim(r);
  }
  V pmul(const V& a, const V& b) const {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + std::uint64_t(a[i]) * b[j]) % p_;
    V out(r.begin(), r.end());
    return trim(out);
  }
  std::uint32_t inv_mod(std::uint32_t a) const {
    std::uint64_t r = 1, b = a, e = p_ - 2;
    while (e) {
      if (e & 1) r = r * b % p_;
      b = b * b % p_;
      e >>= 1;
    }
    return static_cast<std::uint32_t>(r);
  }
  // quotient and remainder
  std::pair<V, V> pdivmod(V a, const V& b) const {
    if (b.empty()) fail("DivisionByNonUnit", "polynomial division by zero");
    V q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    std::uint32_t il = inv_mod(b.back());
    while (!a.empty() && a.size() >= b.size()) {
      std::size_t s = a.size() - b.size();
      std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t(a.back()) * il % p_);
      q[s] = c;
      for (std::size_t i = 0; i < b.size(); ++i)
        a[s + i] = static_cast<std::uint32_t>((a[s + i] + std::uint64_t(p_ - c) * b[i]) % p_);
      a = trim(a);
    }
    return {trim(q), a};
  }
  V pgcd(V a, V b) const {
    while (!b.empty()) {
      auto r = pdivmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  V monic(V a) const {
    if (a.empty()) return a;
    std::uint32_t il = inv_mod(a.back());
    for (auto& c : a) c = static_cast<std::uint32_t>(std::uint64_t(c) * il % p_);
    return a;
  }

 private:
  payload::ModP canon(V n, V d) const {
    n = trim(n);
    d = trim(d);
    if (d.empty()) fail("DivisionByNonUnit", "division by zero in " + id_);
    if (n.empty()) return payload::ModP{{}, V{1}};
    V g = pgcd(n, d);
    if (g.size() > 1) {
      n = pdivmod(n, g).first;
      d = pdivmod(d, g).first;
    }
    std::uint32_t il = inv_mod(d.back());
    for (auto& c : n) c = static_cast<std::uint32_t>(std::uint64_t(c) * il % p_);
    for (auto& c : d) c = static_cast<std::uint32_t>(std::uint64_t(c) * il % p_);
    return payload::ModP{n, d};
  }
  std::string pstr(const V& a) const {
    if (a.empty()) return "0";
    std::string s;
    for (std::size_t i = a.size(); i-- > 0;) {
      if (!a[i]) continue;
      if (!s.empty()) s += " + ";
      std::string m = i == 0 ? "" : (i == 1 ? var_ : var_ + "^" + std::to_string(i));
      if (m.empty()) s += std::to_string(a[i]);
      else s += (a[i] == 1 ? "" : std::to_string(a[i]) + "*") + m;
    }
    return s;
  }
  std::uint32_t p_;
  std::string var_;
};

// ---------------------------------------------------------------------------
// factories

inline RingPtr make_integers() { return std::make_shared<LocalizedRing>(std::vector<std::string>{}, false, std::vector<ZPoly>{}); }
inline RingPtr make_rationals() { return std::make_shared<LocalizedRing>(std::vector<std::string>{}, true, std::vector<ZPoly>{}); }
inline RingPtr make_function_field(std::vector<std::string> vars) {
  return std::make_shared<LocalizedRing>(std::move(vars), true, std::vector<ZPoly>{});
}
inline RingPtr make_localized(std::vector<std::string> vars, std::vector<ZPoly> inverted) {
  return std::make_shared<LocalizedRing>(std::move(vars), false, std::move(inverted));
}
inline RingPtr make_finite_field(std::uint32_t q) {
  std::uint32_t p = 0, k = 0;
  for (std::uint32_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0) fail("InvalidRing", "GF(" + std::to_string(q) + ")");
  std::uint32_t t = q;
  while (t % p == 0) {
    t /= p;
    ++k;
  }
  if (t != 1) fail("InvalidRing", "GF(" + std::to_string(q) + "): not a prime power");
  return std::make_shared<FiniteFieldRing>(p, k);
}
inline RingPtr make_product(RingPtr a, RingPtr b) { return std::make_shared<ProductRing>(std::move(a), std::move(b)); }
inline std::shared_ptr<const QuotientRing> make_quotient(std::vector<std::string> vars, const std::vector<ZPoly>& gens) {
  return std::make_shared<QuotientRing>(std::move(vars), groebner(gens));
}

template <class R>
const R* as(const RingPtr& r) {
  return dynamic_cast<const R*>(r.get());
}

}  // namespace pfkit

#endif
