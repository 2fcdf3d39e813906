#ifndef PFKIT_PFIELD_PARTIAL_FIELD_HPP
#define PFKIT_PFIELD_PARTIAL_FIELD_HPP

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pfkit/exactalg/factor.hpp"
#include "pfkit/exactalg/parse.hpp"

namespace pfkit {

enum class Strategy { FiniteEnumeration, PrimeBasisFactorization, UnitGroupRule, Componentwise, Sublattice };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::FiniteEnumeration: return "FiniteEnumeration";
    case Strategy::PrimeBasisFactorization: return "PrimeBasisFactorization";
    case Strategy::UnitGroupRule: return "UnitGroupRule";
    case Strategy::Componentwise: return "Componentwise";
    case Strategy::Sublattice: return "Sublattice";
  }
  return "?";
}

/// How fun(P) can be enumerated for an infinite partial field.
struct FunRecipe {
  enum class Kind { None, Box, Listed, Frobenius } kind = Kind::None;
  std::vector<std::pair<long long, long long>> box;  // exponent range per generator
  bool proven = false;
  std::string certificate;
  std::vector<std::string> listed;  // representatives; fun = union of their associates
};

struct PartialField;
using PF = std::shared_ptr<const PartialField>;

struct PartialField {
  std::string name;
  RingPtr ring;
  std::vector<Elem> generators;         // S, with G = <S u {-1}>
  std::vector<std::string> documented;  // generators as printed in the catalog
  Strategy strategy = Strategy::PrimeBasisFactorization;
  std::string rule;
  PF left, right;  // Componentwise
  PF parent;       // Sublattice
  std::vector<std::vector<Integer>> lattice;  // Sublattice: echelon rows of [exponents | transform]
  std::shared_ptr<const std::vector<Elem>> units;  // finite groups, canonically sorted
  std::shared_ptr<const std::unordered_set<Elem, ElemHash>> unit_set;
  FunRecipe fun;

  bool finite_group() const { return units != nullptr; }
  Elem one() const { return ring->one(); }
  Elem zero() const { return ring->zero(); }
  Elem elem(const std::string& text) const { return parse_element(text, ring); }
  std::string label() const { return name.empty() ? ring->id() : name; }
};

// ---------------------------------------------------------------------------
// canonical ordering of ring elements

inline bool canonical_less(const Elem& a, const Elem& b) {
  const RingPtr& R = a.ring();
  if (R->kind() == RingKind::FiniteField) {
    auto& F = as<FiniteFieldRing>(R)->field();
    auto x = std::get<payload::FF>(a.payload()).v, y = std::get<payload::FF>(b.payload()).v;
    if (F.k() == 1) return x < y;
    auto key = [&](std::uint32_t v) { return v == 0 ? -1 : static_cast<long long>(F.log(v)); };
    return key(x) < key(y);
  }
  if (R->kind() == RingKind::Product) {
    auto& l1 = ProductRing::first(a);
    auto& l2 = ProductRing::first(b);
    if (!(l1 == l2)) return canonical_less(l1, l2);
    return canonical_less(ProductRing::second(a), ProductRing::second(b));
  }
  std::string x = a.str(), y = b.str();
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

inline void canonical_sort(std::vector<Elem>& v) {
  std::sort(v.begin(), v.end(), canonical_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

namespace detail {

inline std::vector<Elem> group_closure(const RingPtr& R, const std::vector<Elem>& gens, std::size_t cap) {
  std::unordered_set<Elem, ElemHash> seen;
  std::deque<Elem> queue;
  auto push = [&](const Elem& x) {
    if (seen.insert(x).second) {
      if (seen.size() > cap) throw ResourceLimit("unit group closure exceeds " + std::to_string(cap) + " elements");
      queue.push_back(x);
    }
  };
  push(R->one());
  push(-R->one());
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    for (auto& g : gens) push(x * g);
  }
  std::vector<Elem> out(seen.begin(), seen.end());
  canonical_sort(out);
  return out;
}

inline bool torsion_only(const std::vector<Elem>& gens) {
  for (auto& g : gens) {
    Elem p = g;
    int k = 1;
    for (; k <= 12 && !p.is_one(); ++k) p = p * g;
    if (!p.is_one()) return false;
  }
  return true;
}

// Echelon form of integer rows, pivoting only in the first ncols columns (the
// remaining columns ride along, e.g. to record the transformation).
inline std::vector<std::vector<Integer>> echelon(std::vector<std::vector<Integer>> rows, std::size_t ncols) {
  std::vector<std::vector<Integer>> out;
  if (rows.empty()) return out;
  std::size_t n = rows[0].size();
  for (std::size_t col = 0; col < ncols && !rows.empty(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      if (piv == rows.size()) {
        piv = i;
        continue;
      }
      auto& r = rows[i];
      while (r[col] != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[piv][col].get_mpz_t(), r[col].get_mpz_t());
        for (std::size_t j = 0; j < n; ++j) rows[piv][j] -= q * r[j];
        std::swap(rows[piv], r);
      }
    }
    if (piv == rows.size()) continue;
    std::vector<Integer> p = rows[piv];
    if (p[col] < 0)
      for (auto& c : p) c = -c;
    out.push_back(p);
    rows.erase(rows.begin() + static_cast<long>(piv));
  }
  return out;
}

/// Solves v = sum c_i * gens_i over the integers, given echelon rows of [gens | I].
inline std::optional<std::vector<Integer>> lattice_solve(const std::vector<std::vector<Integer>>& ech, std::size_t ncols,
                                                         std::size_t ngens, std::vector<Integer> v) {
  std::vector<Integer> c(ngens, 0);
  for (auto& row : ech) {
    std::size_t col = 0;
    while (row[col] == 0) ++col;
    for (std::size_t j = 0; j < col; ++j)
      if (v[j] != 0) return std::nullopt;
    if (!mpz_divisible_p(v[col].get_mpz_t(), row[col].get_mpz_t())) return std::nullopt;
    Integer q = v[col] / row[col];
    for (std::size_t j = 0; j < ncols; ++j) v[j] -= q * row[j];
    for (std::size_t j = 0; j < ngens; ++j) c[j] += q * row[ncols + j];
  }
  for (auto& x : v)
    if (x != 0) return std::nullopt;
  return c;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// membership

inline bool in_group(const PartialField& P, const Elem& e);

/// Rule name of partial fields whose group is every unit of a field.
inline const std::string kAllUnits = "all units";

/// Factorization of a unit over the generators, or nullopt if e is not in G.
inline std::optional<Factorization> factor(const PartialField& P, const Elem& e) {
  check_same(e, P.one());
  if (e.is_zero()) return std::nullopt;
  switch (P.strategy) {
    case Strategy::Componentwise: {
      if (P.ring->is_finite()) return factor_over_basis(e, P.generators);
      // generators are (g,1) for left, (1,h) for right, then (-1,1)
      auto fl = factor(*P.left, ProductRing::first(e));
      auto fr = factor(*P.right, ProductRing::second(e));
      if (!fl || !fr) return std::nullopt;
      Factorization out;
      out.sign = fr->sign;
      out.exps = fl->exps;
      out.exps.insert(out.exps.end(), fr->exps.begin(), fr->exps.end());
      out.exps.push_back(fl->sign * fr->sign == -1 ? 1 : 0);
      return out;
    }
    case Strategy::Sublattice: {
      auto f = factor(*P.parent, e);
      if (!f) return std::nullopt;
      std::size_t n = f->exps.size();
      std::vector<Integer> v;
      for (auto x : f->exps) v.emplace_back(static_cast<long>(x));
      auto c = detail::lattice_solve(P.lattice, n, P.generators.size(), v);
      if (!c) return std::nullopt;
      Factorization out;
      out.exps.resize(c->size());
      for (std::size_t i = 0; i < c->size(); ++i) out.exps[i] = c->at(i).get_si();
      Elem rest = e / expand(Factorization{1, out.exps}, P.generators, P.ring);
      out.sign = rest.is_one() ? 1 : -1;
      return out;
    }
    case Strategy::FiniteEnumeration:
      if (!P.unit_set->count(e)) return std::nullopt;
      return factor_over_basis(e, P.generators);
    case Strategy::UnitGroupRule:
      if (P.rule == kAllUnits) fail("UndecidableWithStrategy", P.label() + " has no finite generating set");
      return factor_over_basis(e, P.generators);
    default:
      return factor_over_basis(e, P.generators);
  }
}

inline bool in_group(const PartialField& P, const Elem& e) {
  check_same(e, P.one());
  if (e.is_zero()) return false;
  switch (P.strategy) {
    case Strategy::FiniteEnumeration:
      return P.unit_set->count(e) > 0;
    case Strategy::Componentwise: {
      auto& a = ProductRing::first(e);
      auto& b = ProductRing::second(e);
      if (a.is_zero() || b.is_zero()) return false;
      return in_group(*P.left, a) && in_group(*P.right, b);
    }
    case Strategy::Sublattice:
      return factor(P, e).has_value();
    case Strategy::UnitGroupRule:
      if (P.rule == kAllUnits) return e.is_unit();
      return factor_over_basis(e, P.generators).has_value();
    default:
      return factor_over_basis(e, P.generators).has_value();
  }
}

/// e in G u {0}
inline bool contains(const PartialField& P, const Elem& e) { return e.is_zero() || in_group(P, e); }
inline bool contains(const PF& P, const Elem& e) { return contains(*P, e); }

inline bool is_fundamental(const PartialField& P, const Elem& p) { return contains(P, p) && contains(P, P.one() - p); }

/// Group elements (finite groups only), canonically sorted.
inline const std::vector<Elem>& group_elements(const PartialField& P) {
  if (!P.units) fail("UnsupportedRing", P.label() + " has an infinite unit group");
  return *P.units;
}

/// Elements of the partial field, 0 first (finite groups only).
inline std::vector<Elem> pf_elements(const PartialField& P) {
  std::vector<Elem> out{P.zero()};
  auto& g = group_elements(P);
  out.insert(out.end(), g.begin(), g.end());
  return out;
}

// ---------------------------------------------------------------------------
// construction

inline PF make_pf(std::string name, RingPtr R, std::vector<Elem> gens, Strategy s, std::string rule = {},
                  std::vector<std::string> documented = {}) {
  auto P = std::make_shared<PartialField>();
  P->name = std::move(name);
  P->ring = R;
  P->generators = std::move(gens);
  P->strategy = s;
  P->rule = std::move(rule);
  P->documented = std::move(documented);
  for (auto& g : P->generators) {
    check_same(g, R->one());
    if (!g.is_unit()) fail("InvalidPartialField", "generator " + g.str() + " is not a unit of " + R->id());
  }
  if (P->documented.empty())
    for (auto& g : P->generators) P->documented.push_back(g.str());
  if (s == Strategy::FiniteEnumeration || R->is_finite() || detail::torsion_only(P->generators)) {
    auto u = detail::group_closure(R, P->generators, limits().enumeration);
    P->unit_set = std::make_shared<std::unordered_set<Elem, ElemHash>>(u.begin(), u.end());
    P->units = std::make_shared<std::vector<Elem>>(std::move(u));
  }
  return P;
}

/// The partial field (R, <gens u {-1}>) over a ring given by its declaration.
inline PF make_pf(const std::string& ring_decl, const std::vector<std::string>& gens, std::string name = {}) {
  RingPtr R = parse_ring(ring_decl);
  std::vector<Elem> g;
  for (auto& s : gens) g.push_back(parse_element(s, R));
  Strategy st = R->is_finite() ? Strategy::FiniteEnumeration : Strategy::PrimeBasisFactorization;
  if (R->kind() == RingKind::Quadratic) st = Strategy::UnitGroupRule;
  if (R->kind() == RingKind::Product && !R->is_finite()) fail("UnsupportedRing", "use product_pf for infinite products");
  return make_pf(std::move(name), R, g, st);
}

/// (F, F*) for an infinite field F such as QQ or QQ(a).
inline PF field_pf(RingPtr R, std::string name) {
  auto P = std::make_shared<PartialField>();
  P->name = std::move(name);
  P->ring = std::move(R);
  P->strategy = Strategy::UnitGroupRule;
  P->rule = kAllUnits;
  return P;
}

inline PF gf_pf(std::uint32_t q) {
  RingPtr R = make_finite_field(q);
  auto* F = as<FiniteFieldRing>(R);
  return make_pf("GF(" + std::to_string(q) + ")", R, {F->generator()}, Strategy::FiniteEnumeration);
}

inline PF product_pf(const PF& a, const PF& b) {
  auto R = make_product(a->ring, b->ring);
  auto* PR = as<ProductRing>(R);
  std::vector<Elem> gens;
  for (auto& g : a->generators) gens.push_back(PR->pair(g, b->one()));
  for (auto& h : b->generators) gens.push_back(PR->pair(a->one(), h));
  gens.push_back(PR->pair(-a->one(), b->one()));
  auto P = std::make_shared<PartialField>();
  P->name = a->label() + "x" + b->label();
  P->ring = R;
  P->generators = gens;
  for (auto& g : gens) P->documented.push_back(g.str());
  P->strategy = Strategy::Componentwise;
  P->left = a;
  P->right = b;
  if (a->units && b->units) {
    std::vector<Elem> u;
    for (auto& x : *a->units)
      for (auto& y : *b->units) u.push_back(PR->pair(x, y));
    canonical_sort(u);
    P->unit_set = std::make_shared<std::unordered_set<Elem, ElemHash>>(u.begin(), u.end());
    P->units = std::make_shared<std::vector<Elem>>(std::move(u));
  }
  return P;
}

/// The partial field P[S] = (R, <S u {-1}>).
inline PF generated_subfield(const PF& P, const std::vector<Elem>& S) {
  for (auto& s : S)
    if (!in_group(*P, s)) fail("ElementNotInGroup", s.str() + " is not in " + P->label());
  auto Q = std::make_shared<PartialField>();
  Q->name = P->label() + "[";
  for (std::size_t i = 0; i < S.size(); ++i) Q->name += (i ? "," : "") + S[i].str();
  Q->name += "]";
  Q->ring = P->ring;
  Q->generators = S;
  for (auto& g : S) Q->documented.push_back(g.str());
  if (P->units) {
    auto u = detail::group_closure(P->ring, S, P->units->size() + 2);
    Q->unit_set = std::make_shared<std::unordered_set<Elem, ElemHash>>(u.begin(), u.end());
    Q->units = std::make_shared<std::vector<Elem>>(std::move(u));
    Q->strategy = Strategy::FiniteEnumeration;
    return Q;
  }
  if (P->strategy != Strategy::PrimeBasisFactorization)
    fail("UndecidableWithStrategy", "sub-partial fields of " + P->label() + " need a finite or free unit group");
  Q->strategy = Strategy::Sublattice;
  Q->parent = P;
  std::vector<std::vector<Integer>> rows;
  std::size_t n = P->generators.size();
  for (std::size_t i = 0; i < S.size(); ++i) {
    auto f = factor(*P, S[i]);
    std::vector<Integer> row;
    for (auto x : f->exps) row.emplace_back(static_cast<long>(x));
    row.resize(n + S.size(), 0);
    row[n + i] = 1;
    rows.push_back(std::move(row));
  }
  Q->lattice = detail::echelon(rows, n);
  return Q;
}

// ---------------------------------------------------------------------------
// associates

/// assoc{p} = {p, 1-p, 1/(1-p), p/(p-1), (p-1)/p, 1/p}, or {0,1} for p in {0,1}.
inline std::vector<Elem> associates(const Elem& p, const PartialField& P) {
  Elem one = P.one();
  if (!contains(P, p) || !contains(P, one - p)) fail("NotFundamental", p.str() + " is not fundamental in " + P.label());
  std::vector<Elem> out;
  if (p.is_zero() || p.is_one()) {
    out = {P.zero(), one};
  } else {
    Elem q = one - p;
    out = {p, q, q.inv(), p / (p - one), (p - one) / p, p.inv()};
  }
  canonical_sort(out);
  return out;
}

}  // namespace pfkit

#endif
