#ifndef PFKIT_UNIVERSAL_UNIVERSAL_HPP
#define PFKIT_UNIVERSAL_UNIVERSAL_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfkit/exactalg/groebner.hpp"
#include "pfkit/matroid/matroid.hpp"
#include "pfkit/pfield/hom.hpp"

namespace pfkit {

using Edge = std::pair<std::string, std::string>;

/// Entry symbols of the distinguished matrix, the bracket relations and the
/// basis determinants. `ideal` is empty until saturation has run.
struct Presentation {
  std::vector<std::string> ground;
  int rank = 0;
  Mask basis = 0;
  std::vector<std::string> row_labels, col_labels;
  std::vector<Edge> tree;
  std::vector<std::string> variables;
  std::vector<std::vector<ZPoly>> matrix;
  std::vector<ZPoly> relations;   // determinants of non-bases
  std::vector<ZPoly> basis_dets;  // determinants of bases, one per basis
  IdealBasis<Integer> ideal;
  bool saturated = false;

  bool trivial() const { return ideal.is_unit(); }
  int var_index(const std::string& s) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
      if (variables[i] == s) return int(i);
    return -1;
  }
};

enum class Saturation { None, Fast, Strict };

namespace detail {

inline ZPoly poly_det(const std::vector<std::vector<ZPoly>>& m) {
  std::size_t n = m.size();
  if (n == 0) return ZPoly(1);
  if (n == 1) return m[0][0];
  // expand along the row with the fewest nonzero entries
  std::size_t best = 0, best_nz = n + 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t nz = 0;
    for (auto& e : m[i]) nz += !e.is_zero();
    if (nz < best_nz) {
      best = i;
      best_nz = nz;
    }
  }
  ZPoly sum(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (m[best][j].is_zero()) continue;
    std::vector<std::vector<ZPoly>> sub;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best) continue;
      std::vector<ZPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      sub.push_back(std::move(row));
    }
    ZPoly t = m[best][j] * poly_det(sub);
    if ((best + j) % 2) sum -= t;
    else sum += t;
  }
  return sum;
}

inline Mask greedy_basis(const Matroid& M) {
  Mask b = 0;
  for (std::size_t i = 0; i < M.size(); ++i)
    if (M.independent(b | Mask(1) << i)) b |= Mask(1) << i;
  return b;
}

/// Spanning forest of G(M,B): BFS from each unvisited element in ground order.
inline std::vector<Edge> default_tree(const Matroid& M, Mask B) {
  auto edges = fundamental_graph(M, B);
  std::map<std::string, std::vector<std::string>> adj;
  for (auto& [x, y] : edges) {
    adj[x].push_back(y);
    adj[y].push_back(x);
  }
  auto pos = [&](const std::string& l) { return M.index_of(l); };
  for (auto& [k, v] : adj) std::sort(v.begin(), v.end(), [&](auto& a, auto& b) { return pos(a) < pos(b); });
  std::set<std::string> seen;
  std::vector<Edge> tree;
  for (auto& s : M.ground) {
    if (seen.count(s)) continue;
    seen.insert(s);
    std::vector<std::string> q{s};
    for (std::size_t h = 0; h < q.size(); ++h)
      for (auto& w : adj[q[h]])
        if (!seen.count(w)) {
          seen.insert(w);
          q.push_back(w);
          Mask wm = M.mask_of({w});
          tree.push_back(wm & B ? Edge{w, q[h]} : Edge{q[h], w});
        }
  }
  return tree;
}

inline std::string symbol_name(const std::string& x, const std::string& y) { return "a" + x + "_" + y; }

}  // namespace detail

/// Subdeterminant polynomial [Z] of [I | A-hat] with columns in ground order.
inline ZPoly bracket(const Presentation& P, Mask Z) {
  std::vector<std::vector<ZPoly>> m(std::size_t(P.rank));
  std::size_t ci = 0;
  for (std::size_t e = 0; e < P.ground.size(); ++e) {
    bool in_b = P.basis >> e & 1;
    std::size_t col = in_b ? 0 : ci++;
    if (!(Z >> e & 1)) continue;
    if (in_b) {
      std::size_t r = std::find(P.row_labels.begin(), P.row_labels.end(), P.ground[e]) - P.row_labels.begin();
      for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(ZPoly(i == r ? 1 : 0));
    } else {
      for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(P.matrix[i][col]);
    }
  }
  return detail::poly_det(m);
}

/// det A-hat[B - Z, Z - B]: equal to [Z] up to sign.
inline ZPoly subset_det(const Presentation& P, Mask Z) {
  std::vector<std::size_t> ri, cj;
  std::size_t rpos = 0, cpos = 0;
  for (std::size_t e = 0; e < P.ground.size(); ++e) {
    if (P.basis >> e & 1) {
      if (!(Z >> e & 1)) ri.push_back(rpos);
      ++rpos;
    } else {
      if (Z >> e & 1) cj.push_back(cpos);
      ++cpos;
    }
  }
  std::vector<std::vector<ZPoly>> m;
  for (auto i : ri) {
    std::vector<ZPoly> row;
    for (auto j : cj) row.push_back(P.matrix[i][j]);
    m.push_back(std::move(row));
  }
  return detail::poly_det(m);
}

inline IdealBasis<Integer> saturate_presentation(const Presentation& P, Saturation mode) {
  IdealBasis<Integer> I = groebner(P.relations);
  if (mode == Saturation::None) return I;
  std::vector<ZPoly> dets;
  for (auto& d : P.basis_dets) {
    ZPoly f = d.is_zero() ? d : (d.lc() < 0 ? -d : d);
    if (std::find(dets.begin(), dets.end(), f) == dets.end()) dets.push_back(f);
  }
  std::stable_sort(dets.begin(), dets.end(), [](const ZPoly& a, const ZPoly& b) { return a.total_degree() < b.total_degree(); });
  for (auto& d : dets) {
    if (I.is_unit()) break;
    ZPoly f = I.normal_form(d);
    if (f.is_zero()) return groebner(std::vector<ZPoly>{ZPoly(1)});
    if (f.is_constant() && (f.constant_value() == 1 || f.constant_value() == -1)) continue;
    if (mode == Saturation::Fast) continue;
    I = saturate(I, f);
  }
  return I;
}

/// The presentation of the bracket ring on basis B normalized along the forest T.
inline Presentation bracket_presentation(const Matroid& M, std::optional<std::vector<std::string>> basis = std::nullopt,
                                         std::optional<std::vector<Edge>> tree = std::nullopt, Saturation mode = Saturation::Strict) {
  Presentation P;
  P.ground = M.ground;
  P.rank = M.rank;
  P.basis = basis ? M.mask_of(*basis) : detail::greedy_basis(M);
  if (!M.is_basis(P.basis)) fail("NotABasis", "the given set is not a basis");
  auto edges = fundamental_graph(M, P.basis);
  std::set<Edge> edge_set(edges.begin(), edges.end());
  P.tree = tree ? *tree : detail::default_tree(M, P.basis);
  for (auto& e : P.tree)
    if (!edge_set.count(e)) fail("NotAForest", "tree edge " + e.first + e.second + " is not an edge of the fundamental graph");
  {
    std::vector<std::string> verts(M.ground);
    if (graph_components(verts, P.tree) + P.tree.size() != verts.size() ||
        graph_components(verts, P.tree) != graph_components(verts, edges))
      fail("NotAForest", "the tree is not a maximal spanning forest of the fundamental graph");
  }
  std::set<Edge> tree_set(P.tree.begin(), P.tree.end());
  for (std::size_t e = 0; e < M.size(); ++e) (P.basis >> e & 1 ? P.row_labels : P.col_labels).push_back(M.ground[e]);
  P.matrix.assign(P.row_labels.size(), std::vector<ZPoly>(P.col_labels.size(), ZPoly(0)));
  for (std::size_t i = 0; i < P.row_labels.size(); ++i)
    for (std::size_t j = 0; j < P.col_labels.size(); ++j) {
      Edge e{P.row_labels[i], P.col_labels[j]};
      if (!edge_set.count(e)) continue;
      if (tree_set.count(e)) {
        P.matrix[i][j] = ZPoly(1);
      } else {
        P.variables.push_back(detail::symbol_name(e.first, e.second));
        if (P.variables.size() >= std::size_t(kMaxVars)) throw ResourceLimit("too many entry symbols");
        P.matrix[i][j] = ZPoly::var(int(P.variables.size() - 1));
      }
    }
  detail::for_each_subset(M.size(), M.rank, [&](Mask Z) {
    ZPoly d = subset_det(P, Z);
    if (M.is_basis(Z)) P.basis_dets.push_back(d);
    else if (!d.is_zero() && std::find(P.relations.begin(), P.relations.end(), d) == P.relations.end())
      P.relations.push_back(d);
  });
  P.ideal = saturate_presentation(P, mode);
  P.saturated = mode == Saturation::Strict;
  return P;
}

inline bool is_representable(const Matroid& M) { return !bracket_presentation(M).trivial(); }

// ---------------------------------------------------------------------------
// universal partial field

struct UniversalPF {
  Presentation presentation;
  std::shared_ptr<const QuotientRing> ring;  // entry symbols plus t, the inverse of all basis determinants
  ZPoly inverted;
  PF pf;  // all units of the quotient
  PFMatrix matrix;
  std::vector<Elem> cross_ratios;

  Elem symbol(const std::string& s) const {
    auto e = ring->symbol(s);
    if (!e) fail("UnknownSymbol", "no symbol " + s);
    return *e;
  }
};

inline UniversalPF universal_pf(const Matroid& M, std::optional<std::vector<std::string>> basis = std::nullopt,
                               std::optional<std::vector<Edge>> tree = std::nullopt) {
  UniversalPF U;
  U.presentation = bracket_presentation(M, std::move(basis), std::move(tree));
  const Presentation& P = U.presentation;
  if (P.trivial()) fail("NotRepresentable", "the bracket ideal contains 1");
  // t * D - 1 with D the product of the distinct basis-determinant normal forms
  std::vector<ZPoly> factors;
  for (auto& d : P.basis_dets) {
    ZPoly f = P.ideal.normal_form(d);
    if (f.is_constant()) {
      Integer c = abs(f.constant_value());
      for (Integer p = 2; p * p <= c; ++p)
        if (c % p == 0) {
          ZPoly q(p);
          if (std::find(factors.begin(), factors.end(), q) == factors.end()) factors.push_back(q);
          while (c % p == 0) c /= p;
        }
      if (c > 1 && std::find(factors.begin(), factors.end(), ZPoly(c)) == factors.end()) factors.push_back(ZPoly(c));
      continue;
    }
    if (f.lc() < 0) f = -f;
    if (std::find(factors.begin(), factors.end(), f) == factors.end()) factors.push_back(f);
  }
  U.inverted = ZPoly(1);
  for (auto& f : factors) U.inverted *= f;
  std::vector<std::string> vars = P.variables;
  vars.push_back("t");
  int tv = int(P.variables.size());
  std::vector<ZPoly> gens = P.ideal.basis;
  gens.push_back(ZPoly::var(tv) * U.inverted - ZPoly(1));
  U.ring = make_quotient(vars, gens);
  if (U.ring->trivial()) fail("NotRepresentable", "inverting the basis determinants gives the zero ring");
  U.pf = field_pf(U.ring, "P_M");
  U.matrix.pf = U.pf;
  U.matrix.rows = P.row_labels;
  U.matrix.cols = P.col_labels;
  U.matrix.a.assign(P.row_labels.size(), {});
  for (std::size_t i = 0; i < P.row_labels.size(); ++i)
    for (auto& e : P.matrix[i]) U.matrix.a[i].push_back(U.ring->residue(e));
  U.cross_ratios = cross_ratios(U.matrix);
  return U;
}

// ---------------------------------------------------------------------------
// counting representations over a finite partial field

namespace detail {

struct FiniteTables {
  std::vector<Elem> elems;
  std::unordered_map<Elem, int, ElemHash> index;
  std::vector<int> add, mul;
  std::vector<char> group;
  std::vector<int> units;
  int zero = 0, one = 0;
  std::size_t n = 0;

  explicit FiniteTables(const PF& P) {
    if (!P->ring->is_finite()) fail("UnsupportedRing", "representation counting needs a finite ring");
    elems = P->ring->elements();
    n = elems.size();
    for (std::size_t i = 0; i < n; ++i) index[elems[i]] = int(i);
    add.resize(n * n);
    mul.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        add[i * n + j] = index.at(elems[i] + elems[j]);
        mul[i * n + j] = index.at(elems[i] * elems[j]);
      }
    group.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      group[i] = !elems[i].is_zero() && in_group(*P, elems[i]);
      if (group[i]) units.push_back(int(i));
    }
    zero = index.at(P->zero());
    one = index.at(P->one());
  }
  int of_integer(const Integer& c, const RingPtr& R) const { return index.at(R->make(R->from_integer(c))); }
};

struct CompiledPoly {
  std::vector<std::pair<int, std::vector<std::pair<int, int>>>> terms;  // coefficient index, (var, exponent)
  std::uint64_t vars = 0;
  bool must_vanish = false;
};

inline CompiledPoly compile(const ZPoly& p, const FiniteTables& T, const RingPtr& R, bool vanish) {
  CompiledPoly c;
  c.must_vanish = vanish;
  for (auto& [m, coef] : p.terms()) {
    std::vector<std::pair<int, int>> f;
    for (int i = 0; i < kMaxVars; ++i)
      if (m.e[i]) {
        f.push_back({i, m.e[i]});
        c.vars |= std::uint64_t(1) << i;
      }
    c.terms.push_back({T.of_integer(coef, R), f});
  }
  return c;
}

inline int eval(const CompiledPoly& c, const FiniteTables& T, const std::vector<int>& val) {
  int s = T.zero;
  for (auto& [k, f] : c.terms) {
    int t = k;
    for (auto& [v, e] : f)
      for (int r = 0; r < e; ++r) t = T.mul[std::size_t(t) * T.n + std::size_t(val[std::size_t(v)])];
    s = T.add[std::size_t(s) * T.n + std::size_t(t)];
  }
  return s;
}

}  // namespace detail

/// Normalized representations over a finite partial field, as assignments to
/// the free entry symbols. The callback returns false to stop early.
inline std::size_t for_each_representation(const Presentation& P, const PF& pf,
                                           const std::function<bool(const std::vector<Elem>&)>& cb) {
  detail::FiniteTables T(pf);
  const RingPtr& R = pf->ring;
  std::vector<detail::CompiledPoly> cons;
  for (auto& r : P.relations) cons.push_back(detail::compile(r, T, R, true));
  for (auto& d : P.basis_dets) cons.push_back(detail::compile(d, T, R, false));
  std::size_t nv = P.variables.size();
  std::vector<int> val(nv, T.zero);
  auto ok = [&](const detail::CompiledPoly& c) {
    int v = detail::eval(c, T, val);
    return c.must_vanish ? v == T.zero : bool(T.group[std::size_t(v)]);
  };
  for (auto& c : cons)
    if (c.vars == 0 && !ok(c)) return 0;
  // order: next the variable completing the most constraints
  std::vector<int> order;
  std::uint64_t done = 0;
  std::vector<std::vector<const detail::CompiledPoly*>> at(nv);
  for (std::size_t step = 0; step < nv; ++step) {
    int best = -1;
    std::size_t best_score = 0;
    for (std::size_t v = 0; v < nv; ++v) {
      if (done >> v & 1) continue;
      std::uint64_t nd = done | std::uint64_t(1) << v;
      std::size_t score = 0;
      for (auto& c : cons)
        if (c.vars && (c.vars & ~nd) == 0 && (c.vars & ~done) != 0) ++score;
      if (best < 0 || score > best_score) {
        best = int(v);
        best_score = score;
      }
    }
    std::uint64_t nd = done | std::uint64_t(1) << best;
    for (auto& c : cons)
      if (c.vars && (c.vars & ~nd) == 0 && (c.vars & ~done) != 0) at[step].push_back(&c);
    order.push_back(best);
    done = nd;
  }
  std::size_t count = 0, budget = limits().enumeration;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (stop) return;
    if (k == nv) {
      ++count;
      std::vector<Elem> out;
      for (auto v : val) out.push_back(T.elems[std::size_t(v)]);
      if (!cb(out)) stop = true;
      return;
    }
    for (int u : T.units) {
      if (budget-- == 0) throw ResourceLimit("representation search budget exhausted");
      val[std::size_t(order[k])] = u;
      bool good = true;
      for (auto* c : at[k])
        if (!ok(*c)) {
          good = false;
          break;
        }
      if (good) rec(k + 1);
      if (stop) return;
    }
  };
  rec(0);
  return count;
}

/// A-hat with the symbols replaced by the given values.
inline PFMatrix representation_matrix(const Presentation& P, const PF& pf, const std::vector<Elem>& values) {
  PFMatrix A;
  A.pf = pf;
  A.rows = P.row_labels;
  A.cols = P.col_labels;
  A.a.assign(P.row_labels.size(), {});
  for (std::size_t i = 0; i < P.row_labels.size(); ++i)
    for (auto& e : P.matrix[i]) A.a[i].push_back(detail::eval_zpoly(e, values, pf->ring));
  return A;
}

inline std::vector<PFMatrix> representations(const Matroid& M, const PF& pf, std::optional<std::vector<std::string>> basis = std::nullopt,
                                             std::optional<std::vector<Edge>> tree = std::nullopt) {
  Presentation P = bracket_presentation(M, std::move(basis), std::move(tree), Saturation::None);
  std::vector<PFMatrix> out;
  for_each_representation(P, pf, [&](const std::vector<Elem>& v) {
    out.push_back(representation_matrix(P, pf, v));
    return true;
  });
  return out;
}

inline std::size_t count_representations(const Matroid& M, const PF& pf) {
  Presentation P = bracket_presentation(M, std::nullopt, std::nullopt, Saturation::None);
  return for_each_representation(P, pf, [](const std::vector<Elem>&) { return true; });
}

// ---------------------------------------------------------------------------
// certificate checks

namespace detail {

/// Membership of `target` in the subring of the target ring generated by `gens`.
inline bool target_subring_membership(const PF& D, const Elem& target, const std::vector<Elem>& gens) {
  const RingPtr& R = D->ring;
  if (R->is_finite()) {
    std::unordered_set<Elem, ElemHash> closure{R->zero(), R->one()};
    closure.insert(gens.begin(), gens.end());
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Elem> cur(closure.begin(), closure.end());
      for (auto& a : cur)
        for (auto& b : cur)
          for (auto c : {a + b, a * b, -a})
            if (closure.insert(c).second) grew = true;
    }
    return closure.count(target) > 0;
  }
  if (R->kind() == RingKind::Quotient) {
    auto* Q = as<QuotientRing>(R);
    std::vector<ZPoly> g;
    for (auto& x : gens) g.push_back(Q->nf(x));
    return subring_membership(Q->nf(target), g, Q->ideal().basis, int(Q->vars().size()));
  }
  if (R->kind() == RingKind::Localized) {
    // encode as Z[vars, s_i]/(s_i f_i - 1)
    auto* L = as<LocalizedRing>(R);
    if (L->is_field()) fail("UnsupportedRing", "subring membership over a field of fractions");
    int nv = int(L->vars().size());
    const auto& inv = L->inverted();
    std::vector<ZPoly> rel;
    for (std::size_t i = 0; i < inv.size(); ++i) rel.push_back(ZPoly::var(nv + int(i)) * inv[i] - ZPoly(1));
    auto encode = [&](const Elem& e) {
      auto& f = std::get<payload::Frac>(e.payload());
      ZPoly num = f.num, den = f.den;
      ZPoly out = num;
      while (!den.is_constant() || abs(den.constant_value()) != 1) {
        bool progress = false;
        for (std::size_t i = 0; i < inv.size() && !progress; ++i)
          if (auto q = den.divide_exact(inv[i])) {
            den = *q;
            out *= ZPoly::var(nv + int(i));
            progress = true;
          }
        if (!progress) fail("UnsupportedRing", "denominator is not a product of inverted elements");
      }
      if (den.constant_value() == -1) out = -out;
      return out;
    };
    std::vector<ZPoly> g;
    for (auto& x : gens) g.push_back(encode(x));
    return subring_membership(encode(target), g, rel, nv + int(inv.size()));
  }
  if (R->kind() == RingKind::Quadratic) {
    auto* Q = as<QuadraticRing>(R);
    // Z[theta, s]/(minpoly, s d - 1) with d the lcm of all denominators involved
    Integer den = 1;
    auto parts = [&](const Elem& e) { return std::get<payload::Quad>(e.payload()); };
    for (auto& x : gens) den = lcm(den, parts(x).d);
    den = lcm(den, parts(target).d);
    ZPoly th = ZPoly::var(0), s = ZPoly::var(1);
    std::vector<ZPoly> rel{th * th - ZPoly(Q->trace_coeff()) * th + ZPoly(Q->norm_coeff()), s * ZPoly(den) - ZPoly(1)};
    auto encode = [&](const Elem& e) {
      auto p = parts(e);
      return (ZPoly(p.a) + ZPoly(p.b) * th) * ZPoly(den / p.d) * s;
    };
    std::vector<ZPoly> g;
    for (auto& x : gens) g.push_back(encode(x));
    // the subring must also see 1/den only through the generators; s is a ring variable to eliminate
    return subring_membership(encode(target), g, rel, 2);
  }
  fail("UnsupportedRing", "subring membership is not available for " + R->id());
}

}  // namespace detail

struct IsoReport {
  bool ok = false;
  std::string reason;
};

/// Checks a claimed isomorphism P_M -> target given by symbol images: the
/// assignment kills the bracket relations and inverts the basis determinants,
/// the images of crat(M) generate the target generators, and the map is
/// injective on a probe set.
inline IsoReport verify_universal_iso(const UniversalPF& U, const PF& target, const std::map<std::string, std::string>& assignment) {
  IsoReport r;
  const Presentation& P = U.presentation;
  const RingPtr& T = target->ring;
  std::vector<Elem> img;
  for (auto& v : P.variables) {
    auto it = assignment.find(v);
    if (it == assignment.end()) {
      r.reason = "no image for symbol " + v;
      return r;
    }
    img.push_back(parse_element(it->second, T));
  }
  for (auto& [k, v] : assignment)
    if (P.var_index(k) < 0) {
      r.reason = "unknown symbol " + k;
      return r;
    }
  for (auto& g : P.relations)
    if (!detail::eval_zpoly(g, img, T).is_zero()) {
      r.reason = "relation " + g.to_string(P.variables) + " does not vanish";
      return r;
    }
  for (auto& d : P.basis_dets) {
    Elem x = detail::eval_zpoly(d, img, T);
    if (x.is_zero() || !in_group(*target, x)) {
      r.reason = "basis determinant " + d.to_string(P.variables) + " maps to " + x.str() + ", outside the target group";
      return r;
    }
  }
  Elem D = detail::eval_zpoly(U.inverted, img, T);
  img.push_back(D.inv());
  for (auto& g : U.ring->ideal().basis)
    if (!detail::eval_zpoly(g, img, T).is_zero()) {
      r.reason = "ideal generator " + g.to_string(U.ring->vars()) + " does not vanish";
      return r;
    }
  auto apply_u = [&](const Elem& e) { return detail::eval_zpoly(U.ring->nf(e), img, T); };
  std::vector<Elem> cimg;
  for (auto& c : U.cross_ratios) cimg.push_back(apply_u(c));
  for (auto& g : target->generators)
    if (!detail::target_subring_membership(target, g, cimg)) {
      r.reason = "target generator " + g.str() + " is not generated by the images of the cross ratios";
      return r;
    }
  std::vector<Elem> probes = U.cross_ratios;
  for (std::size_t i = 0; i < U.cross_ratios.size(); ++i)
    for (std::size_t j = i; j < U.cross_ratios.size(); ++j) {
      probes.push_back(U.cross_ratios[i] * U.cross_ratios[j]);
      probes.push_back(U.cross_ratios[i] - U.cross_ratios[j]);
    }
  std::unordered_map<Elem, Elem, ElemHash> seen;
  for (auto& p : probes) {
    Elem q = apply_u(p);
    auto it = seen.find(q);
    if (it != seen.end() && !(it->second == p)) {
      r.reason = "not injective: " + it->second.str() + " and " + p.str() + " both map to " + q.str();
      return r;
    }
    seen.emplace(q, p);
  }
  r.ok = true;
  return r;
}

/// N settles M when R_N -> R_M is onto: every cross ratio of M lies in the
/// subring generated by the cross ratios of the N-minor of the distinguished matrix.
inline bool settles_check(const Matroid& N, const Matroid& M, const MinorSpec& spec) {
  Matroid m = minor(M, spec);
  if (!isomorphic(m, N)) fail("NotAMinor", "M / U \\ V is not isomorphic to N");
  Mask U = M.mask_of(spec.contract), V = M.mask_of(spec.remove);
  // a basis B with U in B and B disjoint from V
  Mask B = U;
  for (std::size_t i = 0; i < M.size(); ++i) {
    Mask bit = Mask(1) << i;
    if (!(B & bit) && !(V & bit) && M.independent(B | bit)) B |= bit;
  }
  if (!M.is_basis(B)) fail("NotCoindependent", "no basis contains U and avoids V");
  UniversalPF UM = universal_pf(M, M.labels_of(B));
  std::set<std::string> rm;
  for (auto& l : M.labels_of(U | V)) rm.insert(l);
  PFMatrix sub = delete_labels(UM.matrix, rm);
  auto cn = cross_ratios(sub);
  auto* Q = UM.ring.get();
  std::vector<ZPoly> gens;
  for (auto& c : cn)
    if (!c.is_zero() && !c.is_one()) gens.push_back(Q->nf(c));
  int nv = int(Q->vars().size());
  for (auto& c : UM.cross_ratios) {
    const ZPoly& f = Q->nf(c);
    if (f.is_constant() || std::find(gens.begin(), gens.end(), f) != gens.end()) continue;
    if (!subring_membership(f, gens, Q->ideal().basis, nv)) return false;
  }
  return true;
}

}  // namespace pfkit

#endif
