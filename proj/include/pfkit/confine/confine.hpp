#ifndef PFKIT_CONFINE_CONFINE_HPP
#define PFKIT_CONFINE_CONFINE_HPP

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfkit/pfield/catalog.hpp"
#include "pfkit/pfield/fun.hpp"
#include "pfkit/universal/universal.hpp"

namespace pfkit {

// ---------------------------------------------------------------------------
// confinement

struct CounterexampleMinor {
  Matroid minor;       // M'
  MinorSpec spec;      // M' = M / contract \ remove
  std::string form;    // "M" for a direct check, else how N sits in M': "M'/x", "M'\y" or "M'/x\y"
  PFMatrix A;          // representation of M' containing B, not a scaled sub-matrix
  PFMatrix B;
  std::vector<Elem> outside;  // cross ratios of A outside the sub-partial field
};

struct ConfinementVerdict {
  bool confined = true;
  std::optional<PFMatrix> scaled_witness;
  std::optional<CounterexampleMinor> counterexample;
  std::size_t representations = 0;  // representations of M (or of all M') examined
  std::size_t unscaled = 0;         // of which are not scaled over the sub-partial field
  std::size_t minors = 0;           // minors M' examined by the theorem check
};

/// Diagonal {(p,p)} inside P (x) P.
inline PF diagonal_sub(const PF& P0) {
  auto* R = as<ProductRing>(P0->ring);
  if (!R || !P0->left || !P0->right || P0->left->ring->id() != P0->right->ring->id())
    fail("InvalidPartialField", "the diagonal needs a product of a partial field with itself");
  std::vector<Elem> gens;
  for (auto& g : P0->left->generators) gens.push_back(R->pair(g, parse_element(g.str(), P0->right->ring)));
  PF D = generated_subfield(P0, gens);
  auto Q = std::make_shared<PartialField>(*D);
  Q->name = "diag(" + P0->label() + ")";
  return Q;
}

namespace detail {

inline void require_induced(const PF& pf, const PF& sub) {
  if (!pf->ring->is_finite()) fail("UnsupportedRing", "confinement checks need a finite partial field");
  if (induced_check(pf, sub) != Tri::True) fail("NotInduced", sub->label() + " is not an induced sub-partial field of " + pf->label());
}

inline PFMatrix over(const PFMatrix& A, const PF& pf) {
  PFMatrix B = A;
  B.pf = pf;
  return B;
}

/// Every representation in `reps` containing one of `Bs` must be scaled over
/// sub. Scaled representations pass whatever they contain, so only the others
/// are searched for a minor.
inline ConfinementVerdict confines_reps(const std::vector<PFMatrix>& Bs, const std::vector<PFMatrix>& reps, const PF& sub) {
  ConfinementVerdict v;
  v.representations = reps.size();
  for (auto& A : reps) {
    auto r = scaled_over_check(A, sub);
    if (r.ok) {
      if (!v.scaled_witness) v.scaled_witness = r.witness;
      continue;
    }
    ++v.unscaled;
    auto pivots = basis_representatives(A);
    for (auto& B : Bs)
      if (minor_contains_in(pivots, B)) {
        v.confined = false;
        v.scaled_witness.reset();
        v.counterexample = CounterexampleMinor{from_matrix(A), {}, "M", A, B, r.outside};
        return v;
      }
  }
  return v;
}

inline std::vector<PFMatrix> over_all(const std::vector<PFMatrix>& Bs, const PF& pf) {
  std::vector<PFMatrix> out;
  for (auto& B : Bs) out.push_back(over(B, pf));
  return out;
}

}  // namespace detail

/// B confines M: every pf-representation of M with B as a minor is a scaled sub-matrix.
inline ConfinementVerdict confines_direct(const PFMatrix& B, const Matroid& M, const PF& pf, const PF& sub) {
  detail::require_induced(pf, sub);
  for (auto& row : B.a)
    for (auto& e : row)
      if (!contains(*sub, e)) fail("EntryNotInPartialField", e.str() + " is not in " + sub->label());
  auto reps = representations(M, pf);
  return detail::confines_reps({detail::over(B, pf)}, reps, sub);
}

/// The 3-connected minors M' of M from which N arises by one contraction, one
/// deletion, or both (then with M'/x or M'\y 3-connected).
inline std::vector<std::tuple<MinorSpec, Matroid, std::string>> confinement_minors(const Matroid& N, const Matroid& M) {
  std::vector<std::tuple<MinorSpec, Matroid, std::string>> out;
  for (std::size_t extra = 1; extra <= 2; ++extra)
    for (int dr = 0; dr <= 1; ++dr) {
      int r = N.rank + dr;
      if (extra == 2 && dr == 0) continue;  // one contraction and one deletion raise the rank by one
      for (auto& [spec, Mp] : minors_of_size(M, N.size() + extra, r)) {
        if (!is_3connected(Mp)) continue;
        std::string form;
        for (std::size_t x = 0; x < Mp.size() && form.empty(); ++x) {
          Mask xb = Mask(1) << x;
          if (extra == 1) {
            if (dr == 1 && Mp.independent(xb) && isomorphic(contract_set(Mp, xb), N)) form = "M'/" + Mp.ground[x];
            if (dr == 0 && Mp.coindependent(xb) && isomorphic(delete_set(Mp, xb), N)) form = "M'\\" + Mp.ground[x];
          } else {
            for (std::size_t y = 0; y < Mp.size() && form.empty(); ++y) {
              if (y == x) continue;
              Mask yb = Mask(1) << y;
              if (!Mp.independent(xb)) continue;
              Matroid C = contract_set(Mp, xb);
              Mask y2 = C.mask_of({Mp.ground[y]});
              if (!C.coindependent(y2)) continue;
              if (!isomorphic(delete_set(C, y2), N)) continue;
              bool side = is_3connected(C) || (Mp.coindependent(yb) && is_3connected(delete_set(Mp, yb)));
              if (side) form = "M'/" + Mp.ground[x] + "\\" + Mp.ground[y];
            }
          }
        }
        if (!form.empty()) out.push_back({spec, Mp, form});
      }
    }
  return out;
}

/// The finite check: N confines M iff N confines each minor M' above. Runs over
/// every normalized sub-representation of N.
inline ConfinementVerdict confinement_finite_check(const Matroid& N, const Matroid& M, const PF& pf, const PF& sub) {
  detail::require_induced(pf, sub);
  if (!is_3connected(N) || !is_3connected(M)) fail("NotThreeConnected", "N and M must be 3-connected");
  if (!has_minor(M, N)) fail("NotAMinor", "N is not a minor of M");
  auto Bs = detail::over_all(representations(N, sub), pf);
  ConfinementVerdict v;
  auto cands = confinement_minors(N, M);
  v.minors = cands.size();
  for (auto& [spec, Mp, form] : cands) {
    auto r = detail::confines_reps(Bs, representations(Mp, pf), sub);
    v.representations += r.representations;
    v.unscaled += r.unscaled;
    if (!r.confined) {
      v.confined = false;
      v.counterexample = r.counterexample;
      v.counterexample->minor = Mp;
      v.counterexample->spec = spec;
      v.counterexample->form = form;
      return v;
    }
  }
  return v;
}

/// N confines M by definition: all sub-representations B of N confine M.
inline ConfinementVerdict confines_matroid_direct(const Matroid& N, const Matroid& M, const PF& pf, const PF& sub) {
  detail::require_induced(pf, sub);
  auto r = detail::confines_reps(detail::over_all(representations(N, sub), pf), representations(M, pf), sub);
  if (r.counterexample) r.counterexample->minor = M;
  return r;
}

// ---------------------------------------------------------------------------
// stabilizers

struct StabilizerReport {
  bool direct = true;   // pair enumeration
  bool product = true;  // confinement to the diagonal of pf (x) pf
  std::optional<std::pair<PFMatrix, PFMatrix>> witness;  // inequivalent representations agreeing on N
};

inline bool stabilizer_direct(const Matroid& N, const Matroid& M, const PF& pf,
                              std::optional<std::pair<PFMatrix, PFMatrix>>* witness = nullptr) {
  for (auto& spec : minor_positions(M, N)) {
    Mask U = M.mask_of(spec.contract), V = M.mask_of(spec.remove);
    Mask B = U;
    for (std::size_t i = 0; i < M.size(); ++i) {
      Mask bit = Mask(1) << i;
      if (!(B & bit) && !(V & bit) && M.independent(B | bit)) B |= bit;
    }
    std::set<std::string> rm;
    for (auto& l : M.labels_of(U | V)) rm.insert(l);
    std::map<std::string, PFMatrix> seen;
    for (auto& A : representations(M, pf, M.labels_of(B))) {
      std::string key = normalize(delete_labels(A, rm)).str();
      auto [it, fresh] = seen.emplace(key, A);
      if (!fresh && !(it->second == A)) {
        if (witness) *witness = std::make_pair(it->second, A);
        return false;
      }
    }
  }
  return true;
}

inline bool stabilizer_product(const Matroid& N, const Matroid& M, const PF& pf) {
  PF P0 = product_pf(pf, pf);
  PF diag = diagonal_sub(P0);
  return detail::confines_reps(detail::over_all(representations(N, diag), P0), representations(M, P0), diag).confined;
}

inline StabilizerReport stabilizer_check(const Matroid& N, const Matroid& M, const PF& pf) {
  if (!pf->ring->is_finite()) fail("UnsupportedRing", "stabilizer checks need a finite partial field");
  if (!has_minor(M, N)) fail("NotAMinor", "N is not a minor of M");
  StabilizerReport r;
  r.direct = stabilizer_direct(N, M, pf, &r.witness);
  r.product = stabilizer_product(N, M, pf);
  return r;
}

// ---------------------------------------------------------------------------
// lifts

struct LiftRelation {
  ZPoly poly;
  std::string kind;                  // "one", "minus-one", "sum", "product", "triple"
  std::optional<PFMatrix> witness;   // the 2x3 minor behind a triple relation
};

struct LiftPresentation {
  PF base;
  std::vector<Elem> cross_ratios;  // crat of the family, canonically sorted; symbol i is p_i
  std::vector<std::string> symbols;
  std::vector<LiftRelation> relations;
  std::shared_ptr<const QuotientRing> ring;
  PF pf;

  Elem symbol_of(const Elem& p) const {
    for (std::size_t i = 0; i < cross_ratios.size(); ++i)
      if (cross_ratios[i] == p) return ring->residue(ZPoly::var(int(i)));
    fail("UnknownSymbol", p.str() + " is not a cross ratio of the family");
  }
  /// The canonical projection back to the base: p~ -> p.
  PFHom projection() const { return PFHom{pf, base, PFHom::Mode::Variables, cross_ratios}; }
  /// A with every entry replaced by the symbol of its cross ratio; A must be normalized.
  PFMatrix lift(const PFMatrix& A) const {
    PFMatrix L;
    L.pf = pf;
    L.rows = A.rows;
    L.cols = A.cols;
    for (auto& row : A.a) {
      L.a.emplace_back();
      for (auto& e : row) L.a.back().push_back(e.is_zero() ? ring->zero() : e.is_one() ? ring->one() : symbol_of(e));
    }
    return L;
  }
};

inline LiftPresentation lift_presentation(const std::vector<PFMatrix>& family) {
  if (family.empty()) fail("InvalidInput", "the lift needs at least one matrix");
  LiftPresentation L;
  L.base = family[0].pf;
  if (!L.base->ring->is_finite()) fail("UnsupportedRing", "lifts are built over finite partial fields");
  std::vector<Elem> cr;
  for (auto& A : family) {
    auto rep = det_and_validate(A, DetMode::FullPMatrixCheck);
    if (rep.is_pmatrix && !*rep.is_pmatrix) fail("NotAPMatrix", "family member is not a " + L.base->label() + "-matrix: " + rep.witness);
    for (auto& p : cross_ratios(A))
      if (std::find(cr.begin(), cr.end(), p) == cr.end()) cr.push_back(p);
  }
  canonical_sort(cr);
  L.cross_ratios = cr;
  std::size_t n = cr.size();
  if (n > std::size_t(kMaxVars)) throw ResourceLimit("too many cross ratios for a lift presentation");
  for (std::size_t i = 0; i < n; ++i) L.symbols.push_back("p" + std::to_string(i));
  auto var = [](std::size_t i) { return ZPoly::var(int(i)); };
  const Elem one = L.base->one();
  for (std::size_t i = 0; i < n; ++i) {
    if (cr[i].is_zero()) L.relations.push_back({var(i), "one", {}});
    if (cr[i].is_one()) L.relations.push_back({var(i) - ZPoly(1), "one", {}});
    if (cr[i] == -one) L.relations.push_back({var(i) + ZPoly(1), "minus-one", {}});
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      if (cr[i] + cr[j] == one) L.relations.push_back({var(i) + var(j) - ZPoly(1), "sum", {}});
      if (cr[i] * cr[j] == one) L.relations.push_back({var(i) * var(j) - ZPoly(1), "product", {}});
    }
  // triple products certified by a [[1,1,1],[1,p,1/q]] minor
  std::set<std::array<std::size_t, 3>> done;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (cr[i].is_zero() || cr[j].is_zero()) continue;
      Elem r = (cr[i] * cr[j]).inv();
      auto kt = std::find(cr.begin(), cr.end(), r);
      if (kt == cr.end()) continue;
      std::size_t k = std::size_t(kt - cr.begin());
      std::array<std::size_t, 3> key{i, j, k};
      std::sort(key.begin(), key.end());
      if (done.count(key)) continue;
      PFMatrix W;
      W.pf = L.base;
      W.rows = {"r1", "r2"};
      W.cols = {"c1", "c2", "c3"};
      W.a = {{one, one, one}, {one, cr[i], cr[j].inv()}};
      if (det_and_validate(W, DetMode::FullPMatrixCheck).is_pmatrix != std::optional<bool>(true)) continue;
      for (auto& A : family)
        if (minor_contains(A, W)) {
          done.insert(key);
          L.relations.push_back({var(i) * var(j) * var(k) - ZPoly(1), "triple", W});
          break;
        }
    }
  std::vector<ZPoly> gens;
  for (auto& r : L.relations) gens.push_back(r.poly);
  L.ring = make_quotient(L.symbols, gens);
  std::vector<Elem> g;
  for (std::size_t i = 0; i < n; ++i)
    if (!cr[i].is_zero()) g.push_back(L.ring->residue(var(i)));
  auto P = std::make_shared<PartialField>();
  P->name = "L(" + L.base->label() + ")";
  P->ring = L.ring;
  P->generators = g;
  for (auto& x : g) P->documented.push_back(x.str());
  P->strategy = Strategy::UnitGroupRule;
  P->rule = kAllUnits;
  L.pf = P;
  return L;
}

// ---------------------------------------------------------------------------
// associate quotients

struct AssociateCase {
  std::vector<std::pair<int, int>> D;  // identified pairs (1-based)
  std::string verdict;                 // "U0", "U1", "D", "S", "char3" or "unclassified"
  std::vector<std::string> matches;    // every target certified
  std::string ideal;
  std::string assignment;              // image of p1 in the certified target
};

struct Classification {
  std::vector<AssociateCase> cases;
  std::size_t subsets = 0;  // subsets covered, orbits included
  std::map<std::string, std::size_t> tally;
  bool complete() const { return tally.count("unclassified") == 0 && ambiguous == 0; }
  std::size_t ambiguous = 0;
};

namespace detail {

inline std::vector<std::pair<int, int>> all_pairs6() {
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i <= 6; ++i)
    for (int j = i + 1; j <= 6; ++j) p.push_back({i, j});
  return p;
}

/// Relabellings of p1..p6 that preserve the two relation types.
inline std::vector<std::array<int, 7>> hexagon_symmetries() {
  std::vector<std::array<int, 7>> out;
  auto sum_edges = std::set<std::pair<int, int>>{{1, 2}, {3, 4}, {5, 6}};
  auto prod_edges = std::set<std::pair<int, int>>{{2, 3}, {4, 5}, {1, 6}};
  std::array<int, 6> perm{1, 2, 3, 4, 5, 6};
  auto norm = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  do {
    std::array<int, 7> s{};
    for (int i = 0; i < 6; ++i) s[std::size_t(i + 1)] = perm[std::size_t(i)];
    bool ok = true;
    for (auto [a, b] : sum_edges) ok = ok && sum_edges.count(norm(s[std::size_t(a)], s[std::size_t(b)]));
    for (auto [a, b] : prod_edges) ok = ok && prod_edges.count(norm(s[std::size_t(a)], s[std::size_t(b)]));
    if (ok) out.push_back(s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

inline std::vector<ZPoly> associate_relations() {
  auto p = [](int i) { return ZPoly::var(i - 1); };
  return {p(1) + p(2) - ZPoly(1), p(3) + p(4) - ZPoly(1), p(5) + p(6) - ZPoly(1),
          p(2) * p(3) - ZPoly(1), p(4) * p(5) - ZPoly(1), p(6) * p(1) - ZPoly(1)};
}

/// Evaluates an element of a target ring at ring symbols mapped into a quotient ring.
inline std::optional<Elem> pull_back(const Elem& t, const std::vector<Elem>& sym_images, const std::shared_ptr<const QuotientRing>& Q) {
  const RingPtr& R = t.ring();
  if (R->kind() == RingKind::Localized) {
    auto& f = std::get<payload::Frac>(t.payload());
    Elem num = eval_zpoly(f.num, sym_images, Q), den = eval_zpoly(f.den, sym_images, Q);
    if (!den.is_unit()) return std::nullopt;
    return num * den.inv();
  }
  if (R->kind() == RingKind::Quadratic) {
    auto& q = std::get<payload::Quad>(t.payload());
    Elem d = Q->make(Q->from_integer(q.d));
    if (!d.is_unit()) return std::nullopt;
    return (Q->make(Q->from_integer(q.a)) + Q->make(Q->from_integer(q.b)) * sym_images.at(0)) * d.inv();
  }
  return std::nullopt;
}

/// Certifies Z[p1..p6]/I = R(T) by mutually inverse homomorphisms, trying each
/// fundamental element of T as the image of p1.
inline std::optional<std::string> certify_target(const std::shared_ptr<const QuotientRing>& Q, const PF& T) {
  auto fs = fun_enumerate(T);
  auto rels = associate_relations();
  auto syms = T->ring->symbol_names();
  std::vector<Elem> p;
  for (int i = 0; i < 6; ++i) p.push_back(Q->residue(ZPoly::var(i)));
  for (auto& x : fs.elements) {
    if (x.is_zero() || x.is_one()) continue;
    // images t_1..t_6 along the hexagon
    std::vector<Elem> t{x};
    const Elem one = T->one();
    t.push_back(one - t[0]);
    if (!t[1].is_unit()) continue;
    t.push_back(t[1].inv());
    t.push_back(one - t[2]);
    if (!t[3].is_unit()) continue;
    t.push_back(t[3].inv());
    t.push_back(one - t[4]);
    bool ok = true;
    for (auto& g : Q->ideal().basis) ok = ok && eval_zpoly(g, t, T->ring).is_zero();
    for (auto& g : rels) ok = ok && eval_zpoly(g, t, T->ring).is_zero();
    if (!ok) continue;
    // every generator of T is +-t_i
    for (auto& g : T->generators) {
      bool hit = false;
      for (auto& ti : t) hit = hit || ti == g || ti == -g;
      ok = ok && hit;
    }
    if (!ok) continue;
    // inverse map on the ring symbols of T: try each +-p_i or its inverse
    std::vector<Elem> back;
    bool found_all = true;
    for (std::size_t s = 0; s < syms.size(); ++s) {
      Elem target = *T->ring->symbol(syms[s]);
      std::optional<Elem> pre;
      for (std::size_t i = 0; i < 6 && !pre; ++i)
        for (int sign : {1, -1}) {
          Elem c = sign > 0 ? p[i] : -p[i];
          Elem ti = sign > 0 ? t[i] : -t[i];
          if (ti == target) {
            pre = c;
            break;
          }
        }
      if (!pre) {
        found_all = false;
        break;
      }
      back.push_back(*pre);
    }
    if (!found_all) continue;
    // psi(t_i) = p_i and psi respects the defining relations of T
    for (std::size_t i = 0; i < 6 && ok; ++i) {
      auto pb = pull_back(t[i], back, Q);
      ok = pb && *pb == p[i];
    }
    if (!ok) continue;
    if (T->ring->kind() == RingKind::Quadratic) {
      auto* QR = as<QuadraticRing>(T->ring);
      const Elem& th = back.at(0);
      Elem rel = th * th - Q->make(Q->from_integer(QR->trace_coeff())) * th + Q->make(Q->from_integer(QR->norm_coeff()));
      if (!rel.is_zero()) continue;
    }
    if (T->ring->kind() == RingKind::Localized)
      for (auto& g : as<LocalizedRing>(T->ring)->inverted())
        if (!eval_zpoly(g, back, Q).is_unit()) ok = false;
    if (ok) return "p1 -> " + x.str();
  }
  return std::nullopt;
}

}  // namespace detail

/// Z[p1..p6]/I_D for every identification set D, up to relabelling symmetry
/// unless `full`: either characteristic 3 or certified isomorphic to exactly one
/// of U0, U1, D, S.
inline Classification classify_associate_quotients(bool full = false) {
  auto pairs = detail::all_pairs6();
  auto syms = detail::hexagon_symmetries();
  std::vector<PF> targets{catalog("U0"), catalog("U1"), catalog("D"), catalog("S")};
  std::vector<std::string> names{"U0", "U1", "D", "S"};
  Classification C;
  std::map<std::string, AssociateCase> by_ideal;
  std::vector<std::string> pnames{"p1", "p2", "p3", "p4", "p5", "p6"};
  std::size_t np = pairs.size();
  std::map<std::pair<int, int>, std::size_t> pos;
  for (std::size_t k = 0; k < np; ++k) pos[pairs[k]] = k;
  for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
    std::size_t orbit = 1;
    if (!full) {
      // keep the smallest mask in the orbit
      bool minimal = true;
      std::set<std::uint32_t> images;
      for (auto& s : syms) {
        std::uint32_t m2 = 0;
        for (std::size_t k = 0; k < np; ++k)
          if (mask >> k & 1) {
            int a = s[std::size_t(pairs[k].first)], b = s[std::size_t(pairs[k].second)];
            m2 |= 1u << pos[{std::min(a, b), std::max(a, b)}];
          }
        images.insert(m2);
        if (m2 < mask) minimal = false;
      }
      if (!minimal) continue;
      orbit = images.size();
    }
    C.subsets += orbit;
    std::vector<ZPoly> gens = detail::associate_relations();
    AssociateCase ac;
    for (std::size_t k = 0; k < np; ++k)
      if (mask >> k & 1) {
        ac.D.push_back(pairs[k]);
        gens.push_back(ZPoly::var(pairs[k].first - 1) - ZPoly::var(pairs[k].second - 1));
      }
    auto Q = make_quotient(pnames, gens);
    std::string key = Q->id();
    auto it = by_ideal.find(key);
    if (it == by_ideal.end()) {
      AssociateCase base;
      base.ideal = key;
      Integer ch = Q->characteristic();
      if (ch != 0 && ch % 3 == 0) {
        base.verdict = "char3";
      } else if (ch == 1) {
        base.verdict = "char3";  // the zero ring: 3 lies in the ideal as well
      } else {
        for (std::size_t t = 0; t < targets.size(); ++t)
          if (auto a = detail::certify_target(Q, targets[t])) {
            base.matches.push_back(names[t]);
            if (base.assignment.empty()) base.assignment = *a;
          }
        base.verdict = base.matches.size() == 1 ? base.matches[0] : "unclassified";
        if (base.matches.size() > 1) ++C.ambiguous;
      }
      it = by_ideal.emplace(key, base).first;
    }
    ac.verdict = it->second.verdict;
    ac.matches = it->second.matches;
    ac.ideal = it->second.ideal;
    ac.assignment = it->second.assignment;
    C.tally[ac.verdict] += orbit;
    C.cases.push_back(std::move(ac));
  }
  return C;
}

// ---------------------------------------------------------------------------
// Hydra partial fields

struct HydraReport {
  int k = 0;
  bool ok = false;
  bool conditional = false;  // the fun-set is not proven complete
  std::size_t matrices = 0;  // normalized representations of U(2,5) examined
  std::size_t required = 0;
  std::vector<std::string> homs;
  std::string failure;
};

namespace detail {

struct HydraData {
  std::string pf;
  std::vector<std::vector<std::string>> coords;  // per projection, the images of the ring symbols
};

inline HydraData hydra_data(int k, bool six) {
  switch (k) {
    case 2: return {"H2", {{"2"}, {"3"}}};
    case 3: return {"H3", {{"2"}, {"3"}, {"4"}}};
    case 4: return {"H4", {{"2", "2"}, {"3", "3"}, {"3", "4"}, {"4", "3"}}};
    case 5:
    case 6:
      if (six || k == 6) return {"H5", {{"2", "3", "3"}, {"3", "2", "2"}, {"4", "3", "3"}, {"2", "4", "4"}, {"3", "2", "4"}, {"4", "4", "2"}}};
      return {"H5", {{"2", "3", "3"}, {"3", "2", "2"}, {"4", "3", "3"}, {"2", "4", "4"}, {"3", "2", "4"}}};
    default: fail("InvalidInput", "Hydra check needs 2 <= k <= 6");
  }
}

inline HydraReport hydra_run(int k, bool six) {
  auto data = hydra_data(k, six);
  PF H = catalog(data.pf);
  PF F = gf_pf(5);
  HydraReport r;
  r.k = k;
  r.required = data.coords.size();
  auto fs = fun_enumerate(H);
  r.conditional = !fs.proven;
  std::vector<PFHom> homs;
  for (auto& c : data.coords) {
    PFHom h = hom_by_variables(H, F, c);
    auto chk = hom_check(h, fs.elements, fs.proven);
    if (!chk.ok) {
      r.failure = "projection " + h.str() + " is not a homomorphism: " + chk.reason;
      return r;
    }
    r.homs.push_back(h.str());
    homs.push_back(h);
  }
  std::vector<Elem> f;
  for (auto& x : fs.elements)
    if (!x.is_zero() && !x.is_one()) f.push_back(x);
  for (auto& p : f)
    for (auto& q : f) {
      if (p == q || !in_group(*H, q - p)) continue;
      ++r.matrices;
      std::set<std::pair<std::string, std::string>> images;
      for (auto& h : homs) images.insert({apply(h, p).str(), apply(h, q).str()});
      if (images.size() < r.required) {
        r.failure = "[[1,1,1],[1," + p.str() + "," + q.str() + "]] has only " + std::to_string(images.size()) + " inequivalent projections";
        return r;
      }
    }
  r.ok = true;
  return r;
}

}  // namespace detail

/// Every normalized H_k-representation [[1,1,1],[1,p,q]] of U(2,5) projects to
/// the required number of inequivalent GF(5)-representations. For k = 5 the
/// five-coordinate map is checked first; the report lists the six projections.
inline HydraReport hydra_degeneracy_check(int k) {
  if (k < 2 || k > 6) fail("InvalidInput", "Hydra check needs 2 <= k <= 6");
  HydraReport r = detail::hydra_run(k, k == 6);
  if (k == 5 && r.ok) {
    HydraReport six = detail::hydra_run(5, true);
    six.matrices += r.matrices;
    return six;
  }
  return r;
}

}  // namespace pfkit

#endif
