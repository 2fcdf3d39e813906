#ifndef PFKIT_PFIELD_FUN_HPP
#define PFKIT_PFIELD_FUN_HPP

#include <climits>
#include <optional>
#include <string>
#include <vector>

#include "pfkit/pfield/catalog.hpp"

namespace pfkit {

struct FunSet {
  PF pf;
  std::vector<Elem> elements;  // canonically sorted
  bool proven = false;
  std::string certificate;

  bool has(const Elem& e) const {
    for (auto& x : elements)
      if (x == e) return true;
    return false;
  }
};

using Box = std::vector<std::pair<long long, long long>>;

namespace detail {

inline std::vector<Elem> box_search(const PartialField& P, const Box& box) {
  const auto& g = P.generators;
  if (box.size() != g.size()) fail("InvalidBounds", "expected one exponent range per generator");
  std::vector<std::vector<Elem>> pw(g.size());
  for (std::size_t i = 0; i < g.size(); ++i)
    for (long long e = box[i].first; e <= box[i].second; ++e) pw[i].push_back(g[i].pow(e));
  std::vector<Elem> out{P.zero(), P.one()};
  std::vector<std::size_t> idx(g.size(), 0);
  std::vector<Elem> partial(g.size() + 1, P.one());
  // odometer over the box; partial[i] = product of the first i chosen powers
  std::size_t depth = 0;
  while (true) {
    for (; depth < g.size(); ++depth) partial[depth + 1] = partial[depth] * pw[depth][idx[depth]];
    for (int s : {1, -1}) {
      Elem p = s == 1 ? partial[g.size()] : -partial[g.size()];
      if (contains(P, P.one() - p)) out.push_back(p);
    }
    std::size_t i = g.size();
    while (i > 0) {
      --i;
      if (++idx[i] < pw[i].size()) break;
      idx[i] = 0;
      if (i == 0) {
        canonical_sort(out);
        return out;
      }
    }
    if (g.empty()) {
      canonical_sort(out);
      return out;
    }
    depth = i;
  }
}

inline bool finite_order(const Elem& g) {
  Elem p = g;
  for (int k = 1; k <= 12; ++k) {
    if (p.is_one()) return true;
    p = p * g;
  }
  return false;
}

}  // namespace detail

inline FunSet fun_enumerate(const PF& P, const std::optional<Box>& bounds = std::nullopt);

/// Exponent bounds for fun(P) derived from verified homomorphisms to partial
/// fields whose fun-sets are proven: every fundamental element maps to a
/// fundamental element, which bounds linear forms in the exponents.
struct DerivedBounds {
  Box box;
  bool complete = false;
  std::string certificate;
};

inline DerivedBounds derive_bounds(const PF& P, const std::vector<HomCertificate>& certs) {
  std::size_t n = P->generators.size();
  struct Constraint {
    std::vector<long long> c;
    long long lo, hi;
  };
  std::vector<Constraint> cons;
  DerivedBounds out;
  for (auto& cert : certs) {
    PF T = catalog(cert.target);
    PFHom h = hom_by_variables(P, T, cert.images);
    auto chk = hom_check(h, {}, false);
    if (!chk.ok) fail("InvalidCertificate", "certificate hom to " + cert.target + " fails: " + chk.reason);
    FunSet ft = fun_enumerate(T);
    if (!ft.proven) fail("InvalidCertificate", "fun(" + cert.target + ") is not proven");
    std::vector<std::vector<long long>> img;
    for (auto& g : P->generators) img.push_back(factor(*T, apply(h, g))->exps);
    for (std::size_t t = 0; t < T->generators.size(); ++t) {
      if (detail::finite_order(T->generators[t])) continue;
      long long lo = LLONG_MAX, hi = LLONG_MIN;
      for (auto& p : ft.elements) {
        if (p.is_zero()) continue;
        long long v = factor(*T, p)->exps[t];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      Constraint k{std::vector<long long>(n), lo, hi};
      bool any = false;
      for (std::size_t j = 0; j < n; ++j) {
        k.c[j] = img[j][t];
        any = any || k.c[j] != 0;
      }
      if (any) cons.push_back(k);
      out.certificate += (out.certificate.empty() ? "" : "; ") + h.str() + " into " + T->label();
    }
  }
  // interval propagation
  std::vector<std::optional<std::pair<long long, long long>>> iv(n);
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& k : cons)
      for (std::size_t j = 0; j < n; ++j) {
        if (k.c[j] == 0) continue;
        long long rlo = 0, rhi = 0;
        bool ok = true;
        for (std::size_t m = 0; m < n && ok; ++m) {
          if (m == j || k.c[m] == 0) continue;
          if (!iv[m]) {
            ok = false;
            break;
          }
          long long a = k.c[m] * iv[m]->first, b = k.c[m] * iv[m]->second;
          rlo += std::min(a, b);
          rhi += std::max(a, b);
        }
        if (!ok) continue;
        // lo - rhi <= c x <= hi - rlo
        long long A = k.lo - rhi, B = k.hi - rlo, c = k.c[j];
        auto fdiv = [](long long x, long long y) { long long q = x / y; if ((x % y != 0) && ((x < 0) != (y < 0))) --q; return q; };
        auto cdiv = [&](long long x, long long y) { return -fdiv(-x, y); };
        long long xlo, xhi;
        if (c > 0) {
          xlo = cdiv(A, c);
          xhi = fdiv(B, c);
        } else {
          xlo = cdiv(B, c);
          xhi = fdiv(A, c);
        }
        if (!iv[j] || xlo > iv[j]->first || xhi < iv[j]->second) {
          long long nlo = iv[j] ? std::max(iv[j]->first, xlo) : xlo;
          long long nhi = iv[j] ? std::min(iv[j]->second, xhi) : xhi;
          if (!iv[j] || nlo != iv[j]->first || nhi != iv[j]->second) {
            iv[j] = {nlo, nhi};
            changed = true;
          }
        }
      }
  }
  out.complete = true;
  for (std::size_t j = 0; j < n; ++j) {
    if (!iv[j]) {
      out.complete = false;
      out.box.push_back({0, 0});
    } else {
      out.box.push_back(*iv[j]);
    }
  }
  return out;
}

inline FunSet fun_enumerate(const PF& P, const std::optional<Box>& bounds) {
  FunSet out;
  out.pf = P;
  if (P->units && !bounds) {
    for (auto& p : pf_elements(*P))
      if (contains(*P, P->one() - p)) out.elements.push_back(p);
    canonical_sort(out.elements);
    out.proven = true;
    out.certificate = "finite unit group (" + std::to_string(P->units->size()) + " elements)";
    return out;
  }
  if (P->strategy == Strategy::Componentwise && !bounds) {
    FunSet a = fun_enumerate(P->left), b = fun_enumerate(P->right);
    auto* PR = as<ProductRing>(P->ring);
    for (auto& x : a.elements)
      for (auto& y : b.elements)
        if (x.is_zero() == y.is_zero() && x.is_one() == y.is_one()) out.elements.push_back(PR->pair(x, y));
    canonical_sort(out.elements);
    out.proven = a.proven && b.proven;
    out.certificate = "componentwise";
    return out;
  }
  if (bounds) {
    out.elements = detail::box_search(*P, *bounds);
    out.proven = false;
    out.certificate = "user-supplied search box";
    return out;
  }
  const FunRecipe& r = P->fun;
  switch (r.kind) {
    case FunRecipe::Kind::Box: {
      Box box = r.box;
      out.proven = r.proven;
      out.certificate = r.certificate;
      auto it = fun_hom_certificates().find(P->name);
      if (it != fun_hom_certificates().end()) {
        auto d = derive_bounds(P, it->second);
        out.proven = d.complete;
        out.certificate = "exponent bounds from " + d.certificate;
        if (d.complete) box = d.box;
      }
      out.elements = detail::box_search(*P, box);
      return out;
    }
    case FunRecipe::Kind::Listed: {
      for (auto& s : r.listed) {
        Elem p = P->elem(s);
        for (auto& q : associates(p, *P)) out.elements.push_back(q);
      }
      out.elements.push_back(P->zero());
      out.elements.push_back(P->one());
      canonical_sort(out.elements);
      out.proven = false;
      out.certificate = r.certificate;
      return out;
    }
    case FunRecipe::Kind::Frobenius: {
      Elem a = P->ring->symbol_names().empty() ? P->one() : *P->ring->symbol(P->ring->symbol_names()[0]);
      Elem x = a;
      out.elements = {P->zero(), P->one()};
      for (int k = 0; k <= limits().fun_cutoff; ++k) {
        for (auto& q : associates(x, *P)) out.elements.push_back(q);
        x = x * x;
      }
      canonical_sort(out.elements);
      out.proven = false;
      out.certificate = r.certificate + " (cutoff " + std::to_string(limits().fun_cutoff) + ")";
      return out;
    }
    default:
      fail("MissingBounds", "no exponent bounds for " + P->label() + "; pass explicit bounds");
  }
}

// ---------------------------------------------------------------------------
// homomorphism search

inline bool has_evaluation_homs(const PartialField& P) {
  switch (P.ring->kind()) {
    case RingKind::Localized:
    case RingKind::Quadratic:
    case RingKind::Quotient:
    case RingKind::ModPFunctions:
      return true;
    default:
      return false;
  }
}

inline bool hom_less(const PFHom& a, const PFHom& b) {
  for (std::size_t i = 0; i < a.images.size() && i < b.images.size(); ++i) {
    if (canonical_less(a.images[i], b.images[i])) return true;
    if (canonical_less(b.images[i], a.images[i])) return false;
  }
  return a.images.size() < b.images.size();
}

/// All homomorphisms src -> dst for a finite dst, canonically ordered.
/// Sources with ring symbols are searched over symbol images; finite sources
/// over generator images with full multiplicativity and additivity checks.
inline std::vector<PFHom> hom_enumerate(const PF& src, const PF& dst, std::size_t max_count = SIZE_MAX) {
  if (!dst->units) fail("UnsupportedRing", "hom_enumerate needs a finite target");
  std::vector<PFHom> out;
  std::size_t budget = limits().enumeration;
  if (has_evaluation_homs(*src)) {
    auto names = src->ring->symbol_names();
    std::vector<Elem> dom = dst->ring->is_finite() ? dst->ring->elements() : pf_elements(*dst);
    PFHom h{src, dst, PFHom::Mode::Variables, std::vector<Elem>(names.size(), dst->zero())};
    std::vector<std::size_t> idx(names.size(), 0);
    while (true) {
      if (budget-- == 0) throw ResourceLimit("hom_enumerate search budget exhausted");
      for (std::size_t i = 0; i < names.size(); ++i) h.images[i] = dom[idx[i]];
      if (hom_check(h, {}, false).ok) {
        out.push_back(h);
        if (out.size() >= max_count) break;
      }
      std::size_t i = names.size();
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < dom.size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }
  } else {
    FunSet f = fun_enumerate(src);
    const auto& G = group_elements(*dst);
    std::size_t n = src->generators.size();
    PFHom h{src, dst, PFHom::Mode::Generators, std::vector<Elem>(n, dst->one())};
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      if (budget-- == 0) throw ResourceLimit("hom_enumerate search budget exhausted");
      for (std::size_t i = 0; i < n; ++i) h.images[i] = G[idx[i]];
      if (hom_check(h, f.elements, f.proven).ok) {
        out.push_back(h);
        if (out.size() >= max_count) break;
      }
      std::size_t i = n;
      bool done = true;
      while (i > 0) {
        --i;
        if (++idx[i] < G.size()) {
          done = false;
          break;
        }
        idx[i] = 0;
      }
      if (done) break;
    }
  }
  std::sort(out.begin(), out.end(), hom_less);
  return out;
}

/// hom_verify: images in the target group, multiplicativity, and additivity on
/// the probes (fun(src) when none are given and it can be enumerated).
inline HomCheck hom_verify(const PFHom& h, std::optional<std::vector<Elem>> probes = std::nullopt) {
  bool complete = false;
  if (!probes) {
    try {
      FunSet f = fun_enumerate(h.src);
      probes = f.elements;
      complete = f.proven;
    } catch (const Error&) {
      probes = std::vector<Elem>{};
    }
  }
  return hom_check(h, *probes, complete);
}

// ---------------------------------------------------------------------------
// induced sub-partial fields

enum class Tri { False, True, Unknown };

inline const char* tri_name(Tri t) { return t == Tri::True ? "true" : (t == Tri::False ? "false" : "unknown"); }

/// Whether P[S] is induced in P: G' = G n R'' for the subring R'' generated by S.
/// Decided exactly for finite P. For infinite P a refutation is searched for
/// among the fundamental elements: an element of R'' in G but not in G'.
inline Tri induced_check(const PF& P, const PF& sub) {
  if (P->ring->is_finite()) {
    std::unordered_set<Elem, ElemHash> ring_closure;
    std::deque<Elem> queue;
    auto push = [&](const Elem& x) {
      if (ring_closure.insert(x).second) queue.push_back(x);
    };
    push(P->zero());
    push(P->one());
    for (auto& s : sub->generators) push(s);
    std::vector<Elem> seeds(sub->generators.begin(), sub->generators.end());
    seeds.push_back(P->one());
    while (!queue.empty()) {
      Elem x = queue.front();
      queue.pop_front();
      std::vector<Elem> cur(ring_closure.begin(), ring_closure.end());
      for (auto& y : cur) {
        push(x + y);
        push(x * y);
        push(x - y);
      }
    }
    for (auto& x : ring_closure)
      if (in_group(*P, x) != in_group(*sub, x)) return Tri::False;
    return Tri::True;
  }
  // fundamental elements p of sub with 1-p in G but not in G'
  try {
    FunSet f = fun_enumerate(P);
    for (auto& p : f.elements)
      if (contains(*sub, p) && !contains(*sub, P->one() - p)) return Tri::False;
  } catch (const Error&) {
  }
  return Tri::Unknown;
}

}  // namespace pfkit

#endif
