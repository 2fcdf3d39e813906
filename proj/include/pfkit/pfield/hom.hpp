#ifndef PFKIT_PFIELD_HOM_HPP
#define PFKIT_PFIELD_HOM_HPP

#include <functional>
#include <string>
#include <vector>

#include "pfkit/pfield/partial_field.hpp"

namespace pfkit {

/// A partial-field homomorphism. Variables mode records the images of the ring
/// symbols (a ring evaluation); Generators mode records the image of each
/// generator of the source.
struct PFHom {
  enum class Mode { Variables, Generators };
  PF src, dst;
  Mode mode = Mode::Generators;
  std::vector<Elem> images;

  std::string str() const {
    std::string s;
    auto names = mode == Mode::Variables ? src->ring->symbol_names() : src->documented;
    for (std::size_t i = 0; i < images.size(); ++i) {
      std::string n = i < names.size() ? names[i] : "g" + std::to_string(i);
      if (mode == Mode::Generators && i < src->generators.size()) n = src->generators[i].str();
      s += (i ? ", " : "") + n + " -> " + images[i].str();
    }
    return s;
  }
};

struct HomCheck {
  bool ok = false;
  bool complete = false;  // additivity checked on all of fun(src)
  std::string reason;
};

namespace detail {

inline Elem eval_zpoly(const ZPoly& p, const std::vector<Elem>& img, const RingPtr& T) {
  Elem sum = T->zero();
  for (auto& [m, c] : p.terms()) {
    Elem t = T->make(T->from_integer(c));
    for (int i = 0; i < kMaxVars; ++i)
      if (m.e[i]) {
        if (i >= int(img.size())) fail("InvalidHom", "no image for ring variable " + std::to_string(i));
        t = t * img[i].pow(m.e[i]);
      }
    sum = sum + t;
  }
  return sum;
}

inline Elem eval_modp(const ModPFunctionField::V& v, const Elem& x, const RingPtr& T) {
  Elem sum = T->zero(), pw = T->one();
  for (auto c : v) {
    sum = sum + T->from_int(long(c)) * pw;
    pw = pw * x;
  }
  return sum;
}

}  // namespace detail

/// Ring-level evaluation of e under a Variables-mode hom.
inline Elem apply_variables(const PFHom& h, const Elem& e) {
  const RingPtr& S = h.src->ring;
  const RingPtr& T = h.dst->ring;
  switch (S->kind()) {
    case RingKind::Localized: {
      auto& f = std::get<payload::Frac>(e.payload());
      Elem d = detail::eval_zpoly(f.den, h.images, T);
      if (!d.is_unit()) fail("ImageOutsideGroup", "denominator of " + e.str() + " maps to a non-unit");
      return detail::eval_zpoly(f.num, h.images, T) * d.inv();
    }
    case RingKind::Quadratic: {
      auto& q = std::get<payload::Quad>(e.payload());
      Elem d = T->make(T->from_integer(q.d));
      if (!d.is_unit()) fail("ImageOutsideGroup", "denominator of " + e.str() + " maps to a non-unit");
      return (T->make(T->from_integer(q.a)) + T->make(T->from_integer(q.b)) * h.images.at(0)) * d.inv();
    }
    case RingKind::Quotient: {
      return detail::eval_zpoly(as<QuotientRing>(S)->nf(e), h.images, T);
    }
    case RingKind::ModPFunctions: {
      auto* M = as<ModPFunctionField>(S);
      Elem d = detail::eval_modp(M->denominator(e), h.images.at(0), T);
      if (!d.is_unit()) fail("ImageOutsideGroup", "denominator of " + e.str() + " maps to a non-unit");
      return detail::eval_modp(M->numerator(e), h.images.at(0), T) * d.inv();
    }
    default:
      fail("UnsupportedRing", "no evaluation homomorphisms from " + S->id());
  }
}

inline Elem apply(const PFHom& h, const Elem& e) {
  if (e.is_zero()) return h.dst->zero();
  if (h.mode == PFHom::Mode::Variables) return apply_variables(h, e);
  auto f = factor(*h.src, e);
  if (!f) fail("ElementNotInGroup", e.str() + " is not in " + h.src->label());
  Elem r = h.dst->ring->from_int(f->sign);
  for (std::size_t i = 0; i < f->exps.size(); ++i)
    if (f->exps[i]) r = r * h.images[i].pow(f->exps[i]);
  return r;
}

/// Relations among the generators that a Generators-mode hom must respect:
/// every g with g^n = 1 or g^n = -1 for small n.
inline std::vector<std::pair<std::vector<long long>, int>> generator_relations(const PartialField& P) {
  std::vector<std::pair<std::vector<long long>, int>> out;
  for (std::size_t i = 0; i < P.generators.size(); ++i) {
    Elem p = P.generators[i];
    for (long long n = 1; n <= 12; ++n) {
      int s = p.is_one() ? 1 : ((-p).is_one() ? -1 : 0);
      if (s != 0) {
        std::vector<long long> e(P.generators.size(), 0);
        e[i] = n;
        out.push_back({e, s});
        break;
      }
      p = p * P.generators[i];
    }
  }
  return out;
}

namespace detail {

// Multiplicativity of a Generators-mode hom on a finite group: map every group
// element along a BFS tree and compare the images reached by different paths.
inline bool consistent_on_group(const PFHom& h, std::string& why) {
  const PartialField& S = *h.src;
  const RingPtr& T = h.dst->ring;
  std::unordered_map<Elem, Elem, ElemHash> img;
  std::deque<Elem> queue;
  auto visit = [&](const Elem& x, const Elem& y) {
    auto it = img.find(x);
    if (it == img.end()) {
      img.emplace(x, y);
      queue.push_back(x);
      return true;
    }
    if (!(it->second == y)) {
      why = "images of " + x.str() + " disagree: " + it->second.str() + " vs " + y.str();
      return false;
    }
    return true;
  };
  visit(S.one(), T->one());
  if (!visit(-S.one(), -T->one())) return false;
  while (!queue.empty()) {
    Elem x = queue.front();
    queue.pop_front();
    Elem y = img.at(x);
    for (std::size_t i = 0; i < S.generators.size(); ++i)
      if (!visit(x * S.generators[i], y * h.images[i])) return false;
  }
  return true;
}

}  // namespace detail

inline HomCheck hom_check(const PFHom& h, const std::vector<Elem>& probes, bool probes_complete) {
  HomCheck r;
  const PartialField& S = *h.src;
  const PartialField& D = *h.dst;
  if (h.mode == PFHom::Mode::Variables) {
    auto names = S.ring->symbol_names();
    if (h.images.size() != names.size()) {
      r.reason = "expected " + std::to_string(names.size()) + " symbol images";
      return r;
    }
    for (auto& x : h.images) check_same(x, D.one());
    // defining relations of the source ring must hold in the target
    if (S.ring->kind() == RingKind::Quadratic) {
      auto* Q = as<QuadraticRing>(S.ring);
      const Elem& t = h.images[0];
      Elem rel = t * t - D.ring->make(D.ring->from_integer(Q->trace_coeff())) * t + D.ring->make(D.ring->from_integer(Q->norm_coeff()));
      if (!rel.is_zero()) {
        r.reason = "minimal polynomial of " + Q->sym() + " does not vanish at " + t.str();
        return r;
      }
    }
    if (S.ring->kind() == RingKind::Quotient) {
      for (auto& g : as<QuotientRing>(S.ring)->ideal().basis)
        if (!detail::eval_zpoly(g, h.images, D.ring).is_zero()) {
          r.reason = "ideal generator does not vanish";
          return r;
        }
    }
    if (S.ring->kind() == RingKind::ModPFunctions && D.ring->characteristic() != S.ring->characteristic()) {
      r.reason = "characteristic mismatch";
      return r;
    }
    for (auto& g : S.generators) {
      Elem x;
      try {
        x = apply_variables(h, g);
      } catch (const Error& e) {
        r.reason = e.what();
        return r;
      }
      if (!in_group(D, x)) {
        r.reason = "generator " + g.str() + " maps to " + x.str() + ", outside the target group";
        return r;
      }
    }
    if (S.ring->kind() == RingKind::Localized) {
      // inverted ring elements must stay invertible
      for (auto& g : as<LocalizedRing>(S.ring)->inverted())
        if (!detail::eval_zpoly(g, h.images, D.ring).is_unit()) {
          r.reason = "inverted element " + g.to_string(S.ring->symbol_names()) + " maps to a non-unit";
          return r;
        }
    }
    // a ring homomorphism restricted to G is additive wherever sums stay in G
    r.complete = true;
  } else {
    if (h.images.size() != S.generators.size()) {
      r.reason = "expected " + std::to_string(S.generators.size()) + " generator images";
      return r;
    }
    for (std::size_t i = 0; i < h.images.size(); ++i) {
      check_same(h.images[i], D.one());
      if (!in_group(D, h.images[i])) {
        r.reason = "image " + h.images[i].str() + " of " + S.generators[i].str() + " is not in the target group";
        return r;
      }
    }
    if (S.units) {
      if (!detail::consistent_on_group(h, r.reason)) return r;
    } else {
      for (auto& [e, s] : generator_relations(S)) {
        Elem v = D.ring->from_int(s);
        Elem w = D.one();
        for (std::size_t i = 0; i < e.size(); ++i)
          if (e[i]) w = w * h.images[i].pow(e[i]);
        if (!(w == v)) {
          std::size_t i = 0;
          while (e[i] == 0) ++i;
          r.reason = "relation " + S.generators[i].str() + "^" + std::to_string(e[i]) + " = " + std::to_string(s) + " not respected";
          return r;
        }
      }
    }
    r.complete = probes_complete;
  }
  for (auto& p : probes) {
    if (p.is_zero() || p.is_one()) continue;
    Elem a = apply(h, p), b = apply(h, S.one() - p);
    if (!(a + b == D.one())) {
      r.reason = "additivity fails at p = " + p.str() + ": " + a.str() + " + " + b.str() + " != 1";
      r.complete = false;
      return r;
    }
  }
  r.ok = true;
  return r;
}

/// Variables-mode hom from symbol images written in the target's grammar.
inline PFHom hom_by_variables(const PF& src, const PF& dst, const std::vector<std::string>& images) {
  PFHom h{src, dst, PFHom::Mode::Variables, {}};
  for (auto& s : images) h.images.push_back(parse_element(s, dst->ring));
  return h;
}

inline PFHom hom_by_generators(const PF& src, const PF& dst, const std::vector<std::string>& images) {
  PFHom h{src, dst, PFHom::Mode::Generators, {}};
  for (auto& s : images) h.images.push_back(parse_element(s, dst->ring));
  return h;
}

/// g o f, as a Generators-mode hom.
inline PFHom compose(const PFHom& g, const PFHom& f) {
  PFHom h{f.src, g.dst, PFHom::Mode::Generators, {}};
  for (auto& s : f.src->generators) h.images.push_back(apply(g, apply(f, s)));
  return h;
}

}  // namespace pfkit

#endif
