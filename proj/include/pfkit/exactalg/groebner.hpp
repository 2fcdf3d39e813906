#ifndef PFKIT_EXACTALG_GROEBNER_HPP
#define PFKIT_EXACTALG_GROEBNER_HPP

#include <algorithm>
#include <numeric>
#include <queue>
#include <vector>

#include "pfkit/exactalg/polynomial.hpp"

namespace pfkit {

namespace detail {

inline void floor_divmod(const Integer& c, const Integer& d, Integer& q, Integer& r) {
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c.get_mpz_t(), d.get_mpz_t());
}

template <class C>
Polynomial<C> make_positive(Polynomial<C> p) {
  if (p.is_zero()) return p;
  if constexpr (coeff_traits<C>::is_field) {
    return p.scaled(C(1) / p.lc());
  } else {
    return p.lc() < 0 ? -p : p;
  }
}

// Index of the reducer for monomial m: among basis elements whose leading
// monomial divides m, the one with the smallest leading coefficient.
template <class C>
int find_reducer(const std::vector<Polynomial<C>>& G, const std::vector<char>& alive, const Monomial& m) {
  int best = -1;
  for (std::size_t i = 0; i < G.size(); ++i) {
    if (!alive.empty() && !alive[i]) continue;
    if (!G[i].lm().divides(m)) continue;
    if constexpr (coeff_traits<C>::is_field) return int(i);
    if (best < 0 || abs(G[i].lc()) < abs(G[best].lc())) best = int(i);
  }
  return best;
}

/// Full reduction of f modulo G. Over Z every coefficient is reduced to the
/// canonical remainder in [0, lc) of its reducer, which yields unique normal
/// forms once G is a strong Groebner basis.
template <class C>
Polynomial<C> reduce(const Polynomial<C>& f, const std::vector<Polynomial<C>>& G,
                     const std::vector<char>& alive = {}) {
  Polynomial<C> r = f, out(f.order());
  std::vector<typename Polynomial<C>::Term> done;
  while (!r.is_zero()) {
    Monomial m = r.lm();
    C c = r.lc();
    int k = find_reducer(G, alive, m);
    if (k < 0) {
      done.emplace_back(m, c);
      r -= Polynomial<C>::monomial(m, c, f.order());
      continue;
    }
    const auto& g = G[k];
    Monomial shift = g.lm().quotient_of(m);
    if constexpr (coeff_traits<C>::is_field) {
      r -= g.mul_term(shift, c / g.lc());
    } else {
      Integer q, rem;
      floor_divmod(c, g.lc(), q, rem);
      if (q != 0) r -= g.mul_term(shift, q);
      if (rem != 0) {
        done.emplace_back(m, rem);
        r -= Polynomial<C>::monomial(m, rem, f.order());
      }
    }
  }
  return Polynomial<C>::from_terms(std::move(done), f.order());
}

}  // namespace detail

/// Generators together with a reduced strong Groebner basis under `order`.
template <class C>
struct IdealBasis {
  std::vector<Polynomial<C>> generators;
  std::vector<Polynomial<C>> basis;
  MonomialOrder order;

  bool is_unit() const { return basis.size() == 1 && basis[0].is_constant() && basis[0].constant_value() == 1; }
  Polynomial<C> normal_form(const Polynomial<C>& f) const {
    return detail::reduce(f.with_order(order), basis);
  }
  bool contains(const Polynomial<C>& f) const { return normal_form(f).is_zero(); }
};

namespace detail {

template <class C>
struct PairQueue {
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  MonomialOrder ord;
  std::vector<Pair> heap;
  bool greater(const Pair& a, const Pair& b) const {
    int c = compare(a.lcm, b.lcm, ord);
    if (c) return c > 0;
    if (a.j != b.j) return a.j > b.j;
    return a.i > b.i;
  }
  void push(Pair p) {
    heap.push_back(p);
    std::push_heap(heap.begin(), heap.end(), [&](const Pair& a, const Pair& b) { return greater(a, b); });
  }
  Pair pop() {
    std::pop_heap(heap.begin(), heap.end(), [&](const Pair& a, const Pair& b) { return greater(a, b); });
    Pair p = heap.back();
    heap.pop_back();
    return p;
  }
  bool empty() const { return heap.empty(); }
};

template <class C>
void interreduce(std::vector<Polynomial<C>>& G) {
  // drop elements whose leading term is divisible by another leading term
  std::sort(G.begin(), G.end(), [](const Polynomial<C>& a, const Polynomial<C>& b) {
    int c = compare(a.lm(), b.lm(), a.order());
    if (c) return c < 0;
    return abs(a.lc()) < abs(b.lc());
  });
  std::vector<Polynomial<C>> kept;
  for (auto& g : G) {
    bool redundant = false;
    for (auto& h : kept)
      if (h.lm().divides(g.lm()) && coeff_traits<C>::divides(h.lc(), g.lc())) {
        redundant = true;
        break;
      }
    if (!redundant) kept.push_back(g);
  }
  // tail reduction
  for (std::size_t i = 0; i < kept.size(); ++i) {
    std::vector<Polynomial<C>> others;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (j != i) others.push_back(kept[j]);
    Polynomial<C> head = Polynomial<C>::monomial(kept[i].lm(), kept[i].lc(), kept[i].order());
    Polynomial<C> tail = reduce(kept[i] - head, others);
    kept[i] = head + tail;
  }
  std::sort(kept.begin(), kept.end(), [](const Polynomial<C>& a, const Polynomial<C>& b) {
    int c = compare(a.lm(), b.lm(), a.order());
    if (c) return c < 0;
    return abs(a.lc()) < abs(b.lc());
  });
  G = std::move(kept);
}

}  // namespace detail

/// Buchberger's algorithm. Over Z the basis is closed under S-polynomials and
/// GCD-polynomials (strong basis); over Q it is the reduced basis.
template <class C>
IdealBasis<C> groebner(const std::vector<Polynomial<C>>& gens, MonomialOrder order = {}) {
  using P = Polynomial<C>;
  IdealBasis<C> ib;
  ib.order = order;
  for (auto& g : gens)
    if (!g.is_zero()) ib.generators.push_back(g.with_order(order));

  std::vector<P> G;
  std::vector<char> alive;
  detail::PairQueue<C> Q{order, {}};
  const auto& lim = limits();

  auto add = [&](P h) {
    h = detail::make_positive(std::move(h));
    if (h.is_constant()) {
      if constexpr (coeff_traits<C>::is_field) {
        G.assign(1, P(C(1), order));
        alive.assign(1, 1);
        Q.heap.clear();
        return;
      }
    }
    std::size_t j = G.size();
    for (std::size_t i = 0; i < j; ++i)
      if (alive[i]) Q.push({i, j, Monomial::lcm(G[i].lm(), h.lm())});
    G.push_back(std::move(h));
    alive.push_back(1);
    // retire older elements made redundant by the new leading term
    for (std::size_t i = 0; i < j; ++i)
      if (alive[i] && G[j].lm().divides(G[i].lm()) && coeff_traits<C>::divides(G[j].lc(), G[i].lc()))
        alive[i] = 0;
    if (G.size() > lim.gb_basis) throw ResourceLimit("Groebner basis size budget exceeded");
  };

  for (auto& g : ib.generators) {
    P h = detail::reduce(g, G, alive);
    if (!h.is_zero()) add(std::move(h));
  }

  std::size_t processed = 0;
  while (!Q.empty()) {
    auto pr = Q.pop();
    if (++processed > lim.gb_pairs) throw ResourceLimit("Groebner pair budget exceeded");
    if (pr.i >= G.size() || pr.j >= G.size()) continue;
    const P f = G[pr.i];
    const P g = G[pr.j];
    const Monomial& L = pr.lcm;
    Monomial uf = f.lm().quotient_of(L), ug = g.lm().quotient_of(L);
    if constexpr (coeff_traits<C>::is_field) {
      if (Monomial::coprime(f.lm(), g.lm())) continue;
      P s = f.mul_term(uf, C(1) / f.lc()) - g.mul_term(ug, C(1) / g.lc());
      P h = detail::reduce(s, G, alive);
      if (!h.is_zero()) add(std::move(h));
      if (G.size() == 1 && G[0].is_constant()) break;
    } else {
      const Integer& a = f.lc();
      const Integer& b = g.lc();
      Integer d, u, v;
      mpz_gcdext(d.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      bool need_g = !coeff_traits<C>::divides(a, b) && !coeff_traits<C>::divides(b, a);
      if (need_g) {
        P gp = f.mul_term(uf, u) + g.mul_term(ug, v);
        P h = detail::reduce(gp, G, alive);
        if (!h.is_zero()) add(std::move(h));
      }
      if (Monomial::coprime(f.lm(), g.lm()) && d == 1) continue;
      Integer l = a / d * b;
      P s = f.mul_term(uf, l / a) - g.mul_term(ug, l / b);
      P h = detail::reduce(s, G, alive);
      if (!h.is_zero()) add(std::move(h));
    }
  }
  std::vector<P> out;
  for (std::size_t i = 0; i < G.size(); ++i)
    if (alive[i]) out.push_back(G[i]);
  detail::interreduce(out);
  ib.basis = std::move(out);
  return ib;
}

// --- variable bookkeeping -------------------------------------------------

/// Rename variables: variable i becomes map[i].
template <class C>
Polynomial<C> remap_vars(const Polynomial<C>& p, const std::vector<int>& map, MonomialOrder ord) {
  std::vector<typename Polynomial<C>::Term> ts;
  ts.reserve(p.size());
  for (auto& [m, c] : p.terms()) {
    Monomial n;
    for (int i = 0; i < kMaxVars; ++i)
      if (m.e[i]) {
        if (map[i] < 0 || map[i] >= kMaxVars) throw ResourceLimit("variable index out of range");
        n.e[map[i]] += m.e[i];
      }
    n.deg = m.deg;
    ts.emplace_back(n, c);
  }
  return Polynomial<C>::from_terms(std::move(ts), ord);
}

inline std::vector<int> shift_map(int shift) {
  std::vector<int> m(kMaxVars);
  for (int i = 0; i < kMaxVars; ++i) m[i] = i + shift;
  return m;
}

/// Elements of I intersected with the ring in variables >= k (eliminating 0..k-1),
/// returned with those variables shifted down by k.
template <class C>
std::vector<Polynomial<C>> eliminate_leading(const std::vector<Polynomial<C>>& gens, int k, MonomialOrder final_order = {}) {
  auto gb = groebner(gens, MonomialOrder{k});
  std::vector<Polynomial<C>> out;
  for (auto& g : gb.basis) {
    bool uses = false;
    for (int v = 0; v < k; ++v) uses = uses || g.uses_var(v);
    if (!uses) out.push_back(remap_vars(g, shift_map(-k), final_order));
  }
  return out;
}

/// I : f^infinity via one auxiliary variable t and the relation t*f - 1.
template <class C>
IdealBasis<C> saturate(const IdealBasis<C>& I, const Polynomial<C>& f) {
  using P = Polynomial<C>;
  MonomialOrder elim{1};
  std::vector<P> gens;
  auto up = shift_map(1);
  for (auto& g : I.basis.empty() ? I.generators : I.basis) gens.push_back(remap_vars(g, up, elim));
  P t = P::var(0, elim);
  gens.push_back(t * remap_vars(f, up, elim) - P(C(1), elim));
  auto kept = eliminate_leading(gens, 1, I.order);
  return groebner(kept, I.order);
}

/// Two ideals are equal iff each basis reduces to zero modulo the other.
template <class C>
bool same_ideal(const IdealBasis<C>& a, const IdealBasis<C>& b) {
  for (auto& g : a.basis)
    if (!b.contains(g)) return false;
  for (auto& g : b.basis)
    if (!a.contains(g)) return false;
  return true;
}

/// Membership of e in the subring generated by gens inside Z[x_0..x_{n-1}]/J.
/// Tag variables t_i = gens_i are placed after the n ring variables and the
/// ring variables are eliminated.
template <class C>
bool subring_membership(const Polynomial<C>& e, const std::vector<Polynomial<C>>& gens,
                        const std::vector<Polynomial<C>>& relations, int n) {
  using P = Polynomial<C>;
  if (n + int(gens.size()) > kMaxVars) throw ResourceLimit("too many tag variables");
  MonomialOrder ord{n};
  std::vector<P> all;
  for (auto& r : relations) all.push_back(r.with_order(ord));
  for (std::size_t i = 0; i < gens.size(); ++i) all.push_back(P::var(n + int(i), ord) - gens[i].with_order(ord));
  auto gb = groebner(all, ord);
  P nf = gb.normal_form(e);
  for (int v = 0; v < n; ++v)
    if (nf.uses_var(v)) return false;
  return true;
}

}  // namespace pfkit

#endif
