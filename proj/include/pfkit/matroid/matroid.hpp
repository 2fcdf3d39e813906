#ifndef PFKIT_MATROID_MATROID_HPP
#define PFKIT_MATROID_MATROID_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pfkit/pmatrix/matrix.hpp"

namespace pfkit {

using Mask = std::uint32_t;

/// A matroid on an ordered ground set, stored as its sorted list of basis masks.
struct Matroid {
  std::vector<std::string> ground;
  int rank = 0;
  std::vector<Mask> bases;

  std::size_t size() const { return ground.size(); }
  Mask full() const { return ground.size() == 32 ? ~Mask(0) : ((Mask(1) << ground.size()) - 1); }
  bool is_basis(Mask b) const { return std::binary_search(bases.begin(), bases.end(), b); }

  int index_of(const std::string& l) const {
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (ground[i] == l) return int(i);
    return -1;
  }
  Mask mask_of(const std::vector<std::string>& labels) const {
    Mask m = 0;
    for (auto& l : labels) {
      int i = index_of(l);
      if (i < 0) fail("UnknownLabel", "label " + l + " is not in the ground set");
      m |= Mask(1) << i;
    }
    return m;
  }
  template <class C>
  Mask mask_of_set(const C& labels) const {
    return mask_of(std::vector<std::string>(labels.begin(), labels.end()));
  }
  std::vector<std::string> labels_of(Mask m) const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < ground.size(); ++i)
      if (m >> i & 1) out.push_back(ground[i]);
    return out;
  }

  int rank_of(Mask z) const {
    int r = 0;
    for (auto b : bases) {
      r = std::max(r, std::popcount(b & z));
      if (r == rank) break;
    }
    return r;
  }
  bool independent(Mask z) const { return rank_of(z) == std::popcount(z); }
  bool coindependent(Mask z) const { return rank_of(full() & ~z) == rank; }
};

inline bool operator==(const Matroid& a, const Matroid& b) {
  return a.ground == b.ground && a.rank == b.rank && a.bases == b.bases;
}

inline void finish(Matroid& M) {
  std::sort(M.bases.begin(), M.bases.end());
  M.bases.erase(std::unique(M.bases.begin(), M.bases.end()), M.bases.end());
  if (M.bases.empty()) fail("InvalidMatroid", "a matroid needs at least one basis");
  M.rank = std::popcount(M.bases[0]);
  for (auto b : M.bases)
    if (std::popcount(b) != M.rank) fail("InvalidMatroid", "bases of different sizes");
}

inline Matroid from_bases(std::vector<std::string> ground, const std::vector<std::vector<std::string>>& bases) {
  if (ground.size() > 32) throw ResourceLimit("ground sets are limited to 32 elements");
  Matroid M;
  M.ground = std::move(ground);
  std::set<std::string> seen(M.ground.begin(), M.ground.end());
  if (seen.size() != M.ground.size()) fail("DuplicateLabel", "repeated ground element");
  for (auto& b : bases) M.bases.push_back(M.mask_of(b));
  finish(M);
  return M;
}

inline Matroid from_basis_masks(std::vector<std::string> ground, std::vector<Mask> bases) {
  Matroid M;
  M.ground = std::move(ground);
  M.bases = std::move(bases);
  finish(M);
  return M;
}

namespace detail {

inline void for_each_subset(std::size_t n, int k, const std::function<void(Mask)>& f) {
  if (k < 0 || std::size_t(k) > n) return;
  if (k == 0) {
    f(0);
    return;
  }
  Mask m = (Mask(1) << k) - 1;
  Mask limit = Mask(1) << n;
  while (m < limit) {
    f(m);
    Mask c = m & -m, r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
    if (n == 32 && r == 0) break;
  }
}

}  // namespace detail

/// M[I A] on the ground set rows(A) followed by cols(A): B is a basis iff
/// A[X - B, Y n B] is nonsingular.
inline Matroid from_matrix(const PFMatrix& A) {
  std::size_t r = A.nr(), n = A.nr() + A.nc();
  if (n > 32) throw ResourceLimit("ground sets are limited to 32 elements");
  Matroid M;
  M.ground = A.labels();
  detail::for_each_subset(n, int(r), [&](Mask b) {
    std::vector<std::size_t> ri, ci;
    for (std::size_t i = 0; i < r; ++i)
      if (!(b >> i & 1)) ri.push_back(i);
    for (std::size_t j = 0; j < A.nc(); ++j)
      if (b >> (r + j) & 1) ci.push_back(j);
    if (ri.empty() || !ring_det(submatrix(A, ri, ci).a, A.pf->ring).is_zero()) M.bases.push_back(b);
  });
  finish(M);
  return M;
}

/// Basis exchange: for bases B1, B2 and x in B1 - B2 there is y in B2 - B1 with B1 - x + y a basis.
inline bool check_bases(const Matroid& M) {
  for (auto b1 : M.bases)
    for (auto b2 : M.bases) {
      Mask d1 = b1 & ~b2, d2 = b2 & ~b1;
      for (Mask x = d1; x; x &= x - 1) {
        Mask xb = x & -x;
        bool ok = false;
        for (Mask y = d2; y && !ok; y &= y - 1) ok = M.is_basis((b1 & ~xb) | (y & -y));
        if (!ok) return false;
      }
    }
  return true;
}

inline Matroid dual(const Matroid& M) {
  Matroid D;
  D.ground = M.ground;
  for (auto b : M.bases) D.bases.push_back(M.full() & ~b);
  finish(D);
  return D;
}

namespace detail {

inline Matroid project(const Matroid& M, Mask keep, const std::vector<Mask>& bases) {
  Matroid N;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < M.size(); ++i)
    if (keep >> i & 1) {
      idx.push_back(i);
      N.ground.push_back(M.ground[i]);
    }
  for (auto b : bases) {
    Mask nb = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (b >> idx[k] & 1) nb |= Mask(1) << k;
    N.bases.push_back(nb);
  }
  finish(N);
  return N;
}

}  // namespace detail

inline Matroid delete_set(const Matroid& M, Mask V) {
  int r = M.rank_of(M.full() & ~V);
  std::vector<Mask> b;
  for (auto x : M.bases)
    if (std::popcount(x & ~V) == r) b.push_back(x & ~V);
  return detail::project(M, M.full() & ~V, b);
}

inline Matroid contract_set(const Matroid& M, Mask U) {
  int ru = M.rank_of(U);
  std::vector<Mask> b;
  for (auto x : M.bases)
    if (std::popcount(x & U) == ru) b.push_back(x & ~U);
  return detail::project(M, M.full() & ~U, b);
}

struct MinorSpec {
  std::vector<std::string> contract, remove;
};

/// M / U \ V with U independent and V coindependent.
inline Matroid minor(const Matroid& M, const MinorSpec& s) {
  Mask U = M.mask_of(s.contract), V = M.mask_of(s.remove);
  if (U & V) fail("InvalidMinor", "contract and delete sets overlap");
  if (!M.independent(U)) fail("NotIndependent", "contraction set is dependent");
  Matroid C = contract_set(M, U);
  Mask V2 = C.mask_of(s.remove);
  if (!C.coindependent(V2)) fail("NotCoindependent", "deletion set is not coindependent");
  return delete_set(C, V2);
}

inline Matroid relabel(const Matroid& M, const std::vector<std::string>& labels) {
  if (labels.size() != M.size()) fail("ShapeMismatch", "relabel needs one label per element");
  Matroid N = M;
  N.ground = labels;
  return N;
}

// ---------------------------------------------------------------------------
// connectivity

inline int lambda(const Matroid& M, Mask Z) { return M.rank_of(Z) + M.rank_of(M.full() & ~Z) - M.rank; }

/// A k'-separation for some k' < k, if one exists.
inline std::optional<Mask> find_separation(const Matroid& M, int k) {
  std::size_t n = M.size();
  if (n > limits().ground) throw ResourceLimit("connectivity scan is limited to " + std::to_string(limits().ground) + " elements");
  Mask full = M.full();
  // Z and its complement give the same lambda; fix element 0 on the Z side
  for (Mask z = 1; z < full; z += 2) {
    int a = std::popcount(z), b = int(n) - a;
    int kk = std::min({a, b, k - 1});
    if (kk < 1) continue;
    if (lambda(M, z) < kk) return z;
  }
  return std::nullopt;
}

inline bool is_connected(const Matroid& M) { return !find_separation(M, 2); }
inline bool is_3connected(const Matroid& M) { return !find_separation(M, 3); }

/// G(M,B): edge xy for x in B, y outside B with B - x + y a basis.
inline std::vector<std::pair<std::string, std::string>> fundamental_graph(const Matroid& M, Mask B) {
  if (!M.is_basis(B)) fail("NotABasis", "not a basis");
  std::vector<std::pair<std::string, std::string>> out;
  for (std::size_t x = 0; x < M.size(); ++x) {
    if (!(B >> x & 1)) continue;
    for (std::size_t y = 0; y < M.size(); ++y) {
      if (B >> y & 1) continue;
      if (M.is_basis((B & ~(Mask(1) << x)) | (Mask(1) << y))) out.push_back({M.ground[x], M.ground[y]});
    }
  }
  return out;
}

/// Number of connected components of a graph on the ground set, counting only
/// the listed vertices.
inline std::size_t graph_components(const std::vector<std::string>& vertices, const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::string> parent;
  for (auto& v : vertices) parent[v] = v;
  std::function<std::string(const std::string&)> find = [&](const std::string& v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  std::size_t c = vertices.size();
  for (auto& [a, b] : edges) {
    auto x = find(a), y = find(b);
    if (x != y) {
      parent[x] = y;
      --c;
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// isomorphism

namespace detail {

inline std::vector<std::vector<int>> pair_counts(const Matroid& M) {
  std::size_t n = M.size();
  std::vector<std::vector<int>> c(n, std::vector<int>(n, 0));
  for (auto b : M.bases)
    for (std::size_t i = 0; i < n; ++i)
      if (b >> i & 1)
        for (std::size_t j = 0; j < n; ++j)
          if (b >> j & 1) ++c[i][j];
  return c;
}

}  // namespace detail

/// A bijection ground(M1) -> ground(M2) (as indices) carrying bases to bases.
inline std::optional<std::vector<int>> isomorphism(const Matroid& M1, const Matroid& M2) {
  std::size_t n = M1.size();
  if (n != M2.size() || M1.rank != M2.rank || M1.bases.size() != M2.bases.size()) return std::nullopt;
  auto c1 = detail::pair_counts(M1), c2 = detail::pair_counts(M2);
  // refine by sorted pair-count profiles
  auto profile = [&](const std::vector<std::vector<int>>& c, std::size_t i) {
    std::vector<int> p(c[i].begin(), c[i].end());
    int d = p[i];
    p.erase(p.begin() + long(i));
    std::sort(p.begin(), p.end());
    p.insert(p.begin(), d);
    return p;
  };
  std::vector<std::vector<int>> p1(n), p2(n);
  for (std::size_t i = 0; i < n; ++i) {
    p1[i] = profile(c1, i);
    p2[i] = profile(c2, i);
  }
  {
    auto s1 = p1, s2 = p2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    if (s1 != s2) return std::nullopt;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  std::size_t budget = limits().enumeration;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (budget-- == 0) throw ResourceLimit("isomorphism search budget exhausted");
    if (i == n) {
      for (auto b : M1.bases) {
        Mask nb = 0;
        for (std::size_t k = 0; k < n; ++k)
          if (b >> k & 1) nb |= Mask(1) << map[k];
        if (!M2.is_basis(nb)) return false;
      }
      return true;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || p1[i] != p2[j]) continue;
      bool ok = true;
      for (std::size_t k = 0; k < i && ok; ++k) ok = c1[i][k] == c2[j][std::size_t(map[k])];
      if (!ok) continue;
      used[j] = true;
      map[i] = int(j);
      if (rec(i + 1)) return true;
      used[j] = false;
      map[i] = -1;
    }
    return false;
  };
  if (rec(0)) return map;
  return std::nullopt;
}

inline bool isomorphic(const Matroid& a, const Matroid& b) { return isomorphism(a, b).has_value(); }

/// All minors M / U \ V on n elements of rank r, with U independent and V coindependent in M / U.
inline std::vector<std::pair<MinorSpec, Matroid>> minors_of_size(const Matroid& M, std::size_t n, int r) {
  std::vector<std::pair<MinorSpec, Matroid>> out;
  if (n > M.size() || r > M.rank || r < 0) return out;
  int removed = int(M.size() - n), nu = M.rank - r;
  if (nu > removed) return out;
  detail::for_each_subset(M.size(), removed, [&](Mask S) {
    // U ranges over the nu-subsets of S
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < M.size(); ++i)
      if (S >> i & 1) idx.push_back(i);
    detail::for_each_subset(idx.size(), nu, [&](Mask sel) {
      Mask U = 0;
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (sel >> k & 1) U |= Mask(1) << idx[k];
      Mask V = S & ~U;
      if (!M.independent(U)) return;
      if (M.rank_of(M.full() & ~V) != M.rank) return;
      Matroid C = contract_set(M, U);
      Mask V2 = C.mask_of(M.labels_of(V));
      if (!C.coindependent(V2)) return;
      out.push_back({MinorSpec{M.labels_of(U), M.labels_of(V)}, delete_set(C, V2)});
    });
  });
  return out;
}

/// Every position of an N-minor in M.
inline std::vector<MinorSpec> minor_positions(const Matroid& M, const Matroid& N) {
  std::vector<MinorSpec> out;
  for (auto& [spec, m] : minors_of_size(M, N.size(), N.rank))
    if (isomorphic(m, N)) out.push_back(spec);
  return out;
}

inline bool has_minor(const Matroid& M, const Matroid& N) {
  for (auto& [spec, m] : minors_of_size(M, N.size(), N.rank))
    if (isomorphic(m, N)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// named matroids

/// [I A] form of the column vectors over a field partial field: the first basis
/// found greedily labels the rows.
inline PFMatrix standard_form(const PF& pf, const std::vector<std::vector<Elem>>& columns, const std::vector<std::string>& labels) {
  std::size_t r = columns.empty() ? 0 : columns[0].size(), n = columns.size();
  std::vector<std::vector<Elem>> m(r, std::vector<Elem>(n));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < r; ++i) m[i][j] = columns[j][i];
  std::vector<std::size_t> piv;
  std::size_t row = 0;
  for (std::size_t j = 0; j < n && row < r; ++j) {
    std::size_t p = r;
    for (std::size_t i = row; i < r; ++i)
      if (!m[i][j].is_zero()) {
        p = i;
        break;
      }
    if (p == r) continue;
    std::swap(m[p], m[row]);
    Elem inv = m[row][j].inv();
    for (auto& e : m[row]) e = e * inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || m[i][j].is_zero()) continue;
      Elem f = m[i][j];
      for (std::size_t k = 0; k < n; ++k) m[i][k] = m[i][k] - f * m[row][k];
    }
    piv.push_back(j);
    ++row;
  }
  if (row < r) fail("InvalidMatroid", "vectors do not span");
  PFMatrix A;
  A.pf = pf;
  for (auto j : piv) A.rows.push_back(labels[j]);
  std::vector<std::size_t> rest;
  for (std::size_t j = 0; j < n; ++j)
    if (std::find(piv.begin(), piv.end(), j) == piv.end()) {
      rest.push_back(j);
      A.cols.push_back(labels[j]);
    }
  A.a.assign(r, {});
  for (std::size_t i = 0; i < r; ++i)
    for (auto j : rest) A.a[i].push_back(m[i][j]);
  return A;
}

struct NamedMatroid {
  Matroid matroid;
  std::optional<PFMatrix> matrix;  // documented representation, when there is one
};

namespace detail {

inline std::vector<std::string> number_labels(std::size_t from, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::to_string(from + i));
  return out;
}

inline int parse_int_arg(const std::string& s, std::size_t& pos) {
  std::size_t end = pos;
  while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
  if (end == pos) throw ParseError("expected an integer in '" + s + "'", pos);
  int v = std::stoi(s.substr(pos, end - pos));
  pos = end;
  return v;
}

inline PFMatrix qplus_matrix(int q, bool with_e) {
  PF F = gf_pf(std::uint32_t(q));
  Elem g = F->generators.at(0);
  std::vector<std::string> cols;
  std::vector<std::vector<Elem>> a(3);
  auto push = [&](const std::string& l, Elem x, Elem y, Elem z) {
    cols.push_back(l);
    a[0].push_back(x);
    a[1].push_back(y);
    a[2].push_back(z);
  };
  Elem o = F->one(), z = F->zero();
  if (with_e) push("e", o, o, o);
  for (int k = 0; k <= q - 2; ++k) push("a" + std::to_string(k), z, o, g.pow(k));
  for (int k = 0; k <= q - 2; ++k) push("b" + std::to_string(k), o, z, g.pow(k));
  for (int k = 0; k <= q - 2; ++k) push("c" + std::to_string(k), o, g.pow(k), z);
  PFMatrix A;
  A.pf = F;
  A.rows = {"e1", "e2", "e3"};
  A.cols = cols;
  A.a = a;
  return A;
}

}  // namespace detail

/// U(r,n), P8, F7, F7-, F7*, F7-*, P8*, Q(q), Qplus(q), AG23, Vamos, A1, A2, A3.
inline NamedMatroid make_named(const std::string& raw) {
  std::string s = detail::strip(raw);
  NamedMatroid out;
  auto set_matrix = [&](PFMatrix A) {
    validate_matrix(A);
    out.matroid = from_matrix(A);
    out.matrix = std::move(A);
  };
  if (s.size() > 1 && s.back() == '*' ) {
    NamedMatroid base = make_named(s.substr(0, s.size() - 1));
    out.matroid = dual(base.matroid);
    if (base.matrix) {
      PFMatrix T = transpose(*base.matrix);
      for (auto& row : T.a)
        for (auto& e : row) e = -e;
      out.matroid = from_matrix(T);
      out.matrix = T;
    }
    return out;
  }
  if (s.rfind("U(", 0) == 0 || (s.rfind("U", 0) == 0 && s.size() > 1 && std::isdigit(static_cast<unsigned char>(s[1])))) {
    std::size_t pos = s[1] == '(' ? 2 : 1;
    int r = detail::parse_int_arg(s, pos);
    if (pos >= s.size() || (s[pos] != ',' && s[pos] != '_')) throw ParseError("expected U(r,n)", pos);
    ++pos;
    int n = detail::parse_int_arg(s, pos);
    if (r < 0 || n < r || n > 32) fail("UnknownName", "bad uniform matroid " + s);
    Matroid M;
    M.ground = detail::number_labels(1, std::size_t(n));
    detail::for_each_subset(std::size_t(n), r, [&](Mask b) { M.bases.push_back(b); });
    finish(M);
    out.matroid = M;
    return out;
  }
  PF QQ = catalog("QQ");
  if (s == "P8") {
    set_matrix(make_matrix(QQ, {{"0", "1", "1", "2"}, {"1", "0", "1", "1"}, {"1", "1", "0", "1"}, {"2", "1", "1", "0"}},
                           detail::number_labels(1, 4), detail::number_labels(5, 4)));
    return out;
  }
  if (s == "F7-" || s == "F7") {
    PF P = s == "F7" ? catalog("GF(2)") : QQ;
    set_matrix(make_matrix(P, {{"1", "1", "0", "1"}, {"1", "0", "1", "1"}, {"0", "1", "1", "1"}}, detail::number_labels(1, 3),
                           detail::number_labels(4, 4)));
    return out;
  }
  if (s.rfind("Qplus(", 0) == 0 || s.rfind("Q(", 0) == 0) {
    bool plus = s[1] == 'p';
    std::size_t pos = plus ? 6 : 2;
    int q = detail::parse_int_arg(s, pos);
    set_matrix(detail::qplus_matrix(q, plus));
    return out;
  }
  if (s == "AG23") {
    PF F = catalog("GF(3)");
    std::vector<std::vector<Elem>> cols;
    std::vector<std::string> labels;
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        cols.push_back({F->one(), F->ring->from_int(x), F->ring->from_int(y)});
        labels.push_back("p" + std::to_string(x) + std::to_string(y));
      }
    set_matrix(standard_form(F, cols, labels));
    return out;
  }
  if (s == "Vamos") {
    Matroid M;
    M.ground = detail::number_labels(1, 8);
    std::vector<Mask> pairs{0x03, 0x0c, 0x30, 0xc0};
    std::set<Mask> dep{pairs[0] | pairs[1], pairs[0] | pairs[2], pairs[0] | pairs[3], pairs[1] | pairs[2], pairs[1] | pairs[3]};
    detail::for_each_subset(8, 4, [&](Mask b) {
      if (!dep.count(b)) M.bases.push_back(b);
    });
    finish(M);
    out.matroid = M;
    return out;
  }
  if (s == "A1") {
    set_matrix(make_matrix(catalog("G"), {{"1", "0", "1", "1"}, {"1", "1", "1/tau", "tau"}, {"0", "1", "-1", "tau"}, {"1", "-1/tau", "1/tau", "0"}},
                           detail::number_labels(1, 4), detail::number_labels(5, 4)));
    return out;
  }
  if (s == "A2") {
    set_matrix(make_matrix(catalog("K2"), {{"-1", "0", "1", "1"}, {"1", "-1", "0", "a"}, {"0", "1", "-1", "-1"}},
                           detail::number_labels(1, 3), detail::number_labels(4, 4)));
    return out;
  }
  if (s == "A3") {
    set_matrix(make_matrix(catalog("U1mod2"), {{"1", "0", "1", "1", "1"}, {"1", "1", "0", "1", "a"}, {"0", "1", "1", "1", "1"}},
                           detail::number_labels(1, 3), detail::number_labels(4, 5)));
    return out;
  }
  fail("UnknownName", "no named matroid '" + s + "'");
}

inline std::vector<std::string> named_matroids() {
  return {"U(2,4)", "U(2,5)", "U(3,5)", "U(2,6)", "F7", "F7-", "F7*", "F7-*", "P8", "AG23", "Q(3)", "Qplus(2)", "Qplus(3)", "Vamos", "A1", "A2", "A3"};
}

// ---------------------------------------------------------------------------
// small representable matroids

/// All 3-connected matroids on 4..max_n elements representable over GF(q), up to
/// isomorphism, each with a representation. Rank <= 3 cases are built from point
/// sets of PG(r-1,q) containing a frame; the rest are their duals.
inline std::vector<std::pair<Matroid, PFMatrix>> representable_3connected(std::uint32_t q, std::size_t max_n) {
  PF F = gf_pf(q);
  std::vector<Elem> elems = pf_elements(*F);
  std::vector<std::pair<Matroid, PFMatrix>> out;
  auto add = [&](const Matroid& M, const PFMatrix& A) {
    if (M.size() < 4 || M.size() > max_n || !is_3connected(M)) return;
    for (auto& [N, B] : out)
      if (N.size() == M.size() && N.rank == M.rank && isomorphic(N, M)) return;
    out.push_back({M, A});
  };
  for (std::size_t r = 2; r <= 3; ++r) {
    // projective points other than the frame, as normalized column vectors
    std::vector<std::vector<Elem>> pts;
    std::function<void(std::vector<Elem>&, std::size_t)> gen = [&](std::vector<Elem>& v, std::size_t i) {
      if (i == r) {
        bool lead = false, ones = true;
        for (auto& e : v) {
          if (!lead && !e.is_zero()) {
            lead = true;
            if (!e.is_one()) return;
          }
          ones = ones && e.is_one();
        }
        if (!lead) return;
        std::size_t nz = 0;
        for (auto& e : v) nz += !e.is_zero();
        if (nz == 1 || ones) return;  // basis vectors and the all-ones vector
        pts.push_back(v);
        return;
      }
      for (auto& e : elems) {
        v.push_back(e);
        gen(v, i + 1);
        v.pop_back();
      }
    };
    std::vector<Elem> v;
    gen(v, 0);
    std::size_t frame = r + 1;
    if (frame > max_n) continue;
    std::size_t extra_max = std::min(max_n - frame, pts.size());
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      PFMatrix A;
      A.pf = F;
      A.rows = detail::number_labels(1, r);
      std::vector<std::vector<Elem>> cols;
      cols.push_back(std::vector<Elem>(r, F->one()));
      for (auto k : pick) cols.push_back(pts[k]);
      A.a.assign(r, {});
      for (std::size_t j = 0; j < cols.size(); ++j) {
        A.cols.push_back(std::to_string(r + 1 + j));
        for (std::size_t i = 0; i < r; ++i) A.a[i].push_back(cols[j][i]);
      }
      Matroid M = from_matrix(A);
      add(M, A);
      PFMatrix T = transpose(A);
      for (auto& row : T.a)
        for (auto& e : row) e = -e;
      T.rows = detail::number_labels(1, T.rows.size());
      T.cols = detail::number_labels(T.rows.size() + 1, T.cols.size());
      add(from_matrix(T), T);
      if (pick.size() == extra_max) return;
      for (std::size_t k = start; k < pts.size(); ++k) {
        pick.push_back(k);
        rec(k + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    if (a.first.rank != b.first.rank) return a.first.rank < b.first.rank;
    return a.first.bases.size() < b.first.bases.size();
  });
  return out;
}

}  // namespace pfkit

#endif
