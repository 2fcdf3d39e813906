#ifndef PFKIT_PMATRIX_MATRIX_HPP
#define PFKIT_PMATRIX_MATRIX_HPP

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "pfkit/pfield/fun.hpp"

namespace pfkit {

/// Labeled X x Y matrix over a partial field. Entries are stored densely.
struct PFMatrix {
  PF pf;
  std::vector<std::string> rows, cols;
  std::vector<std::vector<Elem>> a;

  std::size_t nr() const { return rows.size(); }
  std::size_t nc() const { return cols.size(); }
  const Elem& operator()(std::size_t i, std::size_t j) const { return a[i][j]; }
  Elem& operator()(std::size_t i, std::size_t j) { return a[i][j]; }

  int row_of(const std::string& l) const {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (rows[i] == l) return int(i);
    return -1;
  }
  int col_of(const std::string& l) const {
    for (std::size_t j = 0; j < cols.size(); ++j)
      if (cols[j] == l) return int(j);
    return -1;
  }
  bool has_label(const std::string& l) const { return row_of(l) >= 0 || col_of(l) >= 0; }
  std::vector<std::string> labels() const {
    std::vector<std::string> out = rows;
    out.insert(out.end(), cols.begin(), cols.end());
    return out;
  }
  const Elem& at(const std::string& x, const std::string& y) const {
    int i = row_of(x), j = col_of(y);
    if (i < 0 || j < 0) fail("UnknownLabel", "no entry " + x + "," + y);
    return a[i][j];
  }

  std::string str() const {
    std::vector<std::vector<std::string>> cells(nr() + 1, std::vector<std::string>(nc() + 1));
    for (std::size_t j = 0; j < nc(); ++j) cells[0][j + 1] = cols[j];
    for (std::size_t i = 0; i < nr(); ++i) {
      cells[i + 1][0] = rows[i];
      for (std::size_t j = 0; j < nc(); ++j) cells[i + 1][j + 1] = a[i][j].str();
    }
    std::vector<std::size_t> w(nc() + 1, 0);
    for (auto& r : cells)
      for (std::size_t j = 0; j < r.size(); ++j) w[j] = std::max(w[j], r[j].size());
    std::string s;
    for (auto& r : cells) {
      for (std::size_t j = 0; j < r.size(); ++j) s += (j ? "  " : "") + r[j] + std::string(w[j] - r[j].size(), ' ');
      s += "\n";
    }
    return s;
  }
};

inline bool operator==(const PFMatrix& A, const PFMatrix& B) {
  return A.rows == B.rows && A.cols == B.cols && A.a == B.a;
}

inline std::vector<std::string> default_labels(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

/// Checks labels and that every entry is 0 or a member of the partial field.
inline void validate_matrix(const PFMatrix& A) {
  std::set<std::string> seen;
  for (auto& l : A.labels())
    if (!seen.insert(l).second) fail("DuplicateLabel", "label " + l + " used twice");
  if (A.a.size() != A.nr()) fail("ShapeMismatch", "row count does not match labels");
  for (std::size_t i = 0; i < A.nr(); ++i) {
    if (A.a[i].size() != A.nc()) fail("ShapeMismatch", "column count does not match labels");
    for (std::size_t j = 0; j < A.nc(); ++j) {
      check_same(A.a[i][j], A.pf->one());
      if (!contains(*A.pf, A.a[i][j]))
        fail("EntryNotInPartialField", "entry (" + A.rows[i] + "," + A.cols[j] + ") = " + A.a[i][j].str() + " is not in " + A.pf->label());
    }
  }
}

inline PFMatrix make_matrix(const PF& pf, const std::vector<std::vector<std::string>>& entries,
                            std::vector<std::string> rows = {}, std::vector<std::string> cols = {}) {
  PFMatrix A;
  A.pf = pf;
  std::size_t nc = entries.empty() ? cols.size() : entries[0].size();
  A.rows = rows.empty() ? default_labels("x", entries.size()) : std::move(rows);
  A.cols = cols.empty() ? default_labels("y", nc) : std::move(cols);
  for (auto& r : entries) {
    std::vector<Elem> row;
    for (auto& s : r) row.push_back(pf->elem(s));
    A.a.push_back(std::move(row));
  }
  validate_matrix(A);
  return A;
}

inline PFMatrix zero_matrix(const PF& pf, std::vector<std::string> rows, std::vector<std::string> cols) {
  PFMatrix A;
  A.pf = pf;
  A.rows = std::move(rows);
  A.cols = std::move(cols);
  A.a.assign(A.rows.size(), std::vector<Elem>(A.cols.size(), pf->zero()));
  return A;
}

inline PFMatrix submatrix(const PFMatrix& A, const std::vector<std::size_t>& ri, const std::vector<std::size_t>& ci) {
  PFMatrix B;
  B.pf = A.pf;
  for (auto i : ri) B.rows.push_back(A.rows[i]);
  for (auto j : ci) B.cols.push_back(A.cols[j]);
  for (auto i : ri) {
    std::vector<Elem> row;
    for (auto j : ci) row.push_back(A.a[i][j]);
    B.a.push_back(std::move(row));
  }
  return B;
}

/// A[Z] = A[X n Z, Y n Z], keeping the original label order.
inline PFMatrix restrict_to(const PFMatrix& A, const std::set<std::string>& Z) {
  std::vector<std::size_t> ri, ci;
  for (std::size_t i = 0; i < A.nr(); ++i)
    if (Z.count(A.rows[i])) ri.push_back(i);
  for (std::size_t j = 0; j < A.nc(); ++j)
    if (Z.count(A.cols[j])) ci.push_back(j);
  return submatrix(A, ri, ci);
}

/// A - Z
inline PFMatrix delete_labels(const PFMatrix& A, const std::set<std::string>& Z) {
  std::set<std::string> keep;
  for (auto& l : A.labels())
    if (!Z.count(l)) keep.insert(l);
  return restrict_to(A, keep);
}

inline PFMatrix transpose(const PFMatrix& A) {
  PFMatrix T;
  T.pf = A.pf;
  T.rows = A.cols;
  T.cols = A.rows;
  T.a.assign(A.nc(), std::vector<Elem>(A.nr()));
  for (std::size_t i = 0; i < A.nr(); ++i)
    for (std::size_t j = 0; j < A.nc(); ++j) T.a[j][i] = A.a[i][j];
  return T;
}

// ---------------------------------------------------------------------------
// determinants

namespace detail {

inline bool ring_is_field(const RingPtr& R) {
  if (R->is_finite()) return R->kind() == RingKind::FiniteField;
  if (R->kind() == RingKind::Localized) return as<LocalizedRing>(R)->is_field();
  return R->kind() == RingKind::ModPFunctions;
}

inline bool usable_pivot(const Elem& e, bool field) { return !e.is_zero() && (field || e.is_unit()); }

}  // namespace detail

/// Exact determinant in the ambient ring: elimination on unit pivots, with a
/// cofactor expansion when a column has no unit entry.
inline Elem ring_det(std::vector<std::vector<Elem>> m, const RingPtr& R) {
  std::size_t n = m.size();
  if (n == 0) return R->one();
  bool field = detail::ring_is_field(R);
  Elem det = R->one();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = n;
    bool any = false;
    for (std::size_t i = k; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      any = true;
      if (m[i][k].is_one() || (-m[i][k]).is_one() || detail::usable_pivot(m[i][k], field)) {
        p = i;
        break;
      }
    }
    if (!any) return R->zero();
    if (p == n) {
      // cofactor expansion along column k of the remaining block
      Elem sum = R->zero();
      for (std::size_t i = k; i < n; ++i) {
        if (m[i][k].is_zero()) continue;
        std::vector<std::vector<Elem>> minor;
        for (std::size_t r = k; r < n; ++r) {
          if (r == i) continue;
          std::vector<Elem> row(m[r].begin() + long(k) + 1, m[r].end());
          minor.push_back(std::move(row));
        }
        Elem t = m[i][k] * ring_det(std::move(minor), R);
        sum = ((i - k) % 2 == 0) ? sum + t : sum - t;
      }
      return det * sum;
    }
    if (p != k) {
      std::swap(m[p], m[k]);
      det = -det;
    }
    Elem inv = m[k][k].inv();
    det = det * m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m[i][k].is_zero()) continue;
      Elem f = m[i][k] * inv;
      for (std::size_t j = k + 1; j < n; ++j)
        if (!m[k][j].is_zero()) m[i][j] = m[i][j] - f * m[k][j];
    }
  }
  return det;
}

inline Elem det(const PFMatrix& A) {
  if (A.nr() != A.nc()) fail("NotSquare", "determinant of a non-square matrix");
  return ring_det(A.a, A.pf->ring);
}

struct DetReport {
  std::optional<Elem> det;         // nullopt: determinant is not in the partial field
  Elem raw;                        // determinant in the ambient ring
  std::optional<bool> is_pmatrix;  // FullPMatrixCheck only
  std::string witness;             // failing submatrix when is_pmatrix is false
};

enum class DetMode { DetOnly, FullPMatrixCheck };

inline std::vector<std::vector<std::size_t>> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = s; i + (k - cur.size()) <= n; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

inline std::vector<PFMatrix> basis_representatives(const PFMatrix& A);

inline DetReport det_and_validate(const PFMatrix& A, DetMode mode) {
  DetReport r;
  if (mode == DetMode::DetOnly) {
    r.raw = det(A);
    if (contains(*A.pf, r.raw)) r.det = r.raw;
    return r;
  }
  if (A.nr() == A.nc()) {
    r.raw = det(A);
    if (contains(*A.pf, r.raw)) r.det = r.raw;
  }
  std::size_t m = std::min(A.nr(), A.nc());
  if (m <= 6) {
    for (std::size_t k = 1; k <= m; ++k)
      for (auto& ri : subsets_of_size(A.nr(), k))
        for (auto& ci : subsets_of_size(A.nc(), k)) {
          auto S = submatrix(A, ri, ci);
          Elem d = det(S);
          if (!contains(*A.pf, d)) {
            r.is_pmatrix = false;
            std::string rs, cs;
            for (auto& l : S.rows) rs += (rs.empty() ? "" : ",") + l;
            for (auto& l : S.cols) cs += (cs.empty() ? "" : ",") + l;
            r.witness = "det A[{" + rs + "},{" + cs + "}] = " + d.str();
            return r;
          }
        }
    r.is_pmatrix = true;
    return r;
  }
  // every entry of every basis representative in the partial field
  try {
    for (auto& B : basis_representatives(A))
      for (std::size_t i = 0; i < B.nr(); ++i)
        for (std::size_t j = 0; j < B.nc(); ++j)
          if (!contains(*A.pf, B.a[i][j])) {
            r.is_pmatrix = false;
            r.witness = "entry (" + B.rows[i] + "," + B.cols[j] + ") of a basis representative is " + B.a[i][j].str();
            return r;
          }
  } catch (const Error& e) {
    if (std::string(e.kind()) != "EntryLeavesPartialField") throw;
    r.is_pmatrix = false;
    r.witness = e.what();
    return r;
  }
  r.is_pmatrix = true;
  return r;
}

// ---------------------------------------------------------------------------
// pivoting and scaling

/// A^{xy} by the four-case formula. The new row label y takes the place of x and
/// the new column label x takes the place of y.
inline PFMatrix pivot_at(const PFMatrix& A, std::size_t x, std::size_t y, bool check = true) {
  const Elem& p = A.a[x][y];
  if (p.is_zero()) fail("ZeroPivot", "pivot entry (" + A.rows[x] + "," + A.cols[y] + ") is zero");
  if (!p.is_unit()) fail("EntryLeavesPartialField", "pivot entry " + p.str() + " is not invertible");
  const Elem pi = p.inv();
  PFMatrix B = A;
  std::swap(B.rows[x], B.cols[y]);
  for (std::size_t u = 0; u < A.nr(); ++u)
    for (std::size_t v = 0; v < A.nc(); ++v) {
      if (u == x && v == y) B.a[u][v] = pi;
      else if (u == x) B.a[u][v] = A.a[u][v].is_zero() ? A.a[u][v] : pi * A.a[x][v];
      else if (v == y) B.a[u][v] = A.a[u][v].is_zero() ? A.a[u][v] : -(pi * A.a[u][y]);
      else if (A.a[u][y].is_zero() || A.a[x][v].is_zero()) B.a[u][v] = A.a[u][v];
      else B.a[u][v] = A.a[u][v] - pi * A.a[u][y] * A.a[x][v];
      if (check && !contains(*A.pf, B.a[u][v]))
        fail("EntryLeavesPartialField", "pivot produces " + B.a[u][v].str() + " at (" + B.rows[u] + "," + B.cols[v] + ")");
    }
  return B;
}

inline PFMatrix pivot(const PFMatrix& A, const std::string& x, const std::string& y) {
  int i = A.row_of(x), j = A.col_of(y);
  if (i < 0 || j < 0) fail("UnknownLabel", "no entry " + x + "," + y);
  return pivot_at(A, std::size_t(i), std::size_t(j), true);
}

inline PFMatrix scale(const PFMatrix& A, const std::vector<Elem>& rf, const std::vector<Elem>& cf) {
  PFMatrix B = A;
  for (std::size_t i = 0; i < A.nr(); ++i)
    for (std::size_t j = 0; j < A.nc(); ++j)
      if (!A.a[i][j].is_zero()) B.a[i][j] = rf[i] * A.a[i][j] * cf[j];
  return B;
}

/// Spanning forest as (row index, column index) edges of G(A).
using IndexForest = std::vector<std::pair<std::size_t, std::size_t>>;
/// Spanning forest as (row label, column label) edges.
using Forest = std::vector<std::pair<std::string, std::string>>;

/// BFS forest of G(A): each component is grown from its lexicographically
/// smallest label, visiting neighbours in label order.
inline IndexForest auto_forest(const PFMatrix& A) {
  std::size_t n = A.nr() + A.nc();
  auto name = [&](std::size_t v) -> const std::string& { return v < A.nr() ? A.rows[v] : A.cols[v - A.nr()]; };
  std::vector<std::size_t> order(n);
  for (std::size_t v = 0; v < n; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return name(a) < name(b); });
  std::vector<bool> seen(n, false);
  IndexForest T;
  for (auto s : order) {
    if (seen[s]) continue;
    seen[s] = true;
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      std::vector<std::size_t> nb;
      if (v < A.nr()) {
        for (std::size_t j = 0; j < A.nc(); ++j)
          if (!A.a[v][j].is_zero()) nb.push_back(A.nr() + j);
      } else {
        for (std::size_t i = 0; i < A.nr(); ++i)
          if (!A.a[i][v - A.nr()].is_zero()) nb.push_back(i);
      }
      std::sort(nb.begin(), nb.end(), [&](std::size_t a, std::size_t b) { return name(a) < name(b); });
      for (auto w : nb) {
        if (seen[w]) continue;
        seen[w] = true;
        q.push_back(w);
        if (v < A.nr()) T.push_back({v, w - A.nr()});
        else T.push_back({w, v - A.nr()});
      }
    }
  }
  return T;
}

inline Forest forest_labels(const PFMatrix& A, const IndexForest& T) {
  Forest out;
  for (auto [i, j] : T) out.push_back({A.rows[i], A.cols[j]});
  return out;
}

inline IndexForest forest_indices(const PFMatrix& A, const Forest& T) {
  IndexForest out;
  for (auto& [x, y] : T) {
    int i = A.row_of(x), j = A.col_of(y);
    if (i < 0 || j < 0) {
      // accept either orientation
      i = A.row_of(y);
      j = A.col_of(x);
    }
    if (i < 0 || j < 0) fail("NotAForest", "edge " + x + y + " is not a matrix position");
    out.push_back({std::size_t(i), std::size_t(j)});
  }
  return out;
}

namespace detail {

inline std::size_t count_components(const PFMatrix& A) {
  std::size_t n = A.nr() + A.nc();
  std::vector<std::size_t> parent(n);
  for (std::size_t v = 0; v < n; ++v) parent[v] = v;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  std::size_t comps = n;
  for (std::size_t i = 0; i < A.nr(); ++i)
    for (std::size_t j = 0; j < A.nc(); ++j)
      if (!A.a[i][j].is_zero()) {
        auto a = find(i), b = find(A.nr() + j);
        if (a != b) {
          parent[a] = b;
          --comps;
        }
      }
  return comps;
}

}  // namespace detail

/// Row and column factors making A_e = 1 on every edge of T.
inline std::pair<std::vector<Elem>, std::vector<Elem>> normalizing_factors(const PFMatrix& A, const IndexForest& T) {
  std::size_t n = A.nr() + A.nc();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [i, j] : T) {
    if (i >= A.nr() || j >= A.nc() || A.a[i][j].is_zero()) fail("NotAForest", "forest edge on a zero entry");
    adj[i].push_back(A.nr() + j);
    adj[A.nr() + j].push_back(i);
  }
  if (T.size() + detail::count_components(A) != n) fail("NotAForest", "not a maximal spanning forest of G(A)");
  std::vector<std::optional<Elem>> f(n);
  for (std::size_t s = 0; s < n; ++s) {
    if (f[s]) continue;
    f[s] = A.pf->one();
    std::deque<std::size_t> q{s};
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop_front();
      for (auto w : adj[v]) {
        if (f[w]) continue;
        std::size_t i = v < A.nr() ? v : w, j = (v < A.nr() ? w : v) - A.nr();
        // rf[i] * A_ij * cf[j] = 1
        f[w] = (A.a[i][j] * *f[v]).inv();
        q.push_back(w);
      }
    }
  }
  std::vector<Elem> rf, cf;
  for (std::size_t i = 0; i < A.nr(); ++i) rf.push_back(*f[i]);
  for (std::size_t j = 0; j < A.nc(); ++j) cf.push_back(*f[A.nr() + j]);
  return {rf, cf};
}

inline PFMatrix normalize(const PFMatrix& A, const std::optional<Forest>& T = std::nullopt) {
  IndexForest F = T ? forest_indices(A, *T) : auto_forest(A);
  auto [rf, cf] = normalizing_factors(A, F);
  return scale(A, rf, cf);
}

/// Positional scaling equivalence: same zero pattern and equal after
/// normalizing both on the same spanning forest.
inline bool scaling_equivalent(const PFMatrix& A, const PFMatrix& B) {
  if (A.nr() != B.nr() || A.nc() != B.nc()) return false;
  for (std::size_t i = 0; i < A.nr(); ++i)
    for (std::size_t j = 0; j < A.nc(); ++j)
      if (A.a[i][j].is_zero() != B.a[i][j].is_zero()) return false;
  IndexForest T = auto_forest(A);
  auto fa = normalizing_factors(A, T);
  auto An = scale(A, fa.first, fa.second);
  auto fb = normalizing_factors(B, T);
  auto Bn = scale(B, fb.first, fb.second);
  return An.a == Bn.a;
}

// ---------------------------------------------------------------------------
// cycles and signatures

struct CycleSignature {
  std::vector<std::string> cycle;  // v0 .. v_{2n-1}; closing vertex implied
  Elem value;
};

namespace detail {

inline std::vector<std::string> open_cycle(std::vector<std::string> C) {
  if (C.size() > 1 && C.front() == C.back()) C.pop_back();
  return C;
}

inline const Elem& edge_entry(const PFMatrix& A, const std::string& v, const std::string& w) {
  int i = A.row_of(v), j = A.col_of(w);
  if (i >= 0 && j >= 0) return A.a[i][j];
  i = A.row_of(w);
  j = A.col_of(v);
  if (i >= 0 && j >= 0) return A.a[i][j];
  fail("NotACycle", v + w + " is not an edge of G(A)");
}

}  // namespace detail

inline void validate_cycle(const PFMatrix& A, const std::vector<std::string>& C0) {
  auto C = detail::open_cycle(C0);
  if (C.size() < 4 || C.size() % 2) fail("NotACycle", "a cycle of G(A) has even length at least 4");
  std::set<std::string> seen(C.begin(), C.end());
  if (seen.size() != C.size()) fail("NotACycle", "repeated vertex");
  for (std::size_t i = 0; i < C.size(); ++i) {
    const auto& v = C[i];
    const auto& w = C[(i + 1) % C.size()];
    bool vx = A.row_of(v) >= 0, wx = A.row_of(w) >= 0;
    if (!A.has_label(v) || !A.has_label(w) || vx == wx) fail("NotACycle", "cycle must alternate rows and columns");
    if (detail::edge_entry(A, v, w).is_zero()) fail("NotACycle", v + w + " is not an edge of G(A)");
  }
}

inline CycleSignature cycle_signature(const PFMatrix& A, const std::vector<std::string>& C0) {
  validate_cycle(A, C0);
  auto C = detail::open_cycle(C0);
  Elem s = (C.size() / 2) % 2 ? -A.pf->one() : A.pf->one();
  for (std::size_t i = 0; i < C.size(); ++i) {
    const auto& v = C[i];
    const auto& w = C[(i + 1) % C.size()];
    const Elem& e = detail::edge_entry(A, v, w);
    s = A.row_of(v) >= 0 ? s * e : s * e.inv();
  }
  return {C, s};
}

inline bool is_induced_cycle(const PFMatrix& A, const std::vector<std::string>& C0) {
  validate_cycle(A, C0);
  auto C = detail::open_cycle(C0);
  std::set<std::string> V(C.begin(), C.end());
  auto S = restrict_to(A, V);
  std::size_t nz = 0;
  for (auto& r : S.a)
    for (auto& e : r) nz += !e.is_zero();
  return nz == C.size();
}

/// A[V(C)] after scaling every cycle edge except v0v1 to 1, with rows ordered
/// v0, v2, ... and columns v_{2n-1}, v1, v3, ...; its determinant is 1 - sigma(C)
/// for induced C. A cycle starting in Y is rotated to start in X.
inline PFMatrix cycle_matrix(const PFMatrix& A, const std::vector<std::string>& C0) {
  validate_cycle(A, C0);
  auto C = detail::open_cycle(C0);
  if (A.row_of(C[0]) < 0) std::rotate(C.begin(), C.begin() + 1, C.end());
  std::size_t n = C.size() / 2;
  std::vector<std::size_t> ri, ci;
  for (std::size_t k = 0; k < n; ++k) ri.push_back(std::size_t(A.row_of(C[2 * k])));
  ci.push_back(std::size_t(A.col_of(C[2 * n - 1])));
  for (std::size_t k = 0; k + 1 < n; ++k) ci.push_back(std::size_t(A.col_of(C[2 * k + 1])));
  PFMatrix S = submatrix(A, ri, ci);
  // S has row k = v_{2k}, column 0 = v_{2n-1} and column m = v_{2m-1}; the cycle
  // edges are (k,k) and (k,(k+1) mod n), and (0,1) is the edge v0v1 left free.
  IndexForest T;
  for (std::size_t k = 0; k < n; ++k) T.push_back({k, k});
  for (std::size_t k = 1; k < n; ++k) T.push_back({k, (k + 1) % n});
  auto [rf, cf] = [&]() {
    PFMatrix tree = S;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        bool keep = false;
        for (auto [a, b] : T) keep = keep || (a == i && b == j);
        if (!keep) tree.a[i][j] = S.pf->zero();
      }
    return normalizing_factors(tree, T);
  }();
  return scale(S, rf, cf);
}

// ---------------------------------------------------------------------------
// basis representatives and cross ratios

/// Every matrix obtained from A by pivots, one per row-label set, in BFS order.
inline std::vector<PFMatrix> basis_representatives(const PFMatrix& A) {
  std::vector<PFMatrix> out;
  std::set<std::vector<std::string>> seen;
  auto key = [](const PFMatrix& B) {
    auto r = B.rows;
    std::sort(r.begin(), r.end());
    return r;
  };
  seen.insert(key(A));
  out.push_back(A);
  std::size_t budget = limits().enumeration;
  for (std::size_t k = 0; k < out.size(); ++k)
    for (std::size_t i = 0; i < out[k].nr(); ++i)
      for (std::size_t j = 0; j < out[k].nc(); ++j) {
        if (out[k].a[i][j].is_zero()) continue;
        if (budget-- == 0) throw ResourceLimit("basis representative enumeration budget exhausted");
        auto r = out[k].rows;
        r[i] = out[k].cols[j];
        std::sort(r.begin(), r.end());
        if (seen.count(r)) continue;
        seen.insert(r);
        out.push_back(pivot_at(out[k], i, j, false));
      }
  return out;
}

namespace detail {

inline void collect_cross_ratios(const PFMatrix& B, std::vector<Elem>& out, std::unordered_set<Elem, ElemHash>& seen) {
  for (std::size_t i1 = 0; i1 < B.nr(); ++i1)
    for (std::size_t i2 = 0; i2 < B.nr(); ++i2) {
      if (i1 == i2) continue;
      for (std::size_t j1 = 0; j1 < B.nc(); ++j1)
        for (std::size_t j2 = 0; j2 < B.nc(); ++j2) {
          if (j1 == j2) continue;
          // [[a,b],[c,d]] with rows (i1,i2) and columns (j1,j2)
          const Elem &a = B.a[i1][j1], &b = B.a[i1][j2], &c = B.a[i2][j1], &d = B.a[i2][j2];
          if (a.is_zero() || b.is_zero() || d.is_zero()) continue;
          Elem p = c.is_zero() ? c : c * b * (a * d).inv();
          if (seen.insert(p).second) out.push_back(p);
        }
    }
}

}  // namespace detail

/// crat(A): the p with [[1,1],[p,1]] a minor of A.
inline std::vector<Elem> cross_ratios(const PFMatrix& A) {
  std::vector<Elem> out;
  std::unordered_set<Elem, ElemHash> seen;
  for (auto& B : basis_representatives(A)) detail::collect_cross_ratios(B, out, seen);
  canonical_sort(out);
  return out;
}

struct ScaledOverReport {
  bool ok = false;
  std::vector<Elem> outside;        // cross ratios not in the sub-partial field
  std::optional<PFMatrix> witness;  // normalized matrix with all entries in sub
};

inline ScaledOverReport scaled_over_check(const PFMatrix& A, const PF& sub) {
  ScaledOverReport r;
  for (auto& p : cross_ratios(A))
    if (!contains(*sub, p)) r.outside.push_back(p);
  if (!r.outside.empty()) return r;
  PFMatrix N = normalize(A);
  for (auto& row : N.a)
    for (auto& e : row)
      if (!contains(*sub, e)) fail("NotInduced", "cross ratios lie in the sub-partial field but entry " + e.str() + " does not");
  r.ok = true;
  N.pf = sub;
  r.witness = N;
  return r;
}

// ---------------------------------------------------------------------------
// minors

struct MinorWitness {
  std::vector<std::string> basis;     // row labels of the basis representative used
  std::vector<std::string> row_map;   // A-labels of the rows of B, in order
  std::vector<std::string> col_map;   // A-labels of the columns of B
};

/// B is a minor of A: some basis representative of A has a submatrix that is
/// scaling-equivalent to B after permuting rows and columns. `reps` are the
/// basis representatives of A.
inline std::optional<MinorWitness> minor_contains_in(const std::vector<PFMatrix>& reps, const PFMatrix& B) {
  if (reps.empty() || B.nr() + B.nc() > reps[0].nr() + reps[0].nc()) return std::nullopt;
  std::size_t budget = limits().enumeration;
  for (auto& R : reps) {
    if (B.nr() > R.nr() || B.nc() > R.nc()) continue;
    std::vector<std::size_t> rmap, cmap;
    std::vector<bool> rused(R.nr(), false), cused(R.nc(), false);
    std::optional<MinorWitness> found;
    std::function<void()> pick_cols = [&]() {
      if (found) return;
      if (budget-- == 0) throw ResourceLimit("minor search budget exhausted");
      std::size_t j = cmap.size();
      if (j == B.nc()) {
        PFMatrix S = submatrix(R, rmap, cmap);
        if (scaling_equivalent(S, B)) {
          MinorWitness w;
          w.basis = R.rows;
          for (auto i : rmap) w.row_map.push_back(R.rows[i]);
          for (auto c : cmap) w.col_map.push_back(R.cols[c]);
          found = w;
        }
        return;
      }
      for (std::size_t c = 0; c < R.nc(); ++c) {
        if (cused[c]) continue;
        bool ok = true;
        for (std::size_t k = 0; k < B.nr() && ok; ++k) ok = R.a[rmap[k]][c].is_zero() == B.a[k][j].is_zero();
        // 2x2 cross ratios against the columns already placed
        for (std::size_t j2 = 0; j2 < j && ok; ++j2)
          for (std::size_t k1 = 0; k1 < B.nr() && ok; ++k1)
            for (std::size_t k2 = k1 + 1; k2 < B.nr() && ok; ++k2) {
              const Elem &b11 = B.a[k1][j2], &b12 = B.a[k1][j], &b21 = B.a[k2][j2], &b22 = B.a[k2][j];
              if (b11.is_zero() || b12.is_zero() || b21.is_zero() || b22.is_zero()) continue;
              const Elem &r11 = R.a[rmap[k1]][cmap[j2]], &r12 = R.a[rmap[k1]][c], &r21 = R.a[rmap[k2]][cmap[j2]],
                         &r22 = R.a[rmap[k2]][c];
              ok = r11 * r22 * b12 * b21 == r12 * r21 * b11 * b22;
            }
        if (!ok) continue;
        cused[c] = true;
        cmap.push_back(c);
        pick_cols();
        cmap.pop_back();
        cused[c] = false;
      }
    };
    std::function<void()> pick_rows = [&]() {
      if (found) return;
      if (rmap.size() == B.nr()) {
        pick_cols();
        return;
      }
      for (std::size_t i = 0; i < R.nr(); ++i) {
        if (rused[i]) continue;
        rused[i] = true;
        rmap.push_back(i);
        pick_rows();
        rmap.pop_back();
        rused[i] = false;
      }
    };
    pick_rows();
    if (found) return found;
  }
  return std::nullopt;
}

inline std::optional<MinorWitness> minor_contains(const PFMatrix& A, const PFMatrix& B) {
  if (B.nr() + B.nc() > A.nr() + A.nc()) return std::nullopt;
  return minor_contains_in(basis_representatives(A), B);
}

// ---------------------------------------------------------------------------
// ranks and connectivity

/// Rank by unit-pivot elimination; a nonzero entry that cannot be pivoted on
/// means the matrix is not over its partial field.
inline std::size_t rank(std::vector<std::vector<Elem>> m, bool field) {
  std::size_t r = 0;
  std::size_t nr = m.size(), nc = nr ? m[0].size() : 0;
  std::vector<bool> used(nr, false);
  for (std::size_t j = 0; j < nc; ++j) {
    std::size_t p = nr;
    bool nonzero = false;
    for (std::size_t i = 0; i < nr; ++i) {
      if (used[i] || m[i][j].is_zero()) continue;
      nonzero = true;
      if (detail::usable_pivot(m[i][j], field)) {
        p = i;
        break;
      }
    }
    if (p == nr) {
      if (nonzero) fail("EntryLeavesPartialField", "elimination reached a nonzero non-unit entry");
      continue;
    }
    used[p] = true;
    ++r;
    Elem inv = m[p][j].inv();
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == p || m[i][j].is_zero()) continue;
      Elem f = m[i][j] * inv;
      for (std::size_t k = j; k < nc; ++k)
        if (!m[p][k].is_zero()) m[i][k] = m[i][k] - f * m[p][k];
    }
  }
  return r;
}

inline std::size_t rank(const PFMatrix& A) { return rank(A.a, detail::ring_is_field(A.pf->ring)); }

/// Rank of A[rows in rmask, cols in cmask].
inline std::size_t masked_rank(const PFMatrix& A, std::uint64_t rmask, std::uint64_t cmask) {
  std::vector<std::size_t> ri, ci;
  for (std::size_t i = 0; i < A.nr(); ++i)
    if (rmask >> i & 1) ri.push_back(i);
  for (std::size_t j = 0; j < A.nc(); ++j)
    if (cmask >> j & 1) ci.push_back(j);
  if (ri.empty() || ci.empty()) return 0;
  return rank(submatrix(A, ri, ci));
}

/// lambda of A[E'] at Z, where E' and Z are given as row/column masks.
inline std::size_t masked_lambda(const PFMatrix& A, std::uint64_t er, std::uint64_t ec, std::uint64_t zr, std::uint64_t zc) {
  zr &= er;
  zc &= ec;
  return masked_rank(A, zr, ec & ~zc) + masked_rank(A, er & ~zr, zc);
}

struct LabelMasks {
  std::uint64_t rows = 0, cols = 0;
};

inline LabelMasks label_masks(const PFMatrix& A, const std::set<std::string>& Z) {
  if (A.nr() > 64 || A.nc() > 64) throw ResourceLimit("matrices are limited to 64 rows and columns");
  LabelMasks m;
  for (auto& l : Z) {
    int i = A.row_of(l), j = A.col_of(l);
    if (i >= 0) m.rows |= std::uint64_t(1) << i;
    else if (j >= 0) m.cols |= std::uint64_t(1) << j;
    else fail("UnknownLabel", "label " + l + " is not in the matrix");
  }
  return m;
}

inline std::size_t connectivity_lambda(const PFMatrix& A, const std::set<std::string>& Z) {
  auto m = label_masks(A, Z);
  std::uint64_t all_r = A.nr() == 64 ? ~0ull : ((1ull << A.nr()) - 1);
  std::uint64_t all_c = A.nc() == 64 ? ~0ull : ((1ull << A.nc()) - 1);
  return masked_lambda(A, all_r, all_c, m.rows, m.cols);
}

// ---------------------------------------------------------------------------
// blocking sequences

struct SeparationReport {
  std::set<std::string> side1, side2;
  std::size_t lambda = 0;  // of the input separation in A[E']
  std::size_t k = 0;
  enum class Kind { BlockingSequence, InducedSeparation } kind = Kind::InducedSeparation;
  std::vector<std::string> sequence;         // blocking sequence
  std::set<std::string> induced1, induced2;  // induced separation of A
};

struct SeparationInput {
  LabelMasks e, z1;
  std::size_t k;
};

inline SeparationInput validate_separation(const PFMatrix& A, const std::set<std::string>& Eprime,
                                           const std::set<std::string>& Z1) {
  for (auto& l : Z1)
    if (!Eprime.count(l)) fail("NotExactSeparation", "side " + l + " is outside E'");
  SeparationInput in{label_masks(A, Eprime), label_masks(A, Z1), 0};
  std::size_t lam = masked_lambda(A, in.e.rows, in.e.cols, in.z1.rows, in.z1.cols);
  in.k = lam + 1;
  std::size_t s1 = Z1.size(), s2 = Eprime.size() - Z1.size();
  if (s1 < in.k || s2 < in.k) fail("NotExactSeparation", "sides are smaller than k = " + std::to_string(in.k));
  return in;
}

namespace detail {

inline std::uint64_t bit(std::size_t i) { return std::uint64_t(1) << i; }

// elements outside E' as (is_row, index)
inline std::vector<std::pair<bool, std::size_t>> outside(const PFMatrix& A, const LabelMasks& e) {
  std::vector<std::pair<bool, std::size_t>> out;
  for (std::size_t i = 0; i < A.nr(); ++i)
    if (!(e.rows >> i & 1)) out.push_back({true, i});
  for (std::size_t j = 0; j < A.nc(); ++j)
    if (!(e.cols >> j & 1)) out.push_back({false, j});
  return out;
}

inline void add(LabelMasks& m, const std::pair<bool, std::size_t>& v) {
  if (v.first) m.rows |= bit(v.second);
  else m.cols |= bit(v.second);
}

}  // namespace detail

/// Shortest blocking sequence for (Z1, E' - Z1), or nullopt. A shortest path in
/// the graph of conditions (i)-(iii) has no proper subsequence satisfying them.
inline std::optional<std::vector<std::string>> find_blocking_sequence(const PFMatrix& A, const std::set<std::string>& Eprime,
                                                                      const std::set<std::string>& Z1) {
  auto in = validate_separation(A, Eprime, Z1);
  auto out = detail::outside(A, in.e);
  auto lam_with = [&](std::initializer_list<std::size_t> extra, std::optional<std::size_t> zextra) {
    LabelMasks e = in.e, z = in.z1;
    for (auto v : extra) detail::add(e, out[v]);
    if (zextra) detail::add(z, out[*zextra]);
    return masked_lambda(A, e.rows, e.cols, z.rows, z.cols);
  };
  std::size_t n = out.size();
  std::vector<bool> first(n), last(n);
  for (std::size_t v = 0; v < n; ++v) {
    first[v] = lam_with({v}, std::nullopt) == in.k;
    last[v] = lam_with({v}, v) == in.k;
  }
  std::vector<long> prev(n, -2);
  std::deque<std::size_t> q;
  for (std::size_t v = 0; v < n; ++v)
    if (first[v]) {
      prev[v] = -1;
      q.push_back(v);
    }
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop_front();
    if (last[v]) {
      std::vector<std::string> seq;
      for (long u = long(v); u >= 0; u = prev[std::size_t(u)])
        seq.push_back(out[std::size_t(u)].first ? A.rows[out[std::size_t(u)].second] : A.cols[out[std::size_t(u)].second]);
      std::reverse(seq.begin(), seq.end());
      return seq;
    }
    for (std::size_t w = 0; w < n; ++w) {
      if (prev[w] != -2) continue;
      if (lam_with({v, w}, v) == in.k) {
        prev[w] = long(v);
        q.push_back(w);
      }
    }
  }
  return std::nullopt;
}

/// Checks conditions (i)-(iv) of a blocking sequence directly.
inline bool is_blocking_sequence(const PFMatrix& A, const std::set<std::string>& Eprime, const std::set<std::string>& Z1,
                                 const std::vector<std::string>& seq) {
  auto in = validate_separation(A, Eprime, Z1);
  auto holds = [&](const std::vector<std::string>& s) {
    if (s.empty()) return false;
    auto lam = [&](std::vector<std::string> extra, std::vector<std::string> zextra) {
      std::set<std::string> E = Eprime, Z = Z1;
      E.insert(extra.begin(), extra.end());
      Z.insert(zextra.begin(), zextra.end());
      auto e = label_masks(A, E), z = label_masks(A, Z);
      return masked_lambda(A, e.rows, e.cols, z.rows, z.cols);
    };
    if (lam({s[0]}, {}) != in.k) return false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (lam({s[i], s[i + 1]}, {s[i]}) != in.k) return false;
    return lam({s.back()}, {s.back()}) == in.k;
  };
  for (auto& v : seq)
    if (Eprime.count(v) || !A.has_label(v)) return false;
  if (!holds(seq)) return false;
  std::size_t t = seq.size();
  if (t > 20) throw ResourceLimit("blocking sequence too long for the minimality check");
  for (std::uint32_t mask = 1; mask + 1 < (1u << t); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < t; ++i)
      if (mask >> i & 1) sub.push_back(seq[i]);
    if (holds(sub)) return false;
  }
  return true;
}

/// A k-separation of A extending (Z1, E' - Z1), by exhaustive extension.
inline std::optional<std::pair<std::set<std::string>, std::set<std::string>>> find_induced_separation(
    const PFMatrix& A, const std::set<std::string>& Eprime, const std::set<std::string>& Z1) {
  auto in = validate_separation(A, Eprime, Z1);
  auto out = detail::outside(A, in.e);
  if (out.size() > std::size_t(limits().ground) + 6) throw ResourceLimit("too many elements outside E' for exhaustive extension");
  std::uint64_t all_r = (1ull << A.nr()) - 1, all_c = (1ull << A.nc()) - 1;
  for (std::uint64_t mask = 0; mask < (1ull << out.size()); ++mask) {
    LabelMasks z = in.z1;
    for (std::size_t v = 0; v < out.size(); ++v)
      if (mask >> v & 1) detail::add(z, out[v]);
    if (masked_lambda(A, all_r, all_c, z.rows, z.cols) < in.k) {
      std::set<std::string> s1, s2;
      for (std::size_t i = 0; i < A.nr(); ++i) (z.rows >> i & 1 ? s1 : s2).insert(A.rows[i]);
      for (std::size_t j = 0; j < A.nc(); ++j) (z.cols >> j & 1 ? s1 : s2).insert(A.cols[j]);
      return std::make_pair(s1, s2);
    }
  }
  return std::nullopt;
}

inline SeparationReport blocking_or_induced(const PFMatrix& A, const std::set<std::string>& Eprime, const std::set<std::string>& Z1) {
  auto in = validate_separation(A, Eprime, Z1);
  SeparationReport r;
  r.side1 = Z1;
  for (auto& l : Eprime)
    if (!Z1.count(l)) r.side2.insert(l);
  r.k = in.k;
  r.lambda = in.k - 1;
  if (auto s = find_blocking_sequence(A, Eprime, Z1)) {
    r.kind = SeparationReport::Kind::BlockingSequence;
    r.sequence = *s;
    return r;
  }
  auto ind = find_induced_separation(A, Eprime, Z1);
  if (!ind) fail("InternalError", "neither a blocking sequence nor an induced separation exists");
  r.kind = SeparationReport::Kind::InducedSeparation;
  r.induced1 = ind->first;
  r.induced2 = ind->second;
  return r;
}

// ---------------------------------------------------------------------------
// homomorphic images and tensor products

inline PFMatrix map_matrix(const PFHom& h, const PFMatrix& A) {
  PFMatrix B;
  B.pf = h.dst;
  B.rows = A.rows;
  B.cols = A.cols;
  for (auto& r : A.a) {
    std::vector<Elem> row;
    for (auto& e : r) row.push_back(apply(h, e));
    B.a.push_back(std::move(row));
  }
  return B;
}

/// A1 (x) A2 over P1 (x) P2: entrywise pairs. Labels must agree.
inline PFMatrix tensor(const PFMatrix& A1, const PFMatrix& A2) {
  if (A1.rows != A2.rows || A1.cols != A2.cols) fail("ShapeMismatch", "tensor needs matching labels");
  PF P = product_pf(A1.pf, A2.pf);
  auto* PR = as<ProductRing>(P->ring);
  PFMatrix B;
  B.pf = P;
  B.rows = A1.rows;
  B.cols = A1.cols;
  for (std::size_t i = 0; i < A1.nr(); ++i) {
    std::vector<Elem> row;
    for (std::size_t j = 0; j < A1.nc(); ++j) {
      if (A1.a[i][j].is_zero() != A2.a[i][j].is_zero()) fail("ShapeMismatch", "zero patterns differ");
      row.push_back(PR->pair(A1.a[i][j], A2.a[i][j]));
    }
    B.a.push_back(std::move(row));
  }
  return B;
}

}  // namespace pfkit

#endif
