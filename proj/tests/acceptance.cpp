// Acceptance run: one PASS/FAIL line per criterion, with time limits pinned below.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "pfkit/pfkit.hpp"

using namespace pfkit;

namespace {

// Collects the first failed requirement of a criterion.
struct Check {
  std::string failure;
  std::ostringstream info;
  bool operator()(bool ok, const std::string& what) {
    if (!ok && failure.empty()) failure = what;
    return ok;
  }
};

using Set = std::set<std::string>;

Set strs(const std::vector<Elem>& v) {
  Set s;
  for (auto& e : v) s.insert(e.str());
  return s;
}

Set parsed(const PF& P, std::initializer_list<const char*> texts) {
  Set s;
  for (auto t : texts) s.insert(P->elem(t).str());
  return s;
}

Matroid named(const std::string& n) { return make_named(n).matroid; }

Matroid fixture_matroid(const std::string& name) {
  auto j = io::read_json_file("fixtures/" + name + ".json");
  return j.contains("bases") ? io::matroid_from_json(j).matroid : from_matrix(io::matrix_from_json(j));
}

PFMatrix random_matrix(const PF& pf, std::size_t r, std::size_t c, std::mt19937& rng, double density) {
  auto& units = *pf->units;
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  std::bernoulli_distribution keep(density);
  PFMatrix A = zero_matrix(pf, default_labels("x", r), default_labels("y", c));
  for (auto& row : A.a)
    for (auto& e : row)
      if (keep(rng)) e = units[pick(rng)];
  return A;
}

std::vector<Elem> random_units(const PF& pf, std::size_t n, std::mt19937& rng) {
  auto& units = *pf->units;
  std::uniform_int_distribution<std::size_t> pick(0, units.size() - 1);
  std::vector<Elem> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(units[pick(rng)]);
  return v;
}

std::vector<Elem> nonzero(std::vector<Elem> v) {
  std::erase_if(v, [](const Elem& e) { return e.is_zero(); });
  return v;
}

bool same_bases(const Matroid& a, const Matroid& b) {
  auto fam = [](const Matroid& M) {
    std::set<Set> f;
    for (Mask m : M.bases) {
      auto l = M.labels_of(m);
      f.insert({l.begin(), l.end()});
    }
    return f;
  };
  return fam(a) == fam(b);
}

PF square(unsigned q) {
  PF g = gf_pf(q);
  return product_pf(g, g);
}

// ------------------------------------------------------------------ criteria

void fun_sets(Check& c) {
  auto timed = [&](const PF& P, const Set& expect, const std::string& name) {
    auto t0 = std::chrono::steady_clock::now();
    bool eq = strs(fun_enumerate(P).elements) == expect;
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c(eq, "fun(" + name + ") differs");
    c(s <= 1.0, "fun(" + name + ") exceeded 1 s");
    c.info << name << " " << expect.size() << " ";
  };
  auto D = catalog("D"), U1 = catalog("U1"), S = catalog("S"), H2 = catalog("H2");
  timed(D, parsed(D, {"0", "1", "-1", "2", "1/2"}), "D");
  timed(U1, parsed(U1, {"0", "1", "a", "1-a", "1/(1-a)", "a/(a-1)", "(a-1)/a", "1/a"}), "U1");
  timed(S, parsed(S, {"0", "1", "zeta", "1-zeta"}), "S");
  timed(H2, parsed(H2, {"0", "1", "-1", "2", "1/2", "i", "i+1", "(i+1)/2", "1-i", "(1-i)/2", "-i"}), "H2");
}

void fun_h3(Check& c) {
  auto H3 = catalog("H3");
  auto fs = fun_enumerate(H3);
  Set expect;
  for (auto t : {"1", "a", "a^2-a+1", "a^2/(a-1)", "-a/(a-1)^2"})
    for (auto& e : associates(H3->elem(t), *H3)) expect.insert(e.str());
  Set got = strs(fs.elements);
  c(got == expect, "fun(H3) differs from the associate closure");
  for (auto& p : fs.elements) {
    c(contains(H3, H3->one() - p), "1 - " + p.str() + " is not in H3");
    for (auto& q : associates(p, *H3)) c(got.count(q.str()) > 0, "fun(H3) not closed under associates");
  }
  c.info << "|fun(H3)| = " << got.size();
}

void counts(Check& c) {
  PF G5 = gf_pf(5);
  std::map<std::string, std::size_t> expect{{"U(2,4)", 3}, {"U(2,5)", 6}, {"F7", 0}, {"P8", 1}};
  for (auto& [n, k] : expect) {
    auto got = count_representations(named(n), G5);
    c(got == k, n + " over GF(5): " + std::to_string(got));
    c.info << n << "=" << got << " ";
  }
  for (unsigned q : {3u, 4u, 5u, 7u, 8u, 9u}) {
    auto got = count_representations(named("U(2,4)"), gf_pf(q));
    c(got == q - 2, "U(2,4) over GF(" + std::to_string(q) + "): " + std::to_string(got));
    c(got == fun_enumerate(gf_pf(q)).elements.size() - 2, "|fun| - 2 mismatch at q = " + std::to_string(q));
  }
}

void p8_universal(Check& c) {
  const std::vector<std::string> basis{"1", "2", "3", "4"};
  const std::vector<Edge> tree{{"1", "6"}, {"1", "7"}, {"2", "5"}, {"2", "7"}, {"2", "8"}, {"3", "8"}, {"4", "7"}};
  const std::map<std::string, std::string> forced{{"a1_8", "2"}, {"a3_5", "1"}, {"a3_6", "1"}, {"a4_5", "2"}, {"a4_6", "1"}};
  auto U = universal_pf(named("P8"), basis, tree);
  for (auto& [v, value] : forced) c(U.symbol(v).str() == value, v + " is not forced to " + value);
  std::vector<Elem> img;
  for (auto& v : U.presentation.variables) img.push_back(U.symbol(v));
  auto D = catalog("D");
  std::size_t good = 0;
  for (auto& d : U.presentation.basis_dets) {
    auto e = detail::eval_zpoly(d, img, U.ring);
    bool in_d = false;
    try {
      in_d = contains(D, D->elem(e.str()));
    } catch (const Error&) {
    }
    good += in_d;
  }
  c(U.presentation.basis_dets.size() == 60, "P8 does not have 60 bases");
  c(good == U.presentation.basis_dets.size(), "a basis determinant is not +-2^k");
  auto iso = verify_universal_iso(U, D, forced);
  c(iso.ok, "P8 -> D isomorphism failed: " + iso.reason);
  c.info << "dets +-2^k: " << good << "/" << U.presentation.basis_dets.size() << "; ";
  for (auto [n, p] : {std::pair{"Qplus(2)", 2}, std::pair{"Qplus(3)", 3}}) {
    auto Q = universal_pf(named(n));
    c(Q.presentation.ideal.contains(ZPoly(p)), std::string(n) + ": " + std::to_string(p) + " not in the ideal");
    c(!Q.presentation.ideal.contains(ZPoly(1)), std::string(n) + ": trivial ring");
    for (auto& v : Q.presentation.variables) c(Q.ring->nf(Q.symbol(v)).is_constant(), std::string(n) + ": " + v + " is free");
    c(hom_enumerate(Q.pf, gf_pf(unsigned(p))).size() == 1, std::string(n) + ": no unique hom to GF(p)");
    c.info << n << " char " << p << " ";
  }
}

void classification(Check& c) {
  auto C = classify_associate_quotients(false);
  c(C.complete(), "classification incomplete");
  c(C.ambiguous == 0, std::to_string(C.ambiguous) + " ambiguous cases");
  std::size_t bad = 0;
  for (auto& k : C.cases) {
    if (k.verdict == "char3") continue;
    bool named_target = k.verdict == "U0" || k.verdict == "U1" || k.verdict == "D" || k.verdict == "S";
    if (!named_target || k.matches.size() != 1) ++bad;
  }
  c(bad == 0, std::to_string(bad) + " cases without exactly one target");
  for (auto& [k, n] : C.tally) c.info << k << "=" << n << " ";
}

void lift(Check& c) {
  std::vector<PFMatrix> fam;
  for (int k = 1; k <= 3; ++k)
    fam.push_back(io::matrix_from_json(io::read_json_file("fixtures/lift/u24_gf3xgf5_" + std::to_string(k) + ".json")));
  auto L = lift_presentation(fam);
  auto nf = L.ring->nf(L.symbol_of(fam[0].pf->elem("(2,2)")));
  c(nf == ZPoly(2), "symbol of (2,2) reduces to " + nf.to_string(L.symbols));
  c(L.ring->from_int(2).is_unit(), "2 is not invertible");
  auto h = hom_check(L.projection(), {}, false);
  c(h.ok, "projection: " + h.reason);
  for (auto& A : fam) {
    auto N = normalize(A);
    auto lifted = L.lift(N);
    c(*det_and_validate(lifted, DetMode::FullPMatrixCheck).is_pmatrix, "lifted matrix is not a p-matrix");
    c(map_matrix(L.projection(), lifted) == N, "projection does not undo the lift");
  }
  c.info << L.cross_ratios.size() << " cross ratios, " << L.relations.size() << " relations";
}

void hydra(Check& c) {
  for (auto [k, n] : {std::pair{2, 2u}, std::pair{3, 3u}, std::pair{5, 6u}}) {
    auto r = hydra_degeneracy_check(k);
    c(r.ok, "k=" + std::to_string(k) + ": " + r.failure);
    c(r.homs.size() == n, "k=" + std::to_string(k) + ": " + std::to_string(r.homs.size()) + " projections");
    c.info << "k=" << k << " " << r.homs.size() << (r.conditional ? " (conditional) " : " ");
  }
}

void dichotomy(Check& c) {
  for (unsigned q : {5u, 3u}) {
    PF P = square(q);
    PF d = diagonal_sub(P);
    auto Ms = representable_3connected(q, 7);
    std::size_t pairs = 0, bad = 0;
    for (auto& [M, A] : Ms) {
      std::vector<Matroid> Ns;
      for (std::size_t n = 4; n < M.size(); ++n)
        for (int r = 1; r <= M.rank; ++r)
          for (auto& [s, N] : minors_of_size(M, n, r)) {
            if (!is_3connected(N)) continue;
            if (std::none_of(Ns.begin(), Ns.end(), [&](const Matroid& x) { return isomorphic(x, N); })) Ns.push_back(N);
          }
      for (auto& N : Ns) {
        ++pairs;
        auto f = confinement_finite_check(N, M, P, d);
        bool direct = confines_matroid_direct(N, M, P, d).confined;
        bool all = direct;
        for (auto& [s, Mp, form] : confinement_minors(N, M)) all = all && confines_matroid_direct(N, Mp, P, d).confined;
        if (f.confined != all || (f.confined && !direct) || f.confined == f.counterexample.has_value()) ++bad;
      }
    }
    c(pairs > 0, "no pairs over GF(" + std::to_string(q) + ")^2");
    c(bad == 0, std::to_string(bad) + " disagreements over GF(" + std::to_string(q) + ")^2");
    c.info << "GF(" << q << ")^2: " << Ms.size() << " M, " << pairs << " pairs; ";
  }
}

void stabilizers(Check& c) {
  struct Case {
    const char *N, *M;
    unsigned q;
    bool expect;
  };
  for (auto k : std::vector<Case>{{"U(2,5)", "U(2,6)", 5, true},
                                  {"U(2,4)", "U(2,5)", 5, false},
                                  {"U(2,4)", "U(2,5)", 4, true},
                                  {"U(2,4)", "U(2,6)", 7, false}}) {
    auto r = stabilizer_check(named(k.N), named(k.M), gf_pf(k.q));
    std::string tag = std::string(k.N) + "/" + k.M + " GF(" + std::to_string(k.q) + ")";
    c(r.direct == k.expect, tag + " wrong verdict");
    c(r.product == r.direct, tag + " direct and product paths disagree");
    c.info << tag << "=" << (r.direct ? "true " : "false ");
  }
}

void properties(Check& c) {
  std::mt19937 rng(2024);
  PF F5 = gf_pf(5), F7 = gf_pf(7);
  // pivot involution and preservation
  for (int t = 0; t < 12; ++t) {
    auto A = random_matrix(F5, 2 + t % 4, 5 - t % 3, rng, 0.7);
    auto M = from_matrix(A);
    for (std::size_t i = 0; i < A.nr(); ++i)
      for (std::size_t j = 0; j < A.nc(); ++j) {
        if (A.a[i][j].is_zero()) continue;
        auto B = pivot(A, A.rows[i], A.cols[j]);
        c(pivot(B, A.cols[j], A.rows[i]) == A, "pivot is not an involution");
        c(*det_and_validate(B, DetMode::FullPMatrixCheck).is_pmatrix, "pivot left the partial field");
        c(same_bases(from_matrix(B), M), "pivot changed the matroid");
      }
  }
  // det pivot identity
  for (int t = 0; t < 40; ++t) {
    auto A = random_matrix(F7, 4, 4, rng, 0.8);
    Elem d = det(A);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (A.a[i][j].is_zero()) continue;
        std::vector<std::size_t> ri, ci;
        for (std::size_t k = 0; k < 4; ++k) {
          if (k != i) ri.push_back(k);
          if (k != j) ci.push_back(k);
        }
        Elem sign = (i + j) % 2 ? -F7->one() : F7->one();
        c(d == sign * A.a[i][j] * det(submatrix(pivot_at(A, i, j), ri, ci)), "determinant pivot identity");
      }
  }
  // signatures
  std::size_t induced = 0;
  for (int t = 0; t < 25; ++t) {
    auto A = random_matrix(F7, 3, 3, rng, 0.7);
    auto S = scale(A, random_units(F7, 3, rng), random_units(F7, 3, rng));
    std::vector<std::size_t> p{0, 1, 2}, q{0, 1, 2};
    std::vector<std::vector<std::string>> cycles;
    do
      do cycles.push_back({A.rows[p[0]], A.cols[q[0]], A.rows[p[1]], A.cols[q[1]], A.rows[p[2]], A.cols[q[2]]});
      while (std::next_permutation(q.begin(), q.end()));
    while (std::next_permutation(p.begin(), p.end()));
    for (auto& x1 : A.rows)
      for (auto& x2 : A.rows)
        for (auto& y1 : A.cols)
          for (auto& y2 : A.cols)
            if (x1 < x2 && y1 != y2) cycles.push_back({x1, y1, x2, y2});
    for (auto& C : cycles) {
      try {
        validate_cycle(A, C);
      } catch (const Error&) {
        continue;
      }
      Elem s = cycle_signature(A, C).value;
      c(s == cycle_signature(S, C).value, "signature changed under scaling");
      if (is_induced_cycle(A, C)) {
        ++induced;
        c(det(cycle_matrix(A, C)) == F7->one() - s, "induced cycle determinant is not 1 - signature");
      }
    }
  }
  c(induced > 50, "too few induced cycles sampled");
  // cross ratios: minor monotonicity, normalization uniqueness, entry membership
  for (int t = 0; t < 15; ++t) {
    auto A = random_matrix(F7, 3, 4, rng, 0.8);
    auto crA = strs(cross_ratios(A));
    for (auto& R : basis_representatives(A)) {
      auto B = delete_labels(R, {R.rows[0], R.cols[t % R.nc()]});
      for (auto& p : strs(cross_ratios(B))) c(crA.count(p) > 0, "cross ratios not minor-monotone");
    }
    auto S = scale(A, random_units(F7, 3, rng), random_units(F7, 4, rng));
    c(normalize(A) == normalize(S), "normalization not unique under scaling");
  }
  PF P55 = square(5);
  for (int t = 0; t < 10; ++t) {
    auto B = random_matrix(F5, 3, 3, rng, 0.8);
    PFMatrix D = zero_matrix(P55, B.rows, B.cols);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) D.a[i][j] = P55->elem("(" + B.a[i][j].str() + "," + B.a[i][j].str() + ")");
    D = scale(D, random_units(P55, 3, rng), random_units(P55, 3, rng));
    auto sub = generated_subfield(P55, nonzero(cross_ratios(D)));
    for (auto& row : normalize(D).a)
      for (auto& e : row) c(contains(sub, e), "normalized entry outside the cross-ratio sub-partial field");
  }
  // connectivity
  for (int t = 0; t < 8; ++t) {
    auto A = random_matrix(F5, 3, 4, rng, 0.7);
    auto M = from_matrix(A);
    auto L = A.labels();
    for (Mask z = 0; z < M.full(); ++z) {
      Set Z;
      for (std::size_t i = 0; i < L.size(); ++i)
        if (z >> i & 1) Z.insert(L[i]);
      c(int(connectivity_lambda(A, Z)) == lambda(M, M.mask_of_set(Z)), "matrix and matroid lambda disagree");
    }
  }
  // blocking sequences
  std::size_t sequences = 0;
  for (int t = 0; t < 400 && sequences < 60; ++t) {
    auto A = random_matrix(F5, 3, 4 + t % 2, rng, 0.75);
    if (!is_3connected(from_matrix(A))) continue;
    auto L = A.labels();
    std::shuffle(L.begin(), L.end(), rng);
    Set E(L.begin(), L.begin() + 4 + t % 2);
    std::vector<std::string> Ev(E.begin(), E.end());
    Set Z1(Ev.begin(), Ev.begin() + 2);
    SeparationReport r;
    try {
      r = blocking_or_induced(A, E, Z1);
    } catch (const Error& e) {
      c(e.kind() == "NotExactSeparation", "unexpected error " + e.kind());
      continue;
    }
    if (r.kind == SeparationReport::Kind::BlockingSequence) {
      ++sequences;
      c(is_blocking_sequence(A, E, Z1, r.sequence), "returned sequence is not blocking");
      for (std::size_t i = 0; i + 1 < r.sequence.size(); ++i)
        c((A.row_of(r.sequence[i]) >= 0) != (A.row_of(r.sequence[i + 1]) >= 0), "sequence does not alternate X/Y");
    } else {
      c(r.k >= 3 && connectivity_lambda(A, r.induced1) < r.k, "induced separation is not smaller");
    }
  }
  c(sequences > 20, "too few blocking sequences sampled");
  // hom-counting bijection on fixtures; oracle: tests/oracle/oracle.py
  const std::map<std::string, std::array<std::size_t, 4>> oracle{
      {"u24", {0, 1, 2, 3}},  {"u25", {0, 0, 2, 6}},     {"u26", {0, 0, 0, 6}},           {"vamos", {0, 0, 0, 0}},
      {"A1", {0, 0, 2, 1}},   {"A2", {0, 0, 2, 2}},      {"A3", {0, 0, 2, 0}},            {"A7", {1, 0, 1, 0}},
      {"A7minus", {0, 1, 0, 1}}, {"A8", {0, 1, 0, 1}},   {"f7minus_bases", {0, 1, 0, 1}}, {"Qplus2", {1, 0, 1, 0}},
      {"Qplus3", {0, 1, 0, 0}}};
  for (auto& [name, k] : oracle) {
    auto M = fixture_matroid(name);
    std::optional<UniversalPF> U;
    if (is_representable(M)) U = universal_pf(M);
    for (unsigned q = 2; q <= 5; ++q) {
      auto reps = count_representations(M, gf_pf(q));
      // a trivial bracket ring admits no homomorphisms
      auto homs = U ? hom_enumerate(U->pf, gf_pf(q)).size() : 0;
      std::string tag = name + " GF(" + std::to_string(q) + ")";
      c(reps == k[q - 2], tag + ": count " + std::to_string(reps));
      c(homs == reps, tag + ": " + std::to_string(homs) + " homs vs " + std::to_string(reps) + " representations");
    }
  }
  c.info << induced << " induced cycles, " << sequences << " blocking sequences, " << oracle.size() << " fixtures";
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "catalog fun-sets", 4.0, fun_sets},
      {2, "fun(H3) bounded search", 60.0, fun_h3},
      {3, "representation counts", 10.0, counts},
      {4, "P8 universal partial field", 120.0, p8_universal},
      {5, "associate-quotient classification", 300.0, classification},
      {6, "lift reproduction", 30.0, lift},
      {7, "hydra degeneracy", 300.0, hydra},
      {8, "confinement dichotomy", 300.0, dichotomy},
      {9, "stabilizer spot-checks", 60.0, stabilizers},
      {10, "structural properties", 300.0, properties},
  };
  int failed = 0;
  for (auto& k : all) {
    Check c;
    auto t0 = std::chrono::steady_clock::now();
    try {
      k.run(c);
    } catch (const std::exception& e) {
      c(false, std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char limit[64];
    std::snprintf(limit, sizeof limit, "%.1fs exceeds %.0fs", s, k.limit);
    c(s <= k.limit, limit);
    bool ok = c.failure.empty();
    failed += !ok;
    std::printf("%s %2d %s (%.1fs / %.0fs): %s\n", ok ? "PASS" : "FAIL", k.id, k.name, s, k.limit,
                ok ? c.info.str().c_str() : c.failure.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
