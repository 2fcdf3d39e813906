#include <gtest/gtest.h>

#include <set>

#include "pfkit/pfkit.hpp"

using namespace pfkit;

namespace {

Matroid named(const std::string& n) { return make_named(n).matroid; }

PFMatrix load(const std::string& path) { return io::matrix_from_json(io::read_json_file("fixtures/" + path)); }

PF square(unsigned q) {
  PF g = gf_pf(q);
  return product_pf(g, g);
}

}  // namespace

// Oracle ("confine"): over GF(3)^2 the single representation of U(2,4) containing
// B is diagonal; over GF(5)^2 all 36 representations of U(2,5) contain B and
// 30 of them are off-diagonal.
TEST(ConfinesDirect, Examples) {
  PF P3 = square(3), P5 = square(5);
  auto v3 = confines_direct(load("confine/b_gf3sq.json"), named("U(2,4)"), P3, diagonal_sub(P3));
  EXPECT_TRUE(v3.confined);
  EXPECT_EQ(v3.representations, 1u);
  auto v5 = confines_direct(load("confine/b_gf5sq.json"), named("U(2,5)"), P5, diagonal_sub(P5));
  EXPECT_FALSE(v5.confined);
  ASSERT_TRUE(v5.counterexample);
  EXPECT_FALSE(v5.counterexample->outside.empty());
  EXPECT_EQ(v5.counterexample->form, "M");
  EXPECT_FALSE(scaled_over_check(v5.counterexample->A, diagonal_sub(P5)).ok);
  EXPECT_TRUE(minor_contains(v5.counterexample->A, load("confine/b_gf5sq.json")));
  auto v4 = confines_direct(load("confine/b_gf5sq.json"), named("U(2,4)"), P5, diagonal_sub(P5));
  EXPECT_TRUE(v4.confined);
  EXPECT_EQ(v4.representations, 9u);
}

TEST(ConfinesDirect, VacuousWithoutRepresentations) {
  PF P3 = square(3);
  auto v = confines_direct(load("confine/b_gf3sq.json"), named("F7"), P3, diagonal_sub(P3));
  EXPECT_TRUE(v.confined);
  EXPECT_EQ(v.representations, 0u);
}

TEST(ConfinesDirect, Transposition) {
  for (unsigned q : {3u, 5u}) {
    PF P = square(q);
    PF d = diagonal_sub(P);
    auto B = load(q == 3 ? "confine/b_gf3sq.json" : "confine/b_gf5sq.json");
    for (auto n : {"U(2,4)", "U(2,5)", "F7-"}) {
      auto M = named(n);
      EXPECT_EQ(confines_direct(B, M, P, d).confined, confines_direct(transpose(B), dual(M), P, d).confined) << n << " " << q;
    }
  }
}

TEST(ConfinementTheorem, U24InU25) {
  PF P = square(5);
  auto v = confinement_finite_check(named("U(2,4)"), named("U(2,5)"), P, diagonal_sub(P));
  EXPECT_FALSE(v.confined);
  ASSERT_TRUE(v.counterexample);
  EXPECT_TRUE(isomorphic(v.counterexample->minor, named("U(2,5)")));
}

TEST(ConfinementTheorem, SelfAgreesWithDirect) {
  for (unsigned q : {3u, 5u}) {
    PF P = square(q);
    PF d = diagonal_sub(P);
    for (auto n : {"U(2,4)", "U(2,5)"}) {
      auto M = named(n);
      EXPECT_EQ(confinement_finite_check(M, M, P, d).confined, confines_matroid_direct(M, M, P, d).confined) << n;
    }
  }
}

// The ternary U(2,4) representation confines every ternary 3-connected matroid containing it.
TEST(ConfinementTheorem, TernaryU24) {
  PF P = square(3);
  PF d = diagonal_sub(P);
  auto U24 = named("U(2,4)");
  for (auto n : {"F7-", "P8", "A3"}) {
    auto M = named(n);
    if (!has_minor(M, U24) || count_representations(M, gf_pf(3)) == 0) continue;
    EXPECT_TRUE(confinement_finite_check(U24, M, P, d).confined) << n;
  }
}

// Both verdict branches of the finite check against the exhaustive direct check over GF(3)^2.
TEST(ConfinementTheorem, DichotomyGF3) {
  PF P = square(3);
  PF d = diagonal_sub(P);
  std::size_t pairs = 0;
  for (auto& [M, A] : representable_3connected(3, 7)) {
    std::vector<Matroid> Ns;
    for (std::size_t n = 4; n < M.size(); ++n)
      for (int r = 1; r <= M.rank; ++r)
        for (auto& [s, N] : minors_of_size(M, n, r)) {
          if (!is_3connected(N)) continue;
          bool dup = false;
          for (auto& x : Ns) dup = dup || isomorphic(x, N);
          if (!dup) Ns.push_back(N);
        }
    for (auto& N : Ns) {
      ++pairs;
      auto f = confinement_finite_check(N, M, P, d);
      bool direct = confines_matroid_direct(N, M, P, d).confined;
      bool all = direct;
      for (auto& [s, Mp, form] : confinement_minors(N, M)) all = all && confines_matroid_direct(N, Mp, P, d).confined;
      EXPECT_EQ(f.confined, all);
      EXPECT_NE(f.confined, f.counterexample.has_value());
      EXPECT_TRUE(!f.confined || direct);
    }
  }
  EXPECT_GT(pairs, 10u);
}

// Oracle ("stabilizer"): maximum number of extensions of one representation of N.
TEST(Stabilizer, Examples) {
  struct Case {
    const char *N, *M;
    unsigned q;
    bool expect;
  };
  for (auto c : std::vector<Case>{{"U(2,5)", "U(2,6)", 5, true},
                                  {"U(2,4)", "U(2,5)", 5, false},
                                  {"U(2,4)", "U(2,5)", 4, true},
                                  {"U(2,4)", "U(2,6)", 7, false},
                                  {"U(2,5)", "U(2,5)", 5, true}}) {
    auto r = stabilizer_check(named(c.N), named(c.M), gf_pf(c.q));
    EXPECT_EQ(r.direct, c.expect) << c.N << " " << c.M << " " << c.q;
    EXPECT_EQ(r.product, r.direct) << c.N << " " << c.M << " " << c.q;
    EXPECT_EQ(r.witness.has_value(), !c.expect);
  }
}

TEST(Lift, GF3xGF5) {
  std::vector<PFMatrix> fam;
  for (int k = 1; k <= 3; ++k) fam.push_back(load("lift/u24_gf3xgf5_" + std::to_string(k) + ".json"));
  auto L = lift_presentation(fam);
  PF base = fam[0].pf;
  EXPECT_EQ(L.ring->nf(L.symbol_of(base->elem("(2,2)"))), ZPoly(2));
  EXPECT_EQ(L.ring->nf(L.symbol_of(base->elem("(2,4)"))), ZPoly(-1));
  EXPECT_TRUE(L.ring->from_int(2).is_unit());
  EXPECT_FALSE(L.ring->from_int(3).is_unit());
  auto chk = hom_check(L.projection(), {}, false);
  EXPECT_TRUE(chk.ok) << chk.reason;
  for (auto& A : fam) {
    auto N = normalize(A);
    auto lifted = L.lift(N);
    EXPECT_TRUE(*det_and_validate(lifted, DetMode::FullPMatrixCheck).is_pmatrix);
    EXPECT_EQ(from_matrix(lifted), from_matrix(A));
    EXPECT_EQ(map_matrix(L.projection(), lifted), N);
  }
}

TEST(Lift, RegularFamily) {
  PF base = catalog("GF(3)xGF(5)");
  auto L = lift_presentation({make_matrix(base, {{"1", "0"}, {"0", "1"}}), make_matrix(base, {{"1", "1"}, {"0", "1"}})});
  for (auto& p : L.cross_ratios) EXPECT_TRUE(p.is_zero() || p.is_one());
  EXPECT_EQ(L.ring->characteristic(), 0);
  for (auto& s : L.symbols) EXPECT_TRUE(L.ring->nf(*L.ring->symbol(s)).is_constant());
  EXPECT_TRUE(hom_check(L.projection(), {}, false).ok);
  EXPECT_THROW(lift_presentation({}), Error);
}

TEST(Classification, Reduced) {
  auto C = classify_associate_quotients(false);
  EXPECT_TRUE(C.complete());
  EXPECT_EQ(C.ambiguous, 0u);
  EXPECT_EQ(C.subsets, std::size_t(1) << 15);
  std::size_t total = 0;
  for (auto& [k, n] : C.tally) {
    EXPECT_TRUE(k == "U0" || k == "U1" || k == "D" || k == "S" || k == "char3") << k;
    total += n;
  }
  EXPECT_EQ(total, C.subsets);
  std::map<std::string, std::string> small;
  for (auto& c : C.cases) {
    EXPECT_LE(c.matches.size(), 1u);
    if (c.D.size() <= 1) {
      std::string key;
      for (auto [a, b] : c.D) key += std::to_string(a) + std::to_string(b);
      small[key] = c.verdict;
    }
  }
  EXPECT_EQ(small[""], "U1");
  EXPECT_EQ(small["12"], "D");
  EXPECT_EQ(small["13"], "S");
}

TEST(Hydra, SmallCases) {
  auto h2 = hydra_degeneracy_check(2);
  EXPECT_TRUE(h2.ok) << h2.failure;
  EXPECT_EQ(h2.homs.size(), 2u);
  auto h3 = hydra_degeneracy_check(3);
  EXPECT_TRUE(h3.ok) << h3.failure;
  EXPECT_EQ(h3.homs.size(), 3u);
  EXPECT_FALSE(h3.conditional);
  EXPECT_THROW(hydra_degeneracy_check(9), Error);
}
