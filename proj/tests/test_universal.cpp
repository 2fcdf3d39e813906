#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "pfkit/pfkit.hpp"

using namespace pfkit;

namespace {

Matroid named(const std::string& n) { return make_named(n).matroid; }

Matroid fixture_matroid(const std::string& name) {
  auto j = io::read_json_file("fixtures/" + name + ".json");
  return j.contains("bases") ? io::matroid_from_json(j).matroid : from_matrix(io::matrix_from_json(j));
}

const std::vector<Edge> kP8Tree{{"1", "6"}, {"1", "7"}, {"2", "5"}, {"2", "7"}, {"2", "8"}, {"3", "8"}, {"4", "7"}};
const std::map<std::string, std::string> kP8Assignment{
    {"a1_8", "2"}, {"a3_5", "1"}, {"a3_6", "1"}, {"a4_5", "2"}, {"a4_6", "1"}};

// Signed bracket [seq]: the subdeterminant on the sorted set times the sign of the sorting permutation.
ZPoly ordered_bracket(const Presentation& P, const std::vector<int>& seq) {
  std::vector<int> s = seq;
  int sign = 1;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[i] == s[j]) return ZPoly(0);
      if (s[i] > s[j]) sign = -sign;
    }
  Mask m = 0;
  for (int i : s) m |= Mask(1) << i;
  return ZPoly(sign) * bracket(P, m);
}

}  // namespace

// Oracle values: tests/oracle/oracle.py, "fixture_counts".
const std::map<std::string, std::array<std::size_t, 4>> kFixtureCounts{
    {"u24", {0, 1, 2, 3}},     {"u25", {0, 0, 2, 6}},     {"u26", {0, 0, 0, 6}},   {"vamos", {0, 0, 0, 0}},
    {"f7minus_bases", {0, 1, 0, 1}}, {"A1", {0, 0, 2, 1}}, {"A2", {0, 0, 2, 2}}, {"A3", {0, 0, 2, 0}},
    {"A7", {1, 0, 1, 0}},      {"A7minus", {0, 1, 0, 1}}, {"A8", {0, 1, 0, 1}},   {"Qplus2", {1, 0, 1, 0}},
    {"Qplus3", {0, 1, 0, 0}}};

TEST(Presentation, P8) {
  auto P = bracket_presentation(named("P8"), std::vector<std::string>{"1", "2", "3", "4"}, kP8Tree);
  EXPECT_EQ(P.variables.size(), 5u);
  EXPECT_FALSE(P.trivial());
  auto U = universal_pf(named("P8"), std::vector<std::string>{"1", "2", "3", "4"}, kP8Tree);
  for (auto& [v, value] : kP8Assignment) EXPECT_EQ(U.symbol(v).str(), value) << v;
}

TEST(Presentation, U24HasOneFreeSymbol) {
  auto M = named("U(2,4)");
  for (auto& B : std::vector<std::vector<std::string>>{{"1", "2"}, {"3", "4"}, {"1", "4"}}) {
    auto P = bracket_presentation(M, B);
    EXPECT_EQ(P.variables.size(), 1u);
    EXPECT_TRUE(P.relations.empty());
    EXPECT_TRUE(P.ideal.basis.empty());
  }
  auto U = universal_pf(M);
  EXPECT_EQ(U.cross_ratios.size(), 6u);
  auto r = verify_universal_iso(U, catalog("U1"), {{U.presentation.variables[0], "a"}});
  EXPECT_TRUE(r.ok) << r.reason;
}

TEST(Presentation, RankZero) {
  Matroid L;
  L.ground = {"1"};
  L.bases = {0};
  auto P = bracket_presentation(L);
  EXPECT_TRUE(P.variables.empty());
  EXPECT_FALSE(P.trivial());
}

// Oracle: Vamos has no representation over GF(2), GF(3), GF(4) or GF(5).
TEST(Representable, Examples) {
  EXPECT_TRUE(is_representable(named("U(2,4)")));
  EXPECT_TRUE(is_representable(named("P8")));
  EXPECT_FALSE(is_representable(named("Vamos")));
}

TEST(Count, Examples) {
  EXPECT_EQ(count_representations(named("U(2,5)"), gf_pf(5)), 6u);
  EXPECT_EQ(count_representations(named("U(2,4)"), gf_pf(5)), fun_enumerate(gf_pf(5)).elements.size() - 2);
  EXPECT_EQ(count_representations(named("F7"), gf_pf(2)), 1u);
  EXPECT_EQ(count_representations(named("F7"), gf_pf(3)), 0u);
  // Oracle: U(2,4) has q - 2 representations over GF(q).
  for (unsigned q : {3u, 4u, 5u, 7u, 8u, 9u}) EXPECT_EQ(count_representations(named("U(2,4)"), gf_pf(q)), q - 2);
}

TEST(Count, FixturesAgainstOracle) {
  for (auto& [name, counts] : kFixtureCounts) {
    auto M = fixture_matroid(name);
    for (unsigned q = 2; q <= 5; ++q) {
      EXPECT_EQ(count_representations(M, gf_pf(q)), counts[q - 2]) << name << " GF(" << q << ")";
      EXPECT_EQ(count_representations(dual(M), gf_pf(q)), counts[q - 2]) << name << "* GF(" << q << ")";
    }
  }
}

// Representations over GF(q) correspond to homomorphisms out of the universal partial field.
TEST(Count, HomBijection) {
  for (auto n : {"U(2,4)", "U(2,5)", "F7-", "F7", "P8"}) {
    auto M = named(n);
    auto U = universal_pf(M);
    for (unsigned q : {2u, 3u, 4u, 5u, 7u})
      EXPECT_EQ(hom_enumerate(U.pf, gf_pf(q)).size(), count_representations(M, gf_pf(q))) << n << " " << q;
  }
}

TEST(Universal, P8IsDyadic) {
  auto U = universal_pf(named("P8"), std::vector<std::string>{"1", "2", "3", "4"}, kP8Tree);
  auto r = verify_universal_iso(U, catalog("D"), kP8Assignment);
  EXPECT_TRUE(r.ok) << r.reason;
  std::vector<Elem> img;
  for (auto& v : U.presentation.variables) img.push_back(U.symbol(v));
  EXPECT_EQ(U.presentation.basis_dets.size(), 60u);
  auto D = catalog("D");
  for (auto& d : U.presentation.basis_dets) {
    auto e = detail::eval_zpoly(d, img, U.ring);
    EXPECT_TRUE(contains(D, D->elem(e.str()))) << e.str();
  }
  std::map<std::string, std::string> ones;
  for (auto& v : U.presentation.variables) ones[v] = "1";
  EXPECT_FALSE(verify_universal_iso(U, catalog("U0"), ones).ok);
}

TEST(Universal, QPlusIsPrimeField) {
  auto Q2 = universal_pf(named("Qplus(2)"));
  EXPECT_TRUE(Q2.presentation.ideal.contains(ZPoly(2)));
  auto Q3 = universal_pf(named("Qplus(3)"));
  EXPECT_TRUE(Q3.presentation.ideal.contains(ZPoly(3)));
  EXPECT_FALSE(Q3.presentation.ideal.contains(ZPoly(1)));
  for (auto* U : {&Q2, &Q3})
    for (auto& v : U->presentation.variables) EXPECT_TRUE(U->ring->nf(U->symbol(v)).is_constant()) << v;
}

TEST(Universal, GrassmannPluecker) {
  for (auto n : {"U(2,5)", "P8"}) {
    auto M = named(n);
    auto P = bracket_presentation(M);
    int r = M.rank, sz = int(M.size());
    std::size_t checked = 0;
    for (int x1 = 0; x1 < sz; ++x1)
      for (int x2 = 0; x2 < sz; ++x2)
        for (int y1 = 0; y1 < sz; ++y1)
          for (int y2 = 0; y2 < sz; ++y2) {
            if ((x1 * 7 + x2 * 5 + y1 * 3 + y2) % 11) continue;  // a fixed sample
            std::vector<int> U;
            for (int u = sz - 1; int(U.size()) < r - 2; --u) U.push_back(u);
            auto br = [&](int a, int b) {
              std::vector<int> s{a, b};
              s.insert(s.end(), U.begin(), U.end());
              return ordered_bracket(P, s);
            };
            ZPoly rel = br(x1, x2) * br(y1, y2) - br(y1, x2) * br(x1, y2) - br(y2, x2) * br(y1, x1);
            EXPECT_TRUE(P.ideal.contains(rel)) << n;
            ++checked;
          }
    EXPECT_GT(checked, 20u);
  }
}

TEST(Universal, CrossRatiosIndependentOfBasis) {
  for (auto n : {"U(2,5)", "F7-", "P8"}) {
    auto M = named(n);
    std::size_t first = 0;
    for (std::size_t k = 0; k < M.bases.size(); k += M.bases.size() / 3 + 1) {
      auto U = universal_pf(M, M.labels_of(M.bases[k]));
      if (k == 0) first = U.cross_ratios.size();
      EXPECT_EQ(U.cross_ratios.size(), first) << n;
    }
  }
  auto A = representations(named("U(2,5)"), gf_pf(7)).front();
  std::set<std::string> crA;
  for (auto& p : cross_ratios(A)) crA.insert(p.str());
  for (auto& R : basis_representatives(A)) {
    std::set<std::string> crR;
    for (auto& p : cross_ratios(R)) crR.insert(p.str());
    EXPECT_EQ(crR, crA);
  }
}

// Pivots of the distinguished matrix stay over the universal partial field and keep the matroid.
TEST(Universal, PivotCoherence) {
  auto M = named("F7-");
  auto U = universal_pf(M);
  for (std::size_t i = 0; i < U.matrix.nr(); ++i)
    for (std::size_t j = 0; j < U.matrix.nc(); ++j) {
      if (U.matrix.a[i][j].is_zero()) continue;
      auto B = pivot(U.matrix, U.matrix.rows[i], U.matrix.cols[j]);
      EXPECT_TRUE(*det_and_validate(B, DetMode::FullPMatrixCheck).is_pmatrix);
      EXPECT_TRUE(isomorphic(from_matrix(B), M));
    }
}

TEST(Settles, Examples) {
  auto U24 = named("U(2,4)");
  for (auto n : {"F7-", "P8"}) {
    auto M = named(n);
    auto pos = minor_positions(M, U24);
    ASSERT_FALSE(pos.empty()) << n;
    EXPECT_TRUE(settles_check(U24, M, pos.front())) << n;
  }
  for (auto n : {"F7", "U(2,5)", "P8"}) EXPECT_TRUE(settles_check(named(n), named(n), MinorSpec{})) << n;
  auto U25 = named("U(2,5)");
  EXPECT_FALSE(settles_check(U24, U25, minor_positions(U25, U24).front()));
  EXPECT_THROW(settles_check(named("F7"), U25, MinorSpec{}), Error);
}
