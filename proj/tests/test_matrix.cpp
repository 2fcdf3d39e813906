#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "pfkit/pfkit.hpp"

using namespace pfkit;

namespace {

using Family = std::set<std::set<std::string>>;

Family family(const Matroid& M) {
  Family f;
  for (Mask b : M.bases) {
    auto l = M.labels_of(b);
    f.insert({l.begin(), l.end()});
  }
  return f;
}

std::set<std::string> strs(const std::vector<Elem>& v) {
  std::set<std::string> s;
  for (auto& e : v) s.insert(e.str());
  return s;
}

PFMatrix random_matrix(const PF& pf, std::size_t r, std::size_t c, std::mt19937& rng, double density = 1.0) {
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

PFMatrix fixture(const std::string& name, PF pf = nullptr) {
  return io::matrix_from_json(io::read_json_file("fixtures/" + name + ".json"), pf);
}

bool is_pm_power_of_two(const Elem& e) {
  auto D = catalog("D");
  try {
    return contains(D, D->elem(e.str()));
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

// ---------------------------------------------------------------- determinants and pivots

TEST(Det, Examples) {
  auto U1 = catalog("U1");
  auto r = det_and_validate(make_matrix(U1, {{"1", "1"}, {"a", "1"}}), DetMode::DetOnly);
  ASSERT_TRUE(r.det);
  EXPECT_EQ(*r.det, U1->elem("1 - a"));
  auto bad = det_and_validate(make_matrix(U1, {{"1", "1"}, {"1", "a^2"}}), DetMode::DetOnly);
  EXPECT_FALSE(bad.det);
  EXPECT_EQ(bad.raw, U1->elem("a^2 - 1"));
  auto full = det_and_validate(fixture("A8", gf_pf(3)), DetMode::FullPMatrixCheck);
  ASSERT_TRUE(full.is_pmatrix);
  EXPECT_TRUE(*full.is_pmatrix);
}

TEST(Pivot, Examples) {
  auto Q = catalog("QQ");
  EXPECT_EQ(pivot(make_matrix(Q, {{"3"}}), "x1", "y1").a[0][0], Q->elem("1/3"));
  auto A = make_matrix(Q, {{"1", "1"}, {"1", "2"}});
  auto B = pivot(A, "x1", "y1");
  EXPECT_EQ(B, make_matrix(Q, {{"1", "1"}, {"-1", "1"}}, {"y1", "x2"}, {"x1", "y2"}));
  EXPECT_EQ(pivot(B, "y1", "x1"), A);
  EXPECT_THROW(pivot(make_matrix(Q, {{"0", "1"}}), "x1", "y1"), Error);
}

TEST(Pivot, InvolutionAndPartialFieldPreservation) {
  std::mt19937 rng(11);
  std::vector<PFMatrix> cases;
  for (int t = 0; t < 12; ++t) cases.push_back(random_matrix(gf_pf(5), 2 + t % 4, 5 - t % 3, rng, 0.7));
  cases.push_back(fixture("A8", catalog("D")));
  cases.push_back(transpose(fixture("A8", catalog("D"))));
  for (auto& A : cases) {
    auto fam = family(from_matrix(A));
    ASSERT_TRUE(*det_and_validate(A, DetMode::FullPMatrixCheck).is_pmatrix);
    for (std::size_t i = 0; i < A.nr(); ++i)
      for (std::size_t j = 0; j < A.nc(); ++j) {
        if (A.a[i][j].is_zero()) continue;
        auto B = pivot(A, A.rows[i], A.cols[j]);
        EXPECT_EQ(pivot(B, A.cols[j], A.rows[i]), A);
        EXPECT_TRUE(*det_and_validate(B, DetMode::FullPMatrixCheck).is_pmatrix);
        EXPECT_TRUE(*det_and_validate(transpose(B), DetMode::FullPMatrixCheck).is_pmatrix);
        EXPECT_EQ(family(from_matrix(B)), fam);
      }
  }
}

// det(A) = (-1)^(i+j) A_ij det(A^{xy} - {x,y}) for square A.
TEST(Pivot, DeterminantIdentityGF7) {
  std::mt19937 rng(7);
  PF F = gf_pf(7);
  for (int t = 0; t < 40; ++t) {
    auto A = random_matrix(F, 4, 4, rng, 0.8);
    Elem d = det(A);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        if (A.a[i][j].is_zero()) continue;
        auto P = pivot_at(A, i, j);
        std::vector<std::size_t> ri, ci;
        for (std::size_t k = 0; k < 4; ++k) {
          if (k != i) ri.push_back(k);
          if (k != j) ci.push_back(k);
        }
        Elem sign = (i + j) % 2 ? -F->one() : F->one();
        EXPECT_EQ(d, sign * A.a[i][j] * det(submatrix(P, ri, ci)));
      }
  }
}

// ---------------------------------------------------------------- normalization and signatures

TEST(Normalize, Examples) {
  auto Q = catalog("QQ");
  auto A = make_matrix(Q, {{"2", "4"}, {"6", "8"}});
  Forest T{{"x1", "y1"}, {"x1", "y2"}, {"x2", "y1"}};
  auto N = normalize(A, T);
  // Oracle: 2*8/(4*6) = 2/3.
  EXPECT_EQ(N, make_matrix(Q, {{"1", "1"}, {"1", "2/3"}}));
  EXPECT_EQ(normalize(N, T), N);
}

TEST(Normalize, UniqueUnderScaling) {
  std::mt19937 rng(3);
  PF F = gf_pf(7);
  for (int t = 0; t < 30; ++t) {
    auto A = random_matrix(F, 3, 4, rng, 0.75);
    auto S = scale(A, random_units(F, 3, rng), random_units(F, 4, rng));
    EXPECT_EQ(normalize(A), normalize(S));
    EXPECT_TRUE(scaling_equivalent(A, S));
  }
}

TEST(Signature, Examples) {
  auto U1 = catalog("U1");
  auto A = make_matrix(U1, {{"1", "1"}, {"1", "a"}});
  std::vector<std::string> C{"x1", "y1", "x2", "y2"};
  auto s = cycle_signature(A, C);
  EXPECT_EQ(s.value, U1->elem("a"));
  EXPECT_EQ(det(cycle_matrix(A, C)), U1->one() - s.value);
  auto ones = make_matrix(catalog("QQ"), {{"1", "1", "1"}, {"1", "1", "1"}});
  EXPECT_TRUE(cycle_signature(ones, {"x1", "y2", "x2", "y3"}).value.is_one());
}

TEST(Signature, ScaleInvarianceAndInducedCycleDeterminant) {
  std::mt19937 rng(5);
  PF F = gf_pf(7);
  std::size_t induced = 0;
  for (int t = 0; t < 25; ++t) {
    auto A = random_matrix(F, 3, 3, rng, 0.7);
    auto S = scale(A, random_units(F, 3, rng), random_units(F, 3, rng));
    std::vector<std::string> xs = A.rows, ys = A.cols;
    std::vector<std::vector<std::string>> cycles;
    for (auto& x1 : xs)
      for (auto& x2 : xs)
        for (auto& y1 : ys)
          for (auto& y2 : ys)
            if (x1 < x2 && y1 != y2) cycles.push_back({x1, y1, x2, y2});
    std::vector<std::size_t> p{0, 1, 2}, q{0, 1, 2};
    do
      do cycles.push_back({xs[p[0]], ys[q[0]], xs[p[1]], ys[q[1]], xs[p[2]], ys[q[2]]});
      while (std::next_permutation(q.begin(), q.end()));
    while (std::next_permutation(p.begin(), p.end()));
    for (auto& C : cycles) {
      bool valid = true;
      try {
        validate_cycle(A, C);
      } catch (const Error&) {
        valid = false;
      }
      if (!valid) continue;
      Elem s = cycle_signature(A, C).value;
      EXPECT_EQ(s, cycle_signature(S, C).value);
      if (is_induced_cycle(A, C)) {
        ++induced;
        EXPECT_EQ(det(cycle_matrix(A, C)), F->one() - s);
      }
    }
  }
  EXPECT_GT(induced, 50u);
}

// ---------------------------------------------------------------- cross ratios and minors

TEST(CrossRatios, Examples) {
  auto Q = catalog("QQ");
  // Oracle: assoc{2} = {2, -1, 1/2}.
  EXPECT_EQ(strs(cross_ratios(make_matrix(Q, {{"1", "1"}, {"2", "1"}}))), (std::set<std::string>{"2", "-1", "1/2"}));
  for (auto& p : cross_ratios(make_matrix(Q, {{"1", "1"}, {"1", "1"}})))
    EXPECT_TRUE(p.is_zero() || p.is_one());
  auto cr = cross_ratios(fixture("A8"));
  EXPECT_FALSE(cr.empty());
  for (auto& p : cr) EXPECT_TRUE(p.is_zero() || is_pm_power_of_two(p)) << p.str();
}

TEST(CrossRatios, MinorMonotone) {
  std::mt19937 rng(9);
  PF F = gf_pf(7);
  for (int t = 0; t < 15; ++t) {
    auto A = random_matrix(F, 3, 4, rng, 0.8);
    auto crA = strs(cross_ratios(A));
    for (auto& R : basis_representatives(A)) {
      auto B = delete_labels(R, {R.rows[0], R.cols[t % R.nc()]});
      for (auto& p : strs(cross_ratios(B))) EXPECT_TRUE(crA.count(p)) << p;
    }
  }
}

// Entries of a normalized matrix lie in the sub-partial field generated by its cross ratios.
TEST(CrossRatios, NormalizedEntriesInGeneratedSub) {
  auto A = fixture("A8", catalog("D"));
  auto sub = generated_subfield(A.pf, nonzero(cross_ratios(A)));
  for (auto& row : normalize(A).a)
    for (auto& e : row) EXPECT_TRUE(contains(sub, e)) << e.str();
  std::mt19937 rng(13);
  PF g5 = gf_pf(5), P = product_pf(g5, g5);
  for (int t = 0; t < 10; ++t) {
    auto B = random_matrix(g5, 3, 3, rng, 0.8);
    PFMatrix D = zero_matrix(P, B.rows, B.cols);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        D.a[i][j] = P->elem("(" + B.a[i][j].str() + "," + B.a[i][j].str() + ")");
    D = scale(D, random_units(P, 3, rng), random_units(P, 3, rng));
    auto s = generated_subfield(P, nonzero(cross_ratios(D)));
    for (auto& row : normalize(D).a)
      for (auto& e : row) EXPECT_TRUE(contains(s, e)) << e.str();
  }
}

TEST(ScaledOver, Examples) {
  PF P35 = catalog("GF(3)xGF(5)");
  auto sub = generated_subfield(P35, {P35->elem("(2,2)")});
  EXPECT_TRUE(scaled_over_check(make_matrix(P35, {{"1", "1"}, {"(2,2)", "1"}}), sub).ok);
  PF P55 = catalog("GF(5)xGF(5)");
  auto r = scaled_over_check(make_matrix(P55, {{"1", "1", "1"}, {"1", "(2,2)", "(3,4)"}}), diagonal_sub(P55));
  EXPECT_FALSE(r.ok);
  EXPECT_FALSE(r.outside.empty());
  auto U0 = catalog("U0");
  EXPECT_TRUE(scaled_over_check(make_matrix(U0, {{"1", "1", "0"}, {"0", "1", "1"}}), U0).ok);
}

TEST(MinorContains, Examples) {
  auto Q = catalog("QQ");
  // Oracle: -1 is an associate of the cross ratio of columns y2,y3; 4 is not an associate of 2.
  auto w = minor_contains(make_matrix(Q, {{"1", "1", "1"}, {"1", "2", "4"}}), make_matrix(Q, {{"1", "1"}, {"-1", "1"}}));
  EXPECT_TRUE(w);
  EXPECT_FALSE(minor_contains(make_matrix(Q, {{"1", "1"}, {"2", "1"}}), make_matrix(Q, {{"1", "1"}, {"4", "1"}})));
  auto A8 = fixture("A8");
  EXPECT_TRUE(minor_contains(A8, A8));
}

// ---------------------------------------------------------------- connectivity

TEST(Lambda, Examples) {
  auto Q = catalog("QQ");
  EXPECT_EQ(connectivity_lambda(make_matrix(Q, {{"1", "0"}, {"0", "1"}}), {"x1", "y1"}), 0u);
  // Oracle: both cross blocks have rank 1.
  EXPECT_EQ(connectivity_lambda(make_matrix(Q, {{"1", "1"}, {"1", "2"}}), {"x1", "y1"}), 2u);
}

TEST(Lambda, MatrixMatroidAgreementAndDuality) {
  std::mt19937 rng(17);
  for (int t = 0; t < 8; ++t) {
    auto A = random_matrix(gf_pf(5), 3, 4, rng, 0.7);
    auto M = from_matrix(A), Md = dual(M);
    auto L = A.labels();
    for (Mask z = 0; z < M.full(); ++z) {
      std::set<std::string> Z;
      for (std::size_t i = 0; i < L.size(); ++i)
        if (z >> i & 1) Z.insert(L[i]);
      int lm = lambda(M, M.mask_of_set(Z));
      EXPECT_EQ(int(connectivity_lambda(A, Z)), lm);
      EXPECT_EQ(lambda(Md, Md.mask_of_set(Z)), lm);
    }
  }
}

TEST(Blocking, Examples) {
  auto A = make_matrix(gf_pf(2), {{"1", "1", "0"}, {"0", "1", "1"}});
  auto r = blocking_or_induced(A, {"x1", "y1", "x2", "y3"}, {"x1", "y1"});
  EXPECT_EQ(r.lambda, 0u);
  EXPECT_EQ(r.kind, SeparationReport::Kind::BlockingSequence);
  EXPECT_EQ(r.sequence, (std::vector<std::string>{"y2"}));
  auto B = make_matrix(gf_pf(2), {{"1", "1", "0", "0"}, {"1", "0", "0", "0"}, {"0", "0", "1", "1"}, {"0", "0", "0", "1"}});
  auto all = B.labels();
  auto s = blocking_or_induced(B, {all.begin(), all.end()}, {"x1", "x2", "y1", "y2"});
  EXPECT_EQ(s.kind, SeparationReport::Kind::InducedSeparation);
  EXPECT_EQ(s.induced1, (std::set<std::string>{"x1", "x2", "y1", "y2"}));
}

// On 3-connected instances every exact separation of order <= 2 of a minor is
// blocked; every returned sequence satisfies the definition and alternates X/Y.
TEST(Blocking, DichotomyOnThreeConnectedGF5) {
  std::mt19937 rng(23);
  PF F = gf_pf(5);
  std::size_t sequences = 0, induced = 0;
  for (int t = 0; t < 400 && sequences < 60; ++t) {
    auto A = random_matrix(F, 3, 4 + t % 2, rng, 0.75);
    if (!is_3connected(from_matrix(A))) continue;
    auto L = A.labels();
    std::shuffle(L.begin(), L.end(), rng);
    std::size_t keep = 4 + std::size_t(t % 2);
    std::set<std::string> E(L.begin(), L.begin() + long(keep));
    std::vector<std::string> Ev(E.begin(), E.end());
    std::set<std::string> Z1(Ev.begin(), Ev.begin() + 2);
    SeparationReport r;
    try {
      r = blocking_or_induced(A, E, Z1);
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "NotExactSeparation");
      continue;
    }
    if (r.kind == SeparationReport::Kind::BlockingSequence) {
      ++sequences;
      EXPECT_TRUE(is_blocking_sequence(A, E, Z1, r.sequence));
      for (std::size_t i = 0; i + 1 < r.sequence.size(); ++i)
        EXPECT_NE(A.row_of(r.sequence[i]) >= 0, A.row_of(r.sequence[i + 1]) >= 0);
    } else {
      ++induced;
      EXPECT_GE(r.k, 3u);
      EXPECT_LT(connectivity_lambda(A, r.induced1), r.k);
      for (auto& z : Z1) EXPECT_TRUE(r.induced1.count(z));
    }
  }
  EXPECT_GT(sequences, 20u);
}

// ---------------------------------------------------------------- matroids

// Oracle basis counts: A8 60, A7 28, A7minus 29.
TEST(Matroid, FromMatrix) {
  EXPECT_EQ(from_matrix(make_matrix(gf_pf(3), {{"1", "1"}, {"1", "2"}})).bases.size(), 6u);
  EXPECT_EQ(from_matrix(fixture("A8")).bases.size(), 60u);
  EXPECT_EQ(from_matrix(fixture("A7")).bases.size(), 28u);
  EXPECT_EQ(from_matrix(fixture("A7minus")).bases.size(), 29u);
  EXPECT_TRUE(isomorphic(from_matrix(fixture("A7minus")), make_named("F7-").matroid));
}

TEST(Matroid, CheckBases) {
  EXPECT_TRUE(check_bases(make_named("U(2,4)").matroid));
  Matroid bad;
  bad.ground = {"1", "2", "3", "4"};
  bad.rank = 2;
  bad.bases = {0b0011, 0b1100};
  EXPECT_FALSE(check_bases(bad));
  Matroid empty;
  empty.ground = {"1"};
  empty.bases = {0};
  EXPECT_TRUE(check_bases(empty));
}

TEST(Matroid, MinorsAndDuality) {
  auto U25 = make_named("U(2,5)").matroid;
  EXPECT_EQ(U25.bases.size(), 10u);
  auto m = minor(U25, {{}, {U25.ground.back()}});
  EXPECT_TRUE(isomorphic(m, make_named("U(2,4)").matroid));
  for (auto n : {"P8", "F7", "Vamos", "A2"}) {
    auto M = make_named(n).matroid;
    EXPECT_EQ(dual(dual(M)), M) << n;
  }
  std::mt19937 rng(29);
  for (int t = 0; t < 6; ++t) {
    auto A = random_matrix(gf_pf(5), 3, 3, rng, 0.7);
    EXPECT_EQ(family(dual(from_matrix(A))), family(from_matrix(transpose(A))));
  }
}

// M[I (A - S - T)] = M[I A] / S \ T for row labels S and column labels T.
TEST(Matroid, MinorMatrixCommutation) {
  std::mt19937 rng(31);
  for (int t = 0; t < 12; ++t) {
    auto A = random_matrix(gf_pf(5), 3, 4, rng, 0.8);
    std::vector<std::string> S{A.rows[std::size_t(t) % 3]}, T{A.cols[std::size_t(t) % 4]};
    if (t % 3 == 0) T.push_back(A.cols[(std::size_t(t) + 1) % 4]);
    std::set<std::string> ST(S.begin(), S.end());
    ST.insert(T.begin(), T.end());
    EXPECT_EQ(family(from_matrix(delete_labels(A, ST))), family(minor(from_matrix(A), {S, T})));
  }
}

TEST(Matroid, Connectivity) {
  EXPECT_TRUE(is_3connected(make_named("U(2,4)").matroid));
  auto two_triangles = from_matrix(make_matrix(gf_pf(2), {{"1", "1", "0", "0"}, {"1", "1", "0", "0"}, {"0", "0", "1", "1"}, {"0", "0", "1", "1"}}));
  EXPECT_FALSE(is_connected(two_triangles));
  auto sep = find_separation(two_triangles, 2);
  ASSERT_TRUE(sep);
  EXPECT_EQ(lambda(two_triangles, *sep), 0);
  for (auto n : {"P8", "F7", "Vamos"}) {
    auto M = make_named(n).matroid;
    auto Md = dual(M);
    for (Mask z = 0; z <= M.full(); ++z) EXPECT_EQ(lambda(M, z), lambda(Md, z));
  }
}

TEST(Matroid, FundamentalGraph) {
  std::mt19937 rng(37);
  for (int t = 0; t < 20; ++t) {
    auto A = random_matrix(gf_pf(5), 3, 4, rng, 0.55);
    auto M = from_matrix(A);
    auto G = fundamental_graph(M, M.mask_of(A.rows));
    std::set<std::pair<std::string, std::string>> E, EA;
    for (auto [a, b] : G) E.insert({std::min(a, b), std::max(a, b)});
    for (std::size_t i = 0; i < A.nr(); ++i)
      for (std::size_t j = 0; j < A.nc(); ++j)
        if (!A.a[i][j].is_zero()) EA.insert({std::min(A.rows[i], A.cols[j]), std::max(A.rows[i], A.cols[j])});
    EXPECT_EQ(E, EA);
    EXPECT_EQ(is_connected(M), graph_components(M.ground, G) == 1);
    if (is_3connected(M) && M.size() >= 4)
      for (auto& v : M.ground) {
        std::vector<std::string> rest;
        for (auto& w : M.ground)
          if (w != v) rest.push_back(w);
        std::vector<std::pair<std::string, std::string>> sub;
        for (auto& e : G)
          if (e.first != v && e.second != v) sub.push_back(e);
        EXPECT_EQ(graph_components(rest, sub), 1u);
      }
  }
}

TEST(Matroid, Isomorphism) {
  auto U24 = make_named("U(2,4)").matroid;
  EXPECT_TRUE(isomorphic(U24, relabel(U24, {"d", "b", "a", "c"})));
  EXPECT_FALSE(isomorphic(U24, dual(make_named("U(1,4)").matroid)));
  EXPECT_TRUE(isomorphic(make_named("Qplus(2)").matroid, make_named("F7").matroid));
  EXPECT_FALSE(isomorphic(make_named("F7").matroid, make_named("F7-").matroid));
}

TEST(Matroid, Named) {
  auto P8 = make_named("P8");
  EXPECT_EQ(P8.matroid.bases.size(), 60u);
  EXPECT_EQ(family(P8.matroid), family(from_matrix(fixture("A8"))));
  EXPECT_EQ(make_named("Qplus(3)").matroid.size(), 10u);
  EXPECT_EQ(make_named("Qplus(3)").matroid.bases.size(), 98u);
  EXPECT_THROW(make_named("nope"), Error);
}

// M[phi(A)] = M[A] for a verified homomorphism phi.
TEST(Matroid, HomImageInvariance) {
  auto A8 = fixture("A8", catalog("D"));
  auto h = hom_by_generators(catalog("D"), gf_pf(3), {"2"});
  ASSERT_TRUE(hom_check(h, {}, false).ok);
  EXPECT_EQ(family(from_matrix(map_matrix(h, A8))), family(from_matrix(A8)));
  auto U1 = catalog("U1");
  auto A = make_matrix(U1, {{"1", "1"}, {"1", "a"}});
  for (auto& g : hom_enumerate(U1, gf_pf(7))) {
    auto B = map_matrix(g, A);
    EXPECT_EQ(family(from_matrix(B)), family(from_matrix(A))) << g.str();
    auto crB = strs(cross_ratios(B));
    for (auto& p : cross_ratios(A)) EXPECT_TRUE(crB.count(apply(g, p).str()));
  }
}

TEST(Json, RoundTrip) {
  for (auto n : {"A1", "A2", "A3", "A8", "Qplus3"}) {
    auto A = fixture(n);
    EXPECT_EQ(io::matrix_from_json(io::matrix_to_json(A)), A) << n;
    auto M = from_matrix(A);
    EXPECT_EQ(io::matroid_from_json(io::matroid_to_json(M)).matroid, M) << n;
    EXPECT_EQ(io::matrix_to_json(A).dump(), io::matrix_to_json(io::matrix_from_json(io::matrix_to_json(A))).dump());
  }
  EXPECT_THROW(io::matrix_from_json(io::json::parse("[1,2]")), ParseError);
  EXPECT_THROW(io::read_json_file("fixtures/none.json"), Error);
}
