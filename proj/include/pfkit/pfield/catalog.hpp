#ifndef PFKIT_PFIELD_CATALOG_HPP
#define PFKIT_PFIELD_CATALOG_HPP

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "pfkit/pfield/hom.hpp"

namespace pfkit {

namespace detail {

inline std::string var_letter(int i) { return std::string(1, char('a' + i)); }

// j-th cyclotomic polynomial in variable 0
inline ZPoly cyclotomic(int j) {
  ZPoly x = ZPoly::var(0);
  ZPoly p = x.pow(unsigned(j)) - ZPoly(1);
  for (int d = 1; d < j; ++d)
    if (j % d == 0) p = *p.divide_exact(cyclotomic(d));
  return p;
}

inline PF localized_pf(std::string name, RingPtr R, const std::vector<ZPoly>& gens, std::vector<std::string> documented) {
  auto* L = as<LocalizedRing>(R);
  std::vector<Elem> g;
  for (auto& p : gens) g.push_back(L->poly(normalize_unit(p)));
  return make_pf(std::move(name), R, g, Strategy::PrimeBasisFactorization, "trial division by the prime basis", std::move(documented));
}

inline FunRecipe box_recipe(std::vector<std::pair<long long, long long>> box, bool proven, std::string cert) {
  FunRecipe f;
  f.kind = FunRecipe::Kind::Box;
  f.box = std::move(box);
  f.proven = proven;
  f.certificate = std::move(cert);
  return f;
}

// Splits "AxB" at a top-level 'x' (outside parentheses).
inline std::size_t product_split(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && (s[i] == 'x' || s[i] == 'X') && i > 0 && i + 1 < s.size()) return i;
  }
  return std::string::npos;
}

inline int parse_param(const std::string& s, const std::string& prefix) {
  std::string r = s.substr(prefix.size());
  if (!r.empty() && r.front() == '(' && r.back() == ')') r = r.substr(1, r.size() - 2);
  if (r.empty()) return -1;
  for (char c : r)
    if (!std::isdigit(static_cast<unsigned char>(c))) return -1;
  return std::stoi(r);
}

}  // namespace detail

/// Certificates used to bound fun-set exponents through homomorphisms.
struct HomCertificate {
  std::string target;
  std::vector<std::string> images;  // ring symbol images
};

inline std::map<std::string, std::vector<HomCertificate>>& fun_hom_certificates() {
  static std::map<std::string, std::vector<HomCertificate>> m = {
      {"U1", {{"H2", {"i"}}, {"H2", {"1-i"}}}},
      {"H3", {{"H2", {"i"}}, {"H2", {"1-i"}}, {"H2", {"(1-i)/2"}}}},
  };
  return m;
}

inline PF build_catalog_entry(const std::string& raw);

/// Catalog lookup; names as in the CLI (U0, U1, Uk(k), D, S, G, K(k), Y, W, GE,
/// P4, H2..H6, U1mod2, GF(q), AxB).
inline PF catalog(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, PF> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(name);
    if (it != cache.end()) return it->second;
  }
  PF P = build_catalog_entry(name);
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(name, P);
  return P;
}

inline std::vector<std::string> catalog_names() {
  return {"U0", "U1", "U2", "D", "S", "G", "K2", "Y", "W", "GE", "P4", "H2", "H3", "H4", "H5", "H6", "U1mod2"};
}

inline PF build_catalog_entry(const std::string& raw) {
  std::string s = detail::strip(raw);
  auto split = detail::product_split(s);
  if (split != std::string::npos) return product_pf(catalog(s.substr(0, split)), catalog(s.substr(split + 1)));
  ZPoly a = ZPoly::var(0), b = ZPoly::var(1), c = ZPoly::var(2);
  ZPoly one(1);
  auto mutable_pf = [](PF p) { return std::const_pointer_cast<PartialField>(p); };

  if (s == "QQ" || s.rfind("QQ(", 0) == 0) return field_pf(parse_ring(s), s);
  if (s.rfind("GF", 0) == 0) {
    int q = detail::parse_param(s, "GF");
    if (q < 2) throw ParseError("bad finite field '" + s + "'", 0);
    return gf_pf(static_cast<std::uint32_t>(q));
  }
  if (s == "U0") {
    auto P = mutable_pf(make_pf("U0", make_integers(), {}, Strategy::PrimeBasisFactorization, "+-1 only", {"-1"}));
    return P;
  }
  if (s == "U1") {
    auto R = make_localized({"a"}, {a, a - one});
    auto P = mutable_pf(detail::localized_pf("U1", R, {a, a - one}, {"-1", "a", "1-a"}));
    P->fun = detail::box_recipe({{-2, 2}, {-2, 2}}, true, "homomorphisms to H2");
    return P;
  }
  if (s != "U1mod2" && (s.rfind("Uk", 0) == 0 || (s.size() >= 2 && s[0] == 'U' && std::isdigit(static_cast<unsigned char>(s[1]))))) {
    int k = s.rfind("Uk", 0) == 0 ? detail::parse_param(s, "Uk") : detail::parse_param(s, "U");
    if (k < 1 || k > 6) fail("UnknownName", "Uk needs 1 <= k <= 6: " + s);
    if (k == 1) return catalog("U1");
    std::vector<std::string> vars;
    for (int i = 0; i < k; ++i) vars.push_back(detail::var_letter(i));
    auto R = make_function_field(vars);
    std::vector<ZPoly> pts{ZPoly(0), one};
    for (int i = 0; i < k; ++i) pts.push_back(ZPoly::var(i));
    std::vector<ZPoly> gens;
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        ZPoly d = pts[j] - pts[i];
        if (!d.is_constant()) gens.push_back(d);
      }
    std::vector<std::string> doc{"-1"};
    for (auto& g : gens) doc.push_back(normalize_unit(g).to_string(vars));
    auto P = mutable_pf(detail::localized_pf("U" + std::to_string(k), R, gens, doc));
    // (a-b)/(c-b) and cross ratios over {0,1,a1..ak}
    FunRecipe f;
    f.kind = FunRecipe::Kind::Listed;
    f.certificate = "cross ratios of {0,1,a1..ak}";
    std::vector<std::string> pts_s{"0", "1"};
    for (auto& v : vars) pts_s.push_back(v);
    std::size_t n = pts_s.size();
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        for (std::size_t z = 0; z < n; ++z) {
          if (x == y || y == z || x == z) continue;
          f.listed.push_back("(" + pts_s[x] + "-" + pts_s[y] + ")/(" + pts_s[z] + "-" + pts_s[y] + ")");
          for (std::size_t w = 0; w < n; ++w) {
            if (w == x || w == y || w == z) continue;
            f.listed.push_back("((" + pts_s[x] + "-" + pts_s[y] + ")*(" + pts_s[z] + "-" + pts_s[w] + "))/((" + pts_s[z] + "-" +
                               pts_s[y] + ")*(" + pts_s[x] + "-" + pts_s[w] + "))");
          }
        }
    P->fun = f;
    return P;
  }
  if (s == "D") {
    auto R = parse_ring("ZZ[1/2]");
    auto P = mutable_pf(make_pf("D", R, {R->from_int(2)}, Strategy::PrimeBasisFactorization, "2-adic valuation", {"-1", "2"}));
    P->fun = detail::box_recipe({{-2, 2}}, true, "catalog lemma: fun(D) = assoc{1,2}");
    return P;
  }
  if (s == "GE") {
    auto R = parse_ring("ZZ[1/2,1/3]");
    auto P = mutable_pf(make_pf("GE", R, {R->from_int(2), R->from_int(3)}, Strategy::PrimeBasisFactorization,
                                "2- and 3-adic valuations", {"-1", "2", "3"}));
    P->fun = detail::box_recipe({{-4, 4}, {-3, 3}}, true, "catalog lemma: fun(GE) = assoc{1,2,3,4,9}");
    return P;
  }
  if (s == "S") {
    auto R = parse_ring("ZZ[zeta]/(zeta^2-zeta+1)");
    return make_pf("S", R, {*R->symbol("zeta")}, Strategy::UnitGroupRule, "p^6 = 1", {"zeta"});
  }
  if (s == "G") {
    auto R = parse_ring("ZZ[tau]/(tau^2-tau-1)");
    auto P = mutable_pf(make_pf("G", R, {*R->symbol("tau")}, Strategy::UnitGroupRule, "norm +-1", {"-1", "tau"}));
    P->fun = detail::box_recipe({{-4, 4}}, true, "catalog lemma: fun(G) = assoc{1,tau}");
    return P;
  }
  if (s == "Y") {
    auto R = parse_ring("ZZ[zeta,1/2]/(zeta^2-zeta+1)");
    auto P = mutable_pf(make_pf("Y", R, {*R->symbol("zeta"), R->from_int(2)}, Strategy::UnitGroupRule,
                                "norm 2^k, quotient a sixth root of unity", {"-1", "2", "zeta"}));
    P->fun = detail::box_recipe({{0, 5}, {-2, 2}}, true, "catalog lemma: fun(Y) = assoc{1,2,zeta}");
    return P;
  }
  if (s == "W") {
    auto R = parse_ring("ZZ[zeta,1/3]/(zeta^2-zeta+1)");
    Elem z = *R->symbol("zeta");
    auto P = mutable_pf(make_pf("W", R, {z, R->one() + z}, Strategy::UnitGroupRule, "norm 3^k, quotient a sixth root of unity",
                                {"-1", "zeta", "1+zeta"}));
    P->fun = detail::box_recipe({{0, 5}, {-3, 3}}, true, "catalog lemma: fun(W) = assoc{1,zeta,zeta^2}");
    return P;
  }
  if (s.rfind("K", 0) == 0 && s.size() > 1) {
    int k = detail::parse_param(s, "K");
    if (k < 1 || k > 8) fail("UnknownName", "K(k) needs 1 <= k <= 8: " + s);
    auto R = make_function_field({"a"});
    std::vector<ZPoly> gens{a};
    std::vector<std::string> doc{"-1", "a"};
    for (int j = 1; j <= k; ++j) {
      gens.push_back(detail::cyclotomic(j));
      doc.push_back(j == 1 ? "a-1" : "a^" + std::to_string(j) + "-1");
    }
    auto P = mutable_pf(detail::localized_pf("K" + std::to_string(k), R, gens, doc));
    std::vector<std::pair<long long, long long>> box(gens.size(), {-2, 2});
    P->fun = detail::box_recipe(box, k <= 2, k <= 2 ? "catalog lemma: fun(K2) = assoc{1,a,-a,a^2}" : "search box only");
    return P;
  }
  if (s == "P4") {
    auto R = make_function_field({"a"});
    auto P = mutable_pf(detail::localized_pf("P4", R, {a, a - one, a + one, a - ZPoly(2)}, {"-1", "a", "a-1", "a+1", "a-2"}));
    P->fun = detail::box_recipe({{-2, 2}, {-2, 2}, {-2, 2}, {-2, 2}}, true,
                                "catalog lemma: fun(P4) = assoc{1,a,-a,a^2,a-1,(a-1)^2}");
    return P;
  }
  if (s == "H2") {
    auto R = parse_ring("ZZ[i,1/2]/(i^2+1)");
    Elem i = *R->symbol("i");
    auto P = mutable_pf(make_pf("H2", R, {i, R->one() - i}, Strategy::UnitGroupRule,
                                "p*conj(p) = 2^b, p/(1-i)^b in {+-1,+-i}", {"i", "1-i"}));
    P->fun = detail::box_recipe({{0, 3}, {-2, 2}}, true, "catalog lemma: norms of fundamental elements lie in [1/2, 2]");
    return P;
  }
  if (s == "H3") {
    auto R = make_function_field({"a"});
    auto P = mutable_pf(detail::localized_pf("H3", R, {a, a - one, a * a - a + one}, {"-1", "a", "1-a", "a^2-a+1"}));
    P->fun = detail::box_recipe({{-2, 2}, {-2, 2}, {-3, 3}}, true, "homomorphisms to H2");
    return P;
  }
  if (s == "H4") {
    auto R = make_function_field({"a", "b"});
    auto P = mutable_pf(detail::localized_pf("H4", R, {a, b, a - one, b - one, a * b - one, a + b - ZPoly(2) * a * b},
                                             {"-1", "a", "b", "a-1", "b-1", "a*b-1", "a+b-2*a*b"}));
    FunRecipe f;
    f.kind = FunRecipe::Kind::Listed;
    f.certificate = "published list; completeness not re-derived";
    f.listed = {"1", "a", "b", "a*b", "(a-1)/(a*b-1)", "(b-1)/(a*b-1)", "-(a*(b-1))/(b*(a-1))", "((a-1)*(b-1))/(1-a*b)",
                "(a*(b-1)^2)/(b*(a*b-1))", "(b*(a-1)^2)/(a*(a*b-1))"};
    P->fun = f;
    return P;
  }
  if (s == "H5" || s == "H6") {
    auto R = make_function_field({"a", "b", "c"});
    auto P = mutable_pf(detail::localized_pf(
        s, R, {a, b, c, a - one, b - one, c - one, a - c, c - a * b, (one - c) - (one - a) * b},
        {"-1", "a", "b", "c", "a-1", "b-1", "c-1", "a-c", "c-a*b", "(1-c)-(1-a)*b"}));
    FunRecipe f;
    f.kind = FunRecipe::Kind::Listed;
    f.certificate = "published list; completeness not re-derived";
    f.listed = {"1",
                "a",
                "b",
                "c",
                "(a*b)/c",
                "a/c",
                "((1-a)*c)/(c-a)",
                "((a-1)*b)/(c-1)",
                "(a-1)/(c-1)",
                "(c-a)/(c-a*b)",
                "((b-1)*(c-1))/(b*(c-a))",
                "(b*(c-a))/(c-a*b)",
                "((a-1)*(b-1))/(c-a)",
                "(b*(c-a))/((1-c)*(c-a*b))",
                "((1-a)*(c-a*b))/(c-a)",
                "(1-b)/(c-a*b)"};
    P->fun = f;
    return P;
  }
  if (s == "U1mod2") {
    auto R = parse_ring("GF(2)(a)");
    Elem x = *R->symbol("a");
    auto P = mutable_pf(make_pf("U1mod2", R, {x, R->one() + x}, Strategy::PrimeBasisFactorization,
                                "trial division over GF(2)[a]", {"a", "1+a"}));
    FunRecipe f;
    f.kind = FunRecipe::Kind::Frobenius;
    f.certificate = "assoc{a^(2^k)} for k up to the cutoff";
    P->fun = f;
    return P;
  }
  fail("UnknownName", "no catalog partial field named '" + s + "'");
}

/// Registered symbolic homomorphisms (ring symbol images), used for the
/// homomorphism graph between infinite catalog entries.
struct CatalogHom {
  std::string src, dst;
  std::vector<std::string> images;
};

inline const std::vector<CatalogHom>& catalog_homs() {
  static const std::vector<CatalogHom> v = {
      {"U1", "D", {"2"}},      {"U1", "S", {"zeta"}},  {"U1", "H2", {"i"}},    {"U1", "G", {"tau"}},  {"U1", "K2", {"a"}},
      {"U1", "P4", {"a"}},     {"U1", "H3", {"a"}},    {"U1", "H4", {"a"}},    {"U1", "U2", {"a"}},   {"U1", "Y", {"2"}},
      {"U1", "GE", {"2"}},     {"U1", "W", {"zeta"}},  {"U1", "H5", {"a"}},    {"U1", "H6", {"a"}},   {"U1", "U1mod2", {"a"}},
      {"D", "Y", {}},          {"D", "GE", {}},        {"D", "H2", {}},        {"S", "Y", {"zeta"}},  {"S", "W", {"zeta"}},
      {"K2", "P4", {"a"}},     {"H3", "H2", {"i"}},    {"H3", "H2", {"1-i"}},  {"H3", "H2", {"(1-i)/2"}},
      {"U2", "H5", {"a", "c"}},
  };
  return v;
}

}  // namespace pfkit

#endif
