// pfkit command-line front end.
#include <fnmatch.h>

#include <filesystem>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfkit/pfkit.hpp"

using namespace pfkit;
using json = nlohmann::json;

namespace {

struct Result {
  int code = 0;
  json data = json::object();
  std::string text;
};

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

std::vector<std::string> strs(const std::vector<Elem>& v) {
  std::vector<std::string> out;
  for (auto& e : v) out.push_back(e.str());
  return out;
}

std::string braces(const std::vector<Elem>& v) { return "{" + join(strs(v), ",") + "}"; }

std::vector<std::string> split(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::set<std::string> label_set(const std::string& s) {
  auto v = split(s);
  return {v.begin(), v.end()};
}

PF pf_or_null(const std::string& name) { return name.empty() ? nullptr : catalog(name); }

PFMatrix load_matrix(const std::string& path, const std::string& pf) {
  return io::matrix_from_json(io::read_json_file(path), pf_or_null(pf));
}

/// "diag" for the diagonal of pf = P x P, otherwise generators of a
/// sub-partial field of pf.
PF resolve_sub(const PF& pf, const std::string& sub) {
  if (sub == "diag") return diagonal_sub(pf);
  std::vector<Elem> gens;
  for (auto& g : split(sub)) gens.push_back(pf->elem(g));
  return generated_subfield(pf, gens);
}

std::optional<std::vector<Edge>> parse_tree(const std::string& s) {
  if (s.empty()) return std::nullopt;
  std::vector<Edge> t;
  for (auto& e : split(s)) {
    auto c = e.find(':');
    if (c == std::string::npos) throw ParseError("tree edges are written x:y", 0);
    t.push_back({e.substr(0, c), e.substr(c + 1)});
  }
  return t;
}

std::optional<std::vector<std::string>> parse_basis(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return split(s);
}

std::string matrix_text(const PFMatrix& A) { return "over " + A.pf->label() + "\n" + A.str(); }

std::vector<std::string> expand_globs(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (auto& a : args) {
    if (a.find_first_of("*?[") == std::string::npos) {
      out.push_back(a);
      continue;
    }
    std::filesystem::path p(a);
    auto dir = p.has_parent_path() ? p.parent_path() : std::filesystem::path(".");
    std::vector<std::string> hits;
    for (auto& e : std::filesystem::directory_iterator(dir))
      if (fnmatch(p.filename().c_str(), e.path().filename().c_str(), 0) == 0) hits.push_back(e.path().string());
    std::sort(hits.begin(), hits.end());
    if (hits.empty()) fail("IoError", "no files match " + a);
    out.insert(out.end(), hits.begin(), hits.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// pf

Result pf_list() {
  Result r;
  std::ostringstream t;
  r.data["partial_fields"] = json::array();
  for (auto& n : catalog_names()) {
    PF P = catalog(n);
    json e{{"name", n}, {"ring", P->ring->id()}, {"generators", P->documented}, {"strategy", strategy_name(P->strategy)}};
    r.data["partial_fields"].push_back(e);
    t << n << "  " << P->ring->id() << "  <" << join(P->documented, ", ") << ">\n";
  }
  r.text = t.str();
  return r;
}

Result pf_fun(const std::string& name) {
  PF P = catalog(name);
  FunSet f = fun_enumerate(P);
  Result r;
  r.data = {{"pf", P->label()}, {"fun", strs(f.elements)}, {"proven", f.proven}, {"certificate", f.certificate}};
  r.text = braces(f.elements) + "\n";
  if (!f.proven) r.text += "(not proven complete: " + f.certificate + ")\n";
  return r;
}

Result pf_assoc(const std::string& name, const std::string& p) {
  PF P = catalog(name);
  auto a = associates(P->elem(p), *P);
  Result r;
  r.data = {{"pf", P->label()}, {"element", p}, {"associates", strs(a)}};
  r.text = braces(a) + "\n";
  return r;
}

Result pf_hom(const std::string& s, const std::string& d, bool all) {
  PF src = catalog(s), dst = catalog(d);
  Result r;
  r.data = {{"src", src->label()}, {"dst", dst->label()}, {"homs", json::array()}};
  std::vector<PFHom> homs;
  if (dst->units) {
    homs = hom_enumerate(src, dst, all ? SIZE_MAX : 1);
  } else {
    std::vector<std::vector<std::string>> tries;
    if (src->ring->symbol_names().empty()) tries.push_back({});
    for (auto& h : catalog_homs())
      if (h.src == s && h.dst == d) tries.push_back(h.images);
    for (auto& im : tries) {
      PFHom h = hom_by_variables(src, dst, im);
      if (hom_verify(h).ok) homs.push_back(h);
      if (!all && !homs.empty()) break;
    }
  }
  for (auto& h : homs) {
    r.data["homs"].push_back(h.str());
    r.text += (h.str().empty() ? std::string("(canonical map)") : h.str()) + "\n";
  }
  if (homs.empty()) {
    r.code = 1;
    r.text = "no homomorphism\n";
  }
  return r;
}

Result describe_pf(const PF& P) {
  Result r;
  r.data = {{"pf", P->label()}, {"ring", P->ring->id()}, {"generators", strs(P->generators)}};
  r.text = P->label() + " over " + P->ring->id() + ", generators " + braces(P->generators) + "\n";
  if (P->units) {
    r.data["group_order"] = P->units->size();
    r.text += "unit group of order " + std::to_string(P->units->size()) + "\n";
  }
  return r;
}

// ---------------------------------------------------------------------------
// mat

Result mat_check(const PFMatrix& A) {
  auto rep = det_and_validate(A, DetMode::FullPMatrixCheck);
  Result r;
  bool ok = rep.is_pmatrix.value_or(false);
  r.data = {{"pf", A.pf->label()}, {"pmatrix", ok}, {"witness", rep.witness}};
  r.text = ok ? "is a " + A.pf->label() + "-matrix\n" : "not a " + A.pf->label() + "-matrix: " + rep.witness + "\n";
  r.code = ok ? 0 : 1;
  return r;
}

Result mat_det(const PFMatrix& A) {
  auto rep = det_and_validate(A, DetMode::DetOnly);
  Result r;
  r.data = {{"det", rep.raw.str()}, {"in_pf", rep.det.has_value()}};
  r.text = rep.raw.str() + (rep.det ? "" : "  (not in " + A.pf->label() + ")") + "\n";
  r.code = rep.det ? 0 : 1;
  return r;
}

Result matrix_result(const PFMatrix& A) {
  Result r;
  r.data = io::matrix_to_json(A);
  r.text = matrix_text(A);
  return r;
}

Result mat_crat(const PFMatrix& A) {
  auto c = cross_ratios(A);
  canonical_sort(c);
  Result r;
  r.data = {{"pf", A.pf->label()}, {"crat", strs(c)}};
  r.text = braces(c) + "\n";
  return r;
}

Result mat_blockseq(const PFMatrix& A, const std::string& eprime, const std::string& z1) {
  auto rep = blocking_or_induced(A, label_set(eprime), label_set(z1));
  Result r;
  std::vector<std::string> s1(rep.side1.begin(), rep.side1.end()), s2(rep.side2.begin(), rep.side2.end());
  r.data = {{"lambda", rep.lambda}, {"k", rep.k}, {"separation", {s1, s2}}};
  if (rep.kind == SeparationReport::Kind::BlockingSequence) {
    r.data["kind"] = "blocking-sequence";
    r.data["sequence"] = rep.sequence;
    r.text = "blocking sequence: " + join(rep.sequence, " ") + "\n";
  } else {
    std::vector<std::string> i1(rep.induced1.begin(), rep.induced1.end()), i2(rep.induced2.begin(), rep.induced2.end());
    r.data["kind"] = "induced-separation";
    r.data["induced"] = {i1, i2};
    r.text = "induced separation: {" + join(i1, ",") + "} | {" + join(i2, ",") + "}\n";
  }
  return r;
}

Result mat_contains(const PFMatrix& A, const PFMatrix& B) {
  auto w = minor_contains(A, B);
  Result r;
  r.data = {{"contains", w.has_value()}};
  if (w) {
    r.data["basis"] = w->basis;
    r.data["rows"] = w->row_map;
    r.data["cols"] = w->col_map;
    r.text = "B is a minor of A: rows " + join(w->row_map, ",") + ", columns " + join(w->col_map, ",") + " after pivoting to basis " +
             join(w->basis, ",") + "\n";
  } else {
    r.code = 1;
    r.text = "B is not a minor of A\n";
  }
  return r;
}

// ---------------------------------------------------------------------------
// matroid

Result matroid_result(const Matroid& M) {
  Result r;
  r.data = io::matroid_to_json(M);
  std::ostringstream t;
  t << M.size() << " elements, rank " << M.rank << ", " << M.bases.size() << " bases\n";
  for (Mask b : M.bases) t << "  " << join(M.labels_of(b), " ") << "\n";
  r.text = t.str();
  return r;
}

Result matroid_check(const std::string& path) {
  Result r;
  bool ok = true;
  std::string why;
  try {
    ok = check_bases(io::load_matroid(path).matroid);
    if (!ok) why = "basis exchange fails";
  } catch (const Error& e) {
    if (e.kind() != "InvalidMatroid") throw;
    ok = false;
    why = e.what();
  }
  r.data = {{"matroid", ok}, {"reason", why}};
  r.text = ok ? "valid matroid\n" : "not a matroid: " + why + "\n";
  r.code = ok ? 0 : 1;
  return r;
}

Result matroid_conn(const Matroid& M) {
  Result r;
  bool c2 = is_connected(M), c3 = c2 && is_3connected(M);
  r.data = {{"connected", c2}, {"3connected", c3}};
  r.text = std::string(c2 ? "connected" : "not connected") + ", " + (c3 ? "3-connected" : "not 3-connected") + "\n";
  for (int k : {2, 3})
    if (auto s = find_separation(M, k)) {
      r.data["separation"] = {{"k", k}, {"side", M.labels_of(*s)}};
      r.text += std::to_string(k) + "-separation: {" + join(M.labels_of(*s), ",") + "}\n";
      break;
    }
  return r;
}

Result matroid_iso(const Matroid& A, const Matroid& B) {
  auto m = isomorphism(A, B);
  Result r;
  r.data = {{"isomorphic", m.has_value()}};
  if (m) {
    json map = json::object();
    for (std::size_t i = 0; i < A.size(); ++i) map[A.ground[i]] = B.ground[std::size_t((*m)[i])];
    r.data["map"] = map;
    r.text = "isomorphic:";
    for (std::size_t i = 0; i < A.size(); ++i) r.text += " " + A.ground[i] + "->" + B.ground[std::size_t((*m)[i])];
    r.text += "\n";
  } else {
    r.code = 1;
    r.text = "not isomorphic\n";
  }
  return r;
}

Result matroid_named(const std::string& name) {
  Result r;
  if (name.empty()) {
    r.data["named"] = named_matroids();
    r.text = join(named_matroids(), "\n") + "\n";
    return r;
  }
  auto nm = make_named(name);
  r = matroid_result(nm.matroid);
  if (nm.matrix) {
    r.data = {{"matroid", r.data}, {"matrix", io::matrix_to_json(*nm.matrix)}};
    r.text = matrix_text(*nm.matrix) + r.text;
  }
  return r;
}

// ---------------------------------------------------------------------------
// universal

Result universal_present(const Matroid& M, const std::string& basis, const std::string& tree) {
  auto P = bracket_presentation(M, parse_basis(basis), parse_tree(tree));
  Result r;
  std::vector<std::string> ideal, vars = P.variables;
  for (auto& g : P.ideal.basis) ideal.push_back(g.to_string(vars));
  json mat = json::array();
  for (auto& row : P.matrix) {
    json jr = json::array();
    for (auto& e : row) jr.push_back(e.to_string(vars));
    mat.push_back(jr);
  }
  json tr = json::array();
  for (auto& [x, y] : P.tree) tr.push_back({x, y});
  r.data = {{"rows", P.row_labels}, {"cols", P.col_labels}, {"tree", tr}, {"variables", vars},
            {"matrix", mat},        {"ideal", ideal},        {"representable", !P.trivial()}};
  std::ostringstream t;
  t << "basis " << join(P.row_labels, ",") << "; variables " << join(vars, ",") << "\n";
  for (std::size_t i = 0; i < P.matrix.size(); ++i) {
    t << "  " << P.row_labels[i] << ":";
    for (auto& e : P.matrix[i]) t << "  " << e.to_string(vars);
    t << "\n";
  }
  t << "ideal (saturated): <" << join(ideal, ", ") << ">\n";
  if (P.trivial()) t << "not representable over any partial field\n";
  r.text = t.str();
  r.code = P.trivial() ? 1 : 0;
  return r;
}

Result universal_verify(const Matroid& M, const std::string& target, const std::string& assign, const std::string& basis,
                        const std::string& tree) {
  auto U = universal_pf(M, parse_basis(basis), parse_tree(tree));
  std::map<std::string, std::string> a;
  for (auto& kv : split(assign)) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ParseError("assignments are written symbol=value", 0);
    a[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  auto rep = verify_universal_iso(U, catalog(target), a);
  Result r;
  r.data = {{"ok", rep.ok}, {"reason", rep.reason}, {"ring", U.ring->id()}};
  r.text = rep.ok ? "P_M is isomorphic to " + target + "\n" : "not verified: " + rep.reason + "\n";
  r.code = rep.ok ? 0 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// confine

json verdict_json(const ConfinementVerdict& v) {
  json j{{"confined", v.confined}, {"representations", v.representations}, {"unscaled", v.unscaled}, {"minors", v.minors}};
  if (v.scaled_witness) j["witness"] = io::matrix_to_json(*v.scaled_witness);
  if (v.counterexample) {
    auto& c = *v.counterexample;
    j["counterexample"] = {{"form", c.form},
                           {"contract", c.spec.contract},
                           {"delete", c.spec.remove},
                           {"A", io::matrix_to_json(c.A)},
                           {"B", io::matrix_to_json(c.B)},
                           {"outside", strs(c.outside)}};
  }
  return j;
}

Result verdict_result(const ConfinementVerdict& v) {
  Result r;
  r.data = verdict_json(v);
  if (v.confined) {
    r.text = "confined (" + std::to_string(v.representations) + " representations examined)\n";
  } else {
    auto& c = *v.counterexample;
    r.code = 1;
    r.text = "not confined, counterexample in " + (c.form == "M" ? std::string("M") : "M' with N = " + c.form);
    if (!c.spec.contract.empty() || !c.spec.remove.empty())
      r.text += " with M' = M / {" + join(c.spec.contract, ",") + "} \\ {" + join(c.spec.remove, ",") + "}";
    r.text += "\ncross ratios outside the sub-partial field: " + braces(c.outside) + "\n" + matrix_text(c.A);
  }
  return r;
}

Result hydra_result(const HydraReport& h) {
  Result r;
  r.data = {{"k", h.k}, {"ok", h.ok}, {"conditional", h.conditional}, {"matrices", h.matrices}, {"required", h.required}, {"homs", h.homs}};
  if (!h.failure.empty()) r.data["failure"] = h.failure;
  std::ostringstream t;
  t << "H" << h.k << ": " << (h.ok ? "pass" : "FAIL") << ", " << h.matrices << " representations of U(2,5), " << h.required
    << " inequivalent projections required";
  if (h.conditional) t << " (conditional: fun-set not proven complete)";
  t << "\n";
  if (!h.failure.empty()) t << h.failure << "\n";
  r.text = t.str();
  r.code = h.ok ? 0 : 1;
  return r;
}

Result classify_result(const Classification& C, bool full) {
  Result r;
  json cases = json::array();
  for (auto& c : C.cases) {
    json d = json::array();
    for (auto [a, b] : c.D) d.push_back({a, b});
    cases.push_back({{"D", d}, {"verdict", c.verdict}, {"assignment", c.assignment}});
  }
  r.data = {{"full", full}, {"cases", C.cases.size()}, {"subsets", C.subsets}, {"tally", C.tally}, {"complete", C.complete()}};
  r.data["table"] = cases;
  std::ostringstream t;
  t << C.cases.size() << " cases covering " << C.subsets << " identification sets\n";
  for (auto& [k, n] : C.tally) t << "  " << k << ": " << n << "\n";
  t << (C.complete() ? "no unclassified case\n" : "UNCLASSIFIED CASES PRESENT\n");
  r.text = t.str();
  r.code = C.complete() ? 0 : 1;
  return r;
}

Result lift_result(const LiftPresentation& L) {
  Result r;
  json syms = json::object();
  for (std::size_t i = 0; i < L.cross_ratios.size(); ++i)
    syms[L.symbols[i]] = {{"value", L.cross_ratios[i].str()}, {"normal_form", L.ring->residue(ZPoly::var(int(i))).str()}};
  json rels = json::array();
  for (auto& rel : L.relations) rels.push_back({{"kind", rel.kind}, {"poly", rel.poly.to_string(L.symbols)}});
  auto chk = hom_check(L.projection(), {}, false);
  r.data = {{"base", L.base->label()}, {"ring", L.ring->id()}, {"symbols", syms}, {"relations", rels}, {"projection", chk.ok}};
  std::ostringstream t;
  t << "lift of " << L.base->label() << ": " << L.ring->id() << "\n";
  for (std::size_t i = 0; i < L.cross_ratios.size(); ++i)
    t << "  " << L.symbols[i] << " ~ " << L.cross_ratios[i].str() << "  ->  " << L.ring->residue(ZPoly::var(int(i))).str() << "\n";
  t << "projection to " << L.base->label() << ": " << (chk.ok ? "verified" : "FAILED " + chk.reason) << "\n";
  r.text = t.str();
  r.code = chk.ok ? 0 : 1;
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pfkit: partial fields, matroid representations and confinement"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");
  std::function<Result()> action;

  // pf
  auto* pf = app.add_subcommand("pf", "partial fields")->require_subcommand(1);
  static std::string a1, a2, a3, opt_pf, opt_sub, opt_basis, opt_tree, opt_contract, opt_delete, opt_set, opt_eprime, opt_z1,
      opt_target, opt_assign;
  static std::vector<std::string> files, names;
  static bool flag_all = false, flag_full = false;
  static int opt_k = 3, opt_primes = 13;
  pf->add_subcommand("list", "catalog")->callback([&] { action = [] { return pf_list(); }; });
  auto* pfun = pf->add_subcommand("fun", "fundamental elements");
  pfun->add_option("name", a1)->required();
  pfun->callback([&] { action = [] { return pf_fun(a1); }; });
  auto* passoc = pf->add_subcommand("assoc", "associates of a fundamental element");
  passoc->add_option("name", a1)->required();
  passoc->add_option("element", a2)->required();
  passoc->callback([&] { action = [] { return pf_assoc(a1, a2); }; });
  auto* phom = pf->add_subcommand("hom", "homomorphisms between partial fields");
  phom->add_option("src", a1)->required();
  phom->add_option("dst", a2)->required();
  phom->add_flag("--all", flag_all, "list every homomorphism");
  phom->callback([&] { action = [] { return pf_hom(a1, a2, flag_all); }; });
  auto* pprod = pf->add_subcommand("product", "product partial field");
  pprod->add_option("a", a1)->required();
  pprod->add_option("b", a2)->required();
  pprod->callback([&] { action = [] { return describe_pf(product_pf(catalog(a1), catalog(a2))); }; });
  auto* psub = pf->add_subcommand("sub", "sub-partial field generated by elements");
  psub->add_option("name", a1)->required();
  psub->add_option("generators", a2, "comma-separated")->required();
  psub->callback([&] { action = [] { return describe_pf(resolve_sub(catalog(a1), a2)); }; });

  // mat
  auto* mat = app.add_subcommand("mat", "P-matrices")->require_subcommand(1);
  auto mat_cmd = [&](const std::string& name, const std::string& help, std::function<Result()> f) {
    auto* c = mat->add_subcommand(name, help);
    c->add_option("matrix", a1, "matrix JSON")->required();
    c->add_option("--pf", opt_pf, "override the partial field");
    c->callback([&, f] { action = f; });
    return c;
  };
  mat_cmd("check", "every subdeterminant in the partial field", [] { return mat_check(load_matrix(a1, opt_pf)); });
  mat_cmd("det", "determinant", [] { return mat_det(load_matrix(a1, opt_pf)); });
  auto* mpiv = mat_cmd("pivot", "pivot on the entry (x, y)", [] { return matrix_result(pivot(load_matrix(a1, opt_pf), a2, a3)); });
  mpiv->add_option("x", a2)->required();
  mpiv->add_option("y", a3)->required();
  auto* mnorm = mat_cmd("normalize", "normalize on a spanning forest", [] {
    auto T = parse_tree(opt_tree);
    return matrix_result(normalize(load_matrix(a1, opt_pf), T ? std::optional<Forest>(*T) : std::nullopt));
  });
  mnorm->add_option("--tree", opt_tree, "forest edges x:y,...");
  mat_cmd("crat", "cross ratios", [] { return mat_crat(load_matrix(a1, opt_pf)); });
  auto* mlam = mat_cmd("lambda", "connectivity of a label set", [] {
    Result r;
    auto l = connectivity_lambda(load_matrix(a1, opt_pf), label_set(opt_set));
    r.data = {{"lambda", l}};
    r.text = std::to_string(l) + "\n";
    return r;
  });
  mlam->add_option("--set", opt_set, "labels, comma-separated")->required();
  auto* mblk = mat_cmd("blockseq", "blocking sequence or induced separation",
                       [] { return mat_blockseq(load_matrix(a1, opt_pf), opt_eprime, opt_z1); });
  mblk->add_option("--eprime", opt_eprime, "labels of the submatrix")->required();
  mblk->add_option("--z1", opt_z1, "one side of its separation")->required();
  auto* mcont = mat_cmd("contains", "B is a minor of A", [] { return mat_contains(load_matrix(a1, opt_pf), load_matrix(a2, opt_pf)); });
  mcont->add_option("minor", a2, "matrix JSON for B")->required();

  // matroid
  auto* mtd = app.add_subcommand("matroid", "matroids")->require_subcommand(1);
  auto m_cmd = [&](const std::string& name, const std::string& help, std::function<Result()> f) {
    auto* c = mtd->add_subcommand(name, help);
    c->add_option("matroid", a1, "matroid JSON or a named matroid")->required();
    c->callback([&, f] { action = f; });
    return c;
  };
  m_cmd("bases", "list the bases", [] { return matroid_result(io::load_matroid(a1).matroid); });
  mtd->add_subcommand("check", "basis exchange")->add_option("matroid", a1)->required();
  mtd->get_subcommand("check")->callback([&] { action = [] { return matroid_check(a1); }; });
  auto* mmin = m_cmd("minor", "M / contract \\ delete", [] {
    return matroid_result(minor(io::load_matroid(a1).matroid, MinorSpec{split(opt_contract), split(opt_delete)}));
  });
  mmin->add_option("--contract", opt_contract);
  mmin->add_option("--delete", opt_delete);
  m_cmd("dual", "dual matroid", [] { return matroid_result(dual(io::load_matroid(a1).matroid)); });
  m_cmd("conn", "connectivity", [] { return matroid_conn(io::load_matroid(a1).matroid); });
  m_cmd("iso", "isomorphism", [] { return matroid_iso(io::load_matroid(a1).matroid, io::load_matroid(a2).matroid); })
      ->add_option("other", a2)
      ->required();
  auto* mnamed = mtd->add_subcommand("named", "named matroids");
  mnamed->add_option("name", a1);
  mnamed->callback([&] { action = [] { return matroid_named(a1); }; });

  // universal
  auto* uni = app.add_subcommand("universal", "universal partial fields")->require_subcommand(1);
  auto* upres = uni->add_subcommand("present", "bracket presentation");
  upres->add_option("matroid", a1)->required();
  upres->add_option("--basis", opt_basis);
  upres->add_option("--tree", opt_tree);
  upres->callback([&] { action = [] { return universal_present(io::load_matroid(a1).matroid, opt_basis, opt_tree); }; });
  auto* ucount = uni->add_subcommand("count", "inequivalent representations over a finite partial field");
  ucount->add_option("matroid", a1)->required();
  ucount->add_option("--pf", opt_pf)->required();
  ucount->callback([&] {
    action = [] {
      Result r;
      auto n = count_representations(io::load_matroid(a1).matroid, catalog(opt_pf));
      r.data = {{"pf", opt_pf}, {"count", n}};
      r.text = std::to_string(n) + "\n";
      return r;
    };
  });
  auto* uver = uni->add_subcommand("verify", "check an isomorphism of P_M onto a catalog partial field");
  uver->add_option("matroid", a1)->required();
  uver->add_option("--target", opt_target)->required();
  uver->add_option("--assign", opt_assign, "symbol=value,...")->required();
  uver->add_option("--basis", opt_basis);
  uver->add_option("--tree", opt_tree);
  uver->callback([&] { action = [] { return universal_verify(io::load_matroid(a1).matroid, opt_target, opt_assign, opt_basis, opt_tree); }; });
  auto* uset = uni->add_subcommand("settles", "N settles M");
  uset->add_option("N", a1)->required();
  uset->add_option("M", a2)->required();
  uset->add_option("--contract", opt_contract);
  uset->add_option("--delete", opt_delete);
  uset->callback([&] {
    action = [] {
      Result r;
      bool s = settles_check(io::load_matroid(a1).matroid, io::load_matroid(a2).matroid, MinorSpec{split(opt_contract), split(opt_delete)});
      r.data = {{"settles", s}};
      r.text = s ? "settles\n" : "does not settle\n";
      r.code = s ? 0 : 1;
      return r;
    };
  });
  auto* urep = uni->add_subcommand("representable", "representable over some partial field");
  urep->add_option("matroid", a1)->required();
  urep->callback([&] {
    action = [] {
      Result r;
      bool s = is_representable(io::load_matroid(a1).matroid);
      r.data = {{"representable", s}};
      r.text = s ? "representable\n" : "not representable (bracket ideal is trivial)\n";
      r.code = s ? 0 : 1;
      return r;
    };
  });

  // confine
  auto* conf = app.add_subcommand("confine", "confinement")->require_subcommand(1);
  auto* cdir = conf->add_subcommand("direct", "B confines M");
  cdir->add_option("B", a1, "matrix JSON over the sub-partial field")->required();
  cdir->add_option("M", a2)->required();
  cdir->add_option("--pf", opt_pf)->required();
  cdir->add_option("--sub", opt_sub, "diag, or generators")->required();
  cdir->callback([&] {
    action = [] {
      PF P = catalog(opt_pf), S = resolve_sub(P, opt_sub);
      return verdict_result(confines_direct(load_matrix(a1, opt_pf), io::load_matroid(a2).matroid, P, S));
    };
  });
  auto* cthm = conf->add_subcommand("theorem", "N confines M through the minors of the confinement theorem");
  cthm->add_option("N", a1)->required();
  cthm->add_option("M", a2)->required();
  cthm->add_option("--pf", opt_pf)->required();
  cthm->add_option("--sub", opt_sub)->required();
  cthm->callback([&] {
    action = [] {
      PF P = catalog(opt_pf), S = resolve_sub(P, opt_sub);
      return verdict_result(confinement_finite_check(io::load_matroid(a1).matroid, io::load_matroid(a2).matroid, P, S));
    };
  });

  auto* stab = app.add_subcommand("stabilizer", "N stabilizes M");
  stab->add_option("N", a1)->required();
  stab->add_option("M", a2)->required();
  stab->add_option("--pf", opt_pf)->required();
  stab->callback([&] {
    action = [] {
      auto s = stabilizer_check(io::load_matroid(a1).matroid, io::load_matroid(a2).matroid, catalog(opt_pf));
      Result r;
      r.data = {{"direct", s.direct}, {"product", s.product}};
      if (s.direct != s.product) fail("Inconsistent", "direct and product paths disagree");
      r.text = s.direct ? "stabilizes\n" : "does not stabilize\n";
      if (s.witness) {
        r.data["witness"] = {io::matrix_to_json(s.witness->first), io::matrix_to_json(s.witness->second)};
        r.text += matrix_text(s.witness->first) + matrix_text(s.witness->second);
      }
      r.code = s.direct ? 0 : 1;
      return r;
    };
  });

  auto* lift = app.add_subcommand("lift", "lifts")->require_subcommand(1);
  auto* lbuild = lift->add_subcommand("build", "lift presentation of a matrix family");
  lbuild->add_option("files", files, "matrix JSON files (globs allowed)")->required();
  lbuild->add_option("--pf", opt_pf);
  lbuild->callback([&] {
    action = [] {
      std::vector<PFMatrix> fam;
      for (auto& f : expand_globs(files)) fam.push_back(load_matrix(f, opt_pf));
      return lift_result(lift_presentation(fam));
    };
  });

  auto* cls = app.add_subcommand("classify-associates", "quotients of the associate hexagon ring");
  cls->add_flag("--full", flag_full, "all identification sets, without symmetry reduction");
  cls->callback([&] { action = [] { return classify_result(classify_associate_quotients(flag_full), flag_full); }; });

  auto* hyd = app.add_subcommand("hydra", "Hydra partial fields")->require_subcommand(1);
  auto* hcheck = hyd->add_subcommand("check", "projections of U(2,5) representations");
  hcheck->add_option("--k", opt_k)->check(CLI::Range(2, 6));
  hcheck->callback([&] { action = [] { return hydra_result(hydra_degeneracy_check(opt_k)); }; });

  auto* hg = app.add_subcommand("homgraph", "DOT graph of homomorphisms");
  hg->add_option("--names", names, "catalog names");
  hg->add_option("--primes", opt_primes, "add GF(p) for primes p up to this bound");
  hg->callback([&] {
    action = [] {
      auto g = homgraph(names.empty() ? catalog_names() : names, opt_primes);
      Result r;
      json edges = json::array();
      for (auto& [a, b] : g.edges) edges.push_back({a, b});
      r.data = {{"nodes", g.nodes}, {"edges", edges}};
      r.text = homgraph_dot(g);
      return r;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    Result r = action();
    if (as_json) std::cout << r.data.dump(2) << "\n";
    else std::cout << r.text;
    return r.code;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << " (raise it through PFKIT_LIMITS)\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
