#ifndef PFKIT_IO_JSON_HPP
#define PFKIT_IO_JSON_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pfkit/matroid/matroid.hpp"
#include "pfkit/pfield/catalog.hpp"

namespace pfkit::io {

using json = nlohmann::json;

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return json::parse(ss.str());
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what(), e.byte);
  }
}

inline json matrix_to_json(const PFMatrix& A) {
  json j;
  j["pf"] = A.pf->label();
  j["rows"] = A.rows;
  j["cols"] = A.cols;
  j["entries"] = json::array();
  for (std::size_t i = 0; i < A.nr(); ++i)
    for (std::size_t k = 0; k < A.nc(); ++k)
      if (!A.a[i][k].is_zero()) j["entries"].push_back({A.rows[i], A.cols[k], A.a[i][k].str()});
  return j;
}

/// Matrix JSON; `pf` overrides the "pf" field when given.
inline PFMatrix matrix_from_json(const json& j, PF pf = nullptr) {
  if (!j.is_object()) throw ParseError("matrix JSON must be an object", 0);
  if (!pf) {
    if (!j.contains("pf")) throw ParseError("matrix JSON needs a \"pf\" field", 0);
    pf = catalog(j.at("pf").get<std::string>());
  }
  PFMatrix A;
  A.pf = pf;
  A.rows = j.at("rows").get<std::vector<std::string>>();
  A.cols = j.at("cols").get<std::vector<std::string>>();
  A.a.assign(A.rows.size(), std::vector<Elem>(A.cols.size(), pf->zero()));
  for (auto& e : j.value("entries", json::array())) {
    if (!e.is_array() || e.size() != 3) throw ParseError("entry must be [row, col, expr]", 0);
    auto x = e[0].get<std::string>(), y = e[1].get<std::string>();
    int r = A.row_of(x), c = A.col_of(y);
    if (r < 0 || c < 0) fail("UnknownLabel", "entry " + x + "," + y + " is outside the matrix");
    A.a[std::size_t(r)][std::size_t(c)] = e[2].is_string() ? parse_element(e[2].get<std::string>(), pf->ring)
                                                            : pf->ring->from_int(e[2].get<long>());
  }
  validate_matrix(A);
  return A;
}

inline json matroid_to_json(const Matroid& M) {
  json j;
  j["ground"] = M.ground;
  j["rank"] = M.rank;
  j["bases"] = json::array();
  for (Mask b : M.bases) j["bases"].push_back(M.labels_of(b));
  return j;
}

/// Matroid JSON in any of its three forms; the matrix, when there is one, is
/// returned alongside.
inline NamedMatroid matroid_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matroid JSON must be an object", 0);
  if (j.contains("named")) return make_named(j.at("named").get<std::string>());
  if (j.contains("matrix")) {
    PFMatrix A = matrix_from_json(j.at("matrix"));
    return {from_matrix(A), A};
  }
  auto ground = j.at("ground").get<std::vector<std::string>>();
  auto bases = j.at("bases").get<std::vector<std::vector<std::string>>>();
  Matroid M = from_bases(ground, bases);
  if (j.contains("rank") && j.at("rank").get<int>() != M.rank)
    fail("InvalidMatroid", "declared rank " + std::to_string(j.at("rank").get<int>()) + " differs from basis size");
  return {M, std::nullopt};
}

inline NamedMatroid load_matroid(const std::string& path_or_name) {
  if (path_or_name.size() > 5 && path_or_name.substr(path_or_name.size() - 5) == ".json")
    return matroid_from_json(read_json_file(path_or_name));
  return make_named(path_or_name);
}

}  // namespace pfkit::io

#endif
