#ifndef PFKIT_IO_HOMGRAPH_HPP
#define PFKIT_IO_HOMGRAPH_HPP

#include <string>
#include <utility>
#include <vector>

#include "pfkit/pfield/catalog.hpp"
#include "pfkit/pfield/fun.hpp"

namespace pfkit {

struct HomGraph {
  std::vector<std::string> nodes;
  std::vector<std::pair<std::string, std::string>> edges;
};

namespace detail {

inline bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Some homomorphism src -> dst: searched when dst is finite, otherwise taken
/// from the registered catalog maps (or the unique map out of a ring without
/// symbols) and checked.
inline bool has_hom(const std::string& s, const std::string& d) {
  PF src = catalog(s), dst = catalog(d);
  if (dst->units) {
    if (src->units && !has_evaluation_homs(*src) && src->ring->characteristic() != dst->ring->characteristic()) return false;
    return !hom_enumerate(src, dst, 1).empty();
  }
  if (src->units && src->ring->is_finite()) return false;
  std::vector<std::vector<std::string>> tries;
  if (src->ring->symbol_names().empty()) tries.push_back({});
  for (auto& h : catalog_homs())
    if (h.src == s && h.dst == d) tries.push_back(h.images);
  for (auto& images : tries) {
    try {
      if (hom_check(hom_by_variables(src, dst, images), {}, false).ok) return true;
    } catch (const Error&) {
    }
  }
  return false;
}

}  // namespace detail

/// Homomorphism graph on the named partial fields plus GF(p) for primes p <= bound.
inline HomGraph homgraph(const std::vector<std::string>& names, int prime_bound) {
  HomGraph g;
  for (auto& n : names) catalog(n);  // UnknownName on bad input
  g.nodes = names;
  for (int p = 2; p <= prime_bound; ++p)
    if (detail::is_prime(p)) g.nodes.push_back("GF(" + std::to_string(p) + ")");
  for (auto& s : g.nodes)
    for (auto& d : g.nodes)
      if (s != d && detail::has_hom(s, d)) g.edges.push_back({s, d});
  return g;
}

inline std::string homgraph_dot(const HomGraph& g) {
  auto q = [](const std::string& s) { return "\"" + s + "\""; };
  std::string out = "digraph homs {\n  rankdir=BT;\n";
  for (auto& n : g.nodes) out += "  " + q(n) + ";\n";
  for (auto& [a, b] : g.edges) out += "  " + q(a) + " -> " + q(b) + ";\n";
  return out + "}\n";
}

}  // namespace pfkit

#endif
