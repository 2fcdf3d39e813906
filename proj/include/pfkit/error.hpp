#ifndef PFKIT_ERROR_HPP
#define PFKIT_ERROR_HPP

#include <cstdlib>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfkit {

// Every failure carries a short kind tag ("DivisionByNonUnit", "ResourceLimit", ...).
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& what) : Error("ResourceLimit", what) {}
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& what) {
  throw Error(kind, what);
}

struct Limits {
  std::size_t gb_basis = 4000;        // max polynomials in a Groebner basis
  std::size_t gb_pairs = 400000;      // max critical pairs processed
  std::size_t terms = 200000;         // max terms in an intermediate polynomial
  std::size_t enumeration = 200000000;  // max nodes in representation searches
  std::size_t ground = 14;            // ground-set cap for exhaustive matroid scans
  int fun_cutoff = 4;                 // k cutoff for infinite fun-sets
};

namespace detail {
inline Limits parse_limits(const char* s) {
  Limits l;
  if (!s) return l;
  std::string spec(s);
  std::size_t pos = 0;
  while (pos < spec.size()) {
    auto end = spec.find(',', pos);
    if (end == std::string::npos) end = spec.size();
    auto item = spec.substr(pos, end - pos);
    auto eq = item.find('=');
    if (eq != std::string::npos) {
      auto key = item.substr(0, eq);
      auto val = std::strtoull(item.c_str() + eq + 1, nullptr, 10);
      if (key == "gb_basis") l.gb_basis = val;
      else if (key == "gb_pairs") l.gb_pairs = val;
      else if (key == "terms") l.terms = val;
      else if (key == "enumeration") l.enumeration = val;
      else if (key == "ground") l.ground = val;
      else if (key == "fun_cutoff") l.fun_cutoff = static_cast<int>(val);
    }
    pos = end + 1;
  }
  return l;
}
}  // namespace detail

// Budgets, overridable through PFKIT_LIMITS="gb_basis=..,terms=..,ground=..".
inline const Limits& limits() {
  static const Limits l = detail::parse_limits(std::getenv("PFKIT_LIMITS"));
  return l;
}

}  // namespace pfkit

#endif
