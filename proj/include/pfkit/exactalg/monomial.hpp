#ifndef PFKIT_EXACTALG_MONOMIAL_HPP
#define PFKIT_EXACTALG_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>

#include "pfkit/error.hpp"

namespace pfkit {

inline constexpr int kMaxVars = 48;

/// Graded reverse lexicographic order, optionally refined into an elimination
/// order: the first `elim` variables form a block that is compared first.
struct MonomialOrder {
  int elim = 0;
  friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;
};

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  std::uint16_t operator[](int i) const { return e[i]; }

  static Monomial var(int i, unsigned power = 1) {
    if (i >= kMaxVars) throw ResourceLimit("more than 48 variables");
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    m.deg = power;
    return m;
  }

  bool is_one() const { return deg == 0; }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.deg == b.deg && a.e == b.e;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      unsigned s = unsigned(a.e[i]) + b.e[i];
      if (s > 0xffff) throw ResourceLimit("exponent overflow");
      m.e[i] = static_cast<std::uint16_t>(s);
    }
    m.deg = a.deg + b.deg;
    return m;
  }

  bool divides(const Monomial& b) const {
    if (deg > b.deg) return false;
    for (int i = 0; i < kMaxVars; ++i)
      if (e[i] > b.e[i]) return false;
    return true;
  }

  // b / *this, assuming divides(b)
  Monomial quotient_of(const Monomial& b) const {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) m.e[i] = b.e[i] - e[i];
    m.deg = b.deg - deg;
    return m;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial m;
    for (int i = 0; i < kMaxVars; ++i) {
      m.e[i] = std::max(a.e[i], b.e[i]);
      m.deg += m.e[i];
    }
    return m;
  }

  static bool coprime(const Monomial& a, const Monomial& b) {
    for (int i = 0; i < kMaxVars; ++i)
      if (a.e[i] && b.e[i]) return false;
    return true;
  }

  std::size_t hash() const {
    std::size_t h = deg;
    for (int i = 0; i < kMaxVars; ++i) h = h * 1000003u + e[i];
    return h;
  }
};

namespace detail {
inline int grevlex_range(const Monomial& a, const Monomial& b, int lo, int hi) {
  unsigned da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a.e[i];
    db += b.e[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (int i = hi - 1; i >= lo; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}
}  // namespace detail

/// Three-way comparison: positive when a > b.
inline int compare(const Monomial& a, const Monomial& b, const MonomialOrder& ord) {
  if (ord.elim > 0) {
    int c = detail::grevlex_range(a, b, 0, ord.elim);
    if (c) return c;
    return detail::grevlex_range(a, b, ord.elim, kMaxVars);
  }
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  return 0;
}

}  // namespace pfkit

#endif
