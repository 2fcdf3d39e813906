#ifndef PFKIT_EXACTALG_PARSE_HPP
#define PFKIT_EXACTALG_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "pfkit/exactalg/ring.hpp"

namespace pfkit {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error("ParseError", msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

namespace detail {

class ExprParser {
 public:
  ExprParser(const std::string& s, std::size_t pos = 0) : s_(s), i_(pos) {}

  Elem parse_all(const RingPtr& R) {
    Elem e = expr(R);
    skip();
    if (i_ != s_.size()) throw ParseError("unexpected '" + std::string(1, s_[i_]) + "'", i_);
    return e;
  }
  std::size_t pos() const { return i_; }

  Elem expr(const RingPtr& R) {
    Elem v = term(R);
    while (true) {
      skip();
      if (peek('+')) {
        ++i_;
        v = v + term(R);
      } else if (peek('-')) {
        ++i_;
        v = v - term(R);
      } else {
        return v;
      }
    }
  }

 private:
  Elem term(const RingPtr& R) {
    Elem v = unary(R);
    while (true) {
      skip();
      if (peek('*')) {
        ++i_;
        v = v * unary(R);
      } else if (peek('/')) {
        ++i_;
        std::size_t at = i_;
        Elem d = unary(R);
        try {
          v = v / d;
        } catch (const Error& e) {
          if (e.kind() == "DivisionByNonUnit") throw;
          throw ParseError(e.what(), at);
        }
      } else {
        return v;
      }
    }
  }

  Elem unary(const RingPtr& R) {
    skip();
    if (peek('-')) {
      ++i_;
      return -unary(R);
    }
    if (peek('+')) {
      ++i_;
      return unary(R);
    }
    return power(R);
  }

  Elem power(const RingPtr& R) {
    Elem b = atom(R);
    skip();
    if (peek('^')) {
      ++i_;
      skip();
      long long sign = 1;
      bool paren = false;
      if (peek('(')) {
        paren = true;
        ++i_;
        skip();
      }
      if (peek('-')) {
        sign = -1;
        ++i_;
      }
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) throw ParseError("expected integer exponent", i_);
      long long e = std::stoll(s_.substr(start, i_ - start));
      if (paren) {
        skip();
        if (!peek(')')) throw ParseError("expected ')'", i_);
        ++i_;
      }
      return b.pow(sign * e);
    }
    return b;
  }

  Elem atom(const RingPtr& R) {
    skip();
    if (i_ >= s_.size()) throw ParseError("unexpected end of input", i_);
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      if (auto* P = as<ProductRing>(R)) {
        std::size_t save = i_;
        // tuple (a,b) or parenthesised expression
        int depth = 0;
        bool comma = false;
        for (std::size_t j = i_; j < s_.size(); ++j) {
          if (s_[j] == '(') ++depth;
          else if (s_[j] == ')') {
            if (depth == 0) break;
            --depth;
          } else if (s_[j] == ',' && depth == 0) {
            comma = true;
            break;
          }
        }
        if (comma) {
          Elem a = expr(P->left());
          skip();
          if (!peek(',')) throw ParseError("expected ','", i_);
          ++i_;
          Elem b = expr(P->right());
          skip();
          if (!peek(')')) throw ParseError("expected ')'", i_);
          ++i_;
          return P->pair(a, b);
        }
        i_ = save;
      }
      Elem v = expr(R);
      skip();
      if (!peek(')')) throw ParseError("expected ')'", i_);
      ++i_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return R->make(R->from_integer(Integer(s_.substr(start, i_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      std::string name = s_.substr(start, i_ - start);
      auto v = R->symbol(name);
      if (!v) v = R->symbol(alias(name));
      if (!v) throw ParseError("unknown symbol '" + name + "' in " + R->id(), start);
      return *v;
    }
    throw ParseError("unexpected '" + std::string(1, c) + "'", i_);
  }

  static std::string alias(const std::string& n) {
    if (n == "alpha") return "a";
    if (n == "beta") return "b";
    if (n == "gamma") return "c";
    return n;
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) const { return i_ < s_.size() && s_[i_] == c; }

  const std::string& s_;
  std::size_t i_;
};

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

// split at top-level commas
inline std::vector<std::string> split_top(const std::string& s, char sep = ',') {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == sep && depth == 0) {
      out.push_back(strip(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!strip(cur).empty() || !out.empty()) out.push_back(strip(cur));
  return out;
}

inline std::size_t find_product_split(const std::string& s) {
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') --depth;
    else if (depth == 0 && (c == 'x' || c == '*') && i > 0 && i + 1 < s.size()) {
      char n = s[i + 1];
      char p = s[i - 1];
      if ((n == 'G' || n == 'Z' || n == 'Q') && (p == ')' || p == ']' || std::isalnum(static_cast<unsigned char>(p))))
        return i;
    }
  }
  return std::string::npos;
}

}  // namespace detail

/// Parse an element expression in ring R.
inline Elem parse_element(const std::string& text, const RingPtr& R) {
  detail::ExprParser p(text);
  return p.parse_all(R);
}

/// Parse a polynomial over Z in the named variables.
inline ZPoly parse_poly(const std::string& text, const std::vector<std::string>& vars) {
  auto R = std::make_shared<LocalizedRing>(vars, false, std::vector<ZPoly>{});
  Elem e = parse_element(text, R);
  return std::get<payload::Frac>(e.payload()).num;
}

/// Ring declarations: ZZ, QQ, ZZ[1/2], ZZ[a,b], QQ(a,b), GF(q), GF(p)(a),
/// ZZ[zeta]/(zeta^2-zeta+1), ZZ[i,1/2]/(i^2+1), ZZ[x,y]/(...), AxB.
inline RingPtr parse_ring(const std::string& text) {
  std::string s = detail::strip(text);
  auto split = detail::find_product_split(s);
  if (split != std::string::npos) return make_product(parse_ring(s.substr(0, split)), parse_ring(s.substr(split + 1)));
  if (s == "ZZ") return make_integers();
  if (s == "QQ") return make_rationals();
  if (s.rfind("GF", 0) == 0) {
    std::size_t i = 2;
    bool paren = i < s.size() && s[i] == '(';
    if (paren) ++i;
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw ParseError("expected field order", i);
    auto q = static_cast<std::uint32_t>(std::stoul(s.substr(start, i - start)));
    if (paren) {
      if (i >= s.size() || s[i] != ')') throw ParseError("expected ')'", i);
      ++i;
    }
    if (i == s.size()) return make_finite_field(q);
    if (s[i] == '(' && s.back() == ')') {
      std::string var = detail::strip(s.substr(i + 1, s.size() - i - 2));
      auto F = make_finite_field(q);
      if (as<FiniteFieldRing>(F)->field().k() != 1) fail("UnsupportedRing", "function fields only over prime fields");
      return std::make_shared<ModPFunctionField>(q, var);
    }
    throw ParseError("unexpected text after GF(q)", i);
  }
  if (s.rfind("QQ(", 0) == 0 && s.back() == ')') {
    std::vector<std::string> vars;
    for (auto& v : detail::split_top(s.substr(3, s.size() - 4))) vars.push_back(v);
    return make_function_field(vars);
  }
  bool field = s.rfind("QQ[", 0) == 0;
  if (s.rfind("ZZ[", 0) == 0 || field) {
    int depth = 0;
    std::size_t close = std::string::npos;
    for (std::size_t i = 2; i < s.size(); ++i) {
      if (s[i] == '[' || s[i] == '(') ++depth;
      if (s[i] == ']' || s[i] == ')') {
        --depth;
        if (depth == 0 && s[i] == ']') {
          close = i;
          break;
        }
      }
    }
    if (close == std::string::npos) throw ParseError("expected ']'", s.size());
    std::vector<std::string> vars, inverses;
    for (auto& item : detail::split_top(s.substr(3, close - 3))) {
      if (item.rfind("1/", 0) == 0) inverses.push_back(item.substr(2));
      else if (!item.empty()) vars.push_back(item);
    }
    std::string rest = detail::strip(s.substr(close + 1));
    std::vector<ZPoly> rels;
    if (!rest.empty()) {
      if (rest.size() < 3 || rest[0] != '/' || rest[1] != '(' || rest.back() != ')')
        throw ParseError("expected '/(relations)'", close + 1);
      for (auto& r : detail::split_top(rest.substr(2, rest.size() - 3))) rels.push_back(parse_poly(r, vars));
    }
    std::vector<ZPoly> inv;
    for (auto& t : inverses) inv.push_back(parse_poly(t, vars));
    if (rels.empty()) {
      if (field) return make_function_field(vars);
      return make_localized(vars, inv);
    }
    // quadratic number ring
    if (vars.size() == 1 && rels.size() == 1) {
      auto cs = rels[0].coefficients_in(0);
      bool ints = true;
      for (auto& c : cs) ints = ints && c.is_constant();
      if (cs.size() == 3 && ints && cs[2].constant_value() == 1) {
        std::vector<Integer> primes;
        bool ok = true;
        for (auto& p : inv) {
          if (!p.is_constant()) ok = false;
          else primes.push_back(abs(p.constant_value()));
        }
        if (ok)
          return std::make_shared<QuadraticRing>(vars[0], -cs[1].constant_value(), cs[0].constant_value(), field, primes);
      }
    }
    if (!inv.empty() || field) fail("UnsupportedRing", "localized quotient rings: " + s);
    return make_quotient(vars, rels);
  }
  throw ParseError("unknown ring declaration '" + s + "'", 0);
}

}  // namespace pfkit

#endif
