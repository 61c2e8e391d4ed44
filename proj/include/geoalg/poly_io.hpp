#pragma once

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>

#include "geoalg/poly.hpp"

namespace geoalg {

inline std::string mono_string(const Mono& m) {
  std::string s;
  for (auto& [v, e] : m) {
    if (!s.empty()) s += "*";
    s += v.name();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& t : p.terms()) {
    Rational c = t.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      out += neg ? "-" : "";
    else
      out += neg ? " - " : " + ";
    first = false;
    if (t.mono.empty()) {
      out += c.get_str();
    } else {
      if (c != 1) out += c.get_str() + "*";
      out += mono_string(t.mono);
    }
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Poly& p) {
  return os << to_string(p);
}

namespace detail {

// Recursive-descent parser for the expression grammar.
class PolyParser {
 public:
  explicit PolyParser(const std::string& s) : s_(s) {}

  Poly parse() {
    Poly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw AlgebraError("parse error at " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Poly expr() {
    Poly r;
    if (eat('-'))
      r = -term();
    else {
      eat('+');
      r = term();
    }
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  Poly term() {
    Poly r = unary();
    for (;;) {
      if (eat('*')) {
        r *= unary();
      } else if (eat('/')) {
        Poly d = unary();
        if (!d.is_monomial()) fail("division by a non-monomial");
        r *= d.pow(-1);
      } else {
        return r;
      }
    }
  }

  Poly unary() {
    if (eat('-')) return -unary();
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      bool paren = eat('(');
      int e = signed_int();
      if (paren) expect(')');
      return base.pow(e);
    }
    return base;
  }

  int signed_int() {
    skip();
    bool neg = false;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    int v = std::stoi(s_.substr(start, pos_ - start));
    return neg ? -v : v;
  }

  std::vector<int> index_list() {
    std::vector<int> v;
    expect('[');
    v.push_back(signed_int());
    while (eat(',')) v.push_back(signed_int());
    expect(']');
    return v;
  }

  Poly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Poly r = expr();
      expect(')');
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return Poly(Rational(s_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      return Poly(symbol(id));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  static bool digits(const std::string& s) {
    return !s.empty() &&
           std::all_of(s.begin(), s.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
  }

  Sym symbol(const std::string& id) {
    if (id == "G") {
      auto v = index_list();
      if (v.size() != 3) fail("G[i,j,k] takes three indices");
      return Sym::gen(v[0], v[1], v[2]);
    }
    if (id == "Ghat") {
      auto v = index_list();
      if (v.size() != 2) fail("Ghat[i,j] takes two indices");
      return Sym::ghat(v[0], v[1]);
    }
    if (id == "TrH") {
      auto v = index_list();
      if (v.size() != 1) fail("TrH[k] takes one index");
      return Sym::trh(v[0]);
    }
    if (id.size() > 1 && id[0] == 's' && digits(id.substr(1))) return Sym::s(std::stoi(id.substr(1)));
    if (id.size() > 1 && id[0] == 't' && digits(id.substr(1))) return Sym::t(std::stoi(id.substr(1)));
    if (id == "lam") return Sym::lam();
    if (id == "mu") return Sym::mu();
    if (id == "h") return Sym::h();
    if (id == "Pi") return Sym::pi();
    if (id == "hbar") return Sym::hbar();
    if (id == "q") return Sym::q();
    return Sym::free(id);
  }
};

}  // namespace detail

inline Poly parse_poly(const std::string& text) {
  return detail::PolyParser(text).parse();
}

}  // namespace geoalg
