#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace geoalg {

using Rational = mpq_class;

inline Rational frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Variable kinds, listed in monomial order.
enum class Kind : std::uint8_t {
  S = 1,    // s_i = e^{Z_i/2}
  T,        // t_j = e^{Y_j/2}
  Lam,
  Mu,
  H,        // e^{P_h/2}
  Pi,
  Hbar,
  Q,
  Gen,      // G[i,j,k]
  Ghat,     // Ghat[i,j]
  TrH,      // Tr(H^k), opaque parameter
  Free
};

/// A variable packed into one ordered 64-bit key: kind, then up to three
/// signed 16-bit indices.
class Sym {
 public:
  Sym() = default;
  static Sym make(Kind k, int a = 0, int b = 0, int c = 0) {
    Sym s;
    s.key_ = (std::uint64_t(k) << 48) | (std::uint64_t(a + 32768) << 32) |
             (std::uint64_t(b + 32768) << 16) | std::uint64_t(c + 32768);
    return s;
  }
  static Sym s(int i) { return make(Kind::S, i); }
  static Sym t(int j) { return make(Kind::T, j); }
  static Sym lam() { return make(Kind::Lam); }
  static Sym mu() { return make(Kind::Mu); }
  static Sym h() { return make(Kind::H); }
  static Sym pi() { return make(Kind::Pi); }
  static Sym hbar() { return make(Kind::Hbar); }
  static Sym q() { return make(Kind::Q); }
  static Sym gen(int i, int j, int k) { return make(Kind::Gen, i, j, k); }
  static Sym ghat(int i, int j) { return make(Kind::Ghat, i, j); }
  static Sym trh(int k) { return make(Kind::TrH, k); }
  static Sym free(const std::string& name);

  Kind kind() const { return Kind(key_ >> 48); }
  int a() const { return int((key_ >> 32) & 0xffff) - 32768; }
  int b() const { return int((key_ >> 16) & 0xffff) - 32768; }
  int c() const { return int(key_ & 0xffff) - 32768; }
  std::uint64_t key() const { return key_; }
  bool is_generator() const {
    return kind() == Kind::Gen || kind() == Kind::Ghat;
  }
  std::string name() const;

  friend bool operator==(Sym x, Sym y) { return x.key_ == y.key_; }
  friend bool operator!=(Sym x, Sym y) { return x.key_ != y.key_; }
  friend bool operator<(Sym x, Sym y) { return x.key_ < y.key_; }

 private:
  std::uint64_t key_ = 0;
};

namespace detail {

struct FreeTable {
  std::mutex mu;
  std::vector<std::string> names;
  std::unordered_map<std::string, int> index;
};

inline FreeTable& free_table() {
  static FreeTable table;
  return table;
}

}  // namespace detail

inline Sym Sym::free(const std::string& name) {
  auto& tab = detail::free_table();
  std::lock_guard<std::mutex> lock(tab.mu);
  auto it = tab.index.find(name);
  if (it != tab.index.end()) return make(Kind::Free, it->second);
  int id = int(tab.names.size());
  tab.names.push_back(name);
  tab.index.emplace(name, id);
  return make(Kind::Free, id);
}

inline std::string Sym::name() const {
  auto idx = [](int v) { return std::to_string(v); };
  switch (kind()) {
    case Kind::S: return "s" + idx(a());
    case Kind::T: return "t" + idx(a());
    case Kind::Lam: return "lam";
    case Kind::Mu: return "mu";
    case Kind::H: return "h";
    case Kind::Pi: return "Pi";
    case Kind::Hbar: return "hbar";
    case Kind::Q: return "q";
    case Kind::Gen: return "G[" + idx(a()) + "," + idx(b()) + "," + idx(c()) + "]";
    case Kind::Ghat: return "Ghat[" + idx(a()) + "," + idx(b()) + "]";
    case Kind::TrH: return "TrH[" + idx(a()) + "]";
    case Kind::Free: {
      auto& tab = detail::free_table();
      std::lock_guard<std::mutex> lock(tab.mu);
      return tab.names.at(std::size_t(a()));
    }
  }
  return "?";
}

/// Sparse Laurent monomial: sorted (variable, nonzero exponent) pairs.
using Mono = std::vector<std::pair<Sym, int>>;

inline Mono mono_mul(const Mono& x, const Mono& y) {
  Mono r;
  r.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i].first < y[j].first) {
      r.push_back(x[i++]);
    } else if (y[j].first < x[i].first) {
      r.push_back(y[j++]);
    } else {
      int e = x[i].second + y[j].second;
      if (e != 0) r.emplace_back(x[i].first, e);
      ++i;
      ++j;
    }
  }
  for (; i < x.size(); ++i) r.push_back(x[i]);
  for (; j < y.size(); ++j) r.push_back(y[j]);
  return r;
}

/// Lexicographic order on exponent vectors; true if x is greater than y.
inline bool mono_greater(const Mono& x, const Mono& y) {
  std::size_t i = 0;
  for (; i < x.size() && i < y.size(); ++i) {
    if (x[i].first == y[i].first) {
      if (x[i].second != y[i].second) return x[i].second > y[i].second;
      continue;
    }
    if (x[i].first < y[i].first) return x[i].second > 0;
    return y[i].second < 0;
  }
  if (i < x.size()) return x[i].second > 0;
  if (i < y.size()) return y[i].second < 0;
  return false;
}

struct MonoHash {
  std::size_t operator()(const Mono& m) const {
    std::uint64_t h = 1469598103934665603ull;
    for (auto& [s, e] : m) {
      h ^= s.key() + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= std::uint64_t(std::int64_t(e)) * 0xff51afd7ed558ccdull;
      h *= 1099511628211ull;
    }
    return std::size_t(h);
  }
};

struct Term {
  Mono mono;
  Rational coef;
};

/// Exact multivariate Laurent polynomial with rational coefficients.
/// Terms are kept in decreasing lexicographic order with no zero
/// coefficients, so structural equality is semantic equality.
class Poly {
 public:
  Poly() = default;
  Poly(int c) : Poly(Rational(c)) {}
  Poly(long c) : Poly(Rational(c)) {}
  Poly(const Rational& c) {
    if (c != 0) terms_.push_back({Mono{}, c});
  }
  Poly(Sym v, int e = 1) {
    if (e == 0)
      terms_.push_back({Mono{}, Rational(1)});
    else
      terms_.push_back({Mono{{v, e}}, Rational(1)});
  }
  static Poly monomial(Mono m, Rational c) {
    Poly p;
    if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
    return p;
  }
  static Poly from_terms(std::vector<Term> ts) {
    Poly p;
    p.terms_ = std::move(ts);
    p.normalize();
    return p;
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.empty());
  }
  Rational constant_value() const {
    if (!is_constant()) throw AlgebraError("not a constant");
    return terms_.empty() ? Rational(0) : terms_[0].coef;
  }
  Rational constant_term() const {
    for (auto& t : terms_)
      if (t.mono.empty()) return t.coef;
    return 0;
  }
  bool is_monomial() const { return terms_.size() == 1; }

  friend bool operator==(const Poly& x, const Poly& y) {
    if (x.terms_.size() != y.terms_.size()) return false;
    for (std::size_t i = 0; i < x.terms_.size(); ++i)
      if (x.terms_[i].mono != y.terms_[i].mono ||
          x.terms_[i].coef != y.terms_[i].coef)
        return false;
    return true;
  }
  friend bool operator!=(const Poly& x, const Poly& y) { return !(x == y); }

  Poly operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coef = -t.coef;
    return r;
  }

  friend Poly operator+(const Poly& x, const Poly& y) { return add(x, y, 1); }
  friend Poly operator-(const Poly& x, const Poly& y) { return add(x, y, -1); }
  friend Poly operator*(const Poly& x, const Poly& y) {
    if (x.is_zero() || y.is_zero()) return Poly();
    if (x.terms_.size() == 1 && x.terms_[0].mono.empty())
      return y.scaled(x.terms_[0].coef);
    if (y.terms_.size() == 1 && y.terms_[0].mono.empty())
      return x.scaled(y.terms_[0].coef);
    std::unordered_map<Mono, Rational, MonoHash> acc;
    acc.reserve(x.size() * y.size());
    for (auto& a : x.terms_)
      for (auto& b : y.terms_) {
        auto [it, fresh] = acc.try_emplace(mono_mul(a.mono, b.mono));
        if (fresh)
          it->second = a.coef * b.coef;
        else
          it->second += a.coef * b.coef;
      }
    Poly r;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c != 0) r.terms_.push_back({m, c});
    r.sort_terms();
    return r;
  }
  Poly& operator+=(const Poly& y) { return *this = *this + y; }
  Poly& operator-=(const Poly& y) { return *this = *this - y; }
  Poly& operator*=(const Poly& y) { return *this = *this * y; }

  Poly scaled(const Rational& c) const {
    if (c == 0) return Poly();
    Poly r = *this;
    for (auto& t : r.terms_) t.coef *= c;
    return r;
  }

  /// Integer power; negative powers only for monomials.
  Poly pow(int e) const {
    if (e < 0) {
      if (!is_monomial())
        throw AlgebraError("negative power of a non-monomial");
      Mono m = terms_[0].mono;
      for (auto& [s, x] : m) x *= e;
      return monomial(std::move(m), mpq_pow(terms_[0].coef, e));
    }
    Poly r(1), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  /// Exponent range of a variable across all terms.
  std::pair<int, int> degree_range(Sym v) const {
    int lo = 0, hi = 0;
    bool first = true;
    for (auto& t : terms_) {
      int e = exponent(t.mono, v);
      if (first) lo = hi = e, first = false;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    return {lo, hi};
  }

  /// Coefficient of v^e, as a polynomial in the remaining variables.
  Poly coeff(Sym v, int e) const {
    std::vector<Term> out;
    for (auto& t : terms_) {
      if (exponent(t.mono, v) != e) continue;
      Mono m;
      for (auto& p : t.mono)
        if (p.first != v) m.push_back(p);
      out.push_back({std::move(m), t.coef});
    }
    return from_terms(std::move(out));
  }

  /// Keep terms whose exponent of v is at least lo.
  Poly truncate_below(Sym v, int lo) const {
    Poly r;
    for (auto& t : terms_)
      if (exponent(t.mono, v) >= lo) r.terms_.push_back(t);
    return r;
  }

  std::vector<Sym> variables() const {
    std::vector<Sym> vs;
    for (auto& t : terms_)
      for (auto& p : t.mono) vs.push_back(p.first);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
  }

  bool depends_on(Sym v) const {
    for (auto& t : terms_)
      if (exponent(t.mono, v) != 0) return true;
    return false;
  }

  static int exponent(const Mono& m, Sym v) {
    for (auto& p : m)
      if (p.first == v) return p.second;
    return 0;
  }

  static Rational mpq_pow(const Rational& c, int e) {
    Rational r(1), b = c;
    unsigned u = unsigned(e < 0 ? -e : e);
    while (u) {
      if (u & 1) r *= b;
      u >>= 1;
      if (u) b *= b;
    }
    if (e < 0) {
      if (r == 0) throw AlgebraError("division by zero");
      r = 1 / r;
    }
    return r;
  }

 private:
  std::vector<Term> terms_;

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) {
      return mono_greater(a.mono, b.mono);
    });
  }

  void normalize() {
    std::unordered_map<Mono, Rational, MonoHash> acc;
    for (auto& t : terms_) acc[t.mono] += t.coef;
    terms_.clear();
    for (auto& [m, c] : acc)
      if (c != 0) terms_.push_back({m, c});
    sort_terms();
  }

  static Poly add(const Poly& x, const Poly& y, int sign) {
    Poly r;
    r.terms_.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.terms_.size() || j < y.terms_.size()) {
      if (j == y.terms_.size() ||
          (i < x.terms_.size() && mono_greater(x.terms_[i].mono, y.terms_[j].mono))) {
        r.terms_.push_back(x.terms_[i++]);
      } else if (i == x.terms_.size() ||
                 mono_greater(y.terms_[j].mono, x.terms_[i].mono)) {
        r.terms_.push_back(y.terms_[j++]);
        if (sign < 0) r.terms_.back().coef = -r.terms_.back().coef;
      } else {
        Rational c = sign > 0 ? Rational(x.terms_[i].coef + y.terms_[j].coef)
                              : Rational(x.terms_[i].coef - y.terms_[j].coef);
        if (c != 0) r.terms_.push_back({x.terms_[i].mono, c});
        ++i;
        ++j;
      }
    }
    return r;
  }
};

inline Poly var(Sym v) { return Poly(v); }
inline Poly lam(int e = 1) { return Poly(Sym::lam(), e); }
inline Poly gen(int i, int j, int k) { return Poly(Sym::gen(i, j, k)); }

/// Formal partial derivative with respect to any variable, generators
/// included.
inline Poly diff_any(const Poly& a, Sym v) {
  std::vector<Term> out;
  for (auto& t : a.terms()) {
    int e = Poly::exponent(t.mono, v);
    if (e == 0) continue;
    Mono m;
    for (auto& p : t.mono) {
      if (p.first != v)
        m.push_back(p);
      else if (p.second != 1)
        m.emplace_back(v, p.second - 1);
    }
    out.push_back({std::move(m), t.coef * e});
  }
  return Poly::from_terms(std::move(out));
}

/// Partial derivative with respect to a plain variable.
inline Poly poly_diff(const Poly& a, Sym v) {
  if (v.is_generator())
    throw AlgebraError("poly_diff: " + v.name() + " is a generator");
  return diff_any(a, v);
}

inline Poly poly_mul(const Poly& a, const Poly& b) { return a * b; }
inline Poly poly_add(const Poly& a, const Poly& b) { return a + b; }

using Bindings = std::map<Sym, Poly>;

/// Simultaneous substitution. Negative powers require the image to be a
/// unit of the Laurent ring, i.e. a single monomial.
inline Poly poly_subst(const Poly& a, const Bindings& b) {
  std::map<std::pair<Sym, int>, Poly> cache;
  auto power = [&](Sym v, const Poly& img, int e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    if (e < 0 && !img.is_monomial())
      throw AlgebraError("poly_subst: " + v.name() +
                         " maps to a non-invertible value under a negative power");
    return cache.emplace(key, img.pow(e)).first->second;
  };
  Poly result;
  std::vector<Term> plain;
  for (auto& t : a.terms()) {
    Mono rest;
    Poly factor(1);
    bool touched = false;
    for (auto& [v, e] : t.mono) {
      auto it = b.find(v);
      if (it == b.end()) {
        rest.emplace_back(v, e);
      } else {
        factor = factor * power(v, it->second, e);
        touched = true;
      }
    }
    if (!touched) {
      plain.push_back(t);
    } else {
      result += factor * Poly::monomial(std::move(rest), t.coef);
    }
  }
  return result + Poly::from_terms(std::move(plain));
}

/// Floating point evaluation with every variable bound.
inline double eval_double(const Poly& a, const std::function<double(Sym)>& val) {
  double sum = 0;
  for (auto& t : a.terms()) {
    double x = t.coef.get_d();
    for (auto& [v, e] : t.mono) {
      double base = val(v);
      double p = 1;
      for (int i = 0; i < std::abs(e); ++i) p *= base;
      x *= e < 0 ? 1.0 / p : p;
    }
    sum += x;
  }
  return sum;
}

/// Exact evaluation with every variable bound to a rational.
inline Rational eval_rational(const Poly& a, const std::function<Rational(Sym)>& val) {
  Rational sum = 0;
  std::map<std::pair<Sym, int>, Rational> cache;
  for (auto& t : a.terms()) {
    Rational x = t.coef;
    for (auto& [v, e] : t.mono) {
      auto key = std::make_pair(v, e);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, Poly::mpq_pow(val(v), e)).first;
      x *= it->second;
    }
    sum += x;
  }
  return sum;
}

}  // namespace geoalg

#include "geoalg/poly_io.hpp"
