#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geoalg/generators.hpp"
#include "geoalg/matrix.hpp"

namespace geoalg::ks {

/// Symbol id of the hole monodromy H; larger than every M index, so it
/// orders after all M_i in the bracket.
constexpr int kH = 1000;

struct TraceLetter {
  int sym;  // i for M_i, kH for H
  int exp;
  friend bool operator==(const TraceLetter& a, const TraceLetter& b) {
    return a.sym == b.sym && a.exp == b.exp;
  }
  friend bool operator<(const TraceLetter& a, const TraceLetter& b) {
    return a.sym != b.sym ? a.sym < b.sym : a.exp < b.exp;
  }
};

using Word = std::vector<TraceLetter>;

inline std::string word_string(const Word& w) {
  std::string s;
  for (auto& l : w) {
    if (!s.empty()) s += " ";
    s += l.sym == kH ? "H" : "M" + std::to_string(l.sym);
    if (l.exp != 1) s += "^" + std::to_string(l.exp);
  }
  return s.empty() ? "1" : s;
}

/// Cyclic word in canonical form. M letters carry exponent 1 (the sign of
/// M^{-1} = -M and M^2 = -1 is moved into the coefficient by normalize).
struct TraceWord {
  Word letters;
  friend bool operator==(const TraceWord& a, const TraceWord& b) { return a.letters == b.letters; }
  friend bool operator<(const TraceWord& a, const TraceWord& b) { return a.letters < b.letters; }
  std::string to_string() const { return "Tr(" + word_string(letters) + ")"; }
};

/// Bring a cyclic word to canonical form; returns the scalar sign picked
/// up from the 2x2 identities of traceless determinant-one M letters.
inline int normalize(Word& w) {
  int sign = 1;
  Word st;
  auto push = [&](TraceLetter l) {
    if (l.sym != kH) {
      int e = ((l.exp % 4) + 4) % 4;
      if (e == 2 || e == 3) sign = -sign;
      if (e == 0 || e == 2) return;
      l.exp = 1;
    }
    if (l.exp == 0) return;
    while (!st.empty() && st.back().sym == l.sym) {
      TraceLetter top = st.back();
      st.pop_back();
      if (l.sym == kH) {
        l.exp += top.exp;
        if (l.exp == 0) return;
      } else {
        sign = -sign;  // M M = -1
        return;
      }
    }
    st.push_back(l);
  };
  for (auto& l : w) push(l);
  // cyclic merge at the seam
  while (st.size() >= 2 && st.front().sym == st.back().sym) {
    TraceLetter a = st.front(), b = st.back();
    st.erase(st.begin());
    st.pop_back();
    if (a.sym == kH) {
      if (a.exp + b.exp != 0) st.insert(st.begin(), TraceLetter{kH, a.exp + b.exp});
    } else {
      sign = -sign;
    }
  }
  // minimal rotation
  Word best = st;
  for (std::size_t r = 1; r < st.size(); ++r) {
    Word rot(st.begin() + std::ptrdiff_t(r), st.end());
    rot.insert(rot.end(), st.begin(), st.begin() + std::ptrdiff_t(r));
    if (rot < best) best = rot;
  }
  w = best;
  return sign;
}

/// Formal linear combination of products of traces.
class TraceExpr {
 public:
  using Product = std::vector<TraceWord>;  // sorted multiset

  TraceExpr() = default;
  static TraceExpr trace(Word w, Poly coef = Poly(1)) {
    TraceExpr e;
    e.add_word(std::move(w), coef);
    return e;
  }

  void add_word(Word w, const Poly& coef) {
    int sign = normalize(w);
    add_product({TraceWord{std::move(w)}}, sign > 0 ? coef : -coef);
  }

  void add_product(Product p, const Poly& coef) {
    if (coef.is_zero()) return;
    for (auto& t : p)
      if (t.letters.size() == 1 && t.letters[0].sym != kH) return;  // Tr M = 0
    std::sort(p.begin(), p.end());
    auto& c = terms_[p];
    c += coef;
    if (c.is_zero()) terms_.erase(p);
  }

  const std::map<Product, Poly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TraceExpr& operator+=(const TraceExpr& o) {
    for (auto& [p, c] : o.terms_) add_product(p, c);
    return *this;
  }
  friend TraceExpr operator+(TraceExpr a, const TraceExpr& b) { return a += b; }
  TraceExpr scaled(const Poly& s) const {
    TraceExpr r;
    for (auto& [p, c] : terms_) r.add_product(p, c * s);
    return r;
  }
  friend TraceExpr operator*(const TraceExpr& a, const TraceExpr& b) {
    TraceExpr r;
    for (auto& [p, c] : a.terms_)
      for (auto& [q, d] : b.terms_) {
        Product pq = p;
        pq.insert(pq.end(), q.begin(), q.end());
        r.add_product(pq, c * d);
      }
    return r;
  }
  friend bool operator==(const TraceExpr& a, const TraceExpr& b) { return a.terms_ == b.terms_; }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (auto& [p, c] : terms_) {
      if (!s.empty()) s += " + ";
      s += "(" + geoalg::to_string(c) + ")";
      for (auto& t : p) s += "*" + t.to_string();
    }
    return s;
  }

 private:
  std::map<Product, Poly> terms_;
};

// ---------------------------------------------------------------------------
// Letter-level bracket. A term c (P (x) Q) Omega (R (x) S) is stored as
// four words; the product lands in the single trace Tr(X P S V U Q R Y)
// when the bracketed letters sit in Tr(X a Y) and Tr(U b V).

struct OmegaTerm {
  Rational coef;
  Word P, Q, R, S;
};

inline std::vector<OmegaTerm> letter_bracket(TraceLetter x, TraceLetter y) {
  Word A{{x.sym, 1}}, B{{y.sym, 1}};
  std::vector<OmegaTerm> t;
  Rational half = frac(1, 2);
  if (x.sym == y.sym) {
    t = {{half, {}, B, A, {}}, {-half, A, {}, {}, B}};
  } else {
    t = {{half, A, {}, {}, B}, {half, {}, B, A, {}}, {-half, {}, {}, A, B}, {-half, A, B, {}, {}}};
    if (x.sym > y.sym)
      for (auto& term : t) term.coef = -term.coef;
  }
  // {X^{-1} (x) Y} = -(X^{-1})^1 {X (x) Y} (X^{-1})^1, same on the second slot
  auto invert = [](std::vector<OmegaTerm>& ts, TraceLetter l, bool first) {
    TraceLetter inv{l.sym, -1};
    for (auto& term : ts) {
      term.coef = -term.coef;
      if (first) {
        term.P.insert(term.P.begin(), inv);
        term.R.push_back(inv);
      } else {
        term.Q.insert(term.Q.begin(), inv);
        term.S.push_back(inv);
      }
    }
  };
  if (x.exp == -1) invert(t, x, true);
  if (y.exp == -1) invert(t, y, false);
  return t;
}

/// Expand powers into unit letters.
inline Word expand(const Word& w) {
  Word r;
  for (auto& l : w) {
    if (l.exp == 0) continue;
    int s = l.exp > 0 ? 1 : -1;
    for (int k = 0; k < std::abs(l.exp); ++k) r.push_back({l.sym, s});
  }
  return r;
}

/// {Tr w1, Tr w2} under the letter brackets, by Leibniz over letters.
inline TraceExpr ks_bracket_words(const Word& w1, const Word& w2) {
  Word A = expand(w1), B = expand(w2);
  TraceExpr out;
  for (std::size_t p = 0; p < A.size(); ++p)
    for (std::size_t q = 0; q < B.size(); ++q)
      for (auto& t : letter_bracket(A[p], B[q])) {
        Word w(A.begin(), A.begin() + std::ptrdiff_t(p));
        w.insert(w.end(), t.P.begin(), t.P.end());
        w.insert(w.end(), t.S.begin(), t.S.end());
        w.insert(w.end(), B.begin() + std::ptrdiff_t(q + 1), B.end());
        w.insert(w.end(), B.begin(), B.begin() + std::ptrdiff_t(q));
        w.insert(w.end(), t.Q.begin(), t.Q.end());
        w.insert(w.end(), t.R.begin(), t.R.end());
        w.insert(w.end(), A.begin() + std::ptrdiff_t(p + 1), A.end());
        out.add_word(std::move(w), Poly(t.coef));
      }
  return out;
}

inline void check_alphabet(const Word& w, int n) {
  for (auto& l : w)
    if (l.sym != kH && (l.sym < 1 || l.sym > n))
      throw AlgebraError("ks: letter M" + std::to_string(l.sym) + " outside the alphabet M1..M" +
                         std::to_string(n) + ", H");
}

/// Bracket of two trace expressions, Leibniz over trace factors.
inline TraceExpr ks_bracket_symbolic(const TraceExpr& a, const TraceExpr& b, int n) {
  TraceExpr out;
  for (auto& [p, c] : a.terms())
    for (auto& [q, d] : b.terms())
      for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < q.size(); ++j) {
          check_alphabet(p[i].letters, n);
          check_alphabet(q[j].letters, n);
          TraceExpr core = ks_bracket_words(p[i].letters, q[j].letters);
          TraceExpr::Product rest;
          for (std::size_t x = 0; x < p.size(); ++x)
            if (x != i) rest.push_back(p[x]);
          for (std::size_t y = 0; y < q.size(); ++y)
            if (y != j) rest.push_back(q[y]);
          for (auto& [cp, cc] : core.terms()) {
            TraceExpr::Product prod = cp;
            prod.insert(prod.end(), rest.begin(), rest.end());
            out.add_product(prod, cc * c * d);
          }
        }
  return out;
}

inline TraceExpr ks_bracket_symbolic(const Word& w1, const Word& w2, int n) {
  return ks_bracket_symbolic(TraceExpr::trace(w1), TraceExpr::trace(w2), n);
}

/// Word of G^{(k)}_{i,j} without the leading minus: M_i H^k M_j H^{-k}.
inline Word generator_word(int i, int j, int k, const Word& h = {{kH, 1}}) {
  Word w{{i, 1}};
  for (int r = 0; r < std::abs(k); ++r)
    for (std::size_t x = 0; x < h.size(); ++x) {
      if (k > 0)
        w.push_back(h[x]);
      else
        w.push_back({h[h.size() - 1 - x].sym, -h[h.size() - 1 - x].exp});
    }
  w.push_back({j, 1});
  for (int r = 0; r < std::abs(k); ++r)
    for (std::size_t x = 0; x < h.size(); ++x) {
      if (k > 0)
        w.push_back({h[h.size() - 1 - x].sym, -h[h.size() - 1 - x].exp});
      else
        w.push_back(h[x]);
    }
  return w;
}

/// G^{(k)}_{i,j} = -Tr(M_i H^k M_j H^{-k}) as a trace expression.
inline TraceExpr generator_trace(int i, int j, int k, const Word& h = {{kH, 1}}) {
  return TraceExpr::trace(generator_word(i, j, k, h), Poly(-1));
}

// ---------------------------------------------------------------------------
// Reduction to generators.

struct IrreducibleWord : AlgebraError {
  using AlgebraError::AlgebraError;
};

namespace detail {

// A traceless factor N = H^c M_a H^{-c}.
struct NFactor {
  int a, c;
  friend bool operator<(const NFactor& x, const NFactor& y) {
    return x.a != y.a ? x.a < y.a : x.c < y.c;
  }
};

// Tr(N_x N_y) = -G^{(d-c)}_{a,b}.
inline Poly pair_trace(const NFactor& x, const NFactor& y) { return -G(x.a, y.a, y.c - x.c); }

class Wick {
 public:
  explicit Wick(std::mt19937* rng) : rng_(rng) {}

  // Tr(N_1 ... N_r) for traceless 2x2 factors, from
  // N_x N_y + N_y N_x = Tr(N_x N_y): pair the first factor with each
  // other factor in turn.
  Poly trace(std::vector<NFactor> ns) {
    if (ns.empty()) return Poly(2);
    if (rng_) {
      std::uniform_int_distribution<std::size_t> pick(0, ns.size() - 1);
      std::rotate(ns.begin(), ns.begin() + std::ptrdiff_t(pick(*rng_)), ns.end());
    } else {
      int c0 = ns.front().c;
      for (auto& f : ns) f.c -= c0;
      auto it = memo_.find(ns);
      if (it != memo_.end()) return it->second;
    }
    Poly r;
    for (std::size_t s = 1; s < ns.size(); ++s) {
      std::vector<NFactor> rest;
      for (std::size_t x = 1; x < ns.size(); ++x)
        if (x != s) rest.push_back(ns[x]);
      Poly term = pair_trace(ns[0], ns[s]) * trace(rest);
      if (s % 2) r += term;
      else r -= term;
    }
    r = r.scaled(frac(1, 2));
    if (!rng_) memo_.emplace(ns, r);
    return r;
  }

 private:
  std::mt19937* rng_;
  std::map<std::vector<NFactor>, Poly> memo_;
};

inline std::optional<Poly> reduce_word(const Word& w, Wick& wick, std::string* why) {
  int c = 0;
  std::vector<detail::NFactor> ns;
  for (auto& l : w) {
    if (l.sym == kH) {
      c += l.exp;
    } else {
      if (l.exp != 1) throw AlgebraError("reduce_word: word not normalized");
      ns.push_back({l.sym, c});
    }
  }
  if (ns.empty()) return c == 0 ? Poly(2) : Poly(Sym::trh(std::abs(c)));
  if (c != 0 || ns.size() % 2) {
    if (why) *why = "irreducible word " + word_string(w);
    return std::nullopt;
  }
  return wick.trace(ns);
}

}  // namespace detail

/// Rewrite every trace into generators G[i,j,k] and the parameters TrH[k].
/// Throws IrreducibleWord if some trace is not expressible.
inline Poly skein_reduce(const TraceExpr& e, std::mt19937* rng = nullptr) {
  detail::Wick wick(rng);
  Poly out;
  for (auto& [prod, coef] : e.terms()) {
    Poly term = coef;
    for (auto& tw : prod) {
      std::string why;
      auto v = detail::reduce_word(tw.letters, wick, &why);
      if (!v) throw IrreducibleWord(why);
      term *= *v;
    }
    out += term;
  }
  return out;
}

/// Non-throwing variant.
inline std::optional<Poly> try_skein_reduce(const TraceExpr& e, std::string* why = nullptr) {
  try {
    return skein_reduce(e);
  } catch (const IrreducibleWord& ex) {
    if (why) *why = ex.what();
    return std::nullopt;
  }
}

/// Symbolic bracket of two generators with an atomic hole letter.
inline Poly generator_bracket(GenIndex f, GenIndex g, int n) {
  return skein_reduce(ks_bracket_symbolic(generator_trace(f.i, f.j, f.k), generator_trace(g.i, g.j, g.k), n));
}

// ---------------------------------------------------------------------------
// Free-algebra check of the merging rules: tensor terms (P (x) Q) Omega
// (R (x) S) normalize to (PS (x) QR) Omega, compared as formal sums over
// pairs of reduced free-group words.

using TensorSum = std::map<std::pair<Word, Word>, Rational>;

inline Word free_reduce(const Word& w) {
  Word st;
  for (auto& l : w) {
    if (!st.empty() && st.back().sym == l.sym) {
      int e = st.back().exp + l.exp;
      st.pop_back();
      if (e != 0) st.push_back({l.sym, e});
    } else if (l.exp != 0) {
      st.push_back(l);
    }
  }
  return st;
}

inline void add_tensor(TensorSum& s, const Word& left, const Word& right, const Rational& c) {
  auto key = std::make_pair(free_reduce(left), free_reduce(right));
  auto& x = s[key];
  x += c;
  if (x == 0) s.erase(key);
}

inline Word concat(std::initializer_list<const Word*> parts) {
  Word r;
  for (auto* p : parts) r.insert(r.end(), p->begin(), p->end());
  return r;
}

/// {A (x) B} for products of letters, by Leibniz on both sides.
inline TensorSum tensor_bracket(const Word& a, const Word& b) {
  Word A = expand(a), B = expand(b);
  TensorSum s;
  for (std::size_t p = 0; p < A.size(); ++p)
    for (std::size_t q = 0; q < B.size(); ++q) {
      Word X(A.begin(), A.begin() + std::ptrdiff_t(p)), Y(A.begin() + std::ptrdiff_t(p + 1), A.end());
      Word U(B.begin(), B.begin() + std::ptrdiff_t(q)), V(B.begin() + std::ptrdiff_t(q + 1), B.end());
      for (auto& t : letter_bracket(A[p], B[q])) {
        // (X P (x) U Q) Omega (R Y (x) S V) -> (X P S V (x) U Q R Y) Omega
        add_tensor(s, concat({&X, &t.P, &t.S, &V}), concat({&U, &t.Q, &t.R, &Y}), t.coef);
      }
    }
  return s;
}

/// The printed formulas for a single composite letter H (possibly a power)
/// against M_i (i < H) or against H itself.
inline TensorSum formula_mi_hk(const Word& mi, const Word& hk) {
  Rational half = frac(1, 2);
  TensorSum s;
  Word e;
  add_tensor(s, concat({&mi, &hk}), e, half);   // M^1 Omega H^2
  add_tensor(s, e, concat({&hk, &mi}), half);   // H^2 Omega M^1
  add_tensor(s, hk, mi, -half);                 // Omega M^1 H^2
  add_tensor(s, mi, hk, -half);                 // H^2 M^1 Omega
  return s;
}

inline TensorSum formula_h_hk(const Word& h, const Word& hk) {
  Rational half = frac(1, 2);
  TensorSum s;
  Word e;
  add_tensor(s, e, concat({&hk, &h}), half);    // H^k2 Omega H1
  add_tensor(s, h, hk, half);                   // H1 H^k2 Omega
  add_tensor(s, hk, h, -half);                  // Omega H1 H^k2
  add_tensor(s, concat({&h, &hk}), e, -half);   // H1 Omega H^k2
  return s;
}

struct MergingReport {
  bool mi_h = false, h_h = false, mi_hk = false, h_hk = false;
  bool all() const { return mi_h && h_h && mi_hk && h_hk; }
};

/// Merging check with H = M_{n+1} ... M_{n+m}: the composite satisfies the
/// single-letter brackets, and powers satisfy the printed power rules.
inline MergingReport merging_check(int n, int m, int kmax = 3) {
  Word h;
  for (int r = 1; r <= m; ++r) h.push_back({n + r, 1});
  Word mi{{1, 1}};
  MergingReport rep;
  rep.mi_h = tensor_bracket(mi, h) == formula_mi_hk(mi, h);
  rep.h_h = tensor_bracket(h, h) == formula_h_hk(h, h);
  rep.mi_hk = rep.h_hk = true;
  for (int k = -kmax; k <= kmax; ++k) {
    if (k == 0) continue;
    Word hk;
    for (int r = 0; r < std::abs(k); ++r)
      for (std::size_t x = 0; x < h.size(); ++x)
        hk.push_back(k > 0 ? h[x] : TraceLetter{h[h.size() - 1 - x].sym, -1});
    if (tensor_bracket(mi, hk) != formula_mi_hk(mi, hk)) rep.mi_hk = false;
    if (tensor_bracket(h, hk) != formula_h_hk(h, hk)) rep.h_hk = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Numeric bracket on matrix entries.

using Mat = Eigen::MatrixXd;
template <class T>
using MatT = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

/// Assignment of matrices to the symbols; H may be given explicitly or as
/// a product of M letters.
template <class T>
struct BasicNumericPoint {
  std::map<int, MatT<T>> M;
  Word h_word;  // if nonempty, H is expanded into these letters

  Word resolve(const Word& w) const {
    if (h_word.empty()) return expand(w);
    Word r;
    for (auto& l : expand(w)) {
      if (l.sym != kH) {
        r.push_back(l);
      } else if (l.exp > 0) {
        r.insert(r.end(), h_word.begin(), h_word.end());
      } else {
        for (auto it = h_word.rbegin(); it != h_word.rend(); ++it) r.push_back({it->sym, -it->exp});
      }
    }
    return r;
  }
};

using NumericPoint = BasicNumericPoint<double>;

/// Linear combination of traces of words.
struct TraceFunction {
  std::vector<std::pair<double, Word>> terms;
};

namespace detail {

template <class T>
MatT<T> letter_matrix(const BasicNumericPoint<T>& pt, const TraceLetter& l, std::map<int, MatT<T>>& inv) {
  const MatT<T>& m = pt.M.at(l.sym);
  if (l.exp == 1) return m;
  auto it = inv.find(l.sym);
  if (it == inv.end()) {
    Eigen::FullPivLU<MatT<T>> lu(m);
    if (!lu.isInvertible()) throw AlgebraError("ks_bracket_numeric: singular matrix M" + std::to_string(l.sym));
    it = inv.emplace(l.sym, lu.inverse()).first;
  }
  return it->second;
}

// Gradient of Tr(word) with respect to the entries of M_a: entry (x,y)
// holds d/d(M_a)_{xy}.
template <class T>
MatT<T> trace_gradient(const Word& w, const BasicNumericPoint<T>& pt, int a, std::map<int, MatT<T>>& inv) {
  using M = MatT<T>;
  std::size_t dim = std::size_t(pt.M.begin()->second.rows());
  M g = M::Zero(Eigen::Index(dim), Eigen::Index(dim));
  for (std::size_t p = 0; p < w.size(); ++p) {
    if (w[p].sym != a) continue;
    M rest = M::Identity(Eigen::Index(dim), Eigen::Index(dim));
    for (std::size_t r = 1; r < w.size(); ++r) rest = rest * letter_matrix(pt, w[(p + r) % w.size()], inv);
    if (w[p].exp == 1) {
      g += rest.transpose();
    } else {
      M mi = letter_matrix(pt, w[p], inv);
      g -= (mi * rest * mi).transpose();
    }
  }
  return g;
}

// Structure tensor {(M_a)_{xy}, (M_b)_{zw}} = sum c (PS)_{xw} (QR)_{zy},
// contracted with the two gradients.
template <class T>
T contract(const MatT<T>& ga, const MatT<T>& gb, int a, int b, const BasicNumericPoint<T>& pt) {
  using M = MatT<T>;
  Eigen::Index n = ga.rows();
  auto prod = [&](const Word& w) {
    M m = M::Identity(n, n);
    for (auto& l : w) m = m * pt.M.at(l.sym);
    return m;
  };
  T r = 0;
  for (auto& t : letter_bracket({a, 1}, {b, 1})) {
    M PS = prod(t.P) * prod(t.S), QR = prod(t.Q) * prod(t.R);
    r += T(t.coef.get_d()) * (ga.transpose() * PS * gb.transpose() * QR).trace();
  }
  return r;
}

}  // namespace detail

/// {f, g} at a numeric point, from the entrywise structure constants and
/// the chain rule. Works for any matrix size.
template <class T>
T ks_bracket_numeric(const TraceFunction& f, const TraceFunction& g, const BasicNumericPoint<T>& pt) {
  std::map<int, MatT<T>> inv;
  T r = 0;
  for (auto& [cf, wf0] : f.terms)
    for (auto& [cg, wg0] : g.terms) {
      Word wf = pt.resolve(wf0), wg = pt.resolve(wg0);
      std::vector<int> sf, sg;
      for (auto& l : wf) sf.push_back(l.sym);
      for (auto& l : wg) sg.push_back(l.sym);
      std::sort(sf.begin(), sf.end());
      sf.erase(std::unique(sf.begin(), sf.end()), sf.end());
      std::sort(sg.begin(), sg.end());
      sg.erase(std::unique(sg.begin(), sg.end()), sg.end());
      for (int a : sf) {
        MatT<T> ga = detail::trace_gradient(wf, pt, a, inv);
        for (int b : sg) {
          MatT<T> gb = detail::trace_gradient(wg, pt, b, inv);
          r += T(cf * cg) * detail::contract(ga, gb, a, b, pt);
        }
      }
    }
  return r;
}

/// Numeric trace of a word at a point.
inline double trace_numeric(const Word& w0, const NumericPoint& pt) {
  std::map<int, Mat> inv;
  Word w = pt.resolve(w0);
  Eigen::Index dim = pt.M.begin()->second.rows();
  Mat m = Mat::Identity(dim, dim);
  for (auto& l : w) m = m * detail::letter_matrix(pt, l, inv);
  return m.trace();
}

/// Random traceless determinant-one 2x2 matrix [[a, b], [c, -a]].
inline Mat random_sl2_traceless(std::mt19937& rng) {
  std::uniform_real_distribution<double> d(0.4, 1.6);
  double a = d(rng), b = d(rng) * (rng() % 2 ? 1 : -1);
  Mat m(2, 2);
  m << a, b, -(1 + a * a) / b, -a;
  return m;
}

// ---------------------------------------------------------------------------
// Exact evaluation at rational points.

using QMat2 = QMatrix;

/// Random rational traceless determinant-one matrix.
inline QMat2 random_rational_sl2_traceless(std::mt19937& rng, int bound = 97) {
  std::uniform_int_distribution<int> num(1, bound), den(1, 9);
  Rational a = frac(num(rng), den(rng)), b = frac(num(rng), den(rng));
  if (rng() % 2) b = -b;
  if (rng() % 2) a = -a;
  Rational c = -(1 + a * a) / b;
  return QMat2{{a, b}, {c, -a}};
}

inline Rational trace_rational(const Word& w, const std::map<int, QMat2>& M, const Word& h_word = {}) {
  NumericPoint shape;
  shape.h_word = h_word;
  Word full = shape.resolve(w);
  QMat2 m = QMat2::identity(2);
  for (auto& l : full) {
    const QMat2& x = M.at(l.sym);
    if (l.exp == 1)
      m = m * x;
    else
      m = m * QMat2{{x(1, 1), -x(0, 1)}, {-x(1, 0), x(0, 0)}};
  }
  return m(0, 0) + m(1, 1);
}

/// Exact value of a trace expression (products of traces) at a rational
/// point; H is expanded through h_word when given.
inline Rational evaluate_rational(const TraceExpr& e, const std::map<int, QMat2>& M, const Word& h_word = {}) {
  Rational sum = 0;
  for (auto& [prod, coef] : e.terms()) {
    Rational v = coef.constant_value();
    for (auto& tw : prod) v *= trace_rational(tw.letters, M, h_word);
    sum += v;
  }
  return sum;
}

/// Exact value of G^{(k)}_{i,j} with H = product of h_word letters.
inline Rational generator_rational(int i, int j, int k, const std::map<int, QMat2>& M, const Word& h_word) {
  if (k == 0 && i == j) return 2;
  return -trace_rational(generator_word(i, j, k), M, h_word);
}

}  // namespace geoalg::ks
