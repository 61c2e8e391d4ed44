#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "geoalg/dn_algebra.hpp"
#include "geoalg/matrix.hpp"
#include "geoalg/poly_io.hpp"

namespace geoalg {

/// beta_{i,i+1} (adjacent) or beta_{n,1} (wrap), possibly inverted.
struct BraidGen {
  bool wrap = false;
  int i = 0;
  bool inverse = false;

  static BraidGen adjacent(int i, bool inv = false) { return {false, i, inv}; }
  static BraidGen wrap_gen(bool inv = false) { return {true, 0, inv}; }
  BraidGen inv() const { return {wrap, i, !inverse}; }

  std::string name(int n) const {
    std::string s = wrap ? "b" + std::to_string(n) + "1" : "b" + std::to_string(i) + std::to_string(i + 1);
    return inverse ? s + "^-1" : s;
  }
  friend bool operator==(const BraidGen& a, const BraidGen& b) {
    return a.wrap == b.wrap && a.i == b.i && a.inverse == b.inverse;
  }
};

/// Words are read as operator products: the rightmost letter acts first.
using BraidWord = std::vector<BraidGen>;

inline BraidWord inverse_word(const BraidWord& w) {
  BraidWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inv());
  return r;
}

inline std::string word_name(const BraidWord& w, int n) {
  std::string s;
  for (auto& b : w) s += (s.empty() ? "" : " ") + b.name(n);
  return s;
}

/// Parses "b12 b23 b31^-1" (or "b[1,2]") for rank n.
inline BraidWord parse_braid_word(const std::string& text, int n) {
  std::istringstream in(text);
  std::string tok;
  BraidWord w;
  while (in >> tok) {
    bool inv = false;
    if (auto p = tok.find("^-1"); p != std::string::npos) {
      if (p + 3 != tok.size()) throw AlgebraError("bad braid letter '" + tok + "'");
      inv = true;
      tok = tok.substr(0, p);
    }
    if (tok.size() < 3 || tok[0] != 'b') throw AlgebraError("bad braid letter '" + tok + "'");
    int a = 0, b = 0;
    std::string body = tok.substr(1);
    if (body.front() == '[') {
      if (std::sscanf(body.c_str(), "[%d,%d]", &a, &b) != 2) throw AlgebraError("bad braid letter '" + tok + "'");
    } else if (body.size() == 2 && std::isdigit(static_cast<unsigned char>(body[0])) &&
               std::isdigit(static_cast<unsigned char>(body[1]))) {
      a = body[0] - '0';
      b = body[1] - '0';
    } else {
      throw AlgebraError("bad braid letter '" + tok + "'");
    }
    if (a >= 1 && b == a + 1 && b <= n) w.push_back(BraidGen::adjacent(a, inv));
    else if (a == n && b == 1) w.push_back(BraidGen::wrap_gen(inv));
    else throw AlgebraError("braid letter '" + tok + "' is not a generator for n=" + std::to_string(n));
  }
  return w;
}

namespace detail {

inline std::size_t ix(int i) { return static_cast<std::size_t>(i - 1); }

inline void check_gen(const BraidGen& b, int n) {
  if (!b.wrap && (b.i < 1 || b.i >= n)) throw AlgebraError("braid generator out of range");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// A_n: upper unitriangular matrix of G_{i,j}.

inline PolyMatrix an_matrix(int n) {
  PolyMatrix a = PolyMatrix::identity(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) a(detail::ix(i), detail::ix(j)) = G(i, j, 0);
  return a;
}

/// B_{i,i+1} with corner block [[g, -1], [1, 0]], or its inverse.
inline PolyMatrix braid_B(int n, int i, const Poly& g, bool inverse = false) {
  PolyMatrix b = PolyMatrix::identity(static_cast<std::size_t>(n));
  std::size_t r = detail::ix(i), s = r + 1;
  if (!inverse) {
    b(r, r) = g, b(r, s) = Poly(-1), b(s, r) = Poly(1), b(s, s) = Poly(0);
  } else {
    b(r, r) = Poly(0), b(r, s) = Poly(1), b(s, r) = Poly(-1), b(s, s) = g;
  }
  return b;
}

/// Componentwise action on the upper triangle.
inline PolyMatrix act_An(const BraidGen& b, const PolyMatrix& A) {
  const int n = static_cast<int>(A.rows());
  if (b.wrap) throw AlgebraError("the wrap generator is not defined for A_n");
  detail::check_gen(b, n);
  const int i = b.i;
  auto g = [&](int r, int c) { return A(detail::ix(r), detail::ix(c)); };
  PolyMatrix out = A;
  auto set = [&](int r, int c, Poly v) { out(detail::ix(r), detail::ix(c)) = std::move(v); };
  const Poly gi = g(i, i + 1);
  for (int j = 1; j <= n; ++j) {
    if (!b.inverse) {
      if (j > i + 1) {
        set(i + 1, j, g(i, j));
        set(i, j, g(i, j) * gi - g(i + 1, j));
      }
      if (j < i) {
        set(j, i + 1, g(j, i));
        set(j, i, g(j, i) * gi - g(j, i + 1));
      }
    } else {
      if (j > i + 1) {
        set(i, j, g(i + 1, j));
        set(i + 1, j, g(i + 1, j) * gi - g(i, j));
      }
      if (j < i) {
        set(j, i, g(j, i + 1));
        set(j, i + 1, g(j, i + 1) * gi - g(j, i));
      }
    }
  }
  return out;
}

/// Matrix form B A B^T.
inline PolyMatrix act_An_matrix(const BraidGen& b, const PolyMatrix& A) {
  const int n = static_cast<int>(A.rows());
  if (b.wrap) throw AlgebraError("the wrap generator is not defined for A_n");
  detail::check_gen(b, n);
  PolyMatrix B = braid_B(n, b.i, A(detail::ix(b.i), detail::ix(b.i + 1)), b.inverse);
  return B * A * B.transpose();
}

template <class Act>
PolyMatrix act_word(const BraidWord& w, PolyMatrix m, Act act) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) m = act(*it, m);
  return m;
}

// ---------------------------------------------------------------------------
// Infinite-level algebra: a family G^{(k)}_{i,j} known up to a level cap.

class LevelFamily {
 public:
  LevelFamily(int n, int cap) : n_(n), cap_(cap) {
    if (n < 1 || cap < 0) throw AlgebraError("LevelFamily: bad shape");
  }

  /// The generators themselves.
  static LevelFamily symbolic(int n, int cap) {
    LevelFamily f(n, cap);
    for (int k = 0; k <= cap; ++k)
      for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
          GenIndex g{i, j, k};
          if (canonicalize(g) && g.k == k) f.vals_[g] = Poly(g.sym());
        }
    return f;
  }

  int n() const { return n_; }
  int cap() const { return cap_; }

  /// G^{(k)}_{i,j} for any sign of k; refuses levels beyond the cap.
  Poly get(int i, int j, int k) const {
    if (i < 1 || i > n_ || j < 1 || j > n_) throw AlgebraError("LevelFamily: index out of range");
    if (k > cap_ || -k > cap_)
      throw AlgebraError("level " + std::to_string(k) + " is not certified (cap " + std::to_string(cap_) + ")");
    GenIndex g{i, j, k};
    if (!canonicalize(g)) return Poly(2);
    auto it = vals_.find(g);
    return it == vals_.end() ? Poly(0) : it->second;
  }

  void set(int i, int j, int k, Poly v) {
    GenIndex g{i, j, k};
    if (!canonicalize(g)) throw AlgebraError("LevelFamily: diagonal level-zero entries are fixed");
    if (g.k > cap_) throw AlgebraError("LevelFamily: level above cap");
    vals_[g] = std::move(v);
  }

  /// Full matrix G^{(k)}; level zero is symmetric with 2 on the diagonal.
  PolyMatrix level(int k) const {
    PolyMatrix m(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) m(detail::ix(i), detail::ix(j)) = get(i, j, k);
    return m;
  }

  /// Generating matrix A^{(0)} + sum_{k=1}^{cap} G^{(k)} lam^{-k}.
  PolyMatrix generating() const {
    PolyMatrix m(static_cast<std::size_t>(n_));
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) {
        Poly e = i == j ? Poly(1) : i < j ? get(i, j, 0) : Poly(0);
        for (int k = 1; k <= cap_; ++k) e += get(i, j, k) * lam(-k);
        m(detail::ix(i), detail::ix(j)) = e;
      }
    return m;
  }

  /// Reads a family back from a generating matrix, levels 0..cap.
  static LevelFamily from_generating(const PolyMatrix& m, int cap) {
    LevelFamily f(static_cast<int>(m.rows()), cap);
    for (int i = 1; i <= f.n_; ++i)
      for (int j = 1; j <= f.n_; ++j)
        for (int k = 0; k <= cap; ++k) {
          if (k == 0 && i >= j) continue;
          f.set(i, j, k, m(detail::ix(i), detail::ix(j)).coeff(Sym::lam(), -k));
        }
    return f;
  }

  /// Entries equal on the common certified levels.
  bool agrees_with(const LevelFamily& o) const {
    if (o.n_ != n_) return false;
    int c = std::min(cap_, o.cap_);
    for (int k = 0; k <= c; ++k)
      for (int i = 1; i <= n_; ++i)
        for (int j = 1; j <= n_; ++j)
          if (!(get(i, j, k) == o.get(i, j, k))) return false;
    return true;
  }

  /// Substitution map sending each generator to its value.
  Bindings bindings() const {
    Bindings b;
    for (auto& [g, v] : vals_) b[g.sym()] = v;
    return b;
  }

 private:
  int n_, cap_;
  std::map<GenIndex, Poly> vals_;
};

namespace detail {

/// Image of G^{(k)}_{a,b} under b, read through the lookup X.
inline Poly frak_image(const BraidGen& b, int n, int a, int c, int k,
                       const std::function<Poly(int, int, int)>& X) {
  if (!b.wrap) {
    const int i = b.i, i1 = i + 1;
    const Poly g = X(i, i1, 0);
    auto out = [&](int r) { return r != i && r != i1; };
    if (!b.inverse) {
      if (a == i1 && out(c)) return X(i, c, k);
      if (c == i1 && out(a)) return X(a, i, k);
      if (a == i && out(c)) return X(i, c, k) * g - X(i1, c, k);
      if (c == i && out(a)) return X(a, i, k) * g - X(a, i1, k);
      if (a == i && c == i) return X(i, i, k) * g * g - X(i, i1, k) * g - X(i1, i, k) * g + X(i1, i1, k);
      if (a == i && c == i1) return X(i, i, k) * g - X(i1, i, k);
      if (a == i1 && c == i) return X(i, i, k) * g - X(i, i1, k);
      if (a == i1 && c == i1) return X(i, i, k);
    } else {
      if (a == i && out(c)) return X(i1, c, k);
      if (c == i && out(a)) return X(a, i1, k);
      if (a == i1 && out(c)) return X(i1, c, k) * g - X(i, c, k);
      if (c == i1 && out(a)) return X(a, i1, k) * g - X(a, i, k);
      if (a == i && c == i) return X(i1, i1, k);
      if (a == i && c == i1) return X(i1, i1, k) * g - X(i1, i, k);
      if (a == i1 && c == i) return X(i1, i1, k) * g - X(i, i1, k);
      if (a == i1 && c == i1) return X(i, i, k) - X(i1, i, k) * g - X(i, i1, k) * g + X(i1, i1, k) * g * g;
    }
    return X(a, c, k);
  }
  const Poly g = X(n, 1, 1);
  auto mid = [&](int r) { return r != 1 && r != n; };
  if (!b.inverse) {
    if (a == 1 && mid(c)) return X(n, c, k + 1);
    if (c == 1 && mid(a)) return X(a, n, k - 1);
    if (a == n && mid(c)) return X(n, c, k) * g - X(1, c, k - 1);
    if (c == n && mid(a)) return X(a, n, k) * g - X(a, 1, k + 1);
    if (a == n && c == n) return X(n, n, k) * g * g - X(n, 1, k + 1) * g - X(1, n, k - 1) * g + X(1, 1, k);
    if (a == n && c == 1) return X(n, n, k - 1) * g - X(1, n, k - 2);
    if (a == 1 && c == n) return X(n, n, k + 1) * g - X(n, 1, k + 2);
    if (a == 1 && c == 1) return X(n, n, k);
  } else {
    if (a == 1 && mid(c)) return X(1, c, k) * g - X(n, c, k + 1);
    if (a == n && mid(c)) return X(1, c, k - 1);
    if (c == 1 && mid(a)) return X(a, 1, k) * g - X(a, n, k - 1);
    if (c == n && mid(a)) return X(a, 1, k + 1);
    if (a == 1 && c == 1) return X(1, 1, k) * g * g - X(1, n, k - 1) * g - X(n, 1, k + 1) * g + X(n, n, k);
    if (a == 1 && c == n) return X(1, 1, k + 1) * g - X(n, 1, k + 2);
    if (a == n && c == 1) return X(1, 1, k - 1) * g - X(1, n, k - 2);
    if (a == n && c == n) return X(1, 1, k);
  }
  return X(a, c, k);
}

}  // namespace detail

/// Componentwise action on the infinite-level family. The wrap generator
/// reads two levels above its output, so out_cap <= cap - 2 is required.
inline LevelFamily act_frakDn(const BraidGen& b, const LevelFamily& F, int out_cap) {
  const int n = F.n();
  detail::check_gen(b, n);
  int need = out_cap + (b.wrap ? 2 : 0);
  if (need > F.cap())
    throw AlgebraError("insufficient input levels: cap " + std::to_string(F.cap()) + " < " + std::to_string(need));
  auto X = [&](int i, int j, int k) { return F.get(i, j, k); };
  LevelFamily out(n, out_cap);
  for (int k = 0; k <= out_cap; ++k)
    for (int a = 1; a <= n; ++a)
      for (int c = 1; c <= n; ++c) {
        if (k == 0 && a >= c) continue;
        out.set(a, c, k, detail::frak_image(b, n, a, c, k, X));
      }
  return out;
}

/// Level cap after acting with b on data certified up to cap.
inline int cap_after(const BraidGen& b, int cap) { return b.wrap ? cap - 2 : cap; }

inline LevelFamily act_frakDn_word(const BraidWord& w, LevelFamily F) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    int c = cap_after(*it, F.cap());
    if (c < 0) throw AlgebraError("braid word exhausts the certified levels");
    F = act_frakDn(*it, F, c);
  }
  return F;
}

/// B_{n,1}(lam) = corner block [[0, lam], [-lam^{-1}, g]] on rows 1 and n, or
/// its inverse.
inline PolyMatrix braid_Bn1(int n, const Poly& g, bool inverse = false) {
  PolyMatrix b = PolyMatrix::identity(static_cast<std::size_t>(n));
  std::size_t f = 0, l = detail::ix(n);
  if (!inverse) {
    b(f, f) = Poly(0), b(f, l) = lam(1), b(l, f) = -lam(-1), b(l, l) = g;
  } else {
    b(f, f) = g, b(f, l) = -lam(1), b(l, f) = lam(-1), b(l, l) = Poly(0);
  }
  return b;
}

/// Generating-matrix action: B G B^T, or B(lam) G B(1/lam)^T for the wrap.
/// The conjugating matrix reads its entries from M itself.
inline PolyMatrix act_matrix(const BraidGen& b, const PolyMatrix& M) {
  if (!M.square()) throw AlgebraError("act_matrix: shape mismatch");
  const int n = static_cast<int>(M.rows());
  detail::check_gen(b, n);
  if (!b.wrap) {
    Poly g = M(detail::ix(b.i), detail::ix(b.i + 1)).coeff(Sym::lam(), 0);
    PolyMatrix B = braid_B(n, b.i, g, b.inverse);
    return B * M * B.transpose();
  }
  Poly g = M(detail::ix(n), 0).coeff(Sym::lam(), -1);
  PolyMatrix B = braid_Bn1(n, g, b.inverse);
  return B * M * invert_lam(B).transpose();
}

/// Generating matrix known up to lam^{-cap}.
struct TruncatedSeries {
  PolyMatrix m;
  int cap = 0;
};

inline TruncatedSeries act_matrix(const BraidGen& b, const TruncatedSeries& s) {
  int c = cap_after(b, s.cap);
  if (c < 0) throw AlgebraError("braid word exhausts the certified levels");
  PolyMatrix r = act_matrix(b, s.m).map([&](const Poly& p) { return p.truncate_below(Sym::lam(), -c); });
  return {r, c};
}

inline TruncatedSeries act_matrix_word(const BraidWord& w, TruncatedSeries s) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) s = act_matrix(*it, s);
  return s;
}

/// True if the lam^0 block is upper unitriangular and no positive powers
/// of lam appear.
inline bool generating_shape(const PolyMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Poly& e = m(i, j);
      if (e.degree_range(Sym::lam()).second > 0) return false;
      Poly c0 = e.coeff(Sym::lam(), 0);
      if (i == j && !(c0 == Poly(1))) return false;
      if (i > j && !c0.is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// D_n: the n^2 generators Ghat_{i,j}.

inline PolyMatrix dn_hat_matrix(int n) {
  PolyMatrix m(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) m(detail::ix(i), detail::ix(j)) = Poly(Sym::ghat(i, j));
  return m;
}

/// Componentwise action on Ghat.
inline PolyMatrix act_Dn(const BraidGen& b, const PolyMatrix& Gh) {
  const int n = static_cast<int>(Gh.rows());
  detail::check_gen(b, n);
  // the wrap generator is the adjacent one with (i, i+1) -> (n, 1)
  const int i = b.wrap ? n : b.i, i1 = b.wrap ? 1 : b.i + 1;
  auto g = [&](int r, int c) { return Gh(detail::ix(r), detail::ix(c)); };
  PolyMatrix out = Gh;
  auto set = [&](int r, int c, Poly v) { out(detail::ix(r), detail::ix(c)) = std::move(v); };
  const Poly gi = g(i, i1);
  for (int k = 1; k <= n; ++k) {
    if (k == i || k == i1) continue;
    if (!b.inverse) {
      set(i1, k, g(i, k));
      set(i, k, g(i, k) * gi - g(i1, k));
      set(k, i1, g(k, i));
      set(k, i, g(k, i) * gi - g(k, i1));
    } else {
      set(i, k, g(i1, k));
      set(i1, k, g(i1, k) * gi - g(i, k));
      set(k, i, g(k, i1));
      set(k, i1, g(k, i1) * gi - g(k, i));
    }
  }
  if (!b.inverse) {
    set(i1, i1, g(i, i));
    set(i, i, g(i, i) * gi - g(i1, i1));
    set(i1, i, g(i1, i) + gi * g(i, i) * g(i, i) - Poly(2) * g(i, i) * g(i1, i1));
  } else {
    Poly old_ii = g(i1, i1), old_i1 = g(i1, i1) * gi - g(i, i);
    set(i, i, old_ii);
    set(i1, i1, old_i1);
    set(i1, i, g(i1, i) - gi * old_ii * old_ii + Poly(2) * old_ii * old_i1);
  }
  return out;
}

/// Rhat (skew), Shat (rank one), Ahat (upper unitriangular).
struct DnMatrices {
  PolyMatrix R, S, A;
};

inline DnMatrices dn_matrices(const PolyMatrix& Gh) {
  const std::size_t n = Gh.rows();
  DnMatrices d{PolyMatrix(n), PolyMatrix(n), PolyMatrix::identity(n)};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      d.S(i, j) = Gh(i, i) * Gh(j, j);
      if (j > i) {
        d.R(i, j) = Gh(j, i) + Gh(i, j) - Gh(i, i) * Gh(j, j);
        d.R(j, i) = -d.R(i, j);
        d.A(i, j) = Gh(i, j);
      }
    }
  return d;
}

// ---------------------------------------------------------------------------
// Quantum braid matrices (constructors only).

inline PolyMatrix quantum_matrix(const BraidGen& b, int n) {
  detail::check_gen(b, n);
  Poly q(Sym::q());
  PolyMatrix m = PolyMatrix::identity(static_cast<std::size_t>(n));
  if (!b.wrap) {
    std::size_t r = detail::ix(b.i), s = r + 1;
    m(r, r) = q * G(b.i, b.i + 1, 0), m(r, s) = -q * q, m(s, r) = Poly(1), m(s, s) = Poly(0);
  } else {
    std::size_t f = 0, l = detail::ix(n);
    m(f, f) = Poly(0), m(f, l) = lam(1), m(l, f) = -q * q * lam(-1), m(l, l) = q * G(n, 1, 1);
  }
  return m;
}

// ---------------------------------------------------------------------------
// Relation verification.

enum class BraidTarget { An, FrakDn, FrakDnMatrix, DnHat };

inline std::string target_name(BraidTarget t) {
  switch (t) {
    case BraidTarget::An: return "an";
    case BraidTarget::FrakDn: return "dn";
    case BraidTarget::FrakDnMatrix: return "dn-matrix";
    case BraidTarget::DnHat: return "dhat";
  }
  return "?";
}

struct RelationCheck {
  std::string name;
  bool holds = false;
  int certified_level = 0;
};

struct RelationReport {
  std::vector<RelationCheck> checks;
  bool all() const {
    for (auto& c : checks)
      if (!c.holds) return false;
    return !checks.empty();
  }
};

namespace detail {

/// Compares the images of two words acting on the symbolic data.
inline RelationCheck compare_words(BraidTarget t, int n, int cap, const BraidWord& u, const BraidWord& v,
                                   const std::string& name) {
  RelationCheck c{name, false, 0};
  switch (t) {
    case BraidTarget::An: {
      auto act = [](const BraidGen& b, const PolyMatrix& m) { return act_An(b, m); };
      c.holds = act_word(u, an_matrix(n), act) == act_word(v, an_matrix(n), act);
      break;
    }
    case BraidTarget::DnHat: {
      auto act = [](const BraidGen& b, const PolyMatrix& m) { return act_Dn(b, m); };
      c.holds = act_word(u, dn_hat_matrix(n), act) == act_word(v, dn_hat_matrix(n), act);
      break;
    }
    case BraidTarget::FrakDn: {
      auto F = LevelFamily::symbolic(n, cap);
      auto x = act_frakDn_word(u, F), y = act_frakDn_word(v, F);
      c.certified_level = std::min(x.cap(), y.cap());
      c.holds = x.agrees_with(y);
      break;
    }
    case BraidTarget::FrakDnMatrix: {
      TruncatedSeries s{LevelFamily::symbolic(n, cap).generating(), cap};
      auto x = act_matrix_word(u, s), y = act_matrix_word(v, s);
      c.certified_level = std::min(x.cap, y.cap);
      auto cut = [&](const PolyMatrix& m) {
        return m.map([&](const Poly& p) { return p.truncate_below(Sym::lam(), -c.certified_level); });
      };
      c.holds = cut(x.m) == cut(y.m);
      break;
    }
  }
  return c;
}

}  // namespace detail

/// Braid relations for the chosen realization. For A_n: adjacent RRR and
/// (b_{n-1,n}...b_{1,2})^n = Id. Otherwise RRR for all cyclically adjacent
/// pairs, the wrap generator included. Inverses are checked throughout.
inline RelationReport verify_relations(BraidTarget t, int n, int cap = 4) {
  RelationReport rep;
  std::vector<BraidGen> gens;
  for (int i = 1; i < n; ++i) gens.push_back(BraidGen::adjacent(i));
  if (t != BraidTarget::An) gens.push_back(BraidGen::wrap_gen());

  std::vector<std::pair<BraidGen, BraidGen>> pairs;
  if (t == BraidTarget::An) {
    for (int i = 1; i + 1 < n; ++i) pairs.push_back({gens[i - 1], gens[i]});
  } else if (n >= 3) {
    for (std::size_t a = 0; a < gens.size(); ++a) pairs.push_back({gens[a], gens[(a + 1) % gens.size()]});
  } else {
    pairs.push_back({gens[0], gens[1]});
  }
  for (auto [x, y] : pairs)
    rep.checks.push_back(detail::compare_words(t, n, cap, {x, y, x}, {y, x, y},
                                               "RRR " + x.name(n) + "," + y.name(n)));
  for (auto& g : gens)
    rep.checks.push_back(detail::compare_words(t, n, cap, {g, g.inv()}, {}, "inverse " + g.name(n)));
  if (t == BraidTarget::An) {
    BraidWord cox, w;
    for (int i = n - 1; i >= 1; --i) cox.push_back(BraidGen::adjacent(i));
    for (int r = 0; r < n; ++r) w.insert(w.end(), cox.begin(), cox.end());
    rep.checks.push_back(detail::compare_words(t, n, cap, w, {}, "(b_{n-1,n}...b_{1,2})^n"));
  }
  return rep;
}

/// Componentwise and matrix-form actions agree on every certified level,
/// and the matrix image keeps the generating-function shape.
inline bool frak_forms_agree(const BraidGen& b, int n, int cap) {
  auto F = LevelFamily::symbolic(n, cap);
  int c = cap_after(b, cap);
  auto comp = act_frakDn(b, F, c);
  PolyMatrix m = act_matrix(b, F.generating());
  PolyMatrix cut = m.map([&](const Poly& p) { return p.truncate_below(Sym::lam(), -c); });
  return generating_shape(cut) && comp.agrees_with(LevelFamily::from_generating(cut, c));
}

/// Poisson-map check {b f, b g} = b {f, g} on all canonical generator pairs
/// up to the given level. For the infinite-level algebra the images are
/// taken from a family with enough headroom.
struct PoissonMapReport {
  std::size_t pairs = 0, failures = 0;
};

inline PoissonMapReport poisson_map_check(const GenAlgebra& alg, const BraidGen& b, int max_level) {
  const int n = alg.n();
  Bindings img;
  if (alg.flavor() == Flavor::An) {
    PolyMatrix a = act_An(b, an_matrix(n));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) img[Sym::gen(i, j, 0)] = a(detail::ix(i), detail::ix(j));
  } else {
    // brackets of level <= L generators reach level 2L; the wrap reads two more
    int top = 2 * max_level;
    auto F = act_frakDn(b, LevelFamily::symbolic(n, top + (b.wrap ? 2 : 0)), top);
    img = F.bindings();
  }
  auto apply = [&](const Poly& p) { return poly_subst(alg.recanonicalize(p), img); };
  PoissonMapReport rep;
  auto gens = alg.generators(max_level);
  for (std::size_t x = 0; x < gens.size(); ++x)
    for (std::size_t y = x + 1; y < gens.size(); ++y) {
      Poly fx(gens[x].sym()), fy(gens[y].sym());
      Poly lhs = alg.bracket(apply(fx), apply(fy));
      Poly rhs = apply(alg.bracket(fx, fy));
      ++rep.pairs;
      if (!(lhs == rhs)) ++rep.failures;
    }
  return rep;
}

}  // namespace geoalg
