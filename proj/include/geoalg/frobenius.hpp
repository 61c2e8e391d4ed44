#pragma once

#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "geoalg/braid.hpp"
#include "geoalg/dn_algebra.hpp"
#include "geoalg/fatgraph.hpp"
#include "geoalg/ks.hpp"
#include "geoalg/util.hpp"

namespace geoalg {

/// Unit upper-triangular n x n matrix; G = S + S^T is its symmetrization.
class StokesMatrix {
 public:
  explicit StokesMatrix(PolyMatrix s) : s_(std::move(s)) {
    if (!s_.square()) throw AlgebraError("StokesMatrix: not square");
    for (std::size_t i = 0; i < s_.rows(); ++i)
      for (std::size_t j = 0; j <= i; ++j)
        if (!(s_(i, j) == Poly(i == j ? 1 : 0)))
          throw AlgebraError("StokesMatrix: not unit upper triangular");
  }

  /// Entries above the diagonal, row by row.
  static StokesMatrix from_upper(int n, const std::vector<Poly>& upper) {
    if (upper.size() != std::size_t(n * (n - 1) / 2)) throw AlgebraError("StokesMatrix: wrong entry count");
    PolyMatrix s = PolyMatrix::identity(std::size_t(n));
    std::size_t c = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s(std::size_t(i), std::size_t(j)) = upper[c++];
    return StokesMatrix(s);
  }

  /// Symbolic entries G[i,j,0].
  static StokesMatrix symbolic(int n) {
    std::vector<Poly> u;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) u.push_back(G(i, j, 0));
    return from_upper(n, u);
  }

  static StokesMatrix random(int n, RationalSampler& rs) {
    std::vector<Poly> u;
    for (int c = 0; c < n * (n - 1) / 2; ++c) u.push_back(Poly(rs.next()));
    return from_upper(n, u);
  }

  int n() const { return int(s_.rows()); }
  const PolyMatrix& S() const { return s_; }
  PolyMatrix gram() const { return s_ + s_.transpose(); }
  bool is_rational() const {
    for (std::size_t i = 0; i < s_.rows(); ++i)
      for (std::size_t j = 0; j < s_.cols(); ++j)
        if (!s_(i, j).is_constant()) return false;
    return true;
  }
  QMatrix rational() const { return to_rational(s_); }

 private:
  PolyMatrix s_;
};

/// M_k = 1 - E_k (S + S^T).
inline PolyMatrix monodromy_from_stokes(const StokesMatrix& S, int k) {
  if (k < 1 || k > S.n()) throw AlgebraError("monodromy_from_stokes: index out of range");
  PolyMatrix g = S.gram(), m = PolyMatrix::identity(std::size_t(S.n()));
  for (int j = 0; j < S.n(); ++j) m(std::size_t(k - 1), std::size_t(j)) -= g(std::size_t(k - 1), std::size_t(j));
  return m;
}

/// M_from ... M_to.
inline PolyMatrix monodromy_product(const StokesMatrix& S, int from, int to) {
  PolyMatrix r = PolyMatrix::identity(std::size_t(S.n()));
  for (int k = from; k <= to; ++k) r = r * monodromy_from_stokes(S, k);
  return r;
}

/// Inverse of a unit upper-triangular matrix by back substitution.
inline PolyMatrix unipotent_inverse(const PolyMatrix& u) {
  std::size_t n = u.rows();
  PolyMatrix r = PolyMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = c; i-- > 0;) {
      Poly acc;
      for (std::size_t k = i + 1; k <= c; ++k) acc += u(i, k) * r(k, c);
      r(i, c) = -acc;
    }
  return r;
}

inline PolyMatrix mat_pow(const PolyMatrix& m, int k) {
  if (k < 0) throw AlgebraError("mat_pow: negative exponent");
  PolyMatrix r = PolyMatrix::identity(m.rows()), b = m;
  for (; k; k >>= 1, b = b * b)
    if (k & 1) r = r * b;
  return r;
}

struct ClashBlock {
  int ntilde = 0;
  PolyMatrix Mh, B, lower_right, expected_lower_right;
  bool identity_block = false, zero_block = false, lower_right_ok = false, intertwining = false;
  bool holds() const { return identity_block && zero_block && lower_right_ok && intertwining; }
};

/// M_h = M_ntilde ... M_n and its block decomposition.
inline ClashBlock clash_block(const StokesMatrix& S, int ntilde) {
  const int n = S.n();
  if (ntilde < 1 || ntilde > n) throw AlgebraError("clash_block: need 1 <= ntilde <= n");
  ClashBlock r;
  r.ntilde = ntilde;
  r.Mh = monodromy_product(S, ntilde, n);
  std::size_t a = std::size_t(ntilde - 1), b = std::size_t(n - ntilde + 1);
  r.identity_block = r.Mh.block(0, 0, a, a) == PolyMatrix::identity(a);
  r.zero_block = r.Mh.block(0, a, a, b) == PolyMatrix(a, b);
  r.B = r.Mh.block(a, 0, b, a);
  r.lower_right = r.Mh.block(a, a, b, b);
  PolyMatrix st = S.S().block(a, a, b, b);
  r.expected_lower_right = -(unipotent_inverse(st) * st.transpose());
  r.lower_right_ok = r.lower_right == r.expected_lower_right;
  // M_h^{-1} = M_n ... M_ntilde since every M_k squares to one
  PolyMatrix inv = PolyMatrix::identity(std::size_t(n));
  for (int k = n; k >= ntilde; --k) inv = inv * monodromy_from_stokes(S, k);
  PolyMatrix g = S.gram();
  r.intertwining = g * r.Mh == inv.transpose() * g;
  return r;
}

/// Matrix of G^{(k)}_{i,j} = (G M_h^k)_{ij}; any integer k.
inline PolyMatrix gk_family(const StokesMatrix& S, int ntilde, int k) {
  const int n = S.n();
  if (ntilde < 1 || ntilde > n) throw AlgebraError("gk_family: need 1 <= ntilde <= n");
  PolyMatrix h = PolyMatrix::identity(std::size_t(n));
  if (k >= 0)
    for (int r = ntilde; r <= n; ++r) h = h * monodromy_from_stokes(S, r);
  else
    for (int r = n; r >= ntilde; --r) h = h * monodromy_from_stokes(S, r);
  return S.gram() * mat_pow(h, std::abs(k));
}

// ---------------------------------------------------------------------------
// Bracket realization.

/// One generator pair of the realization check.
struct RealizationCase {
  GenIndex a, b;
  double lhs = 0;   // KS bracket of the two scalar functions
  double rhs = 0;   // structure constants at the same point
  double residual = 0;
};

struct RealizationReport {
  int rank = 0;  // number of marked points of the target algebra
  std::vector<RealizationCase> cases;
  int skipped = 0;  // pairs where a function vanishes
  double factor = 0;
  double max_residual = 0;
  /// Least-squares estimate of lhs / rhs; empty when every rhs vanishes.
  std::optional<double> fitted;
  bool ok(double tol) const { return max_residual <= tol; }
};

namespace detail {

inline ks::MatT<long double> to_eigen(const QMatrix& m) {
  ks::MatT<long double> r(Eigen::Index(m.rows()), Eigen::Index(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(Eigen::Index(i), Eigen::Index(j)) = static_cast<long double>(m(i, j).get_num().get_d()) /
                                            static_cast<long double>(m(i, j).get_den().get_d());
  return r;
}

}  // namespace detail

/// Compares the KS bracket of f = G^{(k)}_{ij} against factor times the
/// infinite-level structure constants, for generators with indices below
/// ntilde and levels up to max_level. The KS side is computed on the
/// invariant traces Tr(M_i M_h^k M_j M_h^{-k}) = n - 4 + f^2, so
/// {f, g} = {F, G} / (4 f g).
inline RealizationReport bracket_realization(const StokesMatrix& S, int ntilde, int max_level, double factor) {
  if (!S.is_rational()) throw AlgebraError("bracket_realization: needs a rational Stokes matrix");
  const int n = S.n();
  RealizationReport rep;
  rep.rank = ntilde - 1;
  rep.factor = factor;
  if (rep.rank < 1) return rep;

  ks::BasicNumericPoint<long double> pt;
  for (int k = 1; k <= n; ++k) pt.M[k] = detail::to_eigen(to_rational(monodromy_from_stokes(S, k)));
  for (int r = ntilde; r <= n; ++r) pt.h_word.push_back({r, 1});

  std::map<int, QMatrix> levels;
  auto value = [&](int i, int j, int k) -> Rational {
    auto it = levels.find(k);
    if (it == levels.end()) it = levels.emplace(k, to_rational(gk_family(S, ntilde, k))).first;
    return it->second(std::size_t(i - 1), std::size_t(j - 1));
  };
  auto eval = [&](const Poly& p) {
    Bindings b;
    for (Sym v : p.variables()) {
      GenIndex g = GenIndex::of(v);
      b[v] = Poly(value(g.i, g.j, g.k));
    }
    return poly_subst(p, b).constant_value();
  };

  auto gens = GenAlgebra::Dn(rep.rank).generators(max_level);
  double num = 0, den = 0;
  for (auto& a : gens)
    for (auto& b : gens) {
      if (!(a < b)) continue;
      double fa = value(a.i, a.j, a.k).get_d(), fb = value(b.i, b.j, b.k).get_d();
      if (fa == 0 || fb == 0) {
        ++rep.skipped;
        continue;
      }
      ks::TraceFunction F{{{1.0, ks::generator_word(a.i, a.j, a.k)}}};
      ks::TraceFunction Gf{{{1.0, ks::generator_word(b.i, b.j, b.k)}}};
      RealizationCase c{a, b};
      c.lhs = double(ks::ks_bracket_numeric(F, Gf, pt) / (4 * static_cast<long double>(fa) * fb));
      Poly sb = structure_bracket(a, b);
      c.rhs = eval(sb).get_d();
      // size of the largest cancelling term sets the floating-point scale
      double terms = 0;
      for (auto& t : sb.terms()) {
        double v = std::abs(t.coef.get_d());
        for (auto& [sym, e] : t.mono) v *= std::pow(std::abs(value(sym.a(), sym.b(), sym.c()).get_d()), e);
        terms = std::max(terms, v);
      }
      double scale = std::max({1.0, std::abs(c.lhs), std::abs(factor) * terms});
      c.residual = std::abs(c.lhs - factor * c.rhs) / scale;
      rep.max_residual = std::max(rep.max_residual, c.residual);
      num += c.lhs * c.rhs;
      den += c.rhs * c.rhs;
      rep.cases.push_back(c);
    }
  if (den > 0) rep.fitted = num / den;
  return rep;
}

/// Tr(M_i M_h^k M_j M_h^{-k}) - (n - 4) - (G^{(k)}_{ij})^2, exactly.
inline Rational trace_identity_defect(const StokesMatrix& S, int ntilde, int i, int j, int k) {
  const int n = S.n();
  QMatrix mi = to_rational(monodromy_from_stokes(S, i)), mj = to_rational(monodromy_from_stokes(S, j));
  QMatrix hk = to_rational(mat_pow(monodromy_product(S, ntilde, n), std::abs(k)));
  QMatrix hmk = inverse(hk);
  if (k < 0) std::swap(hk, hmk);
  QMatrix w = mi * hk * mj * hmk;
  Rational tr = 0;
  for (int x = 0; x < n; ++x) tr += w(std::size_t(x), std::size_t(x));
  Rational f = to_rational(gk_family(S, ntilde, k))(std::size_t(i - 1), std::size_t(j - 1));
  return tr - (n - 4) - f * f;
}

// ---------------------------------------------------------------------------
// Level-p condition.

struct LevelPReport {
  int p = 0;
  bool periodic = false;        // (-S~^{-1} S~^T)^p = 1
  bool nondegenerate = false;   // det(S~ + S~^T) != 0
  std::optional<bool> full;     // M_h^p = 1, only when both hypotheses hold
  Poly charpoly;                // det(eta - M~_h)
  std::string message;
};

inline Sym eta() { return Sym::free("eta"); }

/// Checks the hypotheses on the trailing block S~ (rows ntilde..n) and,
/// when both hold, the conclusion on the full M_h.
inline LevelPReport level_p_condition(const StokesMatrix& S, int ntilde, int p) {
  if (p < 1) throw AlgebraError("level_p_condition: p must be positive");
  const int n = S.n();
  std::size_t a = std::size_t(ntilde - 1), m = std::size_t(n - ntilde + 1);
  LevelPReport r;
  r.p = p;
  PolyMatrix st = S.S().block(a, a, m, m);
  PolyMatrix mt = -(unipotent_inverse(st) * st.transpose());
  r.periodic = mat_pow(mt, p) == PolyMatrix::identity(m);
  Poly d = det(PolyMatrix(st + st.transpose()));
  r.nondegenerate = !d.is_zero();
  PolyMatrix ch = PolyMatrix::identity(m).map([](const Poly& x) { return x * Poly(eta()); }) - mt;
  r.charpoly = det(ch);
  if (!r.nondegenerate) {
    r.message = "nondegeneracy failed";
    return r;
  }
  if (!r.periodic) {
    r.message = "periodicity failed";
    return r;
  }
  r.full = mat_pow(clash_block(S, ntilde).Mh, p) == PolyMatrix::identity(std::size_t(n));
  r.message = *r.full ? "level-p holds" : "level-p fails on the full matrix";
  return r;
}

/// Stokes matrix of size ntilde - 1 + m whose trailing block has all
/// off-diagonal entries one; the leading entries are taken from rs.
inline StokesMatrix all_ones_trailing(int ntilde, int m, RationalSampler& rs) {
  int n = ntilde - 1 + m;
  PolyMatrix s = PolyMatrix::identity(std::size_t(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      s(std::size_t(i - 1), std::size_t(j - 1)) = i >= ntilde ? Poly(1) : Poly(rs.next());
  return StokesMatrix(s);
}

// ---------------------------------------------------------------------------
// Stokes matrices from shear coordinates.

/// The unit upper-triangular matrix with entries G_{i,j} of the canonical
/// graph, after substituting the shear values in b (unbound shears stay
/// symbolic).
inline StokesMatrix teich_stokes(int n, const Bindings& b = {}) {
  std::vector<Poly> u;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Poly g = geodesic_function(n, i, j);
      u.push_back(b.empty() ? g : poly_subst(g, b));
    }
  return StokesMatrix::from_upper(n, u);
}

/// Reduces a Laurent polynomial in r modulo r^4 = base; nullopt unless
/// the result is rational.
inline std::optional<Rational> fold_fourth_root(const Poly& p, Sym r, const Rational& base) {
  Rational acc = 0;
  for (auto& t : p.terms()) {
    if (t.mono.size() > 1 || (t.mono.size() == 1 && !(t.mono[0].first == r))) return std::nullopt;
    int e = t.mono.empty() ? 0 : t.mono[0].second;
    if (e % 4) return std::nullopt;
    Rational pw = 1;
    for (int x = 0; x < std::abs(e / 4); ++x) pw *= base;
    acc += e >= 0 ? Rational(t.coef * pw) : Rational(t.coef / pw);
  }
  return acc;
}

enum class QuantumPoint { A3, A4 };

inline std::string point_name(QuantumPoint q) { return q == QuantumPoint::A3 ? "a3star" : "a4star"; }

/// The two special shear points. A_3*: all Z = 0. A_4*: Z = (log2/2,
/// -log2/2, log2/2, -log2/2), Y = 0, so e^{Z/2} = 2^{+-1/4}, held as a
/// formal fourth root of 2.
inline QMatrix quantum_point(QuantumPoint q) {
  if (q == QuantumPoint::A3) {
    Bindings b;
    for (int i = 1; i <= 3; ++i) b[Sym::s(i)] = Poly(1);
    return teich_stokes(3, b).rational();
  }
  Sym r = Sym::free("root4of2");
  Bindings b{{Sym::s(1), Poly(r)}, {Sym::s(2), Poly(r).pow(-1)}, {Sym::s(3), Poly(r)},
             {Sym::s(4), Poly(r).pow(-1)}, {Sym::t(1), Poly(1)}};
  StokesMatrix s = teich_stokes(4, b);
  QMatrix out = QMatrix::identity(4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      auto v = fold_fourth_root(s.S()(i, j), r, 2);
      if (!v) throw AlgebraError("quantum_point: entry is not rational");
      out(i, j) = *v;
    }
  return out;
}

/// Binomial Stokes matrix of the quantum cohomology of CP^{n-1}.
inline QMatrix binomial_stokes(int n) {
  QMatrix s = QMatrix::identity(std::size_t(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), unsigned(n), unsigned(j - i));
      s(std::size_t(i), std::size_t(j)) = Rational(c);
    }
  return s;
}

// ---------------------------------------------------------------------------
// Braid orbit monitor.

struct OrbitReport {
  int words = 0;
  Rational min_abs;  // smallest |G_ij| seen
  std::vector<std::string> names;
  bool all_above_two() const { return min_abs > 2; }
};

/// Applies random words in the adjacent generators to the upper-triangular
/// matrix a and tracks the smallest off-diagonal entry in absolute value.
inline OrbitReport braid_orbit_monitor(const QMatrix& a, int words, int max_len, std::uint64_t seed) {
  const int n = int(a.rows());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> gen(1, n - 1), len(1, max_len), coin(0, 1);
  OrbitReport rep;
  bool seen = false;
  auto scan = [&](const PolyMatrix& m) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Rational v = abs(m(std::size_t(i), std::size_t(j)).constant_value());
        if (!seen || v < rep.min_abs) rep.min_abs = v;
        seen = true;
      }
  };
  PolyMatrix start = to_poly(a);
  scan(start);
  for (int w = 0; w < words; ++w) {
    std::vector<BraidGen> word;
    int L = len(rng);
    for (int x = 0; x < L; ++x) word.push_back(BraidGen::adjacent(gen(rng), coin(rng) == 1));
    rep.names.push_back(word_name(word, n));
    PolyMatrix m = start;
    // rightmost letter acts first
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      m = act_An(*it, m);
      scan(m);
    }
    ++rep.words;
  }
  return rep;
}

}  // namespace geoalg
