#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "geoalg/braid.hpp"
#include "geoalg/dn_algebra.hpp"

namespace geoalg {

// ---------------------------------------------------------------------------
// Level-p reduction.

/// Canonical representative under G^{(k+p)} = G^{(k)} and the mirror rule.
/// Returns false for the constant G[i,i,0] = 2.
inline bool level_p_canonicalize(GenIndex& g, int p) {
  if (p < 1) throw AlgebraError("level_p_canonicalize: p must be >= 1");
  g.k = ((g.k % p) + p) % p;
  if (2 * g.k > p || (2 * g.k == p && g.i > g.j)) g = {g.j, g.i, p - g.k};
  if (g.k == 0) return canonicalize(g);
  return true;
}

/// G_p(lam) = A + G^{(1)}/lam + ... + G^{(p-1)}/lam^{p-1} + A^T/lam^p. The
/// optional bindings assign values to the canonical generators.
inline PolyMatrix build_Gp(int n, int p, const Bindings& values = {}) {
  GenAlgebra alg = GenAlgebra::Dnp(n, p);
  auto entry = [&](int i, int j, int k) {
    Poly g = alg.gen(i, j, k);
    return values.empty() ? g : poly_subst(g, values);
  };
  PolyMatrix m(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Poly e;
      Poly a = i == j ? Poly(1) : i < j ? entry(i, j, 0) : Poly(0);
      Poly at = i == j ? Poly(1) : i > j ? entry(j, i, 0) : Poly(0);
      e += a + at * lam(-p);
      for (int k = 1; k < p; ++k) e += entry(i, j, k) * lam(-k);
      m(std::size_t(i - 1), std::size_t(j - 1)) = e;
    }
  return m;
}

/// Infinite-level generating matrix through level K with every generator
/// replaced by its class modulo p.
inline PolyMatrix level_p_series(int n, int p, int K) {
  GenAlgebra alg = GenAlgebra::Dnp(n, p);
  return LevelFamily::symbolic(n, K).generating().map([&](const Poly& x) { return alg.recanonicalize(x); });
}

/// (1 - lam^{-p}) times the periodic series agrees with G_p through lam^{-K}.
inline bool level_p_generating_identity(int n, int p, int K) {
  PolyMatrix lhs = (Poly(1) - lam(-p)) * level_p_series(n, p, K), gp = build_Gp(n, p);
  for (int e = 0; e >= -K; --e)
    if (!(lam_coeff(lhs, e) == lam_coeff(gp, e))) return false;
  return true;
}

/// Infinite-level generators (nonnegative level up to max_level) in the
/// class of g modulo p.
inline std::vector<GenIndex> level_p_representatives(int n, GenIndex g, int p, int max_level) {
  GenIndex c = g;
  bool nonconst = level_p_canonicalize(c, p);
  std::vector<GenIndex> out;
  for (int k = 0; k <= max_level; ++k)
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        if (k == 0 && i >= j) continue;
        GenIndex r{i, j, k}, rc = r;
        if (level_p_canonicalize(rc, p) == nonconst && rc == c) out.push_back(r);
      }
  return out;
}

struct RepresentativeReport {
  std::size_t pairs = 0, comparisons = 0, failures = 0;
};

/// The infinite-level bracket of any two representatives, reduced mod p,
/// depends only on the classes. Constant classes (G[i,i,p] = 2) must
/// bracket to zero.
inline RepresentativeReport level_p_representative_check(int n, int p, int max_level) {
  GenAlgebra red = GenAlgebra::Dnp(n, p);
  RepresentativeReport rep;
  std::vector<GenIndex> classes = red.generators(p);
  for (int i = 1; i <= n; ++i) classes.push_back({i, i, 0});
  auto reps = [&](const GenIndex& g) { return level_p_representatives(n, g, p, max_level); };
  for (std::size_t a = 0; a < classes.size(); ++a)
    for (std::size_t b = a; b < classes.size(); ++b) {
      ++rep.pairs;
      bool const_a = classes[a].k == 0 && classes[a].i == classes[a].j;
      bool const_b = classes[b].k == 0 && classes[b].i == classes[b].j;
      std::optional<Poly> first;
      if (const_a || const_b) first = Poly(0);
      for (auto& x : reps(classes[a]))
        for (auto& y : reps(classes[b])) {
          Poly v = red.recanonicalize(structure_bracket(x, y));
          ++rep.comparisons;
          if (!first) first = v;
          else if (!(v == *first)) ++rep.failures;
        }
    }
  return rep;
}

// ---------------------------------------------------------------------------
// D_n reduction. The ring variable h stands for exp(P_h/2), so exp(P_h) = h^2
// and Pi = h + 1/h.

inline Poly hvar(int e = 1) { return Poly(Sym::h(), e); }
inline Poly Pi_of_h() { return hvar(1) + hvar(-1); }

/// Rewrites a polynomial symmetric under h -> 1/h in terms of Pi.
inline Poly h_to_pi(Poly p) {
  Poly r;
  for (;;) {
    auto [lo, hi] = p.degree_range(Sym::h());
    if (hi <= 0) {
      if (lo < 0) throw AlgebraError("h_to_pi: expression is not symmetric in h");
      return r + p;
    }
    Poly c = p.coeff(Sym::h(), hi);
    p -= c * Pi_of_h().pow(hi);
    r += c * Poly(Sym::pi()).pow(hi);
  }
}

/// Coefficients of G^{(k)} on (Rhat, Shat, Ahat, Ahat^T), Laurent in h.
struct ReductionRow {
  Poly R, S, A, AT;
  friend bool operator==(const ReductionRow& x, const ReductionRow& y) {
    return x.R == y.R && x.S == y.S && x.A == y.A && x.AT == y.AT;
  }
  ReductionRow map(const std::function<Poly(const Poly&)>& f) const { return {f(R), f(S), f(A), f(AT)}; }
};

/// Orientation of Rhat in the reduction. With Rhat as defined entrywise
/// (Ghat_{j,i} + Ghat_{i,j} - Ghat_{i,i}Ghat_{j,j} above the diagonal) the
/// skein resolution of G^{(1)} needs -Rhat.
constexpr int kRhatSign = -1;

/// Rows by the rotation step G^{(k+1)} = 2 Shat - G^{(k-1)} + (Pi^2 - 2) G^{(k)},
/// starting from G^{(0)} = Ahat + Ahat^T and the skein resolution of G^{(1)}.
inline ReductionRow dn_reduce(int k, int rsign = kRhatSign) {
  if (k < 0) throw AlgebraError("dn_reduce: negative level, use the transposition rule");
  const Poly t = Pi_of_h() * Pi_of_h() - Poly(2);
  ReductionRow prev{Poly(0), Poly(0), Poly(1), Poly(1)};
  if (k == 0) return {Poly(0), Poly(0), Poly(1), Poly(0)};
  ReductionRow cur{Poly(rsign), Poly(1), t + Poly(1), Poly(-1)};
  for (int s = 1; s < k; ++s) {
    ReductionRow next{t * cur.R - prev.R, t * cur.S - prev.S + Poly(2), t * cur.A - prev.A, t * cur.AT - prev.AT};
    prev = cur;
    cur = next;
  }
  return cur;
}

/// The closed form of the same rows, written as finite geometric sums in x = h^2.
inline ReductionRow dn_reduce_closed(int k, int rsign = kRhatSign) {
  if (k < 1) throw AlgebraError("dn_reduce_closed: k >= 1");
  auto x = [](int e) { return hvar(2 * e); };
  // (x^k - x^-k)/(x - 1/x)
  Poly r;
  for (int j = 0; j < k; ++j) r += x(k - 1 - 2 * j);
  // ((h^k - h^-k)/(h - 1/h))^2 = (x^k - 2 + x^-k)/(x - 2 + 1/x)
  Poly s;
  for (int j = 0; j < k; ++j) s += hvar(k - 1 - 2 * j);
  s = s * s;
  // x^{k+1}/(x - 1) - x^{-k}/(x - 1) summed, and the same at k - 1
  auto a = [&](int m) {
    Poly v;
    for (int j = -m; j <= m; ++j) v += x(j);
    return v;
  };
  return {Poly(rsign) * r, s, a(k), -a(k - 1)};
}

/// G^{(k)} as a matrix in Ghat (any k, negative levels by transposition).
inline PolyMatrix reduced_level(int k, const PolyMatrix& Gh, int rsign = kRhatSign) {
  if (k == 0) {
    auto d = dn_matrices(Gh);
    return d.A + d.A.transpose();
  }
  auto d = dn_matrices(Gh);
  ReductionRow c = dn_reduce(k < 0 ? -k : k, rsign);
  PolyMatrix m = c.R * d.R + c.S * d.S + c.A * d.A + c.AT * d.A.transpose();
  return k < 0 ? m.transpose() : m;
}

/// Generating matrix A^{(0)} + sum_{k=1}^{K} G^{(k)} lam^{-k} after reduction.
inline PolyMatrix reduced_series(const PolyMatrix& Gh, int K, int rsign = kRhatSign) {
  PolyMatrix m = dn_matrices(Gh).A;
  for (int k = 1; k <= K; ++k) m = m + lam(-k) * reduced_level(k, Gh, rsign);
  return m;
}

/// Braid covariance of the reduction: acting in matrix form on the reduced
/// generating matrix equals reducing the hat-generator images, on every
/// certified level.
struct FaithfulnessReport {
  std::vector<std::pair<std::string, bool>> cases;
  bool all() const {
    for (auto& c : cases)
      if (!c.second) return false;
    return !cases.empty();
  }
};

inline FaithfulnessReport dn_faithfulness(int n, int K = 4, int rsign = kRhatSign) {
  FaithfulnessReport rep;
  PolyMatrix gh = dn_hat_matrix(n);
  PolyMatrix series = reduced_series(gh, K, rsign);
  std::vector<BraidGen> gens;
  for (int i = 1; i < n; ++i) gens.push_back(BraidGen::adjacent(i));
  gens.push_back(BraidGen::wrap_gen());
  for (auto g : gens)
    for (bool inv : {false, true}) {
      BraidGen b = inv ? g.inv() : g;
      PolyMatrix img = act_matrix(b, series);
      PolyMatrix expect = reduced_series(act_Dn(b, gh), K, rsign);
      int cap = cap_after(b, K);
      bool ok = true;
      for (int k = 0; k <= cap && ok; ++k) ok = lam_coeff(img, -k) == lam_coeff(expect, -k);
      rep.cases.push_back({b.name(n), ok});
    }
  return rep;
}

/// Summation identity: D(lam) * sum_k G^{(k)} lam^{-k} equals
/// lam [eps (lam-1) Rhat + (lam+1) Shat + (lam^2-1) Ahat - (lam - 1/lam) Ahat^T]
/// with D = (lam - 1)(e^{-P} lam - 1)(e^{P} lam - 1), eps the Rhat orientation.
/// The series is truncated at K; coefficients are compared where exact.
struct SumReport {
  bool numerator_matches = false, tail_vanishes = false;
  int checked_orders = 0;
};

inline SumReport dn_sum(int n, int K = 8) {
  PolyMatrix gh = dn_hat_matrix(n);
  auto d = dn_matrices(gh);
  Poly L = lam(1), x = hvar(2), xi = hvar(-2);
  Poly D = (L - Poly(1)) * (xi * L - Poly(1)) * (x * L - Poly(1));
  PolyMatrix lhs = D * reduced_series(gh, K);
  PolyMatrix rhs = L * (Poly(kRhatSign) * (L - Poly(1)) * d.R + (L + Poly(1)) * d.S + (L * L - Poly(1)) * d.A -
                        (L - lam(-1)) * d.A.transpose());
  SumReport rep;
  rep.numerator_matches = true;
  rep.tail_vanishes = true;
  // D has degree 3, so lam^{3..-(K-3)} of the product are exact
  for (int e = 3; e >= -(K - 3); --e) {
    PolyMatrix a = lam_coeff(lhs, e), b = lam_coeff(rhs, e);
    if (e >= 0) rep.numerator_matches = rep.numerator_matches && a == b;
    else rep.tail_vanishes = rep.tail_vanishes && a == PolyMatrix(a.rows()) && b == PolyMatrix(b.rows());
    ++rep.checked_orders;
  }
  return rep;
}

// Univariate arithmetic in h over the rationals, for reductions modulo
// cyclotomic factors.
namespace detail {

using UPoly = std::vector<Rational>;  // coefficient of h^i at index i

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline UPoly umod(UPoly a, const UPoly& m) {
  trim(a);
  while (a.size() >= m.size()) {
    Rational f = a.back() / m.back();
    std::size_t sh = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) a[sh + i] -= f * m[i];
    trim(a);
  }
  return a;
}

inline UPoly udiv(UPoly a, const UPoly& m) {
  trim(a);
  UPoly q(a.size() >= m.size() ? a.size() - m.size() + 1 : 0, Rational(0));
  while (a.size() >= m.size()) {
    Rational f = a.back() / m.back();
    std::size_t sh = a.size() - m.size();
    q[sh] = f;
    for (std::size_t i = 0; i < m.size(); ++i) a[sh + i] -= f * m[i];
    trim(a);
  }
  return q;
}

inline UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = umod(a, b);
    a = b;
    b = r;
  }
  return a;
}

inline UPoly xn_minus_1(int n) {
  UPoly u(static_cast<std::size_t>(n) + 1, Rational(0));
  u[0] = -1;
  u.back() = 1;
  return u;
}

/// Laurent polynomial in h (no other variables) times h^shift as a UPoly.
inline UPoly to_upoly(const Poly& p, int shift) {
  UPoly u;
  for (auto& t : p.terms()) {
    if (t.mono.size() > 1 || (t.mono.size() == 1 && t.mono[0].first != Sym::h()))
      throw AlgebraError("to_upoly: expected a polynomial in h only");
    int e = (t.mono.empty() ? 0 : t.mono[0].second) + shift;
    if (e < 0) throw AlgebraError("to_upoly: shift too small");
    if (u.size() <= std::size_t(e)) u.resize(std::size_t(e) + 1, Rational(0));
    u[std::size_t(e)] += t.coef;
  }
  trim(u);
  return u;
}

}  // namespace detail

/// Level-p compatibility: with h^{2p} = 1 (and exp(P_h) != +-1, where the
/// reduction is undefined) the rows are periodic, dn_reduce(k+p) = dn_reduce(k).
/// The check works modulo (h^{2p} - 1)/gcd(h^{2p} - 1, h^4 - 1); for p <= 2 that
/// modulus is 1 and the statement is vacuous.
struct PeriodicityReport {
  bool vacuous = false, holds = false;
  int levels_checked = 0;
};

inline PeriodicityReport dn_periodicity(int p, int max_k = 6) {
  using namespace detail;
  UPoly m = udiv(xn_minus_1(2 * p), ugcd(xn_minus_1(2 * p), xn_minus_1(4)));
  PeriodicityReport rep;
  if (m.size() <= 1) {
    rep.vacuous = true;
    rep.holds = true;
    return rep;
  }
  rep.holds = true;
  const int shift = 4 * (max_k + p + 2);
  auto same = [&](const Poly& a, const Poly& b) { return umod(to_upoly(a - b, shift), m).empty(); };
  for (int k = 1; k <= max_k; ++k) {
    ReductionRow a = dn_reduce(k), b = dn_reduce(k + p);
    rep.holds = rep.holds && same(a.R, b.R) && same(a.S, b.S) && same(a.A, b.A) && same(a.AT, b.AT);
    ++rep.levels_checked;
  }
  return rep;
}

}  // namespace geoalg
