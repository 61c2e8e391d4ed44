#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoalg/braid.hpp"
#include "geoalg/dn_algebra.hpp"
#include "geoalg/poly_io.hpp"
#include "geoalg/reductions.hpp"
#include "geoalg/util.hpp"

namespace geoalg {

enum class CenterFlavor { An, Dnp, Dn };

inline std::string flavor_name(CenterFlavor f) {
  switch (f) {
    case CenterFlavor::An: return "A_n";
    case CenterFlavor::Dnp: return "D_n^(p)";
    case CenterFlavor::Dn: return "D_n";
  }
  return "?";
}

struct CenterSet {
  CenterFlavor flavor = CenterFlavor::An;
  int n = 0, p = 0;
  Poly generating;
  std::vector<Poly> coeffs;
  /// Number of algebraically independent centers expected.
  std::size_t expected = 0;
};

/// det(lam A + A^T/lam). It is invariant under lam -> 1/lam; the centers are
/// the coefficients of lam^{n-2k}, k = 1..n/2.
inline CenterSet centers_An(int n) {
  if (n < 2) throw AlgebraError("centers_An: n >= 2");
  PolyMatrix a = an_matrix(n);
  CenterSet c{CenterFlavor::An, n, 0, mat_det(lam(1) * a + lam(-1) * a.transpose()), {}, std::size_t(n / 2)};
  for (int k = 1; 2 * k <= n; ++k) c.coeffs.push_back(c.generating.coeff(Sym::lam(), n - 2 * k));
  return c;
}

/// det G_p(lam), a polynomial in 1/lam of degree np with unit end
/// coefficients and palindromic middle; centers are lam^{-k}, k = 1..np/2.
inline CenterSet centers_Dnp(int n, int p) {
  if (n < 2 || p < 1) throw AlgebraError("centers_Dnp: n >= 2, p >= 1");
  CenterSet c{CenterFlavor::Dnp, n, p, mat_det(build_Gp(n, p)), {}, std::size_t(n * p / 2)};
  for (int k = 1; 2 * k <= n * p; ++k) c.coeffs.push_back(c.generating.coeff(Sym::lam(), -k));
  return c;
}

/// eps (lam-1) Rhat + (lam+1) Shat + (lam^2-1) Ahat - (lam - 1/lam) Ahat^T.
inline PolyMatrix dn_central_matrix(const PolyMatrix& gh, int rsign = kRhatSign) {
  auto d = dn_matrices(gh);
  Poly L = lam(1), one(1);
  return Poly(rsign) * (L - one) * d.R + (L + one) * d.S + (L * L - one) * d.A - (L - lam(-1)) * d.A.transpose();
}

/// Exact division of a Laurent polynomial in lam by (lam - 1).
inline std::optional<Poly> divide_lam_minus_one(const Poly& f) {
  if (f.is_zero()) return Poly();
  auto [lo, hi] = f.degree_range(Sym::lam());
  Poly q, carry;
  for (int e = hi; e > lo; --e) {
    carry += f.coeff(Sym::lam(), e);
    q += carry * lam(e - 1);
  }
  if (!(carry + f.coeff(Sym::lam(), lo)).is_zero()) return std::nullopt;
  return q;
}

struct DnCenterSet : CenterSet {
  /// The quotient by (lam-1)^{n-1} has the shape
  /// lam^{n+1} + sum lam^i c_i + s sum lam^{1-i} c_i + s lam^{-n}, s = (-1)^{n+1}.
  bool factorization_ok = false;
  Poly quotient;
};

inline DnCenterSet centers_Dn(int n, int rsign = kRhatSign) {
  if (n < 2) throw AlgebraError("centers_Dn: n >= 2");
  DnCenterSet c;
  c.flavor = CenterFlavor::Dn;
  c.n = n;
  c.expected = std::size_t(n);
  c.generating = mat_det(dn_central_matrix(dn_hat_matrix(n), rsign));
  std::optional<Poly> q = c.generating;
  for (int k = 1; k < n && q; ++k) q = divide_lam_minus_one(*q);
  if (!q) return c;
  c.quotient = *q;
  const Poly s((n % 2) ? 1 : -1);
  auto co = [&](int e) { return q->coeff(Sym::lam(), e); };
  auto [lo, hi] = q->degree_range(Sym::lam());
  bool ok = lo == -n && hi == n + 1 && co(n + 1) == Poly(1) && co(-n) == s;
  for (int i = 1; i <= n; ++i) {
    c.coeffs.push_back(co(i));
    ok = ok && co(1 - i) == s * co(i);
  }
  c.factorization_ok = ok;
  return c;
}

/// The determinant at Ghat_{i,j} = 0 (i != j): with x_k the elementary
/// symmetric functions of the Ghat_{i,i}^2,
/// sum_k (lam - 1/lam)^{n-k} x_k (lam-1)^n [(lam+1)/(lam-1)]^{k mod 2}.
inline Poly dn_diagonal_determinant(int n) {
  std::vector<Poly> e(std::size_t(n) + 1);
  e[0] = Poly(1);
  for (int i = 1; i <= n; ++i) {
    Poly x = Poly(Sym::ghat(i, i)).pow(2);
    for (int k = i; k >= 1; --k) e[std::size_t(k)] += e[std::size_t(k - 1)] * x;
  }
  Poly L = lam(1), one(1), r;
  for (int k = 0; k <= n; ++k) {
    Poly t = (L - lam(-1)).pow(n - k) * e[std::size_t(k)];
    t *= k % 2 ? (L - one).pow(n - 1) * (L + one) : (L - one).pow(n);
    r += t;
  }
  return r;
}

/// The same sum with (lam + 1/lam) and the parity taken from n.
inline Poly dn_diagonal_determinant_literal(int n) {
  std::vector<Poly> e(std::size_t(n) + 1);
  e[0] = Poly(1);
  for (int i = 1; i <= n; ++i) {
    Poly x = Poly(Sym::ghat(i, i)).pow(2);
    for (int k = i; k >= 1; --k) e[std::size_t(k)] += e[std::size_t(k - 1)] * x;
  }
  Poly L = lam(1), one(1), r;
  for (int k = 0; k <= n; ++k) {
    Poly t = (L + lam(-1)).pow(n - k) * e[std::size_t(k)];
    t *= n % 2 ? (L - one).pow(n - 1) * (L + one) : (L - one).pow(n);
    r += t;
  }
  return r;
}

inline Bindings dn_offdiagonal_zero(int n) {
  Bindings b;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) b[Sym::ghat(i, j)] = Poly(0);
  return b;
}

// ---------------------------------------------------------------------------
// Bracket on the hat generators, induced from the infinite-level algebra
// through the reduction. Off-diagonal Ghat lift to G^{(0)}_{i,j} (i<j) and
// G^{(1)}_{i,j} (i>j); for the diagonal G^{(1)}_{i,i} = Ghat_{i,i}^2 + Pi^2 - 2,
// so brackets with Ghat_{i,i} are divided by 2 Ghat_{i,i}.

class DnHatAlgebra {
 public:
  explicit DnHatAlgebra(int n, int rsign = kRhatSign)
      : n_(n), rsign_(rsign), big_(GenAlgebra::Dn(n)), gh_(dn_hat_matrix(n)), cache_(std::make_shared<Cache>()) {}

  int n() const { return n_; }

  std::vector<Sym> generators() const {
    std::vector<Sym> v;
    for (int i = 1; i <= n_; ++i)
      for (int j = 1; j <= n_; ++j) v.push_back(Sym::ghat(i, j));
    return v;
  }

  /// Substitutes every infinite-level generator by its reduced expression.
  Poly reduce(const Poly& f) const {
    Bindings b;
    for (Sym v : f.variables())
      if (v.kind() == Kind::Gen) {
        GenIndex g = GenIndex::of(v);
        b[v] = reduced_level(g.k, gh_, rsign_)(std::size_t(g.i - 1), std::size_t(g.j - 1));
      }
    return b.empty() ? f : poly_subst(f, b);
  }

  Poly generator_bracket(Sym a, Sym b) const {
    auto key = std::make_pair(a, b);
    {
      std::lock_guard<std::mutex> lk(cache_->mu);
      auto it = cache_->table.find(key);
      if (it != cache_->table.end()) return it->second;
    }
    const int ia = a.a(), ja = a.b(), ib = b.a(), jb = b.b();
    Poly raw = reduce(big_.bracket(lift(ia, ja), lift(ib, jb)));
    if (ia == ja) raw = divide_by(raw, ia);
    if (ib == jb) raw = divide_by(raw, ib);
    std::lock_guard<std::mutex> lk(cache_->mu);
    cache_->table.emplace(key, raw);
    return raw;
  }

  Poly bracket(const Poly& f, const Poly& g) const {
    Poly r;
    for (Sym a : f.variables()) {
      if (a.kind() != Kind::Ghat) continue;
      Poly da = diff_any(f, a);
      for (Sym b : g.variables()) {
        if (b.kind() != Kind::Ghat) continue;
        Poly c = generator_bracket(a, b);
        if (!c.is_zero()) r += da * diff_any(g, b) * c;
      }
    }
    return r;
  }

 private:
  struct Cache {
    std::mutex mu;
    std::map<std::pair<Sym, Sym>, Poly> table;
  };

  Poly lift(int i, int j) const { return Poly(Sym::gen(i, j, i < j ? 0 : 1)); }

  // exact division by 2 Ghat_{i,i}
  Poly divide_by(const Poly& f, int i) const {
    Poly q = f * Poly(Sym::ghat(i, i), -1) * Poly(frac(1, 2));
    auto [lo, hi] = q.degree_range(Sym::ghat(i, i));
    (void)hi;
    if (lo < 0) throw AlgebraError("hat bracket: reduced bracket not divisible by Ghat[i,i]");
    return q;
  }

  int n_, rsign_;
  GenAlgebra big_;
  PolyMatrix gh_;
  std::shared_ptr<Cache> cache_;
};

// ---------------------------------------------------------------------------
// Checks.

struct CentralityReport {
  std::size_t pairs = 0, failures = 0;
};

inline std::vector<Sym> flavor_generators(CenterFlavor f, int n, int p) {
  std::vector<Sym> v;
  if (f == CenterFlavor::Dn) return DnHatAlgebra(n).generators();
  GenAlgebra alg = f == CenterFlavor::An ? GenAlgebra::An(n) : GenAlgebra::Dnp(n, p);
  for (auto& g : alg.generators(p)) v.push_back(g.sym());
  return v;
}

/// {c, g} = 0 for every center c and generator g, exactly.
inline CentralityReport centrality(const CenterSet& c, const std::vector<Poly>& extra = {}) {
  CentralityReport rep;
  std::vector<Poly> items = c.coeffs;
  items.insert(items.end(), extra.begin(), extra.end());
  std::vector<Sym> gens = flavor_generators(c.flavor, c.n, c.p);
  std::function<Poly(const Poly&, const Poly&)> br;
  if (c.flavor == CenterFlavor::Dn) {
    auto alg = std::make_shared<DnHatAlgebra>(c.n);
    br = [alg](const Poly& a, const Poly& b) { return alg->bracket(a, b); };
  } else {
    auto alg = std::make_shared<GenAlgebra>(c.flavor == CenterFlavor::An ? GenAlgebra::An(c.n)
                                                                         : GenAlgebra::Dnp(c.n, c.p));
    br = [alg](const Poly& a, const Poly& b) { return alg->bracket(a, b); };
  }
  std::vector<std::pair<std::size_t, std::size_t>> jobs;
  for (std::size_t i = 0; i < items.size(); ++i)
    for (std::size_t j = 0; j < gens.size(); ++j) jobs.push_back({i, j});
  std::atomic<std::size_t> bad{0};
  parallel_for(jobs.size(), [&](std::size_t t) {
    auto [i, j] = jobs[t];
    if (!br(items[i], Poly(gens[j])).is_zero()) ++bad;
  });
  rep.pairs = jobs.size();
  rep.failures = bad;
  return rep;
}

/// Rank of the Jacobian of fs with respect to vars at an exact point.
inline std::size_t jacobian_rank(const std::vector<Poly>& fs, const std::vector<Sym>& vars, const Bindings& at) {
  QMatrix j(fs.size(), vars.size());
  for (std::size_t a = 0; a < fs.size(); ++a)
    for (std::size_t b = 0; b < vars.size(); ++b) {
      Poly v = poly_subst(diff_any(fs[a], vars[b]), at);
      if (!v.is_constant()) throw AlgebraError("jacobian_rank: point leaves free variables");
      j(a, b) = v.constant_value();
    }
  return rank(j);
}

struct IndependenceReport {
  std::vector<std::size_t> ranks;  // per sampled point
  std::size_t all_ones_rank = 0;
  /// rank of the gradients of every nonconstant coefficient of the
  /// generating function, maximum over the points
  std::size_t full_rank = 0;
  std::size_t expected = 0;
  bool ok() const {
    for (auto r : ranks)
      if (r != expected) return false;
    return full_rank <= expected;
  }
};

inline std::vector<Poly> nonconstant_coeffs(const Poly& gen) {
  std::vector<Poly> out;
  auto [lo, hi] = gen.degree_range(Sym::lam());
  for (int e = lo; e <= hi; ++e) {
    Poly c = gen.coeff(Sym::lam(), e);
    if (!c.is_constant()) out.push_back(c);
  }
  return out;
}

inline IndependenceReport independence(const CenterSet& c, std::uint64_t seed, int points = 5) {
  IndependenceReport rep;
  rep.expected = c.expected;
  std::vector<Sym> vars = flavor_generators(c.flavor, c.n, c.p);
  std::vector<Poly> all = nonconstant_coeffs(c.generating);
  RationalSampler rs(seed);
  std::vector<Bindings> pts;
  for (int t = 0; t < points; ++t) pts.push_back(rs.point(vars));
  rep.ranks.resize(pts.size());
  std::vector<std::size_t> full(pts.size() + 1);
  Bindings ones;
  for (Sym v : vars) ones[v] = Poly(1);
  parallel_for(pts.size() + 1, [&](std::size_t t) {
    const Bindings& at = t < pts.size() ? pts[t] : ones;
    std::size_t r = jacobian_rank(c.coeffs, vars, at);
    if (t < pts.size()) rep.ranks[t] = r;
    else rep.all_ones_rank = r;
    full[t] = jacobian_rank(all, vars, at);
  });
  for (auto f : full) rep.full_rank = std::max(rep.full_rank, f);
  return rep;
}

/// Images of the generators of a flavor under one braid generator.
inline Bindings braid_images(CenterFlavor f, const BraidGen& b, int n, int p) {
  Bindings img;
  if (f == CenterFlavor::An) {
    PolyMatrix r = act_An(b, an_matrix(n));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) img[Sym::gen(i, j, 0)] = r(std::size_t(i - 1), std::size_t(j - 1));
  } else if (f == CenterFlavor::Dnp) {
    PolyMatrix r = act_matrix(b, build_Gp(n, p));
    for (auto& g : GenAlgebra::Dnp(n, p).generators(p))
      img[g.sym()] = lam_coeff(r, -g.k)(std::size_t(g.i - 1), std::size_t(g.j - 1));
  } else {
    PolyMatrix r = act_Dn(b, dn_hat_matrix(n));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) img[Sym::ghat(i, j)] = r(std::size_t(i - 1), std::size_t(j - 1));
  }
  return img;
}

/// For the level-p matrix, the image under a braid generator keeps the
/// shape A' + ... + A'^T lam^{-p} with unit diagonal in A'.
inline bool dnp_image_shape(const BraidGen& b, int n, int p) {
  PolyMatrix r = act_matrix(b, build_Gp(n, p));
  auto [lo, hi] = std::pair{0, 0};
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) {
      if (r(i, j).is_zero()) continue;
      auto [l, h] = r(i, j).degree_range(Sym::lam());
      lo = std::min(lo, l);
      hi = std::max(hi, h);
    }
  PolyMatrix a = lam_coeff(r, 0), at = lam_coeff(r, -p);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (!(a(i, i) == Poly(1))) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (!a(i, j).is_zero()) return false;
  }
  return lo == -p && hi == 0 && at == a.transpose();
}

struct InvarianceReport {
  std::vector<std::pair<std::string, bool>> cases;
  bool all() const {
    for (auto& c : cases)
      if (!c.second) return false;
    return !cases.empty();
  }
};

/// Every braid generator (and its inverse) fixes every listed element.
/// The wrap generator is skipped for A_n.
inline InvarianceReport braid_invariance(CenterFlavor f, int n, int p, const std::vector<Poly>& items) {
  InvarianceReport rep;
  std::vector<BraidGen> gens;
  for (int i = 1; i < n; ++i) gens.push_back(BraidGen::adjacent(i));
  if (f != CenterFlavor::An) gens.push_back(BraidGen::wrap_gen());
  for (auto g : gens)
    for (bool inv : {false, true}) {
      BraidGen b = inv ? g.inv() : g;
      Bindings img = braid_images(f, b, n, p);
      bool ok = true;
      for (auto& c : items) ok = ok && poly_subst(c, img) == c;
      rep.cases.push_back({b.name(n), ok});
    }
  return rep;
}

inline InvarianceReport braid_invariance(const CenterSet& c) { return braid_invariance(c.flavor, c.n, c.p, c.coeffs); }

// ---------------------------------------------------------------------------
// Casimirs of D_2, D_3 in closed form, and their relation to the extracted
// coefficients.

inline std::vector<Poly> printed_casimirs(int n) {
  std::vector<std::string> src;
  if (n == 2) {
    src = {"Ghat[1,1]*Ghat[2,2] - Ghat[1,2] - Ghat[2,1]",
           "Ghat[1,2]*Ghat[2,1] - Ghat[1,1]^2 - Ghat[2,2]^2"};
  } else if (n == 3) {
    src = {
        "Ghat[1,1]*Ghat[2,2]*Ghat[3,3] - Ghat[1,1]*(Ghat[3,2] + Ghat[2,3]) - Ghat[2,2]*(Ghat[1,3] + Ghat[3,1])"
        " - Ghat[3,3]*(Ghat[2,1] + Ghat[1,2])",
        "Ghat[1,2]*Ghat[2,3]*Ghat[3,1] - Ghat[1,2]*Ghat[2,1] - Ghat[2,3]*Ghat[3,2] - Ghat[3,1]*Ghat[1,3]"
        " + Ghat[1,1]^2 + Ghat[2,2]^2 + Ghat[3,3]^2",
        "Ghat[1,3]*Ghat[2,1]*Ghat[3,2] - Ghat[1,2]*Ghat[2,1]*Ghat[3,3]^2 - Ghat[2,3]*Ghat[3,2]*Ghat[1,1]^2"
        " - Ghat[3,1]*Ghat[1,3]*Ghat[2,2]^2"
        " + 2*Ghat[1,1]*Ghat[2,2]*(Ghat[2,3]*Ghat[3,1] - Ghat[2,1] - Ghat[1,2])"
        " + 2*Ghat[2,2]*Ghat[3,3]*(Ghat[3,1]*Ghat[1,2] - Ghat[3,2] - Ghat[2,3])"
        " + 2*Ghat[3,3]*Ghat[1,1]*(Ghat[3,1]*Ghat[1,2] - Ghat[3,2] - Ghat[2,3])"
        " + Ghat[2,1]^2 + Ghat[3,2]^2 + Ghat[1,3]^2"
        " - Ghat[1,2]*Ghat[2,3]*Ghat[1,3] - Ghat[2,3]*Ghat[3,1]*Ghat[2,1] - Ghat[3,1]*Ghat[1,2]*Ghat[3,2]"
        " + Ghat[1,2]^2 + Ghat[2,3]^2 + Ghat[3,1]^2"
        " + (Ghat[1,1]^2 + 1)*(Ghat[2,2]^2 + 1) + (Ghat[2,2]^2 + 1)*(Ghat[3,3]^2 + 1)"
        " + (Ghat[3,3]^2 + 1)*(Ghat[1,1]^2 + 1)"};
  } else {
    throw AlgebraError("printed_casimirs: n must be 2 or 3");
  }
  std::vector<Poly> out;
  for (auto& s : src) out.push_back(parse_poly(s));
  return out;
}

/// D_3 Casimirs that commute with the induced bracket: the cubic with
/// antisymmetric off-diagonal pairs and the quartic whose third
/// mixed term follows the cyclic pattern of the other two.
inline std::vector<Poly> dn3_casimirs() {
  auto printed = printed_casimirs(3);
  Poly c1 = parse_poly(
      "Ghat[1,1]*Ghat[2,2]*Ghat[3,3] + Ghat[1,1]*(Ghat[2,3] - Ghat[3,2]) + Ghat[2,2]*(Ghat[3,1] - Ghat[1,3])"
      " + Ghat[3,3]*(Ghat[1,2] - Ghat[2,1])");
  Poly c3 = printed[2] - parse_poly("2*Ghat[3,3]*Ghat[1,1]*(Ghat[3,1]*Ghat[1,2] - Ghat[3,2] - Ghat[2,3])") +
            parse_poly("2*Ghat[3,3]*Ghat[1,1]*(Ghat[1,2]*Ghat[2,3] - Ghat[1,3] - Ghat[3,1])");
  return {c1, printed[1], c3};
}

inline int total_degree(const Poly& p) {
  int d = 0;
  for (auto& t : p.terms()) {
    int s = 0;
    for (auto& [v, e] : t.mono) s += e;
    d = std::max(d, s);
  }
  return d;
}

/// target = a * basis + b for rationals a, b.
struct AffineMatch {
  Rational scale, shift;
};

inline std::optional<AffineMatch> affine_match(const Poly& target, const Poly& basis) {
  // pick a nonconstant term of basis to fix the scale
  for (auto& t : basis.terms()) {
    if (t.mono.empty()) continue;
    Rational a = 0;
    for (auto& u : target.terms())
      if (u.mono == t.mono) a = u.coef / t.coef;
    if (a == 0) return std::nullopt;
    Poly rest = target - basis.scaled(a);
    if (!rest.is_constant()) return std::nullopt;
    return AffineMatch{a, rest.constant_value()};
  }
  return std::nullopt;
}

/// One printed Casimir against the determinant coefficients.
struct CasimirComparison {
  std::size_t index = 0;       // 0-based position in the printed list
  bool central = false;        // under the induced hat bracket
  bool braid_invariant = false;
  std::optional<AffineMatch> affine;  // against some extracted coefficient
  std::size_t affine_with = 0;        // 0-based coefficient index
};

/// Expresses target as a polynomial in the basis elements with weighted
/// degree at most the degree of target. Returns exponent vectors with
/// their coefficients, or nothing if no such expression exists.
using Expression = std::vector<std::pair<std::vector<int>, Rational>>;

inline std::optional<Expression> express_in(const Poly& target, const std::vector<Poly>& basis) {
  const int dmax = total_degree(target);
  std::vector<int> deg;
  for (auto& b : basis) {
    deg.push_back(total_degree(b));
    if (deg.back() == 0) throw AlgebraError("express_in: constant basis element");
  }
  std::vector<std::vector<int>> exps;
  std::vector<int> cur(basis.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == basis.size()) {
      exps.push_back(cur);
      return;
    }
    for (int e = 0; e * deg[i] <= left; ++e) {
      cur[i] = e;
      rec(i + 1, left - e * deg[i]);
    }
    cur[i] = 0;
  };
  rec(0, dmax);
  std::vector<Poly> cols;
  for (auto& e : exps) {
    Poly m(1);
    for (std::size_t i = 0; i < e.size(); ++i) m *= basis[i].pow(e[i]);
    cols.push_back(m);
  }
  std::map<Mono, std::size_t> row;
  auto index = [&](const Mono& m) {
    auto it = row.find(m);
    if (it != row.end()) return it->second;
    return row.emplace(m, row.size()).first->second;
  };
  for (auto& c : cols)
    for (auto& t : c.terms()) index(t.mono);
  for (auto& t : target.terms()) index(t.mono);
  const std::size_t R = row.size(), C = cols.size();
  QMatrix a(R, C + 1);
  for (std::size_t j = 0; j < C; ++j)
    for (auto& t : cols[j].terms()) a(row[t.mono], j) = t.coef;
  for (auto& t : target.terms()) a(row[t.mono], C) = t.coef;
  // reduced row echelon form
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < C && r < R; ++c) {
    std::size_t p = r;
    while (p < R && a(p, c) == 0) ++p;
    if (p == R) continue;
    for (std::size_t j = 0; j <= C; ++j) std::swap(a(p, j), a(r, j));
    Rational piv = a(r, c);
    for (std::size_t j = 0; j <= C; ++j) a(r, j) /= piv;
    for (std::size_t i = 0; i < R; ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (std::size_t j = 0; j <= C; ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < R; ++i)
    if (a(i, C) != 0) return std::nullopt;
  Expression out;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    if (a(i, C) != 0) out.push_back({exps[pivots[i]], a(i, C)});
  return out;
}

inline Poly evaluate_expression(const Expression& e, const std::vector<Poly>& basis) {
  Poly r;
  for (auto& [ex, c] : e) {
    Poly m(c);
    for (std::size_t i = 0; i < ex.size(); ++i) m *= basis[i].pow(ex[i]);
    r += m;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Leading-order brackets near Ghat_{i,j} = 0 (i != j).

/// Poisson matrix on the off-diagonal coordinates at the point with the
/// given diagonal values, from {Ghat_ij, Ghat_ji} = 2 Ghat_jj^2 - 2 Ghat_ii^2.
inline QMatrix vicinity_matrix(const std::vector<Rational>& diag) {
  const int n = static_cast<int>(diag.size());
  std::vector<std::pair<int, int>> coords;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) coords.push_back({i, j});
  QMatrix m(coords.size());
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t b = 0; b < coords.size(); ++b) {
      auto [i, j] = coords[a];
      auto [k, l] = coords[b];
      if (k == j && l == i) m(a, b) = 2 * diag[std::size_t(j)] * diag[std::size_t(j)] - 2 * diag[std::size_t(i)] * diag[std::size_t(i)];
    }
  return m;
}

/// The same matrix from the induced hat bracket, evaluated exactly.
inline QMatrix induced_offdiagonal_matrix(const DnHatAlgebra& alg, const std::vector<Rational>& diag) {
  const int n = alg.n();
  Bindings at = dn_offdiagonal_zero(n);
  for (int i = 1; i <= n; ++i) at[Sym::ghat(i, i)] = Poly(diag[std::size_t(i - 1)]);
  std::vector<Sym> coords;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) coords.push_back(Sym::ghat(i, j));
  QMatrix m(coords.size());
  for (std::size_t a = 0; a < coords.size(); ++a)
    for (std::size_t b = 0; b < coords.size(); ++b)
      m(a, b) = poly_subst(alg.generator_bracket(coords[a], coords[b]), at).constant_value();
  return m;
}

/// Full Poisson matrix of the induced bracket at an exact point.
inline QMatrix poisson_matrix(const DnHatAlgebra& alg, const Bindings& at) {
  auto vars = alg.generators();
  QMatrix m(vars.size());
  for (std::size_t a = 0; a < vars.size(); ++a)
    for (std::size_t b = 0; b < vars.size(); ++b) {
      Poly v = poly_subst(alg.generator_bracket(vars[a], vars[b]), at);
      if (!v.is_constant()) throw AlgebraError("poisson_matrix: point leaves free variables");
      m(a, b) = v.constant_value();
    }
  return m;
}

inline std::vector<CasimirComparison> compare_casimirs(int n) {
  auto printed = printed_casimirs(n);
  auto c = centers_Dn(n);
  DnHatAlgebra alg(n);
  std::vector<CasimirComparison> out;
  for (std::size_t i = 0; i < printed.size(); ++i) {
    CasimirComparison r;
    r.index = i;
    r.central = true;
    for (Sym g : alg.generators()) r.central = r.central && alg.bracket(printed[i], Poly(g)).is_zero();
    r.braid_invariant = braid_invariance(CenterFlavor::Dn, n, 0, {printed[i]}).all();
    for (std::size_t j = 0; j < c.coeffs.size() && !r.affine; ++j)
      if ((r.affine = affine_match(c.coeffs[j], printed[i]))) r.affine_with = j;
    out.push_back(r);
  }
  return out;
}

}  // namespace geoalg
