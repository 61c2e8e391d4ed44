#pragma once

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geoalg/matrix.hpp"

namespace geoalg {

struct Edge {
  enum Type { Pending, Inner } type;
  int index;  // Z_index or Y_index
  Sym variable() const { return type == Pending ? Sym::s(index) : Sym::t(index); }
  std::string name() const { return (type == Pending ? "Z" : "Y") + std::to_string(index); }
  friend bool operator==(const Edge& a, const Edge& b) {
    return a.type == b.type && a.index == b.index;
  }
};

/// Trivalent vertex with its incident edges in counterclockwise order.
struct Vertex {
  std::array<Edge, 3> ccw;
};

struct FatGraph {
  int n = 0;
  std::vector<Edge> edges;
  std::vector<Vertex> vertices;
  std::vector<int> pending_vertices;  // Z indices terminating at a pending vertex

  std::size_t pending_count() const { return pending_vertices.size(); }
  std::size_t inner_count() const { return edges.size() - pending_vertices.size(); }

  std::vector<Sym> variables() const {
    std::vector<Sym> v;
    for (auto& e : edges) v.push_back(e.variable());
    return v;
  }
};

/// Caterpillar graph: spine Z_1, Y_1, ..., Y_{n-3}, Z_n with Z_2..Z_{n-1}
/// hanging from the spine vertices.
inline FatGraph canonical_disc_graph(int n) {
  if (n < 3) throw AlgebraError("canonical_disc_graph: n must be at least 3");
  FatGraph g;
  g.n = n;
  for (int i = 1; i <= n; ++i) {
    g.edges.push_back({Edge::Pending, i});
    g.pending_vertices.push_back(i);
  }
  for (int j = 1; j <= n - 3; ++j) g.edges.push_back({Edge::Inner, j});
  for (int v = 1; v <= n - 2; ++v) {
    Edge in = v == 1 ? Edge{Edge::Pending, 1} : Edge{Edge::Inner, v - 1};
    Edge out = v == n - 2 ? Edge{Edge::Pending, n} : Edge{Edge::Inner, v};
    g.vertices.push_back({{in, Edge{Edge::Pending, v + 1}, out}});
  }
  return g;
}

struct Letter {
  enum Type { R, L, F, X } type;
  Edge edge{Edge::Pending, 0};
  std::string name() const {
    switch (type) {
      case R: return "R";
      case L: return "L";
      case F: return "F";
      case X: return "X" + edge.name();
    }
    return "?";
  }
};

struct Mat2Word {
  std::vector<Letter> letters;
  int sign = 1;

  std::string to_string() const {
    std::string s = sign < 0 ? "-" : "";
    for (std::size_t i = 0; i < letters.size(); ++i) s += (i ? " " : "") + letters[i].name();
    return s;
  }
  int count(Letter::Type t) const {
    int c = 0;
    for (auto& l : letters) c += l.type == t;
    return c;
  }
};

namespace mat2 {

inline PolyMatrix R() { return PolyMatrix{{1, 1}, {-1, 0}}; }
inline PolyMatrix L() { return PolyMatrix{{0, -1}, {1, 1}}; }
inline PolyMatrix F() { return PolyMatrix{{0, 1}, {-1, 0}}; }
inline PolyMatrix X(const Poly& u) {
  return PolyMatrix{{Poly(0), -u}, {u.pow(-1), Poly(0)}};
}
inline PolyMatrix X(Sym v) { return X(Poly(v)); }

inline Poly trace(const PolyMatrix& m) { return m(0, 0) + m(1, 1); }

/// Inverse of a determinant-one 2x2 matrix.
inline PolyMatrix sl2_inverse(const PolyMatrix& m) {
  return PolyMatrix{{m(1, 1), -m(0, 1)}, {-m(1, 0), m(0, 0)}};
}

}  // namespace mat2

inline PolyMatrix evaluate(const Mat2Word& w) {
  PolyMatrix m = PolyMatrix::identity(2);
  for (auto& l : w.letters) {
    switch (l.type) {
      case Letter::R: m = m * mat2::R(); break;
      case Letter::L: m = m * mat2::L(); break;
      case Letter::F: m = m * mat2::F(); break;
      case Letter::X: m = m * mat2::X(l.edge.variable()); break;
    }
  }
  if (w.sign < 0) m = -m;
  return m;
}

namespace detail {

inline std::vector<int> vertices_of(const FatGraph& g, const Edge& e) {
  std::vector<int> vs;
  for (std::size_t v = 0; v < g.vertices.size(); ++v)
    for (auto& x : g.vertices[v].ccw)
      if (x == e) vs.push_back(int(v));
  return vs;
}

// Edge path from pending edge Z_1 to pending edge Z_target, with the
// vertex crossed between consecutive edges.
inline bool find_path(const FatGraph& g, const Edge& cur, int from_vertex, int target,
                      std::vector<Edge>& edges, std::vector<int>& verts) {
  if (cur.type == Edge::Pending && cur.index == target && !edges.empty()) return true;
  for (int v : vertices_of(g, cur)) {
    if (v == from_vertex) continue;
    for (auto& nxt : g.vertices[std::size_t(v)].ccw) {
      if (nxt == cur) continue;
      edges.push_back(nxt);
      verts.push_back(v);
      if (find_path(g, nxt, v, target, edges, verts)) return true;
      edges.pop_back();
      verts.pop_back();
    }
  }
  return false;
}

// Left turn if the exit edge follows the entry edge counterclockwise.
inline Letter::Type turn(const Vertex& v, const Edge& in, const Edge& out) {
  for (int k = 0; k < 3; ++k)
    if (v.ccw[std::size_t(k)] == in) return v.ccw[std::size_t((k + 1) % 3)] == out ? Letter::L : Letter::R;
  throw AlgebraError("turn: edge not incident");
}

}  // namespace detail

/// Word of the loop based on Z_1 that goes around pending vertex i.
inline Mat2Word basis_word(const FatGraph& g, int i) {
  Mat2Word w;
  if (i == 1) {
    w.letters.push_back({Letter::F});
    w.sign = -1;
    return w;
  }
  Edge start{Edge::Pending, 1};
  std::vector<Edge> path{start};
  std::vector<int> verts;
  if (!detail::find_path(g, start, -1, i, path, verts))
    throw AlgebraError("basis_word: no path to Z" + std::to_string(i));
  std::vector<Letter> out;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    out.push_back({Letter::X, path[k]});
    out.push_back({detail::turn(g.vertices[std::size_t(verts[k])], path[k], path[k + 1])});
  }
  out.push_back({Letter::X, path.back()});
  w.letters = out;
  w.letters.push_back({Letter::F});
  w.letters.push_back({Letter::X, path.back()});
  for (std::size_t k = path.size() - 1; k > 0; --k) {
    w.letters.push_back({detail::turn(g.vertices[std::size_t(verts[k - 1])], path[k], path[k - 1])});
    w.letters.push_back({Letter::X, path[k - 1]});
  }
  w.sign = w.count(Letter::L) % 2 ? -1 : 1;
  return w;
}

inline std::vector<Mat2Word> basis_words(int n) {
  FatGraph g = canonical_disc_graph(n);
  std::vector<Mat2Word> ws;
  for (int i = 1; i <= n; ++i) ws.push_back(basis_word(g, i));
  return ws;
}

/// G_{i,j} = -Tr(gamma_i gamma_j) on the canonical graph.
inline Poly geodesic_function(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n || i >= j)
    throw AlgebraError("geodesic_function: need 1 <= i < j <= n");
  FatGraph g = canonical_disc_graph(n);
  return -mat2::trace(evaluate(basis_word(g, i)) * evaluate(basis_word(g, j)));
}

struct IdentityReport {
  bool holds = false;
  Poly lhs, rhs;
};

inline IdentityReport perimeter_identity(int n) {
  auto ws = basis_words(n);
  PolyMatrix prod = PolyMatrix::identity(2);
  for (auto& w : ws) prod = prod * evaluate(w);
  IdentityReport r;
  r.lhs = mat2::trace(mat2::sl2_inverse(prod));
  Poly e(1);
  for (auto v : canonical_disc_graph(n).variables()) e *= Poly(v, 2);
  r.rhs = (n % 2 ? Poly(1) : Poly(-1)) * (e + e.pow(-1));
  r.holds = r.lhs == r.rhs;
  return r;
}

/// Bracket on functions of the shear coordinates: every vertex contributes
/// the cyclic pairs of its incident edges, with d/dX = (u/2) d/du.
inline Poly goldman_bracket(const Poly& f, const Poly& g, const FatGraph& graph) {
  auto vars = graph.variables();
  for (const Poly* p : {&f, &g})
    for (auto v : p->variables())
      if (std::find(vars.begin(), vars.end(), v) == vars.end())
        throw AlgebraError("goldman_bracket: foreign variable " + v.name());
  auto dX = [](const Poly& p, Sym u) { return (Poly(u) * poly_diff(p, u)).scaled(frac(1, 2)); };
  Poly r;
  for (auto& v : graph.vertices)
    for (int k = 0; k < 3; ++k) {
      Sym a = v.ccw[std::size_t(k)].variable(), b = v.ccw[std::size_t((k + 1) % 3)].variable();
      r += dX(f, a) * dX(g, b) - dX(g, a) * dX(f, b);
    }
  return r;
}

inline IdentityReport skein_check(const PolyMatrix& a, const PolyMatrix& b) {
  IdentityReport r;
  r.lhs = mat2::trace(a) * mat2::trace(b);
  r.rhs = mat2::trace(a * b) + mat2::trace(a * mat2::sl2_inverse(b));
  r.holds = r.lhs == r.rhs;
  return r;
}

inline IdentityReport skein_check(const Mat2Word& a, const Mat2Word& b) {
  return skein_check(evaluate(a), evaluate(b));
}

namespace detail {

// Zero test in the quotient by w^4 - c w^2 + 1, where w is a unit.
inline bool zero_mod_quartic(const Poly& p, Sym w, const Poly& c) {
  auto [lo, hi] = p.degree_range(w);
  int shift = lo < 0 ? -lo : 0;
  std::map<int, Poly> coef;
  for (int e = lo; e <= hi; ++e) {
    Poly x = p.coeff(w, e);
    if (!x.is_zero()) coef[e + shift] = x;
  }
  for (int d = hi + shift; d >= 4; --d) {
    auto it = coef.find(d);
    if (it == coef.end()) continue;
    Poly x = it->second;
    coef.erase(it);
    coef[d - 2] += x * c;
    coef[d - 4] -= x;
  }
  for (auto& [d, x] : coef)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace detail

struct ClashReport {
  bool symbolic_holds = false;
  bool numeric_holds = false;
  Poly g_pair;        // G_{n+1,n+2} in the clashed variables
  Poly g_pair_expected;
};

/// Matrix identity behind the clashed hole: two pending edges Z_{n+1},
/// Z_{n+2} joined to Y are replaced by a hole edge Z_h and Y_h. Variables:
/// s1 = e^{Z_{n+1}/2}, s2 = e^{Z_{n+2}/2}, t1 = e^{Y/2}, w = e^{Z_h/4}.
inline ClashReport clashed_hole_coords() {
  using namespace mat2;
  Sym a = Sym::s(1), b = Sym::s(2), y = Sym::t(1), w = Sym::free("w");
  PolyMatrix lhs = X(y) * R() * X(b) * F() * X(b) * R() * X(a) * F() * X(a) * R() * X(y);
  Poly yh = Poly(y) * Poly(a) * Poly(b) * Poly(w, -1);
  PolyMatrix rhs = X(yh) * R() * X(Poly(w, 2)) * R() * X(yh);
  Poly g = Poly(a, 2) * Poly(b, 2) + Poly(a, -2) * Poly(b, -2) + Poly(a, 2) * Poly(b, -2);
  ClashReport r;
  r.symbolic_holds = true;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      if (!detail::zero_mod_quartic(lhs(i, j) - rhs(i, j), w, g)) r.symbolic_holds = false;
  // at Z = Y = 0: G = 3, and e^{Z_h/2} is the larger root of v + 1/v = 3
  {
    auto num = [&](const PolyMatrix& m, double wv) {
      std::array<double, 4> out{};
      for (std::size_t k = 0; k < 4; ++k)
        out[k] = eval_double(m(k / 2, k % 2), [&](Sym v) { return v == w ? wv : 1.0; });
      return out;
    };
    double v = (3.0 + std::sqrt(5.0)) / 2.0;
    auto l = num(lhs, std::sqrt(v)), rr = num(rhs, std::sqrt(v));
    r.numeric_holds = true;
    for (std::size_t k = 0; k < 4; ++k)
      if (std::abs(l[k] - rr[k]) > 1e-12) r.numeric_holds = false;
  }
  r.g_pair = -trace(lhs);
  r.g_pair_expected = g;
  return r;
}

}  // namespace geoalg
