#pragma once

#include <string>

#include "geoalg/poly.hpp"

namespace geoalg {

/// Index (i, j, k) of G^{(k)}_{i,j}.
struct GenIndex {
  int i = 0, j = 0, k = 0;
  friend bool operator==(const GenIndex& a, const GenIndex& b) {
    return a.i == b.i && a.j == b.j && a.k == b.k;
  }
  friend bool operator<(const GenIndex& a, const GenIndex& b) {
    if (a.i != b.i) return a.i < b.i;
    if (a.j != b.j) return a.j < b.j;
    return a.k < b.k;
  }
  Sym sym() const { return Sym::gen(i, j, k); }
  std::string to_string() const {
    return "G[" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "]";
  }
  static GenIndex of(Sym s) { return {s.a(), s.b(), s.c()}; }
};

/// Canonical representative: G^{(k)}_{i,j} = G^{(-k)}_{j,i}, level zero
/// stored with i <= j. Returns false for G[i,i,0], which is the constant 2.
inline bool canonicalize(GenIndex& g) {
  if (g.k < 0) g = {g.j, g.i, -g.k};
  if (g.k == 0) {
    if (g.i == g.j) return false;
    if (g.i > g.j) std::swap(g.i, g.j);
  }
  return true;
}

/// G^{(k)}_{i,j} as a polynomial in canonical generators.
inline Poly G(int i, int j, int k) {
  GenIndex g{i, j, k};
  if (!canonicalize(g)) return Poly(2);
  return Poly(g.sym());
}

}  // namespace geoalg
