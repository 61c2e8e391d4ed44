#include "doctest.h"

#include <random>

#include "geoalg/matrix.hpp"

using namespace geoalg;

namespace {

Poly P(const char* s) { return parse_poly(s); }

Poly random_poly(std::mt19937& rng, int terms) {
  std::uniform_int_distribution<int> coef(-5, 5), expo(-2, 2), pick(0, 3);
  Sym vars[] = {Sym::s(1), Sym::s(2), Sym::t(1), Sym::lam()};
  Poly r;
  for (int t = 0; t < terms; ++t) {
    Poly m(frac(coef(rng), 1 + pick(rng)));
    for (auto v : vars) m *= Poly(v, expo(rng));
    r += m;
  }
  return r;
}

PolyMatrix random_matrix(std::mt19937& rng, std::size_t n) {
  PolyMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = random_poly(rng, 2);
  return m;
}

}  // namespace

TEST_CASE("poly_mul examples") {
  CHECK(P("(s1 + s1^-1)*(s1 - s1^-1)") == P("s1^2 - s1^-2"));
  CHECK(P("x") * Poly(0) == Poly(0));
  CHECK(P("1/2*lam + 3") * Poly(2) == P("lam + 6"));
}

TEST_CASE("poly_diff examples") {
  CHECK(poly_diff(P("s1^2 + s1^-2"), Sym::s(1)) == P("2*s1 - 2*s1^-3"));
  CHECK(poly_diff(P("t1^3"), Sym::s(1)) == Poly(0));
  CHECK(poly_diff(P("s1*t1"), Sym::s(1)) == P("t1"));
  CHECK_THROWS_AS(poly_diff(P("G[1,2,0]"), Sym::gen(1, 2, 0)), AlgebraError);
}

TEST_CASE("poly_subst examples") {
  CHECK(poly_subst(P("s1^2 + s1^-2"), {{Sym::s(1), Poly(1)}}) == Poly(2));
  CHECK(poly_subst(P("lam*h"), {{Sym::h(), Poly(1)}}) == P("lam"));
  CHECK_THROWS_AS(poly_subst(P("s1^-1"), {{Sym::s(1), Poly(0)}}), AlgebraError);
  CHECK_THROWS_AS(poly_subst(P("s1^-1"), {{Sym::s(1), P("1 + t1")}}), AlgebraError);
  // simultaneous, not sequential
  CHECK(poly_subst(P("s1 + 2*s2"), {{Sym::s(1), P("s2")}, {Sym::s(2), P("s1")}}) == P("s2 + 2*s1"));
}

TEST_CASE("printing is canonical") {
  CHECK(to_string(P("-2*G[1,4,0]*G[2,3,0] + 2*G[3,4,0]*G[1,2,0]")) ==
        "2*G[1,2,0]*G[3,4,0] - 2*G[1,4,0]*G[2,3,0]");
  CHECK(to_string(P("s1^-2 + s1^2")) == "s1^2 + s1^-2");
  CHECK(to_string(P("1/2 - 1/2")) == "0");
  CHECK(to_string(P("-lam + 3/4")) == "-lam + 3/4");
  CHECK_THROWS_AS(P("(s1"), AlgebraError);
  CHECK_THROWS_AS(P("s1 +"), AlgebraError);
}

TEST_CASE("parse and print round trip") {
  std::mt19937 rng(7);
  for (int i = 0; i < 50; ++i) {
    Poly a = random_poly(rng, 5);
    CHECK(parse_poly(to_string(a)) == a);
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  for (int i = 0; i < 40; ++i) {
    Poly a = random_poly(rng, 4), b = random_poly(rng, 4), c = random_poly(rng, 3);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a - a).is_zero());
  }
}

TEST_CASE("Leibniz rule") {
  std::mt19937 rng(13);
  for (int i = 0; i < 40; ++i) {
    Poly a = random_poly(rng, 4), b = random_poly(rng, 4);
    for (auto v : {Sym::s(1), Sym::t(1), Sym::lam()})
      CHECK(poly_diff(a * b, v) == poly_diff(a, v) * b + a * poly_diff(b, v));
  }
}

TEST_CASE("mat_mul and mat_det examples") {
  PolyMatrix a{{P("s1"), P("t1")}, {P("lam"), Poly(2)}};
  CHECK(mat_mul(PolyMatrix::identity(2), a) == a);
  PolyMatrix d{{lam(), Poly(0)}, {Poly(0), lam()}}, di{{lam(-1), Poly(0)}, {Poly(0), lam(-1)}};
  CHECK(mat_mul(d, di) == PolyMatrix::identity(2));
  PolyMatrix x{{Poly(0), -P("s")}, {P("s^-1"), Poly(0)}};
  CHECK(mat_mul(x, x) == -PolyMatrix::identity(2));
  CHECK_THROWS_AS(mat_mul(PolyMatrix::identity(2), PolyMatrix::identity(3)), AlgebraError);

  for (std::size_t n = 1; n <= 5; ++n) CHECK(mat_det(PolyMatrix::identity(n)) == Poly(1));
  CHECK(mat_det(PolyMatrix{{Poly(1), P("G[1,2,0]")}, {Poly(0), Poly(1)}}) == Poly(1));

  // det(lam A + lam^-1 A^T), A = [[1,g],[0,1]]: expanded by hand,
  // (lam + lam^-1)^2 - (g lam)(g lam^-1)
  Poly g = P("g");
  PolyMatrix A{{Poly(1), g}, {Poly(0), Poly(1)}};
  PolyMatrix M = lam() * A + lam(-1) * A.transpose();
  Poly by_hand = (lam() + lam(-1)) * (lam() + lam(-1)) - g * g;
  CHECK(mat_det(M) == by_hand);
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937 rng(17);
  for (std::size_t n : {2u, 3u}) {
    for (int i = 0; i < 5; ++i) {
      PolyMatrix a = random_matrix(rng, n), b = random_matrix(rng, n);
      CHECK(mat_det(a * b) == mat_det(a) * mat_det(b));
    }
  }
}

TEST_CASE("rational inverse and rank") {
  QMatrix a{{2, 1, 0}, {1, 3, 1}, {0, 1, 4}};
  CHECK(a * inverse(a) == QMatrix::identity(3));
  CHECK(rank(a) == 3);
  QMatrix b{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
  CHECK(rank(b) == 2);
  CHECK(det(b) == 0);
}
