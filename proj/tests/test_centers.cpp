#include "doctest.h"

#include "geoalg/centers.hpp"

using namespace geoalg;

TEST_CASE("A_n generating function, n = 2") {
  auto c = centers_An(2);
  Poly g = Poly(Sym::gen(1, 2, 0));
  Poly s = lam(1) + lam(-1);
  CHECK(c.generating == s * s - g * g);
  REQUIRE(c.coeffs.size() == 1);
  CHECK(c.coeffs[0] == Poly(2) - g * g);
}

TEST_CASE("A_n centers are central and braid invariant") {
  for (int n : {3, 4}) {
    auto c = centers_An(n);
    CHECK(c.coeffs.size() == std::size_t(n / 2));
    auto r = centrality(c);
    CHECK(r.pairs == c.coeffs.size() * std::size_t(n * (n - 1) / 2));
    CHECK(r.failures == 0);
    CHECK(braid_invariance(c).all());
  }
  // the product b23 b12 also fixes the generating function
  auto c = centers_An(3);
  auto act = [](const BraidGen& b, const PolyMatrix& m) { return act_An(b, m); };
  PolyMatrix img = act_word(parse_braid_word("b23 b12", 3), an_matrix(3), act);
  CHECK(mat_det(lam(1) * img + lam(-1) * img.transpose()) == c.generating);
}

TEST_CASE("level-p determinant shape") {
  for (auto [n, p] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    auto c = centers_Dnp(n, p);
    auto [lo, hi] = c.generating.degree_range(Sym::lam());
    CHECK(hi == 0);
    CHECK(lo == -n * p);
    CHECK(c.generating.coeff(Sym::lam(), 0) == Poly(1));
    CHECK(c.generating.coeff(Sym::lam(), -n * p) == Poly(1));
    for (int k = 0; k <= n * p; ++k)
      CHECK(c.generating.coeff(Sym::lam(), -k) == c.generating.coeff(Sym::lam(), k - n * p));
    CHECK(c.coeffs.size() == std::size_t(n * p / 2));
  }
}

TEST_CASE("level-p centers are central") {
  for (auto [n, p] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    auto c = centers_Dnp(n, p);
    auto r = centrality(c);
    CHECK(r.pairs > 0);
    CHECK_MESSAGE(r.failures == 0, n, ",", p);
  }
}

TEST_CASE("level-p braid images keep the shape and fix the centers") {
  for (auto [n, p] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
    for (int i = 1; i < n; ++i) CHECK(dnp_image_shape(BraidGen::adjacent(i), n, p));
    CHECK(dnp_image_shape(BraidGen::wrap_gen(), n, p));
    auto rep = braid_invariance(centers_Dnp(n, p));
    for (auto& [name, ok] : rep.cases) CHECK_MESSAGE(ok, name);
  }
}

TEST_CASE("independence counts") {
  std::uint64_t seed = 20261016;
  for (auto [n, p, want] : {std::tuple{2, 2, 2}, std::tuple{3, 2, 3}, std::tuple{2, 3, 3}}) {
    auto rep = independence(centers_Dnp(n, p), seed);
    CHECK(rep.expected == std::size_t(want));
    for (auto r : rep.ranks) CHECK(r == std::size_t(want));
    CHECK(rep.all_ones_rank == std::size_t(want));
    CHECK(rep.full_rank == std::size_t(want));
    CHECK(rep.ok());
  }
  for (int n : {3, 4}) CHECK(independence(centers_An(n), seed).ok());
  for (int n : {2, 3}) {
    auto rep = independence(centers_Dn(n), seed);
    CHECK(rep.ok());
    CHECK(rep.full_rank == std::size_t(n));
  }
}

TEST_CASE("D_n determinant factorizes") {
  for (int n : {2, 3, 4}) {
    auto c = centers_Dn(n);
    CHECK(c.factorization_ok);
    CHECK(c.coeffs.size() == std::size_t(n));
  }
  // the opposite orientation of Rhat gives a determinant whose extracted
  // coefficients are not braid invariant
  auto flipped = centers_Dn(3, 1);
  CHECK_FALSE(braid_invariance(flipped).all());
}

TEST_CASE("D_n determinant at the diagonal point") {
  for (int n : {2, 3, 4}) {
    Poly d = poly_subst(centers_Dn(n).generating, dn_offdiagonal_zero(n));
    CHECK(d == dn_diagonal_determinant(n));
    CHECK_FALSE(d == dn_diagonal_determinant_literal(n));
  }
}

TEST_CASE("induced bracket on the hat generators") {
  DnHatAlgebra alg(2);
  auto g = [](int i, int j) { return Poly(Sym::ghat(i, j)); };
  CHECK(alg.bracket(g(1, 2), g(2, 1)) == Poly(2) * g(2, 2) * g(2, 2) - Poly(2) * g(1, 1) * g(1, 1));
  CHECK(alg.bracket(g(1, 2), g(1, 1)) == Poly(2) * g(2, 2) - g(1, 1) * g(1, 2));
  CHECK(alg.bracket(g(1, 2), g(2, 2)) == -Poly(2) * g(1, 1) + g(1, 2) * g(2, 2));
  CHECK(alg.bracket(g(1, 1), g(2, 2)) == g(1, 2) - g(2, 1));
  // antisymmetry and Jacobi on all generator triples, n = 3
  DnHatAlgebra a3(3);
  auto vars = a3.generators();
  for (Sym x : vars)
    for (Sym y : vars) CHECK(a3.generator_bracket(x, y) == -a3.generator_bracket(y, x));
  std::size_t bad = 0;
  for (Sym x : vars)
    for (Sym y : vars)
      for (Sym z : vars) {
        Poly X(x), Y(y), Z(z);
        Poly j = a3.bracket(X, a3.bracket(Y, Z)) + a3.bracket(Y, a3.bracket(Z, X)) + a3.bracket(Z, a3.bracket(X, Y));
        if (!j.is_zero()) ++bad;
      }
  CHECK(bad == 0);
}

TEST_CASE("D_n centers are central") {
  for (int n : {2, 3}) {
    auto r = centrality(centers_Dn(n));
    CHECK(r.pairs == std::size_t(n * n * n));
    CHECK(r.failures == 0);
  }
}

TEST_CASE("D_n centers are braid invariant") {
  for (int n : {2, 3, 4}) {
    auto rep = braid_invariance(centers_Dn(n));
    CHECK(rep.cases.size() == std::size_t(2 * n));
    for (auto& [name, ok] : rep.cases) CHECK_MESSAGE(ok, name);
  }
}

TEST_CASE("D_2 Casimirs") {
  auto printed = printed_casimirs(2);
  auto cmp = compare_casimirs(2);
  for (auto& r : cmp) {
    CHECK(r.central);
    CHECK(r.braid_invariant);
  }
  // the quadratic one is affine in the top coefficient
  REQUIRE(cmp[1].affine);
  CHECK(cmp[1].affine_with == 1);
  CHECK(cmp[1].affine->scale == -1);
  CHECK(cmp[1].affine->shift == -1);
  // the linear-in-off-diagonal one enters squared
  CHECK_FALSE(cmp[0].affine);
  auto c = centers_Dn(2);
  CHECK(c.coeffs[0] == printed[0] * printed[0] - printed[1] - Poly(2));
}

TEST_CASE("D_3 Casimirs") {
  auto cmp = compare_casimirs(3);
  CHECK(cmp[1].central);
  CHECK(cmp[1].braid_invariant);
  REQUIRE(cmp[1].affine);
  CHECK(cmp[1].affine_with == 2);
  CHECK(cmp[1].affine->scale == 1);
  // the printed cubic and quartic do not commute with the bracket
  CHECK_FALSE(cmp[0].central);
  CHECK_FALSE(cmp[0].braid_invariant);
  CHECK_FALSE(cmp[2].central);
  CHECK_FALSE(cmp[2].braid_invariant);

  auto fixed = dn3_casimirs();
  auto c = centers_Dn(3);
  DnHatAlgebra alg(3);
  for (auto& f : fixed) {
    for (Sym g : alg.generators()) CHECK(alg.bracket(f, Poly(g)).is_zero());
    CHECK(braid_invariance(CenterFlavor::Dn, 3, 0, {f}).all());
  }
  CHECK(c.coeffs[0] == fixed[0] * fixed[0] - fixed[2] + Poly(6));
  CHECK(c.coeffs[1] == fixed[2] - fixed[1] - Poly(6));
  CHECK(c.coeffs[2] == fixed[1] - Poly(1));
  for (auto& x : c.coeffs) {
    auto e = express_in(x, fixed);
    REQUIRE(e);
    CHECK(evaluate_expression(*e, fixed) == x);
  }
}

TEST_CASE("leading-order brackets near the diagonal point") {
  std::vector<Rational> diag{Rational(2), Rational(3), frac(-5, 7)};
  CHECK(rank(vicinity_matrix(diag)) == 6);
  DnHatAlgebra alg(3);
  QMatrix induced = induced_offdiagonal_matrix(alg, diag), pairs = vicinity_matrix(diag);
  CHECK(rank(induced) == 6);
  // the pair entries agree; for n = 3 some brackets between different pairs
  // stay of order one at the point
  bool pair_entries = true, cross_terms = false;
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      if (pairs(a, b) != 0) pair_entries = pair_entries && induced(a, b) == pairs(a, b);
      else cross_terms = cross_terms || induced(a, b) != 0;
    }
  CHECK(pair_entries);
  CHECK(cross_terms);
  CHECK(induced_offdiagonal_matrix(DnHatAlgebra(2), {Rational(2), Rational(3)}) ==
        vicinity_matrix({Rational(2), Rational(3)}));
  Bindings at = dn_offdiagonal_zero(3);
  for (int i = 1; i <= 3; ++i) at[Sym::ghat(i, i)] = Poly(diag[std::size_t(i - 1)]);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      Poly a = poly_subst(alg.bracket(Poly(Sym::ghat(i, j)), Poly(Sym::ghat(i, i))), at);
      Poly b = poly_subst(alg.bracket(Poly(Sym::ghat(i, j)), Poly(Sym::ghat(j, j))), at);
      CHECK(a == Poly(2 * diag[std::size_t(j - 1)]));
      CHECK(b == Poly(-2 * diag[std::size_t(i - 1)]));
    }
  // coinciding squares make the pair degenerate
  CHECK(rank(vicinity_matrix({Rational(2), Rational(-2), Rational(1)})) == 4);
  // generic leaves have dimension n(n-1)
  RationalSampler rs(7);
  for (int n : {2, 3}) {
    DnHatAlgebra a(n);
    CHECK(rank(poisson_matrix(a, rs.point(a.generators()))) == std::size_t(n * (n - 1)));
  }
}

TEST_CASE("helpers") {
  auto q = divide_lam_minus_one(lam(2) - Poly(1));
  REQUIRE(q);
  CHECK(*q == lam(1) + Poly(1));
  CHECK_FALSE(divide_lam_minus_one(lam(2) + Poly(1)));
  CHECK(total_degree(parse_poly("Ghat[1,1]^2*Ghat[1,2] + 3")) == 3);
  auto m = affine_match(parse_poly("2*Ghat[1,2] + 5"), parse_poly("Ghat[1,2]"));
  REQUIRE(m);
  CHECK(m->scale == 2);
  CHECK(m->shift == 5);
  CHECK_FALSE(affine_match(parse_poly("Ghat[1,2]^2"), parse_poly("Ghat[1,2]")));
  RationalSampler a(3), b(3);
  for (int t = 0; t < 20; ++t) {
    Rational x = a.next();
    CHECK(x == b.next());
    CHECK(x != 0);
    CHECK(abs(x.get_num()) <= 97);
    CHECK(x.get_den() <= 97);
  }
}
