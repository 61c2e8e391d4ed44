#include "doctest.h"

#include <complex>

#include "geoalg/frobenius.hpp"

using namespace geoalg;

namespace {

QMatrix q(const PolyMatrix& m) { return to_rational(m); }

}  // namespace

TEST_CASE("Stokes matrix shape") {
  CHECK_THROWS_AS(StokesMatrix(PolyMatrix{{1, 2}, {3, 1}}), AlgebraError);
  CHECK_THROWS_AS(StokesMatrix(PolyMatrix{{2, 0}, {0, 1}}), AlgebraError);
  CHECK_THROWS_AS(StokesMatrix::from_upper(3, {Poly(1)}), AlgebraError);
  auto s = StokesMatrix::symbolic(3);
  CHECK(s.gram()(0, 0) == Poly(2));
  CHECK(s.gram()(2, 1) == G(2, 3, 0));
  CHECK_FALSE(s.is_rational());
}

TEST_CASE("monodromy from a 2x2 Stokes matrix") {
  Poly s(Sym::free("s"));
  auto S = StokesMatrix::from_upper(2, {s});
  CHECK(monodromy_from_stokes(S, 1) == (PolyMatrix{{Poly(-1), -s}, {Poly(0), Poly(1)}}));
  CHECK(monodromy_from_stokes(S, 2) == (PolyMatrix{{Poly(1), Poly(0)}, {-s, Poly(-1)}}));
  CHECK_THROWS_AS(monodromy_from_stokes(S, 3), AlgebraError);
}

TEST_CASE("each monodromy is an involution") {
  RationalSampler rs(11);
  for (int n = 2; n <= 5; ++n) {
    auto S = StokesMatrix::random(n, rs);
    for (int k = 1; k <= n; ++k) {
      PolyMatrix m = monodromy_from_stokes(S, k);
      CHECK(m * m == PolyMatrix::identity(std::size_t(n)));
      CHECK(det(q(m)) == -1);
    }
  }
  auto S = StokesMatrix::symbolic(4);
  for (int k = 1; k <= 4; ++k) {
    PolyMatrix m = monodromy_from_stokes(S, k);
    CHECK(m * m == PolyMatrix::identity(4));
  }
}

TEST_CASE("product of all monodromies") {
  RationalSampler rs(12);
  for (int trial = 0; trial < 10; ++trial) {
    auto S = StokesMatrix::random(3, rs);
    CHECK(S.S() * monodromy_product(S, 1, 3) == -S.S().transpose());
  }
  for (int n = 2; n <= 4; ++n) {
    auto S = StokesMatrix::symbolic(n);
    CHECK(S.S() * monodromy_product(S, 1, n) == -S.S().transpose());
  }
}

TEST_CASE("clashed block structure") {
  RationalSampler rs(13);
  for (int trial = 0; trial < 10; ++trial) {
    auto S = StokesMatrix::random(3, rs);
    auto c = clash_block(S, 2);
    CHECK(c.identity_block);
    CHECK(c.zero_block);
    CHECK(c.lower_right_ok);
    CHECK(c.intertwining);
    // the oracle: M_h^{-T} by exact inversion
    QMatrix g = q(S.gram()), mh = q(c.Mh);
    CHECK(g * mh == inverse(mh).transpose() * g);
  }
  for (int n = 3; n <= 5; ++n) {
    auto S = StokesMatrix::symbolic(n);
    for (int nt = 1; nt <= n; ++nt) CHECK_MESSAGE(clash_block(S, nt).holds(), "n=", n, " ntilde=", nt);
  }
  auto S = StokesMatrix::random(4, rs);
  auto whole = clash_block(S, 1);
  CHECK(whole.Mh == -(unipotent_inverse(S.S()) * S.S().transpose()));
  CHECK(whole.B.rows() == 4);
  CHECK(whole.B.cols() == 0);
  CHECK_THROWS_AS(clash_block(S, 0), AlgebraError);
  CHECK_THROWS_AS(clash_block(S, 5), AlgebraError);
}

TEST_CASE("the lower block involves only the trailing entries") {
  auto S = StokesMatrix::symbolic(5);
  auto c = clash_block(S, 3);
  for (std::size_t i = 0; i < c.lower_right.rows(); ++i)
    for (std::size_t j = 0; j < c.lower_right.cols(); ++j)
      for (Sym v : c.lower_right(i, j).variables()) {
        CHECK(v.a() >= 3);
        CHECK(v.b() >= 3);
      }
}

TEST_CASE("unipotent inverse") {
  auto S = StokesMatrix::symbolic(4);
  CHECK(S.S() * unipotent_inverse(S.S()) == PolyMatrix::identity(4));
  RationalSampler rs(3);
  auto R = StokesMatrix::random(5, rs);
  CHECK(q(unipotent_inverse(R.S())) == inverse(R.rational()));
}

TEST_CASE("G^{(k)} family") {
  RationalSampler rs(14);
  for (int trial = 0; trial < 5; ++trial) {
    auto S = StokesMatrix::random(3, rs);
    PolyMatrix g0 = gk_family(S, 2, 0);
    CHECK(g0 == S.gram());
    CHECK(g0 == g0.transpose());
    for (std::size_t i = 0; i < 3; ++i) CHECK(g0(i, i) == Poly(2));
    for (int k = 1; k <= 3; ++k) CHECK(gk_family(S, 2, -k) == gk_family(S, 2, k).transpose());
    // negative levels from the exact inverse of M_h
    QMatrix mh = q(clash_block(S, 2).Mh);
    CHECK(q(gk_family(S, 2, -1)) == q(S.gram()) * inverse(mh));
  }
  auto S = StokesMatrix::symbolic(3);
  CHECK(gk_family(S, 2, -1) == gk_family(S, 2, 1).transpose());
  CHECK_THROWS_AS(gk_family(S, 4, 1), AlgebraError);
}

TEST_CASE("invariant trace identity") {
  RationalSampler rs(15);
  for (int trial = 0; trial < 5; ++trial) {
    auto S = StokesMatrix::random(5, rs);
    for (int i = 1; i <= 3; ++i)
      for (int j = 1; j <= 3; ++j)
        for (int k = -2; k <= 2; ++k) CHECK(trace_identity_defect(S, 4, i, j, k) == 0);
  }
}

TEST_CASE("bracket realization: measured normalization") {
  RationalSampler rs(16);
  int pairs = 0;
  for (int trial = 0; trial < 10; ++trial) {
    auto S4 = StokesMatrix::random(4, rs);
    auto r4 = bracket_realization(S4, 3, 2, 0.25);
    CHECK(r4.rank == 2);
    CHECK(r4.ok(1e-9));
    auto S5 = StokesMatrix::random(5, rs);
    auto r5 = bracket_realization(S5, 4, 1, 0.25);
    CHECK(r5.rank == 3);
    CHECK(r5.ok(1e-9));
    REQUIRE(r5.fitted);
    CHECK(*r5.fitted == doctest::Approx(0.25).epsilon(1e-9));
    pairs += int(r5.cases.size());
    // the printed factor does not fit
    CHECK_FALSE(bracket_realization(S5, 4, 1, -0.5).ok(1e-9));
  }
  CHECK(pairs > 500);
}

TEST_CASE("bracket realization: a single orbifold point is abelian") {
  RationalSampler rs(17);
  auto S = StokesMatrix::random(3, rs);
  auto r = bracket_realization(S, 2, 2, -0.5);
  CHECK(r.rank == 1);
  CHECK(r.cases.size() == 1);
  for (auto& c : r.cases) {
    CHECK(c.rhs == 0);
    CHECK(std::abs(c.lhs) < 1e-9);
  }
  CHECK_FALSE(r.fitted);
  CHECK(bracket_realization(S, 2, 1, -0.5).cases.empty());
  CHECK_THROWS_AS(bracket_realization(StokesMatrix::symbolic(3), 2, 1, 0.25), AlgebraError);
}

TEST_CASE("level-p condition: all-ones trailing block") {
  RationalSampler rs(18);
  Poly e(eta());
  for (int m = 2; m <= 4; ++m)
    for (int nt : {1, 2, 3}) {
      auto S = all_ones_trailing(nt, m, rs);
      auto r = level_p_condition(S, nt, m + 1);
      CHECK(r.periodic);
      CHECK(r.nondegenerate);
      REQUIRE(r.full);
      CHECK(*r.full);
      Poly cyc;
      for (int x = 0; x <= m; ++x) cyc += e.pow(x);
      CHECK(r.charpoly == cyc);
      CHECK_FALSE(level_p_condition(S, nt, m).periodic);
    }
}

TEST_CASE("level-p condition: p = 3 eigenvalues") {
  RationalSampler rs(19);
  auto r = level_p_condition(all_ones_trailing(1, 2, rs), 1, 3);
  // eta^2 + eta + 1 vanishes at the primitive cube roots of unity
  std::complex<double> w = std::polar(1.0, 2 * M_PI / 3);
  for (auto z : {w, std::conj(w)}) {
    std::complex<double> v = 0;
    for (auto& t : r.charpoly.terms()) {
      int d = t.mono.empty() ? 0 : t.mono[0].second;
      v += t.coef.get_d() * std::pow(z, d);
    }
    CHECK(std::abs(v) < 1e-12);
  }
}

TEST_CASE("level-p condition: degenerate form") {
  // S~ = [[1, 2], [0, 1]] gives S~ + S~^T = [[2, 2], [2, 2]]
  auto S = StokesMatrix::from_upper(2, {Poly(2)});
  auto r = level_p_condition(S, 1, 2);
  CHECK_FALSE(r.nondegenerate);
  CHECK(r.message == "nondegeneracy failed");
  CHECK_FALSE(r.full);
  auto T = StokesMatrix::from_upper(2, {Poly(3)});
  auto t = level_p_condition(T, 1, 5);
  CHECK(t.nondegenerate);
  CHECK_FALSE(t.periodic);
  CHECK_FALSE(t.full);
}

TEST_CASE("quantum cohomology points") {
  CHECK(quantum_point(QuantumPoint::A3) == binomial_stokes(3));
  CHECK(quantum_point(QuantumPoint::A4) == binomial_stokes(4));
  CHECK(binomial_stokes(3) == (QMatrix{{1, 3, 3}, {0, 1, 3}, {0, 0, 1}}));
  CHECK(binomial_stokes(4) == (QMatrix{{1, 4, 6, 4}, {0, 1, 4, 6}, {0, 0, 1, 4}, {0, 0, 0, 1}}));
  auto g = teich_stokes(3);
  CHECK(g.S()(0, 1) == geodesic_function(3, 1, 2));
  CHECK(g.S()(1, 2) == geodesic_function(3, 2, 3));
}

TEST_CASE("fourth-root folding") {
  Sym r = Sym::free("r");
  Poly x(r);
  CHECK(fold_fourth_root(x.pow(4) + x.pow(-4), r, 2) == Rational(5, 2));
  CHECK_FALSE(fold_fourth_root(x.pow(2), r, 2));
  CHECK_FALSE(fold_fourth_root(Poly(Sym::free("y")), r, 2));
}

TEST_CASE("braid orbit of the A_3 point stays above two") {
  auto rep = braid_orbit_monitor(quantum_point(QuantumPoint::A3), 10, 8, 20);
  CHECK(rep.words == 10);
  CHECK(rep.names.size() == 10);
  CHECK(rep.min_abs == 3);
  CHECK(rep.all_above_two());
  auto small = braid_orbit_monitor(QMatrix{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}, 3, 4, 1);
  CHECK_FALSE(small.all_above_two());
}
