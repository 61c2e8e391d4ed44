#include "doctest.h"

#include <random>

#include "geoalg/dn_algebra.hpp"
#include "geoalg/ks.hpp"

using namespace geoalg;
using namespace geoalg::ks;

namespace {

Word M(std::initializer_list<int> idx) {
  Word w;
  for (int i : idx) w.push_back({i, 1});
  return w;
}

Poly g0(int i, int j) { return G(i, j, 0); }

// Traceless SL(2) points given explicitly by entries.
std::map<int, QMat2> rational_point(std::mt19937& rng, int count) {
  std::map<int, QMat2> pt;
  for (int a = 1; a <= count; ++a) pt[a] = random_rational_sl2_traceless(rng);
  return pt;
}

Rational eval_gens(const Poly& p, const std::map<int, QMat2>& pt, const Word& h) {
  return eval_rational(p, [&](Sym v) -> Rational {
    if (v.kind() != Kind::Gen) throw AlgebraError("unexpected symbol");
    return generator_rational(v.a(), v.b(), v.c(), pt, h);
  });
}

}  // namespace

TEST_CASE("trace words normalize") {
  Word w{{1, 1}, {1, 1}};
  CHECK(normalize(w) == -1);
  CHECK(w.empty());
  Word v{{2, 1}, {kH, 2}, {1, -1}, {kH, -2}};
  int s = normalize(v);
  CHECK(s == -1);
  CHECK(v.front().sym == 1);
  Word cyc{{kH, 1}, {1, 1}, {kH, -1}};
  normalize(cyc);
  CHECK(cyc.size() == 1);
  CHECK(TraceExpr::trace(M({3})).is_zero());
}

TEST_CASE("skein_reduce examples") {
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      if (i == j) continue;
      CHECK(skein_reduce(TraceExpr::trace(M({i, j}))) == -g0(i, j));
    }
  CHECK(skein_reduce(TraceExpr::trace(M({2, 2}))) == Poly(-2));
  CHECK(skein_reduce(TraceExpr::trace({{kH, 3}})) == Poly(Sym::trh(3)));
  CHECK(skein_reduce(TraceExpr::trace({{kH, -3}})) == Poly(Sym::trh(3)));

  // generator with the hole realized as a product of two letters
  const int n = 3, i = 1, j = 2;
  auto cubic = [&](int a, int b) {
    return g0(a, n + 2) * g0(n + 1, n + 2) * g0(b, n + 1) - g0(a, n + 1) * g0(b, n + 1) -
           g0(a, n + 2) * g0(b, n + 2) + g0(a, b);
  };
  Word w{{i, 1}, {n + 1, 1}, {n + 2, 1}, {j, 1}, {n + 2, -1}, {n + 1, -1}};
  Word mirror{{j, 1}, {n + 1, 1}, {n + 2, 1}, {i, 1}, {n + 2, -1}, {n + 1, -1}};
  // the printed cubic expansion is the mirrored generator G^{(1)}_{j,i}
  CHECK(-skein_reduce(TraceExpr::trace(mirror)) == cubic(i, j));
  CHECK(-skein_reduce(TraceExpr::trace(w)) == cubic(j, i));
  std::mt19937 rng(19);
  auto pt = rational_point(rng, n + 2);
  Rational direct = -trace_rational(w, pt);
  CHECK(eval_gens(cubic(j, i), pt, {}) == direct);
  CHECK(eval_gens(cubic(i, j), pt, {}) != direct);
}

TEST_CASE("skein_reduce reports irreducible words") {
  CHECK_THROWS_AS(skein_reduce(TraceExpr::trace(M({1, 2, 3}))), IrreducibleWord);
  CHECK_THROWS_AS(skein_reduce(TraceExpr::trace({{1, 1}, {kH, 1}, {2, 1}})), IrreducibleWord);
  std::string why;
  CHECK_FALSE(try_skein_reduce(TraceExpr::trace(M({1, 2, 3})), &why).has_value());
  CHECK(why.find("irreducible") != std::string::npos);
}

TEST_CASE("skein_reduce is independent of the rewrite order") {
  std::mt19937 rng(21);
  std::vector<Word> corpus = {M({1, 2, 3, 4}),
                              M({1, 3, 2, 4, 1, 2}),
                              generator_word(1, 2, 2),
                              generator_word(2, 1, 1, M({4, 5})),
                              {{1, 1}, {kH, 1}, {2, 1}, {3, 1}, {kH, -1}, {2, 1}}};
  for (auto& w : corpus) {
    TraceExpr e = TraceExpr::trace(w);
    Poly ref = skein_reduce(e);
    for (int trial = 0; trial < 10; ++trial) CHECK(skein_reduce(e, &rng) == ref);
  }
}

TEST_CASE("skein reduction agrees with exact matrix traces") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    auto pt = rational_point(rng, 6);
    for (auto& w : {M({1, 2, 3, 4}), M({1, 3, 2, 5, 1, 4}), generator_word(1, 3, 1, M({4, 5})),
                    generator_word(2, 2, 2, M({4, 5, 6}))}) {
      Poly red = skein_reduce(TraceExpr::trace(w));
      CHECK(eval_gens(red, pt, {}) == trace_rational(w, pt));
    }
  }
}

TEST_CASE("ks_bracket_symbolic examples") {
  Poly b = skein_reduce(ks_bracket_symbolic(M({1, 3}), M({2, 4}), 4));
  CHECK(b == Poly(2) * (g0(1, 2) * g0(3, 4) - g0(1, 4) * g0(3, 2)));
  CHECK(ks_bracket_symbolic(M({1, 2}), M({3, 4}), 4).is_zero());
  CHECK_THROWS_AS(ks_bracket_symbolic(M({1, 5}), M({2, 3}), 4), AlgebraError);

  for (int k = 1; k <= 3; ++k)
    for (auto& w : {M({1, 2}), generator_word(1, 3, 2), generator_word(3, 2, 1), Word{{kH, 1}, {2, 1}, {kH, -2}, {1, 1}}}) {
      TraceExpr br = ks_bracket_symbolic({{kH, k}}, w, 3);
      CHECK(skein_reduce(br).is_zero());
    }
}

TEST_CASE("ks bracket is antisymmetric and Leibniz") {
  std::vector<Word> ws = {M({1, 2}), M({1, 3}), M({2, 3}), generator_word(1, 2, 1), generator_word(3, 1, 2)};
  for (auto& a : ws)
    for (auto& b : ws) {
      TraceExpr ab = ks_bracket_symbolic(a, b, 3), ba = ks_bracket_symbolic(b, a, 3);
      CHECK(skein_reduce(ab) == -skein_reduce(ba));
    }
  TraceExpr f = TraceExpr::trace(ws[0]), g = TraceExpr::trace(ws[1]), h = TraceExpr::trace(ws[3]);
  Poly lhs = skein_reduce(ks_bracket_symbolic(f, g * h, 3));
  Poly rhs = skein_reduce(ks_bracket_symbolic(f, g, 3)) * skein_reduce(h) +
             skein_reduce(g) * skein_reduce(ks_bracket_symbolic(f, h, 3));
  CHECK(lhs == rhs);
}

TEST_CASE("ks reproduces the level-zero relations for n = 4") {
  const int n = 4;
  auto br = [&](int a, int b, int c, int d) {
    return skein_reduce(ks_bracket_symbolic(generator_trace(a, b, 0), generator_trace(c, d, 0), n));
  };
  for (int i = 1; i <= n; ++i)
    for (int k = i + 1; k <= n; ++k)
      for (int j = 1; j <= n; ++j)
        for (int l = j + 1; l <= n; ++l) {
          Poly lhs = br(i, k, j, l), rhs;
          if (i < k && k < j && j < l) rhs = Poly(0);
          else if (i < j && j < l && l < k) rhs = Poly(0);
          else if (i < j && j < k && k < l) rhs = Poly(2) * (g0(i, j) * g0(k, l) - g0(i, l) * g0(k, j));
          else if (k == j) rhs = g0(i, k) * g0(k, l) - Poly(2) * g0(i, l);
          else if (k == l && i < j) rhs = -(g0(i, k) * g0(j, k) - Poly(2) * g0(i, j));
          else if (i == j && k < l) rhs = -(g0(i, k) * g0(i, l) - Poly(2) * g0(k, l));
          else continue;
          CHECK_MESSAGE(lhs == rhs, "{G", i, k, ",G", j, l, "}");
        }
}

TEST_CASE("ks with an atomic hole reproduces the structure constants, n = 3, levels <= 2") {
  const int n = 3;
  int checked = 0;
  for (int m = 0; m <= 2; ++m)
    for (int k = 0; k <= 2; ++k)
      for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i)
          for (int p = 1; p <= n; ++p)
            for (int l = 1; l <= n; ++l) {
              GenIndex a{j, i, m}, b{p, l, k};
              if (!canonicalize(a) || !canonicalize(b)) continue;
              Poly ks = generator_bracket(a, b, n);
              CHECK_MESSAGE(ks == structure_bracket(a, b), a.to_string(), " ", b.to_string());
              ++checked;
            }
  CHECK(checked > 300);
}

TEST_CASE("merging: a product of letters obeys the single-letter rules") {
  for (int m = 1; m <= 3; ++m) {
    auto r = merging_check(3, m);
    CHECK_MESSAGE(r.all(), "m=", m);
  }
}

TEST_CASE("clashed hole brackets at exact rational points") {
  std::mt19937 rng(29);
  const int n = 3;
  for (int m = 2; m <= 3; ++m) {
    Word h;
    for (int r = 1; r <= m; ++r) h.push_back({n + r, 1});
    for (int trial = 0; trial < 2; ++trial) {
      auto pt = rational_point(rng, n + m);
      for (auto [a, b] : std::vector<std::pair<GenIndex, GenIndex>>{
               {{1, 2, 0}, {1, 3, 1}}, {{2, 1, 1}, {3, 2, 1}}, {{1, 3, 1}, {2, 2, 2}}, {{3, 1, 2}, {1, 2, 1}}}) {
        TraceExpr br = ks_bracket_symbolic(generator_trace(a.i, a.j, a.k, h), generator_trace(b.i, b.j, b.k, h), n + m);
        Rational lhs = evaluate_rational(br, pt);
        Rational rhs = eval_gens(structure_bracket(a, b), pt, h);
        CHECK_MESSAGE(lhs == rhs, "m=", m, " ", a.to_string(), " ", b.to_string());
      }
    }
  }
}

TEST_CASE("numeric bracket") {
  std::mt19937 rng(31);
  NumericPoint pt;
  for (int a = 1; a <= 5; ++a) pt.M[a] = random_sl2_traceless(rng);
  TraceFunction f12{{{1.0, M({1, 2})}}};
  CHECK(std::abs(ks_bracket_numeric(f12, f12, pt)) < 1e-12);

  auto Gn = [&](int i, int j) { return -trace_numeric(M({i, j}), pt); };
  TraceFunction g13{{{-1.0, M({1, 3})}}}, g24{{{-1.0, M({2, 4})}}};
  double sym = 2 * (Gn(1, 2) * Gn(3, 4) - Gn(1, 4) * Gn(2, 3));
  CHECK(ks_bracket_numeric(g13, g24, pt) == doctest::Approx(sym).epsilon(1e-9));

  // clashed hole H = M4 M5
  pt.h_word = M({4, 5});
  auto Gk = [&](int i, int j, int k) -> double {
    if (k == 0 && i == j) return 2;
    return -trace_numeric(generator_word(i, j, k), pt);
  };
  TraceFunction a{{{-1.0, generator_word(1, 2, 0)}}}, b{{{-1.0, generator_word(1, 3, 1)}}};
  Poly rhs = structure_bracket({1, 2, 0}, {1, 3, 1});
  double expect = eval_double(rhs, [&](Sym v) { return Gk(v.a(), v.b(), v.c()); });
  CHECK(ks_bracket_numeric(a, b, pt) == doctest::Approx(expect).epsilon(1e-9));

  NumericPoint bad;
  bad.M[1] = Mat::Zero(2, 2);
  bad.M[2] = random_sl2_traceless(rng);
  TraceFunction f{{{1.0, Word{{1, -1}, {2, 1}}}}};
  CHECK_THROWS_AS(ks_bracket_numeric(f, f12, bad), AlgebraError);
}

TEST_CASE("numeric bracket on 3x3 matrices") {
  std::mt19937 rng(37);
  std::normal_distribution<double> d;
  NumericPoint pt;
  for (int a = 1; a <= 3; ++a) {
    Mat m(3, 3);
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) m(x, y) = d(rng) + (x == y ? 2.0 : 0.0);
    pt.M[a] = m;
  }
  TraceFunction f{{{1.0, M({1, 2})}, {0.5, M({1, 1, 3})}}}, g{{{1.0, M({2, 3})}, {-1.0, Word{{1, -1}, {3, 1}}}}};
  CHECK(ks_bracket_numeric(f, g, pt) == doctest::Approx(-ks_bracket_numeric(g, f, pt)).epsilon(1e-10));
  // traces of a single letter's powers are Casimirs
  TraceFunction c{{{1.0, M({2, 2})}}};
  CHECK(std::abs(ks_bracket_numeric(c, f, pt)) < 1e-9);
}
