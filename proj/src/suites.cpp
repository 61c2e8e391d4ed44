#include <chrono>
#include <cmath>
#include <mutex>
#include <optional>
#include <map>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "geoalg/centers.hpp"
#include "geoalg/cli.hpp"
#include "geoalg/frobenius.hpp"
#include "geoalg/poly_io.hpp"
#include "geoalg/reductions.hpp"

namespace geoalg::cli {

std::string status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
  }
  return "?";
}

namespace {

CaseReport verdict(bool ok, std::string detail = {}) {
  CaseReport r;
  r.status = ok ? Status::Pass : Status::Fail;
  r.detail = std::move(detail);
  return r;
}

CaseReport compare(const Poly& lhs, const Poly& rhs) {
  CaseReport r = verdict(lhs == rhs);
  if (r.status == Status::Fail) {
    r.lhs = to_string(lhs);
    r.rhs = to_string(rhs);
  }
  return r;
}

CaseReport compare(const Rational& lhs, const Rational& rhs) {
  CaseReport r = verdict(lhs == rhs);
  if (r.status == Status::Fail) {
    r.lhs = lhs.get_str();
    r.rhs = rhs.get_str();
  }
  return r;
}

CaseReport skipped(std::string why) {
  CaseReport r;
  r.status = Status::Skipped;
  r.detail = std::move(why);
  return r;
}

int pick(int v, int dflt) { return v > 0 ? v : dflt; }

std::string pair_id(const GenIndex& a, const GenIndex& b) { return a.to_string() + "," + b.to_string(); }

// ---------------------------------------------------------------------------
// goldman: the level-zero algebra on shear coordinates, and the matrix
// invariants of the basis loops.

std::vector<Case> goldman_suite(const SuiteOptions& opt) {
  const int n = pick(opt.n, 4);
  std::vector<Case> cs;
  auto geo = std::make_shared<std::map<Sym, Poly>>();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) (*geo)[Sym::gen(i, j, 0)] = geodesic_function(n, i, j);
  auto graph = std::make_shared<FatGraph>(canonical_disc_graph(n));
  auto alg = std::make_shared<GenAlgebra>(GenAlgebra::An(n));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int p = 1; p <= n; ++p)
        for (int l = p + 1; l <= n; ++l) {
          if (std::pair{p, l} <= std::pair{i, j}) continue;
          GenIndex a{i, j, 0}, b{p, l, 0};
          cs.push_back({"goldman " + pair_id(a, b), [=] {
                          Poly gold = goldman_bracket(geo->at(a.sym()), geo->at(b.sym()), *graph);
                          Poly sc = poly_subst(alg->bracket(Poly(a.sym()), Poly(b.sym())), *geo);
                          return compare(gold, sc);
                        }});
        }
  for (int i = 1; i <= n; ++i)
    cs.push_back({"loop " + std::to_string(i) + " trace and determinant", [=] {
                    PolyMatrix g = evaluate(basis_words(n)[std::size_t(i - 1)]);
                    CaseReport r = verdict(mat2::trace(g).is_zero() && mat_det(g) == Poly(1));
                    if (r.status == Status::Fail) {
                      r.lhs = to_string(mat2::trace(g)) + "; " + to_string(mat_det(g));
                      r.rhs = "0; 1";
                    }
                    return r;
                  }});
  cs.push_back({"perimeter", [=] {
                  auto r = perimeter_identity(n);
                  return compare(r.lhs, r.rhs);
                }});
  return cs;
}

// ---------------------------------------------------------------------------
// ks: trace calculus against the structure constants.

std::vector<Case> ks_suite(const SuiteOptions& opt) {
  const int n = pick(opt.n, 3), L = opt.level >= 0 ? opt.level : 3, points = pick(opt.points, 2);
  auto gens = GenAlgebra::Dn(n).generators(L);
  std::vector<Case> cs;
  for (std::size_t x = 0; x < gens.size(); ++x)
    for (std::size_t y = x + 1; y < gens.size(); ++y) {
      GenIndex a = gens[x], b = gens[y];
      cs.push_back({"atomic " + pair_id(a, b),
                    [=] { return compare(ks::generator_bracket(a, b, n), structure_bracket(a, b)); }});
    }
  for (int m = 1; m <= 3; ++m)
    cs.push_back({"merging m=" + std::to_string(m), [=] { return verdict(ks::merging_check(n, m).all()); }});
  // composite hole H = M_{n+1}...M_{n+m}, exact evaluation at seeded points
  for (int m = 2; m <= 3; ++m)
    for (std::size_t x = 0; x < gens.size(); ++x)
      for (std::size_t y = x + 1; y < gens.size(); ++y) {
        GenIndex a = gens[x], b = gens[y];
        std::uint64_t seed = opt.seed;
        cs.push_back({"clash m=" + std::to_string(m) + " " + pair_id(a, b), [=] {
                        ks::Word h;
                        for (int r = 1; r <= m; ++r) h.push_back({n + r, 1});
                        std::mt19937 rng(std::uint32_t(seed * 1000003u + std::uint64_t(m)));
                        ks::TraceExpr br = ks::ks_bracket_symbolic(ks::generator_trace(a.i, a.j, a.k, h),
                                                                   ks::generator_trace(b.i, b.j, b.k, h), n + m);
                        Poly sb = structure_bracket(a, b);
                        for (int t = 0; t < points; ++t) {
                          std::map<int, ks::QMat2> pt;
                          for (int s = 1; s <= n + m; ++s) pt[s] = ks::random_rational_sl2_traceless(rng);
                          Rational lhs = ks::evaluate_rational(br, pt);
                          Rational rhs = eval_rational(sb, [&](Sym v) {
                            return ks::generator_rational(v.a(), v.b(), v.c(), pt, h);
                          });
                          if (lhs != rhs) return compare(lhs, rhs);
                        }
                        return verdict(true, std::to_string(points) + " points");
                      }});
      }
  return cs;
}

// ---------------------------------------------------------------------------
// jacobi: every generator triple, grouped by the first generator.

std::vector<Case> jacobi_suite(const SuiteOptions& opt) {
  const int n = pick(opt.n, 3), L = opt.level >= 0 ? opt.level : 3;
  auto alg = std::make_shared<GenAlgebra>(GenAlgebra::Dn(n));
  auto gens = std::make_shared<std::vector<GenIndex>>(alg->generators(L));
  std::vector<Case> cs;
  for (std::size_t x = 0; x < gens->size(); ++x)
    cs.push_back({"jacobi " + (*gens)[x].to_string() + ",*,*", [=] {
                    std::size_t count = 0;
                    for (std::size_t y = x; y < gens->size(); ++y)
                      for (std::size_t z = y; z < gens->size(); ++z) {
                        auto r = jacobi_check(*alg, (*gens)[x], (*gens)[y], (*gens)[z]);
                        ++count;
                        if (!r.zero) {
                          CaseReport f = compare(r.value, Poly(0));
                          f.detail = pair_id((*gens)[y], (*gens)[z]);
                          return f;
                        }
                      }
                    return verdict(true, std::to_string(count) + " triples");
                  }});
  return cs;
}

// ---------------------------------------------------------------------------
// braid: relations in every realization.

std::vector<Case> braid_suite(const SuiteOptions& opt) {
  const int n = pick(opt.n, 3), cap = opt.level >= 0 ? opt.level : 4;
  std::vector<Case> cs;
  for (BraidTarget t : {BraidTarget::An, BraidTarget::DnHat, BraidTarget::FrakDn, BraidTarget::FrakDnMatrix}) {
    auto rep = std::make_shared<RelationReport>(verify_relations(t, n, t == BraidTarget::FrakDn ? cap + 2 : cap));
    for (std::size_t c = 0; c < rep->checks.size(); ++c) {
      std::string name = rep->checks[c].name;
      bool rrr = name.rfind("RRR", 0) == 0;
      cs.push_back({target_name(t) + " " + name, [=] {
                      if (rrr && n < 3 && t != BraidTarget::An) return skipped("two points: no braid relation");
                      const auto& chk = rep->checks[c];
                      std::string d = chk.certified_level ? "certified level " + std::to_string(chk.certified_level)
                                                          : std::string();
                      return verdict(chk.holds, d);
                    }});
    }
  }
  std::vector<BraidGen> gens;
  for (int i = 1; i < n; ++i) gens.push_back(BraidGen::adjacent(i));
  gens.push_back(BraidGen::wrap_gen());
  for (auto g : gens)
    for (bool inv : {false, true}) {
      BraidGen b = inv ? g.inv() : g;
      cs.push_back({"componentwise vs matrix " + b.name(n), [=] { return verdict(frak_forms_agree(b, n, cap)); }});
    }
  return cs;
}

// ---------------------------------------------------------------------------
// yangian: the semiclassical reflection equation.

std::vector<Case> yangian_suite(const SuiteOptions& opt) {
  std::vector<std::pair<int, int>> runs;
  if (opt.n > 0) runs.push_back({opt.n, opt.level >= 0 ? opt.level : (opt.n == 2 ? 3 : 2)});
  else runs = {{2, 3}, {3, 2}};
  std::vector<Case> cs;
  for (auto [n, N] : runs) {
    auto rep = std::make_shared<std::optional<ReflectionReport>>();
    auto mu = std::make_shared<std::once_flag>();
    auto get = [=]() -> const ReflectionReport& {
      std::call_once(*mu, [&] { *rep = semiclassical_reflection_check(GenAlgebra::Dn(n), N); });
      return **rep;
    };
    std::string tag = " n=" + std::to_string(n) + " order=" + std::to_string(N);
    auto sign = [](int f) { return f == 1 ? "+1" : f == -1 ? "-1" : "none"; };
    cs.push_back({"derived limit vs bracket" + tag, [=] {
                    int f = get().derived_vs_bracket;
                    return verdict(f == 1, std::string("factor ") + sign(f));
                  }});
    cs.push_back({"derived limit vs generating function" + tag, [=] {
                    int f = get().derived_vs_yangian;
                    return verdict(f == 1, std::string("factor ") + sign(f));
                  }});
    cs.push_back({"printed display vs generating function" + tag, [=] {
                    int f = get().display_vs_yangian;
                    CaseReport r = verdict(f == 1, std::string("factor ") + sign(f));
                    if (r.status == Status::Fail) {
                      r.lhs = "display";
                      r.rhs = std::string(sign(f)) + " x generating-function bracket";
                    }
                    return r;
                  }});
    cs.push_back({"zeroth order, q = exp(-i pi hbar)" + tag, [=] { return verdict(get().order0_derived_q); }});
  }
  return cs;
}

// ---------------------------------------------------------------------------
// centers.

void add_center_cases(std::vector<Case>& cs, std::shared_ptr<CenterSet> c, std::uint64_t seed, int points) {
  std::string tag = flavor_name(c->flavor) + " n=" + std::to_string(c->n) +
                    (c->flavor == CenterFlavor::Dnp ? " p=" + std::to_string(c->p) : std::string());
  cs.push_back({"central " + tag, [=] {
                  auto r = centrality(*c);
                  return verdict(r.failures == 0 && r.pairs > 0,
                                 std::to_string(r.pairs - r.failures) + "/" + std::to_string(r.pairs) + " pairs");
                }});
  cs.push_back({"braid invariant " + tag, [=] {
                  auto r = braid_invariance(*c);
                  std::string bad;
                  for (auto& [name, ok] : r.cases)
                    if (!ok) bad += (bad.empty() ? "" : " ") + name;
                  return verdict(r.all(), bad.empty() ? "" : "moved by " + bad);
                }});
  cs.push_back({"independent " + tag, [=] {
                  auto r = independence(*c, seed, points);
                  std::string ranks;
                  for (auto x : r.ranks) ranks += (ranks.empty() ? "" : ",") + std::to_string(x);
                  CaseReport v = verdict(r.ok(), "ranks " + ranks + " expected " + std::to_string(r.expected));
                  if (v.status == Status::Fail) {
                    v.lhs = ranks;
                    v.rhs = std::to_string(r.expected);
                  }
                  return v;
                }});
}

void add_casimir_cases(std::vector<Case>& cs, int n) {
  auto cmp = std::make_shared<std::optional<std::vector<CasimirComparison>>>();
  auto once = std::make_shared<std::once_flag>();
  auto get = [=]() -> const std::vector<CasimirComparison>& {
    std::call_once(*once, [&] { *cmp = compare_casimirs(n); });
    return **cmp;
  };
  auto printed = std::make_shared<std::vector<Poly>>(printed_casimirs(n));
  for (std::size_t i = 0; i < printed->size(); ++i) {
    std::string id = "printed C" + std::to_string(i + 1) + " D_n n=" + std::to_string(n);
    cs.push_back({id + " central", [=] {
                    CaseReport r = verdict(get()[i].central);
                    if (r.status == Status::Fail) {
                      DnHatAlgebra alg(n);
                      for (Sym g : alg.generators()) {
                        Poly b = alg.bracket((*printed)[i], Poly(g));
                        if (b.is_zero()) continue;
                        r.lhs = "{C, " + g.name() + "} = " + to_string(b);
                        r.rhs = "0";
                        break;
                      }
                    }
                    return r;
                  }});
    cs.push_back({id + " braid invariant", [=] {
                    CaseReport r = verdict(get()[i].braid_invariant);
                    if (r.status == Status::Fail) {
                      const Poly& c = (*printed)[i];
                      std::vector<BraidGen> gens{BraidGen::wrap_gen()};
                      for (int a = n - 1; a >= 1; --a) gens.insert(gens.begin(), BraidGen::adjacent(a));
                      for (auto g : gens) {
                        Poly img = poly_subst(c, braid_images(CenterFlavor::Dn, g, n, 0));
                        if (img == c) continue;
                        r.detail = "moved by " + g.name(n);
                        r.lhs = to_string(img);
                        break;
                      }
                      r.rhs = to_string((*printed)[i]);
                    }
                    return r;
                  }});
    cs.push_back({id + " proportional to a coefficient", [=] {
                    auto& c = get()[i];
                    if (!c.affine) {
                      CaseReport r = verdict(false, "no coefficient is an affine image");
                      r.lhs = to_string((*printed)[i]);
                      r.rhs = "a c_k + b for a determinant coefficient c_k";
                      return r;
                    }
                    return verdict(true, "coefficient " + std::to_string(c.affine_with + 1) + " = " +
                                             c.affine->scale.get_str() + " C + " + c.affine->shift.get_str());
                  }});
  }
  if (n == 3)
    cs.push_back({"corrected D_3 Casimirs central and invariant", [=] {
                    auto cc = dn3_casimirs();
                    DnHatAlgebra alg(3);
                    bool ok = braid_invariance(CenterFlavor::Dn, 3, 0, cc).all();
                    for (auto& c : cc)
                      for (Sym g : alg.generators()) ok = ok && alg.bracket(c, Poly(g)).is_zero();
                    auto coeffs = centers_Dn(3).coeffs;
                    for (auto& x : coeffs) ok = ok && express_in(x, cc).has_value();
                    return verdict(ok, "determinant coefficients are polynomials in them");
                  }});
  if (n == 2)
    cs.push_back({"D_2 determinant coefficients are polynomials in printed C", [=] {
                    bool ok = true;
                    for (auto& x : centers_Dn(2).coeffs) ok = ok && express_in(x, *printed).has_value();
                    return verdict(ok);
                  }});
}

std::vector<Case> centers_suite(const SuiteOptions& opt) {
  std::vector<Case> cs;
  const int points = pick(opt.points, 5);
  auto dnp = [&](int n, int p) {
    add_center_cases(cs, std::make_shared<CenterSet>(centers_Dnp(n, p)), opt.seed, points);
    for (auto g : {BraidGen::adjacent(1), BraidGen::wrap_gen()})
      cs.push_back({"level-p image shape " + g.name(n) + " n=" + std::to_string(n) + " p=" + std::to_string(p),
                    [=] { return verdict(dnp_image_shape(g, n, p)); }});
  };
  auto dn = [&](int n) {
    auto c = std::make_shared<DnCenterSet>(centers_Dn(n));
    cs.push_back({"D_n determinant factorization n=" + std::to_string(n), [=] { return verdict(c->factorization_ok); }});
    add_center_cases(cs, c, opt.seed, points);
    if (n == 2 || n == 3) add_casimir_cases(cs, n);
  };
  if (opt.p > 0) {
    dnp(pick(opt.n, 2), opt.p);
  } else if (opt.n > 0) {
    add_center_cases(cs, std::make_shared<CenterSet>(centers_An(opt.n)), opt.seed, points);
    dn(opt.n);
  } else {
    for (auto [n, p] : {std::pair{2, 2}, {3, 2}, {2, 3}}) dnp(n, p);
    for (int n : {3, 4}) add_center_cases(cs, std::make_shared<CenterSet>(centers_An(n)), opt.seed, points);
    for (int n : {2, 3}) dn(n);
  }
  return cs;
}

// ---------------------------------------------------------------------------
// reduction.

std::vector<Case> reduction_suite(const SuiteOptions& opt) {
  const int n = pick(opt.n, 3), K = opt.level > 0 ? opt.level : 4;
  std::vector<Case> cs;
  auto faith = std::make_shared<std::optional<FaithfulnessReport>>();
  auto once = std::make_shared<std::once_flag>();
  auto get = [=]() -> const FaithfulnessReport& {
    std::call_once(*once, [&] { *faith = dn_faithfulness(n, K); });
    return **faith;
  };
  std::vector<BraidGen> gens;
  for (int i = 1; i < n; ++i) gens.push_back(BraidGen::adjacent(i));
  gens.push_back(BraidGen::wrap_gen());
  std::size_t idx = 0;
  for (auto g : gens)
    for (bool inv : {false, true}) {
      BraidGen b = inv ? g.inv() : g;
      cs.push_back({"reduction covariant under " + b.name(n), [=] {
                      auto& c = get().cases.at(idx);
                      return verdict(c.second && c.first == b.name(n));
                    }});
      ++idx;
    }
  for (int k = 1; k <= K; ++k)
    cs.push_back({"recursion vs closed form k=" + std::to_string(k), [=] {
                    auto a = dn_reduce(k).map(h_to_pi), b = dn_reduce_closed(k).map(h_to_pi);
                    return verdict(a == b);
                  }});
  cs.push_back({"summation identity n=" + std::to_string(n), [=] {
                  auto r = dn_sum(n, K + 4);
                  return verdict(r.numerator_matches && r.tail_vanishes,
                                 std::to_string(r.checked_orders) + " orders");
                }});
  std::vector<int> ps;
  if (opt.p > 0) ps = {opt.p};
  else ps = {2, 3, 4};
  for (int p : ps) {
    cs.push_back({"periodicity p=" + std::to_string(p), [=] {
                    auto r = dn_periodicity(p);
                    if (r.vacuous) return skipped("modulus is trivial for p <= 2");
                    return verdict(r.holds, std::to_string(r.levels_checked) + " levels");
                  }});
    cs.push_back({"level-p generating identity n=" + std::to_string(n) + " p=" + std::to_string(p),
                  [=] { return verdict(level_p_generating_identity(n, p, 3 * p)); }});
  }
  return cs;
}

// ---------------------------------------------------------------------------
// frobenius.

std::vector<Case> frobenius_suite(const SuiteOptions& opt) {
  const int trials = pick(opt.points, 50);
  std::vector<Case> cs;
  const std::uint64_t seed = opt.seed;
  for (int n = 3; n <= 5; ++n)
    cs.push_back({"block structure symbolic n=" + std::to_string(n), [=] {
                    auto S = StokesMatrix::symbolic(n);
                    bool ok = S.S() * monodromy_product(S, 1, n) == -S.S().transpose();
                    for (int nt = 1; nt <= n; ++nt) ok = ok && clash_block(S, nt).holds();
                    return verdict(ok);
                  }});
  cs.push_back({"block structure and intertwining, random n=3", [=] {
                  RationalSampler rs(seed);
                  for (int t = 0; t < trials; ++t)
                    if (!clash_block(StokesMatrix::random(3, rs), 2).holds()) return verdict(false, "trial " + std::to_string(t));
                  return verdict(true, std::to_string(trials) + " matrices");
                }});
  cs.push_back({"invariant trace identity", [=] {
                  RationalSampler rs(seed + 1);
                  for (int t = 0; t < 5; ++t) {
                    auto S = StokesMatrix::random(5, rs);
                    for (int i = 1; i <= 3; ++i)
                      for (int j = 1; j <= 3; ++j)
                        for (int k = -2; k <= 2; ++k)
                          if (trace_identity_defect(S, 4, i, j, k) != 0) return verdict(false);
                  }
                  return verdict(true);
                }});
  auto realization = [=](int N, int nt, int level, double factor, const std::string& label) {
    return Case{label, [=] {
                  RationalSampler rs(seed + 2);
                  double worst = 0;
                  std::size_t pairs = 0;
                  double fmin = 1e300, fmax = -1e300;
                  for (int t = 0; t < trials; ++t) {
                    auto r = bracket_realization(StokesMatrix::random(N, rs), nt, level, factor);
                    worst = std::max(worst, r.max_residual);
                    pairs += r.cases.size();
                    if (r.fitted) {
                      fmin = std::min(fmin, *r.fitted);
                      fmax = std::max(fmax, *r.fitted);
                    }
                  }
                  std::ostringstream d;
                  d << pairs << " pairs, max residual " << worst;
                  if (fmin <= fmax) d << ", fitted factor " << fmin << ".." << fmax;
                  CaseReport r = verdict(worst <= 1e-9, d.str());
                  if (r.status == Status::Fail) {
                    std::ostringstream l, rr;
                    l << "KS bracket = " << fmin << " x structure constants";
                    rr << factor << " x structure constants";
                    r.lhs = l.str();
                    r.rhs = rr.str();
                  }
                  return r;
                }};
  };
  cs.push_back(realization(3, 2, 2, -0.5, "realization N=3 ntilde=2, factor -1/2"));
  cs.push_back(realization(5, 4, 1, -0.5, "realization N=5 ntilde=4, factor -1/2"));
  cs.push_back(realization(5, 4, 1, 0.25, "realization N=5 ntilde=4, factor 1/4"));
  for (int m = 2; m <= 3; ++m)
    cs.push_back({"level-p all-ones block m=" + std::to_string(m), [=] {
                    RationalSampler rs(seed + 3);
                    auto r = level_p_condition(all_ones_trailing(2, m, rs), 2, m + 1);
                    Poly cyc;
                    for (int x = 0; x <= m; ++x) cyc += Poly(eta()).pow(x);
                    CaseReport c = compare(r.charpoly, cyc);
                    bool ok = c.status == Status::Pass && r.periodic && r.nondegenerate && r.full && *r.full;
                    c.status = ok ? Status::Pass : Status::Fail;
                    c.detail = r.message;
                    return c;
                  }});
  cs.push_back({"level-p degenerate form", [=] {
                  auto r = level_p_condition(StokesMatrix::from_upper(2, {Poly(2)}), 1, 2);
                  return verdict(r.message == "nondegeneracy failed" && !r.full, r.message);
                }});
  for (QuantumPoint q : {QuantumPoint::A3, QuantumPoint::A4})
    cs.push_back({"quantum cohomology point " + point_name(q), [=] {
                    int n = q == QuantumPoint::A3 ? 3 : 4;
                    QMatrix a = quantum_point(q), b = binomial_stokes(n);
                    CaseReport r = verdict(a == b);
                    if (r.status == Status::Fail) {
                      r.lhs = to_string(to_poly(a));
                      r.rhs = to_string(to_poly(b));
                    }
                    return r;
                  }});
  cs.push_back({"braid orbit of a3star stays above 2", [=] {
                  auto r = braid_orbit_monitor(quantum_point(QuantumPoint::A3), 10, 8, seed);
                  return verdict(r.all_above_two(), "min |G| " + r.min_abs.get_str() + " over " +
                                                        std::to_string(r.words) + " words");
                }});
  return cs;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"goldman", "ks",        "jacobi",    "braid", "yangian",
                                              "centers", "reduction", "frobenius"};
  return names;
}

std::vector<Case> suite_cases(const std::string& suite, const SuiteOptions& opt) {
  if (suite == "goldman") return goldman_suite(opt);
  if (suite == "ks") return ks_suite(opt);
  if (suite == "jacobi") return jacobi_suite(opt);
  if (suite == "braid") return braid_suite(opt);
  if (suite == "yangian") return yangian_suite(opt);
  if (suite == "centers") return centers_suite(opt);
  if (suite == "reduction") return reduction_suite(opt);
  if (suite == "frobenius") return frobenius_suite(opt);
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

std::vector<CaseReport> run_cases(const std::string& suite, const std::vector<Case>& cases, std::uint64_t seed) {
  std::vector<CaseReport> out(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    auto t0 = std::chrono::steady_clock::now();
    CaseReport r;
    try {
      r = cases[i].run();
    } catch (const std::exception& e) {
      r = verdict(false, std::string("error: ") + e.what());
    }
    r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    r.suite = suite;
    r.id = cases[i].id;
    r.seed = seed;
    out[i] = std::move(r);
  });
  return out;
}

std::vector<CaseReport> run_suite(const std::string& suite, const SuiteOptions& opt) {
  return run_cases(suite, suite_cases(suite, opt), opt.seed);
}

std::string to_json(const CaseReport& r) {
  nlohmann::ordered_json j;
  j["suite"] = r.suite;
  j["case"] = r.id;
  j["status"] = status_name(r.status);
  if (r.status == Status::Fail) {
    j["lhs"] = r.lhs;
    j["rhs"] = r.rhs;
  }
  if (!r.detail.empty()) j["detail"] = r.detail;
  j["ms"] = std::round(r.ms * 1000) / 1000;
  j["seed"] = r.seed;
  return j.dump();
}

std::string to_text(const CaseReport& r) {
  std::string s = status_name(r.status);
  s.resize(8, ' ');
  s += r.suite + ": " + r.id;
  if (!r.detail.empty()) s += "  (" + r.detail + ")";
  if (r.status == Status::Fail) s += "\n    lhs: " + r.lhs + "\n    rhs: " + r.rhs;
  return s;
}

}  // namespace geoalg::cli
