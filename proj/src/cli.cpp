#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "geoalg/centers.hpp"
#include "geoalg/cli.hpp"
#include "geoalg/frobenius.hpp"
#include "geoalg/ks.hpp"
#include "geoalg/poly_io.hpp"
#include "geoalg/reductions.hpp"

namespace geoalg::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Output {
  std::ostream& out;
  bool text = false;

  void emit(const json& j) {
    if (!text) {
      out << j.dump() << "\n";
      return;
    }
    for (auto& [k, v] : j.items()) {
      out << k << ": ";
      if (v.is_string()) out << v.get<std::string>();
      else if (v.is_array()) {
        out << "\n";
        for (auto& x : v) out << "  " << (x.is_string() ? x.get<std::string>() : x.dump()) << "\n";
        continue;
      } else out << v.dump();
      out << "\n";
    }
  }
};

GenAlgebra algebra(const std::string& alg, int n, int p) {
  if (alg == "an") return GenAlgebra::An(n);
  if (alg == "dn") return GenAlgebra::Dn(n);
  if (alg == "dnp") {
    if (p < 1) throw UsageError("--alg dnp needs --p");
    return GenAlgebra::Dnp(n, p);
  }
  throw UsageError("unknown algebra '" + alg + "'");
}

std::vector<std::string> matrix_rows(const PolyMatrix& m) {
  std::vector<std::string> rows;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::string r = "[";
    for (std::size_t j = 0; j < m.cols(); ++j) r += (j ? ", " : "") + to_string(m(i, j));
    rows.push_back(r + "]");
  }
  return rows;
}

std::vector<Sym> generator_vars(const Poly& f) {
  std::vector<Sym> out;
  for (Sym v : f.variables())
    if (v.is_generator()) out.push_back(v);
    else throw UsageError("'" + v.name() + "' is not a generator");
  return out;
}

// Leibniz extension of an atomic bracket.
Poly extend(const Poly& f, const Poly& g, const std::function<Poly(Sym, Sym)>& atom) {
  Poly r;
  for (Sym a : generator_vars(f)) {
    Poly da = diff_any(f, a);
    for (Sym b : generator_vars(g)) r += da * diff_any(g, b) * atom(a, b);
  }
  return r;
}

// ---------------------------------------------------------------------------

int cmd_verify(const std::string& suite, const SuiteOptions& opt, Output& o) {
  std::vector<std::string> suites;
  if (suite == "all") suites = suite_names();
  else suites = {suite};
  std::vector<std::vector<Case>> all;
  for (auto& s : suites) {
    try {
      all.push_back(suite_cases(s, opt));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  bool failed = false;
  std::size_t pass = 0, fail = 0, skip = 0;
  for (std::size_t i = 0; i < suites.size(); ++i)
    for (auto& r : run_cases(suites[i], all[i], opt.seed)) {
      o.out << (o.text ? to_text(r) : to_json(r)) << "\n";
      if (r.status == Status::Fail) failed = true, ++fail;
      else if (r.status == Status::Pass) ++pass;
      else ++skip;
    }
  if (o.text) o.out << pass << " passed, " << fail << " failed, " << skip << " skipped\n";
  return failed ? 1 : 0;
}

int cmd_bracket(const std::string& alg_name, const std::string& x, const std::string& y, int n, int p,
                const std::string& oracle, Output& o) {
  GenAlgebra alg = algebra(alg_name, n, p);
  Poly f = parse_poly(x), g = parse_poly(y);
  Poly r = alg.bracket(f, g);
  json j;
  j["command"] = "bracket";
  j["alg"] = alg_name;
  j["n"] = n;
  j["lhs"] = to_string(f);
  j["rhs"] = to_string(g);
  j["bracket"] = to_string(r);
  if (oracle.empty()) {
    o.emit(j);
    return 0;
  }
  bool agrees = false;
  if (oracle == "goldman") {
    if (alg_name != "an") throw UsageError("the goldman oracle needs --alg an");
    Bindings geo;
    for (int i = 1; i <= n; ++i)
      for (int k = i + 1; k <= n; ++k) geo[Sym::gen(i, k, 0)] = geodesic_function(n, i, k);
    Poly gold = goldman_bracket(poly_subst(alg.recanonicalize(f), geo), poly_subst(alg.recanonicalize(g), geo),
                                canonical_disc_graph(n));
    agrees = gold == poly_subst(alg.recanonicalize(r), geo);
    j["oracle"] = "goldman";
  } else if (oracle == "ks") {
    if (alg_name == "dnp") throw UsageError("the ks oracle needs --alg an or dn");
    Poly ksr = extend(alg.recanonicalize(f), alg.recanonicalize(g), [&](Sym a, Sym b) {
      return ks::generator_bracket({a.a(), a.b(), a.c()}, {b.a(), b.b(), b.c()}, n);
    });
    j["oracle"] = "ks";
    j["oracle_bracket"] = to_string(ksr);
    agrees = ksr == r;
  } else {
    throw UsageError("unknown oracle '" + oracle + "'");
  }
  j["agrees"] = agrees;
  o.emit(j);
  return agrees ? 0 : 1;
}

int cmd_braid(const std::string& alg, const std::string& word, int n, int p, bool matrix, int level, Output& o) {
  BraidWord w = parse_braid_word(word, n);
  const int cap = level >= 0 ? level : 4;
  PolyMatrix result;
  json j;
  j["command"] = "braid";
  j["alg"] = alg;
  j["word"] = word_name(w, n);
  if (alg == "an") {
    result = matrix ? act_word(w, an_matrix(n), [](const BraidGen& b, const PolyMatrix& m) { return act_An_matrix(b, m); })
                    : act_word(w, an_matrix(n), [](const BraidGen& b, const PolyMatrix& m) { return act_An(b, m); });
  } else if (alg == "dnhat") {
    result = act_word(w, dn_hat_matrix(n), [](const BraidGen& b, const PolyMatrix& m) { return act_Dn(b, m); });
  } else if (alg == "dn") {
    if (matrix) {
      auto s = act_matrix_word(w, TruncatedSeries{LevelFamily::symbolic(n, cap).generating(), cap});
      result = s.m;
      j["certified_level"] = s.cap;
    } else {
      auto f = act_frakDn_word(w, LevelFamily::symbolic(n, cap));
      result = f.generating();
      j["certified_level"] = f.cap();
    }
  } else if (alg == "dnp") {
    if (p < 1) throw UsageError("--alg dnp needs --p");
    Bindings cur;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      Bindings img = braid_images(CenterFlavor::Dnp, *it, n, p), next;
      for (auto& [v, e] : img) next[v] = cur.empty() ? e : poly_subst(e, cur);
      cur = std::move(next);
    }
    result = build_Gp(n, p, cur);
  } else {
    throw UsageError("unknown algebra '" + alg + "'");
  }
  j["matrix"] = matrix_rows(result);
  o.emit(j);
  return 0;
}

int cmd_centers(const std::string& alg, int n, int p, Output& o) {
  CenterSet c;
  if (alg == "an") c = centers_An(n);
  else if (alg == "dn") c = centers_Dn(n);
  else if (alg == "dnp") {
    if (p < 1) throw UsageError("--alg dnp needs --p");
    c = centers_Dnp(n, p);
  } else
    throw UsageError("unknown algebra '" + alg + "'");
  json j;
  j["command"] = "centers";
  j["alg"] = alg;
  j["n"] = n;
  if (alg == "dnp") j["p"] = p;
  j["expected"] = c.expected;
  std::vector<std::string> cs;
  for (auto& x : c.coeffs) cs.push_back(to_string(x));
  j["centers"] = cs;
  j["generating"] = to_string(c.generating);
  o.emit(j);
  return 0;
}

int cmd_reduce(int k, int level_p, int n, Output& o) {
  json j;
  j["command"] = "reduce";
  if (k >= 0) {
    ReductionRow r = dn_reduce(k).map(h_to_pi);
    j["k"] = k;
    j["Rhat"] = to_string(r.R);
    j["Shat"] = to_string(r.S);
    j["Ahat"] = to_string(r.A);
    j["AhatT"] = to_string(r.AT);
    o.emit(j);
    return 0;
  }
  if (level_p < 1) throw UsageError("reduce needs --dn --k K or --level-p P");
  j["p"] = level_p;
  j["n"] = n;
  j["matrix"] = matrix_rows(build_Gp(n, level_p));
  bool ok = level_p_generating_identity(n, level_p, 3 * level_p);
  j["generating_identity"] = ok;
  o.emit(j);
  return ok ? 0 : 1;
}

int cmd_geodesic(int n, int i, int k, const std::string& at, Output& o) {
  if (i > k) std::swap(i, k);
  Poly g = geodesic_function(n, i, k);
  json j;
  j["command"] = "geodesic";
  j["n"] = n;
  j["i"] = i;
  j["j"] = k;
  j["G"] = to_string(g);
  if (!at.empty()) {
    // Z<i> and Y<j> are shear coordinates; s_i = e^{Z_i/2}, t_j = e^{Y_j/2}
    std::map<std::string, double> z;
    std::stringstream ss(at);
    std::string item;
    while (std::getline(ss, item, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw UsageError("--at expects name=value pairs");
      try {
        std::string key = item.substr(0, eq);
        if (!key.empty()) key[0] = char(std::toupper(static_cast<unsigned char>(key[0])));
        z[key] = std::stod(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("bad value in '" + item + "'");
      }
    }
    auto coord = [&](Sym v) {
      std::string key = (v.kind() == Kind::S ? "Z" : "Y") + std::to_string(v.a());
      auto it = z.find(key);
      return it == z.end() ? 0.0 : it->second;
    };
    for (auto& [name, val] : z) {
      bool known = false;
      for (Sym v : canonical_disc_graph(n).variables())
        known = known || (v.kind() == Kind::S ? "Z" : "Y") + std::to_string(v.a()) == name;
      if (!known) throw UsageError("unknown coordinate '" + name + "'");
      (void)val;
    }
    bool zero = true;
    for (auto& kv : z) zero = zero && kv.second == 0;
    if (zero) j["value"] = eval_rational(g, [](Sym) { return Rational(1); }).get_str();
    else j["value"] = eval_double(g, [&](Sym v) { return std::exp(coord(v) / 2); });
  }
  o.emit(j);
  return 0;
}

int cmd_stokes(const std::string& point, int n, std::uint64_t seed, Output& o) {
  QMatrix s;
  if (point == "a3star") s = quantum_point(QuantumPoint::A3);
  else if (point == "a4star") s = quantum_point(QuantumPoint::A4);
  else if (point == "random") {
    RationalSampler rs(seed);
    s = StokesMatrix::random(n, rs).rational();
  } else
    throw UsageError("unknown point '" + point + "'");
  json j;
  j["command"] = "stokes";
  j["point"] = point;
  j["S"] = to_string(to_poly(s));
  o.emit(j);
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"geoalg: algebras of geodesic functions"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key=value file with option defaults");
  std::string format = "json";
  app.add_option("--format", format, "json (one object per line) or text")
      ->check(CLI::IsMember({"json", "text"}));

  SuiteOptions opt;
  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> suite_choices = suite_names();
  suite_choices.push_back("all");
  verify->add_option("--suite", suite)->check(CLI::IsMember(suite_choices));
  verify->add_option("--n", opt.n);
  verify->add_option("--level", opt.level);
  verify->add_option("--p", opt.p);
  verify->add_option("--points", opt.points);
  verify->add_option("--seed", opt.seed);

  std::string alg, oracle, x, y, word, point = "random", at;
  int n = 3, p = 0, level = -1, k = -1, level_p = 0, gi = 1, gj = 2;
  bool matrix = false, dn = false;
  std::uint64_t seed = 1;
  auto* bracket = app.add_subcommand("bracket", "Poisson bracket of two polynomials in the generators");
  bracket->add_option("--alg", alg)->required()->check(CLI::IsMember({"an", "dn", "dnp"}));
  bracket->add_option("lhs", x)->required();
  bracket->add_option("rhs", y)->required();
  bracket->add_option("--n", n);
  bracket->add_option("--p", p);
  bracket->add_option("--oracle", oracle)->check(CLI::IsMember({"ks", "goldman"}));

  auto* braid = app.add_subcommand("braid", "braid group action on the generator matrix");
  braid->add_option("--alg", alg)->required()->check(CLI::IsMember({"an", "dn", "dnp", "dnhat"}));
  braid->add_option("--word", word)->required();
  braid->add_option("--n", n);
  braid->add_option("--p", p);
  braid->add_flag("--matrix", matrix, "use the matrix form");
  braid->add_option("--level", level, "certified level cap");

  auto* centers = app.add_subcommand("centers", "central elements");
  centers->add_option("--alg", alg)->required()->check(CLI::IsMember({"an", "dn", "dnp"}));
  centers->add_option("--n", n);
  centers->add_option("--p", p);

  auto* reduce = app.add_subcommand("reduce", "reductions of the infinite-level algebra");
  reduce->add_flag("--dn", dn);
  reduce->add_option("--k", k);
  reduce->add_option("--level-p", level_p);
  reduce->add_option("--n", n);

  auto* geodesic = app.add_subcommand("geodesic", "geodesic function in shear coordinates");
  geodesic->add_option("--n", n);
  geodesic->add_option("--i", gi);
  geodesic->add_option("--j", gj);
  geodesic->add_option("--at", at, "Z1=..,Y1=..; unset coordinates are 0");

  auto* stokes = app.add_subcommand("stokes", "Stokes matrices at distinguished points");
  stokes->add_option("--point", point)->check(CLI::IsMember({"a3star", "a4star", "random"}));
  stokes->add_option("--n", n);
  stokes->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Output o{out, format == "text"};
  try {
    if (verify->parsed()) return cmd_verify(suite, opt, o);
    if (bracket->parsed()) return cmd_bracket(alg, x, y, n, p, oracle, o);
    if (braid->parsed()) return cmd_braid(alg, word, n, p, matrix, level, o);
    if (centers->parsed()) return cmd_centers(alg, n, p, o);
    if (reduce->parsed()) {
      if (dn && k < 0) throw UsageError("--dn needs --k");
      return cmd_reduce(dn ? k : -1, level_p, n, o);
    }
    if (geodesic->parsed()) return cmd_geodesic(n, gi, gj, at, o);
    if (stokes->parsed()) return cmd_stokes(point, n, seed, o);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const AlgebraError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace geoalg::cli
