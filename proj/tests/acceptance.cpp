// Acceptance run: one PASS/FAIL line per criterion. Tolerances are fixed here
// and never read from the command line.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "gdstar/geninv.hpp"
#include "gdstar/harness.hpp"
#include "gdstar/laws.hpp"
#include "gdstar/oracles.hpp"
#include "gdstar/orders.hpp"
#include "gdstar/perturb.hpp"
#include "gdstar/solve.hpp"
#include "gdstar/starfam.hpp"

using namespace gdstar;

namespace {

constexpr double kExact = 1e-12;
constexpr double kResidual = 1e-9;
constexpr double kDrazinOracle = 1e-8;
constexpr double kMarkov = 1e-10;
constexpr double kLiteralSpectral = 0.1;
constexpr double kCriterion1Secs = 1.0;
constexpr double kCriterion2Secs = 30.0;
constexpr double kFuzzSecs = 120.0;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

CMat m2(Complex a, Complex b, Complex c, Complex d) {
  CMat M(2, 2);
  M << a, b, c, d;
  return M;
}

double maxdiff(const CMat& A, const CMat& B) { return A.size() == 0 ? 0.0 : (A - B).cwiseAbs().maxCoeff(); }

double rel(const CMat& a, const CMat& b) { return (a - b).norm() / std::max(1.0, b.norm()); }

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

/// Structured corpus over the four classes with sizes 2..8 and indices 0..4.
struct Entry {
  CMat A;
  MatrixClass cls;
};

std::vector<Entry> build_corpus(int n, std::uint64_t seed) {
  const MatrixClass classes[] = {MatrixClass::Generic, MatrixClass::EP, MatrixClass::PartialIsometry,
                                 MatrixClass::Nilpotent};
  std::vector<Entry> out;
  Rng base(seed);
  for (int i = 0; static_cast<int>(out.size()) < n; ++i) {
    Rng rng = base.fork(static_cast<std::uint64_t>(i));
    const MatrixClass cls = classes[i % 4];
    const Index m = 2 + (i / 4) % 7;
    Index r, k;
    switch (cls) {
      case MatrixClass::Nilpotent:
        r = 0;
        k = 1 + (i / 28) % std::min<Index>(4, m);
        break;
      case MatrixClass::EP:
        r = rng.uniform_int(0, m);
        k = r == m ? 0 : 1;
        break;
      default:
        r = rng.uniform_int(0, m);
        k = r == m ? 0 : rng.uniform_int(1, std::min<Index>(4, m - r));
    }
    try {
      out.push_back({gen_structured(m, r, k, cls, rng), cls});
    } catch (const InfeasibleError&) {
    }
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = Clock::now();
  double err = 0.0;
  bool ok = true;
  auto near = [&](const CMat& a, const CMat& b) {
    const double d = maxdiff(a, b);
    err = std::max(err, d);
    ok = ok && d <= kExact;
  };
  Rng rng(1);

  // (a) nilpotent 2x2
  const CMat N = m2(0, 1, 0, 0);
  ok = ok && index(N) == 2;
  near(drazin(N), CMat::Zero(2, 2));
  near(drazin_star(N), CMat::Zero(2, 2));
  const GDFamily fn(N);
  for (int d = 0; d < 10; ++d) {
    for (GDRoute route : {GDRoute::Unitary, GDRoute::Similarity}) {
      const CMat X = fn.sample(fn.draw(rng), route);
      near(X.block(1, 0, 1, 1), CMat::Ones(1, 1));
      near(gd_star(N, X), m2(X(0, 0), 0, 1, 0));
    }
  }

  // (b) idempotent 2x2
  const CMat A = m2(1, 1, 0, 0);
  near(moore_penrose(A), m2(0.5, 0, 0.5, 0));
  const GDFamily fa(A);
  for (int d = 0; d < 10; ++d) {
    for (GDRoute route : {GDRoute::Unitary, GDRoute::Similarity}) {
      const CMat X = fa.sample(fa.draw(rng), route);
      const Complex a = X(0, 1), b = X(1, 1);
      near(X, m2(1, a, 0, b));
      near(CMat::Constant(1, 1, a + b), CMat::Ones(1, 1));
      near(gdmp(A, X), m2(1, 0, 0, 0));
      near(gd_star(A, X), m2(2, 0, 0, 0));
      near(gd_star_one(A, X), m2(1.0 + a, 1.0 + a, b, b));
      near(dual_gd_star(A, X), m2(1, 1, 1, 1));
    }
  }

  // (c) EP 2x2
  const CMat E = m2(1, 0, 0, 0);
  const StructureFlags fl = classify(E);
  ok = ok && fl.ep && fl.hermitian && fl.partial_isometry && fl.index == 1;
  const GDFamily fe(E);
  for (int d = 0; d < 10; ++d) near(gd_star(E, fe.sample(fe.draw(rng))), E);

  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  ok = ok && secs < kCriterion1Secs;
  return {ok, "max entry error " + fmt("%.1e", err) + ", " + fmt("%.3f", secs) + " s"};
}

Outcome criterion2(const std::vector<Entry>& corpus) {
  const auto t0 = Clock::now();
  Rng rng(2);
  long checks = 0, failures = 0;
  double worst = 0.0;
  std::map<Index, int> by_index;
  for (const Entry& e : corpus) {
    const GDFamily fam(e.A);
    ++by_index[fam.index()];
    for (int d = 0; d < 10; ++d) {
      const GDParams p = fam.draw(rng);
      for (GDRoute route : {GDRoute::Unitary, GDRoute::Similarity}) {
        const CheckReport rep = gd_verify(e.A, fam.sample(p, route));
        ++checks;
        worst = std::max(worst, rep.worst_relative());
        if (!rep.overall() || rep.worst_relative() > kResidual) ++failures;
      }
    }
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  std::string idx;
  for (const auto& [k, c] : by_index) idx += (idx.empty() ? "" : ",") + std::to_string(k) + ":" + std::to_string(c);
  const bool ok = failures == 0 && corpus.size() >= 200 && secs < kCriterion2Secs && by_index.size() == 5;
  return {ok, std::to_string(corpus.size()) + " matrices x 10 draws x 2 routes = " + std::to_string(checks) +
                  " checks, " + std::to_string(failures) + " failures, worst rel " + fmt("%.1e", worst) +
                  ", indices {" + idx + "}, " + fmt("%.1f", secs) + " s"};
}

Outcome criterion3(const std::vector<Entry>& corpus) {
  Rng rng(3);
  std::map<std::string, long> fails, items;
  std::map<MatrixClass, long> skipped;
  double worst = 0.0;
  auto tally = [&](const std::string& name, const CheckReport& rep) {
    items[name] += static_cast<long>(rep.items.size());
    fails[name] += static_cast<long>(rep.count(Status::Fail));
    worst = std::max(worst, rep.worst_relative());
  };
  std::size_t sa3_items = 0, dual_items = 0, one_items = 0;
  for (const Entry& e : corpus) {
    const GDFamily fam(e.A);
    const CMat X = fam.sample(fam.draw(rng));
    const CheckReport sa3 = verify_lemma_sa3(e.A, X);
    const CheckReport dual = verify_dual_lemma(e.A, X);
    const CheckReport one = verify_star_one_lemma(e.A, X);
    sa3_items = sa3.items.size();
    dual_items = dual.items.size();
    one_items = one.items.size();
    tally("sa3", sa3);
    tally("dual", dual);
    tally("star-one", one);
    const CheckReport sp = special_class_identities(e.A, X);
    tally("special", sp);
    skipped[e.cls] += static_cast<long>(sp.count(Status::Skipped));
    if (e.cls == MatrixClass::PartialIsometry) tally("partial-isometry", partial_isometry_solutions(e.A, X));
  }
  bool ok = worst <= kResidual;
  std::string detail;
  for (const auto& [name, f] : fails) {
    ok = ok && f == 0;
    detail += name + " " + std::to_string(f) + "/" + std::to_string(items[name]) + " failed; ";
  }
  for (const MatrixClass cls : {MatrixClass::Generic, MatrixClass::EP, MatrixClass::PartialIsometry,
                                MatrixClass::Nilpotent}) {
    ok = ok && skipped[cls] > 0;
    detail += std::string(to_string(cls)) + " skipped " + std::to_string(skipped[cls]) + "; ";
  }
  detail += "items per run sa3/dual/star-one = " + std::to_string(sa3_items) + "/" + std::to_string(dual_items) +
            "/" + std::to_string(one_items) + ", worst rel " + fmt("%.1e", worst);
  return {ok, detail};
}

Outcome criterion4(const std::vector<Entry>& corpus) {
  Rng rng(4);
  double cn_worst = 0.0, hs_worst = 0.0, dz_worst = 0.0;
  long mismatches = 0;
  for (const Entry& e : corpus) {
    const GDFamily fam(e.A);
    const GDParams p = fam.draw(rng);
    const CMat X = fam.sample(p);
    const CMat def = gd_star(e.A, X);
    const double cn = rel(gd_star_via_core_nilpotent(fam, p), def);
    cn_worst = std::max(cn_worst, cn);
    double hs = 0.0;
    if (e.A.norm() > 0.0) {
      const HSGDStar h = gd_star_via_hs(e.A, X);
      hs = std::max(rel(h.value, def), rel(h.value, gd_star_via_core_nilpotent(fam, p)));
      if (!h.conditions.overall()) ++mismatches;
    }
    hs_worst = std::max(hs_worst, hs);
    const double dz = rel(fam.drazin(), oracle::drazin(e.A, fam.index()));
    dz_worst = std::max(dz_worst, dz);
    if (cn > kResidual || hs > kResidual || dz > kDrazinOracle) ++mismatches;
  }
  const bool ok = mismatches == 0;
  return {ok, "core-nilpotent vs definition " + fmt("%.1e", cn_worst) + ", HS " + fmt("%.1e", hs_worst) +
                  ", Drazin vs A^k(A^(2k+1))+A^k " + fmt("%.1e", dz_worst) + ", " + std::to_string(mismatches) +
                  " mismatches"};
}

Outcome criterion5(const std::vector<Entry>& corpus) {
  Rng rng(5);
  long fails = 0, runs = 0;
  double worst = 0.0;
  for (const Entry& e : corpus) {
    if (e.A.norm() == 0.0) continue;
    const GDFamily fam(e.A);
    const CheckReport rep = spectral_identities(e.A, fam.sample(fam.draw(rng)));
    ++runs;
    worst = std::max(worst, rep.worst_relative());
    if (!rep.passed("(a) gd_star = sum alpha Xgd E") || !rep.passed("(b) gdmp = sum over nonzero alpha of Xgd E"))
      ++fails;
  }
  const CheckReport ex = spectral_identities(m2(1, 1, 0, 0), m2(1, 1, 0, 0));
  const CheckItem* lit = ex.find("(c) gdmp = Xgd [as printed]");
  const double literal = lit ? lit->residual : 0.0;
  const bool ok = fails == 0 && worst <= kResidual && literal > kLiteralSpectral && ex.overall();
  return {ok, std::to_string(runs) + " matrices, " + std::to_string(fails) + " failures, worst rel " +
                  fmt("%.1e", worst) + "; literal residual on [[1,1],[0,0]] with a=1, b=0: " +
                  fmt("%.3f", literal)};
}

Outcome criterion6(const std::vector<Entry>& corpus) {
  Rng rng(6);
  long refl = 0, refl_fail = 0;
  for (const Entry& e : corpus) {
    const GDFamily fam(e.A);
    const CMat X = fam.sample(fam.draw(rng));
    for (const OrderKind kind : {OrderKind::Minus, OrderKind::Star, OrderKind::Group, OrderKind::DrazinPre,
                                 OrderKind::GDPre, OrderKind::GDStar, OrderKind::DDagger}) {
      if (kind == OrderKind::Group && fam.index() > 1) continue;
      const OrderRelation rel{kind, needs_witness(kind) ? std::optional<CMat>(X) : std::nullopt};
      ++refl;
      if (!leq(e.A, e.A, rel).holds) ++refl_fail;
    }
  }

  const char* implications[] = {"minus and star => GD-star", "GD and star => GD-star", "GD => Drazin"};
  std::map<std::string, long> exercised, violated;
  long consequence_fail = 0, pairs = 0;
  for (int i = 0; i < 120; ++i) {
    Rng local = rng.fork(static_cast<std::uint64_t>(i));
    const Index m = 2 + i % 7;
    const Index r = local.uniform_int(1, m - 1);
    const Index k = local.uniform_int(1, std::min<Index>(m - r, 4));
    const CMat A = block_diagonal(m, r, k, local);
    const GDStarCanonical can(A);
    const GDParams p = i % 2 == 0 ? GDParams::zeros(can.family().nil_size()) : can.family().draw(local);
    const CMat XA = can.witness(p);
    const CMat B = can.generate(p, local);
    const GDFamily fb(B);
    const CheckReport rep = order_theorem_suite(A, B, B, {XA, fb.sample(fb.draw(local))});
    ++pairs;
    for (const CheckItem& it : rep.items) {
      if (it.name.rfind("consequence", 0) == 0 && it.status == Status::Fail) ++consequence_fail;
      for (const char* imp : implications) {
        if (it.name != imp || it.status == Status::Skipped) continue;
        ++exercised[imp];
        if (it.status == Status::Fail) ++violated[imp];
      }
    }
  }

  long ind1 = 0, ind1_bad = 0, ind1_true = 0;
  for (int i = 0; i < 60; ++i) {
    Rng local = rng.fork(1000 + static_cast<std::uint64_t>(i));
    const auto [A, B] = index_one_pair(2 + i % 7, true, local);
    const GDFamily fam(A);
    const CheckReport rep = ind1_equivalence_suite(A, B, fam.sample(fam.draw(local)));
    ++ind1;
    if (!rep.overall()) ++ind1_bad;
    const CheckItem* eq = rep.find("equivalence");
    if (eq && eq->note.find("TTTTT") != std::string::npos) ++ind1_true;
  }

  bool ok = refl_fail == 0 && consequence_fail == 0 && pairs >= 100 && ind1 >= 50 && ind1_bad == 0;
  std::string detail = "reflexivity " + std::to_string(refl - refl_fail) + "/" + std::to_string(refl) +
                       "; " + std::to_string(pairs) + " constructed pairs, consequence failures " +
                       std::to_string(consequence_fail);
  for (const char* imp : implications) {
    ok = ok && violated[imp] == 0 && exercised[imp] > 0;
    detail += "; '" + std::string(imp) + "' " + std::to_string(exercised[imp]) + " applied, " +
              std::to_string(violated[imp]) + " violated";
  }
  detail += "; ind-1 EP pairs " + std::to_string(ind1) + " (" + std::to_string(ind1_true) + " all-true), " +
            std::to_string(ind1_bad) + " inconsistent";
  return {ok, detail};
}

Outcome criterion7() {
  Rng rng(7);
  bool ok = true;
  std::string detail;
  for (const LawSpec& spec : all_laws()) {
    long applied = 0, vacuous = 0, failed = 0, attempts = 0;
    while (applied < 50 && attempts < 2000) {
      Rng local = rng.fork(static_cast<std::uint64_t>(attempts++));
      const LawInstance inst = generate_law_instance(spec, 2 + attempts % 7, local);
      const CheckReport rep = run_law(spec, inst);
      if (rep.count(Status::Skipped) > 0) {
        ++vacuous;
        continue;
      }
      ++applied;
      if (!rep.overall()) ++failed;
    }
    ok = ok && applied >= 50 && failed == 0;
    detail += to_string(spec) + " " + std::to_string(applied) + "/" + std::to_string(vacuous) + "/" +
              std::to_string(failed) + "; ";
  }
  return {ok, "(applied/vacuous/failed) " + detail};
}

Outcome criterion8() {
  Rng rng(8);
  long structural = 0, strict = 0, strict_empty = 0, bgb_fail = 0, stewart_fail = 0;
  double worst = 0.0;
  auto run = [&](const CMat& A, const CMat& E) {
    const GDFamily fam(A);
    for (const CMat& X : {fam.sample(fam.draw(rng)), fam.canonical()}) {
      const PerturbedInverse pi = perturbed_one_inverse(A, X, E);
      const CheckItem* it = pi.report.find("BGB=B");
      worst = std::max(worst, it ? it->relative() : 1.0);
      if (!pi.report.overall() || !it || it->relative() > kResidual) ++bgb_fail;
    }
  };
  for (int i = 0; i < 60; ++i) {
    Rng local = rng.fork(static_cast<std::uint64_t>(i));
    const Index m = 3 + i % 6;
    const Index k = 1 + i % 3;
    const Index r = std::max<Index>(1, m - k - i % 2);
    CMat A = gen_structured(m, r, std::min(k, m - r), MatrixClass::Generic, local);
    // eigenvalue 1 in the core gives strict mode something to work with
    const CoreNilpotent cn = core_nilpotent(A);
    CMat T = cn.middle();
    T(0, 0) = 1.0;
    A = cn.P * T * cn.P.adjoint();

    const Perturbation s = admissible_perturbation(A, PerturbMode::Structural, local);
    ++structural;
    run(A, s.E);
    const Perturbation t = admissible_perturbation(A, PerturbMode::Strict, local);
    if (t.empty) {
      ++strict_empty;
    } else {
      ++strict;
      run(A, t.E);
    }
    CMat S = random_gaussian(m, m, local);
    S *= local.uniform(0.01, 0.99) / spectral_norm(S);
    if (!stewart_check(S).overall()) ++stewart_fail;
  }
  const bool ok = structural >= 50 && strict > 0 && bgb_fail == 0 && stewart_fail == 0;
  return {ok, std::to_string(structural) + " structural, " + std::to_string(strict) + " strict (" +
                  std::to_string(strict_empty) + " infeasible), BGB=B worst rel " + fmt("%.1e", worst) + ", " +
                  std::to_string(bgb_fail) + " failures; Stewart violations " + std::to_string(stewart_fail)};
}

Outcome criterion9() {
  Eigen::MatrixXd T1(2, 2), T2(2, 2);
  T1 << 0.5, 0.5, 0.5, 0.5;
  T2 << 0.9, 0.1, 0.5, 0.5;
  bool ok = true;
  double worst = 0.0;
  std::uint64_t seed = 90;
  for (const Eigen::MatrixXd* T : {&T1, &T2}) {
    Rng rng(seed++);
    const Stationary st = markov_stationary(*T, rng, {}, 5);
    const double d = (st.w - oracle::stationary_eigen(*T)).cwiseAbs().maxCoeff();
    worst = std::max(worst, d);
    ok = ok && st.report.overall() && st.report.passed("witness independent") && d <= kMarkov;
  }
  Rng rng(99);
  const Stationary st = markov_stationary(T2, rng, {}, 5);
  const double hand = std::max(std::abs(st.w(0) - 5.0 / 6.0), std::abs(st.w(1) - 1.0 / 6.0));
  ok = ok && hand <= kMarkov;
  return {ok, "eigen-oracle max diff " + fmt("%.1e", worst) + ", (5/6, 1/6) diff " + fmt("%.1e", hand) +
                  ", 5 GD draws each"};
}

Outcome criterion10() {
  FuzzConfig cfg;
  cfg.suites = parse_suite_list("all");
  cfg.n = 200;
  cfg.seed = 7;
  const std::string command = "fuzz --suites all --n 200 --seed 7";
  const auto t0 = Clock::now();
  FuzzOutcome a = run_fuzz(cfg, command);
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  FuzzOutcome b = run_fuzz(cfg, command);
  a.report.erase("timing");
  b.report.erase("timing");
  const bool same = a.report.dump() == b.report.dump();
  const bool ok = a.pass && same && secs < kFuzzSecs;
  return {ok, std::string("verdict ") + (a.pass ? "pass" : "fail") + ", " + fmt("%.1f", secs) +
                  " s, second run " + (same ? "byte-identical" : "DIFFERENT")};
}

}  // namespace

int main() {
  const std::vector<Entry> corpus = build_corpus(240, 2024);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 worked 2x2 examples", criterion1},
      {"2 GD axioms over the corpus", [&] { return criterion2(corpus); }},
      {"3 lemma and special-class suites", [&] { return criterion3(corpus); }},
      {"4 representation cross-checks", [&] { return criterion4(corpus); }},
      {"5 spectral identities", [&] { return criterion5(corpus); }},
      {"6 order suites", [&] { return criterion6(corpus); }},
      {"7 order and additive laws", criterion7},
      {"8 perturbation", criterion8},
      {"9 Markov stationary vectors", criterion9},
      {"10 full fuzz run", criterion10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
