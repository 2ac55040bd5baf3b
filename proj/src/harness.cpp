#include "gdstar/harness.hpp"

#include <chrono>
#include <map>
#include <utility>

#include "gdstar/geninv.hpp"
#include "gdstar/laws.hpp"
#include "gdstar/oracles.hpp"
#include "gdstar/orders.hpp"
#include "gdstar/perturb.hpp"
#include "gdstar/solve.hpp"
#include "gdstar/starfam.hpp"

namespace gdstar {

namespace {

constexpr std::size_t kMaxCounterexamples = 10;
constexpr std::size_t kMaxFindings = 20;

struct ItemStats {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skipped = 0;
  std::size_t recorded = 0;
  double worst = 0.0;
  double recorded_max = 0.0;
};

struct SuiteAgg {
  std::map<std::string, ItemStats> items;
  std::size_t iterations = 0;
  std::size_t failed_iterations = 0;
  std::size_t errors = 0;
  Json counterexamples = Json::array();
  std::map<std::string, std::size_t> findings;
  std::size_t findings_total = 0;

  bool pass() const { return failed_iterations == 0 && errors == 0; }
};

/// One fuzz iteration: collects reports into the suite tally and keeps the
/// inputs around in case something fails.
class Iter {
 public:
  Iter(SuiteAgg& agg, int index, std::uint64_t seed) : agg_(agg), index_(index), seed_(seed) {}

  void input(std::string name, const CMat& M) { inputs_.emplace_back(std::move(name), M); }

  void add(const CheckReport& rep) {
    for (const auto& item : rep.items) {
      const std::string name = rep.suite + ": " + item.name;
      ItemStats& s = agg_.items[name];
      switch (item.status) {
        case Status::Pass:
          ++s.pass;
          s.worst = std::max(s.worst, item.relative());
          break;
        case Status::Fail:
          ++s.fail;
          s.worst = std::max(s.worst, item.relative());
          failed_.push_back({{"name", name}, {"residual", item.residual}, {"scale", item.scale}, {"note", item.note}});
          break;
        case Status::Skipped:
          ++s.skipped;
          break;
        case Status::Recorded:
          ++s.recorded;
          s.recorded_max = std::max(s.recorded_max, item.relative());
          break;
      }
    }
    if (rep.inconsistency) failed_.push_back({{"name", rep.suite + ": inconsistent characterizations"}});
    for (const auto& f : rep.findings) finding(rep.suite + ": " + f);
  }

  void finding(const std::string& msg) {
    ++agg_.findings_total;
    auto pos = agg_.findings.find(msg);
    if (pos != agg_.findings.end()) {
      ++pos->second;
    } else if (agg_.findings.size() < kMaxFindings) {
      agg_.findings.emplace(msg, 1);
    }
  }

  void error(const std::exception& e) {
    ++agg_.errors;
    failed_.push_back({{"name", "exception"}, {"what", e.what()}});
  }

  void finish() {
    ++agg_.iterations;
    if (failed_.empty()) return;
    ++agg_.failed_iterations;
    if (agg_.counterexamples.size() >= kMaxCounterexamples) return;
    Json in = Json::object();
    for (const auto& [name, M] : inputs_) in[name] = matrix_to_json(M);
    agg_.counterexamples.push_back({{"iteration", index_}, {"seed", seed_}, {"inputs", in}, {"failed", failed_}});
  }

 private:
  SuiteAgg& agg_;
  int index_;
  std::uint64_t seed_;
  std::vector<std::pair<std::string, CMat>> inputs_;
  Json failed_ = Json::array();
};

using Body = void (*)(Iter&, Rng&, const FuzzConfig&, int);

CMat draw_witness(const GDFamily& fam, Rng& rng) { return fam.sample(fam.draw(rng)); }

const CorpusMatrix& add_corpus(Iter& it, const CorpusMatrix& c) {
  it.input("A", c.A);
  return c;
}

void suite_gd(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  CheckReport idx;
  idx.suite = "index";
  const Index ko = oracle::index_by_rank_sequence(c.A, cfg.tol);
  idx.check_flag("staircase = rank sequence", fam.index() == ko, static_cast<double>(std::abs(fam.index() - ko)), 1.0);
  it.add(idx);
  for (int d = 0; d < cfg.draws; ++d) {
    const GDParams p = fam.draw(rng);
    for (const GDRoute route : {GDRoute::Unitary, GDRoute::Similarity}) {
      CheckReport rep = gd_verify(c.A, fam.sample(p, route), cfg.tol);
      rep.suite = route == GDRoute::Unitary ? "gd (unitary)" : "gd (similarity)";
      it.add(rep);
    }
  }
}

void suite_penrose(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  it.add(verify_penrose(c.A, moore_penrose(c.A, cfg.tol), cfg.tol));
  for (int d = 0; d < cfg.draws; ++d) {
    const CMat X = draw_witness(fam, rng);
    it.add(verify_gdmp_system(c.A, gdmp(c.A, X, cfg.tol), cfg.tol));
    it.add(verify_mpgd_system(c.A, mpgd(c.A, X, cfg.tol), cfg.tol));
    it.add(gd_to_drazin(c.A, X, cfg.tol));
  }
}

void suite_sa3(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  for (int d = 0; d < cfg.draws; ++d) {
    const CMat X = draw_witness(fam, rng);
    it.add(verify_lemma_sa3(c.A, X, cfg.tol));
    it.add(gd_star_solution_check(c.A, gd_star(c.A, X, cfg.tol), X, cfg.tol));
  }
}

void suite_dual(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  for (int d = 0; d < cfg.draws; ++d) it.add(verify_dual_lemma(c.A, draw_witness(fam, rng), cfg.tol));
}

void suite_star_one(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  for (int d = 0; d < cfg.draws; ++d) it.add(verify_star_one_lemma(c.A, draw_witness(fam, rng), cfg.tol));
}

void suite_special(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  const bool pi = classify(c.A, cfg.tol).partial_isometry;
  for (int d = 0; d < cfg.draws; ++d) {
    const CMat X = draw_witness(fam, rng);
    it.add(special_class_identities(c.A, X, cfg.tol));
    if (pi) it.add(partial_isometry_solutions(c.A, X, cfg.tol));
  }
}

void suite_spectral(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  if (c.A.norm() == 0.0) return;
  const GDFamily fam(c.A, cfg.tol);
  it.add(verify_spectral(c.A, spectral(c.A, cfg.tol), cfg.tol));
  for (int d = 0; d < cfg.draws; ++d) it.add(spectral_identities(c.A, draw_witness(fam, rng), cfg.tol));
}

void suite_representation(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  const Tracked tA(c.A);
  CheckReport rep;
  rep.suite = "representation";
  for (int d = 0; d < cfg.draws; ++d) {
    const GDParams p = fam.draw(rng);
    const CMat X = fam.sample(p);
    const Tracked def = Tracked(X) * tA * tA.adjoint();
    rep.check("core-nilpotent formula = XAA*", Tracked(gd_star_via_core_nilpotent(fam, p)), def, cfg.tol);
    if (c.A.norm() > 0.0) {
      const HSGDStar hs = gd_star_via_hs(c.A, X, cfg.tol);
      rep.check("HS formula = XAA*", Tracked(hs.value), def, cfg.tol);
      it.add(hs.conditions);
    }
  }
  Tolerance loose = cfg.tol;
  loose.residual_rtol = 1e-8;
  rep.check("A^D = A^k (A^(2k+1))+ A^k", Tracked(fam.drazin()),
            Tracked(oracle::drazin(c.A, fam.index(), cfg.tol)), loose);
  it.add(rep);
}

}  // namespace

CMat block_diagonal(Index m, Index r, Index k, Rng& rng) {
  CMat M = CMat::Zero(m, m);
  M.topLeftCorner(r, r) = gen_structured(r, r, 0, MatrixClass::Generic, rng);
  M.bottomRightCorner(m - r, m - r) = gen_structured(m - r, 0, k, MatrixClass::Nilpotent, rng);
  const CMat U = random_unitary(m, rng);
  return U * M * U.adjoint();
}

namespace {

void suite_orders(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const Tolerance& tol = cfg.tol;
  {
    const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
    const GDFamily fam(c.A, tol);
    const CMat X = draw_witness(fam, rng);
    CheckReport refl;
    refl.suite = "reflexivity";
    for (const OrderKind kind : {OrderKind::Minus, OrderKind::Star, OrderKind::Group, OrderKind::DrazinPre,
                                 OrderKind::GDPre, OrderKind::GDStar, OrderKind::DDagger}) {
      const std::string name(to_string(kind));
      if (kind == OrderKind::Group && fam.index() > 1) {
        refl.skip(name, "no group inverse");
        continue;
      }
      const OrderRelation rel{kind, needs_witness(kind) ? std::optional<CMat>(X) : std::nullopt};
      const OrderResult res = leq(c.A, c.A, rel, tol);
      refl.check_flag(name, res.holds, res.report.worst_relative(), 1.0);
    }
    it.add(refl);
  }

  const Index m = rng.uniform_int(2, std::max<Index>(2, cfg.max_size));
  const Index r = rng.uniform_int(1, m - 1);
  const Index k = rng.uniform_int(1, std::min<Index>(m - r, 4));
  const CMat A = block_diagonal(m, r, k, rng);
  it.input("A (pair)", A);
  const GDStarCanonical can(A, tol);
  const Index s = can.family().nil_size();
  // W = V = 0 makes the generated pair satisfy the minus, star and GD
  // relations as well, so the implication items are exercised.
  const GDParams p = i % 2 == 0 ? GDParams::zeros(s) : can.family().draw(rng);
  const CMat XA = can.witness(p);
  const CMat B = can.generate(p, rng);
  it.input("B", B);

  CheckReport rt;
  rt.suite = "canonical";
  const OrderResult ab = leq(A, B, {OrderKind::GDStar, XA}, tol);
  rt.check_flag("generated B is above A", ab.holds, ab.report.worst_relative(), 1.0);
  CMat G = random_gaussian(m, m, rng);
  const CMat Bp = B + 1e-3 * std::max(1.0, B.norm()) * G / G.norm();
  rt.check_flag("perturbed B rejected", !can.test(Bp, XA).overall(), 0.0, 1.0);
  it.add(rt);
  it.add(can.test(B, XA));

  CMat C = B;
  CMat XB = draw_witness(GDFamily(B, tol), rng);
  try {
    const GDStarCanonical canB(B, tol);
    const GDParams pb = GDParams::zeros(canB.family().nil_size());
    XB = canB.witness(pb);
    C = canB.generate(pb, rng);
  } catch (const NotApplicable&) {
  }
  it.input("C", C);
  it.add(order_theorem_suite(A, B, C, {XA, XB}, tol));
  if (i % 4 == 0) it.add(order_theorem_suite(A, A, A, {XA, XA}, tol));

  const CMat Ap = moore_penrose(A, tol);
  const CMat I = CMat::Identity(m, m);
  const CMat B2 = A + (I - A * Ap) * random_gaussian(m, m, rng) * (I - Ap * A);
  it.input("B (minus-star)", B2);
  CheckReport ms = order_theorem_suite(A, B2, B2, {XA, draw_witness(GDFamily(B2, tol), rng)}, tol);
  ms.suite = "orders (minus-star pair)";
  it.add(ms);
}

}  // namespace

std::pair<CMat, CMat> index_one_pair(Index m, bool unitary, Rng& rng) {
  const Index r = rng.uniform_int(1, m - 1);
  const CMat C = gen_structured(r, r, 0, MatrixClass::Generic, rng);
  CMat S;
  if (unitary) {
    S = random_unitary(m, rng);
  } else {
    const CMat G = random_gaussian(m, m, rng);
    S = CMat::Identity(m, m) + 0.5 * G / spectral_norm(G);
  }
  CMat Ma = CMat::Zero(m, m);
  Ma.topLeftCorner(r, r) = C;
  CMat Mb = CMat::Zero(m, m);
  const double u = rng.uniform(0.0, 1.0);
  if (u < 0.5) {
    Mb.topLeftCorner(r, r) = C;
  } else {
    const Complex a(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0));
    const Complex b(rng.uniform(-2.0, 2.0), rng.uniform(-1.0, 1.0));
    Mb.topLeftCorner(r, r) = a * C + b * CMat::Identity(r, r);
  }
  Mb.bottomRightCorner(m - r, m - r) = random_gaussian(m - r, m - r, rng);
  const CMat Sinv = S.inverse();
  return {S * Ma * Sinv, S * Mb * Sinv};
}

namespace {

void suite_ind1(Iter& it, Rng& rng, const FuzzConfig& cfg, int) {
  const Index m = rng.uniform_int(2, std::max<Index>(2, cfg.max_size));
  const auto [A, B] = index_one_pair(m, true, rng);
  it.input("A", A);
  it.input("B", B);
  it.add(ind1_equivalence_suite(A, B, draw_witness(GDFamily(A, cfg.tol), rng), cfg.tol));
}

/// Same conditions on non-EP index-1 pairs. Known to produce mixed outcomes,
/// so nothing here is asserted; outcomes go to findings.
void suite_ind1_general(Iter& it, Rng& rng, const FuzzConfig& cfg, int) {
  const Index m = rng.uniform_int(2, std::max<Index>(2, cfg.max_size));
  const auto [A, B] = index_one_pair(m, false, rng);
  it.input("A", A);
  it.input("B", B);
  CheckReport rep = ind1_equivalence_suite(A, B, draw_witness(GDFamily(A, cfg.tol), rng), cfg.tol);
  rep.suite = "ind1 (non-EP probe)";
  for (auto& item : rep.items) {
    if (item.status == Status::Pass || item.status == Status::Fail) item.status = Status::Recorded;
  }
  it.add(rep);
}

void suite_laws(Iter& it, Rng& rng, const FuzzConfig& cfg, int) {
  for (const LawSpec& spec : all_laws()) {
    const Index m = rng.uniform_int(2, std::max<Index>(2, cfg.max_size));
    const LawInstance inst = generate_law_instance(spec, m, rng, cfg.tol);
    const std::string name = to_string(spec);
    for (std::size_t j = 0; j < inst.mats.size(); ++j) {
      it.input(name + " M" + std::to_string(j), inst.mats[j]);
      it.input(name + " X" + std::to_string(j), inst.witnesses[j]);
    }
    it.add(run_law(spec, inst, cfg.tol));
  }
}

void suite_perturb(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  CorpusMatrix c = corpus_matrix(cfg.max_size, i, rng);
  CMat A = c.A;
  if (i % 2 == 0 && c.core > 0) {
    // put an eigenvalue 1 into the core so that strict mode has room
    const CoreNilpotent cn = core_nilpotent(A, cfg.tol);
    CMat T = cn.middle();
    T(0, 0) = 1.0;
    A = cn.P * T * cn.P.adjoint();
  }
  it.input("A", A);
  const GDFamily fam(A, cfg.tol);
  CheckReport flags;
  flags.suite = "admissible perturbation";
  for (const PerturbMode mode : {PerturbMode::Strict, PerturbMode::Structural}) {
    const Perturbation p = admissible_perturbation(A, mode, rng, cfg.tol);
    it.input(mode == PerturbMode::Strict ? "E (strict)" : "E (structural)", p.E);
    if (mode == PerturbMode::Strict) {
      flags.check_flag("strict output satisfies A^kE=E and the block form", p.empty || (p.strict && p.structural),
                       0.0, 1.0);
      if (p.empty) flags.skip("strict output nonzero", "null(A^k - I) is trivial");
    } else {
      flags.check_flag("structural output has the block form", p.structural, 0.0, 1.0);
      flags.record_value("structural output also strict (coincidental)", p.strict ? 1.0 : 0.0, 1.0);
    }
    flags.check_flag("||A^GD E|| <= 0.5", p.contraction <= 0.5 + 1e-12, p.contraction, 0.5);
    if (p.empty) continue;
    PerturbedInverse pi = perturbed_one_inverse(A, draw_witness(fam, rng), p.E, cfg.tol);
    pi.report.suite = mode == PerturbMode::Strict ? "perturbation (strict)" : "perturbation (structural)";
    it.add(pi.report);
    pi = perturbed_one_inverse(A, fam.canonical(), p.E, cfg.tol);
    pi.report.suite = mode == PerturbMode::Strict ? "perturbation (strict, W=V=0)" : "perturbation (structural, W=V=0)";
    it.add(pi.report);
  }
  it.add(flags);
  const Index m = A.rows();
  CMat S = random_gaussian(m, m, rng);
  S *= rng.uniform(0.01, 0.99) / spectral_norm(S);
  it.input("S (Stewart)", S);
  it.add(stewart_check(S, cfg.tol));
}

void suite_solve(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const Index m = c.A.rows();
  const GDFamily fam(c.A, cfg.tol);
  const CMat X = draw_witness(fam, rng);
  const CVec b = random_gaussian(m, 1, rng);
  const CVec y = random_gaussian(m, 1, rng);
  const CVec z = random_gaussian(m, 1, rng);
  it.add(lsq_gdmp(c.A, b, X, cfg.tol).report);
  it.add(minnorm_mpgd(c.A, c.A * y, X, cfg.tol).report);
  it.add(gram_solve(c.A, b, X, z, cfg.tol).report);
}

void suite_markov(Iter& it, Rng& rng, const FuzzConfig& cfg, int) {
  const Index m = rng.uniform_int(2, std::max<Index>(2, cfg.max_size));
  Eigen::MatrixXd T(m, m);
  for (Index a = 0; a < m; ++a) {
    for (Index b = 0; b < m; ++b) {
      // the diagonal and the cycle a -> a+1 stay positive: irreducible and aperiodic
      const bool keep = a == b || b == (a + 1) % m || rng.uniform(0.0, 1.0) < 0.7;
      T(a, b) = keep ? rng.uniform(0.05, 1.0) : 0.0;
    }
    T.row(a) /= T.row(a).sum();
  }
  it.input("T", T.cast<Complex>());
  it.add(markov_stationary(T, rng, cfg.tol).report);
}

/// The system AXA = A, XAX = X, A^(k+1)X = XA^(k+1) = A^k always has the
/// solution X A X for any GD inverse X; raw GD draws are recorded.
void suite_reflexive_gd(Iter& it, Rng& rng, const FuzzConfig& cfg, int i) {
  const CorpusMatrix c = add_corpus(it, corpus_matrix(cfg.max_size, i, rng));
  const GDFamily fam(c.A, cfg.tol);
  if (fam.index() <= 1) return;
  const Tracked tA(c.A);
  const Tracked Ak = tracked_pow(tA, fam.index());
  const Tracked Ak1 = Ak * tA;
  CheckReport rep;
  rep.suite = "reflexive GD";
  for (int d = 0; d < cfg.draws; ++d) {
    const Tracked X(draw_witness(fam, rng));
    const Tracked Y = X * tA * X;
    rep.check("AYA=A", tA * Y * tA, tA, cfg.tol);
    rep.check("YAY=Y", Y * tA * Y, Y, cfg.tol);
    rep.check("A^(k+1)Y=A^k", Ak1 * Y, Ak, cfg.tol);
    rep.check("YA^(k+1)=A^k", Y * Ak1, Ak, cfg.tol);
    rep.record("raw draw: XAX=X", X * tA * X, X);
  }
  it.add(rep);
}

const std::vector<std::pair<std::string, Body>>& suites() {
  static const std::vector<std::pair<std::string, Body>> table = {
      {"gd", suite_gd},
      {"penrose", suite_penrose},
      {"sa3", suite_sa3},
      {"dual", suite_dual},
      {"star-one", suite_star_one},
      {"special", suite_special},
      {"spectral", suite_spectral},
      {"representation", suite_representation},
      {"orders", suite_orders},
      {"ind1", suite_ind1},
      {"ind1-general", suite_ind1_general},
      {"laws", suite_laws},
      {"perturb", suite_perturb},
      {"solve", suite_solve},
      {"markov", suite_markov},
      {"reflexive-gd", suite_reflexive_gd},
  };
  return table;
}

Json suite_json(const std::string& name, const SuiteAgg& agg) {
  Json items = Json::object();
  for (const auto& [item, s] : agg.items) {
    Json j = {{"pass", s.pass}, {"fail", s.fail}, {"skipped", s.skipped}, {"recorded", s.recorded}};
    if (s.pass + s.fail > 0) j["worst_relative"] = s.worst;
    if (s.recorded > 0) j["recorded_max"] = s.recorded_max;
    items[item] = std::move(j);
  }
  return {{"name", name},
          {"iterations", agg.iterations},
          {"failed_iterations", agg.failed_iterations},
          {"errors", agg.errors},
          {"verdict", agg.pass() ? "pass" : "fail"},
          {"items", std::move(items)},
          {"findings_total", agg.findings_total},
          {"findings", agg.findings},
          {"counterexamples", agg.counterexamples}};
}

}  // namespace

const std::vector<std::string>& fuzz_suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, body] : suites()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<std::string> parse_suite_list(std::string_view text) {
  if (text == "all") return fuzz_suite_names();
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string name(text.substr(start, end - start));
    const auto& known = fuzz_suite_names();
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw InputError("unknown fuzz suite '" + name + "'");
    }
    if (std::find(out.begin(), out.end(), name) == out.end()) out.push_back(name);
    start = end + 1;
  }
  return out;
}

CorpusMatrix corpus_matrix(Index max_size, int i, Rng& rng) {
  if (max_size < 2) throw InputError("corpus matrices need max size >= 2");
  static constexpr MatrixClass kCycle[] = {MatrixClass::Generic, MatrixClass::EP, MatrixClass::PartialIsometry,
                                           MatrixClass::Nilpotent, MatrixClass::HermitianPSD};
  CorpusMatrix c;
  c.cls = kCycle[static_cast<std::size_t>(i) % 5];
  const Index m = rng.uniform_int(2, max_size);
  switch (c.cls) {
    case MatrixClass::Nilpotent:
      c.core = 0;
      c.k = rng.uniform_int(1, std::min<Index>(m, 4));
      break;
    case MatrixClass::EP:
    case MatrixClass::HermitianPSD:
      c.core = rng.uniform_int(1, m);
      c.k = c.core == m ? 0 : 1;
      break;
    default:
      c.core = rng.uniform_int(1, m);
      c.k = c.core == m ? 0 : rng.uniform_int(1, std::min<Index>(m - c.core, 4));
      break;
  }
  c.A = gen_structured(m, c.core, c.k, c.cls, rng);
  return c;
}

FuzzOutcome run_fuzz(const FuzzConfig& cfg, const std::string& command) {
  cfg.tol.validate();
  if (cfg.n < 1) throw InputError("fuzz: --n must be positive");
  if (cfg.draws < 1) throw InputError("fuzz: --draws must be positive");
  if (cfg.max_size < 2) throw InputError("fuzz: --max-size must be at least 2");

  using Clock = std::chrono::steady_clock;
  const auto t0 = Clock::now();
  Json suites_out = Json::array();
  Json timing = Json::object();
  bool pass = true;
  const auto& table = suites();
  for (const std::string& name : cfg.suites) {
    const auto pos = std::find_if(table.begin(), table.end(), [&](const auto& e) { return e.first == name; });
    if (pos == table.end()) throw InputError("unknown fuzz suite '" + name + "'");
    const auto slot = static_cast<std::uint64_t>(pos - table.begin());
    const Rng base(Rng::mix(cfg.seed, slot));
    const auto ts = Clock::now();
    SuiteAgg agg;
    for (int i = 0; i < cfg.n; ++i) {
      Rng rng = base.fork(static_cast<std::uint64_t>(i));
      Iter it(agg, i, rng.seed());
      try {
        pos->second(it, rng, cfg, i);
      } catch (const std::exception& e) {
        it.error(e);
      }
      it.finish();
    }
    pass = pass && agg.pass();
    suites_out.push_back(suite_json(name, agg));
    timing[name] = std::chrono::duration<double>(Clock::now() - ts).count();
  }
  timing["total"] = std::chrono::duration<double>(Clock::now() - t0).count();

  FuzzOutcome out;
  out.pass = pass;
  out.report = {{"schema", 1},
                {"command", command},
                {"seed", cfg.seed},
                {"rng", Rng::algorithm},
                {"n", cfg.n},
                {"max_size", cfg.max_size},
                {"draws", cfg.draws},
                {"tolerance", tolerance_to_json(cfg.tol)},
                {"suites", std::move(suites_out)},
                {"verdict", pass ? "pass" : "fail"},
                {"timing", std::move(timing)}};
  return out;
}

Json run_report(const std::string& command, std::uint64_t seed, const Tolerance& tol,
                const std::vector<CheckReport>& reports, const Json& counterexamples, double seconds) {
  Json reps = Json::array();
  bool pass = true;
  for (const auto& r : reports) {
    reps.push_back(report_to_json(r));
    pass = pass && r.overall();
  }
  return {{"schema", 1},
          {"command", command},
          {"seed", seed},
          {"tolerance", tolerance_to_json(tol)},
          {"reports", std::move(reps)},
          {"counterexamples", counterexamples},
          {"verdict", pass ? "pass" : "fail"},
          {"timing", {{"seconds", seconds}}}};
}

}  // namespace gdstar
