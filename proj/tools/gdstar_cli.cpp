#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "gdstar/decomp.hpp"
#include "gdstar/geninv.hpp"
#include "gdstar/harness.hpp"
#include "gdstar/io.hpp"
#include "gdstar/laws.hpp"
#include "gdstar/orders.hpp"
#include "gdstar/solve.hpp"
#include "gdstar/starfam.hpp"

using namespace gdstar;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Common {
  double rtol = Tolerance{}.residual_rtol;
  double atol = Tolerance{}.residual_atol;
  double rank_rtol = Tolerance{}.rank_rtol;
  std::uint64_t seed = 0;
  std::string report;

  Tolerance tol() const {
    Tolerance t;
    t.residual_rtol = rtol;
    t.residual_atol = atol;
    t.rank_rtol = rank_rtol;
    t.validate();
    return t;
  }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void emit(const Json& j, const std::string& path) {
  if (path.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(path, j);
  }
}

/// GD witness from --witness (validated) or drawn from the family with --seed.
CMat gd_witness(const CMat& A, const std::string& path, std::uint64_t seed, const Tolerance& tol) {
  if (!path.empty()) {
    CMat X = read_matrix(path);
    require_gd_witness(A, X, tol);
    return X;
  }
  const GDFamily fam(A, tol);
  Rng rng(seed);
  return fam.sample(fam.draw(rng));
}

Json counterexample(const std::map<std::string, CMat>& inputs, std::uint64_t seed) {
  Json in = Json::object();
  for (const auto& [name, M] : inputs) in[name] = matrix_to_json(M);
  return {{"seed", seed}, {"inputs", in}};
}

/// Writes the run report and maps the verdict to an exit code.
int finish(const std::string& command, const Common& c, const Tolerance& tol, const std::vector<CheckReport>& reps,
           const std::map<std::string, CMat>& inputs, Clock::time_point t0, Json extra = Json::object()) {
  bool pass = true;
  for (const auto& r : reps) pass = pass && r.overall();
  Json cex = Json::array();
  if (!pass) cex.push_back(counterexample(inputs, c.seed));
  Json rep = run_report(command, c.seed, tol, reps, cex, since(t0));
  for (auto& [k, v] : extra.items()) rep[k] = v;
  emit(rep, c.report);
  return pass ? kPass : kFail;
}

std::string join_argv(int argc, char** argv) {
  std::string out;
  for (int i = 1; i < argc; ++i) {
    if (i > 1) out += ' ';
    out += argv[i];
  }
  return out;
}

const std::vector<std::string> kComputeWhat = {"mp",      "drazin",      "group",   "gd",           "gdmp",
                                               "mpgd",    "drazin-star", "gd-star", "dual-gd-star", "gd-star-one"};
const std::vector<std::string> kForms = {"core-nilpotent", "block-diagonal", "hs"};
const std::vector<std::string> kVerifySuites = {"penrose", "gd",      "gdmp",    "mpgd",    "sa3",
                                                "dual",    "star-one", "special", "spectral"};
const std::vector<std::string> kRelations = {"minus", "star", "group", "drazin", "gd", "gd-star", "d-dagger"};
const std::vector<std::string> kSolveModes = {"lsq", "minnorm", "gram"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized inverses, GD-star matrices and matrix orders"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--rtol", c.rtol, "relative residual tolerance");
  app.add_option("--atol", c.atol, "absolute residual tolerance");
  app.add_option("--rank-rtol", c.rank_rtol, "relative singular value cutoff");

  // compute
  auto* compute = app.add_subcommand("compute", "compute a generalized inverse or GD-star matrix");
  std::string what, in_path, out_path, witness_path;
  compute->add_option("--what", what)->required()->check(CLI::IsMember(kComputeWhat));
  compute->add_option("--in", in_path)->required();
  auto* cw = compute->add_option("--witness", witness_path, "GD inverse of A");
  compute->add_option("--seed", c.seed, "seed for the GD draw")->excludes(cw);
  compute->add_option("--out", out_path);

  // decompose
  auto* decompose = app.add_subcommand("decompose", "core-nilpotent, block-diagonal or HS factors");
  std::string form;
  decompose->add_option("--form", form)->required()->check(CLI::IsMember(kForms));
  decompose->add_option("--in", in_path)->required();
  decompose->add_option("--out", out_path);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite on one matrix");
  std::string suite;
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember(kVerifySuites));
  verify->add_option("--in", in_path)->required();
  auto* vw = verify->add_option("--witness", witness_path);
  verify->add_option("--seed", c.seed)->excludes(vw);
  verify->add_option("--report", c.report);

  // order
  auto* order = app.add_subcommand("order", "test A <= B under a matrix order");
  std::string relation;
  std::vector<std::string> mats;
  bool search = false;
  order->add_option("--relation", relation)->required()->check(CLI::IsMember(kRelations));
  order->add_option("matrices", mats, "A.json B.json")->required()->expected(2);
  auto* ow = order->add_option("--witness", witness_path);
  order->add_flag("--search", search, "search the GD family for a GD-star witness")->excludes(ow);
  order->add_option("--seed", c.seed);
  order->add_option("--report", c.report);

  // law
  auto* law = app.add_subcommand("law", "check an order law or additive property");
  std::string law_name;
  std::vector<std::string> law_witnesses;
  law->add_option("--name", law_name)->required();
  law->add_option("matrices", mats, "A.json B.json [C.json]")->required()->expected(2, 3);
  law->add_option("--witness", law_witnesses, "GD inverse per matrix, in order");
  law->add_option("--seed", c.seed);
  law->add_option("--report", c.report);

  // solve
  auto* solve = app.add_subcommand("solve", "least-squares, minimum-norm or Ax = AA*b solutions");
  std::string mode, b_path, z_path;
  solve->add_option("--mode", mode)->required()->check(CLI::IsMember(kSolveModes));
  solve->add_option("--A", in_path)->required();
  solve->add_option("--b", b_path)->required();
  solve->add_option("--z", z_path);
  auto* sw = solve->add_option("--witness", witness_path);
  solve->add_option("--seed", c.seed)->excludes(sw);
  solve->add_option("--out", out_path);
  solve->add_option("--report", c.report);

  // markov
  auto* markov = app.add_subcommand("markov", "stationary distribution of an ergodic chain");
  markov->add_option("--T", in_path)->required();
  markov->add_option("--seed", c.seed);
  markov->add_option("--out", out_path);
  markov->add_option("--report", c.report);

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "run the property suites on random structured inputs");
  FuzzConfig fc;
  std::string suites = "all";
  fuzz->add_option("--suites", suites);
  fuzz->add_option("--n", fc.n);
  fuzz->add_option("--max-size", fc.max_size);
  fuzz->add_option("--draws", fc.draws);
  fuzz->add_option("--seed", fc.seed);
  fuzz->add_option("--report", c.report);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kPass : kUsage;
  }

  const std::string command = join_argv(argc, argv);
  const auto t0 = Clock::now();
  try {
    const Tolerance tol = c.tol();

    if (*compute) {
      const CMat A = read_matrix(in_path);
      require_square(A, "compute");
      CMat X;
      if (what == "mp") {
        X = moore_penrose(A, tol);
      } else if (what == "drazin") {
        X = drazin(A, tol);
      } else if (what == "group") {
        X = group_inverse(A, tol);
      } else if (what == "drazin-star") {
        X = drazin_star(A, tol);
      } else {
        const CMat G = gd_witness(A, witness_path, c.seed, tol);
        if (what == "gd") X = G;
        if (what == "gdmp") X = gdmp(A, G, tol);
        if (what == "mpgd") X = mpgd(A, G, tol);
        if (what == "gd-star") X = gd_star(A, G, tol);
        if (what == "dual-gd-star") X = dual_gd_star(A, G, tol);
        if (what == "gd-star-one") X = gd_star_one(A, G, tol);
      }
      if (out_path.empty()) {
        std::cout << matrix_to_json(X).dump(2) << '\n';
      } else {
        write_matrix(out_path, X);
      }
      return kPass;
    }

    if (*decompose) {
      const CMat A = read_matrix(in_path);
      Json j;
      if (form == "hs") {
        const HSFactors hs = hartwig_spindelboeck(A, tol);
        j = {{"form", form},
             {"r", hs.r},
             {"U", matrix_to_json(hs.U)},
             {"sigma", std::vector<double>(hs.sigma.data(), hs.sigma.data() + hs.sigma.size())},
             {"K", matrix_to_json(hs.K)},
             {"L", matrix_to_json(hs.L)}};
      } else {
        const CoreNilpotent cn =
            core_nilpotent(A, tol, form == "core-nilpotent" ? CNForm::Unitary : CNForm::Similarity);
        j = {{"form", form},          {"k", cn.k},
             {"r", cn.r()},           {"P", matrix_to_json(cn.P)},
             {"Pinv", matrix_to_json(cn.Pinv)}, {"C", matrix_to_json(cn.C)},
             {"S", matrix_to_json(cn.S)}, {"N", matrix_to_json(cn.N)},
             {"near_threshold", cn.near_threshold}};
      }
      emit(j, out_path);
      return kPass;
    }

    if (*verify) {
      const CMat A = read_matrix(in_path);
      require_square(A, "verify");
      CMat X;
      CheckReport rep;
      if (suite == "penrose") {
        X = witness_path.empty() ? moore_penrose(A, tol) : read_matrix(witness_path);
        rep = verify_penrose(A, X, tol);
      } else if (suite == "gd") {
        X = witness_path.empty() ? gd_witness(A, "", c.seed, tol) : read_matrix(witness_path);
        rep = gd_verify(A, X, tol);
      } else if (suite == "gdmp" || suite == "mpgd") {
        if (witness_path.empty()) {
          const CMat G = gd_witness(A, "", c.seed, tol);
          X = suite == "gdmp" ? gdmp(A, G, tol) : mpgd(A, G, tol);
        } else {
          X = read_matrix(witness_path);
        }
        rep = suite == "gdmp" ? verify_gdmp_system(A, X, tol) : verify_mpgd_system(A, X, tol);
      } else {
        X = gd_witness(A, witness_path, c.seed, tol);
        if (suite == "sa3") rep = verify_lemma_sa3(A, X, tol);
        if (suite == "dual") rep = verify_dual_lemma(A, X, tol);
        if (suite == "star-one") rep = verify_star_one_lemma(A, X, tol);
        if (suite == "special") rep = special_class_identities(A, X, tol);
        if (suite == "spectral") rep = spectral_identities(A, X, tol);
      }
      return finish(command, c, tol, {rep}, {{"A", A}, {"X", X}}, t0);
    }

    if (*order) {
      const CMat A = read_matrix(mats[0]);
      const CMat B = read_matrix(mats[1]);
      const OrderKind kind = order_kind_from_string(relation);
      OrderRelation rel{kind, std::nullopt};
      Json extra = Json::object();
      if (!witness_path.empty()) rel.witness = read_matrix(witness_path);
      if (search) {
        if (kind != OrderKind::GDStar) throw InputError("--search applies to the gd-star relation only");
        Rng rng(c.seed);
        const WitnessSearch ws = search_gd_star_witness(A, B, rng, 20, tol);
        extra["search"] = {{"found", ws.found}, {"tried", ws.tried}};
        if (!ws.found) {
          CheckReport rep;
          rep.suite = "gd-star";
          rep.check_flag("witness found", false, 0.0, 0.0, "inconclusive: no witness among the candidates tried");
          return finish(command, c, tol, {rep}, {{"A", A}, {"B", B}}, t0, extra);
        }
        rel.witness = ws.witness;
      }
      const OrderResult res = leq(A, B, rel, tol);
      extra["holds"] = res.holds;
      std::map<std::string, CMat> inputs{{"A", A}, {"B", B}};
      if (rel.witness) inputs.emplace("witness", *rel.witness);
      return finish(command, c, tol, {res.report}, inputs, t0, extra);
    }

    if (*law) {
      const LawSpec spec = law_from_string(law_name);
      if (static_cast<int>(mats.size()) != spec.arity()) {
        throw InputError("law '" + law_name + "' takes " + std::to_string(spec.arity()) + " matrices");
      }
      if (!law_witnesses.empty() && law_witnesses.size() != mats.size()) {
        throw InputError("give one --witness per matrix or none");
      }
      LawInstance inst;
      std::map<std::string, CMat> inputs;
      for (std::size_t j = 0; j < mats.size(); ++j) {
        inst.mats.push_back(read_matrix(mats[j]));
        const CMat& M = inst.mats.back();
        require_square(M, "law");
        inst.witnesses.push_back(law_witnesses.empty() ? gd_witness(M, "", Rng::mix(c.seed, j), tol)
                                                       : read_matrix(law_witnesses[j]));
        inputs.emplace("M" + std::to_string(j), M);
        inputs.emplace("X" + std::to_string(j), inst.witnesses.back());
      }
      return finish(command, c, tol, {run_law(spec, inst, tol)}, inputs, t0);
    }

    if (*solve) {
      const CMat A = read_matrix(in_path);
      require_square(A, "solve");
      const CVec b = read_vector(b_path);
      const CMat X = gd_witness(A, witness_path, c.seed, tol);
      Solution sol;
      if (mode == "lsq") {
        sol = lsq_gdmp(A, b, X, tol);
      } else if (mode == "minnorm") {
        sol = minnorm_mpgd(A, b, X, tol);
      } else {
        const CVec z = z_path.empty() ? CVec(CVec::Zero(A.cols())) : read_vector(z_path);
        sol = gram_solve(A, b, X, z, tol);
      }
      if (!out_path.empty()) write_matrix(out_path, sol.x);
      return finish(command, c, tol, {sol.report}, {{"A", A}, {"b", b}, {"X", X}}, t0,
                    {{"x", matrix_to_json(sol.x)}});
    }

    if (*markov) {
      const CMat Tc = read_matrix(in_path);
      if (Tc.imag().cwiseAbs().maxCoeff() > 0.0) throw InputError("transition matrix must be real");
      const Eigen::MatrixXd T = Tc.real();
      Rng rng(c.seed);
      const Stationary st = markov_stationary(T, rng, tol);
      if (!out_path.empty()) write_matrix(out_path, st.w.cast<Complex>());
      return finish(command, c, tol, {st.report}, {{"T", Tc}}, t0,
                    {{"w", std::vector<double>(st.w.data(), st.w.data() + st.w.size())}});
    }

    if (*fuzz) {
      fc.suites = parse_suite_list(suites);
      fc.tol = tol;
      const FuzzOutcome out = run_fuzz(fc, command);
      emit(out.report, c.report);
      std::cerr << "fuzz: " << (out.pass ? "pass" : "FAIL") << " (" << fc.suites.size() << " suites, n=" << fc.n
                << ")\n";
      return out.pass ? kPass : kFail;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
