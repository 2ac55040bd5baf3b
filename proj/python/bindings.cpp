#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gdstar/decomp.hpp"
#include "gdstar/geninv.hpp"
#include "gdstar/harness.hpp"
#include "gdstar/io.hpp"
#include "gdstar/laws.hpp"
#include "gdstar/orders.hpp"
#include "gdstar/perturb.hpp"
#include "gdstar/solve.hpp"
#include "gdstar/starfam.hpp"

namespace py = pybind11;
using namespace gdstar;

namespace {

// Reports cross the boundary as JSON text; the Python side parses them.
std::string dump(const CheckReport& rep) { return report_to_json(rep).dump(); }

Tolerance make_tol(double rtol, double atol, double rank_rtol) {
  Tolerance t;
  t.residual_rtol = rtol;
  t.residual_atol = atol;
  t.rank_rtol = rank_rtol;
  t.validate();
  return t;
}

GDRoute route_from(const std::string& s) {
  if (s == "unitary") return GDRoute::Unitary;
  if (s == "similarity") return GDRoute::Similarity;
  throw InputError("route must be 'unitary' or 'similarity'");
}

CMat gd_draw(const CMat& A, std::uint64_t seed, const std::string& route, const Tolerance& tol) {
  const GDFamily fam(A, tol);
  Rng rng(seed);
  return fam.sample(fam.draw(rng), route_from(route));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "GD, GDMP, MPGD and GD-star inverses of dense complex matrices";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<InvalidWitness>(m, "InvalidWitness", error.ptr());
  py::register_exception<IndexTooLarge>(m, "IndexTooLarge", error.ptr());
  py::register_exception<NotApplicable>(m, "NotApplicable", error.ptr());
  py::register_exception<Inconsistent>(m, "Inconsistent", error.ptr());
  py::register_exception<NotErgodic>(m, "NotErgodic", error.ptr());
  py::register_exception<ContractionViolated>(m, "ContractionViolated", error.ptr());
  py::register_exception<HypothesisViolated>(m, "HypothesisViolated", error.ptr());

  py::class_<Tolerance>(m, "Tolerance")
      .def(py::init(&make_tol), py::arg("rtol") = 1e-9, py::arg("atol") = 1e-12, py::arg("rank_rtol") = 1e-10)
      .def_readwrite("residual_rtol", &Tolerance::residual_rtol)
      .def_readwrite("residual_atol", &Tolerance::residual_atol)
      .def_readwrite("rank_rtol", &Tolerance::rank_rtol)
      .def_readwrite("eig_zero_rtol", &Tolerance::eig_zero_rtol);

  const auto A_ = py::arg("A");
  const auto X_ = py::arg("X");
  const auto tol_ = py::arg("tol") = Tolerance{};

  m.def("rank", [](const CMat& A, const Tolerance& t) { return rank(A, t); }, A_, tol_);
  m.def("index", [](const CMat& A, const Tolerance& t) { return index(A, t); }, A_, tol_);
  m.def(
      "classify",
      [](const CMat& A, const Tolerance& t) {
        const StructureFlags f = classify(A, t);
        py::dict d;
        d["hermitian"] = f.hermitian;
        d["ep"] = f.ep;
        d["partial_isometry"] = f.partial_isometry;
        d["normal"] = f.normal;
        d["nilpotent"] = f.nilpotent;
        d["nonsingular"] = f.nonsingular;
        d["index"] = f.index;
        return d;
      },
      A_, tol_);

  m.def("moore_penrose", &moore_penrose, A_, tol_);
  m.def("drazin", py::overload_cast<const CMat&, const Tolerance&>(&drazin), A_, tol_);
  m.def("group_inverse", &group_inverse, A_, tol_);
  m.def("drazin_star", &drazin_star, A_, tol_);
  m.def("gd_sample", &gd_draw, A_, py::arg("seed") = 0, py::arg("route") = "unitary", tol_,
        "A GD inverse drawn from the family of A with the given seed.");
  m.def(
      "gd_canonical", [](const CMat& A, const Tolerance& t) { return GDFamily(A, t).canonical(); }, A_, tol_);
  m.def("gdmp", &gdmp, A_, X_, tol_);
  m.def("mpgd", &mpgd, A_, X_, tol_);
  m.def("gd_star", &gd_star, A_, X_, tol_);
  m.def("dual_gd_star", &dual_gd_star, A_, X_, tol_);
  m.def("gd_star_one", &gd_star_one, A_, X_, tol_);

  m.def(
      "gd_verify", [](const CMat& A, const CMat& X, const Tolerance& t) { return dump(gd_verify(A, X, t)); }, A_,
      X_, tol_);
  m.def(
      "verify_penrose", [](const CMat& A, const CMat& X, const Tolerance& t) { return dump(verify_penrose(A, X, t)); },
      A_, X_, tol_);
  m.def(
      "verify_suite",
      [](const std::string& suite, const CMat& A, const CMat& X, const Tolerance& t) {
        if (suite == "sa3") return dump(verify_lemma_sa3(A, X, t));
        if (suite == "dual") return dump(verify_dual_lemma(A, X, t));
        if (suite == "star-one") return dump(verify_star_one_lemma(A, X, t));
        if (suite == "special") return dump(special_class_identities(A, X, t));
        if (suite == "spectral") return dump(spectral_identities(A, X, t));
        throw InputError("unknown suite '" + suite + "'");
      },
      py::arg("suite"), A_, X_, tol_);

  m.def(
      "core_nilpotent",
      [](const CMat& A, const std::string& form, const Tolerance& t) {
        if (form != "unitary" && form != "similarity") throw InputError("form must be 'unitary' or 'similarity'");
        const CoreNilpotent cn = core_nilpotent(A, t, form == "unitary" ? CNForm::Unitary : CNForm::Similarity);
        py::dict d;
        d["P"] = cn.P;
        d["Pinv"] = cn.Pinv;
        d["C"] = cn.C;
        d["S"] = cn.S;
        d["N"] = cn.N;
        d["k"] = cn.k;
        return d;
      },
      A_, py::arg("form") = "unitary", tol_);
  m.def(
      "hartwig_spindelboeck",
      [](const CMat& A, const Tolerance& t) {
        const HSFactors hs = hartwig_spindelboeck(A, t);
        py::dict d;
        d["U"] = hs.U;
        d["sigma"] = hs.sigma;
        d["K"] = hs.K;
        d["L"] = hs.L;
        return d;
      },
      A_, tol_);

  m.def(
      "leq",
      [](const CMat& A, const CMat& B, const std::string& relation, std::optional<CMat> witness,
         const Tolerance& t) {
        const OrderResult r = leq(A, B, {order_kind_from_string(relation), std::move(witness)}, t);
        return py::make_tuple(r.holds, dump(r.report));
      },
      A_, py::arg("B"), py::arg("relation"), py::arg("witness") = py::none(), tol_);

  m.def(
      "run_law",
      [](const std::string& name, std::vector<CMat> mats, std::vector<CMat> witnesses, const Tolerance& t) {
        return dump(run_law(law_from_string(name), {std::move(mats), std::move(witnesses)}, t));
      },
      py::arg("name"), py::arg("matrices"), py::arg("witnesses"), tol_);
  m.def("law_names", [] {
    std::vector<std::string> out;
    for (const LawSpec& s : all_laws()) out.push_back(to_string(s));
    return out;
  });

  m.def(
      "perturbed_one_inverse",
      [](const CMat& A, const CMat& X, const CMat& E, const Tolerance& t) {
        const PerturbedInverse p = perturbed_one_inverse(A, X, E, t);
        return py::make_tuple(p.G, dump(p.report));
      },
      A_, X_, py::arg("E"), tol_);

  m.def(
      "solve",
      [](const std::string& mode, const CMat& A, const CVec& b, const CMat& X, std::optional<CVec> z,
         const Tolerance& t) {
        Solution s;
        if (mode == "lsq") {
          s = lsq_gdmp(A, b, X, t);
        } else if (mode == "minnorm") {
          s = minnorm_mpgd(A, b, X, t);
        } else if (mode == "gram") {
          s = gram_solve(A, b, X, z ? *z : CVec(CVec::Zero(A.cols())), t);
        } else {
          throw InputError("mode must be lsq, minnorm or gram");
        }
        return py::make_tuple(s.x, dump(s.report));
      },
      py::arg("mode"), A_, py::arg("b"), X_, py::arg("z") = py::none(), tol_);

  m.def(
      "markov_stationary",
      [](const Eigen::MatrixXd& T, std::uint64_t seed, int draws, const Tolerance& t) {
        Rng rng(seed);
        const Stationary s = markov_stationary(T, rng, t, draws);
        return py::make_tuple(s.w, dump(s.report));
      },
      py::arg("T"), py::arg("seed") = 0, py::arg("draws") = 5, tol_);

  m.def(
      "fuzz",
      [](const std::string& suites, int n, Index max_size, std::uint64_t seed, int draws, const Tolerance& t) {
        FuzzConfig cfg;
        cfg.suites = parse_suite_list(suites);
        cfg.n = n;
        cfg.max_size = max_size;
        cfg.seed = seed;
        cfg.draws = draws;
        cfg.tol = t;
        FuzzOutcome out;
        {
          py::gil_scoped_release release;
          out = run_fuzz(cfg, "python fuzz");
        }
        return out.report.dump();
      },
      py::arg("suites") = "all", py::arg("n") = 200, py::arg("max_size") = 8, py::arg("seed") = 7,
      py::arg("draws") = 3, tol_);
}
