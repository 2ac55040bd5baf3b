#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gdstar/io.hpp"
#include "gdstar/rng.hpp"

namespace gdstar {

struct FuzzConfig {
  std::vector<std::string> suites;
  int n = 200;
  Index max_size = 8;
  std::uint64_t seed = 7;
  /// GD witness draws per corpus matrix.
  int draws = 3;
  Tolerance tol;
};

/// Every suite the harness knows, in report order.
const std::vector<std::string>& fuzz_suite_names();

/// "all" or a comma-separated list. Throws InputError on unknown names.
std::vector<std::string> parse_suite_list(std::string_view text);

struct CorpusMatrix {
  CMat A;
  MatrixClass cls = MatrixClass::Generic;
  Index core = 0;
  Index k = 0;
};

/// Corpus entry i: the class cycles through generic, EP, partial isometry,
/// nilpotent and Hermitian PSD; size in [2, max_size], index at most 4.
CorpusMatrix corpus_matrix(Index max_size, int i, Rng& rng);

/// U diag(C, N) U* with U unitary, C invertible of size r and N nilpotent of index k.
CMat block_diagonal(Index m, Index r, Index k, Rng& rng);

/// A = S diag(C, 0) S^-1 and a commuting B = S diag(C or aC + bI, E) S^-1.
/// With unitary S, A is EP.
std::pair<CMat, CMat> index_one_pair(Index m, bool unitary, Rng& rng);

struct FuzzOutcome {
  Json report;
  bool pass = false;
};

/// Runs cfg.n iterations of each suite, iteration i of a suite using the
/// stream fork(i) of a per-suite stream derived from cfg.seed. Everything
/// except the "timing" member is a function of the configuration alone.
FuzzOutcome run_fuzz(const FuzzConfig& cfg, const std::string& command);

/// Report for a single command: {"schema": 1, command, seed, tolerance,
/// reports, counterexamples, verdict, timing}.
Json run_report(const std::string& command, std::uint64_t seed, const Tolerance& tol,
                const std::vector<CheckReport>& reports, const Json& counterexamples, double seconds);

}  // namespace gdstar
