#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "reslab/lab/scenario.hpp"

namespace reslab::lab {

/// The single seeded generator behind every random corpus (SplitMix64, so
/// draws are identical across platforms and standard libraries).
class CorpusRng {
 public:
  explicit CorpusRng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  double uniform(double lo, double hi);
  int integer(int lo, int hi);  // inclusive

 private:
  std::uint64_t state_;
};

/// LAB_SEED from the environment, default 0.
std::uint64_t seed_from_env();

struct RankOneCase {
  ScalarHerglotzModel model;
  double lambda;
};

struct RankOneTriple {
  RankOneCase problem;
  double r;
};

struct MatrixCase {
  MatrixHerglotzModel model;
  std::vector<double> lambdas;  // admissible energies
  double a;
  double b;
};

/// Rank-one problems whose resonance point has beta > 0.
std::vector<RankOneCase> rank_one_corpus(CorpusRng& rng, int count);
std::vector<RankOneTriple> rank_one_triples(CorpusRng& rng, int count);

/// Matrix problems with k in {1, 2, 3}, both signatures, a full-rank
/// absolutely continuous term (so no real resonance points), five energies
/// each and a coupling interval inside [-3, 3].
std::vector<MatrixCase> matrix_corpus(CorpusRng& rng, int count);

/// Generated scenarios exercising the random corpora through the runner.
std::vector<Scenario> generated_scenarios(std::uint64_t seed);

/// Bundled scenario files (*.json) in `dir`, sorted by file name.
std::vector<Scenario> load_scenario_dir(const std::filesystem::path& dir);

}  // namespace reslab::lab
