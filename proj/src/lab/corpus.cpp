#include "reslab/lab/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

namespace reslab::lab {

namespace {

ScalarHerglotzModel random_ac_model(CorpusRng& rng, int kind) {
  switch (kind) {
    case 0:
      return ScalarHerglotzModel::cauchy(rng.uniform(-1.0, 1.0), rng.uniform(0.5, 2.0),
                                         rng.uniform(0.5, 2.0));
    case 1:
      return ScalarHerglotzModel::semicircle(rng.uniform(1.5, 3.0), rng.uniform(0.5, 2.0));
    default: {
      const double a = rng.uniform(-2.0, 0.0);
      return ScalarHerglotzModel::uniform(a, a + rng.uniform(1.0, 3.0), rng.uniform(0.5, 2.0));
    }
  }
}

// An energy well inside the absolutely continuous support of `kind`.
double interior_energy(CorpusRng& rng, const ScalarHerglotzModel& model) {
  using M = ScalarHerglotzModel;
  const auto& v = model.variant();
  if (const auto* c = std::get_if<M::Cauchy>(&v)) return c->center + rng.uniform(-2.0, 2.0);
  if (const auto* s = std::get_if<M::Semicircle>(&v)) return rng.uniform(-0.8, 0.8) * s->halfwidth;
  const auto& u = std::get<M::Uniform>(v);
  return u.a + (u.b - u.a) * rng.uniform(0.1, 0.9);
}

ComplexMatrix random_psd(CorpusRng& rng, int k, int rank) {
  ComplexMatrix g(k, rank);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < rank; ++j) g(i, j) = Complex{rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  }
  ComplexMatrix c = g * g.adjoint() / static_cast<double>(rank);
  // Exact Hermitian symmetry after rounding.
  return 0.5 * (c + c.adjoint());
}

}  // namespace

std::uint64_t CorpusRng::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double CorpusRng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int CorpusRng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next() % span);
}

std::uint64_t seed_from_env() {
  const char* raw = std::getenv("LAB_SEED");
  if (raw == nullptr || *raw == '\0') return 0;
  try {
    return std::stoull(raw);
  } catch (const std::exception&) {
    return 0;
  }
}

std::vector<RankOneCase> rank_one_corpus(CorpusRng& rng, int count) {
  std::vector<RankOneCase> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    const int kind = i % 4;
    if (kind < 3) {
      auto model = random_ac_model(rng, kind);
      const double lambda = interior_energy(rng, model);
      out.push_back({std::move(model), lambda});
      continue;
    }
    // Combination of a Cauchy and a semicircle, evaluated inside both supports.
    auto semi = ScalarHerglotzModel::semicircle(rng.uniform(1.5, 3.0));
    const double lambda = interior_energy(rng, semi);
    std::vector<ScalarHerglotzModel::Term> terms{
        {rng.uniform(0.2, 1.0), random_ac_model(rng, 0)},
        {rng.uniform(0.2, 1.0), std::move(semi)},
    };
    out.push_back({ScalarHerglotzModel::combination(std::move(terms)), lambda});
  }
  return out;
}

std::vector<RankOneTriple> rank_one_triples(CorpusRng& rng, int count) {
  auto cases = rank_one_corpus(rng, count);
  std::vector<RankOneTriple> out;
  out.reserve(count);
  for (auto& c : cases) {
    const double r = rng.uniform(-4.0, 4.0);
    out.push_back({std::move(c), r});
  }
  return out;
}

std::vector<MatrixCase> matrix_corpus(CorpusRng& rng, int count) {
  std::vector<MatrixCase> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    const int k = 1 + n % 3;
    std::vector<int> signature(k, 1);
    if (n % 2 == 1) {
      for (auto& s : signature) s = rng.uniform(0.0, 1.0) < 0.5 ? -1 : 1;
      signature[rng.integer(0, k - 1)] = -1;
    }

    std::vector<MatrixHerglotzModel::Term> terms;
    ComplexMatrix base = random_psd(rng, k, k);
    base += 0.2 * ComplexMatrix::Identity(k, k);
    terms.push_back({base, random_ac_model(rng, 0)});
    const int extra = rng.integer(1, 2);
    for (int t = 0; t < extra; ++t) {
      terms.push_back({random_psd(rng, k, rng.integer(1, k)), random_ac_model(rng, rng.integer(1, 2))});
    }
    MatrixHerglotzModel model(std::move(signature), std::move(terms));

    MatrixCase mc{std::move(model), {}, 0.0, 0.0};
    while (mc.lambdas.size() < 5) {
      const double lambda = rng.uniform(-2.5, 2.5);
      bool clear = !mc.model.is_excluded(lambda);
      for (const auto& t : mc.model.terms()) {
        for (double p : t.model.excluded_points()) clear = clear && std::abs(lambda - p) > 1e-2;
      }
      if (clear) mc.lambdas.push_back(lambda);
    }
    std::sort(mc.lambdas.begin(), mc.lambdas.end());
    mc.a = rng.uniform(-3.0, 2.5);
    mc.b = rng.uniform(mc.a + 0.5, 3.0);
    out.push_back(std::move(mc));
  }
  return out;
}

std::vector<Scenario> generated_scenarios(std::uint64_t seed) {
  CorpusRng rng(seed);
  std::vector<Scenario> out;

  const auto cases = rank_one_corpus(rng, 12);
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const double a = rng.uniform(-3.0, 0.0);
    out.push_back(Scenario{
        .name = "generated_rank_one_" + std::to_string(i),
        .model = cases[i].model,
        .lambda_grid = {cases[i].lambda},
        .a = a,
        .b = a + rng.uniform(0.5, 3.0),
        .checks = {Check::kEq1, Check::kLorentzian, Check::kTraceIdentity, Check::kTotalVariation,
                   Check::kEq2, Check::kSsf, Check::kContinuation, Check::kHerglotz},
        .tolerances = {},
    });
  }

  const auto matrices = matrix_corpus(rng, 8);
  for (std::size_t i = 0; i < matrices.size(); ++i) {
    out.push_back(Scenario{
        .name = "generated_matrix_" + std::to_string(i),
        .model = matrices[i].model,
        .lambda_grid = matrices[i].lambdas,
        .a = matrices[i].a,
        .b = matrices[i].b,
        .checks = {Check::kEq2, Check::kSsf, Check::kHerglotz},
        .tolerances = {},
    });
  }
  return out;
}

std::vector<Scenario> load_scenario_dir(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  if (!std::filesystem::is_directory(dir)) throw ConfigError("scenario directory not found: " + dir.string());
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Scenario> out;
  for (const auto& f : files) out.push_back(load_scenario(f));
  return out;
}

}  // namespace reslab::lab
