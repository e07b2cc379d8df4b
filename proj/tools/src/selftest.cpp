#include "selftest.hpp"

#include <functional>
#include <future>
#include <string>
#include <vector>

#include "triad/contractions.hpp"
#include "triad/criteria.hpp"
#include "triad/filter.hpp"
#include "triad/generators.hpp"
#include "triad/reducibility.hpp"
#include "triad/rng.hpp"

namespace triad::cli {

namespace {

struct SuiteResult {
  std::string name;
  int cases = 0;
  double worst = 0.0;
  double limit = 0.0;
  int failures = 0;
};

using Suite = std::function<SuiteResult(int seeds, std::uint64_t seed, const Tolerances& tol)>;

BipartiteOperator rotated_classical(int k, Rng& rng) {
  const Matrix w = kron(random_unitary(rng, k), random_unitary(rng, k));
  return BipartiteOperator(k, k, w * canonical("classical_diag", k).matrix() * w.adjoint());
}

SuiteResult identities(int seeds, std::uint64_t seed, const Tolerances&) {
  SuiteResult r{"realignment_identities", 0, 0.0, 1e-11, 0};
  for (int k = 2; k <= 3; ++k) {
    for (int s = 0; s < seeds; ++s) {
      Rng rng(splitmix64(seed + 1000u * static_cast<unsigned>(k) + static_cast<unsigned>(s)));
      IdentityInputs in{BipartiteOperator(k, k, gaussian_matrix(rng, k * k, k * k)),
                        BipartiteOperator(k, k, gaussian_matrix(rng, k * k, k * k)),
                        LocalOperator(gaussian_matrix(rng, k, k)),
                        LocalOperator(gaussian_matrix(rng, k, k)),
                        LocalOperator(gaussian_matrix(rng, k, k)),
                        LocalOperator(gaussian_matrix(rng, k, k)),
                        gaussian_matrix(rng, k * k, 1).col(0),
                        gaussian_matrix(rng, k * k, 1).col(0)};
      for (const IdentityCheck& c : realignment_identities(in)) {
        ++r.cases;
        r.worst = std::max(r.worst, c.residual);
        if (c.residual > r.limit) ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult isometries(int seeds, std::uint64_t seed, const Tolerances&) {
  SuiteResult r{"contraction_isometry", 0, 0.0, 1e-12, 0};
  const std::vector<SlotPermutation> perms = {SlotPermutation::transposition(3, 4), SlotPermutation::transposition(1, 2),
                                              SlotPermutation::transposition(2, 3), SlotPermutation::transposition(2, 4)};
  for (int k = 2; k <= 3; ++k) {
    for (int s = 0; s < seeds; ++s) {
      Rng rng(splitmix64(seed + 7000u + 100u * static_cast<unsigned>(k) + static_cast<unsigned>(s)));
      const BipartiteOperator g(k, k, gaussian_matrix(rng, k * k, k * k));
      for (const SlotPermutation& p : perms) {
        const double d = std::abs(contraction_by_permutation(p, g).matrix().norm() - g.matrix().norm()) / g.matrix().norm();
        ++r.cases;
        r.worst = std::max(r.worst, d);
        if (d > r.limit) ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult bounds(int seeds, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult r{"spectral_bounds", 0, 0.0, tol.bound, 0};
  auto record = [&r](const BoundReport& b) {
    ++r.cases;
    const double deficit = std::max(0.0, -b.margin);
    r.worst = std::max(r.worst, deficit);
    if (!b.bound_holds) ++r.failures;
  };
  for (int k = 2; k <= 3; ++k) {
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t sd = seed + 20000u + 100u * static_cast<unsigned>(k) + static_cast<unsigned>(s);
      const BipartiteOperator g = random_density(k, 1 + s % (k * k), sd);
      record(bound_gamma_pt(g, tol));
      record(bound_realign_sq(g, tol));
      for (const BipartiteOperator& t : {random_spc(k, sd), random_invariant(k, sd), random_ppt(k, sd)}) {
        record(bound_triad(t, classify(t, tol), tol));
      }
    }
  }
  return r;
}

SuiteResult generator_classes(int seeds, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult r{"generator_classes", 0, 0.0, 0.0, 0};
  for (int k = 2; k <= 3; ++k) {
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t sd = seed + 30000u + 100u * static_cast<unsigned>(k) + static_cast<unsigned>(s);
      const bool ok = classify(random_separable(k, 3, sd).state, tol).ppt && classify(random_spc(k, sd), tol).spc &&
                      classify(random_invariant(k, sd), tol).invariant && classify(random_ppt(k, sd), tol).ppt;
      ++r.cases;
      if (!ok) ++r.failures;
    }
  }
  return r;
}

SuiteResult filters(int seeds, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult r{"filter_normal_forms", 0, 0.0, 1e-7, 0};
  FilterOptions opt;
  opt.tol = tol;
  for (int k = 2; k <= 3; ++k) {
    for (int s = 0; s < seeds; ++s) {
      const std::uint64_t sd = seed + 40000u + 100u * static_cast<unsigned>(k) + static_cast<unsigned>(s);
      for (const auto& [g, mode] : {std::pair{random_spc(k, sd), FilterMode::Symmetric},
                                    std::pair{random_invariant(k, sd), FilterMode::Conjugate}}) {
        const FilterResult f = sinkhorn_filter(g, mode, opt);
        const double top = std::abs(f.schmidt_of_normal_form.coefficients(0) - 1.0 / k);
        ++r.cases;
        r.worst = std::max(r.worst, top);
        if (!f.converged || top > r.limit) ++r.failures;
      }
    }
  }
  return r;
}

SuiteResult reducibility(int seeds, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult r{"decompose_reconstruction", 0, 0.0, 1e-8, 0};
  for (int k = 2; k <= 4; ++k) {
    for (int s = 0; s < seeds; ++s) {
      Rng rng(splitmix64(seed + 50000u + 100u * static_cast<unsigned>(k) + static_cast<unsigned>(s)));
      const DecompositionTree t = decompose(rotated_classical(k, rng), 0, tol);
      const double res = tree_reconstruction_residual(t);
      ++r.cases;
      r.worst = std::max(r.worst, res);
      if (res > r.limit || static_cast<int>(t.leaves().size()) != k) ++r.failures;
    }
  }
  return r;
}

SuiteResult extraction(int seeds, std::uint64_t seed, const Tolerances& tol) {
  SuiteResult r{"minimal_rank_extraction", 0, 0.0, 1e-7, 0};
  for (int k = 2; k <= 4; ++k) {
    for (int s = 0; s < seeds; ++s) {
      Rng rng(splitmix64(seed + 60000u + 100u * static_cast<unsigned>(k) + static_cast<unsigned>(s)));
      const BipartiteOperator g = rotated_classical(k, rng);
      const ExtractionResult e = minimal_rank_extract(g, classify(g, tol), tol);
      ++r.cases;
      r.worst = std::max(r.worst, e.reconstruction_residual);
      if (!e.ok) ++r.failures;
    }
  }
  return r;
}

}  // namespace

Json run_selftest(bool quick, std::uint64_t seed, const Tolerances& tol) {
  const int seeds = quick ? 10 : 100;
  const std::vector<Suite> suites = {identities, isometries, bounds, generator_classes,
                                     filters, reducibility, extraction};
  std::vector<std::future<SuiteResult>> pending;
  for (const Suite& s : suites) pending.push_back(std::async(std::launch::async, s, seeds, seed, tol));

  Json out{{"passed", true}, {"suites", Json::array()}};
  for (std::size_t i = 0; i < pending.size(); ++i) {
    Json entry;
    try {
      const SuiteResult r = pending[i].get();
      entry = Json{{"name", r.name}, {"cases", r.cases}, {"worst", r.worst}, {"limit", r.limit},
                   {"failures", r.failures}, {"passed", r.failures == 0}};
    } catch (const std::exception& e) {
      entry = Json{{"name", "suite_" + std::to_string(i)}, {"passed", false}, {"error", e.what()}};
    }
    if (!entry.at("passed").get<bool>()) out["passed"] = false;
    out["suites"].push_back(std::move(entry));
  }
  return out;
}

}  // namespace triad::cli
