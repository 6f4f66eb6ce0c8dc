#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hhc/model.hpp"
#include "hhc/recourse.hpp"
#include "hhc/schedule.hpp"

namespace hhc {

struct OracleLimits {
  int max_genes = 7;
  int max_caregivers = 3;
  int max_windows = 3;
};

struct OracleResult {
  bool feasible = false;
  Chromosome best;
  double value = 0;
  // MULTIOBJ: the exact Pareto-optimal objective vectors with witnesses.
  std::vector<ObjectiveVector> pareto_vectors;
  std::vector<Chromosome> pareto_witnesses;
};

// Exhaustive search over assignments, orderings and window selections.
OracleResult brute_force_solve(const Instance& instance, VariantId variant,
                               const OracleLimits& limits = {},
                               const DecodeParams& params = {});

struct ReferenceRecourse {
  double mean = 0;
  double standard_error = 0;
  std::uint64_t replications = 0;
};

// Plain-mean Monte Carlo with no stopping rule, for cross-checking the
// adaptive estimator.
ReferenceRecourse reference_expected_recourse(const Instance& instance,
                                              const Chromosome& chromosome, RecourseKind kind,
                                              const StochasticConfig& config,
                                              std::uint64_t replications = 1000000);

}  // namespace hhc
