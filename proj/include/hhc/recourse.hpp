#pragma once

#include <cstdint>
#include <string>

#include "hhc/model.hpp"
#include "hhc/schedule.hpp"

namespace hhc {

enum class RecourseKind { Penalty, Skip };

enum class StopReason { MaxIter, Gap };

struct StochasticConfig {
  double travel_sd_ratio = 1.0 / 3;
  double service_sd_ratio = 1.0 / 5;
  double epsilon = 0.05;
  int max_iter = 100;
  int gap_window = 10;
  double alpha = 1;  // tardiness / skip weight
  double gamma = 1;  // overtime weight
  std::uint64_t seed = 0;
  // Common random numbers: scenario streams keyed by replication only, so
  // competing solutions see identical scenarios.
  bool common_random_numbers = false;
  std::uint64_t call_id = 0;
};

struct RecourseEstimate {
  double mean = 0;
  int iterations = 0;
  StopReason reason = StopReason::MaxIter;
  double tardiness_mean = 0;
  double overtime_mean = 0;
  double skipped_mean = 0;
};

Scenario sample_scenario(const Instance& instance, const StochasticConfig& config,
                         std::uint64_t replication);

struct PenaltyOutcome {
  double tardiness = 0;
  double overtime = 0;
};

PenaltyOutcome simulate_penalty_recourse(const Instance& instance, const Chromosome& chromosome,
                                         const Scenario& scenario,
                                         const DecodeParams& params = {});

struct SkipOutcome {
  int skipped = 0;
  std::vector<bool> skipped_patients;
};

SkipOutcome simulate_skip_recourse(const Instance& instance, const Chromosome& chromosome,
                                   const Scenario& scenario, const DecodeParams& params = {});

RecourseEstimate estimate(const Instance& instance, const Chromosome& chromosome,
                          RecourseKind kind, const StochasticConfig& config);

}  // namespace hhc
