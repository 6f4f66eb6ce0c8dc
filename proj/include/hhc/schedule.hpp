#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hhc/model.hpp"

namespace hhc {

enum class VariantId { SOFT_MTW, HARD_MSMTW, SPR_PENALTY, SPR_SKIP, MULTIOBJ };

std::string variant_name(VariantId v);
std::optional<VariantId> variant_from_name(const std::string& name);

struct DecodeParams {
  // Soft-window weights and limits.
  double alpha = 1.0 / 3, beta = 1.0 / 3, gamma = 1.0 / 3;
  double e_max = 0, t_max = 15, w_max = 90;
  // Hard-window objective weights and infeasibility penalty coefficient.
  double hard_alpha = 0.5, hard_beta = 0.5;
  double penalty_gamma = 100;
  // Deterministic SPR fitness penalty (F_D).
  double penalty_beta = 100;
  int max_iter_syn = 0;  // 0 -> 2 * caregiver count
  // Test hook: force the selected window per patient (index into windows).
  std::optional<std::vector<int>> forced_window;
};

// Realized travel/durations for one stochastic scenario; nominal when null.
struct Scenario {
  std::vector<std::vector<double>> travel;
  std::vector<std::vector<double>> durations;
};

struct VisitTiming {
  int gene = 0;  // index into chromosome
  int patient = 0, service = 0, caregiver = 0;
  double arrival = 0, start = 0, completion = 0;
  double wait = 0, earliness = 0, tardiness = 0;
  bool skipped = false;
};

struct CaregiverLoad {
  double wait = 0;       // W_k
  double working = 0;    // w_k = service + travel
  double overtime = 0;   // o_k
  double return_time = 0;
  double deviation = 0;  // D_k = |w_k - mean w|
  int visits = 0;        // assigned genes (served or skipped)
};

struct ObjectiveVector {
  double f1 = 0;  // total travel time
  double f2 = 0;  // total waiting time
  double f3 = 0;  // total workload deviation
};

struct Schedule {
  std::vector<VisitTiming> visits;  // gene order
  std::vector<int> selected_window;  // per patient, index into windows
  std::vector<double> patient_earliness, patient_tardiness;
  std::vector<bool> patient_skipped;
  std::vector<CaregiverLoad> caregivers;
  double travel_total = 0;
  double cost_total = 0;
  double wait_total = 0;
  double earliness_total = 0;
  double tardiness_total = 0;
  double overtime_total = 0;
  double deviation_total = 0;
  int skipped_count = 0;
  bool feasible = true;
  bool sync_converged = true;
  double penalty = 0;  // tardiness + overtime minutes (plus soft-limit overflow)
};

struct SplitResult {
  double earliness = 0;
  double new_wait = 0;  // caregiver wait total after absorbing the early time
  bool feasible = true;
};

// Early-arrival split between earliness and waiting budgets.
SplitResult split_early_arrival(double early, double alpha, double gamma, double e_max,
                                double w_k, double w_max);

struct PeriodChoice {
  int window = -1;
  double earliness = 0, tardiness = 0, added_wait = 0;
  bool feasible = false;
};

// Soft-window selection: argmin of alpha*u + beta*v + gamma*wait over feasible windows.
PeriodChoice select_period_soft(const Patient& patient, double arrival, const DecodeParams& params,
                                double duration, double wait_so_far);

Schedule decode(const Instance& instance, const Chromosome& chromosome, VariantId variant,
                const DecodeParams& params = {}, const Scenario* scenario = nullptr);

// Scalar objective of the decoded schedule under the given variant.
double objective(const Schedule& schedule, VariantId variant, const DecodeParams& params = {});

// Objective plus the penalty term for infeasible-but-penalizable schedules.
double penalized_objective(const Schedule& schedule, VariantId variant,
                           const DecodeParams& params = {});

ObjectiveVector objective_vector(const Schedule& schedule);

struct FeasibilityViolation {
  std::string rule;
  int patient = 0, caregiver = 0;
  double amount = 0;
  std::string describe() const;
};

// Checks the decoded schedule against every in-scope constraint family.
std::vector<FeasibilityViolation> feasibility_check(const Instance& instance,
                                                    const Chromosome& chromosome,
                                                    const Schedule& schedule, VariantId variant);

// One row per visit: caregiver, patient, service, window, arrival, start,
// completion, slack (window end minus completion).
std::string schedule_report_csv(const Instance& instance, const Schedule& schedule);

}  // namespace hhc
