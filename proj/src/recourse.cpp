#include "hhc/recourse.hpp"

#include <algorithm>
#include <cmath>

#include "hhc/rng.hpp"

namespace hhc {

Scenario sample_scenario(const Instance& inst, const StochasticConfig& cfg,
                         std::uint64_t replication) {
  Scenario sc;
  const std::uint64_t label_base = cfg.common_random_numbers ? 0 : cfg.call_id;
  auto trng = Rng::stream(cfg.seed ^ label_base, "scenario-travel", replication);
  auto srng = Rng::stream(cfg.seed ^ label_base, "scenario-service", replication);

  const int m = inst.n() + 2;
  sc.travel.assign(m, std::vector<double>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      const double mean = inst.travel[i][j];
      double v = mean;
      if (mean > 0 && cfg.travel_sd_ratio > 0)
        v = std::max(0.0, trng.normal(mean, mean * cfg.travel_sd_ratio));
      sc.travel[i][j] = v;
      sc.travel[j][i] = v;
    }

  sc.durations.assign(inst.durations.size(), {});
  for (std::size_t p = 0; p < inst.durations.size(); ++p) {
    sc.durations[p].assign(inst.durations[p].size(), 0);
    for (std::size_t s = 0; s < inst.durations[p].size(); ++s) {
      const double mean = inst.durations[p][s];
      double v = mean;
      if (mean > 0 && cfg.service_sd_ratio > 0)
        v = std::max(0.0, srng.normal(mean, mean * cfg.service_sd_ratio));
      sc.durations[p][s] = v;
    }
  }
  return sc;
}

PenaltyOutcome simulate_penalty_recourse(const Instance& inst, const Chromosome& ch,
                                         const Scenario& sc, const DecodeParams& params) {
  const auto s = decode(inst, ch, VariantId::SPR_PENALTY, params, &sc);
  return {s.tardiness_total, s.overtime_total};
}

SkipOutcome simulate_skip_recourse(const Instance& inst, const Chromosome& ch, const Scenario& sc,
                                   const DecodeParams& params) {
  const auto s = decode(inst, ch, VariantId::SPR_SKIP, params, &sc);
  return {s.skipped_count, s.patient_skipped};
}

RecourseEstimate estimate(const Instance& inst, const Chromosome& ch, RecourseKind kind,
                          const StochasticConfig& cfg) {
  RecourseEstimate est;
  double sum = 0, tard_sum = 0, over_sum = 0, skip_sum = 0;
  double prev_mean = 0;
  int gap_hits = 0;

  for (int t = 1; t <= cfg.max_iter; ++t) {
    const auto sc = sample_scenario(inst, cfg, static_cast<std::uint64_t>(t));
    double value = 0;
    if (kind == RecourseKind::Penalty) {
      const auto out = simulate_penalty_recourse(inst, ch, sc);
      value = cfg.alpha * out.tardiness + cfg.gamma * out.overtime;
      tard_sum += out.tardiness;
      over_sum += out.overtime;
    } else {
      const auto out = simulate_skip_recourse(inst, ch, sc);
      value = cfg.alpha * out.skipped;
      skip_sum += out.skipped;
    }
    sum += value;
    const double mean = sum / t;
    est.iterations = t;
    est.mean = mean;

    if (t >= 2) {
      double gap;
      if (prev_mean == 0)
        gap = mean == 0 ? 0 : 1;
      else
        gap = std::abs(prev_mean - mean) / prev_mean;
      gap_hits = gap < cfg.epsilon ? gap_hits + 1 : 0;
      if (gap_hits >= cfg.gap_window) {
        est.reason = StopReason::Gap;
        break;
      }
    }
    prev_mean = mean;
  }
  if (est.reason != StopReason::Gap) est.reason = StopReason::MaxIter;
  if (est.iterations > 0) {
    est.tardiness_mean = tard_sum / est.iterations;
    est.overtime_mean = over_sum / est.iterations;
    est.skipped_mean = skip_sum / est.iterations;
  }
  return est;
}

}  // namespace hhc
