#pragma once

#include <array>
#include <string>
#include <vector>

#include "hhc/model.hpp"
#include "hhc/rng.hpp"
#include "hhc/schedule.hpp"

namespace hhc {

enum class NeighborhoodKind { Switch, InterSwap, IntraShift, IntraSwap };

std::string neighborhood_name(NeighborhoodKind kind);

struct GvnsParams {
  int k_max = 4;
  int shake_strength = 0;       // m2; 0 -> caregivers + 1
  int stop_no_improve = 100;    // m1
  std::array<NeighborhoodKind, 4> shake_order{
      NeighborhoodKind::Switch, NeighborhoodKind::IntraSwap, NeighborhoodKind::InterSwap,
      NeighborhoodKind::IntraShift};
  std::array<NeighborhoodKind, 4> local_search_order{
      NeighborhoodKind::InterSwap, NeighborhoodKind::IntraSwap, NeighborhoodKind::IntraShift,
      NeighborhoodKind::Switch};
  DecodeParams decode;
  double time_limit_ms = 0;  // 0 -> unlimited
};

struct TraceEntry {
  int iteration = 0;
  double elapsed_ms = 0;
  double best_z = 0;
  double penalty = 0;
};

std::string trace_csv(const std::vector<TraceEntry>& trace);

struct GvnsResult {
  Chromosome best;
  Schedule schedule;
  double z = 0;
  std::vector<TraceEntry> trace;
};

// All feasibility-preserving moves of one kind, lexicographic in indices.
std::vector<Chromosome> neighbors(const Instance& instance, const Chromosome& chromosome,
                                  NeighborhoodKind kind);

Chromosome shake(const Instance& instance, const Chromosome& chromosome, NeighborhoodKind kind,
                 int strength, Rng& rng);

Chromosome vnd(const Instance& instance, const Chromosome& start, VariantId variant,
               const GvnsParams& params);

Chromosome initial_solution(const Instance& instance, VariantId variant, Rng& rng);

GvnsResult gvns_solve(const Instance& instance, VariantId variant, const GvnsParams& params,
                      Rng& rng);

}  // namespace hhc
