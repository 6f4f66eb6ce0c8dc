#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "hhc/model.hpp"
#include "hhc/recourse.hpp"
#include "hhc/rng.hpp"
#include "hhc/schedule.hpp"

namespace hhc {

enum class FitnessKind { Deterministic, Spr, Lex };
enum class CrossoverKind { Uox, TwoPoint };

// Lexicographic key; scalar fitness occupies the first slot.
struct FitnessValue {
  std::array<double, 3> key{0, 0, 0};
  double scalar() const { return key[0]; }
  bool operator<(const FitnessValue& o) const { return key < o.key; }
  bool operator==(const FitnessValue& o) const { return key == o.key; }
};

struct GaParams {
  int population = 0;       // 0 -> 20 * patients
  double pc = 0.4;          // crossover probability
  double ps = 0.08;         // mutation probability per operator
  int tournament = 2;
  int stop_no_improve = 0;  // 0 -> 5 * patients
  FitnessKind kind = FitnessKind::Deterministic;
  CrossoverKind crossover = CrossoverKind::Uox;
  double beta = 100;  // tardiness and overtime weight of the deterministic fitness
  DecodeParams decode;
  StochasticConfig stochastic;
  double time_limit_ms = 0;
};

// Deterministic row operators behind the randomized crossovers. Masks and the
// 1-based inclusive cut points are exposed for exact reproduction in tests.
std::vector<VisitGene> uox_patient_row(const std::vector<VisitGene>& p1,
                                       const std::vector<VisitGene>& p2,
                                       const std::vector<bool>& mask);
std::vector<int> uox_caregiver_row(const std::vector<int>& p1, const std::vector<int>& p2,
                                   const std::vector<bool>& mask);
Chromosome uox_crossover(const Chromosome& parent1, const Chromosome& parent2, Rng& rng);

std::pair<Chromosome, Chromosome> two_point_rows(const Chromosome& parent1,
                                                 const Chromosome& parent2, int p1, int p2);
std::pair<Chromosome, Chromosome> two_point_crossover(const Chromosome& parent1,
                                                      const Chromosome& parent2, Rng& rng);

Chromosome mutate(const Instance& instance, const Chromosome& chromosome, Rng& rng, double ps);

Chromosome repair(const Instance& instance, const Chromosome& chromosome, Rng& rng);

std::size_t tournament_select(std::size_t population, int size,
                              const std::function<bool(std::size_t, std::size_t)>& better,
                              Rng& rng);

FitnessValue fitness(const Instance& instance, const Chromosome& chromosome, FitnessKind kind,
                     const GaParams& params);

struct GaTraceEntry {
  int generation = 0;
  FitnessValue best;
  double mean_fitness = 0;
};

std::string ga_trace_csv(const std::vector<GaTraceEntry>& trace);

struct GaResult {
  Chromosome best;
  FitnessValue value;
  std::vector<GaTraceEntry> trace;
};

GaResult ga_solve(const Instance& instance, VariantId variant, const GaParams& params, Rng& rng);

Chromosome random_chromosome(const Instance& instance, Rng& rng);

}  // namespace hhc
