#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhc/ga.hpp"
#include "hhc/model.hpp"
#include "hhc/rng.hpp"
#include "hhc/schedule.hpp"

namespace hhc {

struct Evaluated {
  ObjectiveVector f;
  double penalty = 0;
  bool feasible = true;
};

struct FrontMember {
  Chromosome chromosome;
  ObjectiveVector f;
  double penalty = 0;
  bool feasible = true;
};

struct Front {
  std::vector<FrontMember> members;
  std::optional<std::size_t> capacity;
};

struct WeightVector {
  std::array<double, 3> lambda{0, 0, 0};
  std::vector<std::size_t> neighbors;  // B(i), self included
};

struct MoeaParams {
  int population = 0;    // N; 0 -> 10 * patients
  int neighborhood = 0;  // T; 0 -> patients
  double pc_nsga2 = 0.8;
  double pc_moead = 1.0;
  double pm = 0.08;
  int evaluations = 0;  // offspring budget; 0 -> 50 * N
  std::size_t archive_capacity = 0;  // 0 -> N
  DecodeParams decode;
};

bool constrained_dominates(const Evaluated& a, const Evaluated& b);

std::vector<std::vector<std::size_t>> fast_nondominated_sort(const std::vector<Evaluated>& points);

std::vector<double> crowding_distance(const std::vector<Evaluated>& front);

Front nsga2_solve(const Instance& instance, const MoeaParams& params, Rng& rng);

std::vector<WeightVector> weight_vectors(int count, int objectives = 3, int neighborhood = 1);

double tchebycheff(const ObjectiveVector& f, const std::array<double, 3>& lambda,
                   const ObjectiveVector& z);

Front moead_solve(const Instance& instance, const MoeaParams& params,
                  const std::vector<Chromosome>* initial, Rng& rng);

Front hybrid_solve(const Instance& instance, const MoeaParams& params, Rng& rng);

Evaluated evaluate_multiobj(const Instance& instance, const Chromosome& chromosome,
                            const DecodeParams& params = {});

std::string front_csv(const Front& front);

}  // namespace hhc
