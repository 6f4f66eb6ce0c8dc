#pragma once

#include <array>
#include <string>
#include <vector>

#include "hhc/moea.hpp"
#include "hhc/schedule.hpp"

namespace hhc {

struct NormalizationBounds {
  std::array<double, 3> min{0, 0, 0};
  std::array<double, 3> max{0, 0, 0};
};

struct NormalizedFronts {
  std::vector<std::vector<ObjectiveVector>> fronts;
  NormalizationBounds bounds;
};

// Bounds over the union of all fronts; throws std::invalid_argument when the
// union is empty.
NormalizationBounds normalization_bounds(const std::vector<std::vector<ObjectiveVector>>& fronts);

// Affine map into [0,1] per objective; a degenerate objective maps to 0.
ObjectiveVector normalize_point(const ObjectiveVector& point, const NormalizationBounds& bounds);

NormalizedFronts normalize(const std::vector<std::vector<ObjectiveVector>>& fronts);

// Exact dominated volume between the points and the reference, minimization.
double hypervolume(const std::vector<ObjectiveVector>& front,
                   const ObjectiveVector& reference = {1, 1, 1});

// Fraction of B strictly Pareto-dominated by some member of A.
double coverage(const std::vector<ObjectiveVector>& a, const std::vector<ObjectiveVector>& b);

// Objective vectors of the feasible front members.
std::vector<ObjectiveVector> feasible_vectors(const Front& front);

struct IndicatorRow {
  std::string instance;
  std::string algorithm;
  double hypervolume = 0;
  std::size_t front_size = 0;
  double cpu_ms = 0;
};

std::string indicator_csv(const std::vector<IndicatorRow>& rows);

}  // namespace hhc
