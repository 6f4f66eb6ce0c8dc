#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhc/model.hpp"

namespace hhc {

enum class SkillGrouping { Grouped, Random };

struct Recipe {
  int n = 10;  // patients
  int c = 3;   // caregivers
  double area = 100;
  double duration_lo = 10, duration_hi = 20;
  int windows_per_patient = 1;
  double multi_service_fraction = 0;
  double simultaneous_fraction = 0;
  double horizon = 600;
  double tw_length = 120;
  SkillGrouping skill_grouping = SkillGrouping::Grouped;
  std::optional<int> max_visits;
  // Explicit double/triple service patient counts; override the fraction
  // when set (used by the large presets with known service totals).
  std::optional<int> double_service_count;
  std::optional<int> triple_service_count;
};

// Benchmark families: A..N, SS(-A..C), MSS(-D..F), STW(-A..C), MTW(-A..C),
// Small, Large(-N100s/N100p/N200s/N200p).
Recipe preset(const std::string& name);
std::vector<std::string> preset_names();

Instance generate(const Recipe& recipe, std::uint64_t seed);

std::string recipe_to_json(const Recipe& recipe);
Recipe recipe_from_json(const std::string& text);

}  // namespace hhc
