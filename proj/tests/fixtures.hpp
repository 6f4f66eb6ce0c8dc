#pragma once

#include <utility>
#include <vector>

#include "hhc/model.hpp"

namespace hhc::fx {

// Two patients on a straight detour, one caregiver, wide windows.
// Optimal route P1 then P2 travels 5 + 5 + 10 = 20 minutes.
inline Instance tiny1() {
  return build_instance(
      {{0, 0}, {3, 4}, {6, 8}},
      {{1, {1}, false, {{0, 100}}}, {2, {1}, false, {{0, 100}}}},
      {{1, {0, 200}, {1}, std::nullopt}},
      {{1, 1, 10}, {2, 1, 10}});
}

inline Chromosome tiny1_chromosome() { return {{{1, 1}, {2, 1}}, {1, 1}}; }

// One synchronized patient needing services 1 and 2 from two caregivers
// that both arrive at minute 5 against a window opening at 10.
inline Instance tiny_sync() {
  return build_instance(
      {{0, 0}, {3, 4}},
      {{1, {1, 2}, true, {{10, 100}}}},
      {{1, {0, 200}, {1}, std::nullopt}, {2, {0, 200}, {2}, std::nullopt}},
      {{1, 1, 10}, {1, 2, 10}});
}

inline Chromosome tiny_sync_chromosome() { return {{{1, 1}, {1, 2}}, {1, 2}}; }

// Two synchronized patients visited in opposite orders by the two
// caregivers; the synchronized starts can never settle.
inline Instance crossing() {
  return build_instance(
      {{0, 0}, {3, 4}, {6, 8}},
      {{1, {1, 2}, true, {{0, 60}}}, {2, {1, 2}, true, {{0, 60}}}},
      {{1, {0, 600}, {1, 2}, std::nullopt}, {2, {0, 600}, {1, 2}, std::nullopt}},
      {{1, 1, 10}, {1, 2, 10}, {2, 1, 10}, {2, 2, 10}});
}

inline Chromosome crossing_chromosome() {
  return {{{1, 1}, {2, 1}, {2, 2}, {1, 2}}, {1, 1, 2, 2}};
}

// Two patients with two availability periods each.
inline Instance multiwindow() {
  return build_instance(
      {{0, 0}, {3, 4}, {6, 8}},
      {{1, {1}, false, {{0, 120}, {300, 420}}}, {2, {2}, false, {{60, 180}, {330, 450}}}},
      {{1, {0, 600}, {1, 2}, std::nullopt}, {2, {0, 600}, {1, 2}, std::nullopt}},
      {{1, 1, 10}, {2, 2, 10}});
}

}  // namespace hhc::fx
