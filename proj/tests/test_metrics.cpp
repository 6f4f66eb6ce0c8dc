#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <vector>

#include "hhc/metrics.hpp"
#include "hhc/rng.hpp"

using namespace hhc;

namespace {

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  const std::array<double, 3> x{a.f1, a.f2, a.f3}, y{b.f1, b.f2, b.f3};
  bool le = true, lt = false;
  for (int i = 0; i < 3; ++i) {
    if (x[i] > y[i]) le = false;
    if (x[i] < y[i]) lt = true;
  }
  return le && lt;
}

// Box-sampling estimate inside the unit cube toward reference (1,1,1).
double mc_hypervolume(const std::vector<ObjectiveVector>& front, Rng& rng,
                      std::uint64_t samples) {
  std::uint64_t hits = 0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    const double x = rng.uniform(), y = rng.uniform(), z = rng.uniform();
    for (const auto& p : front)
      if (p.f1 <= x && p.f2 <= y && p.f3 <= z) {
        ++hits;
        break;
      }
  }
  return static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace

TEST_CASE("normalization maps the union into the unit cube") {
  const std::vector<std::vector<ObjectiveVector>> fronts{
      {{5, 7, 3}, {10, 7, 4}}, {{7.5, 7, 5}}};
  const auto result = normalize(fronts);
  CHECK(result.bounds.min == std::array<double, 3>{5, 7, 3});
  CHECK(result.bounds.max == std::array<double, 3>{10, 7, 5});
  CHECK(result.fronts[0][0].f1 == 0);
  CHECK(result.fronts[0][1].f1 == 1);
  CHECK(result.fronts[1][0].f1 == doctest::Approx(0.5));
  CHECK(result.fronts[0][0].f2 == 0);  // constant objective collapses to 0
  CHECK(result.fronts[1][0].f2 == 0);
  CHECK(result.fronts[0][0].f3 == 0);
  CHECK(result.fronts[1][0].f3 == 1);
  CHECK_THROWS_AS(normalize({}), std::invalid_argument);
}

TEST_CASE("normalization preserves dominance") {
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ObjectiveVector> pts;
    for (int i = 0; i < 12; ++i)
      pts.push_back({double(rng.uniform_int(0, 9)), double(rng.uniform_int(0, 9)),
                     double(rng.uniform_int(0, 9))});
    const auto result = normalize({pts});
    const auto& mapped = result.fronts[0];
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (dominates(pts[i], pts[j])) CHECK(!dominates(mapped[j], mapped[i]));
  }
}

TEST_CASE("hypervolume examples") {
  CHECK(hypervolume({{0.5, 0.5, 0.5}}) == doctest::Approx(0.125));
  CHECK(hypervolume({{0.2, 0.8, 0.8}, {0.8, 0.2, 0.8}}) == doctest::Approx(0.056));
  CHECK(hypervolume({}) == 0);
  CHECK(hypervolume({{1, 0.2, 0.2}}) == 0);  // touching the reference contributes nothing
  CHECK(hypervolume({{0, 0, 0}}) == doctest::Approx(1.0));
  CHECK(hypervolume({{0.5, 0.5, 0.5}, {0.5, 0.5, 0.5}}) == doctest::Approx(0.125));
  CHECK(hypervolume({{2, 2, 2}}, {4, 4, 4}) == doctest::Approx(8.0));
}

TEST_CASE("hypervolume is monotone under added nondominated points") {
  Rng rng(32);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ObjectiveVector> front;
    for (int i = 0; i < 8; ++i)
      front.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    const double base = hypervolume(front);
    front.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    CHECK(hypervolume(front) >= base - 1e-12);
  }
}

TEST_CASE("hypervolume matches monte carlo sampling") {
  Rng rng(33);
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<ObjectiveVector> front;
    const int count = 10 + trial * 20;
    for (int i = 0; i < count; ++i)
      front.push_back({rng.uniform(), rng.uniform(), rng.uniform()});
    const double exact = hypervolume(front);
    const double estimate = mc_hypervolume(front, rng, 1000000);
    CHECK(std::abs(exact - estimate) < 0.005);
  }
}

TEST_CASE("coverage counts strictly dominated members") {
  const std::vector<ObjectiveVector> a{{0, 0, 0}};
  const std::vector<ObjectiveVector> b{{1, 1, 1}, {0, 0, 0}};
  CHECK(coverage(a, b) == doctest::Approx(0.5));
  const std::vector<ObjectiveVector> front{{0, 1, 2}, {2, 1, 0}, {1, 1, 1}};
  CHECK(coverage(front, front) == 0);  // a dominance-free front never covers itself
  CHECK(coverage(a, {{1, 2, 3}, {4, 5, 6}}) == 1.0);
  CHECK(coverage({{1, 2, 3}, {4, 5, 6}}, a) == 0);
  CHECK_THROWS_AS(coverage(a, {}), std::invalid_argument);
}

TEST_CASE("feasible vectors drop infeasible members") {
  Front front;
  front.members.push_back({{}, {1, 2, 3}, 0, true});
  front.members.push_back({{}, {4, 5, 6}, 2, false});
  const auto vecs = feasible_vectors(front);
  REQUIRE(vecs.size() == 1);
  CHECK(vecs[0].f1 == 1);
}

TEST_CASE("indicator csv layout") {
  const auto csv = indicator_csv({{"A", "nsga2", 0.25, 7, 12.5}});
  CHECK(csv == "instance,algorithm,hypervolume,front_size,cpu_ms\nA,nsga2,0.250000,7,12.500000\n");
}
