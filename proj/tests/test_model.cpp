#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hhc/model.hpp"

using namespace hhc;

TEST_CASE("build_instance derives floor-Euclidean travel over n+2 nodes") {
  const auto inst = fx::tiny1();
  REQUIRE(inst.n() == 2);
  REQUIRE(inst.travel.size() == 4);
  CHECK(inst.travel[0][1] == 5);
  CHECK(inst.travel[1][2] == 5);
  CHECK(inst.travel[0][2] == 10);
  CHECK(inst.travel[1][0] == inst.travel[0][1]);
  for (int i = 0; i < 4; ++i) {
    CHECK(inst.travel[i][i] == 0);
    CHECK(inst.travel[i][3] == inst.travel[i][0]);
    CHECK(inst.travel[3][i] == inst.travel[0][i]);
  }
  CHECK(inst.cost == inst.travel);
  CHECK(inst.duration(1, 1) == 10);
}

TEST_CASE("build_instance rejects malformed input") {
  CHECK_THROWS_AS(build_instance({{0, 0}, {1, 1}, {2, 2}},
                                 {{1, {1}, false, {{0, 10}}}, {1, {1}, false, {{0, 10}}}},
                                 {{1, {0, 100}, {1}, std::nullopt}},
                                 {{1, 1, 5}, {2, 1, 5}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_instance({{0, 0}, {1, 1}},
                                 {{1, {}, false, {{0, 10}}}},
                                 {{1, {0, 100}, {1}, std::nullopt}}, {}),
                  std::invalid_argument);
  // No caregiver can serve service 2.
  CHECK_THROWS_AS(build_instance({{0, 0}, {1, 1}},
                                 {{1, {2}, false, {{0, 10}}}},
                                 {{1, {0, 100}, {1}, std::nullopt}},
                                 {{1, 2, 5}}),
                  std::invalid_argument);
}

TEST_CASE("chromosome validation reports each broken invariant") {
  const auto inst = fx::tiny_sync();

  SUBCASE("valid") { CHECK(validate_chromosome(inst, fx::tiny_sync_chromosome()).empty()); }
  SUBCASE("missing and duplicate genes") {
    const Chromosome ch{{{1, 1}, {1, 1}}, {1, 1}};
    const auto v = validate_chromosome(inst, ch);
    CHECK_FALSE(v.empty());
    bool missing = false, dup = false;
    for (const auto& x : v) {
      if (x.kind == ViolationKind::MissingGene) missing = true;
      if (x.kind == ViolationKind::DuplicateGene) dup = true;
    }
    CHECK(missing);
    CHECK(dup);
  }
  SUBCASE("unskilled caregiver") {
    const Chromosome ch{{{1, 1}, {1, 2}}, {2, 1}};
    bool found = false;
    for (const auto& x : validate_chromosome(inst, ch))
      if (x.kind == ViolationKind::UnskilledAssignment) found = true;
    CHECK(found);
  }
  SUBCASE("same caregiver twice at one patient") {
    const auto both = build_instance(
        {{0, 0}, {3, 4}},
        {{1, {1, 2}, false, {{0, 100}}}},
        {{1, {0, 200}, {1, 2}, std::nullopt}, {2, {0, 200}, {1, 2}, std::nullopt}},
        {{1, 1, 10}, {1, 2, 10}});
    const Chromosome ch{{{1, 1}, {1, 2}}, {1, 1}};
    bool found = false;
    for (const auto& x : validate_chromosome(both, ch))
      if (x.kind == ViolationKind::DuplicatePatientCaregiverPair) found = true;
    CHECK(found);
  }
  SUBCASE("row length mismatch") {
    const Chromosome ch{{{1, 1}, {1, 2}}, {1}};
    REQUIRE(validate_chromosome(inst, ch).size() == 1);
    CHECK(validate_chromosome(inst, ch)[0].kind == ViolationKind::LengthMismatch);
  }
}

TEST_CASE("demanded_pairs lists every service in patient order") {
  const auto inst = fx::crossing();
  const auto pairs = demanded_pairs(inst);
  REQUIRE(pairs.size() == 4);
  CHECK(pairs[0] == VisitGene{1, 1});
  CHECK(pairs[1] == VisitGene{1, 2});
  CHECK(pairs[2] == VisitGene{2, 1});
  CHECK(pairs[3] == VisitGene{2, 2});
}
