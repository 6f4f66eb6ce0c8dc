#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hhc/instancegen.hpp"

using namespace hhc;

TEST_CASE("presets match the benchmark rows") {
  const auto a = preset("A");
  CHECK(a.n == 10);
  CHECK(a.c >= 3);
  CHECK(a.c <= 4);
  CHECK(a.windows_per_patient == 1);
  CHECK(a.multi_service_fraction == 0);

  const auto d = preset("MSS-D");
  CHECK(d.n == 10);
  CHECK(d.c == 3);
  const auto gen_d = generate(d, 1);
  CHECK(gen_d.total_services() == 13);

  const auto large = preset("Large-N100s");
  CHECK(large.n == 70);
  CHECK(large.c == 20);
  CHECK(large.windows_per_patient == 3);
  const auto gen_large = generate(large, 1);
  CHECK(gen_large.total_services() == 100);

  CHECK(preset("STW-B").max_visits == 8);
  CHECK_THROWS_AS(preset("Z9"), std::invalid_argument);
}

TEST_CASE("generation respects the recipe ranges") {
  const auto inst = generate(preset("A"), 7);
  REQUIRE(inst.n() == 10);
  for (const auto& p : inst.patients) {
    REQUIRE(p.windows.size() == 1);
    CHECK(p.windows[0].b - p.windows[0].a == 120);
    CHECK(p.windows[0].a >= 0);
    CHECK(p.windows[0].b <= 600);
    CHECK(p.x >= 0);
    CHECK(p.x <= 100);
    for (int s : p.demands) {
      const double t = inst.duration(p.id, s);
      CHECK(t >= 10);
      CHECK(t <= 20);
    }
  }
  validate_instance(inst);
}

TEST_CASE("two windows sit in separate half days with a 120 minute gap") {
  auto r = preset("J");
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull, 5ull}) {
    const auto inst = generate(r, seed);
    for (const auto& p : inst.patients) {
      REQUIRE(p.windows.size() == 2);
      CHECK(p.windows[0].b <= 300);
      CHECK(p.windows[1].a >= 300);
      CHECK(p.windows[1].a - p.windows[0].b >= 120);
    }
  }
}

TEST_CASE("three windows fall in their thirds of the day") {
  const auto inst = generate(preset("Large-N100p"), 3);
  for (const auto& p : inst.patients) {
    REQUIRE(p.windows.size() == 3);
    CHECK(p.windows[0].a >= 0);
    CHECK(p.windows[0].b <= 200 + 120);
    CHECK(p.windows[1].a >= 200);
    CHECK(p.windows[2].a >= 400);
    CHECK(p.windows[2].b <= 600);
  }
}

TEST_CASE("grouped skills never mix the two service families") {
  const auto inst = generate(preset("F"), 11);
  for (const auto& cg : inst.caregivers) {
    const bool low = cg.skills.front() <= 3;
    for (int s : cg.skills) CHECK((s <= 3) == low);
    CHECK(cg.skills.size() <= 3);
  }
}

TEST_CASE("multi service and synchronization fractions are honored") {
  Recipe r = preset("F");
  r.n = 100;
  r.c = 20;
  const auto inst = generate(r, 5);
  int multi = 0, sync = 0;
  for (const auto& p : inst.patients) {
    if (p.demands.size() >= 2) ++multi;
    if (p.simultaneous) ++sync;
  }
  CHECK(multi == 30);
  CHECK(sync == 15);
}

TEST_CASE("generation is a pure function of recipe and seed") {
  const auto a = generate(preset("K"), 99);
  const auto b = generate(preset("K"), 99);
  CHECK(a.travel == b.travel);
  CHECK(a.durations == b.durations);
  for (int i = 0; i < a.n(); ++i) {
    CHECK(a.patients[i].windows == b.patients[i].windows);
    CHECK(a.patients[i].demands == b.patients[i].demands);
  }
  const auto c = generate(preset("K"), 100);
  CHECK(c.travel != a.travel);
}

TEST_CASE("recipe JSON round trip") {
  auto r = preset("MTW-C");
  const auto back = recipe_from_json(recipe_to_json(r));
  CHECK(back.n == r.n);
  CHECK(back.c == r.c);
  CHECK(back.windows_per_patient == r.windows_per_patient);
  CHECK(back.max_visits == r.max_visits);
  CHECK(back.skill_grouping == r.skill_grouping);
  CHECK(back.multi_service_fraction == r.multi_service_fraction);
}

TEST_CASE("every preset generates a valid instance") {
  for (const auto& name : preset_names()) {
    CAPTURE(name);
    const auto inst = generate(preset(name), 2);
    CHECK(inst.n() == preset(name).n);
    validate_instance(inst);
  }
}
