#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "hhc/gvns.hpp"
#include "hhc/oracle.hpp"

using namespace hhc;

namespace {

// Six single-service patients, two fully qualified caregivers.
Instance six_two() {
  std::vector<std::pair<double, double>> coords{{0, 0}};
  std::vector<PatientSpec> patients;
  std::vector<DurationSpec> durations;
  for (int i = 1; i <= 6; ++i) {
    coords.emplace_back(10 * i, 0);
    patients.push_back({i, {1}, false, {{0, 600}}});
    durations.push_back({i, 1, 10});
  }
  return build_instance(coords, patients,
                        {{1, {0, 600}, {1}, std::nullopt}, {2, {0, 600}, {1}, std::nullopt}},
                        durations);
}

Chromosome six_two_chromosome() {
  Chromosome ch;
  for (int i = 1; i <= 6; ++i) {
    ch.genes.push_back({i, 1});
    ch.assignment.push_back(i <= 3 ? 1 : 2);
  }
  return ch;
}

}  // namespace

TEST_CASE("neighborhood sizes match the closed forms") {
  const auto inst = six_two();
  const auto ch = six_two_chromosome();
  CHECK(neighbors(inst, ch, NeighborhoodKind::Switch).size() == 6);
  CHECK(neighbors(inst, ch, NeighborhoodKind::InterSwap).size() == 15);
  CHECK(neighbors(inst, ch, NeighborhoodKind::IntraShift).size() == 30);
  CHECK(neighbors(inst, ch, NeighborhoodKind::IntraSwap).size() == 15);
}

TEST_CASE("every neighbor passes validation") {
  const auto inst = fx::crossing();
  const auto ch = fx::crossing_chromosome();
  for (auto kind : {NeighborhoodKind::Switch, NeighborhoodKind::InterSwap,
                    NeighborhoodKind::IntraShift, NeighborhoodKind::IntraSwap})
    for (const auto& nb : neighbors(inst, ch, kind)) CHECK(is_valid(inst, nb));
}

TEST_CASE("switch respects skills and the one-caregiver-per-patient rule") {
  const auto inst = fx::tiny_sync();  // caregivers with disjoint skills
  const auto ch = fx::tiny_sync_chromosome();
  CHECK(neighbors(inst, ch, NeighborhoodKind::Switch).empty());
  CHECK(neighbors(inst, ch, NeighborhoodKind::InterSwap).empty());
}

TEST_CASE("shake identity and determinism") {
  const auto inst = six_two();
  const auto ch = six_two_chromosome();
  auto r0 = Rng::stream(5, "shake", 0);
  CHECK(shake(inst, ch, NeighborhoodKind::Switch, 0, r0) == ch);
  auto r1 = Rng::stream(5, "shake", 1);
  auto r2 = Rng::stream(5, "shake", 1);
  const auto a = shake(inst, ch, NeighborhoodKind::IntraSwap, 4, r1);
  const auto b = shake(inst, ch, NeighborhoodKind::IntraSwap, 4, r2);
  CHECK(a == b);
  CHECK(is_valid(inst, a));
}

TEST_CASE("single qualified alternative makes shake deterministic") {
  const auto inst = build_instance(
      {{0, 0}, {3, 4}},
      {{1, {1}, false, {{0, 100}}}},
      {{1, {0, 200}, {1}, std::nullopt}, {2, {0, 200}, {1}, std::nullopt}},
      {{1, 1, 10}});
  const Chromosome ch{{{1, 1}}, {1}};
  auto r = Rng::stream(1, "shake", 0);
  const auto out = shake(inst, ch, NeighborhoodKind::Switch, 1, r);
  CHECK(out.assignment[0] == 2);
}

TEST_CASE("vnd returns a local optimum and never worsens") {
  const auto inst = six_two();
  const auto ch = six_two_chromosome();
  GvnsParams params;
  const auto before = penalized_objective(decode(inst, ch, VariantId::HARD_MSMTW),
                                          VariantId::HARD_MSMTW, params.decode);
  const auto out = vnd(inst, ch, VariantId::HARD_MSMTW, params);
  const double after = penalized_objective(decode(inst, out, VariantId::HARD_MSMTW),
                                           VariantId::HARD_MSMTW, params.decode);
  CHECK(after <= before + 1e-9);
  for (auto kind : {NeighborhoodKind::Switch, NeighborhoodKind::InterSwap,
                    NeighborhoodKind::IntraShift, NeighborhoodKind::IntraSwap})
    for (const auto& nb : neighbors(inst, out, kind)) {
      const double z = penalized_objective(decode(inst, nb, VariantId::HARD_MSMTW),
                                           VariantId::HARD_MSMTW, params.decode);
      CHECK(z >= after - 1e-9);
    }
  const auto again = vnd(inst, out, VariantId::HARD_MSMTW, params);
  CHECK(again == out);
}

TEST_CASE("initial solutions are valid and follow the ordering rules") {
  const auto inst = fx::tiny1();
  auto rng = Rng::stream(3, "init", 0);
  const auto soft = initial_solution(inst, VariantId::SOFT_MTW, rng);
  CHECK(is_valid(inst, soft));
  // Single window: order by window end, then earliest-arriving caregiver.
  const auto staggered = build_instance(
      {{0, 0}, {3, 4}, {6, 8}},
      {{1, {1}, false, {{0, 300}}}, {2, {1}, false, {{0, 100}}}},
      {{1, {0, 600}, {1}, std::nullopt}},
      {{1, 1, 10}, {2, 1, 10}});
  auto rng2 = Rng::stream(3, "init", 1);
  const auto ordered = initial_solution(staggered, VariantId::SOFT_MTW, rng2);
  CHECK(ordered.genes[0].patient == 2);
  CHECK(ordered.genes[1].patient == 1);

  auto rng3 = Rng::stream(3, "init", 2);
  const auto multi = initial_solution(fx::multiwindow(), VariantId::HARD_MSMTW, rng3);
  CHECK(is_valid(fx::multiwindow(), multi));
}

TEST_CASE("gvns reaches the exhaustive optimum on small instances") {
  const auto inst = six_two();
  const auto oracle = brute_force_solve(inst, VariantId::HARD_MSMTW, {6, 3, 3});
  REQUIRE(oracle.feasible);
  GvnsParams params;
  params.stop_no_improve = 20;
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto rng = Rng::stream(seed, "gvns", 0);
    const auto res = gvns_solve(inst, VariantId::HARD_MSMTW, params, rng);
    CHECK(res.z >= oracle.value - 1e-9);  // never beats the oracle
    if (res.z <= oracle.value + 1e-9) ++hits;
  }
  CHECK(hits >= 2);
}

TEST_CASE("gvns trace is monotone and deterministic per seed") {
  const auto inst = fx::crossing();
  GvnsParams params;
  params.stop_no_improve = 5;
  auto r1 = Rng::stream(9, "gvns", 0);
  auto r2 = Rng::stream(9, "gvns", 0);
  const auto a = gvns_solve(inst, VariantId::HARD_MSMTW, params, r1);
  const auto b = gvns_solve(inst, VariantId::HARD_MSMTW, params, r2);
  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) {
    CHECK(a.trace[i].best_z == b.trace[i].best_z);
    if (i) CHECK(a.trace[i].best_z <= a.trace[i - 1].best_z + 1e-9);
  }
  CHECK(a.best == b.best);
}

TEST_CASE("zero patients yield an empty plan with zero objective") {
  const auto inst = build_instance({{0, 0}}, {}, {{1, {0, 600}, {1}, std::nullopt}}, {});
  GvnsParams params;
  auto rng = Rng::stream(1, "gvns", 0);
  const auto res = gvns_solve(inst, VariantId::HARD_MSMTW, params, rng);
  CHECK(res.best.size() == 0);
  CHECK(res.z == 0);
}

TEST_CASE("trace csv lists one line per iteration") {
  const std::vector<TraceEntry> trace{{0, 1.5, 42, 0}, {1, 3.0, 40, 0}};
  CHECK(trace_csv(trace) ==
        "iteration,elapsed_ms,best_z,penalty\n0,1.500000,42,0\n1,3,40,0\n");
}
